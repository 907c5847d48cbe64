#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lexfield {

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b);
double norm(const Vec& a);
double squared_distance(const Vec& a, const Vec& b);
double distance(const Vec& a, const Vec& b);

// y += a * x
void add_scaled(Vec& y, double a, const Vec& x);

// Deterministic tree summation; halves the error growth of naive
// accumulation and is independent of how callers chunk their data.
double pairwise_sum(std::span<const double> xs);

// Streaming variant with O(log n) memory: partial sums of 2^k addends are
// merged binary-counter style, so the reduction tree matches pairwise_sum
// for power-of-two counts.
class PairwiseAccumulator {
 public:
  void add(double x);
  double total() const;
  std::int64_t count() const { return count_; }

 private:
  std::vector<double> levels_;
  std::uint64_t occupied_ = 0;  // bitmask: level k holds a sum of 2^k addends
  std::int64_t count_ = 0;
};

// %.17g formatting: enough digits to round-trip any double exactly.
std::string format_double(double v);

// FNV-1a, used to fingerprint configuration bytes in run manifests.
std::uint64_t fnv1a64(std::string_view bytes);

// Seeded generator with fixed bit-to-double mappings so streams are
// reproducible across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform01();                        // [0, 1)
  double uniform(double lo, double hi);      // [lo, hi)
  double normal();                           // standard normal (Box-Muller)
  Vec unit_vector(std::size_t dim);          // uniform on the unit sphere

 private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Minimal dense row-major matrix.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0)
      : rows(r), cols(c), data(r * c, fill) {}

  static Matrix identity(std::size_t n);

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

Vec matvec(const Matrix& m, const Vec& x);

// Eigenvalues of a real square matrix, sorted by real part descending
// (ties by imaginary part descending). Dispatches to characteristic
// polynomial roots for n <= 3 and shifted Hessenberg QR above that.
std::vector<std::complex<double>> eigenvalues(const Matrix& a);

namespace detail {
std::vector<std::complex<double>> eigenvalues_charpoly(const Matrix& a);  // n <= 3
std::vector<std::complex<double>> eigenvalues_qr(const Matrix& a);
}  // namespace detail

}  // namespace lexfield
