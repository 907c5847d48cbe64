#include "lexfield/numeric.hpp"

#include <cmath>
#include <cstdio>

#include "lexfield/errors.hpp"

namespace lexfield {

namespace {

void check_same_size(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) {
    throw DimensionMismatch("vector lengths differ: " + std::to_string(a.size()) +
                            " vs " + std::to_string(b.size()));
  }
}

}  // namespace

double dot(const Vec& a, const Vec& b) {
  check_same_size(a, b);
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

double squared_distance(const Vec& a, const Vec& b) {
  check_same_size(a, b);
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

double distance(const Vec& a, const Vec& b) { return std::sqrt(squared_distance(a, b)); }

void add_scaled(Vec& y, double a, const Vec& x) {
  check_same_size(y, x);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

double pairwise_sum(std::span<const double> xs) {
  if (xs.size() <= 8) {
    double acc = 0.0;
    for (double x : xs) acc += x;
    return acc;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

void PairwiseAccumulator::add(double x) {
  ++count_;
  double carry = x;
  std::size_t level = 0;
  while (occupied_ & (std::uint64_t{1} << level)) {
    carry += levels_[level];
    occupied_ &= ~(std::uint64_t{1} << level);
    ++level;
  }
  if (level >= levels_.size()) levels_.resize(level + 1, 0.0);
  levels_[level] = carry;
  occupied_ |= std::uint64_t{1} << level;
}

double PairwiseAccumulator::total() const {
  double acc = 0.0;
  for (std::size_t level = 0; level < levels_.size(); ++level) {
    if (occupied_ & (std::uint64_t{1} << level)) acc += levels_[level];
  }
  return acc;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

double Rng::uniform01() {
  // 53 random bits -> [0, 1); identical on every conforming platform.
  return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform01();
  while (u1 <= 0.0) u1 = uniform01();
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * 3.14159265358979323846 * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

Vec Rng::unit_vector(std::size_t dim) {
  if (dim == 0) throw DomainError("unit_vector requires dim >= 1");
  Vec v(dim);
  double n = 0.0;
  do {
    for (auto& x : v) x = normal();
    n = norm(v);
  } while (n == 0.0);
  for (auto& x : v) x /= n;
  return v;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Vec matvec(const Matrix& m, const Vec& x) {
  if (m.cols != x.size()) {
    throw DimensionMismatch("matrix-vector shape mismatch: " + std::to_string(m.cols) +
                            " cols vs vector of length " + std::to_string(x.size()));
  }
  Vec y(m.rows, 0.0);
  for (std::size_t i = 0; i < m.rows; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < m.cols; ++j) acc += m(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

}  // namespace lexfield
