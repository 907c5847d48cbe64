// Dense eigenvalue computation for desk-scale matrices: characteristic
// polynomial roots up to 3x3, complex shifted Hessenberg QR above that.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "lexfield/errors.hpp"
#include "lexfield/numeric.hpp"

namespace lexfield {

namespace {

using cd = std::complex<double>;

// Roots of x^2 - t x + d, product-form second root to dodge cancellation.
std::pair<cd, cd> quadratic_roots(cd t, cd d) {
  const cd mean = 0.5 * t;
  cd disc = std::sqrt(mean * mean - d);
  if (std::real(std::conj(mean) * disc) < 0.0) disc = -disc;
  const cd r1 = mean + disc;
  const cd r2 = (std::abs(r1) > 0.0) ? d / r1 : mean - disc;
  return {r1, r2};
}

std::pair<cd, cd> eig2x2(cd a, cd b, cd c, cd d) {
  return quadratic_roots(a + d, a * d - b * c);
}

// Cardano, complex arithmetic throughout: x^3 + a x^2 + b x + c.
std::vector<cd> cubic_roots(double a, double b, double c) {
  const double p = b - a * a / 3.0;
  const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const cd sqrt_d = std::sqrt(cd(q * q / 4.0 + p * p * p / 27.0, 0.0));
  cd u3 = -q / 2.0 + sqrt_d;
  if (std::abs(-q / 2.0 - sqrt_d) > std::abs(u3)) u3 = -q / 2.0 - sqrt_d;
  std::vector<cd> roots;
  roots.reserve(3);
  const cd omega(-0.5, std::sqrt(3.0) / 2.0);
  if (std::abs(u3) == 0.0) {
    // p == q == 0: triple root of the depressed cubic.
    for (int k = 0; k < 3; ++k) roots.emplace_back(-a / 3.0);
    return roots;
  }
  const cd u = std::pow(u3, 1.0 / 3.0);
  cd w(1.0, 0.0);
  for (int k = 0; k < 3; ++k) {
    const cd uk = w * u;
    roots.push_back(uk - p / (3.0 * uk) - a / 3.0);
    w *= omega;
  }
  return roots;
}

struct ComplexDense {
  std::size_t n = 0;
  std::vector<cd> a;
  cd& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  cd operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

void hessenberg_reduce(ComplexDense& m) {
  const std::size_t n = m.n;
  if (n < 3) return;
  std::vector<cd> v(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double xnorm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) xnorm2 += std::norm(m(i, k));
    const double xnorm = std::sqrt(xnorm2);
    if (xnorm == 0.0) continue;

    const cd pivot = m(k + 1, k);
    const cd phase = (std::abs(pivot) > 0.0) ? pivot / std::abs(pivot) : cd(1.0, 0.0);
    const cd alpha = -phase * xnorm;

    double vnorm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      v[i] = m(i, k) - ((i == k + 1) ? alpha : cd(0.0, 0.0));
      vnorm2 += std::norm(v[i]);
    }
    if (vnorm2 == 0.0) continue;
    const double beta = 2.0 / vnorm2;

    // rows: A <- H A with H = I - beta v v^H
    for (std::size_t j = k; j < n; ++j) {
      cd s(0.0, 0.0);
      for (std::size_t i = k + 1; i < n; ++i) s += std::conj(v[i]) * m(i, j);
      s *= beta;
      for (std::size_t i = k + 1; i < n; ++i) m(i, j) -= s * v[i];
    }
    // columns: A <- A H
    for (std::size_t r = 0; r < n; ++r) {
      cd s(0.0, 0.0);
      for (std::size_t i = k + 1; i < n; ++i) s += m(r, i) * v[i];
      s *= beta;
      for (std::size_t i = k + 1; i < n; ++i) m(r, i) -= s * std::conj(v[i]);
    }
    m(k + 1, k) = alpha;
    for (std::size_t i = k + 2; i < n; ++i) m(i, k) = cd(0.0, 0.0);
  }
}

// Unitary rotation [[c, s], [-conj(s), conj(c)]] mapping (f, g) to (r, 0).
struct Givens {
  cd c{1.0, 0.0};
  cd s{0.0, 0.0};
};

Givens make_givens(cd f, cd g) {
  const double r = std::sqrt(std::norm(f) + std::norm(g));
  if (r == 0.0) return {};
  return {std::conj(f) / r, std::conj(g) / r};
}

// One explicit shifted QR sweep on the active block [lo, hi].
void qr_step(ComplexDense& m, std::size_t lo, std::size_t hi, cd shift) {
  const std::size_t n = m.n;
  for (std::size_t i = lo; i <= hi; ++i) m(i, i) -= shift;

  std::vector<Givens> rots(hi - lo);
  for (std::size_t k = lo; k < hi; ++k) {
    const Givens g = make_givens(m(k, k), m(k + 1, k));
    rots[k - lo] = g;
    for (std::size_t j = k; j < n; ++j) {
      const cd top = m(k, j);
      const cd bot = m(k + 1, j);
      m(k, j) = g.c * top + g.s * bot;
      m(k + 1, j) = -std::conj(g.s) * top + std::conj(g.c) * bot;
    }
    m(k + 1, k) = cd(0.0, 0.0);
  }
  for (std::size_t k = lo; k < hi; ++k) {
    const Givens g = rots[k - lo];
    const std::size_t rmax = std::min(k + 1, hi);
    for (std::size_t r = 0; r <= rmax; ++r) {
      const cd left = m(r, k);
      const cd right = m(r, k + 1);
      m(r, k) = std::conj(g.c) * left + std::conj(g.s) * right;
      m(r, k + 1) = -g.s * left + g.c * right;
    }
  }
  for (std::size_t i = lo; i <= hi; ++i) m(i, i) += shift;
}

std::vector<cd> qr_eigenvalues(ComplexDense m) {
  const std::size_t n = m.n;
  hessenberg_reduce(m);

  double anorm = 0.0;
  for (const cd& x : m.a) anorm += std::abs(x);
  if (anorm == 0.0) anorm = 1.0;
  constexpr double eps = 2.220446049250313e-16;

  std::vector<cd> eig;
  eig.reserve(n);
  std::ptrdiff_t high = static_cast<std::ptrdiff_t>(n) - 1;
  int its = 0;
  while (high >= 0) {
    if (high == 0) {
      eig.push_back(m(0, 0));
      break;
    }
    const auto h = static_cast<std::size_t>(high);

    std::size_t low = h;
    while (low > 0) {
      double scale = std::abs(m(low - 1, low - 1)) + std::abs(m(low, low));
      if (scale == 0.0) scale = anorm;
      if (std::abs(m(low, low - 1)) <= eps * scale) {
        m(low, low - 1) = cd(0.0, 0.0);
        break;
      }
      --low;
    }

    if (low == h) {
      eig.push_back(m(h, h));
      --high;
      its = 0;
      continue;
    }
    if (low == h - 1) {
      const auto [l1, l2] = eig2x2(m(low, low), m(low, h), m(h, low), m(h, h));
      eig.push_back(l1);
      eig.push_back(l2);
      high = static_cast<std::ptrdiff_t>(low) - 1;
      its = 0;
      continue;
    }

    const auto [m1, m2] = eig2x2(m(h - 1, h - 1), m(h - 1, h), m(h, h - 1), m(h, h));
    cd shift = (std::abs(m1 - m(h, h)) < std::abs(m2 - m(h, h))) ? m1 : m2;
    if (its > 0 && its % 12 == 0) {
      // exceptional shift: breaks the stall on symmetric spectra
      shift = m(h, h) + cd(1.5 * (std::abs(m(h, h - 1)) + std::abs(m(h - 1, h - 2))), 0.0);
    }
    qr_step(m, low, h, shift);
    ++its;
    if (its > 60 * static_cast<int>(n)) {
      throw Error("eigenvalue QR iteration did not converge");
    }
  }
  return eig;
}

void sort_spectrum(std::vector<cd>& eig) {
  std::sort(eig.begin(), eig.end(), [](const cd& x, const cd& y) {
    if (x.real() != y.real()) return x.real() > y.real();
    return x.imag() > y.imag();
  });
}

void check_square(const Matrix& a) {
  if (a.rows == 0 || a.rows != a.cols) {
    throw DimensionMismatch("eigenvalues require a non-empty square matrix");
  }
}

}  // namespace

namespace detail {

std::vector<cd> eigenvalues_charpoly(const Matrix& a) {
  check_square(a);
  const std::size_t n = a.rows;
  std::vector<cd> eig;
  switch (n) {
    case 1:
      eig = {cd(a(0, 0), 0.0)};
      break;
    case 2: {
      const auto [l1, l2] = eig2x2(cd(a(0, 0)), cd(a(0, 1)), cd(a(1, 0)), cd(a(1, 1)));
      eig = {l1, l2};
      break;
    }
    case 3: {
      const double tr = a(0, 0) + a(1, 1) + a(2, 2);
      const double minors = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0) +
                            a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0) +
                            a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1);
      const double det = a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
                         a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
                         a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
      eig = cubic_roots(-tr, minors, -det);
      break;
    }
    default:
      throw UnsupportedSize("characteristic polynomial path handles n <= 3");
  }
  sort_spectrum(eig);
  return eig;
}

std::vector<cd> eigenvalues_qr(const Matrix& a) {
  check_square(a);
  ComplexDense m;
  m.n = a.rows;
  m.a.resize(m.n * m.n);
  for (std::size_t i = 0; i < m.a.size(); ++i) m.a[i] = cd(a.data[i], 0.0);
  auto eig = qr_eigenvalues(std::move(m));
  sort_spectrum(eig);
  return eig;
}

}  // namespace detail

std::vector<cd> eigenvalues(const Matrix& a) {
  check_square(a);
  return (a.rows <= 3) ? detail::eigenvalues_charpoly(a) : detail::eigenvalues_qr(a);
}

}  // namespace lexfield
