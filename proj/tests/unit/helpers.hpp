#pragma once

// Shared fixtures and independent reference computations for the test
// suites. Everything here recomputes expected values longhand, without
// going through the library paths under test.

#include <cmath>
#include <random>
#include <vector>

#include "lexfield/space.hpp"

namespace testutil {

using lexfield::FieldConfig;
using lexfield::Phrase;
using lexfield::Vec;
using lexfield::Word;

inline double rel_error(double got, double want) {
  const double scale = std::max(std::abs(got), std::abs(want));
  if (scale == 0.0) return 0.0;
  return std::abs(got - want) / scale;
}

inline Word word(std::string id, Vec pos, double s = 1.0, double sigma = 1.0) {
  Word w;
  w.id = std::move(id);
  w.position = std::move(pos);
  w.strength = s;
  w.width = sigma;
  return w;
}

inline Phrase phrase(std::vector<Word> words) { return Phrase{std::move(words)}; }

// ---- independent oracle for the composite field ------------------------

inline double oracle_norm(const Vec& a, const Vec& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(acc);
}

inline double oracle_gauss(double r, double sigma) {
  return std::exp(-r * r / (2.0 * sigma * sigma));
}

inline double oracle_lexical(const Word& w, const Vec& q) {
  return w.strength * oracle_gauss(oracle_norm(q, w.position), w.width);
}

// Direct transcription of the composite field: unary sum, pair sum over
// i<j, triple sum over i<j<k, gaussian kernels throughout.
inline double oracle_field(const Phrase& p, const Vec& q, double kappa2,
                           double kappa3, double pair_sigma,
                           double triple_sigma) {
  const auto& ws = p.words;
  const std::size_t m = ws.size();
  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) total += oracle_lexical(ws[i], q);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const double d = oracle_norm(ws[i].position, ws[j].position);
      total += kappa2 * oracle_lexical(ws[i], q) * oracle_lexical(ws[j], q) *
               oracle_gauss(d, pair_sigma);
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      for (std::size_t k = j + 1; k < m; ++k) {
        const double dij = oracle_norm(ws[i].position, ws[j].position);
        const double djk = oracle_norm(ws[j].position, ws[k].position);
        const double dik = oracle_norm(ws[i].position, ws[k].position);
        const double r = std::sqrt(dij * dij + djk * djk + dik * dik);
        total += kappa3 * oracle_lexical(ws[i], q) * oracle_lexical(ws[j], q) *
                 oracle_lexical(ws[k], q) * oracle_gauss(r, triple_sigma);
      }
    }
  }
  return total;
}

inline double oracle_field(const Phrase& p, const Vec& q, const FieldConfig& cfg) {
  return oracle_field(p, q, cfg.kappa2, cfg.kappa3, cfg.pair_sigma, cfg.triple_sigma);
}

// ---- random inputs ------------------------------------------------------

inline Vec random_vec(std::mt19937& gen, std::size_t dim, double lo = -2.0,
                      double hi = 2.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Vec v(dim);
  for (auto& x : v) x = dist(gen);
  return v;
}

inline Phrase random_phrase(std::mt19937& gen, std::size_t m, std::size_t dim) {
  std::uniform_real_distribution<double> strength(0.2, 2.0);
  std::uniform_real_distribution<double> width(0.5, 2.0);
  Phrase p;
  for (std::size_t i = 0; i < m; ++i) {
    p.words.push_back(word("w" + std::to_string(i), random_vec(gen, dim),
                           strength(gen), width(gen)));
  }
  return p;
}

// Random orthogonal matrix by Gram-Schmidt on a random square matrix.
inline std::vector<Vec> random_orthogonal(std::mt19937& gen, std::size_t n) {
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<Vec> basis;
  while (basis.size() < n) {
    Vec v(n);
    for (auto& x : v) x = dist(gen);
    for (const Vec& u : basis) {
      double proj = 0.0;
      for (std::size_t i = 0; i < n; ++i) proj += u[i] * v[i];
      for (std::size_t i = 0; i < n; ++i) v[i] -= proj * u[i];
    }
    double nrm = 0.0;
    for (double x : v) nrm += x * x;
    nrm = std::sqrt(nrm);
    if (nrm < 1e-8) continue;
    for (auto& x : v) x /= nrm;
    basis.push_back(std::move(v));
  }
  return basis;
}

inline Vec apply_orthogonal(const std::vector<Vec>& rot, const Vec& v) {
  Vec out(v.size(), 0.0);
  for (std::size_t i = 0; i < rot.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += rot[i][j] * v[j];
  }
  return out;
}

}  // namespace testutil
