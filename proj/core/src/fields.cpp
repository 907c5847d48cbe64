#include "lexfield/fields.hpp"

#include <cmath>

#include "lexfield/errors.hpp"

namespace lexfield {

namespace {

constexpr double kFiniteDifferenceStep = 1e-5;

void check_point_dim(const Vec& q, std::size_t dim) {
  if (q.size() != dim) {
    throw DimensionMismatch("evaluation point has dimension " + std::to_string(q.size()) +
                            ", expected " + std::to_string(dim));
  }
}

// Per-word value and gradient of a gaussian lexical field, sharing the
// exponential between both.
struct WordEval {
  double value;
  Vec grad;
};

WordEval eval_gaussian_word(const Word& w, const Vec& q) {
  const double s2 = w.width * w.width;
  const double phi = w.strength * std::exp(-0.5 * squared_distance(q, w.position) / s2);
  Vec grad(q.size());
  for (std::size_t d = 0; d < q.size(); ++d) {
    grad[d] = -phi * (q[d] - w.position[d]) / s2;
  }
  return {phi, std::move(grad)};
}

}  // namespace

bool all_kernels_gaussian(const FieldConfig& cfg) {
  return cfg.unary_kernel.kind == KernelKind::gaussian &&
         cfg.pair_kernel.kind == KernelKind::gaussian &&
         cfg.triple_kernel.kind == KernelKind::gaussian;
}

double lexical_field(const Word& w, const Vec& q, const FieldConfig& cfg) {
  validate_word(w);
  check_point_dim(q, w.position.size());
  return w.strength * kernel_eval(cfg.unary_kernel, distance(q, w.position), w.width);
}

double pairwise_interaction(const Word& wi, const Word& wj, const Vec& q,
                            const FieldConfig& cfg) {
  if (wi.position.size() != wj.position.size()) {
    throw DimensionMismatch("interacting words disagree on dimension");
  }
  const double phi_i = lexical_field(wi, q, cfg);
  const double phi_j = lexical_field(wj, q, cfg);
  return cfg.kappa2 * phi_i * phi_j * pair_kernel_value(cfg, distance(wi.position, wj.position));
}

double triple_interaction(const Word& wi, const Word& wj, const Word& wk,
                          const Vec& q, const FieldConfig& cfg) {
  if (wi.position.size() != wj.position.size() || wj.position.size() != wk.position.size()) {
    throw DimensionMismatch("interacting words disagree on dimension");
  }
  const double phi = lexical_field(wi, q, cfg) * lexical_field(wj, q, cfg) *
                     lexical_field(wk, q, cfg);
  const double k3 = triple_kernel_value(cfg, distance(wi.position, wj.position),
                                        distance(wj.position, wk.position),
                                        distance(wi.position, wk.position));
  return cfg.kappa3 * phi * k3;
}

double linguistic_field(const Phrase& p, const Vec& q, const FieldConfig& cfg) {
  validate_phrase(p);
  validate_config(cfg);
  const auto& words = p.words;
  const std::size_t m = words.size();
  check_point_dim(q, words.front().position.size());

  std::vector<double> phi(m);
  for (std::size_t i = 0; i < m; ++i) {
    phi[i] = words[i].strength *
             kernel_eval(cfg.unary_kernel, distance(q, words[i].position), words[i].width);
  }

  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) total += phi[i];

  if (cfg.kappa2 != 0.0 && m >= 2) {
    for (std::size_t i = 0; i + 1 < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        const double d_ij = distance(words[i].position, words[j].position);
        total += cfg.kappa2 * phi[i] * phi[j] * pair_kernel_value(cfg, d_ij);
      }
    }
  }
  if (cfg.kappa3 != 0.0 && m >= 3) {
    for (std::size_t i = 0; i + 2 < m; ++i) {
      for (std::size_t j = i + 1; j + 1 < m; ++j) {
        const double d_ij = distance(words[i].position, words[j].position);
        for (std::size_t k = j + 1; k < m; ++k) {
          const double k3 = triple_kernel_value(cfg, d_ij,
                                                distance(words[j].position, words[k].position),
                                                distance(words[i].position, words[k].position));
          total += cfg.kappa3 * phi[i] * phi[j] * phi[k] * k3;
        }
      }
    }
  }
  return total;
}

Vec field_gradient(const Phrase& p, const Vec& q, const FieldConfig& cfg,
                   GradientMode mode) {
  validate_phrase(p);
  validate_config(cfg);
  const auto& words = p.words;
  const std::size_t m = words.size();
  const std::size_t n = words.front().position.size();
  check_point_dim(q, n);

  if (mode == GradientMode::finite_difference) {
    Vec grad(n);
    Vec probe = q;
    for (std::size_t d = 0; d < n; ++d) {
      const double h = kFiniteDifferenceStep;
      probe[d] = q[d] + h;
      const double fwd = linguistic_field(p, probe, cfg);
      probe[d] = q[d] - h;
      const double bwd = linguistic_field(p, probe, cfg);
      probe[d] = q[d];
      grad[d] = (fwd - bwd) / (2.0 * h);
    }
    return grad;
  }

  if (!all_kernels_gaussian(cfg)) {
    throw UnsupportedKernel(
        "analytic gradients require gaussian unary/pair/triple kernels; "
        "use finite-difference mode");
  }

  std::vector<WordEval> ev;
  ev.reserve(m);
  for (const Word& w : words) ev.push_back(eval_gaussian_word(w, q));

  Vec grad(n, 0.0);
  for (const WordEval& e : ev) add_scaled(grad, 1.0, e.grad);

  // Interaction kernels depend only on word separations, so the product
  // rule touches the unary factors alone.
  if (cfg.kappa2 != 0.0 && m >= 2) {
    for (std::size_t i = 0; i + 1 < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        const double k2 = pair_kernel_value(cfg, distance(words[i].position, words[j].position));
        const double c = cfg.kappa2 * k2;
        add_scaled(grad, c * ev[j].value, ev[i].grad);
        add_scaled(grad, c * ev[i].value, ev[j].grad);
      }
    }
  }
  if (cfg.kappa3 != 0.0 && m >= 3) {
    for (std::size_t i = 0; i + 2 < m; ++i) {
      for (std::size_t j = i + 1; j + 1 < m; ++j) {
        const double d_ij = distance(words[i].position, words[j].position);
        for (std::size_t k = j + 1; k < m; ++k) {
          const double k3 = triple_kernel_value(cfg, d_ij,
                                                distance(words[j].position, words[k].position),
                                                distance(words[i].position, words[k].position));
          const double c = cfg.kappa3 * k3;
          add_scaled(grad, c * ev[j].value * ev[k].value, ev[i].grad);
          add_scaled(grad, c * ev[i].value * ev[k].value, ev[j].grad);
          add_scaled(grad, c * ev[i].value * ev[j].value, ev[k].grad);
        }
      }
    }
  }
  return grad;
}

Vec field_gradient(const Phrase& p, const Vec& q, const FieldConfig& cfg) {
  return field_gradient(p, q, cfg,
                        all_kernels_gaussian(cfg) ? GradientMode::analytic
                                                  : GradientMode::finite_difference);
}

std::vector<FieldSample> sample_grid(const Phrase& p, const Region& region,
                                     const FieldConfig& cfg) {
  validate_region(region);
  const std::size_t n = region.dim();
  if (phrase_dim(p) != n) {
    throw DimensionMismatch("region dimension does not match the phrase");
  }
  const int pts = region.grid_points_per_axis;

  std::vector<FieldSample> samples;
  samples.reserve(static_cast<std::size_t>(std::pow(pts, static_cast<double>(n))));

  std::vector<int> idx(n, 0);
  Vec q(n);
  while (true) {
    for (std::size_t d = 0; d < n; ++d) {
      q[d] = (pts == 1) ? 0.5 * (region.lower[d] + region.upper[d])
                        : region.lower[d] + (region.upper[d] - region.lower[d]) * idx[d] /
                              static_cast<double>(pts - 1);
    }
    samples.push_back({q, linguistic_field(p, q, cfg)});

    // row-major advance: last axis fastest
    std::size_t d = n;
    while (d > 0) {
      --d;
      if (++idx[d] < pts) break;
      idx[d] = 0;
      if (d == 0) return samples;
    }
  }
}

}  // namespace lexfield
