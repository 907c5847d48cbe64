#include "lexfield/energetics.hpp"

#include <algorithm>
#include <cmath>

#include "lexfield/errors.hpp"

namespace lexfield {

namespace {

constexpr double kPositionGradStep = 1e-4;

// Midpoint-rule cells over the region, row-major, last axis fastest.
template <typename Fn>
void for_each_midpoint(const Region& region, Fn&& fn) {
  const std::size_t n = region.dim();
  const int pts = region.grid_points_per_axis;
  std::vector<double> h(n);
  for (std::size_t d = 0; d < n; ++d) {
    h[d] = (region.upper[d] - region.lower[d]) / pts;
  }
  std::vector<int> idx(n, 0);
  Vec q(n);
  while (true) {
    for (std::size_t d = 0; d < n; ++d) {
      q[d] = region.lower[d] + (idx[d] + 0.5) * h[d];
    }
    fn(q);
    std::size_t d = n;
    while (d > 0) {
      --d;
      if (++idx[d] < pts) break;
      idx[d] = 0;
      if (d == 0) return;
    }
  }
}

GradientMode gradient_mode_for(const FieldConfig& cfg) {
  return all_kernels_gaussian(cfg) ? GradientMode::analytic
                                   : GradientMode::finite_difference;
}

double grad_norm_squared(const Phrase& p, const Vec& q, const FieldConfig& cfg,
                         GradientMode mode) {
  const Vec g = field_gradient(p, q, cfg, mode);
  return dot(g, g);
}

void check_phrase_region(const Phrase& p, const Region& region) {
  validate_region(region);
  if (phrase_dim(p) != region.dim()) {
    throw DimensionMismatch("region dimension does not match the phrase");
  }
}

}  // namespace

QuadratureResult integrate_region(const Region& region, const Integrand& f,
                                  std::uint64_t seed) {
  validate_region(region);
  const std::size_t n = region.dim();

  if (region.method == QuadratureMethod::grid) {
    if (n > 4) {
      throw DomainError(
          "grid quadrature is limited to 4 dimensions; use a monte-carlo region");
    }
    PairwiseAccumulator acc;
    for_each_midpoint(region, [&](const Vec& q) { acc.add(f(q)); });
    double cell = region.volume();
    for (std::size_t d = 0; d < n; ++d) cell /= region.grid_points_per_axis;
    return {acc.total() * cell, QuadratureMethod::grid, acc.count(), std::nullopt};
  }

  Rng rng(seed);
  PairwiseAccumulator values;
  PairwiseAccumulator squares;
  Vec q(n);
  for (std::int64_t i = 0; i < region.mc_samples; ++i) {
    for (std::size_t d = 0; d < n; ++d) {
      q[d] = rng.uniform(region.lower[d], region.upper[d]);
    }
    const double v = f(q);
    values.add(v);
    squares.add(v * v);
  }
  const double volume = region.volume();
  const auto count = static_cast<double>(region.mc_samples);
  const double mean = values.total() / count;
  double std_error = 0.0;
  if (region.mc_samples > 1) {
    const double var = std::max(0.0, (squares.total() - count * mean * mean) / (count - 1.0));
    std_error = volume * std::sqrt(var / count);
  }
  return {volume * mean, QuadratureMethod::monte_carlo, region.mc_samples, std_error};
}

QuadratureResult hamiltonian(const Phrase& p, const Region& region,
                             const FieldConfig& cfg, double mu,
                             std::uint64_t seed) {
  check_phrase_region(p, region);
  if (!(mu >= 0.0)) throw DomainError("potential coefficient mu must be >= 0");
  const GradientMode mode = gradient_mode_for(cfg);
  return integrate_region(
      region,
      [&](const Vec& q) {
        const double phi = linguistic_field(p, q, cfg);
        return 0.5 * grad_norm_squared(p, q, cfg, mode) + 0.5 * mu * phi * phi;
      },
      seed);
}

QuadratureResult field_integration(const Phrase& p, const Region& region,
                                   const FieldConfig& cfg,
                                   const WeightFn& weight,
                                   std::uint64_t seed) {
  check_phrase_region(p, region);
  if (!weight) throw DomainError("weight function must be callable");
  return integrate_region(
      region,
      [&](const Vec& q) {
        const double w = weight(q);
        if (!(w >= 0.0)) {
          throw ContractViolation("weight function returned a negative value");
        }
        return linguistic_field(p, q, cfg) * w;
      },
      seed);
}

QuadratureResult binding_energy(const Phrase& p, const Region& region,
                                const FieldConfig& cfg, double lambda,
                                std::uint64_t seed) {
  check_phrase_region(p, region);
  if (!(lambda > 0.0)) throw DomainError("lambda must be > 0");
  const GradientMode mode = gradient_mode_for(cfg);
  return integrate_region(
      region,
      [&](const Vec& q) {
        const double phi = linguistic_field(p, q, cfg);
        return grad_norm_squared(p, q, cfg, mode) + lambda * phi * phi;
      },
      seed);
}

Region default_region(const Phrase& p, int grid_points_per_axis) {
  const std::size_t n = phrase_dim(p);
  double sigma_max = 0.0;
  Vec centroid(n, 0.0);
  for (const Word& w : p.words) {
    sigma_max = std::max(sigma_max, w.width);
    add_scaled(centroid, 1.0 / static_cast<double>(p.words.size()), w.position);
  }
  const double half = 5.0 * sigma_max;
  Vec lo(n), hi(n);
  for (std::size_t d = 0; d < n; ++d) {
    lo[d] = centroid[d] - half;
    hi[d] = centroid[d] + half;
  }
  return Region::grid(std::move(lo), std::move(hi), grid_points_per_axis);
}

MinimizeResult minimize_binding(const Phrase& p, const Region& region,
                                const FieldConfig& cfg, double lambda,
                                double step, int iters, std::uint64_t seed) {
  check_phrase_region(p, region);
  if (!(step > 0.0)) throw DomainError("descent step must be > 0");
  if (iters < 1) throw DomainError("iters must be >= 1");

  const auto energy = [&](const Phrase& candidate) {
    return binding_energy(candidate, region, cfg, lambda, seed).value;
  };

  Phrase current = p;
  double e_current = energy(current);
  std::vector<double> history;
  history.reserve(iters + 1);
  history.push_back(e_current);

  const std::size_t n = phrase_dim(p);
  for (int iter = 0; iter < iters; ++iter) {
    // central differences over the stacked word positions
    std::vector<Vec> grad(current.words.size(), Vec(n, 0.0));
    double grad_norm2 = 0.0;
    {
      Phrase probe = current;
      for (std::size_t w = 0; w < current.words.size(); ++w) {
        for (std::size_t d = 0; d < n; ++d) {
          const double original = current.words[w].position[d];
          probe.words[w].position[d] = original + kPositionGradStep;
          const double fwd = energy(probe);
          probe.words[w].position[d] = original - kPositionGradStep;
          const double bwd = energy(probe);
          probe.words[w].position[d] = original;
          const double g = (fwd - bwd) / (2.0 * kPositionGradStep);
          grad[w][d] = g;
          grad_norm2 += g * g;
        }
      }
    }

    if (grad_norm2 == 0.0) {
      history.push_back(e_current);
      continue;
    }

    // backtracking: halve the step until the move no longer increases E
    double s = step;
    while (s > step * 1e-12) {
      Phrase candidate = current;
      for (std::size_t w = 0; w < candidate.words.size(); ++w) {
        add_scaled(candidate.words[w].position, -s, grad[w]);
      }
      const double e_candidate = energy(candidate);
      if (e_candidate <= e_current) {
        current = std::move(candidate);
        e_current = e_candidate;
        break;
      }
      s *= 0.5;
    }
    history.push_back(e_current);
  }
  return {std::move(current), std::move(history)};
}

}  // namespace lexfield
