#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "lexfield/fields.hpp"

namespace lexfield {

struct QuadratureResult {
  double value = 0.0;
  QuadratureMethod method = QuadratureMethod::grid;
  std::int64_t samples = 0;
  std::optional<double> std_error;  // monte-carlo only
};

using Integrand = std::function<double(const Vec&)>;
using WeightFn = std::function<double(const Vec&)>;

// Integrates f over the region with its attached method: midpoint-rule
// grid (dimension <= 4) or seeded uniform Monte Carlo.
QuadratureResult integrate_region(const Region& region, const Integrand& f,
                                  std::uint64_t seed = 0);

// H = integral of 1/2 |grad Phi|^2 + V(Phi) with V(x) = 1/2 mu x^2.
QuadratureResult hamiltonian(const Phrase& p, const Region& region,
                             const FieldConfig& cfg, double mu,
                             std::uint64_t seed = 0);

// U = integral of Phi(q) w(q); w must be non-negative on the region.
QuadratureResult field_integration(const Phrase& p, const Region& region,
                                   const FieldConfig& cfg,
                                   const WeightFn& weight,
                                   std::uint64_t seed = 0);

// E = integral of |grad Phi|^2 + lambda Phi^2, lambda > 0.
QuadratureResult binding_energy(const Phrase& p, const Region& region,
                                const FieldConfig& cfg, double lambda,
                                std::uint64_t seed = 0);

// Box [-5 sigma_max, +5 sigma_max]^n around the phrase centroid.
Region default_region(const Phrase& p, int grid_points_per_axis);

struct MinimizeResult {
  Phrase phrase;
  std::vector<double> history;  // history[0] is the initial energy
};

// Gradient descent on binding energy over the stacked word positions.
// Gradients come from central differences (step 1e-4) of the quadrature
// value; the step halves whenever a move would increase the energy, so
// the recorded history never increases.
MinimizeResult minimize_binding(const Phrase& p, const Region& region,
                                const FieldConfig& cfg, double lambda,
                                double step, int iters,
                                std::uint64_t seed = 0);

}  // namespace lexfield
