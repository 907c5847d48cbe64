#pragma once

#include "lexfield/space.hpp"

namespace lexfield {

struct FieldSample {
  Vec point;
  double value = 0.0;
};

// Field strength of a single word at q: S_w * G(|q - q_w|; sigma_w).
double lexical_field(const Word& w, const Vec& q, const FieldConfig& cfg);

// I_ij(q) = kappa2 * Phi_i(q) * Phi_j(q) * K2(|q_i - q_j|).
double pairwise_interaction(const Word& wi, const Word& wj, const Vec& q,
                            const FieldConfig& cfg);

// T_ijk(q) = kappa3 * Phi_i * Phi_j * Phi_k * K3(d_ij, d_jk, d_ik).
double triple_interaction(const Word& wi, const Word& wj, const Word& wk,
                          const Vec& q, const FieldConfig& cfg);

// Composite phrase field: unary terms plus pair and triple interactions
// over strictly increasing index combinations.
double linguistic_field(const Phrase& p, const Vec& q, const FieldConfig& cfg);

enum class GradientMode { analytic, finite_difference };

// Spatial gradient of the phrase field at q. Analytic mode requires
// gaussian unary/pair/triple kernels; finite-difference mode uses central
// differences with step 1e-5 and works with any kernel.
Vec field_gradient(const Phrase& p, const Vec& q, const FieldConfig& cfg,
                   GradientMode mode);

// Picks analytic when the config allows it, finite differences otherwise.
Vec field_gradient(const Phrase& p, const Vec& q, const FieldConfig& cfg);

bool all_kernels_gaussian(const FieldConfig& cfg);

// Field values on an inclusive linspace grid over the region,
// grid_points_per_axis points per axis, row-major point order.
std::vector<FieldSample> sample_grid(const Phrase& p, const Region& region,
                                     const FieldConfig& cfg);

}  // namespace lexfield
