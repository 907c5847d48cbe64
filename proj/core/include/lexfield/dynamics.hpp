#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>

#include "lexfield/fields.hpp"

namespace lexfield {

struct Trajectory {
  std::vector<double> times;        // strictly increasing, steps + 1 entries
  std::vector<Vec> states;          // positions q(t) or hidden states h(t)
  std::vector<double> field_values; // Phi along the trajectory; empty when not tracked
};

enum class Integrator { euler, rk4 };

using FlowFn = std::function<Vec(const Vec&)>;

// Fixed-step integration of dq/dt = f(q). Exposed so surrogate flows can
// drive the same machinery in tests.
Trajectory integrate_flow(const FlowFn& f, const Vec& q0, double dt,
                          std::int64_t steps, Integrator method);

// Gradient navigation dq/dt = -grad Phi(q); ascend flips the sign.
// Records q and Phi(q) at every step.
Trajectory navigate(const Phrase& p, const Vec& q0, const FieldConfig& cfg,
                    double dt, std::int64_t steps, Integrator method,
                    bool ascend = false);

struct LyapunovParams {
  double dt = 1e-3;
  std::int64_t steps = 10000;
  int renorm_interval = 10;
  double delta0 = 1e-8;
  std::uint64_t seed = 0;  // fixes the perturbation direction
};

// Largest Lyapunov exponent by two-trajectory separation with periodic
// renormalization (Benettin).
double largest_lyapunov(const FlowFn& f, const Vec& q0,
                        const LyapunovParams& params);

// Benettin estimate under the navigation flow of the phrase field.
double lyapunov_estimate(const Phrase& p, const Vec& q0,
                         const FieldConfig& cfg, const LyapunovParams& params);

// Parameters of the hidden-state flow f(h, phi) = tanh(W h + u phi + b).
struct OdeParams {
  Matrix w_matrix;
  Vec u_vector;
  Vec bias;
};

void validate_ode_params(const OdeParams& params, std::size_t hidden_dim);

Vec ode_rhs(const OdeParams& params, const Vec& h, double phi);

// Integrates dh/dt = tanh(W h + u phi(t) + b). The drive phi(t) is held
// piecewise constant over each step: phi_series[i] applies on
// [i*dt, (i+1)*dt). Requires phi_series.size() >= steps.
Trajectory ode_evolve(const Vec& h0, std::span<const double> phi_series,
                      const OdeParams& params, double dt, std::int64_t steps,
                      Integrator method);

// Eigenvalues of the numerical Jacobian d f / d h (central differences,
// step 1e-6), sorted by real part descending. Hidden dimension <= 16.
std::vector<std::complex<double>> jacobian_spectrum(const OdeParams& params,
                                                    const Vec& h, double phi);

}  // namespace lexfield
