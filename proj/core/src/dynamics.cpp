#include "lexfield/dynamics.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "lexfield/errors.hpp"

namespace lexfield {

namespace {

bool finite(const Vec& v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

Vec rk4_step(const FlowFn& f, const Vec& q, double dt) {
  const std::size_t n = q.size();
  const Vec k1 = f(q);
  Vec probe(n);
  for (std::size_t i = 0; i < n; ++i) probe[i] = q[i] + 0.5 * dt * k1[i];
  const Vec k2 = f(probe);
  for (std::size_t i = 0; i < n; ++i) probe[i] = q[i] + 0.5 * dt * k2[i];
  const Vec k3 = f(probe);
  for (std::size_t i = 0; i < n; ++i) probe[i] = q[i] + dt * k3[i];
  const Vec k4 = f(probe);
  Vec next(n);
  for (std::size_t i = 0; i < n; ++i) {
    next[i] = q[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return next;
}

Vec euler_step(const FlowFn& f, const Vec& q, double dt) {
  const Vec k = f(q);
  Vec next(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) next[i] = q[i] + dt * k[i];
  return next;
}

Vec advance(const FlowFn& f, const Vec& q, double dt, Integrator method) {
  return method == Integrator::euler ? euler_step(f, q, dt) : rk4_step(f, q, dt);
}

void check_step_params(double dt, std::int64_t steps) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("dt must be finite and > 0");
  if (steps < 1) throw DomainError("steps must be >= 1");
}

}  // namespace

Trajectory integrate_flow(const FlowFn& f, const Vec& q0, double dt,
                          std::int64_t steps, Integrator method) {
  check_step_params(dt, steps);
  if (q0.empty()) throw DomainError("initial state must be non-empty");

  Trajectory traj;
  traj.times.reserve(steps + 1);
  traj.states.reserve(steps + 1);
  traj.times.push_back(0.0);
  traj.states.push_back(q0);

  Vec q = q0;
  for (std::int64_t i = 0; i < steps; ++i) {
    q = advance(f, q, dt, method);
    if (!finite(q)) {
      throw IntegrationDiverged("non-finite state at step " + std::to_string(i + 1),
                                static_cast<std::size_t>(i + 1));
    }
    traj.times.push_back(dt * static_cast<double>(i + 1));
    traj.states.push_back(q);
  }
  return traj;
}

Trajectory navigate(const Phrase& p, const Vec& q0, const FieldConfig& cfg,
                    double dt, std::int64_t steps, Integrator method,
                    bool ascend) {
  validate_phrase(p);
  validate_config(cfg);
  if (q0.size() != phrase_dim(p)) {
    throw DimensionMismatch("start point dimension does not match the phrase");
  }
  const double sign = ascend ? 1.0 : -1.0;
  const GradientMode mode = all_kernels_gaussian(cfg) ? GradientMode::analytic
                                                      : GradientMode::finite_difference;
  const FlowFn flow = [&](const Vec& q) {
    Vec g = field_gradient(p, q, cfg, mode);
    for (double& x : g) x *= sign;
    return g;
  };
  Trajectory traj = integrate_flow(flow, q0, dt, steps, method);
  traj.field_values.reserve(traj.states.size());
  for (const Vec& q : traj.states) {
    traj.field_values.push_back(linguistic_field(p, q, cfg));
  }
  return traj;
}

double largest_lyapunov(const FlowFn& f, const Vec& q0,
                        const LyapunovParams& params) {
  check_step_params(params.dt, params.steps);
  if (!(params.delta0 > 0.0)) {
    throw DomainError("perturbation size delta0 must be > 0");
  }
  if (params.renorm_interval < 1) throw DomainError("renorm_interval must be >= 1");
  if (q0.empty()) throw DomainError("initial state must be non-empty");

  const std::int64_t windows = params.steps / params.renorm_interval;
  if (windows < 1) {
    throw DomainError("steps must cover at least one renormalization interval");
  }

  Rng rng(params.seed);
  const Vec direction = rng.unit_vector(q0.size());

  Vec q = q0;
  Vec qp = q0;
  add_scaled(qp, params.delta0, direction);

  double log_sum = 0.0;
  std::int64_t step_index = 0;
  for (std::int64_t w = 0; w < windows; ++w) {
    for (int s = 0; s < params.renorm_interval; ++s) {
      q = advance(f, q, params.dt, Integrator::rk4);
      qp = advance(f, qp, params.dt, Integrator::rk4);
      ++step_index;
      if (!finite(q) || !finite(qp)) {
        throw IntegrationDiverged("non-finite state at step " + std::to_string(step_index),
                                  static_cast<std::size_t>(step_index));
      }
    }
    const double d = distance(qp, q);
    if (d == 0.0) {
      // perturbation collapsed below representable separation; the
      // remaining windows contribute log(0) = -inf, so stop here
      return -std::numeric_limits<double>::infinity();
    }
    log_sum += std::log(d / params.delta0);
    const double rescale = params.delta0 / d;
    for (std::size_t i = 0; i < q.size(); ++i) {
      qp[i] = q[i] + rescale * (qp[i] - q[i]);
    }
  }
  const double horizon = static_cast<double>(windows) *
                         static_cast<double>(params.renorm_interval) * params.dt;
  return log_sum / horizon;
}

double lyapunov_estimate(const Phrase& p, const Vec& q0,
                         const FieldConfig& cfg, const LyapunovParams& params) {
  validate_phrase(p);
  validate_config(cfg);
  if (q0.size() != phrase_dim(p)) {
    throw DimensionMismatch("start point dimension does not match the phrase");
  }
  const GradientMode mode = all_kernels_gaussian(cfg) ? GradientMode::analytic
                                                      : GradientMode::finite_difference;
  const FlowFn flow = [&](const Vec& q) {
    Vec g = field_gradient(p, q, cfg, mode);
    for (double& x : g) x = -x;
    return g;
  };
  return largest_lyapunov(flow, q0, params);
}

void validate_ode_params(const OdeParams& params, std::size_t hidden_dim) {
  if (hidden_dim == 0) throw DomainError("hidden state must be non-empty");
  if (params.w_matrix.rows != hidden_dim || params.w_matrix.cols != hidden_dim) {
    throw DimensionMismatch("W must be square with the hidden dimension");
  }
  if (params.u_vector.size() != hidden_dim || params.bias.size() != hidden_dim) {
    throw DimensionMismatch("u and bias must match the hidden dimension");
  }
}

Vec ode_rhs(const OdeParams& params, const Vec& h, double phi) {
  Vec z = matvec(params.w_matrix, h);
  for (std::size_t i = 0; i < z.size(); ++i) {
    z[i] = std::tanh(z[i] + params.u_vector[i] * phi + params.bias[i]);
  }
  return z;
}

Trajectory ode_evolve(const Vec& h0, std::span<const double> phi_series,
                      const OdeParams& params, double dt, std::int64_t steps,
                      Integrator method) {
  check_step_params(dt, steps);
  validate_ode_params(params, h0.size());
  if (std::cmp_less(phi_series.size(), steps)) {
    throw DomainError("phi series shorter than the requested number of steps");
  }

  Trajectory traj;
  traj.times.reserve(steps + 1);
  traj.states.reserve(steps + 1);
  traj.times.push_back(0.0);
  traj.states.push_back(h0);

  Vec h = h0;
  for (std::int64_t i = 0; i < steps; ++i) {
    const double phi = phi_series[static_cast<std::size_t>(i)];
    if (!std::isfinite(phi)) {
      throw DomainError("phi series contains a non-finite value at index " +
                        std::to_string(i));
    }
    const FlowFn f = [&](const Vec& state) { return ode_rhs(params, state, phi); };
    h = advance(f, h, dt, method);
    if (!finite(h)) {
      throw IntegrationDiverged("non-finite state at step " + std::to_string(i + 1),
                                static_cast<std::size_t>(i + 1));
    }
    traj.times.push_back(dt * static_cast<double>(i + 1));
    traj.states.push_back(h);
  }
  return traj;
}

std::vector<std::complex<double>> jacobian_spectrum(const OdeParams& params,
                                                    const Vec& h, double phi) {
  constexpr std::size_t kMaxDim = 16;
  constexpr double kJacobianStep = 1e-6;
  validate_ode_params(params, h.size());
  if (h.size() > kMaxDim) {
    throw UnsupportedSize("jacobian spectrum supports hidden dimension <= 16");
  }

  const std::size_t n = h.size();
  Matrix jac(n, n);
  Vec probe = h;
  for (std::size_t j = 0; j < n; ++j) {
    probe[j] = h[j] + kJacobianStep;
    const Vec fwd = ode_rhs(params, probe, phi);
    probe[j] = h[j] - kJacobianStep;
    const Vec bwd = ode_rhs(params, probe, phi);
    probe[j] = h[j];
    for (std::size_t i = 0; i < n; ++i) {
      jac(i, j) = (fwd[i] - bwd[i]) / (2.0 * kJacobianStep);
    }
  }
  return eigenvalues(jac);
}

}  // namespace lexfield
