#include "lexfield/space.hpp"

#include <cmath>

#include "lexfield/errors.hpp"

namespace lexfield {

void validate_space(const SemanticSpace& s) {
  if (s.dim < 1) throw DomainError("semantic space dimension must be >= 1");
}

double kernel_eval(const KernelSpec& k, double r, double sigma) {
  if (!(r >= 0.0)) throw DomainError("kernel radius must be >= 0");
  if (!(sigma > 0.0)) throw DomainError("kernel width must be > 0");
  const double t = r / sigma;
  switch (k.kind) {
    case KernelKind::gaussian:
      return std::exp(-0.5 * t * t);
    case KernelKind::exponential:
      return std::exp(-t);
    case KernelKind::inverse_power:
      if (!(k.power >= 1.0)) throw DomainError("inverse-power exponent must be >= 1");
      return std::pow(1.0 + t * t, -0.5 * k.power);
  }
  throw DomainError("unknown kernel kind");
}

const char* kernel_kind_name(KernelKind kind) {
  switch (kind) {
    case KernelKind::gaussian: return "gaussian";
    case KernelKind::exponential: return "exponential";
    case KernelKind::inverse_power: return "inverse-power";
  }
  return "unknown";
}

KernelKind kernel_kind_from_name(const std::string& name) {
  if (name == "gaussian") return KernelKind::gaussian;
  if (name == "exponential") return KernelKind::exponential;
  if (name == "inverse-power") return KernelKind::inverse_power;
  throw DomainError("unknown kernel kind '" + name +
                    "' (expected gaussian, exponential or inverse-power)");
}

double pair_kernel_value(const FieldConfig& cfg, double d) {
  return kernel_eval(cfg.pair_kernel, d, cfg.pair_sigma);
}

double triple_kernel_value(const FieldConfig& cfg, double d1, double d2, double d3) {
  if (d1 < 0.0 || d2 < 0.0 || d3 < 0.0) {
    throw DomainError("triple kernel distances must be >= 0");
  }
  switch (cfg.triple_reduction) {
    case TripleReduction::sum_of_squares: {
      const double r = std::sqrt(d1 * d1 + d2 * d2 + d3 * d3);
      return kernel_eval(cfg.triple_kernel, r, cfg.triple_sigma);
    }
  }
  throw DomainError("unknown triple reduction rule");
}

Region Region::grid(Vec lo, Vec hi, int points_per_axis) {
  Region r;
  r.lower = std::move(lo);
  r.upper = std::move(hi);
  r.method = QuadratureMethod::grid;
  r.grid_points_per_axis = points_per_axis;
  validate_region(r);
  return r;
}

Region Region::monte_carlo(Vec lo, Vec hi, std::int64_t samples) {
  Region r;
  r.lower = std::move(lo);
  r.upper = std::move(hi);
  r.method = QuadratureMethod::monte_carlo;
  r.mc_samples = samples;
  validate_region(r);
  return r;
}

double Region::volume() const {
  double v = 1.0;
  for (std::size_t i = 0; i < lower.size(); ++i) v *= upper[i] - lower[i];
  return v;
}

void validate_word(const Word& w) {
  if (w.position.empty()) throw DomainError("word '" + w.id + "' has an empty position");
  for (double x : w.position) {
    if (!std::isfinite(x)) throw DomainError("word '" + w.id + "' has a non-finite position");
  }
  if (!(w.strength >= 0.0) || !std::isfinite(w.strength)) {
    throw DomainError("word '" + w.id + "' strength must be finite and >= 0");
  }
  if (!(w.width > 0.0) || !std::isfinite(w.width)) {
    throw DomainError("word '" + w.id + "' width must be finite and > 0");
  }
  if (!(w.stability >= 0.0 && w.stability <= 1.0)) {
    throw DomainError("word '" + w.id + "' stability must lie in [0, 1]");
  }
}

void validate_phrase(const Phrase& p) {
  if (p.words.empty()) throw DomainError("phrase must contain at least one word");
  const std::size_t dim = p.words.front().position.size();
  for (const Word& w : p.words) {
    validate_word(w);
    if (w.position.size() != dim) {
      throw DimensionMismatch("phrase words disagree on dimension: '" + w.id + "' has " +
                              std::to_string(w.position.size()) + ", expected " +
                              std::to_string(dim));
    }
  }
}

void validate_config(const FieldConfig& cfg) {
  if (!(cfg.pair_sigma > 0.0)) throw DomainError("pair kernel scale must be > 0");
  if (!(cfg.triple_sigma > 0.0)) throw DomainError("triple kernel scale must be > 0");
  if (!std::isfinite(cfg.kappa2) || !std::isfinite(cfg.kappa3)) {
    throw DomainError("coupling constants must be finite");
  }
  if (cfg.unary_kernel.kind == KernelKind::inverse_power && !(cfg.unary_kernel.power >= 1.0)) {
    throw DomainError("inverse-power exponent must be >= 1");
  }
}

void validate_region(const Region& r) {
  if (r.lower.empty() || r.lower.size() != r.upper.size()) {
    throw DimensionMismatch("region bounds must be non-empty vectors of equal length");
  }
  for (std::size_t i = 0; i < r.lower.size(); ++i) {
    if (!(r.lower[i] < r.upper[i])) {
      throw DomainError("region lower bound must be strictly below upper on axis " +
                        std::to_string(i + 1));
    }
  }
  if (r.method == QuadratureMethod::grid && r.grid_points_per_axis < 1) {
    throw DomainError("grid_points_per_axis must be >= 1");
  }
  if (r.method == QuadratureMethod::monte_carlo && r.mc_samples < 1) {
    throw DomainError("mc_samples must be >= 1");
  }
}

std::size_t phrase_dim(const Phrase& p) {
  validate_phrase(p);
  return p.words.front().position.size();
}

}  // namespace lexfield
