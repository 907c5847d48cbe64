#include "lexfield/attention.hpp"

#include <algorithm>
#include <cmath>

#include "lexfield/errors.hpp"
#include "lexfield/fields.hpp"

namespace lexfield {

ProjectionSet ProjectionSet::identity(std::size_t dim) {
  return {Matrix::identity(dim), Matrix::identity(dim), Matrix::identity(dim)};
}

void validate_projections(const ProjectionSet& proj) {
  if (proj.wq.rows == 0 || proj.wq.cols == 0) {
    throw DimensionMismatch("projection matrices must be non-empty");
  }
  const auto same = [&](const Matrix& m) {
    return m.rows == proj.wq.rows && m.cols == proj.wq.cols;
  };
  if (!same(proj.wk) || !same(proj.wv)) {
    throw DimensionMismatch("W_Q, W_K, W_V must share one d_k x d_model shape");
  }
}

double compatibility(const Vec& u, const Vec& v, std::size_t d_k) {
  if (u.size() != v.size()) {
    throw DimensionMismatch("compatibility requires vectors of equal length");
  }
  if (d_k == 0) throw DomainError("d_k must be >= 1");
  return dot(u, v) / std::sqrt(static_cast<double>(d_k));
}

Vec attention_weights(const Vec& logits) {
  if (logits.empty()) throw DomainError("attention weights require at least one logit");
  double max_logit = logits.front();
  for (double l : logits) {
    if (!std::isfinite(l)) throw DomainError("attention logits must be finite");
    max_logit = std::max(max_logit, l);
  }
  Vec weights(logits.size());
  double total = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    weights[i] = std::exp(logits[i] - max_logit);
    total += weights[i];
  }
  for (double& w : weights) w /= total;
  return weights;
}

Vec contextualize(const Word& wj, const std::vector<Word>& context,
                  const FieldConfig& cfg) {
  validate_word(wj);
  if (context.empty()) return wj.position;

  const std::size_t dim = wj.position.size();
  Vec logits(context.size());
  for (std::size_t k = 0; k < context.size(); ++k) {
    validate_word(context[k]);
    if (context[k].position.size() != dim) {
      throw DimensionMismatch("context word '" + context[k].id +
                              "' does not match the query dimension");
    }
    logits[k] = compatibility(wj.position, context[k].position, dim);
  }
  const Vec alpha = attention_weights(logits);

  Vec result = wj.position;
  for (std::size_t k = 0; k < context.size(); ++k) {
    const double interaction =
        cfg.kappa2 * pair_kernel_value(cfg, distance(wj.position, context[k].position));
    add_scaled(result, alpha[k] * interaction, context[k].position);
  }
  return result;
}

AttentionOutput scaled_dot_attention(const std::vector<Vec>& x,
                                     const ProjectionSet& proj,
                                     std::size_t query_pos) {
  validate_projections(proj);
  if (x.empty()) throw DomainError("attention requires at least one input vector");
  if (query_pos >= x.size()) {
    throw DomainError("query position " + std::to_string(query_pos) +
                      " out of range for " + std::to_string(x.size()) + " inputs");
  }
  for (const Vec& v : x) {
    if (v.size() != proj.d_model()) {
      throw DimensionMismatch("input vectors must have length d_model = " +
                              std::to_string(proj.d_model()));
    }
  }

  const Vec query = matvec(proj.wq, x[query_pos]);
  Vec logits(x.size());
  for (std::size_t s = 0; s < x.size(); ++s) {
    logits[s] = compatibility(query, matvec(proj.wk, x[s]), proj.d_k());
  }
  AttentionOutput out;
  out.weights = attention_weights(logits);
  out.output.assign(proj.d_k(), 0.0);
  for (std::size_t s = 0; s < x.size(); ++s) {
    add_scaled(out.output, out.weights[s], matvec(proj.wv, x[s]));
  }
  return out;
}

Vec field_attention_weights(const Phrase& p, std::size_t query_pos,
                            const Vec& q, const FieldConfig& cfg) {
  validate_phrase(p);
  const std::size_t m = p.words.size();
  if (query_pos >= m) {
    throw DomainError("query position " + std::to_string(query_pos) +
                      " out of range for phrase of length " + std::to_string(m));
  }

  Vec strengths;
  strengths.reserve(m - 1);
  for (std::size_t s = 0; s < m; ++s) {
    if (s == query_pos) continue;
    strengths.push_back(pairwise_interaction(p.words[query_pos], p.words[s], q, cfg));
  }
  double total = 0.0;
  for (double v : strengths) total += v;
  if (strengths.empty() || total == 0.0) {
    throw DegenerateNormalization(
        "field attention row sums to zero; weights are undefined");
  }
  for (double& v : strengths) v /= total;
  return strengths;
}

double attention_divergence(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) {
    throw DimensionMismatch("divergence requires distributions of equal length");
  }
  constexpr double kSumTolerance = 1e-9;
  const auto check_distribution = [](const Vec& d, const char* name) {
    double sum = 0.0;
    for (double v : d) {
      if (!(v >= -kSumTolerance)) {
        throw DomainError(std::string(name) + " has a negative component");
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > kSumTolerance) {
      throw DomainError(std::string(name) + " does not sum to 1");
    }
  };
  check_distribution(a, "first distribution");
  check_distribution(b, "second distribution");

  double tv = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) tv += std::abs(a[i] - b[i]);
  return 0.5 * tv;
}

}  // namespace lexfield
