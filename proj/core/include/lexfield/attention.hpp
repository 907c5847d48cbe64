#pragma once

#include "lexfield/space.hpp"

namespace lexfield {

struct AttentionOutput {
  Vec weights;  // one per context position, non-negative, sums to 1
  Vec output;   // convex combination of value vectors
};

// Query/key/value projections, each d_k x d_model.
struct ProjectionSet {
  Matrix wq;
  Matrix wk;
  Matrix wv;

  std::size_t d_k() const { return wq.rows; }
  std::size_t d_model() const { return wq.cols; }

  static ProjectionSet identity(std::size_t dim);
};

void validate_projections(const ProjectionSet& proj);

// Scaled dot product u . v / sqrt(d_k).
double compatibility(const Vec& u, const Vec& v, std::size_t d_k);

// Softmax with max subtraction. Rejects empty input and non-finite logits.
Vec attention_weights(const Vec& logits);

// Contextual representation: v_wj plus attention-weighted interaction
// contributions from the context words. The per-word interaction function
// is kappa2 * K2(|u - v|; pair_sigma).
Vec contextualize(const Word& wj, const std::vector<Word>& context,
                  const FieldConfig& cfg);

// Single-query attention over x[0..T-1]; query_pos is 0-based.
AttentionOutput scaled_dot_attention(const std::vector<Vec>& x,
                                     const ProjectionSet& proj,
                                     std::size_t query_pos);

// Field approximation of attention: pairwise interaction strengths of the
// query word against every other phrase position, evaluated at q and
// normalized to sum to 1. Returns m-1 weights in position order.
Vec field_attention_weights(const Phrase& p, std::size_t query_pos,
                            const Vec& q, const FieldConfig& cfg);

// Total variation distance between two distributions: 0.5 * sum |a - b|.
double attention_divergence(const Vec& a, const Vec& b);

}  // namespace lexfield
