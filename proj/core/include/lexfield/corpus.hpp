#pragma once

#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "lexfield/fields.hpp"

namespace lexfield {

// Word parameters assigned when an embedding source does not carry them.
struct WordDefaults {
  double strength = 1.0;
  double width = 1.0;
  double stability = 1.0;
};

struct Vocabulary {
  std::vector<Word> words;                            // load order
  std::unordered_map<std::string, std::size_t> index; // token -> ordinal

  std::size_t size() const { return words.size(); }
  std::size_t dim() const { return words.empty() ? 0 : words.front().position.size(); }
  bool contains(const std::string& token) const { return index.count(token) != 0; }
  std::size_t at(const std::string& token) const;  // throws UnknownToken
};

using TokenSequence = std::vector<std::string>;

// Text embedding format: optional "N D" header, then one word per line,
// "token v1 v2 ... vD". Tokens must be unique and whitespace-free.
Vocabulary load_embeddings(std::istream& in, const WordDefaults& defaults = {});
Vocabulary load_embeddings_file(const std::string& path,
                                const WordDefaults& defaults = {});

// Writes the same format with an explicit header; coordinates are printed
// with 17 significant digits so a reload is bit-exact.
void save_embeddings(const Vocabulary& vocab, std::ostream& out);
void save_embeddings_file(const Vocabulary& vocab, const std::string& path);

struct Neighbor {
  std::string token;
  double similarity;
};

// Ranks the vocabulary by cosine similarity to v_a - v_b + v_c, excluding
// a, b and c. Ties break by vocabulary order; k is clamped to the number
// of candidates.
std::vector<Neighbor> analogy(const Vocabulary& vocab, const std::string& a,
                              const std::string& b, const std::string& c,
                              std::size_t k);

// Top-k cosine neighbors of a token, excluding the token itself.
std::vector<Neighbor> nearest_neighbors(const Vocabulary& vocab,
                                        const std::string& token,
                                        std::size_t k);

// Resolves tokens against the vocabulary into a phrase.
Phrase make_phrase(const Vocabulary& vocab, const TokenSequence& tokens);

// Total negative log-likelihood of the sequence under the field language
// model: P(w | context) is the softmax over the vocabulary of the context
// phrase field evaluated at each candidate position. Loss runs over
// positions t >= 2; temperature divides the logits.
double lm_loss(const Vocabulary& vocab, const TokenSequence& seq,
               const FieldConfig& cfg, int context_window = 8,
               double temperature = 1.0);

struct LmFitResult {
  Vocabulary vocab;
  std::vector<double> history;  // history[0] is the initial loss
};

// Gradient descent on the corpus loss over word positions (central
// differences, backtracking step halving). History never increases.
LmFitResult lm_fit(const Vocabulary& vocab,
                   const std::vector<TokenSequence>& corpus,
                   const FieldConfig& cfg, int steps, double learn_rate,
                   int context_window = 8, double temperature = 1.0);

}  // namespace lexfield
