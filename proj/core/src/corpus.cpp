#include "lexfield/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "lexfield/errors.hpp"

namespace lexfield {

namespace {

constexpr double kPositionGradStep = 1e-4;

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream ss(line);
  std::string field;
  while (ss >> field) fields.push_back(std::move(field));
  return fields;
}

bool parse_double(const std::string& s, double& out) {
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() && !s.empty();
}

bool parse_count(const std::string& s, std::size_t& out) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) return false;
  out = std::strtoull(s.c_str(), nullptr, 10);
  return true;
}

double cosine(const Vec& u, const Vec& v) {
  const double nu = norm(u);
  const double nv = norm(v);
  if (nu == 0.0 || nv == 0.0) return 0.0;
  return dot(u, v) / (nu * nv);
}

std::vector<Neighbor> rank_by_cosine(const Vocabulary& vocab, const Vec& query,
                                     const std::vector<std::string>& excluded,
                                     std::size_t k) {
  std::vector<Neighbor> scored;
  scored.reserve(vocab.size());
  for (const Word& w : vocab.words) {
    if (std::find(excluded.begin(), excluded.end(), w.id) != excluded.end()) continue;
    scored.push_back({w.id, cosine(query, w.position)});
  }
  // stable sort keeps vocabulary order on ties
  std::stable_sort(scored.begin(), scored.end(),
                   [](const Neighbor& a, const Neighbor& b) {
                     return a.similarity > b.similarity;
                   });
  if (scored.size() > k) scored.resize(k);
  return scored;
}

double logsumexp(const Vec& logits) {
  double max_logit = logits.front();
  for (double l : logits) max_logit = std::max(max_logit, l);
  double acc = 0.0;
  for (double l : logits) acc += std::exp(l - max_logit);
  return max_logit + std::log(acc);
}

std::vector<std::vector<std::size_t>> resolve_corpus(
    const Vocabulary& vocab, const std::vector<TokenSequence>& corpus) {
  std::vector<std::vector<std::size_t>> resolved;
  resolved.reserve(corpus.size());
  for (const TokenSequence& seq : corpus) {
    std::vector<std::size_t> ids;
    ids.reserve(seq.size());
    for (const std::string& token : seq) ids.push_back(vocab.at(token));
    resolved.push_back(std::move(ids));
  }
  return resolved;
}

// Loss over one resolved sequence given the current word positions.
double sequence_loss(const Vocabulary& vocab, const std::vector<std::size_t>& ids,
                     const FieldConfig& cfg, int context_window, double temperature) {
  double loss = 0.0;
  Vec logits(vocab.size());
  for (std::size_t t = 1; t < ids.size(); ++t) {
    const std::size_t begin = (t > static_cast<std::size_t>(context_window))
                                  ? t - static_cast<std::size_t>(context_window)
                                  : 0;
    Phrase context;
    context.words.reserve(t - begin);
    for (std::size_t s = begin; s < t; ++s) context.words.push_back(vocab.words[ids[s]]);

    for (std::size_t w = 0; w < vocab.size(); ++w) {
      logits[w] = linguistic_field(context, vocab.words[w].position, cfg) / temperature;
    }
    loss += logsumexp(logits) - logits[ids[t]];
  }
  return loss;
}

}  // namespace

std::size_t Vocabulary::at(const std::string& token) const {
  const auto it = index.find(token);
  if (it == index.end()) throw UnknownToken("unknown token '" + token + "'");
  return it->second;
}

Vocabulary load_embeddings(std::istream& in, const WordDefaults& defaults) {
  if (!(defaults.width > 0.0)) throw DomainError("default width must be > 0");
  if (!(defaults.strength >= 0.0)) throw DomainError("default strength must be >= 0");

  Vocabulary vocab;
  std::size_t expected_count = 0;
  std::size_t expected_dim = 0;
  bool have_header = false;
  bool first_content_line = true;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = split_fields(line);
    if (fields.empty()) continue;  // blank lines are ignored

    if (first_content_line && fields.size() == 2) {
      // optional "N D" header: exactly two unsigned integers
      std::size_t n = 0;
      std::size_t d = 0;
      if (parse_count(fields[0], n) && parse_count(fields[1], d)) {
        if (n == 0 || d == 0) {
          throw ParseError("header counts must be positive", line_no);
        }
        expected_count = n;
        expected_dim = d;
        have_header = true;
        first_content_line = false;
        continue;
      }
    }
    first_content_line = false;

    if (fields.size() < 2) {
      throw ParseError("expected 'token v1 ... vD', got " + std::to_string(fields.size()) +
                           " fields",
                       line_no);
    }
    const std::string& token = fields.front();
    const std::size_t dim = fields.size() - 1;
    if (expected_dim == 0) {
      expected_dim = dim;
    } else if (dim != expected_dim) {
      throw ParseError("expected " + std::to_string(expected_dim) + " components, got " +
                           std::to_string(dim),
                       line_no);
    }
    if (vocab.index.count(token) != 0) {
      throw ParseError("duplicate token '" + token + "'", line_no);
    }

    Word w;
    w.id = token;
    w.position.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      double v = 0.0;
      if (!parse_double(fields[i + 1], v)) {
        throw ParseError("component " + std::to_string(i + 1) + " of token '" + token +
                             "' is not a number",
                         line_no);
      }
      if (!std::isfinite(v)) {
        throw ParseError("component " + std::to_string(i + 1) + " of token '" + token +
                             "' is not finite",
                         line_no);
      }
      w.position[i] = v;
    }
    w.strength = defaults.strength;
    w.width = defaults.width;
    w.stability = defaults.stability;
    validate_word(w);

    vocab.index.emplace(token, vocab.words.size());
    vocab.words.push_back(std::move(w));
  }

  if (vocab.words.empty()) throw ParseError("embedding source contains no words", line_no);
  if (have_header && vocab.words.size() != expected_count) {
    throw ParseError("header announced " + std::to_string(expected_count) + " words, file has " +
                         std::to_string(vocab.words.size()),
                     line_no);
  }
  return vocab;
}

Vocabulary load_embeddings_file(const std::string& path, const WordDefaults& defaults) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open embeddings file: " + path);
  return load_embeddings(in, defaults);
}

void save_embeddings(const Vocabulary& vocab, std::ostream& out) {
  out << vocab.words.size() << ' ' << vocab.dim() << '\n';
  for (const Word& w : vocab.words) {
    out << w.id;
    for (double x : w.position) out << ' ' << format_double(x);
    out << '\n';
  }
}

void save_embeddings_file(const Vocabulary& vocab, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open output file: " + path);
  save_embeddings(vocab, out);
}

std::vector<Neighbor> analogy(const Vocabulary& vocab, const std::string& a,
                              const std::string& b, const std::string& c,
                              std::size_t k) {
  const Vec& va = vocab.words[vocab.at(a)].position;
  const Vec& vb = vocab.words[vocab.at(b)].position;
  const Vec& vc = vocab.words[vocab.at(c)].position;

  Vec query(va.size());
  for (std::size_t i = 0; i < query.size(); ++i) query[i] = va[i] - vb[i] + vc[i];
  if (norm(query) == 0.0) {
    throw DegenerateNormalization("analogy query vector has zero norm");
  }
  return rank_by_cosine(vocab, query, {a, b, c}, k);
}

std::vector<Neighbor> nearest_neighbors(const Vocabulary& vocab,
                                        const std::string& token,
                                        std::size_t k) {
  const Vec& query = vocab.words[vocab.at(token)].position;
  return rank_by_cosine(vocab, query, {token}, k);
}

Phrase make_phrase(const Vocabulary& vocab, const TokenSequence& tokens) {
  Phrase p;
  p.words.reserve(tokens.size());
  for (const std::string& token : tokens) p.words.push_back(vocab.words[vocab.at(token)]);
  validate_phrase(p);
  return p;
}

double lm_loss(const Vocabulary& vocab, const TokenSequence& seq,
               const FieldConfig& cfg, int context_window, double temperature) {
  if (vocab.words.empty()) throw DomainError("vocabulary is empty");
  if (seq.size() < 2) throw DomainError("sequence must contain at least two tokens");
  if (context_window < 1) throw DomainError("context window must be >= 1");
  if (!(temperature > 0.0)) throw DomainError("temperature must be > 0");

  std::vector<std::size_t> ids;
  ids.reserve(seq.size());
  for (const std::string& token : seq) ids.push_back(vocab.at(token));
  return sequence_loss(vocab, ids, cfg, context_window, temperature);
}

LmFitResult lm_fit(const Vocabulary& vocab,
                   const std::vector<TokenSequence>& corpus,
                   const FieldConfig& cfg, int steps, double learn_rate,
                   int context_window, double temperature) {
  if (steps < 1) throw DomainError("steps must be >= 1");
  if (!(learn_rate > 0.0)) throw DomainError("learn rate must be > 0");
  if (context_window < 1) throw DomainError("context window must be >= 1");
  if (!(temperature > 0.0)) throw DomainError("temperature must be > 0");
  if (corpus.empty()) throw DomainError("corpus is empty");
  for (const TokenSequence& seq : corpus) {
    if (seq.size() < 2) throw DomainError("every corpus sequence needs at least two tokens");
  }

  Vocabulary current = vocab;
  const auto resolved = resolve_corpus(current, corpus);
  const auto total_loss = [&](const Vocabulary& v) {
    double loss = 0.0;
    for (const auto& ids : resolved) {
      loss += sequence_loss(v, ids, cfg, context_window, temperature);
    }
    return loss;
  };

  double loss = total_loss(current);
  std::vector<double> history;
  history.reserve(steps + 1);
  history.push_back(loss);

  const std::size_t dim = current.dim();
  for (int step = 0; step < steps; ++step) {
    std::vector<Vec> grad(current.size(), Vec(dim, 0.0));
    double grad_norm2 = 0.0;
    {
      Vocabulary probe = current;
      for (std::size_t w = 0; w < current.size(); ++w) {
        for (std::size_t d = 0; d < dim; ++d) {
          const double original = current.words[w].position[d];
          probe.words[w].position[d] = original + kPositionGradStep;
          const double fwd = total_loss(probe);
          probe.words[w].position[d] = original - kPositionGradStep;
          const double bwd = total_loss(probe);
          probe.words[w].position[d] = original;
          const double g = (fwd - bwd) / (2.0 * kPositionGradStep);
          grad[w][d] = g;
          grad_norm2 += g * g;
        }
      }
    }

    if (grad_norm2 == 0.0) {
      history.push_back(loss);
      continue;
    }

    double s = learn_rate;
    while (s > learn_rate * 1e-12) {
      Vocabulary candidate = current;
      for (std::size_t w = 0; w < candidate.size(); ++w) {
        add_scaled(candidate.words[w].position, -s, grad[w]);
      }
      const double candidate_loss = total_loss(candidate);
      if (candidate_loss <= loss) {
        current = std::move(candidate);
        loss = candidate_loss;
        break;
      }
      s *= 0.5;
    }
    history.push_back(loss);
  }
  return {std::move(current), std::move(history)};
}

}  // namespace lexfield
