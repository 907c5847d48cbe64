#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lexfield/config.hpp"
#include "lexfield/corpus.hpp"
#include "lexfield/energetics.hpp"

namespace lexfield::cli {

// Flag values that parsed but make no sense; reported as usage errors
// (exit 2), unlike computation failures (exit 1).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Inputs shared by the field-oriented subcommands.
struct SessionOptions {
  std::string config_path;  // empty: LEXFIELD_CONFIG, then defaults
  std::string words_path;
  std::string phrase_text;
};

struct Session {
  Config config;
  std::string config_hash;  // "default" when no file was loaded
  Vocabulary vocab;
  Phrase phrase;
};

// Loads config + embeddings, resolves the phrase, validates dimensions.
Session open_session(const SessionOptions& opts, bool need_phrase = true);

Config load_session_config(const std::string& config_path, std::string& hash_out);

std::vector<std::string> split_tokens(const std::string& text);

// "lo,hi" per axis, or one pair broadcast across all axes.
Region parse_region(const std::vector<std::string>& specs, std::size_t dim,
                    bool monte_carlo, int grid_points, std::int64_t mc_samples);

// comma-separated point, e.g. "0.5,-1".
Vec parse_point(const std::string& text, std::size_t dim);

// "uniform" or "gaussian:c1,...,cn,width" (single center broadcasts).
WeightFn parse_weight(const std::string& spec, std::size_t dim);

// Buffers stdout-bound text; with a path set, the flush writes the file
// plus "<path>.manifest.json" describing the run.
class OutputSink {
 public:
  OutputSink(std::string path, std::string command, std::vector<std::string> argv,
             std::string config_hash, std::uint64_t seed);

  std::ostream& stream() { return buffer_; }
  void flush();

 private:
  std::string path_;
  std::string command_;
  std::vector<std::string> argv_;
  std::string config_hash_;
  std::uint64_t seed_;
  std::ostringstream buffer_;
};

}  // namespace lexfield::cli
