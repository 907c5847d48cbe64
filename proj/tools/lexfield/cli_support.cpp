#include "cli_support.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "lexfield/errors.hpp"
#include "lexfield/version.hpp"

namespace lexfield::cli {

namespace {

double parse_number(const std::string& s, const std::string& what) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw UsageError("cannot parse " + what + " from '" + s + "'");
  }
  return v;
}

std::vector<double> parse_csv_numbers(const std::string& text, const std::string& what) {
  std::vector<double> values;
  std::string item;
  std::istringstream ss(text);
  while (std::getline(ss, item, ',')) values.push_back(parse_number(item, what));
  if (values.empty()) throw UsageError("empty " + what);
  return values;
}

}  // namespace

std::vector<std::string> split_tokens(const std::string& text) {
  std::vector<std::string> tokens;
  std::istringstream ss(text);
  std::string token;
  while (ss >> token) tokens.push_back(std::move(token));
  return tokens;
}

Config load_session_config(const std::string& config_path, std::string& hash_out) {
  std::string path = config_path;
  if (path.empty()) {
    if (const char* env = std::getenv("LEXFIELD_CONFIG")) path = env;
  }
  if (path.empty()) {
    hash_out = "default";
    return Config{};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  char hex[32];
  std::snprintf(hex, sizeof(hex), "fnv1a:%016llx",
                static_cast<unsigned long long>(fnv1a64(buf.str())));
  hash_out = hex;
  return parse_config(buf.str());
}

Session open_session(const SessionOptions& opts, bool need_phrase) {
  Session s;
  s.config = load_session_config(opts.config_path, s.config_hash);
  if (opts.words_path.empty()) throw UsageError("--words is required");
  s.vocab = load_embeddings_file(opts.words_path);
  if (s.config.dim > 0 && static_cast<std::size_t>(s.config.dim) != s.vocab.dim()) {
    throw Error("config dim " + std::to_string(s.config.dim) +
                " does not match embeddings of dimension " + std::to_string(s.vocab.dim()));
  }
  if (need_phrase) {
    const auto tokens = split_tokens(opts.phrase_text);
    if (tokens.empty()) throw UsageError("--phrase must name at least one token");
    s.phrase = make_phrase(s.vocab, tokens);
  }
  return s;
}

Region parse_region(const std::vector<std::string>& specs, std::size_t dim,
                    bool monte_carlo, int grid_points, std::int64_t mc_samples) {
  if (specs.empty()) throw UsageError("--region is required");
  if (specs.size() != 1 && specs.size() != dim) {
    throw UsageError("--region given " + std::to_string(specs.size()) +
                     " times for a " + std::to_string(dim) + "-dimensional space");
  }
  Vec lo(dim), hi(dim);
  for (std::size_t d = 0; d < dim; ++d) {
    const std::string& spec = specs[specs.size() == 1 ? 0 : d];
    const auto bounds = parse_csv_numbers(spec, "region bound");
    if (bounds.size() != 2) {
      throw UsageError("region axis must be 'lo,hi', got '" + spec + "'");
    }
    lo[d] = bounds[0];
    hi[d] = bounds[1];
  }
  return monte_carlo ? Region::monte_carlo(std::move(lo), std::move(hi), mc_samples)
                     : Region::grid(std::move(lo), std::move(hi), grid_points);
}

Vec parse_point(const std::string& text, std::size_t dim) {
  auto values = parse_csv_numbers(text, "point coordinate");
  if (values.size() == 1 && dim > 1) values.assign(dim, values[0]);
  if (values.size() != dim) {
    throw UsageError("point '" + text + "' has " + std::to_string(values.size()) +
                     " coordinates, expected " + std::to_string(dim));
  }
  return values;
}

WeightFn parse_weight(const std::string& spec, std::size_t dim) {
  if (spec == "uniform") {
    return [](const Vec&) { return 1.0; };
  }
  const std::string prefix = "gaussian:";
  if (spec.rfind(prefix, 0) == 0) {
    auto values = parse_csv_numbers(spec.substr(prefix.size()), "weight parameter");
    if (values.size() < 2) {
      throw UsageError("gaussian weight needs 'gaussian:center...,width'");
    }
    const double width = values.back();
    values.pop_back();
    if (!(width > 0.0)) throw UsageError("gaussian weight width must be > 0");
    if (values.size() == 1 && dim > 1) values.assign(dim, values[0]);
    if (values.size() != dim) {
      throw UsageError("gaussian weight center has " + std::to_string(values.size()) +
                       " coordinates, expected " + std::to_string(dim));
    }
    const Vec center = values;
    return [center, width](const Vec& q) {
      return std::exp(-squared_distance(q, center) / (2.0 * width * width));
    };
  }
  throw UsageError("unknown weight '" + spec + "' (expected uniform or gaussian:...)");
}

OutputSink::OutputSink(std::string path, std::string command,
                       std::vector<std::string> argv, std::string config_hash,
                       std::uint64_t seed)
    : path_(std::move(path)),
      command_(std::move(command)),
      argv_(std::move(argv)),
      config_hash_(std::move(config_hash)),
      seed_(seed) {}

void OutputSink::flush() {
  if (path_.empty()) {
    std::cout << buffer_.str();
    std::cout.flush();
    return;
  }
  std::ofstream out(path_, std::ios::binary);
  if (!out) throw Error("cannot open output file: " + path_);
  out << buffer_.str();
  out.close();

  nlohmann::json manifest;
  manifest["command"] = command_;
  manifest["argv"] = argv_;
  manifest["config_hash"] = config_hash_;
  manifest["seed"] = seed_;
  manifest["version"] = std::string(kVersion);
  std::ofstream mf(path_ + ".manifest.json", std::ios::binary);
  if (!mf) throw Error("cannot open manifest file: " + path_ + ".manifest.json");
  mf << manifest.dump(2) << '\n';
}

}  // namespace lexfield::cli
