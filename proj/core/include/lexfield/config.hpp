#pragma once

#include <string>

#include "lexfield/space.hpp"

namespace lexfield {

// Top-level configuration: space dimension plus field parameters.
// dim == 0 means "unspecified"; callers usually infer it from data and
// validate against this value when both are present.
struct Config {
  int dim = 0;
  FieldConfig field{};
};

// Parses the JSON configuration format. Recognized keys:
//   dim, unary_kernel {kind, params}, kappa2, kappa3, pair_sigma, triple_sigma
// Unknown keys are rejected with an error naming the offending key.
Config parse_config(const std::string& json_text);

Config load_config_file(const std::string& path);

}  // namespace lexfield
