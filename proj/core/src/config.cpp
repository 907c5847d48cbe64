#include "lexfield/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lexfield/errors.hpp"

namespace lexfield {

namespace {

using nlohmann::json;

double require_number(const json& j, const std::string& key) {
  if (!j.is_number()) throw ParseError("config key '" + key + "' must be a number", 0);
  return j.get<double>();
}

KernelSpec parse_kernel(const json& j, const std::string& key) {
  if (!j.is_object()) throw ParseError("config key '" + key + "' must be an object", 0);
  KernelSpec spec;
  for (const auto& [k, v] : j.items()) {
    if (k == "kind") {
      if (!v.is_string()) throw ParseError("'" + key + ".kind' must be a string", 0);
      spec.kind = kernel_kind_from_name(v.get<std::string>());
    } else if (k == "params") {
      if (!v.is_object()) throw ParseError("'" + key + ".params' must be an object", 0);
      for (const auto& [pk, pv] : v.items()) {
        if (pk == "power") {
          spec.power = require_number(pv, key + ".params.power");
        } else {
          throw ParseError("unknown config key '" + key + ".params." + pk + "'", 0);
        }
      }
    } else {
      throw ParseError("unknown config key '" + key + "." + k + "'", 0);
    }
  }
  return spec;
}

}  // namespace

Config parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config is not valid JSON: ") + e.what(), 0);
  }
  if (!root.is_object()) throw ParseError("config root must be a JSON object", 0);

  Config cfg;
  for (const auto& [key, value] : root.items()) {
    if (key == "dim") {
      if (!value.is_number_integer() || value.get<int>() < 1) {
        throw ParseError("config key 'dim' must be a positive integer", 0);
      }
      cfg.dim = value.get<int>();
    } else if (key == "unary_kernel") {
      cfg.field.unary_kernel = parse_kernel(value, "unary_kernel");
    } else if (key == "kappa2") {
      cfg.field.kappa2 = require_number(value, "kappa2");
    } else if (key == "kappa3") {
      cfg.field.kappa3 = require_number(value, "kappa3");
    } else if (key == "pair_sigma") {
      cfg.field.pair_sigma = require_number(value, "pair_sigma");
    } else if (key == "triple_sigma") {
      cfg.field.triple_sigma = require_number(value, "triple_sigma");
    } else {
      throw ParseError("unknown config key '" + key + "'", 0);
    }
  }
  validate_config(cfg.field);
  return cfg;
}

Config load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace lexfield
