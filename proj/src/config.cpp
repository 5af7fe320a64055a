// Copyright 2026 The qecho Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qecho/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

namespace qecho {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError(where + ": " + what);
}

double parse_double(const std::string& where, const std::string& value) {
  try {
    size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    fail(where, "expected a number, got '" + value + "'");
  }
}

std::int64_t parse_int(const std::string& where, const std::string& value) {
  try {
    size_t used = 0;
    const long long v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    fail(where, "expected an integer, got '" + value + "'");
  }
}

std::uint64_t parse_uint(const std::string& where, const std::string& value) {
  try {
    size_t used = 0;
    const unsigned long long v = std::stoull(value, &used);
    if (used != value.size() || value.find('-') != std::string::npos)
      throw std::invalid_argument("not a non-negative integer");
    return v;
  } catch (const std::exception&) {
    fail(where, "expected a non-negative integer, got '" + value + "'");
  }
}

bool parse_bool(const std::string& where, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  fail(where, "expected true/false, got '" + value + "'");
}

std::vector<double> parse_double_list(const std::string& where, const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) fail(where, "empty entry in list");
    out.push_back(parse_double(where, item));
  }
  if (out.empty()) fail(where, "empty list");
  return out;
}

ExperimentKind parse_experiment(const std::string& where, const std::string& value) {
  if (value == "ghz_infidelity") return ExperimentKind::GhzInfidelity;
  if (value == "cnot_average") return ExperimentKind::CnotAverage;
  if (value == "irb") return ExperimentKind::Irb;
  if (value == "bounds") return ExperimentKind::Bounds;
  fail(where, "unknown experiment '" + value +
                  "' (expected ghz_infidelity, cnot_average, irb or bounds)");
}

// Ordered key -> (value, location) pairs extracted from either format.
struct RawEntry {
  std::string value;
  std::string where;
};
using RawConfig = std::vector<std::pair<std::string, RawEntry>>;

RawConfig read_key_value(const std::string& text, const std::string& origin) {
  RawConfig raw;
  std::stringstream ss(text);
  std::string line;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = origin + ":" + std::to_string(line_no);
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(where, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(where, "empty key");
    if (value.empty()) fail(where, "empty value for key '" + key + "'");
    raw.emplace_back(key, RawEntry{value, where});
  }
  return raw;
}

std::string json_scalar_to_string(const std::string& where, const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
  if (v.is_number_float()) return format_double(v.get<double>());
  fail(where, "expected a scalar value");
}

RawConfig read_json(const std::string& text, const std::string& origin) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  if (!j.is_object()) fail(origin, "top-level JSON value must be an object");
  RawConfig raw;
  for (const auto& [key, value] : j.items()) {
    const std::string where = origin + ": key '" + key + "'";
    if (value.is_array()) {
      std::string joined;
      for (const auto& item : value) {
        if (!joined.empty()) joined += ", ";
        joined += json_scalar_to_string(where, item);
      }
      if (joined.empty()) fail(where, "empty list");
      raw.emplace_back(key, RawEntry{joined, where});
    } else {
      raw.emplace_back(key, RawEntry{json_scalar_to_string(where, value), where});
    }
  }
  return raw;
}

}  // namespace

const char* to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::GhzInfidelity: return "ghz_infidelity";
    case ExperimentKind::CnotAverage: return "cnot_average";
    case ExperimentKind::Irb: return "irb";
    case ExperimentKind::Bounds: return "bounds";
  }
  return "?";
}

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin) {
  const auto first = text.find_first_not_of(" \t\r\n");
  const bool is_json = first != std::string::npos && text[first] == '{';
  const RawConfig raw =
      is_json ? read_json(text, origin) : read_key_value(text, origin);

  ExperimentConfig cfg;
  bool seen_seed = false;
  bool seen_experiment = false;
  bool seen_dephasing = false;
  bool seen_damping = false;
  bool seen_phi_grid = false;
  std::map<std::string, std::string> seen_where;

  for (const auto& [key, entry] : raw) {
    const std::string& value = entry.value;
    const std::string& where = entry.where;
    if (seen_where.count(key))
      fail(where, "duplicate key '" + key + "' (first at " + seen_where[key] + ")");
    seen_where[key] = where;

    if (key == "schema_version") {
      const auto v = parse_int(where, value);
      if (v != 1) fail(where, "unsupported schema_version " + std::to_string(v));
      cfg.schema_version = 1;
    } else if (key == "experiment") {
      cfg.experiment = parse_experiment(where, value);
      seen_experiment = true;
    } else if (key == "seed") {
      cfg.seed = parse_uint(where, value);
      seen_seed = true;
    } else if (key == "eta_t") {
      cfg.eta_t = parse_double(where, value);
    } else if (key == "xi_t") {
      cfg.xi_t = parse_double(where, value);
    } else if (key == "theta") {
      cfg.theta = parse_double(where, value);
    } else if (key == "dephasing_weight") {
      cfg.dephasing_weight = parse_double(where, value);
      seen_dephasing = true;
    } else if (key == "damping_weight") {
      cfg.damping_weight = parse_double(where, value);
      seen_damping = true;
    } else if (key == "phi_grid") {
      cfg.phi_grid = parse_double_list(where, value);
      seen_phi_grid = true;
    } else if (key == "n_max") {
      const auto v = parse_int(where, value);
      if (v < 1 || v > 20) fail(where, "n_max must be in [1, 20]");
      cfg.n_max = static_cast<int>(v);
    } else if (key == "num_preparations") {
      const auto v = parse_int(where, value);
      if (v < 1) fail(where, "num_preparations must be >= 1");
      cfg.num_preparations = static_cast<int>(v);
    } else if (key == "shots") {
      if (value == "exact") {
        cfg.shots = 0;
      } else {
        const auto v = parse_int(where, value);
        if (v < 1) fail(where, "shots must be a positive integer or 'exact'");
        cfg.shots = v;
      }
    } else if (key == "rb_k_max") {
      const auto v = parse_int(where, value);
      if (v < 0) fail(where, "rb_k_max must be >= 0");
      cfg.rb_k_max = static_cast<int>(v);
    } else if (key == "rb_samples") {
      const auto v = parse_int(where, value);
      if (v < 1) fail(where, "rb_samples must be >= 1");
      cfg.rb_samples = static_cast<int>(v);
    } else if (key == "use_spam") {
      cfg.use_spam = parse_bool(where, value);
    } else if (key == "povm_pi0") {
      cfg.povm_pi0 = parse_double(where, value);
    } else if (key == "povm_pi1") {
      cfg.povm_pi1 = parse_double(where, value);
    } else if (key == "povm_pi2") {
      cfg.povm_pi2 = parse_double(where, value);
    } else if (key == "povm_pi3") {
      cfg.povm_pi3 = parse_double(where, value);
    } else if (key == "fiducial_alpha_x") {
      cfg.fiducial_alpha_x = parse_double(where, value);
    } else if (key == "fiducial_alpha_y") {
      cfg.fiducial_alpha_y = parse_double(where, value);
    } else if (key == "out_dir") {
      cfg.out_dir = value;
    } else {
      fail(where, "unknown key '" + key + "'");
    }
  }

  if (!seen_experiment) fail(origin, "missing mandatory key 'experiment'");
  if (!seen_seed) fail(origin, "missing mandatory key 'seed' (no entropy default)");

  // Experiment-dependent defaults: the entangling-chain experiments split the
  // dissipator evenly, the two-qubit experiments weight dephasing 10:1.
  const bool chain = cfg.experiment == ExperimentKind::GhzInfidelity ||
                     cfg.experiment == ExperimentKind::Bounds;
  if (!seen_dephasing) cfg.dephasing_weight = chain ? 0.5 : 1.0;
  if (!seen_damping) cfg.damping_weight = chain ? 0.5 : 0.1;
  if (!seen_phi_grid && cfg.experiment == ExperimentKind::CnotAverage)
    cfg.phi_grid = {0.0, 0.0125, 0.025, 0.0375, 0.05};

  if (cfg.eta_t < 0) fail(origin, "eta_t must be >= 0");
  if (cfg.xi_t < 0) fail(origin, "xi_t must be >= 0");
  if (cfg.dephasing_weight < 0 || cfg.damping_weight < 0)
    fail(origin, "dissipator weights must be >= 0");
  for (double phi : cfg.phi_grid)
    if (phi < 0) fail(origin, "phi_grid entries must be >= 0");
  try {
    validate(config_povm(cfg));
  } catch (const std::exception& e) {
    fail(origin, std::string("invalid POVM: ") + e.what());
  }
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path);
}

std::string serialize_config(const ExperimentConfig& c) {
  std::string out;
  out += "schema_version = 1\n";
  out += std::string("experiment = ") + to_string(c.experiment) + "\n";
  out += "seed = " + std::to_string(c.seed) + "\n";
  out += "eta_t = " + format_double(c.eta_t) + "\n";
  out += "xi_t = " + format_double(c.xi_t) + "\n";
  out += "theta = " + format_double(c.theta) + "\n";
  out += "dephasing_weight = " + format_double(c.dephasing_weight) + "\n";
  out += "damping_weight = " + format_double(c.damping_weight) + "\n";
  if (!c.phi_grid.empty()) {
    out += "phi_grid = ";
    for (size_t i = 0; i < c.phi_grid.size(); ++i) {
      if (i) out += ", ";
      out += format_double(c.phi_grid[i]);
    }
    out += "\n";
  }
  out += "n_max = " + std::to_string(c.n_max) + "\n";
  out += "num_preparations = " + std::to_string(c.num_preparations) + "\n";
  out += "shots = " + (c.shots == 0 ? std::string("exact") : std::to_string(c.shots)) + "\n";
  out += "rb_k_max = " + std::to_string(c.rb_k_max) + "\n";
  out += "rb_samples = " + std::to_string(c.rb_samples) + "\n";
  out += std::string("use_spam = ") + (c.use_spam ? "true" : "false") + "\n";
  out += "povm_pi0 = " + format_double(c.povm_pi0) + "\n";
  out += "povm_pi1 = " + format_double(c.povm_pi1) + "\n";
  out += "povm_pi2 = " + format_double(c.povm_pi2) + "\n";
  out += "povm_pi3 = " + format_double(c.povm_pi3) + "\n";
  out += "fiducial_alpha_x = " + format_double(c.fiducial_alpha_x) + "\n";
  out += "fiducial_alpha_y = " + format_double(c.fiducial_alpha_y) + "\n";
  out += "out_dir = " + c.out_dir + "\n";
  return out;
}

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
  return a.schema_version == b.schema_version && a.experiment == b.experiment &&
         a.seed == b.seed && a.eta_t == b.eta_t && a.xi_t == b.xi_t &&
         a.theta == b.theta && a.dephasing_weight == b.dephasing_weight &&
         a.damping_weight == b.damping_weight && a.phi_grid == b.phi_grid &&
         a.n_max == b.n_max && a.num_preparations == b.num_preparations &&
         a.shots == b.shots && a.rb_k_max == b.rb_k_max &&
         a.rb_samples == b.rb_samples && a.use_spam == b.use_spam &&
         a.povm_pi0 == b.povm_pi0 && a.povm_pi1 == b.povm_pi1 &&
         a.povm_pi2 == b.povm_pi2 && a.povm_pi3 == b.povm_pi3 &&
         a.fiducial_alpha_x == b.fiducial_alpha_x &&
         a.fiducial_alpha_y == b.fiducial_alpha_y && a.out_dir == b.out_dir;
}

ErrorParams config_error_params(const ExperimentConfig& c) {
  return config_error_params_with_eta_t(c, c.eta_t);
}

ErrorParams config_error_params_with_eta_t(const ExperimentConfig& c, double eta_t) {
  ErrorParams p;
  p.theta = c.theta;
  p.eta = eta_t / kCrDuration;
  p.xi = c.xi_t / kCrDuration;
  p.dephasing_weight = c.dephasing_weight;
  p.damping_weight = c.damping_weight;
  return p;
}

PovmSpec config_povm(const ExperimentConfig& c) {
  return PovmSpec{c.povm_pi0, c.povm_pi1, c.povm_pi2, c.povm_pi3};
}

FiducialSpec config_fiducial(const ExperimentConfig& c) {
  return FiducialSpec{c.fiducial_alpha_x, c.fiducial_alpha_y};
}

}  // namespace qecho
