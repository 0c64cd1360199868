#include "multislit/harness/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "multislit/constants.hpp"
#include "multislit/interference.hpp"

namespace multislit::harness {

using nlohmann::json;

namespace {

double as_number(const std::string& key, const json& v) {
  if (!v.is_number()) {
    throw ConfigError(key, "expected a number, got " + v.dump());
  }
  const double d = v.get<double>();
  if (!std::isfinite(d)) {
    throw ConfigError(key, "must be finite");
  }
  return d;
}

std::size_t as_count(const std::string& key, const json& v) {
  if (v.is_number_integer() && v.get<long long>() >= 0) {
    return static_cast<std::size_t>(v.get<long long>());
  }
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (d >= 0.0 && std::floor(d) == d) {
      return static_cast<std::size_t>(d);
    }
  }
  throw ConfigError(key, "expected a non-negative integer, got " + v.dump());
}

std::vector<double> as_numbers(const std::string& key, const json& v) {
  if (v.is_number()) {
    return {as_number(key, v)};
  }
  if (!v.is_array() || v.empty()) {
    throw ConfigError(key, "expected a number or a non-empty list of numbers");
  }
  std::vector<double> out;
  for (const auto& item : v) {
    out.push_back(as_number(key, item));
  }
  return out;
}

std::vector<std::size_t> as_counts(const std::string& key, const json& v) {
  if (!v.is_array()) {
    return {as_count(key, v)};
  }
  if (v.empty()) {
    throw ConfigError(key, "list must not be empty");
  }
  std::vector<std::size_t> out;
  for (const auto& item : v) {
    out.push_back(as_count(key, item));
  }
  return out;
}

std::string as_text(const std::string& key, const json& v) {
  if (!v.is_string()) {
    throw ConfigError(key, "expected a string, got " + v.dump());
  }
  return v.get<std::string>();
}

bool as_flag(const std::string& key, const json& v) {
  if (!v.is_boolean()) {
    throw ConfigError(key, "expected true or false, got " + v.dump());
  }
  return v.get<bool>();
}

void require_positive(const std::string& key, double v) {
  if (!(v > 0.0)) {
    throw ConfigError(key, "must be positive, got " + json(v).dump());
  }
}

using Setter = std::function<void(RunConfig&, const std::string&, const json&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"geometry.ell", [](RunConfig& c, const std::string& k, const json& v) { c.ell = as_number(k, v); }},
      {"geometry.eps", [](RunConfig& c, const std::string& k, const json& v) { c.eps = as_number(k, v); }},
      {"geometry.lambda", [](RunConfig& c, const std::string& k, const json& v) { c.lambda = as_number(k, v); }},
      {"geometry.L", [](RunConfig& c, const std::string& k, const json& v) { c.distance = as_number(k, v); }},
      {"bath.gamma", [](RunConfig& c, const std::string& k, const json& v) { c.gamma = as_number(k, v); }},
      {"bath.temperature",
       [](RunConfig& c, const std::string& k, const json& v) { c.temperature = as_number(k, v); }},
      {"bath.mass", [](RunConfig& c, const std::string& k, const json& v) { c.mass = as_number(k, v); }},
      {"bath.t", [](RunConfig& c, const std::string& k, const json& v) { c.time = as_number(k, v); }},
      {"paths.n", [](RunConfig& c, const std::string& k, const json& v) { c.n = as_counts(k, v); }},
      {"paths.amplitudes",
       [](RunConfig& c, const std::string& k, const json& v) { c.amplitudes = as_numbers(k, v); }},
      {"paths.pi_path", [](RunConfig& c, const std::string& k, const json& v) { c.pi_path = as_count(k, v); }},
      {"sweep.beta", [](RunConfig& c, const std::string& k, const json& v) { c.beta = as_numbers(k, v); }},
      {"sweep.t_over_tau",
       [](RunConfig& c, const std::string& k, const json& v) { c.t_over_tau = as_numbers(k, v); }},
      {"sweep.samples", [](RunConfig& c, const std::string& k, const json& v) { c.samples = as_count(k, v); }},
      {"sweep.screen_samples",
       [](RunConfig& c, const std::string& k, const json& v) { c.screen_samples = as_count(k, v); }},
      {"sweep.x_max", [](RunConfig& c, const std::string& k, const json& v) { c.x_max = as_number(k, v); }},
      {"sweep.model",
       [](RunConfig& c, const std::string& k, const json& v) {
         const auto name = as_text(k, v);
         if (name == "exact") {
           c.model = ScreenModel::exact;
         } else if (name == "fraunhofer") {
           c.model = ScreenModel::fraunhofer;
         } else if (name == "selective") {
           c.model = ScreenModel::selective;
         } else if (name == "maxcoherent") {
           c.model = ScreenModel::maxcoherent;
         } else {
           throw ConfigError(k, "unknown model '" + name + "' (exact, fraunhofer, selective, maxcoherent)");
         }
       }},
      {"output.format",
       [](RunConfig& c, const std::string& k, const json& v) {
         const auto name = as_text(k, v);
         if (name == "csv") {
           c.format = OutputFormat::csv;
         } else if (name == "json") {
           c.format = OutputFormat::json;
         } else {
           throw ConfigError(k, "unknown format '" + name + "' (csv, json)");
         }
       }},
      {"output.path", [](RunConfig& c, const std::string& k, const json& v) { c.out = as_text(k, v); }},
      {"output.plot_script",
       [](RunConfig& c, const std::string& k, const json& v) { c.plot_script = as_flag(k, v); }},
  };
  return table;
}

void validate(const RunConfig& c) {
  require_positive("geometry.ell", c.ell);
  require_positive("geometry.eps", c.eps);
  require_positive("geometry.lambda", c.lambda);
  require_positive("geometry.L", c.distance);
  require_positive("bath.temperature", c.temperature);
  require_positive("bath.mass", c.mass);
  if (c.gamma) {
    require_positive("bath.gamma", *c.gamma);
  }
  if (c.time) {
    require_positive("bath.t", *c.time);
  }
  if (c.gamma && c.t_over_tau) {
    throw ConfigError("bath.gamma", "give either bath.gamma (absolute time) or sweep.t_over_tau (scaled time), "
                                    "not both");
  }
  for (const auto n : c.n) {
    if (n < 2) {
      throw ConfigError("paths.n", "path count must be at least 2");
    }
  }
  if (c.amplitudes) {
    double norm = 0.0;
    for (const double a : *c.amplitudes) {
      norm += a * a;
    }
    if (std::abs(norm - 1.0) > kNormTolerance) {
      throw ConfigError("paths.amplitudes", "squared amplitudes must sum to 1, got " + json(norm).dump());
    }
    for (const auto n : c.n) {
      if (n != c.amplitudes->size()) {
        throw ConfigError("paths.amplitudes", "expected " + std::to_string(n) + " amplitudes");
      }
    }
  }
  if (c.pi_path) {
    for (const auto n : c.n) {
      if (*c.pi_path > n) {
        throw ConfigError("paths.pi_path", "must be between 0 and " + std::to_string(n));
      }
    }
  }
  if (c.beta) {
    for (const double b : *c.beta) {
      if (!(b >= 0.0 && b <= 1.0)) {
        throw ConfigError("sweep.beta", "values must lie in [0, 1]");
      }
    }
  }
  if (c.t_over_tau) {
    for (const double s : *c.t_over_tau) {
      if (!(s >= 0.0)) {
        throw ConfigError("sweep.t_over_tau", "values must be non-negative");
      }
    }
  }
  if (c.samples < kMinScanSamples) {
    throw ConfigError("sweep.samples", "at least " + std::to_string(kMinScanSamples) + " samples required");
  }
  if (c.screen_samples < 2) {
    throw ConfigError("sweep.screen_samples", "at least 2 samples required");
  }
  if (c.x_max) {
    require_positive("sweep.x_max", *c.x_max);
  }
}

}  // namespace

std::string to_string(ScreenModel model) {
  switch (model) {
    case ScreenModel::exact:
      return "exact";
    case ScreenModel::fraunhofer:
      return "fraunhofer";
    case ScreenModel::selective:
      return "selective";
    case ScreenModel::maxcoherent:
      return "maxcoherent";
  }
  return "unknown";
}

std::string to_string(OutputFormat format) {
  return format == OutputFormat::csv ? "csv" : "json";
}

SlitGeometry RunConfig::geometry(std::size_t slits) const {
  return SlitGeometry{slits, ell, eps, lambda, distance};
}

std::optional<std::size_t> RunConfig::pi_index(std::size_t slits) const {
  const std::size_t one_based = pi_path.value_or(slits);
  if (one_based == 0) {
    return std::nullopt;
  }
  return one_based - 1;
}

double RunConfig::evaluation_time() const {
  if (time) {
    return *time;
  }
  return distance * mass * lambda / constants::planck;
}

double RunConfig::screen_half_width() const {
  return x_max.value_or(3.0 * lambda * distance / ell);
}

json RunConfig::echo() const {
  json j;
  j["geometry.ell"] = ell;
  j["geometry.eps"] = eps;
  j["geometry.lambda"] = lambda;
  j["geometry.L"] = distance;
  j["bath.gamma"] = gamma ? json(*gamma) : json(nullptr);
  j["bath.temperature"] = temperature;
  j["bath.mass"] = mass;
  j["bath.t"] = evaluation_time();
  j["paths.n"] = n;
  j["paths.amplitudes"] = amplitudes ? json(*amplitudes) : json(nullptr);
  j["paths.pi_path"] = pi_path ? json(*pi_path) : json(nullptr);
  j["sweep.beta"] = beta ? json(*beta) : json(nullptr);
  j["sweep.t_over_tau"] = t_over_tau ? json(*t_over_tau) : json(nullptr);
  j["sweep.samples"] = samples;
  j["sweep.screen_samples"] = screen_samples;
  j["sweep.x_max"] = screen_half_width();
  j["sweep.model"] = to_string(model);
  j["output.format"] = to_string(format);
  return j;
}

json flatten_config(const json& document) {
  if (!document.is_object()) {
    throw ConfigError("<config>", "top level must be a JSON object");
  }
  json flat = json::object();
  std::function<void(const std::string&, const json&)> walk = [&](const std::string& prefix, const json& node) {
    for (const auto& [key, value] : node.items()) {
      const std::string path = prefix.empty() ? key : prefix + "." + key;
      if (value.is_object()) {
        walk(path, value);
      } else {
        flat[path] = value;
      }
    }
  };
  walk("", document);
  return flat;
}

json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot read config file '" + path + "'");
  }
  try {
    return flatten_config(json::parse(in));
  } catch (const json::parse_error& e) {
    throw ConfigError("<config>", std::string("malformed JSON in '") + path + "': " + e.what());
  }
}

std::pair<std::string, json> parse_override(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError(assignment, "override must have the form key=value");
  }
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  for (const auto& candidate : {text, "[" + text + "]"}) {
    try {
      return {key, json::parse(candidate)};
    } catch (const json::parse_error&) {
    }
  }
  return {key, json(text)};
}

RunConfig build_config(const json& entries) {
  RunConfig config;
  const auto& table = setters();
  for (const auto& [key, value] : entries.items()) {
    const auto it = table.find(key);
    if (it == table.end()) {
      throw ConfigError(key, "unknown configuration key");
    }
    if (!value.is_null()) {
      it->second(config, key, value);
    }
  }
  validate(config);
  return config;
}

}  // namespace multislit::harness
