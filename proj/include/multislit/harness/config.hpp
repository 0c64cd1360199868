#pragma once

// Run configuration for the command-line harness.
//
// Configuration is a flat key/value map. A config file is a JSON object whose
// keys are either dotted paths ("geometry.ell": 6e-6) or nested objects
// ({"geometry": {"ell": 6e-6}}); both flatten to the same keys. Command-line
// flags override file values.
//
//   key                    type               default
//   geometry.ell           number (m)         6e-6
//   geometry.eps           number (m)         2e-6
//   geometry.lambda        number (m)         1.8e-8
//   geometry.L             number (m)         0.037
//   bath.gamma             number (1/s)       unset (absolute-time mode)
//   bath.temperature       number (K)         2.5e-3
//   bath.mass              number (kg)        3.349e-26
//   bath.t                 number (s)         flight time L m lambda / h
//   paths.n                int or int list    command dependent
//   paths.amplitudes       number list        equal amplitudes
//   paths.pi_path          int, 1-based       n (0 disables the pi phase)
//   sweep.beta             number or list     command dependent
//   sweep.t_over_tau       number or list     command dependent
//   sweep.samples          int                4096 (phase scans)
//   sweep.screen_samples   int                2048 (screen scans)
//   sweep.x_max            number (m)         3 lambda L / ell
//   sweep.model            string             fraunhofer | exact | selective | maxcoherent
//   output.format          string             csv | json
//   output.path            string             "out" for fig*, "-" (stdout) otherwise
//   output.plot_script     bool               false

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "multislit/bath.hpp"
#include "multislit/errors.hpp"

namespace multislit::harness {

/// Validation failure tied to a configuration key.
class ConfigError : public ValidationError {
public:
  ConfigError(std::string field, const std::string& message)
      : ValidationError(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

private:
  std::string field_;
};

class IoError : public std::runtime_error {
public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

enum class OutputFormat { csv, json };
enum class ScreenModel { exact, fraunhofer, selective, maxcoherent };

std::string to_string(ScreenModel model);
std::string to_string(OutputFormat format);

struct RunConfig {
  double ell = 6e-6;
  double eps = 2e-6;
  double lambda = 1.8e-8;
  double distance = 0.037;

  std::optional<double> gamma;
  double temperature = 2.5e-3;
  double mass = 3.349e-26;
  std::optional<double> time;

  std::vector<std::size_t> n;
  std::optional<std::vector<double>> amplitudes;
  std::optional<std::size_t> pi_path;  // one-based, 0 = none

  std::optional<std::vector<double>> beta;
  std::optional<std::vector<double>> t_over_tau;
  std::size_t samples = 4096;
  std::size_t screen_samples = 2048;
  std::optional<double> x_max;
  ScreenModel model = ScreenModel::fraunhofer;

  OutputFormat format = OutputFormat::csv;
  std::optional<std::string> out;
  bool plot_script = false;

  /// Geometry for a given slit count.
  SlitGeometry geometry(std::size_t slits) const;
  /// Zero-based π path for n paths, or nullopt when disabled.
  std::optional<std::size_t> pi_index(std::size_t slits) const;
  /// Absolute evaluation time: bath.t or the flight time.
  double evaluation_time() const;
  double screen_half_width() const;

  /// Echo of every resolved field, for output metadata.
  nlohmann::json echo() const;
};

/// Flattens a (possibly nested) JSON object into dotted keys.
nlohmann::json flatten_config(const nlohmann::json& document);

/// Reads and flattens a JSON config file. Throws IoError when unreadable and
/// ConfigError on malformed JSON.
nlohmann::json load_config_file(const std::string& path);

/// Parses a "key=value" override; the value is read as JSON when possible,
/// as a comma-separated number list next, and as a bare string otherwise.
std::pair<std::string, nlohmann::json> parse_override(const std::string& assignment);

/// Builds a RunConfig from flat entries, checking types and module-level
/// invariants. Unknown keys are rejected.
RunConfig build_config(const nlohmann::json& entries);

}  // namespace multislit::harness
