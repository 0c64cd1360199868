#include "multislit/harness/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "multislit/constants.hpp"
#include "multislit/interference.hpp"
#include "multislit/metrology.hpp"

namespace multislit::harness {

using nlohmann::json;

namespace {

std::size_t single_path_count(const RunConfig& config, std::size_t fallback) {
  if (config.n.empty()) {
    return fallback;
  }
  if (config.n.size() != 1) {
    throw ConfigError("paths.n", "this command takes a single path count");
  }
  return config.n.front();
}

double single_value(const std::optional<std::vector<double>>& values, const char* key, double fallback) {
  if (!values) {
    return fallback;
  }
  if (values->size() != 1) {
    throw ConfigError(key, "this command takes a single value");
  }
  return values->front();
}

std::vector<double> strictly_increasing(const std::optional<std::vector<double>>& values, const char* key,
                                        std::vector<double> fallback) {
  auto grid = values.value_or(std::move(fallback));
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw ConfigError(key, "grid must be strictly increasing");
    }
  }
  return grid;
}

PathConfiguration configured_paths(const RunConfig& config, std::size_t n) {
  if (!config.amplitudes) {
    return PathConfiguration::equal(n, config.pi_index(n));
  }
  if (config.amplitudes->size() != n) {
    throw ConfigError("paths.amplitudes", "expected " + std::to_string(n) + " amplitudes");
  }
  std::vector<cplx> c(config.amplitudes->begin(), config.amplitudes->end());
  return PathConfiguration(std::move(c), {}, config.pi_index(n));
}

std::string short_number(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%g", v);
  return buffer;
}

}  // namespace

std::vector<std::size_t> default_path_counts() {
  return {3, 4, 5, 6};
}

std::vector<double> default_beta_grid() {
  return uniform_grid(0.0, 1.0, 101);
}

std::vector<double> default_fig4_times() {
  return {0.0, 1.0 / 12.0, 0.25, 0.5, 2.0};
}

std::vector<double> default_time_grid() {
  return uniform_grid(0.0, 4.0, 201);
}

Environment scaled_environment(const RunConfig& config, double t_over_tau, double t) {
  const double diffusion = diffusion_for_scaled_time(t_over_tau, config.ell, t);
  const double gamma = diffusion / (2.0 * config.mass * constants::boltzmann * config.temperature);
  Environment env{config.mass, gamma, diffusion};
  env.validate();
  return env;
}

std::vector<Table> run_fig2_fig3(const RunConfig& config, const std::string& stem) {
  const auto counts = config.n.empty() ? default_path_counts() : config.n;
  const auto grid = strictly_increasing(config.beta, "sweep.beta", default_beta_grid());
  std::vector<Table> tables;
  for (const auto n : counts) {
    const auto sweep = sweep_beta(n, grid, config.samples, config.pi_index(n).has_value());
    Table table{stem + "_n" + std::to_string(n), {"one_path_knowledge", "visibility", "coherence"}, {}, {}};
    for (auto it = sweep.rows.rbegin(); it != sweep.rows.rend(); ++it) {
      table.rows.push_back({it->one_path_knowledge, it->visibility, it->coherence});
    }
    table.meta = {{"n", n}, {"pi_phase", config.pi_index(n).has_value()}, {"phase_samples", config.samples}};
    validate_table(table);
    tables.push_back(std::move(table));
  }
  return tables;
}

std::vector<Table> run_fig4(const RunConfig& config) {
  if (config.gamma) {
    throw ConfigError("bath.gamma", "fig4 is parameterized by sweep.t_over_tau");
  }
  const std::size_t n = single_path_count(config, 4);
  const auto geom = config.geometry(n);
  geom.require_fraunhofer();
  const auto times = config.t_over_tau.value_or(default_fig4_times());
  const double t = config.evaluation_time();
  const double half_width = config.screen_half_width();
  const auto xs = uniform_grid(-half_width, half_width, config.screen_samples);

  const bool custom = config.amplitudes.has_value();
  const auto paths = configured_paths(config, n);
  if (paths.pi_index() != n - 1) {
    throw ConfigError("paths.pi_path", "fig4 needs the pi phase on the last path");
  }
  auto density = [&](const Environment& env, double x) {
    return custom ? screen_density_selective(geom, paths, env, t, x) : screen_density_maxcoherent(geom, env, t, x);
  };
  const double reference = density(scaled_environment(config, 0.0, t), 0.0);

  std::vector<Table> tables;
  for (const double s : times) {
    const auto env = scaled_environment(config, s, t);
    Table table{"fig4_tau" + short_number(s), {"x", "density", "ratio", "peak_normalized"}, {}, {}};
    double peak = 0.0;
    for (const double x : xs) {
      const double rho = density(env, x);
      peak = std::max(peak, rho);
      table.rows.push_back({x, rho, rho / reference, 0.0});
    }
    for (auto& row : table.rows) {
      row[3] = row[1] / peak;
    }
    const auto fringe = scan_periodic(
        [&](double x) { return density(env, x) / fraunhofer_envelope(geom, env, t, x); }, config.samples,
        geom.fringe_period(), ScanAxis::screen);
    table.meta = {{"n", n},
                  {"t_over_tau", s},
                  {"t", t},
                  {"diffusion", env.diffusion},
                  {"gamma", env.gamma},
                  {"spreading_width", spreading_width(geom.eps, env, t)},
                  {"reference_density", reference},
                  {"fringe_visibility", fringe.visibility},
                  {"x_half_width", half_width},
                  {"screen_samples", config.screen_samples}};
    validate_table(table);
    tables.push_back(std::move(table));
  }
  return tables;
}

std::vector<Table> run_fig5(const RunConfig& config) {
  if (config.gamma) {
    throw ConfigError("bath.gamma", "fig5 is parameterized by sweep.t_over_tau");
  }
  const auto counts = config.n.empty() ? default_path_counts() : config.n;
  const auto grid = strictly_increasing(config.t_over_tau, "sweep.t_over_tau", default_time_grid());
  std::vector<Table> tables;
  for (const auto n : counts) {
    Table table{"fig5_n" + std::to_string(n), {"t_over_tau", "visibility", "coherence"}, {}, {}};
    for (const auto& row : visibility_vs_time(n, grid, config.samples)) {
      table.rows.push_back({row.t_over_tau, row.visibility, row.coherence});
    }
    table.meta = {{"n", n}, {"phase_samples", config.samples}};
    validate_table(table);
    tables.push_back(std::move(table));
  }
  return tables;
}

Table run_scan(const RunConfig& config) {
  const std::size_t n = single_path_count(config, 4);
  const double beta = single_value(config.beta, "sweep.beta", 1.0);
  const auto paths = configured_paths(config, n);
  const auto overlaps = DetectorOverlapMatrix::one_path_knowledge(n, beta);
  const auto scan = scan_phase(paths, overlaps, config.samples);
  Table table{"scan_n" + std::to_string(n), {"theta", "intensity"}, {}, {}};
  table.rows.reserve(scan.samples.size());
  for (const auto& s : scan.samples) {
    table.rows.push_back({s.abscissa, s.intensity});
  }
  table.meta = {{"n", n},
                {"beta", beta},
                {"i_max", scan.i_max},
                {"i_min", scan.i_min},
                {"visibility", scan.visibility},
                {"l1_coherence", l1_coherence(build_reduced_density(paths, overlaps))}};
  validate_table(table);
  return table;
}

Table run_screen(const RunConfig& config) {
  const std::size_t n = single_path_count(config, 4);
  const auto geom = config.geometry(n);
  geom.validate();
  const double t = config.evaluation_time();
  Environment env;
  if (config.gamma) {
    env = Environment::from(BathParameters(*config.gamma, config.temperature, config.mass));
  } else {
    env = scaled_environment(config, single_value(config.t_over_tau, "sweep.t_over_tau", 0.0), t);
  }
  const double beta = single_value(config.beta, "sweep.beta", 1.0);
  const auto paths = configured_paths(config, n);
  const auto overlaps = DetectorOverlapMatrix::one_path_knowledge(n, beta);
  if (config.model == ScreenModel::maxcoherent && config.amplitudes) {
    throw ConfigError("paths.amplitudes", "the maxcoherent model uses equal amplitudes");
  }
  if ((config.model == ScreenModel::selective || config.model == ScreenModel::maxcoherent) &&
      paths.pi_index() != n - 1) {
    throw ConfigError("paths.pi_path", "path-selective models need the pi phase on the last path");
  }

  auto density = [&](double x) {
    switch (config.model) {
      case ScreenModel::exact:
        return screen_density_exact(geom, paths, overlaps, env, t, x);
      case ScreenModel::fraunhofer:
        return screen_density_fraunhofer(geom, paths, overlaps, env, t, x);
      case ScreenModel::selective:
        return screen_density_selective(geom, paths, env, t, x);
      case ScreenModel::maxcoherent:
        return screen_density_maxcoherent(geom, env, t, x);
    }
    return 0.0;
  };

  const double half_width = config.screen_half_width();
  Table table{"screen_n" + std::to_string(n), {"x", "density"}, {}, {}};
  for (const double x : uniform_grid(-half_width, half_width, config.screen_samples)) {
    table.rows.push_back({x, density(x)});
  }
  table.meta = {{"n", n},
                {"model", to_string(config.model)},
                {"beta", beta},
                {"t", t},
                {"gamma", env.gamma},
                {"diffusion", env.diffusion},
                {"spreading_width", spreading_width(geom.eps, env, t)},
                {"fraunhofer_ratio", geom.fraunhofer_ratio()},
                {"x_half_width", half_width},
                {"screen_samples", config.screen_samples}};
  validate_table(table);
  return table;
}

Table run_decay(const RunConfig& config) {
  if (config.gamma) {
    throw ConfigError("bath.gamma", "decay is parameterized by sweep.t_over_tau");
  }
  const std::size_t n = single_path_count(config, 4);
  const auto grid = strictly_increasing(config.t_over_tau, "sweep.t_over_tau", default_time_grid());
  const auto paths = configured_paths(config, n);
  const bool equal = !config.amplitudes.has_value();

  Table table{"decay_n" + std::to_string(n), {"t_over_tau"}, {}, {}};
  if (equal) {
    table.columns.push_back("coherence");
  }
  table.columns.push_back("pairwise_coherence");
  for (const double s : grid) {
    std::vector<double> damping(n - 1);
    for (std::size_t j = 0; j + 1 < n; ++j) {
      const auto gap = static_cast<double>(n - 1 - j);
      damping[j] = std::exp(-gap * gap * s);
    }
    const auto pairwise = pairwise_visibility_coherence(paths.amplitudes(), damping);
    std::vector<double> row{s};
    if (equal) {
      row.push_back(coherence_decay(n, s));
    }
    row.push_back(pairwise.value);
    table.rows.push_back(std::move(row));
  }
  table.meta = {{"n", n}};
  validate_table(table);
  return table;
}

}  // namespace multislit::harness
