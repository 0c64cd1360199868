#include "multislit/harness/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "multislit/constants.hpp"
#include "multislit/harness/experiments.hpp"

namespace multislit::harness {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json constants_table() {
  return {{"hbar", constants::hbar}, {"k_B", constants::boltzmann}, {"h", constants::planck}};
}

std::string extension(OutputFormat format) {
  return format == OutputFormat::csv ? ".csv" : ".json";
}

void write_table(const Table& table, const json& meta, OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::csv) {
    write_csv(table, out);
  } else {
    write_json(table, meta, out);
  }
}

void write_file(const fs::path& path, const Table& table, const json& meta, OutputFormat format) {
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    throw IoError("cannot open '" + path.string() + "' for writing");
  }
  write_table(table, meta, format, file);
  file.flush();
  if (!file) {
    throw IoError("failed writing '" + path.string() + "'");
  }
}

// Plots every numeric column against the first one, one figure per file.
void write_plot_script(const fs::path& dir, const std::string& command, const std::vector<std::string>& files) {
  const fs::path path = dir / ("plot_" + command + ".py");
  std::ofstream script(path, std::ios::binary);
  if (!script) {
    throw IoError("cannot open '" + path.string() + "' for writing");
  }
  script << "#!/usr/bin/env python3\n"
            "import csv, json, os, sys\n"
            "import matplotlib\n"
            "matplotlib.use('Agg')\n"
            "import matplotlib.pyplot as plt\n\n"
            "HERE = os.path.dirname(os.path.abspath(__file__))\n"
            "FILES = [\n";
  for (const auto& f : files) {
    script << "    " << json(f).dump() << ",\n";
  }
  script << "]\n\n"
            "def load(path):\n"
            "    if path.endswith('.json'):\n"
            "        doc = json.load(open(path))\n"
            "        cols = doc['meta']['columns']\n"
            "        return cols, [[r[c] for c in cols] for r in doc['rows']]\n"
            "    rows = list(csv.reader(open(path)))\n"
            "    return rows[0], [[float(v) for v in r] for r in rows[1:]]\n\n"
            "for name in FILES:\n"
            "    cols, rows = load(os.path.join(HERE, name))\n"
            "    fig, ax = plt.subplots()\n"
            "    for i, col in enumerate(cols[1:], start=1):\n"
            "        ax.plot([r[0] for r in rows], [r[i] for r in rows], label=col)\n"
            "    ax.set_xlabel(cols[0])\n"
            "    ax.set_title(name)\n"
            "    ax.legend()\n"
            "    fig.savefig(os.path.join(HERE, os.path.splitext(name)[0] + '.png'), dpi=120)\n"
            "    plt.close(fig)\n";
  if (!script) {
    throw IoError("failed writing '" + path.string() + "'");
  }
}

json table_meta(const std::string& command, const RunConfig& config, const Table& table) {
  json meta;
  meta["command"] = command;
  meta["config"] = config.echo();
  meta["constants"] = constants_table();
  meta["table"] = table.meta;
  return meta;
}

void emit_directory(const std::string& command, const RunConfig& config, const std::vector<Table>& tables) {
  const fs::path dir = config.out.value_or("out");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
  }
  std::vector<std::string> files;
  for (const auto& table : tables) {
    const std::string name = table.name + extension(config.format);
    write_file(dir / name, table, table_meta(command, config, table), config.format);
    files.push_back(name);
  }
  if (config.plot_script) {
    write_plot_script(dir, command, files);
  }
}

void emit_single(const std::string& command, const RunConfig& config, const Table& table, std::ostream& out) {
  const std::string target = config.out.value_or("-");
  const json meta = table_meta(command, config, table);
  if (target == "-") {
    write_table(table, meta, config.format, out);
    return;
  }
  const fs::path path(target);
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) {
      throw IoError("cannot create directory '" + path.parent_path().string() + "': " + ec.message());
    }
  }
  write_file(path, table, meta, config.format);
  if (config.plot_script) {
    write_plot_script(path.parent_path().empty() ? fs::path(".") : path.parent_path(), command,
                      {path.filename().string()});
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-path interference with which-path detectors and path-selective decoherence", "multislit"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::vector<std::size_t> n_list;
  std::vector<double> beta;
  std::vector<double> t_over_tau;
  std::size_t samples = 0;
  std::string format;
  std::string out_path;
  std::string model;
  std::vector<std::string> overrides;
  bool plot_script = false;

  app.add_option("--config", config_path, "JSON config file (flat dotted keys or nested objects)");
  app.add_option("--n", n_list, "path count(s)")->delimiter(',');
  app.add_option("--beta", beta, "detector overlap beta, one value or a list")->delimiter(',');
  app.add_option("--t-over-tau", t_over_tau, "scaled time(s) t/tau_d")->delimiter(',');
  app.add_option("--samples", samples, "phase samples per scan");
  app.add_option("--format", format, "csv or json");
  app.add_option("--out", out_path, "output directory (fig*) or file, '-' for stdout");
  app.add_option("--model", model, "screen model: fraunhofer, exact, selective, maxcoherent");
  app.add_option("--set", overrides, "override any config key: key=value");
  app.add_flag("--emit-plot-script", plot_script, "write a matplotlib script next to the data");

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"fig2", "visibility vs one-path knowledge for n = 3..6"},
      {"fig3", "coherence vs one-path knowledge for n = 3..6"},
      {"fig4", "screen patterns of the four-path experiment at several t/tau_d"},
      {"fig5", "visibility and coherence vs t/tau_d for n = 3..6"},
      {"scan", "intensity vs common phase for one configuration"},
      {"screen", "screen probability density for one configuration"},
      {"decay", "coherence decay law and pairwise-visibility protocol"},
  };
  for (const auto& [name, help] : commands) {
    app.add_subcommand(name, help);
  }

  std::vector<std::string> reversed(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(reversed.begin(), reversed.end());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    json entries = config_path.empty() ? json::object() : load_config_file(config_path);
    if (!n_list.empty()) {
      entries["paths.n"] = n_list;
    }
    if (!beta.empty()) {
      entries["sweep.beta"] = beta;
    }
    if (!t_over_tau.empty()) {
      entries["sweep.t_over_tau"] = t_over_tau;
    }
    if (samples != 0) {
      entries["sweep.samples"] = samples;
    }
    if (!format.empty()) {
      entries["output.format"] = format;
    }
    if (!out_path.empty()) {
      entries["output.path"] = out_path;
    }
    if (!model.empty()) {
      entries["sweep.model"] = model;
    }
    if (plot_script) {
      entries["output.plot_script"] = true;
    }
    for (const auto& assignment : overrides) {
      auto [key, value] = parse_override(assignment);
      entries[key] = std::move(value);
    }
    const RunConfig config = build_config(entries);

    if (command == "fig2" || command == "fig3") {
      emit_directory(command, config, run_fig2_fig3(config, command));
    } else if (command == "fig4") {
      emit_directory(command, config, run_fig4(config));
    } else if (command == "fig5") {
      emit_directory(command, config, run_fig5(config));
    } else if (command == "scan") {
      emit_single(command, config, run_scan(config), out);
    } else if (command == "screen") {
      emit_single(command, config, run_screen(config), out);
    } else if (command == "decay") {
      emit_single(command, config, run_decay(config), out);
    }
    return kExitOk;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const FraunhoferError& e) {
    err << "fraunhofer check failed: " << e.what() << '\n';
    return kExitFraunhofer;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace multislit::harness
