#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "multislit/constants.hpp"
#include "multislit/harness/cli.hpp"
#include "multislit/harness/experiments.hpp"
#include "multislit/metrology.hpp"

using namespace multislit;
using namespace multislit::harness;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  args.insert(args.begin(), "multislit");
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("multislit_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t column(const Table& table, const std::string& name) {
  const auto it = std::find(table.columns.begin(), table.columns.end(), name);
  REQUIRE(it != table.columns.end());
  return static_cast<std::size_t>(it - table.columns.begin());
}

std::size_t count_lines(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

}  // namespace

TEST_CASE("config: flat and nested files agree") {
  const json flat = {{"geometry.ell", 5e-6}, {"paths.n", 3}};
  const json nested = {{"geometry", {{"ell", 5e-6}}}, {"paths", {{"n", 3}}}};
  CHECK(flatten_config(flat) == flatten_config(nested));
  const auto config = build_config(flatten_config(nested));
  CHECK(config.ell == 5e-6);
  CHECK(config.n == std::vector<std::size_t>{3});
  CHECK(config.eps == 2e-6);
  CHECK(config.evaluation_time() == doctest::Approx(0.037 * 3.349e-26 * 1.8e-8 / constants::planck));
  CHECK(config.screen_half_width() == doctest::Approx(3.0 * 1.8e-8 * 0.037 / 5e-6));
  CHECK(config.pi_index(3) == std::optional<std::size_t>(2));

  const auto dir = scratch("config");
  std::ofstream(dir / "c.json") << nested.dump();
  CHECK(load_config_file((dir / "c.json").string()) == flatten_config(flat));
  std::ofstream(dir / "bad.json") << "{ not json";
  CHECK_THROWS_AS(load_config_file((dir / "bad.json").string()), ConfigError);
  CHECK_THROWS_AS(load_config_file((dir / "missing.json").string()), IoError);
}

TEST_CASE("config: validation names the offending key") {
  auto field_of = [](const json& entries) {
    try {
      build_config(entries);
    } catch (const ConfigError& e) {
      return e.field();
    }
    return std::string("<accepted>");
  };
  CHECK(field_of({{"geometry.ell", -1.0}}) == "geometry.ell");
  CHECK(field_of({{"geometry.colour", 1.0}}) == "geometry.colour");
  CHECK(field_of({{"paths.n", 1}}) == "paths.n");
  CHECK(field_of({{"paths.n", 3}, {"paths.amplitudes", {0.6, 0.6, 0.6}}}) == "paths.amplitudes");
  CHECK(field_of({{"paths.n", 2}, {"paths.amplitudes", {0.6, 0.8, 0.0}}}) == "paths.amplitudes");
  CHECK(field_of({{"paths.n", 3}, {"paths.pi_path", 4}}) == "paths.pi_path");
  CHECK(field_of({{"sweep.beta", {0.2, 1.5}}}) == "sweep.beta");
  CHECK(field_of({{"sweep.t_over_tau", -1.0}}) == "sweep.t_over_tau");
  CHECK(field_of({{"bath.gamma", 1.0}, {"sweep.t_over_tau", 1.0}}) == "bath.gamma");
  CHECK(field_of({{"sweep.samples", 10}}) == "sweep.samples");
  CHECK(field_of({{"sweep.model", "nearfield"}}) == "sweep.model");
  CHECK(field_of({{"output.format", "xml"}}) == "output.format");
  CHECK(field_of({{"paths.n", "four"}}) == "paths.n");
  CHECK(field_of({{"paths.n", 4}, {"paths.pi_path", 0}}) == "<accepted>");
}

TEST_CASE("config: overrides") {
  CHECK(parse_override("sweep.beta=0.1,0.2") == std::pair<std::string, json>{"sweep.beta", json{0.1, 0.2}});
  CHECK(parse_override("paths.n=4") == std::pair<std::string, json>{"paths.n", json(4)});
  CHECK(parse_override("output.format=json") == std::pair<std::string, json>{"output.format", json("json")});
  CHECK(parse_override("output.plot_script=true").second == json(true));
  CHECK_THROWS_AS(parse_override("sweep.beta"), ConfigError);
  CHECK_THROWS_AS(parse_override("=3"), ConfigError);
}

TEST_CASE("cli exit codes") {
  SUBCASE("validation") {
    const auto r = cli({"scan", "--set", "geometry.ell=-6e-6"});
    CHECK(r.code == kExitValidation);
    CHECK(r.err.find("geometry.ell") != std::string::npos);

    const auto dir = scratch("cli_validation");
    std::ofstream(dir / "neg.json") << R"({"geometry": {"ell": -1e-6}})";
    const auto from_file = cli({"screen", "--config", (dir / "neg.json").string()});
    CHECK(from_file.code == kExitValidation);
    CHECK(from_file.err.find("geometry.ell") != std::string::npos);

    CHECK(cli({"scan", "--beta", "2"}).code == kExitValidation);
    CHECK(cli({"bogus"}).code == kExitValidation);
    CHECK(cli({}).code == kExitValidation);
    CHECK(cli({"screen", "--model", "selective", "--set", "paths.pi_path=2"}).code == kExitValidation);
  }
  SUBCASE("far-field check") {
    const auto r = cli({"screen", "--set", "geometry.eps=1e-4"});
    CHECK(r.code == kExitFraunhofer);
    CHECK(r.err.find("eps*ell/(lambda*L)") != std::string::npos);
    CHECK(cli({"fig4", "--set", "geometry.eps=1e-4", "--out", scratch("cli_fraunhofer").string()}).code ==
          kExitFraunhofer);
    CHECK(cli({"screen", "--model", "exact", "--set", "geometry.eps=1e-4", "--set", "sweep.screen_samples=16"}).code ==
          kExitOk);
  }
  SUBCASE("i/o") {
    const auto dir = scratch("cli_io");
    std::ofstream(dir / "blocker") << "x";
    CHECK(cli({"scan", "--out", (dir / "blocker" / "scan.csv").string()}).code == kExitIo);
    CHECK(cli({"fig2", "--n", "3", "--out", (dir / "blocker").string()}).code == kExitIo);
    CHECK(cli({"scan", "--config", (dir / "nope.json").string()}).code == kExitIo);
  }
  SUBCASE("help") {
    CHECK(cli({"--help"}).code == kExitOk);
  }
}

TEST_CASE("scan shape contract") {
  const auto r = cli({"scan", "--n", "5", "--beta", "0.4"});
  REQUIRE(r.code == kExitOk);
  CHECK(count_lines(r.out) == 4097);
  CHECK(r.out.rfind("theta,intensity\n", 0) == 0);
  CHECK(r.out.find('\r') == std::string::npos);

  const auto small = cli({"scan", "--n", "4", "--beta", "1", "--samples", "512", "--format", "json"});
  REQUIRE(small.code == kExitOk);
  const auto doc = json::parse(small.out);
  CHECK(doc["rows"].size() == 512);
  CHECK(doc["meta"]["command"] == "scan");
  CHECK(doc["meta"]["columns"] == json{"theta", "intensity"});
  CHECK(doc["meta"]["constants"]["hbar"] == constants::hbar);
  CHECK(doc["meta"]["config"]["sweep.samples"] == 512);
  CHECK(std::abs(doc["meta"]["table"]["visibility"].get<double>() - 4.0 / (3.0 * std::sqrt(3.0))) < 1e-6);
  CHECK(doc["rows"][0]["theta"] == 0.0);
}

TEST_CASE("screen: bath friction and scaled time give the same pattern") {
  RunConfig base;
  base.n = {4};
  base.screen_samples = 257;
  base.model = ScreenModel::selective;

  const double gamma = 2e-4;
  auto absolute = base;
  absolute.gamma = gamma;
  const auto a = run_screen(absolute);

  const double t = base.evaluation_time();
  const double d = 2.0 * base.mass * gamma * constants::boltzmann * base.temperature;
  auto scaled = base;
  scaled.t_over_tau = std::vector<double>{t * d * base.ell * base.ell / (12.0 * constants::hbar * constants::hbar)};
  const auto b = run_screen(scaled);

  REQUIRE(a.rows.size() == b.rows.size());
  double peak = 0.0;
  for (const auto& row : a.rows) {
    peak = std::max(peak, row[1]);
  }
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i][0] == b.rows[i][0]);
    CHECK(std::abs(a.rows[i][1] - b.rows[i][1]) < 1e-9 * peak);
  }
  CHECK(a.meta["gamma"].get<double>() == doctest::Approx(gamma).epsilon(1e-12));
  CHECK(b.meta["gamma"].get<double>() == doctest::Approx(gamma).epsilon(1e-12));
}

TEST_CASE("screen models agree where they should") {
  RunConfig config;
  config.n = {4};
  config.screen_samples = 101;
  config.t_over_tau = std::vector<double>{0.5};
  config.model = ScreenModel::selective;
  const auto selective = run_screen(config);
  config.model = ScreenModel::maxcoherent;
  const auto maxcoherent = run_screen(config);
  for (std::size_t i = 0; i < selective.rows.size(); ++i) {
    CHECK(std::abs(selective.rows[i][1] - maxcoherent.rows[i][1]) < 1e-12 * std::max(1.0, maxcoherent.rows[i][1]));
  }
}

TEST_CASE("fig2/fig3 tables") {
  RunConfig config;
  const auto tables = run_fig2_fig3(config, "fig2");
  REQUIRE(tables.size() == 4);
  for (const auto& table : tables) {
    CHECK(table.columns == std::vector<std::string>{"one_path_knowledge", "visibility", "coherence"});
    CHECK(table.rows.size() == 101);
    const auto n = table.meta["n"].get<std::size_t>();
    CHECK(table.name == "fig2_n" + std::to_string(n));
    CHECK(table.rows.front()[0] == 0.0);
    CHECK(table.rows.back()[0] == 1.0);
    CHECK(table.rows.front()[2] == doctest::Approx(1.0));
    CHECK(table.rows.back()[2] == doctest::Approx((static_cast<double>(n) - 2.0) / static_cast<double>(n)));
    if (n == 3) {
      CHECK(std::abs(table.rows.front()[1] - 2.0 / 3.0) < 1e-6);
      CHECK(std::abs(table.rows.back()[1] - 2.0 / 3.0) < 1e-6);
    }
    if (n == 4) {
      CHECK(std::abs(table.rows.back()[1] - 9.0 / 11.0) < 1e-6);
      CHECK(std::abs(table.rows.front()[1] - 4.0 / (3.0 * std::sqrt(3.0))) < 1e-6);
    }
  }
  CHECK(run_fig2_fig3(config, "fig3").front().rows == tables.front().rows);
}

TEST_CASE("fig4 patterns") {
  RunConfig config;
  config.screen_samples = 513;
  const auto tables = run_fig4(config);
  REQUIRE(tables.size() == 5);
  CHECK(tables.front().name == "fig4_tau0");
  CHECK(tables[1].name == "fig4_tau0.0833333");
  CHECK(tables.back().name == "fig4_tau2");
  for (const auto& table : tables) {
    const auto col = column(table, "peak_normalized");
    double best = 0.0;
    for (const auto& row : table.rows) {
      best = std::max(best, row[col]);
    }
    CHECK(best == 1.0);
    CHECK(table.rows.front()[0] == doctest::Approx(-3.0 * config.lambda * config.distance / config.ell));
  }
  // x = 0 is the middle sample of an odd grid
  const auto& middle = tables.front().rows[256];
  CHECK(std::abs(middle[0]) < 1e-15);
  CHECK(middle[column(tables.front(), "ratio")] == doctest::Approx(1.0).epsilon(1e-12));

  const double v0 = tables.front().meta["fringe_visibility"].get<double>();
  const double v2 = tables.back().meta["fringe_visibility"].get<double>();
  CHECK(std::abs(v0 - 4.0 / (3.0 * std::sqrt(3.0))) < 1e-5);
  CHECK(v2 > v0);

  auto with_gamma = config;
  with_gamma.gamma = 1.0;
  with_gamma.t_over_tau.reset();
  CHECK_THROWS_AS(run_fig4(with_gamma), ConfigError);
}

TEST_CASE("fig5 tables") {
  RunConfig config;
  const auto tables = run_fig5(config);
  REQUIRE(tables.size() == 4);
  auto range = [](const Table& table) {
    double lo = 1.0;
    double hi = 0.0;
    for (const auto& row : table.rows) {
      lo = std::min(lo, row[1]);
      hi = std::max(hi, row[1]);
    }
    return hi - lo;
  };
  const Table* four = nullptr;
  const Table* six = nullptr;
  for (const auto& table : tables) {
    const auto n = table.meta["n"].get<std::size_t>();
    const double nd = static_cast<double>(n);
    CHECK(table.rows.size() == 201);
    CHECK(table.rows.front()[2] == doctest::Approx(1.0));
    CHECK(table.rows.back()[2] == doctest::Approx(coherence_decay(n, 4.0)));
    CHECK(table.rows.back()[2] - (nd - 2.0) / nd < 0.01);
    if (n == 4) {
      four = &table;
    }
    if (n == 6) {
      six = &table;
    }
  }
  REQUIRE(four);
  REQUIRE(six);
  CHECK(range(*six) < range(*four));

  auto long_run = config;
  long_run.n = {4};
  long_run.t_over_tau = std::vector<double>{0.0, 50.0};
  const auto limits = run_fig5(long_run).front();
  CHECK(limits.rows.back()[2] == doctest::Approx(0.5));
  CHECK(std::abs(limits.rows.back()[1] - 9.0 / 11.0) < 1e-6);
}

TEST_CASE("decay table") {
  RunConfig config;
  config.n = {5};
  const auto table = run_decay(config);
  CHECK(table.columns == std::vector<std::string>{"t_over_tau", "coherence", "pairwise_coherence"});
  for (const auto& row : table.rows) {
    CHECK(std::abs(row[1] - row[2]) < 1e-12);
  }

  config.amplitudes = std::vector<double>{0.6, 0.0, 0.0, 0.0, 0.8};
  const auto skewed = run_decay(config);
  CHECK(skewed.columns == std::vector<std::string>{"t_over_tau", "pairwise_coherence"});
  CHECK(skewed.rows.front()[1] == doctest::Approx(0.96 / 10.0));
}

TEST_CASE("fig commands write files deterministically") {
  const auto first = scratch("det_a");
  const auto second = scratch("det_b");
  for (const auto& dir : {first, second}) {
    REQUIRE(cli({"fig5", "--n", "3,4", "--t-over-tau", "0,0.5,1", "--samples", "512", "--out", dir.string(),
                 "--emit-plot-script"})
                .code == kExitOk);
    REQUIRE(cli({"fig2", "--n", "3", "--beta", "0,0.5,1", "--format", "json", "--out", dir.string()}).code ==
            kExitOk);
  }
  for (const auto* name : {"fig5_n3.csv", "fig5_n4.csv", "fig2_n3.json", "plot_fig5.py"}) {
    REQUIRE(fs::exists(first / name));
    CHECK(slurp(first / name) == slurp(second / name));
  }
  const auto doc = json::parse(slurp(first / "fig2_n3.json"));
  CHECK(doc["rows"].size() == 3);
  CHECK(doc["meta"]["config"]["sweep.beta"] == json{0.0, 0.5, 1.0});
  CHECK(slurp(first / "fig5_n3.csv").rfind("t_over_tau,visibility,coherence\n1,", 0) == std::string::npos);
  CHECK(slurp(first / "fig5_n3.csv").rfind("t_over_tau,visibility,coherence\n0,", 0) == 0);
}

TEST_CASE("flags override the config file, --set overrides flags") {
  const auto dir = scratch("precedence");
  std::ofstream(dir / "c.json") << R"({"paths": {"n": 3}, "sweep": {"beta": 0.2, "samples": 1024}})";
  const auto file_only = cli({"scan", "--config", (dir / "c.json").string(), "--format", "json"});
  REQUIRE(file_only.code == kExitOk);
  CHECK(json::parse(file_only.out)["meta"]["config"]["paths.n"] == json{3});

  const auto flag = cli({"scan", "--config", (dir / "c.json").string(), "--n", "5", "--format", "json"});
  CHECK(json::parse(flag.out)["meta"]["config"]["paths.n"] == json{5});
  CHECK(json::parse(flag.out)["rows"].size() == 1024);

  const auto set = cli({"scan", "--config", (dir / "c.json").string(), "--n", "5", "--set", "paths.n=6", "--format",
                        "json"});
  CHECK(json::parse(set.out)["meta"]["config"]["paths.n"] == json{6});
}
