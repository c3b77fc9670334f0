#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qmech/bench/golden.hpp"
#include "qmech/bench/scenarios.hpp"
#include "qmech/error.hpp"

namespace fs = std::filesystem;
using namespace qmech;
using namespace qmech::bench;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

int cmd_run(const std::string& config_path, std::string out_dir, int threads) {
  if (out_dir.empty()) {
    const char* env = std::getenv("QMECH_OUT_DIR");
    out_dir = env && *env ? env : "out";
  }
  const Json config = load_config(config_path);
  const auto t0 = std::chrono::steady_clock::now();
  const ScenarioResult result = run_scenario(config, threads);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const std::string base = output_base(config, config_path);
  const auto written = write_result(result, config, out_dir, base, wall);
  for (const auto& c : result.cases) {
    for (const auto& w : c.warnings) std::cerr << "warning: " << (c.name.empty() ? "" : c.name + ": ") << w << '\n';
  }
  for (const auto& w : written) std::cout << (fs::path(out_dir) / w.file).string() << '\n';
  return 0;
}

int cmd_verify(const std::string& dir, int threads, bool regenerate) {
  if (regenerate) {
    std::vector<fs::path> cases;
    for (const auto& e : fs::directory_iterator(dir)) {
      if (e.is_directory() && fs::exists(e.path() / "config.json")) cases.push_back(e.path());
    }
    std::sort(cases.begin(), cases.end());
    for (const auto& c : cases) {
      regenerate_golden(c, threads);
      std::cout << "regenerated " << c.filename().string() << '\n';
    }
    return 0;
  }
  const auto t0 = std::chrono::steady_clock::now();
  const auto entries = verify_goldens(dir, threads);
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  int failed = 0, passed = 0, skipped = 0;
  std::printf("%-28s %-12s %-8s %8s  %-6s %s\n", "golden", "scenario", "status", "seconds", "bytes", "detail");
  for (const auto& e : entries) {
    const char* bytes = e.status == VerifyStatus::skipped ? "-" : e.byte_identical ? "same" : "differ";
    std::printf("%-28s %-12s %-8s %8.2f  %-6s %s\n", e.name.c_str(), e.scenario.c_str(), status_name(e.status).c_str(),
                e.seconds, bytes, e.detail.c_str());
    failed += e.status == VerifyStatus::fail;
    passed += e.status == VerifyStatus::pass;
    skipped += e.status == VerifyStatus::skipped;
  }
  std::printf("%d passed, %d failed, %d skipped in %.1f s\n", passed, failed, skipped, total);
  return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qmech: circuit, hybrid quantum and optomechanics scenarios"};
  app.require_subcommand(1);

  std::string config_path, out_dir, golden_dir;
  int threads = 1;
  bool regenerate = false;

  auto* run = app.add_subcommand("run", "run one scenario config");
  run->add_option("config", config_path, "JSON scenario config")->required();
  run->add_option("--out", out_dir, "output directory (default $QMECH_OUT_DIR or ./out)");
  run->add_option("--threads", threads, "worker threads for independent scenario points")->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "compare every golden record against a fresh run");
  verify->add_option("golden-dir", golden_dir, "directory of golden records")->required();
  verify->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  verify->add_flag("--regenerate", regenerate, "rewrite golden records from their configs");

  auto* list = app.add_subcommand("list-scenarios", "print the scenario names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (*list) {
      for (const auto& s : scenario_names()) std::cout << s << '\n';
      return 0;
    }
    if (*run) return cmd_run(config_path, out_dir, threads);
    if (*verify) return cmd_verify(golden_dir, threads, regenerate);
  } catch (const Error& e) {
    std::cerr << "qmech: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return e.is_numerical_guard() ? kExitNumerical : kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "qmech: error: " << e.what() << '\n';
    return kExitValidation;
  }
  return 0;
}
