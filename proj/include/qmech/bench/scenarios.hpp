#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "qmech/bench/config.hpp"
#include "qmech/bench/csv.hpp"

namespace qmech::bench {

/// Comparison rule for a golden table.
enum class Profile { eigen, trajectory, peaks };

const char* profile_name(Profile p);
Profile profile_from_name(const std::string& name);

struct Table {
  std::string suffix;  // empty for the main table
  Profile profile = Profile::trajectory;
  CsvTable csv;
};

struct CaseResult {
  std::string name;  // empty without `cases`
  std::vector<Table> tables;
  Json summary = Json::object();
  std::vector<std::string> warnings;
};

struct ScenarioResult {
  std::string scenario;
  std::vector<CaseResult> cases;
};

const std::vector<std::string>& scenario_names();

/// Validates every case of `config` and then runs them in order. Config
/// problems surface as Error(Config) before any numerics start.
ScenarioResult run_scenario(const Json& config, int threads = 1);

/// `<base>[_case][_suffix].csv`
std::string table_file(const std::string& base, const CaseResult& c, const Table& t);

/// Output base name: the config's `name` field, else the file stem.
std::string output_base(const Json& config, const std::filesystem::path& config_path);

struct WrittenTable {
  std::string file;
  Profile profile;
};

/// Writes the CSVs and `<base>.manifest.json` into `out`.
std::vector<WrittenTable> write_result(const ScenarioResult& result, const Json& config,
                                       const std::filesystem::path& out, const std::string& base,
                                       double wall_seconds);

}  // namespace qmech::bench
