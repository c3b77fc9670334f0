#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "qmech/bench/scenarios.hpp"

namespace qmech::bench {

/// Absolute tolerances per profile. Peak positions use a fraction of the
/// golden peak spacing instead.
inline constexpr double kEigenTol = 1e-9;
inline constexpr double kTrajectoryTol = 1e-6;
inline constexpr double kPeakSpacingFraction = 0.01;

struct TableComparison {
  bool ok = true;
  double worst = 0;  // largest deviation relative to its tolerance
  std::string detail;
};

TableComparison compare_tables(const CsvTable& golden, const CsvTable& fresh, Profile profile);

enum class VerifyStatus { pass, fail, skipped };

struct VerifyEntry {
  std::string name;
  std::string scenario;
  VerifyStatus status = VerifyStatus::skipped;
  std::string detail;
  double seconds = 0;
  bool byte_identical = false;
};

/// Layout: <dir>/<name>/config.json, golden.json, *.csv.
std::vector<VerifyEntry> verify_goldens(const std::filesystem::path& dir, int threads = 1);
VerifyEntry verify_golden(const std::filesystem::path& case_dir, int threads = 1);

/// Runs config.json in `case_dir` and rewrites golden.json and the CSVs.
void regenerate_golden(const std::filesystem::path& case_dir, int threads = 1);

std::string status_name(VerifyStatus s);

}  // namespace qmech::bench
