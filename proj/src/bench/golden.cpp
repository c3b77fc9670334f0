#include "qmech/bench/golden.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qmech/error.hpp"

namespace qmech::bench {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorKind::Config, "cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(3);
  ss << v;
  return ss.str();
}

}  // namespace

std::string status_name(VerifyStatus s) {
  switch (s) {
    case VerifyStatus::pass: return "pass";
    case VerifyStatus::fail: return "FAIL";
    case VerifyStatus::skipped: return "skipped";
  }
  return "?";
}

TableComparison compare_tables(const CsvTable& golden, const CsvTable& fresh, Profile profile) {
  TableComparison c;
  if (golden.columns != fresh.columns) {
    c.ok = false;
    c.detail = "column headers differ";
    return c;
  }
  if (golden.rows.size() != fresh.rows.size()) {
    c.ok = false;
    c.detail = "row count " + std::to_string(fresh.rows.size()) + " vs golden " + std::to_string(golden.rows.size());
    return c;
  }
  if (profile == Profile::peaks) {
    // Only the positions in column 0 are held to the spacing rule.
    double spacing = 0;
    for (std::size_t i = 1; i < golden.rows.size(); ++i) {
      const double d = std::abs(golden.rows[i][0] - golden.rows[i - 1][0]);
      spacing = i == 1 ? d : std::min(spacing, d);
    }
    const double tol = golden.rows.size() >= 2 ? kPeakSpacingFraction * spacing : kTrajectoryTol;
    for (std::size_t i = 0; i < golden.rows.size(); ++i) {
      const double dev = std::abs(golden.rows[i][0] - fresh.rows[i][0]) / tol;
      if (dev > c.worst) c.worst = dev;
    }
  } else {
    const double tol = profile == Profile::eigen ? kEigenTol : kTrajectoryTol;
    for (std::size_t i = 0; i < golden.rows.size(); ++i) {
      for (std::size_t j = 0; j < golden.columns.size(); ++j) {
        const double a = golden.rows[i][j], b = fresh.rows[i][j];
        const double dev = (std::isnan(a) || std::isnan(b)) ? (std::isnan(a) && std::isnan(b) ? 0.0 : 1e300)
                                                           : std::abs(a - b) / tol;
        if (dev > c.worst) {
          c.worst = dev;
          c.detail = "row " + std::to_string(i) + " column " + golden.columns[j];
        }
      }
    }
  }
  c.ok = c.worst <= 1.0;
  if (!c.ok) c.detail = "deviation " + fmt(c.worst) + "x tolerance at " + c.detail;
  return c;
}

VerifyEntry verify_golden(const fs::path& case_dir, int threads) {
  VerifyEntry v;
  v.name = case_dir.filename().string();
  const fs::path golden_json = case_dir / "golden.json";
  const fs::path config_json = case_dir / "config.json";
  if (!fs::exists(golden_json) || !fs::exists(config_json)) {
    v.status = VerifyStatus::skipped;
    v.detail = "no golden record";
    return v;
  }
  const Json config = load_config(config_json);
  const Json golden = load_config(golden_json);
  v.scenario = golden.value("scenario", "");
  if (golden.value("fingerprint", "") != fingerprint_hex(config)) {
    v.status = VerifyStatus::fail;
    v.detail = "config fingerprint differs from the golden record; regenerate with `verify --regenerate`";
    return v;
  }
  const auto t0 = std::chrono::steady_clock::now();
  const ScenarioResult result = run_scenario(config, threads);
  v.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const std::string base = golden.value("base", v.name);
  std::vector<std::string> expected;
  for (const auto& f : golden.at("files")) expected.push_back(f.at("file").get<std::string>());
  std::vector<std::string> produced;
  v.status = VerifyStatus::pass;
  v.byte_identical = true;
  for (const auto& c : result.cases) {
    for (const auto& t : c.tables) {
      const std::string file = table_file(base, c, t);
      produced.push_back(file);
      if (std::find(expected.begin(), expected.end(), file) == expected.end()) {
        v.status = VerifyStatus::fail;
        v.detail = "unexpected output " + file;
        continue;
      }
      const std::string stored = slurp(case_dir / file);
      const std::string fresh = t.csv.str();
      if (stored != fresh) v.byte_identical = false;
      const TableComparison cmp = compare_tables(CsvTable::parse(stored), t.csv, t.profile);
      if (!cmp.ok && v.status == VerifyStatus::pass) {
        v.status = VerifyStatus::fail;
        v.detail = file + ": " + cmp.detail;
      }
    }
  }
  for (const auto& f : expected) {
    if (std::find(produced.begin(), produced.end(), f) == produced.end() && v.status == VerifyStatus::pass) {
      v.status = VerifyStatus::fail;
      v.detail = "missing output " + f;
    }
  }
  return v;
}

std::vector<VerifyEntry> verify_goldens(const fs::path& dir, int threads) {
  if (!fs::is_directory(dir)) throw Error(ErrorKind::Config, "golden directory not found: " + dir.string());
  std::vector<fs::path> cases;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_directory()) cases.push_back(e.path());
  }
  std::sort(cases.begin(), cases.end());
  std::vector<VerifyEntry> out;
  for (const auto& c : cases) out.push_back(verify_golden(c, threads));
  return out;
}

void regenerate_golden(const fs::path& case_dir, int threads) {
  const Json config = load_config(case_dir / "config.json");
  const std::string base = case_dir.filename().string();
  const ScenarioResult result = run_scenario(config, threads);
  // Drop stale tables before writing the new set.
  for (const auto& e : fs::directory_iterator(case_dir)) {
    if (e.path().extension() == ".csv") fs::remove(e.path());
  }
  Json files = Json::array();
  for (const auto& c : result.cases) {
    for (const auto& t : c.tables) {
      const std::string file = table_file(base, c, t);
      std::ofstream os(case_dir / file, std::ios::binary);
      os << t.csv.str();
      files.push_back({{"file", file}, {"profile", profile_name(t.profile)}});
    }
  }
  const Json golden{{"scenario", result.scenario},
                    {"base", base},
                    {"fingerprint", fingerprint_hex(config)},
                    {"tolerances",
                     {{"eigen", kEigenTol}, {"trajectory", kTrajectoryTol}, {"peaks_spacing_fraction", kPeakSpacingFraction}}},
                    {"files", files}};
  std::ofstream gs(case_dir / "golden.json");
  gs << golden.dump(2) << '\n';
}

}  // namespace qmech::bench
