#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qmech/bench/config.hpp"
#include "qmech/bench/csv.hpp"
#include "qmech/bench/golden.hpp"
#include "qmech/bench/scenarios.hpp"
#include "qmech/error.hpp"

using namespace qmech;
using namespace qmech::bench;

TEST(Config, FieldsRejectUnknownKeys) {
  const Json j = Json::parse(R"({"a": 1.5, "b": 2, "typo": true})");
  Fields f(j, "");
  EXPECT_DOUBLE_EQ(f.number("a"), 1.5);
  EXPECT_EQ(f.count("b", 1), 2);
  try {
    f.finish();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Config);
    EXPECT_NE(std::string(e.what()).find("typo"), std::string::npos);
  }
}

TEST(Config, MissingFieldNamed) {
  const Json j = Json::parse(R"({"x": {"y": 1}})");
  Fields f(j, "");
  Fields x = f.object("x");
  try {
    x.positive("omega_b");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("x.omega_b"), std::string::npos);
  }
}

TEST(Config, RejectsNegativeAndZero) {
  const Json j = Json::parse(R"({"rate": -1, "dim": 0})");
  Fields f(j, "");
  EXPECT_THROW(f.non_negative("rate"), Error);
  EXPECT_THROW(f.count("dim", 1), Error);
}

TEST(Config, CasesOverrideAndMerge) {
  const Json j = Json::parse(R"({"scenario": "spectrum", "qubit": {"type": "transmon", "e_c": 0.5},
    "cases": [{"case": "a", "qubit": {"e_c": 0.25}}, {"case": "b", "levels": 3}]})");
  const auto cases = expand_cases(j);
  ASSERT_EQ(cases.size(), 2u);
  EXPECT_EQ(cases[0].name, "a");
  EXPECT_DOUBLE_EQ(cases[0].config["qubit"]["e_c"].get<double>(), 0.25);
  EXPECT_EQ(cases[0].config["qubit"]["type"], "transmon");
  EXPECT_EQ(cases[1].config["levels"], 3);
  EXPECT_FALSE(cases[1].config.contains("cases"));
  EXPECT_THROW(expand_cases(Json::parse(R"({"cases": [{"case": "a"}, {"case": "a"}]})")), Error);
}

TEST(Config, FingerprintIgnoresKeyOrderAndWhitespace) {
  const Json a = Json::parse(R"({"b": 1, "a": [1, 2]})");
  const Json b = Json::parse("{ \"a\" : [1,2],\n \"b\":1 }");
  EXPECT_EQ(fingerprint(a), fingerprint(b));
  EXPECT_NE(fingerprint(a), fingerprint(Json::parse(R"({"b": 2, "a": [1, 2]})")));
  EXPECT_EQ(fingerprint_hex(a).size(), 16u);
}

TEST(Csv, RoundTripExact) {
  CsvTable t;
  t.columns = {"x", "y"};
  t.add_row({0.1, -1.0 / 3.0});
  t.add_row({1e-300, 6.02214076e23});
  const CsvTable back = CsvTable::parse(t.str());
  EXPECT_EQ(back.columns, t.columns);
  EXPECT_EQ(back.rows, t.rows);
  EXPECT_EQ(back.str(), t.str());
  EXPECT_EQ(format_number(0.5), "5.0000000000000000e-01");
  EXPECT_THROW(t.add_row({1.0}), Error);
}

// ---- scenarios and goldens ----

namespace {

namespace fs = std::filesystem;

const fs::path kGoldens = QMECH_GOLDEN_DIR;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("qmech_bench_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST(Golden, SubTolerancePerturbationPassesEverywhere) {
  int tables = 0;
  for (const auto& dir : fs::directory_iterator(kGoldens)) {
    const Json golden = load_config(dir.path() / "golden.json");
    for (const auto& f : golden.at("files")) {
      const CsvTable g = CsvTable::parse(slurp(dir.path() / f.at("file").get<std::string>()));
      CsvTable p = g;
      for (auto& row : p.rows)
        for (double& v : row) v += 1e-12;
      const auto cmp = compare_tables(g, p, profile_from_name(f.at("profile").get<std::string>()));
      EXPECT_TRUE(cmp.ok) << dir.path().filename() << ": " << cmp.detail;
      ++tables;
    }
  }
  EXPECT_GE(tables, 13);
}

TEST(Golden, TenPercentRateChangeIsDetected) {
  const fs::path dir = kGoldens / "extra_cooling";
  Json config = load_config(dir / "config.json");
  config["gamma"] = 1.1 * config["gamma"].get<double>();
  const ScenarioResult r = run_scenario(config, 1);
  const CsvTable g = CsvTable::parse(slurp(dir / "extra_cooling.csv"));
  EXPECT_FALSE(compare_tables(g, r.cases.at(0).tables.at(0).csv, Profile::trajectory).ok);

  // Untouched goldens still agree.
  const auto other = verify_golden(kGoldens / "fig05_charge_qubit");
  EXPECT_EQ(other.status, VerifyStatus::pass) << other.detail;
}

TEST(Golden, PeakProfileUsesSpacing) {
  CsvTable g;
  g.columns = {"x", "height"};
  g.add_row({0.0, 1.0});
  g.add_row({1.0, 1.0});
  CsvTable ok = g, bad = g;
  ok.rows[1][0] += 0.009;
  ok.rows[1][1] = 0.5;  // heights are not compared
  bad.rows[1][0] += 0.011;
  EXPECT_TRUE(compare_tables(g, ok, Profile::peaks).ok);
  EXPECT_FALSE(compare_tables(g, bad, Profile::peaks).ok);
}

TEST(Golden, FingerprintMismatchForcesRegeneration) {
  const fs::path tmp = scratch("fingerprint") / "fig05_charge_qubit";
  fs::copy(kGoldens / "fig05_charge_qubit", tmp);
  Json config = load_config(tmp / "config.json");
  config["qubit"]["e_j"] = 0.25;
  std::ofstream(tmp / "config.json") << config.dump(2);
  const auto v = verify_golden(tmp);
  EXPECT_EQ(v.status, VerifyStatus::fail);
  EXPECT_NE(v.detail.find("regenerate"), std::string::npos);

  regenerate_golden(tmp);
  const auto again = verify_golden(tmp);
  EXPECT_EQ(again.status, VerifyStatus::pass) << again.detail;
  EXPECT_TRUE(again.byte_identical);
}

TEST(Golden, MissingGoldenIsSkipped) {
  const fs::path root = scratch("skipped");
  fs::create_directories(root / "lonely");
  fs::copy_file(kGoldens / "fig05_charge_qubit" / "config.json", root / "lonely" / "config.json");
  const auto entries = verify_goldens(root);
  ASSERT_EQ(entries.size(), 1u);
  EXPECT_EQ(entries[0].status, VerifyStatus::skipped);
}

TEST(Scenarios, RerunIsByteIdentical) {
  const Json config = load_config(kGoldens / "fig11_transduction" / "config.json");
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  const auto wa = write_result(run_scenario(config, 1), config, a, "x", 0.0);
  const auto wb = write_result(run_scenario(config, 2), config, b, "x", 0.0);
  ASSERT_EQ(wa.size(), wb.size());
  for (std::size_t i = 0; i < wa.size(); ++i) {
    EXPECT_EQ(slurp(a / wa[i].file), slurp(b / wb[i].file)) << wa[i].file;
  }
}

TEST(Scenarios, MissingRequiredFieldIsNamed) {
  const Json config = load_config(fs::path(QMECH_TEST_DATA_DIR) / "rabi_missing_omega_b.json");
  try {
    run_scenario(config, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Config);
    EXPECT_NE(std::string(e.what()).find("omega_b"), std::string::npos);
  }
}

TEST(Scenarios, ValidationPrecedesNumerics) {
  Json config = load_config(kGoldens / "extra_cooling" / "config.json");
  config["gamma_m"] = -1e-5;
  EXPECT_THROW(run_scenario(config, 1), Error);
  config = load_config(kGoldens / "fig10_cat_states" / "config.json");
  config["mech_dim"] = 0;
  EXPECT_THROW(run_scenario(config, 1), Error);
  config = load_config(kGoldens / "fig10_cat_states" / "config.json");
  config["cases"][1]["stat"] = "odd";
  try {
    run_scenario(config, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("coherent_e"), std::string::npos);
  }
}

TEST(Scenarios, UnknownScenarioRejected) {
  EXPECT_THROW(run_scenario(Json::parse(R"({"scenario": "nope"})"), 1), Error);
  EXPECT_THROW(run_scenario(Json::parse(R"({"name": "x"})"), 1), Error);
}
