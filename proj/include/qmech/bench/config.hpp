#pragma once

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace qmech::bench {

using Json = nlohmann::json;

/// Parses a JSON config file. Throws Error(Config) with the parser message.
Json load_config(const std::filesystem::path& path);

/// FNV-1a 64 over the canonical (sorted-key, compact) dump.
std::uint64_t fingerprint(const Json& config);
std::string fingerprint_hex(const Json& config);

/// Splits a config with an optional `cases` array into one flat config per
/// case, each case object overriding the top-level keys. A config without
/// cases yields itself with an empty case name.
struct ConfigCase {
  std::string name;
  Json config;
};
std::vector<ConfigCase> expand_cases(const Json& config);

/// Field reader that records which keys were read, so that leftovers can be
/// reported as unknown.
class Fields {
 public:
  Fields(const Json& object, std::string where);

  double number(const std::string& key);
  double number(const std::string& key, double fallback);
  double positive(const std::string& key);
  double positive(const std::string& key, double fallback);
  double non_negative(const std::string& key);
  double non_negative(const std::string& key, double fallback);
  int count(const std::string& key, int minimum);
  int count(const std::string& key, int minimum, int fallback);
  bool flag(const std::string& key, bool fallback);
  std::string text(const std::string& key);
  std::string text(const std::string& key, const std::string& fallback);
  std::vector<double> numbers(const std::string& key);
  Fields object(const std::string& key);
  bool has(const std::string& key) const;

  /// Throws Error(Config) naming the first key that was never read.
  void finish() const;

 private:
  const Json& require(const std::string& key);

  const Json& json_;
  std::string where_;
  std::set<std::string> seen_;
};

}  // namespace qmech::bench
