#include "qmech/bench/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "qmech/error.hpp"

namespace qmech::bench {

Json load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Config, "cannot read config " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::Config, path.string() + ": " + e.what());
  }
}

std::uint64_t fingerprint(const Json& config) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : config.dump()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string fingerprint_hex(const Json& config) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fingerprint(config)));
  return buf;
}

std::vector<ConfigCase> expand_cases(const Json& config) {
  if (!config.is_object()) throw Error(ErrorKind::Config, "config must be a JSON object");
  if (!config.contains("cases")) return {{"", config}};
  const Json& cases = config.at("cases");
  if (!cases.is_array() || cases.empty()) throw Error(ErrorKind::Config, "'cases' must be a non-empty array");
  Json base = config;
  base.erase("cases");
  std::vector<ConfigCase> out;
  std::set<std::string> names;
  for (const Json& c : cases) {
    if (!c.is_object() || !c.contains("case") || !c.at("case").is_string()) {
      throw Error(ErrorKind::Config, "every entry of 'cases' needs a string field 'case'");
    }
    const std::string name = c.at("case").get<std::string>();
    if (name.empty() || !names.insert(name).second) throw Error(ErrorKind::Config, "case names must be unique and non-empty");
    Json merged = base;
    for (auto it = c.begin(); it != c.end(); ++it) {
      if (it.key() == "case") continue;
      if (it->is_object() && merged.contains(it.key()) && merged[it.key()].is_object()) {
        merged[it.key()].update(*it);
      } else {
        merged[it.key()] = *it;
      }
    }
    out.push_back({name, std::move(merged)});
  }
  return out;
}

Fields::Fields(const Json& object, std::string where) : json_(object), where_(std::move(where)) {
  if (!json_.is_object()) throw Error(ErrorKind::Config, where_ + " must be an object");
}

bool Fields::has(const std::string& key) const { return json_.contains(key); }

const Json& Fields::require(const std::string& key) {
  seen_.insert(key);
  if (!json_.contains(key)) throw Error(ErrorKind::Config, "missing required field '" + where_ + key + "'");
  return json_.at(key);
}

double Fields::number(const std::string& key) {
  const Json& v = require(key);
  if (!v.is_number()) throw Error(ErrorKind::Config, "field '" + where_ + key + "' must be a number");
  return v.get<double>();
}

double Fields::number(const std::string& key, double fallback) {
  return has(key) ? number(key) : (seen_.insert(key), fallback);
}

double Fields::positive(const std::string& key) {
  const double v = number(key);
  if (!(v > 0)) throw Error(ErrorKind::Config, "field '" + where_ + key + "' must be positive");
  return v;
}

double Fields::positive(const std::string& key, double fallback) {
  return has(key) ? positive(key) : (seen_.insert(key), fallback);
}

double Fields::non_negative(const std::string& key) {
  const double v = number(key);
  if (!(v >= 0)) throw Error(ErrorKind::Config, "field '" + where_ + key + "' must be non-negative");
  return v;
}

double Fields::non_negative(const std::string& key, double fallback) {
  return has(key) ? non_negative(key) : (seen_.insert(key), fallback);
}

int Fields::count(const std::string& key, int minimum) {
  const Json& v = require(key);
  if (!v.is_number_integer()) throw Error(ErrorKind::Config, "field '" + where_ + key + "' must be an integer");
  const int n = v.get<int>();
  if (n < minimum) {
    throw Error(ErrorKind::Config, "field '" + where_ + key + "' must be >= " + std::to_string(minimum));
  }
  return n;
}

int Fields::count(const std::string& key, int minimum, int fallback) {
  return has(key) ? count(key, minimum) : (seen_.insert(key), fallback);
}

bool Fields::flag(const std::string& key, bool fallback) {
  seen_.insert(key);
  if (!has(key)) return fallback;
  const Json& v = json_.at(key);
  if (!v.is_boolean()) throw Error(ErrorKind::Config, "field '" + where_ + key + "' must be true or false");
  return v.get<bool>();
}

std::string Fields::text(const std::string& key) {
  const Json& v = require(key);
  if (!v.is_string()) throw Error(ErrorKind::Config, "field '" + where_ + key + "' must be a string");
  return v.get<std::string>();
}

std::string Fields::text(const std::string& key, const std::string& fallback) {
  return has(key) ? text(key) : (seen_.insert(key), fallback);
}

std::vector<double> Fields::numbers(const std::string& key) {
  const Json& v = require(key);
  if (!v.is_array() || v.empty()) throw Error(ErrorKind::Config, "field '" + where_ + key + "' must be a non-empty array");
  std::vector<double> out;
  for (const Json& x : v) {
    if (!x.is_number()) throw Error(ErrorKind::Config, "field '" + where_ + key + "' must hold numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

Fields Fields::object(const std::string& key) { return Fields(require(key), where_ + key + "."); }

void Fields::finish() const {
  for (auto it = json_.begin(); it != json_.end(); ++it) {
    if (!seen_.count(it.key())) throw Error(ErrorKind::Config, "unknown field '" + where_ + it.key() + "'");
  }
}

}  // namespace qmech::bench
