#pragma once

// Report assembly shared by the command groups. Reports are ordered JSON,
// so identical configurations give identical bytes.

#include <cstdint>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ctop/kernel.hpp"

namespace ctop::cli {

using json = nlohmann::ordered_json;

inline constexpr unsigned kSeed = 20261016u;

/// 0 verified, 1 refuted with a certificate, 2 inconclusive at the given
/// fuel, 3 usage or parse error.
enum class Outcome { Verified = 0, Refuted = 1, Inconclusive = 2 };

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Verified: return "verified";
    case Outcome::Refuted: return "refuted";
    default: return "inconclusive";
  }
}

inline constexpr int kUsageError = 3;

inline std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::string hex(std::uint64_t v) {
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << v;
  return s.str();
}

struct Report {
  std::string command;
  std::vector<std::string> args;
  json config = json::object();
  json results = json::object();
  json checks = json::array();
  json certificates = json::array();
  json log = json::array();
  Nat fuel_used = 0;
  Outcome outcome = Outcome::Verified;

  void check(std::string name, bool ok, json detail = json::object()) {
    json c;
    c["name"] = std::move(name);
    c["ok"] = ok;
    if (!detail.empty()) c["detail"] = std::move(detail);
    checks.push_back(std::move(c));
  }

  bool all_checks_ok() const {
    for (const auto& c : checks)
      if (!c.at("ok").get<bool>()) return false;
    return true;
  }

  std::string config_hash() const { return "fnv1a64:" + hex(fnv1a(config.dump())); }

  json to_json() const {
    json j;
    j["command"] = command;
    j["args"] = args;
    j["config"] = config;
    j["config_hash"] = config_hash();
    j["verdict"] = to_string(outcome);
    j["exit_code"] = static_cast<int>(outcome);
    j["results"] = results;
    j["checks"] = checks;
    j["certificates"] = certificates;
    if (!log.empty()) j["log"] = log;
    j["timing"] = {{"unit", "fuel"}, {"fuel_used", fuel_used}};
    return j;
  }
};

/// Global settings shared by every subcommand.
struct RunConfig {
  std::optional<Nat> fuel;
  Nat precision = 16;
  std::string out;
  std::string verify;

  Nat fuel_or(Nat fallback) const { return fuel.value_or(fallback); }
};

}  // namespace ctop::cli
