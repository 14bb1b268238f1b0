#pragma once

#include <string>
#include <vector>

#include "tgq/json_io.hpp"

namespace tgq {

inline constexpr const char* kToolVersion = "1.0.0";

/// One verification step of a run.
struct CheckRecord {
  std::string id;
  std::string mode = "full";  // "full" or "sample"
  std::uint64_t seed = 0;
  nlohmann::json counts = nlohmann::json::object();
  bool pass = true;
  nlohmann::json witnesses = nlohmann::json::object();
};

/// Deterministic record of a run: the same inputs and seed give the same bytes.
struct RunReport {
  std::vector<std::string> command;
  nlohmann::json field;
  nlohmann::json instances = nlohmann::json::array();
  nlohmann::json extra = nlohmann::json::object();
  std::vector<CheckRecord> checks;

  CheckRecord& add(CheckRecord c) {
    checks.push_back(std::move(c));
    return checks.back();
  }
  bool pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.pass; });
  }
  nlohmann::json to_json() const {
    nlohmann::json cs = nlohmann::json::array();
    for (const auto& c : checks)
      cs.push_back({{"check", c.id}, {"mode", c.mode}, {"seed", c.seed}, {"counts", c.counts}, {"pass", c.pass}, {"witnesses", c.witnesses}});
    nlohmann::json j = {{"tool", "tgq"}, {"version", kToolVersion}, {"command", command}, {"field", field},
                        {"instances", instances}, {"checks", cs}, {"pass", pass()}};
    if (!extra.empty()) j["extra"] = extra;
    return j;
  }
};

/// Instance descriptor of an egg.
inline nlohmann::json egg_descriptor(const Egg& e) {
  return {{"kind", "egg"}, {"n", e.n}, {"m", e.m}, {"q", e.q()}, {"elements", e.size()}, {"validation", e.validation}};
}

}  // namespace tgq
