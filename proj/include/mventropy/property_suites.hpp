#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace mventropy {

struct PropertySuiteReport {
  std::string name;
  std::uint64_t seed = 0;
  std::size_t count = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t inexact = 0;  // cases where a solver fell back to bounds
  /// First failing case after shrinking, null when everything passed.
  nlohmann::json counterexample;
  nlohmann::json stats;

  bool ok() const { return failed == 0; }
  nlohmann::json to_json() const;
};

const std::vector<std::string>& property_suite_names();

/// Deterministic in (name, seed, count). Throws std::invalid_argument for an
/// unknown suite name.
PropertySuiteReport run_property_suite(const std::string& name, std::uint64_t seed, std::size_t count);

}  // namespace mventropy
