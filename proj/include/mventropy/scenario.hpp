#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mventropy/rational.hpp"

namespace mventropy {

/// Command-line overrides of a scenario's "params" section.
struct ScenarioOverrides {
  std::optional<int> max_n;
  std::optional<int> grid;
  std::optional<std::vector<Rational>> eps_ladder;
  std::optional<std::size_t> exact_threshold;
};

struct CheckOutcome {
  std::string id;
  std::string type;
  bool passed = false;
  bool exact = true;
  nlohmann::json details;
  /// (file name, contents) tables written next to the report.
  std::vector<std::pair<std::string, std::string>> tables;
};

struct ScenarioReport {
  std::string name;
  nlohmann::json params;
  std::vector<CheckOutcome> checks;

  bool passed() const;
  nlohmann::json to_json() const;
};

/// Throws ParseError for unreadable or malformed JSON.
nlohmann::json load_scenario_file(const std::filesystem::path& path);

/// Built-in scenarios by name, as JSON documents.
const std::map<std::string, std::string>& builtin_scenarios();

/// Runs every check. Malformed documents throw ParseError, inconsistent
/// configurations ConfigError, size caps CapExceeded. Failed assertions are
/// recorded in the report, not thrown.
ScenarioReport run_scenario(const nlohmann::json& doc, const ScenarioOverrides& overrides = {});

/// report.json plus one CSV per table. Creates the directory.
void write_report(const ScenarioReport& report, const std::filesystem::path& out_dir);

/// "1/2,1/4" -> {1/2, 1/4}. Throws ParseError.
std::vector<Rational> parse_rational_list(const std::string& text);

}  // namespace mventropy
