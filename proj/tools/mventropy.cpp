#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "mventropy/errors.hpp"
#include "mventropy/property_suites.hpp"
#include "mventropy/scenario.hpp"

using namespace mventropy;

namespace {

constexpr int kExitFailed = 1;
constexpr int kExitParse = 2;
constexpr int kExitCap = 3;

nlohmann::json scenario_doc(const std::string& arg) {
  const auto& builtins = builtin_scenarios();
  if (auto it = builtins.find(arg); it != builtins.end()) return nlohmann::json::parse(it->second);
  return load_scenario_file(arg);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropy toolkit for multivalued maps"};
  app.require_subcommand(1);

  std::string scenario, out_dir = "report", eps_text;
  ScenarioOverrides overrides;
  int max_n = 0, grid = 0;
  std::size_t exact_threshold = 0;
  auto* run = app.add_subcommand("run", "Run a scenario file or a built-in scenario by name");
  run->add_option("scenario", scenario, "scenario.json or built-in name")->required();
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--max-n", max_n, "largest iterate depth");
  run->add_option("--grid", grid, "grid size for discretizing interval maps");
  run->add_option("--eps-ladder", eps_text, "comma-separated rationals, e.g. 1/2,1/4");
  run->add_option("--exact-threshold", exact_threshold, "largest instance solved exactly");

  std::string suite;
  std::uint64_t seed = 1;
  std::size_t count = 100;
  auto* suite_cmd = app.add_subcommand("suite", "Run a randomized property suite");
  suite_cmd->add_option("name", suite)->required();
  suite_cmd->add_option("--seed", seed);
  suite_cmd->add_option("--count", count);

  auto* list = app.add_subcommand("list", "List built-in scenarios and property suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitParse;
  }

  try {
    if (*list) {
      std::cout << "scenarios:\n";
      for (const auto& [name, doc] : builtin_scenarios()) std::cout << "  " << name << '\n';
      std::cout << "suites:\n";
      for (const auto& name : property_suite_names()) std::cout << "  " << name << '\n';
      return 0;
    }
    if (*suite_cmd) {
      auto rep = run_property_suite(suite, seed, count);
      std::cout << rep.to_json().dump(2) << '\n';
      return rep.ok() ? 0 : kExitFailed;
    }
    if (max_n) overrides.max_n = max_n;
    if (grid) overrides.grid = grid;
    if (exact_threshold) overrides.exact_threshold = exact_threshold;
    if (!eps_text.empty()) overrides.eps_ladder = parse_rational_list(eps_text);
    auto rep = run_scenario(scenario_doc(scenario), overrides);
    write_report(rep, out_dir);
    for (const auto& c : rep.checks) std::cout << (c.passed ? "ok    " : "FAIL  ") << c.id << '\n';
    std::cout << (rep.passed() ? "all checks passed" : "some checks failed") << " (" << out_dir << "/report.json)\n";
    return rep.passed() ? 0 : kExitFailed;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << '\n';
    return kExitCap;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitParse;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitFailed;
  }
}
