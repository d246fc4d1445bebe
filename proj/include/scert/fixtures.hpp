#pragma once

#include <string>
#include <vector>

namespace scert {

inline constexpr double kFixtureTol = 1e-9;

struct FixtureOutcome {
  std::string fixture;
  std::string check;
  bool passed = false;
  std::string detail;
};

// Runs every check listed in <dir>/manifest.json against the problem files beside it.
std::vector<FixtureOutcome> run_fixtures(const std::string& dir);
std::string fixture_table(const std::vector<FixtureOutcome>& outcomes);
std::size_t fixture_failures(const std::vector<FixtureOutcome>& outcomes);

}  // namespace scert
