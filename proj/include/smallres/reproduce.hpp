#pragma once

/**
 * @file reproduce.hpp
 * @brief Named reproduction scenarios driven by the bundled fixture file.
 *
 * Every expected value is recomputed. A row is a DISCREPANCY when the
 * computation disagrees with the fixture and a second, independent route
 * (multiplicative order instead of the Euler criterion, trial division
 * instead of the primality test, ...) agrees with the computation.
 */

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "smallres/report.hpp"

namespace smallres {

enum class CheckStatus { Pass, Fail, Discrepancy, Info };

const char* to_string(CheckStatus s);

struct CheckRow {
  /// value, exact, factorization, class, verdict, primality, range,
  /// first_n, least, structure, listing
  std::string kind;
  std::string check;
  std::string computed;
  std::string expected;
  std::optional<double> delta;
  CheckStatus status = CheckStatus::Info;
  /// published, derived or computed
  std::string origin;
  std::string note;
};

struct ScenarioReport {
  std::string name;
  std::string description;
  std::vector<CheckRow> rows;
  double seconds = 0;

  bool failed() const;
  std::size_t count(CheckStatus s) const;
};

std::vector<std::string> scenario_names();

/// Throws UsageError for an unknown name.
ScenarioReport reproduce_scenario(std::string_view name);

Table to_table(const ScenarioReport& r);

}  // namespace smallres
