#pragma once

// Acceptance suite: exact identities, oracle agreement and convergence-order
// checks of the computed curves against their large-norm expansions.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bifurq/params.hpp"
#include "bifurq/tolerances.hpp"

namespace bifurq::verify {

enum class Level { fast, full };

std::optional<Level> parse_level(const std::string& text);
const char* level_name(Level level);

enum class Comparison {
  within,       // |measured - target| <= tolerance
  at_most,      // measured <= target
  holds,        // boolean property; measured is 1 or 0
};

struct Check {
  std::string criterion;  // "A1" ... "A11"
  std::string name;
  double target = 0.0;
  double measured = 0.0;
  double tolerance = 0.0;
  Comparison comparison = Comparison::within;
  bool pass = false;
  std::string note;
};

struct CriterionSummary {
  std::string criterion;
  int checks = 0;
  int failed = 0;
  bool pass() const { return failed == 0; }
};

struct VerifyReport {
  ProblemParams params;
  Level level = Level::fast;
  std::vector<Check> checks;
  double seconds = 0.0;

  bool overall() const;
  /// In criterion order A1, A2, ..., A11.
  std::vector<CriterionSummary> criteria() const;
};

VerifyReport run_acceptance(const ProblemParams& params = {}, Level level = Level::fast,
                            const Tolerances& tol = {});

void print_table(const VerifyReport& report, std::ostream& out);
std::string to_json(const VerifyReport& report, int indent = 2);

}  // namespace bifurq::verify
