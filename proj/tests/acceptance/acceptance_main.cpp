// One line per acceptance criterion, full level, default parameters.
// Exit status is zero only when every criterion passes.

#include <cstdio>
#include <iostream>
#include <map>
#include <string>

#include "bifurq/verify.hpp"

int main() {
  using namespace bifurq::verify;
  const auto report = run_acceptance({}, Level::full, bifurq::Tolerances::from_env());

  std::map<std::string, std::string> first_failure;
  for (const auto& c : report.checks) {
    if (!c.pass && !first_failure.count(c.criterion)) {
      first_failure[c.criterion] = c.name + (c.note.empty() ? "" : " [" + c.note + "]");
    }
  }
  for (const auto& s : report.criteria()) {
    std::printf("%-4s %s  (%d checks)", s.criterion.c_str(), s.pass() ? "PASS" : "FAIL", s.checks);
    if (!s.pass()) std::printf("  first failure: %s", first_failure[s.criterion].c_str());
    std::printf("\n");
  }
  std::printf("\n");
  print_table(report, std::cout);
  return report.overall() ? 0 : 1;
}
