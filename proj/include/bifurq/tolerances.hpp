#pragma once

#include <optional>
#include <string>

#include "bifurq/numerics_types.hpp"

namespace bifurq {

// Solver-wide tolerance set. The relative quadrature tolerance can be
// overridden through the BIFURQ_TOL environment variable.
struct Tolerances {
  double rel = 1e-10;
  double abs = 1e-12;
  int max_subdivisions = 2000;
  double x_tol = 1e-12;
  double f_tol = 1e-10;

  numerics::QuadratureSpec quadrature() const { return {rel, abs, max_subdivisions}; }

  /// Defaults with BIFURQ_TOL applied when set. Throws DomainError on a
  /// malformed or non-positive value.
  static Tolerances from_env();
  static Tolerances with_rel(std::optional<double> rel_override);
};

double parse_positive(const std::string& text, const char* what);

}  // namespace bifurq
