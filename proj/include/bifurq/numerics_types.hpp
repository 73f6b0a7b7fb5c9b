#pragma once

namespace bifurq::numerics {

struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  int max_subdivisions = 2000;

  void validate() const;
};

struct RootBracket {
  double lo = 0.0;
  double hi = 0.0;
};

}  // namespace bifurq::numerics
