#pragma once

// Initial-value shooting for -w'' + w^p = gamma w, w(0) = 0, w'(0) = slope,
// integrated with classical fourth-order Runge-Kutta on a uniform grid. The
// norm integrals ride along as extra state components. Used only as an
// independent reference for the time-map solver.

#include <vector>

namespace bifurq::oracle {

struct ShootingResult {
  double slope = 0.0;    // w'(0)
  double rho = 0.0;      // w(1/2)
  double w_end = 0.0;    // w(1), zero for a solution
  double dw_mid = 0.0;   // w'(1/2), zero for a solution
  double xi = 0.0;
  double norm_p1 = 0.0;
  double grad_sq = 0.0;
  std::vector<double> x;
  std::vector<double> w;
};

/// Integrates over [0, 1] with `steps` (even) RK4 steps.
ShootingResult integrate_from_slope(double gamma, double p, double slope, int steps);

/// Bisects on w'(0) until w'(1/2) = 0, then integrates over [0, 1].
ShootingResult shoot(double gamma, double p, int steps = 20000);

}  // namespace bifurq::oracle
