#pragma once

// Scaling reduction of the Kirchhoff problem to the local problem.
//
// A solution of the form u = h w_xi, with w_xi the local solution of L2 norm
// xi, exists when h^{p-1} equals the Kirchhoff coefficient
//   beta = (h^2 ||w'||_2^2 + h^{p+1} ||w||_{p+1}^{p+1})^q.
// In y = h^{p-1} - 2/(p+1) this is the scalar equation
//   (y + 2/(p+1))^E = ||w||_{p+1}^{p+1} y + D(xi),  E = (p-1-2q)/(q(p-1)),
// which has a unique root y > 0 exactly when D(xi) > (2/(p+1))^E. The point on
// the nonlocal curve is then alpha = h xi, lambda = h^{p-1} gamma(xi).

#include <mutex>
#include <unordered_map>

#include "bifurq/local_solver.hpp"
#include "bifurq/params.hpp"
#include "bifurq/tolerances.hpp"

namespace bifurq::nonlocal {

/// Relative tolerance on beta = h^{p-1} at every produced point.
inline constexpr double kBetaTolerance = 1e-8;

struct NonlocalPoint {
  ProblemParams params;
  local::LocalSolution local;
  double h = 0.0;
  double alpha = 0.0;   // ||u||_2
  double lambda = 0.0;
  double beta = 0.0;    // Kirchhoff coefficient recomputed from h and the norms
};

struct Threshold {
  double xi0 = 0.0;
  double alpha0 = 0.0;
  double h0 = 0.0;  // (2/(p+1))^{1/(p-1)}, the y = 0 root
};

Threshold xi_threshold(const ProblemParams& params, const Tolerances& tol = {});

/// Root of the scalar equation from the two norms directly. Throws
/// BelowThresholdError (threshold = (2/(p+1))^E) when D is too small.
double solve_h(double grad_sq, double norm_p1, const ProblemParams& params);
double solve_h(double xi, const ProblemParams& params, const Tolerances& tol = {});

/// Positive root of h^{2(p-1)} = G + h^{p-1} N; the scalar equation when q = (p-1)/(2p).
double solve_h_closed(double grad_sq, double norm_p1, double p);
double solve_h_closed(double xi, double p, const Tolerances& tol = {});

double kirchhoff_coefficient(double h, const local::LocalSolution& local, double q);

/// Builds the point for a solved local problem; checks beta = h^{p-1}.
NonlocalPoint assemble(const local::LocalSolution& local, const ProblemParams& params);

/// Evaluates one nonlocal bifurcation curve. Local solutions are memoized
/// by exact xi; the cache and the lazily computed threshold are safe to use
/// from several threads.
class CurveSolver {
 public:
  explicit CurveSolver(ProblemParams params, Tolerances tol = {});

  const ProblemParams& params() const { return params_; }
  const Tolerances& tolerances() const { return tol_; }
  const Threshold& threshold() const;

  NonlocalPoint at_xi(double xi) const;
  NonlocalPoint at_alpha(double alpha) const;

  /// Number of sign changes of h_xi xi - alpha on `samples` log-spaced points
  /// spanning the search interval used by at_alpha.
  int sign_changes(double alpha, int samples) const;

 private:
  struct Search {
    double lo;
    double hi;
  };
  Search alpha_search(double alpha) const;
  local::LocalSolution local_at(double xi) const;

  ProblemParams params_;
  Tolerances tol_;
  mutable std::once_flag threshold_once_;
  mutable Threshold threshold_;
  mutable std::mutex cache_mutex_;
  mutable std::unordered_map<double, local::LocalSolution> cache_;
};

NonlocalPoint point_from_xi(double xi, const ProblemParams& params, const Tolerances& tol = {});
NonlocalPoint point_from_alpha(double alpha, const ProblemParams& params,
                               const Tolerances& tol = {});

}  // namespace bifurq::nonlocal
