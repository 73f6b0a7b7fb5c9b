#include "bifurq/nonlocal.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bifurq/error.hpp"
#include "bifurq/numerics.hpp"

namespace bifurq::nonlocal {
namespace {

constexpr double kLowestLogOdds = -300.0;
constexpr double kThresholdMargin = 1e-6;

}  // namespace

Threshold xi_threshold(const ProblemParams& params, const Tolerances& tol) {
  const double p = params.p;
  const double c = params.y_offset();
  const double log_target = params.scalar_exponent() * std::log(c);

  // D grows monotonically with the amplitude; search in its log-odds.
  local::LocalSolution last;
  auto residual = [&](double z) {
    last = local::solve_at_amplitude({z}, p, tol);
    return std::log(local::kirchhoff_D(last)) - log_target;
  };
  if (!(residual(kLowestLogOdds) < 0.0)) {
    throw DomainError("xi_threshold: threshold lies below the resolvable amplitude range");
  }
  numerics::RootBracket bracket{kLowestLogOdds, 0.0};
  if (residual(0.0) < 0.0) {
    bracket = residual(1.0) >= 0.0 ? numerics::RootBracket{0.0, 1.0}
                                   : numerics::expand_bracket_up(residual, 1.0, 2.0, 64);
  }

  numerics::RootOptions opts;
  opts.x_tol = 0.0;
  opts.x_abs = 1e-13;
  opts.f_tol = 1e-13;
  const double z = numerics::find_root(residual, bracket, opts);
  if (last.amplitude.log_odds != z) residual(z);

  Threshold out;
  out.xi0 = last.xi;
  out.h0 = std::pow(c, 1.0 / (p - 1.0));
  out.alpha0 = out.h0 * out.xi0;
  return out;
}

double solve_h(double grad_sq, double norm_p1, const ProblemParams& params) {
  if (!(grad_sq >= 0.0) || !(norm_p1 >= 0.0)) throw DomainError("solve_h: norms must be non-negative");
  const double p = params.p;
  const double c = params.y_offset();
  const double exponent = params.scalar_exponent();
  const double D = grad_sq + c * norm_p1;
  const double log_threshold = exponent * std::log(c);
  if (!(std::log(D) > log_threshold)) {
    std::ostringstream msg;
    msg << "solve_h: D = " << D << " is not above the threshold (2/(p+1))^E = "
        << std::exp(log_threshold) << "; no positive root y";
    throw BelowThresholdError(msg.str(), std::exp(log_threshold));
  }
  // Same sign as (y + c)^E - (N y + D); g(0) < 0 and g is eventually positive.
  auto g = [&](double y) { return exponent * std::log(y + c) - std::log(norm_p1 * y + D); };
  numerics::RootBracket bracket{0.0, 1.0};
  if (g(1.0) < 0.0) bracket = numerics::expand_bracket_up(g, 1.0, 2.0, 2100);

  numerics::RootOptions opts;
  opts.x_tol = 1e-15;
  opts.f_tol = 0.0;
  const double y = numerics::find_root(g, bracket, opts);
  return std::pow(y + c, 1.0 / (p - 1.0));
}

double solve_h(double xi, const ProblemParams& params, const Tolerances& tol) {
  const auto sol = local::solve_gamma_for_xi(xi, params.p, tol);
  return solve_h(sol.grad_sq, sol.norm_p1, params);
}

double solve_h_closed(double grad_sq, double norm_p1, double p) {
  if (!(p > 1.0)) throw DomainError("solve_h_closed: need p > 1");
  const double top = 0.5 * (norm_p1 + std::sqrt(norm_p1 * norm_p1 + 4.0 * grad_sq));
  return std::pow(top, 1.0 / (p - 1.0));
}

double solve_h_closed(double xi, double p, const Tolerances& tol) {
  const auto sol = local::solve_gamma_for_xi(xi, p, tol);
  return solve_h_closed(sol.grad_sq, sol.norm_p1, p);
}

double kirchhoff_coefficient(double h, const local::LocalSolution& local, double q) {
  const double energy = h * h * local.grad_sq + std::pow(h, local.p + 1.0) * local.norm_p1;
  return std::exp(q * std::log(energy));
}

NonlocalPoint assemble(const local::LocalSolution& local, const ProblemParams& params) {
  NonlocalPoint pt;
  pt.params = params;
  pt.local = local;
  pt.h = solve_h(local.grad_sq, local.norm_p1, params);
  pt.alpha = pt.h * local.xi;
  const double h_pow = std::pow(pt.h, params.p - 1.0);
  pt.lambda = h_pow * local.gamma;
  pt.beta = kirchhoff_coefficient(pt.h, local, params.q);
  if (!(std::abs(pt.beta / h_pow - 1.0) <= kBetaTolerance)) {
    std::ostringstream msg;
    msg << "Kirchhoff coefficient mismatch at xi = " << local.xi << ": beta = " << pt.beta
        << ", h^{p-1} = " << h_pow;
    throw ConsistencyError(msg.str());
  }
  return pt;
}

CurveSolver::CurveSolver(ProblemParams params, Tolerances tol)
    : params_(ProblemParams::make(params.p, params.q)), tol_(tol) {}

const Threshold& CurveSolver::threshold() const {
  std::call_once(threshold_once_, [this] { threshold_ = xi_threshold(params_, tol_); });
  return threshold_;
}

local::LocalSolution CurveSolver::local_at(double xi) const {
  {
    std::lock_guard lock(cache_mutex_);
    if (auto it = cache_.find(xi); it != cache_.end()) return it->second;
  }
  auto sol = local::solve_gamma_for_xi(xi, params_.p, tol_);
  std::lock_guard lock(cache_mutex_);
  cache_.emplace(xi, sol);
  return sol;
}

NonlocalPoint CurveSolver::at_xi(double xi) const {
  const auto sol = local_at(xi);
  try {
    return assemble(sol, params_);
  } catch (const BelowThresholdError&) {
    const double xi0 = threshold().xi0;
    std::ostringstream msg;
    msg << "xi = " << xi << " is not above the threshold xi0 = " << xi0;
    throw BelowThresholdError(msg.str(), xi0);
  }
}

CurveSolver::Search CurveSolver::alpha_search(double alpha) const {
  const Threshold& thr = threshold();
  if (!(alpha > thr.alpha0)) {
    std::ostringstream msg;
    msg << "alpha = " << alpha << " is not above the threshold alpha0 = " << thr.alpha0;
    throw BelowThresholdError(msg.str(), thr.alpha0);
  }
  const double lo = std::max(thr.xi0 * (1.0 + kThresholdMargin), local::kMinXi);
  const double log_alpha = std::log(alpha);
  auto f = [&](double xi) { return std::log(at_xi(xi).alpha) - log_alpha; };
  if (!(f(lo) < 0.0)) {
    std::ostringstream msg;
    msg << "alpha = " << alpha << " lies within the solver margin above alpha0 = " << thr.alpha0;
    throw BelowThresholdError(msg.str(), thr.alpha0);
  }
  const auto bracket = numerics::expand_bracket_up(f, lo, 2.0, 200);
  return {lo, bracket.hi};
}

NonlocalPoint CurveSolver::at_alpha(double alpha) const {
  const Search search = alpha_search(alpha);
  const double log_alpha = std::log(alpha);
  auto f = [&](double xi) { return std::log(at_xi(xi).alpha) - log_alpha; };
  // Narrow to the last doubling step before the sign change.
  const numerics::RootBracket bracket{std::max(search.lo, 0.5 * search.hi), search.hi};
  numerics::RootOptions opts;
  opts.x_tol = 0.1 * tol_.x_tol;
  opts.f_tol = 0.01 * tol_.f_tol;
  return at_xi(numerics::find_root(f, bracket, opts));
}

int CurveSolver::sign_changes(double alpha, int samples) const {
  if (samples < 2) throw DomainError("sign_changes: need at least two samples");
  const Search search = alpha_search(alpha);
  const double log_lo = std::log(search.lo);
  const double log_hi = std::log(search.hi);
  int changes = 0;
  double prev = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double xi = std::exp(log_lo + (log_hi - log_lo) * i / (samples - 1));
    const double value = at_xi(xi).alpha - alpha;
    if (i > 0 && (value > 0.0) != (prev > 0.0)) ++changes;
    prev = value;
  }
  return changes;
}

NonlocalPoint point_from_xi(double xi, const ProblemParams& params, const Tolerances& tol) {
  return CurveSolver(params, tol).at_xi(xi);
}

NonlocalPoint point_from_alpha(double alpha, const ProblemParams& params, const Tolerances& tol) {
  return CurveSolver(params, tol).at_alpha(alpha);
}

}  // namespace bifurq::nonlocal
