#include "bifurq/local_solver.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bifurq/error.hpp"
#include "bifurq/numerics.hpp"
#include "time_map_kernel.hpp"

namespace bifurq::local {
namespace {

using detail::KernelPoint;
using detail::TimeMapKernel;

constexpr double kPi = std::numbers::pi;
constexpr double kPiSq = kPi * kPi;
// Log-odds below which tau - pi/2 ~ s^2 is far below double range of interest.
constexpr double kLowestLogOdds = -40.0;

void check_p(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("exponent p must exceed 1");
}

// Integral of the kernel excess over [0, theta_max].
double excess_integral(const TimeMapKernel& kernel, const Tolerances& tol) {
  const auto breaks = kernel.breakpoints();
  auto f = [&kernel](double theta) { return std::array<double, 1>{kernel.at(theta).excess}; };
  return numerics::detail::integrate_array<1>(f, breaks, tol.quadrature())[0];
}

// sqrt(gamma) - pi without cancellation near the bifurcation point.
double root_gamma_offset(double gamma) { return (gamma - kPiSq) / (std::sqrt(gamma) + kPi); }

}  // namespace

double Amplitude::log_fraction() const {
  const double z = -log_odds;
  return -(z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)));
}

double Amplitude::log_gap() const {
  const double z = log_odds;
  return -(z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)));
}

double Amplitude::rho(double gamma, double p) const {
  return rho_max(gamma, p) * std::exp(log_fraction());
}

Amplitude Amplitude::from_rho(double rho, double gamma, double p) {
  const double top = rho_max(gamma, p);
  if (!(rho > 0.0) || !(rho < top)) {
    std::ostringstream msg;
    msg << "rho = " << rho << " lies outside (0, gamma^{1/(p-1)}) = (0, " << top << ")";
    throw DomainError(msg.str());
  }
  const double s = rho / top;
  return {std::log(s) - std::log1p(-s)};
}

double potential(double w, double gamma, double p) {
  if (!(w >= 0.0)) throw DomainError("potential: need w >= 0");
  return 0.5 * gamma * w * w - std::pow(w, p + 1.0) / (p + 1.0);
}

double rho_max(double gamma, double p) {
  check_p(p);
  if (!(gamma > 0.0)) throw DomainError("gamma must be positive");
  return std::pow(gamma, 1.0 / (p - 1.0));
}

double supnorm_defect(const LocalSolution& sol) {
  return -sol.gamma * std::expm1((sol.p - 1.0) * sol.amplitude.log_fraction());
}

double time_map(Amplitude amp, double gamma, double p, const Tolerances& tol) {
  check_p(p);
  if (!(gamma > 0.0)) throw DomainError("gamma must be positive");
  const TimeMapKernel kernel(p, amp.log_odds);
  const double tau = 0.5 * kPi + kernel.half_width_offset(excess_integral(kernel, tol));
  return tau / std::sqrt(gamma);
}

double time_map(double rho, double gamma, double p, const Tolerances& tol) {
  return time_map(Amplitude::from_rho(rho, gamma, p), gamma, p, tol);
}

Amplitude solve_amplitude(double gamma, double p, const Tolerances& tol) {
  check_p(p);
  if (!(gamma > kPiSq)) {
    std::ostringstream msg;
    msg << "gamma = " << gamma << " <= pi^2: no positive solution";
    throw DomainError(msg.str());
  }
  const double root_gamma = std::sqrt(gamma);
  const double offset = root_gamma_offset(gamma);
  // 2T - 1, written as (2 (tau - pi/2) - (sqrt(gamma) - pi)) / sqrt(gamma).
  auto residual = [&](double z) {
    const TimeMapKernel kernel(p, z);
    const double tau_offset = kernel.half_width_offset(excess_integral(kernel, tol));
    return (2.0 * tau_offset - offset) / root_gamma;
  };

  if (!(residual(kLowestLogOdds) < 0.0)) throw DomainError("gamma is too close to pi^2 to resolve");
  numerics::RootBracket bracket{kLowestLogOdds, 0.0};
  const double at_zero = residual(0.0);
  if (at_zero == 0.0) return {0.0};
  if (at_zero < 0.0) {
    bracket = residual(1.0) >= 0.0 ? numerics::RootBracket{0.0, 1.0}
                                   : numerics::expand_bracket_up(residual, 1.0, 2.0, 64);
  }

  numerics::RootOptions opts;
  opts.x_tol = tol.x_tol;
  opts.x_abs = tol.x_tol;
  // The residual spans (pi/sqrt(gamma) - 1, inf); scale the target with it.
  opts.f_tol = tol.f_tol * std::min(1.0, offset / root_gamma);
  return {numerics::find_root(residual, bracket, opts)};
}

double solve_rho(double gamma, double p, const Tolerances& tol) {
  return solve_amplitude(gamma, p, tol).rho(gamma, p);
}

LocalSolution compute_norms(Amplitude amp, double gamma, double p, const Tolerances& tol) {
  check_p(p);
  if (!(gamma > 0.0)) throw DomainError("gamma must be positive");
  const TimeMapKernel kernel(p, amp.log_odds);
  const bool direct = kernel.small_amplitude();
  const auto breaks = kernel.breakpoints();
  const double scale = kernel.s() * kernel.s();

  // [kernel excess, L2 integrand, L^{p+1} integrand, gradient integrand / s^2]
  auto f = [&](double theta) {
    const KernelPoint pt = kernel.at(theta);
    std::array<double, 4> out;
    out[0] = pt.excess;
    if (direct) {
      out[1] = pt.v_over_s * pt.v_over_s * pt.kernel;
      out[2] = std::pow(pt.v_over_s, p + 1.0) * pt.kernel;
    } else {
      out[1] = pt.one_minus_v2 * pt.kernel;
      out[2] = pt.one_minus_vp1 * pt.kernel;
    }
    out[3] = pt.grad / scale;
    return out;
  };
  const auto integrals = numerics::detail::integrate_array<4>(f, breaks, tol.quadrature());

  const double root_gamma = std::sqrt(gamma);
  const double two_t_minus_one =
      (2.0 * kernel.half_width_offset(integrals[0]) - root_gamma_offset(gamma)) / root_gamma;
  if (std::abs(two_t_minus_one) > 1e-6) {
    std::ostringstream msg;
    msg << "compute_norms: (rho, gamma) is not a solution, 2T - 1 = " << two_t_minus_one;
    throw DomainError(msg.str());
  }

  const double top = rho_max(gamma, p);
  LocalSolution sol;
  sol.p = p;
  sol.gamma = gamma;
  sol.amplitude = amp;
  sol.rho = top * kernel.s();
  double xi_sq;
  if (direct) {
    xi_sq = 2.0 * sol.rho * sol.rho * integrals[1] / root_gamma;
    sol.norm_p1 = 2.0 * std::pow(sol.rho, p + 1.0) * integrals[2] / root_gamma;
  } else {
    // Uses 2T = 1: ||w||^2 = rho_max^2 (2T - (2/sqrt(gamma)) int (1 - v^2) dtheta-kernel).
    xi_sq = top * top * (1.0 - 2.0 * integrals[1] / root_gamma);
    sol.norm_p1 = std::pow(top, p + 1.0) * (1.0 - 2.0 * integrals[2] / root_gamma);
  }
  sol.xi = std::sqrt(xi_sq);
  sol.grad_sq = 2.0 * top * top * root_gamma * scale * integrals[3];
  return sol;
}

LocalSolution compute_norms(double rho, double gamma, double p, const Tolerances& tol) {
  return compute_norms(Amplitude::from_rho(rho, gamma, p), gamma, p, tol);
}

LocalSolution solve_at_amplitude(Amplitude amp, double p, const Tolerances& tol) {
  check_p(p);
  const TimeMapKernel kernel(p, amp.log_odds);
  const double tau_offset = kernel.half_width_offset(excess_integral(kernel, tol));
  // T = 1/2  <=>  sqrt(gamma) = 2 tau = pi + 2 (tau - pi/2)
  const double root_gamma = kPi + 2.0 * tau_offset;
  return compute_norms(amp, root_gamma * root_gamma, p, tol);
}

LocalSolution solve_gamma_for_xi(double xi, double p, const Tolerances& tol) {
  check_p(p);
  if (!(xi >= kMinXi) || !(xi <= kMaxXi)) {
    std::ostringstream msg;
    msg << "xi = " << xi << " outside the supported range [" << kMinXi << ", " << kMaxXi << "]";
    throw DomainError(msg.str());
  }
  const double log_target = std::log(xi);
  LocalSolution last;
  // gamma = pi^2 + e^t; xi grows monotonically with gamma.
  auto residual = [&](double t) {
    const double gamma = kPiSq + std::exp(t);
    last = compute_norms(solve_amplitude(gamma, p, tol), gamma, p, tol);
    return std::log(last.xi) - log_target;
  };

  const double lowest = std::log(kPiSq * 1e-14);
  const double start = 0.0;  // gamma = pi^2 + 1
  numerics::RootBracket bracket;
  if (residual(start) >= 0.0) {
    bracket = {lowest, start};
  } else {
    double lo = start;
    double hi = start + std::log(4.0);
    int steps = 0;
    while (residual(hi) < 0.0) {
      lo = hi;
      hi += std::log(4.0);
      if (++steps > 200) throw BracketError("solve_gamma_for_xi: bracket expansion failed", {lo, hi});
    }
    bracket = {lo, hi};
  }
  numerics::RootOptions opts;
  opts.x_tol = 0.0;
  opts.x_abs = 0.1 * tol.x_tol;
  opts.f_tol = 0.1 * tol.f_tol;
  const double t = numerics::find_root(residual, bracket, opts);
  const double gamma = kPiSq + std::exp(t);
  if (last.gamma != gamma) residual(t);
  return last;
}

double kirchhoff_D(const LocalSolution& sol) {
  return sol.grad_sq + 2.0 / (sol.p + 1.0) * sol.norm_p1;
}

double D_of_xi(double xi, double p, const Tolerances& tol) {
  return kirchhoff_D(solve_gamma_for_xi(xi, p, tol));
}

std::vector<ProfileSample> reconstruct_profile(Amplitude amp, double gamma, double p, int n,
                                               const Tolerances& tol) {
  check_p(p);
  if (n < 2) throw DomainError("reconstruct_profile: need n >= 2");
  const TimeMapKernel kernel(p, amp.log_odds);
  const double top = rho_max(gamma, p);
  const double theta_max = kernel.theta_max();
  const auto spec = tol.quadrature();

  // theta runs from theta_max (x = 0) down to 0 (x = 1/2).
  std::vector<double> theta(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) theta[i] = theta_max * (1.0 - static_cast<double>(i) / (n - 1));
  theta[n - 1] = 0.0;

  std::vector<double> cumulative(static_cast<std::size_t>(n), 0.0);
  auto k = [&kernel](double t) { return kernel.at(t).kernel; };
  for (int i = 1; i < n; ++i) {
    cumulative[i] = cumulative[i - 1] + numerics::integrate(k, theta[i], theta[i - 1], spec);
  }
  const double total = cumulative.back();

  std::vector<ProfileSample> out;
  out.reserve(static_cast<std::size_t>(2 * n - 1));
  out.push_back({0.0, 0.0});
  for (int i = 1; i < n - 1; ++i) {
    out.push_back({0.5 * cumulative[i] / total, top * kernel.at(theta[i]).v});
  }
  out.push_back({0.5, top * kernel.s()});
  for (int i = n - 2; i >= 0; --i) out.push_back({1.0 - out[i].x, out[i].w});
  return out;
}

std::vector<ProfileSample> reconstruct_profile(double rho, double gamma, double p, int n,
                                               const Tolerances& tol) {
  return reconstruct_profile(Amplitude::from_rho(rho, gamma, p), gamma, p, n, tol);
}

}  // namespace bifurq::local
