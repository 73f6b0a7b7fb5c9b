#pragma once

// One-dimensional quadrature and bracketed root finding.
//
// Quadrature is globally adaptive Gauss-Kronrod (10/21 point pair) with
// bisection of the panel carrying the largest error. Root finding is
// Brent's method: inverse quadratic / secant steps guarded by bisection,
// never leaving the bracket.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <limits>
#include <span>
#include <sstream>
#include <utility>
#include <vector>

#include "bifurq/error.hpp"
#include "bifurq/numerics_types.hpp"

namespace bifurq::numerics {

using Function = std::function<double(double)>;

struct RootOptions {
  double x_tol = 1e-12;  // relative to |x|
  double x_abs = std::numeric_limits<double>::min();
  double f_tol = 1e-10;
  int max_iterations = 400;
};

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
};

double integrate(const Function& f, double a, double b, const QuadratureSpec& spec = {});

/// Integral of g over [a, b] where g ~ phi(w) / sqrt(b - w) near b. Uses
/// w = b - t^2 so the integrand in t is bounded.
double integrate_sqrt_singular(const Function& g, double a, double b,
                               const QuadratureSpec& spec = {});

double find_root(const Function& f, RootBracket bracket, const RootOptions& opts = {});
double find_root(const Function& f, RootBracket bracket, double x_tol, double f_tol);

/// Grows hi = lo * growth^n until f changes sign (zero counts as a change).
RootBracket expand_bracket_up(const Function& f, double lo, double growth, int budget);

LogLogFit fit_loglog_slope(std::span<const std::pair<double, double>> samples);

namespace detail {

// Kronrod abscissae on [0, 1]; odd indices are the 10-point Gauss nodes.
inline constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
inline constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525452425, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651146};

template <std::size_t N>
struct Panel {
  double a = 0.0;
  double b = 0.0;
  std::array<double, N> value{};
  std::array<double, N> error{};
};

template <std::size_t N, class F>
Panel<N> gauss_kronrod_21(F& f, double a, double b) {
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  constexpr double kTiny = std::numeric_limits<double>::min();
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  std::array<std::array<double, N>, 21> fv;
  std::array<double, 21> xs;
  for (std::size_t i = 0; i < 10; ++i) {
    xs[2 * i] = center - half * kXgk[i];
    xs[2 * i + 1] = center + half * kXgk[i];
  }
  xs[20] = center;
  for (std::size_t i = 0; i < 21; ++i) {
    fv[i] = f(xs[i]);
    for (std::size_t c = 0; c < N; ++c) {
      if (!std::isfinite(fv[i][c])) {
        std::ostringstream msg;
        msg << "integrand is not finite at x = " << xs[i];
        throw NonFiniteError(msg.str(), xs[i]);
      }
    }
  }

  Panel<N> out{a, b, {}, {}};
  for (std::size_t c = 0; c < N; ++c) {
    double resk = kWgk[10] * fv[20][c];
    double resg = 0.0;
    double resabs = std::abs(resk);
    for (std::size_t i = 0; i < 10; ++i) {
      const double sum = fv[2 * i][c] + fv[2 * i + 1][c];
      resk += kWgk[i] * sum;
      resabs += kWgk[i] * (std::abs(fv[2 * i][c]) + std::abs(fv[2 * i + 1][c]));
      if (i % 2 == 1) resg += kWg[i / 2] * sum;
    }
    const double mean = 0.5 * resk;
    double resasc = kWgk[10] * std::abs(fv[20][c] - mean);
    for (std::size_t i = 0; i < 10; ++i) {
      resasc += kWgk[i] * (std::abs(fv[2 * i][c] - mean) + std::abs(fv[2 * i + 1][c] - mean));
    }
    resk *= half;
    resg *= half;
    resabs *= std::abs(half);
    resasc *= std::abs(half);

    double err = std::abs(resk - resg);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > kTiny / (50.0 * kEps)) err = std::max(50.0 * kEps * resabs, err);
    out.value[c] = resk;
    out.error[c] = err;
  }
  return out;
}

// Adaptive integration of a vector-valued integrand over the partition given
// by `breaks` (sorted, at least two entries). Every component must meet
// max(abs_tol, rel_tol * |I_c|).
template <std::size_t N, class F>
std::array<double, N> integrate_array(F&& f, std::span<const double> breaks,
                                      const QuadratureSpec& spec) {
  spec.validate();
  std::vector<Panel<N>> panels;
  panels.reserve(static_cast<std::size_t>(spec.max_subdivisions) + breaks.size());
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (breaks[i + 1] > breaks[i]) panels.push_back(gauss_kronrod_21<N>(f, breaks[i], breaks[i + 1]));
  }
  std::array<double, N> total{};
  if (panels.empty()) return total;

  int subdivisions = 0;
  for (;;) {
    std::array<double, N> err{};
    total.fill(0.0);
    for (const auto& panel : panels) {
      for (std::size_t c = 0; c < N; ++c) {
        total[c] += panel.value[c];
        err[c] += panel.error[c];
      }
    }
    std::array<double, N> target{};
    bool converged = true;
    for (std::size_t c = 0; c < N; ++c) {
      target[c] = std::max(spec.abs_tol, spec.rel_tol * std::abs(total[c]));
      if (err[c] > target[c]) converged = false;
    }
    if (converged) return total;

    if (subdivisions >= spec.max_subdivisions) {
      std::size_t worst = 0;
      for (std::size_t c = 1; c < N; ++c) {
        if (err[c] / target[c] > err[worst] / target[worst]) worst = c;
      }
      std::ostringstream msg;
      msg << "quadrature did not converge after " << subdivisions
          << " subdivisions (estimate " << total[worst] << ", error " << err[worst] << ")";
      throw ConvergenceError(msg.str(), total[worst], err[worst]);
    }

    std::size_t pick = 0;
    double pick_score = -1.0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      double score = 0.0;
      for (std::size_t c = 0; c < N; ++c) score = std::max(score, panels[i].error[c] / target[c]);
      if (score > pick_score) {
        pick_score = score;
        pick = i;
      }
    }
    const double a = panels[pick].a;
    const double b = panels[pick].b;
    const double mid = 0.5 * (a + b);
    if (!(mid > a && mid < b)) {
      // Panel is at the resolution limit of double precision.
      panels[pick].error.fill(0.0);
    } else {
      panels[pick] = gauss_kronrod_21<N>(f, a, mid);
      panels.push_back(gauss_kronrod_21<N>(f, mid, b));
    }
    ++subdivisions;
  }
}

}  // namespace detail

}  // namespace bifurq::numerics
