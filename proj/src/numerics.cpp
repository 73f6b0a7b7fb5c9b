#include "bifurq/numerics.hpp"

#include <cmath>
#include <sstream>

namespace bifurq::numerics {

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || max_subdivisions < 1) {
    throw DomainError("quadrature spec needs rel_tol > 0, abs_tol > 0, max_subdivisions >= 1");
  }
}

double integrate(const Function& f, double a, double b, const QuadratureSpec& spec) {
  if (!(a <= b)) throw DomainError("integrate: need a <= b");
  const std::array<double, 2> breaks = {a, b};
  auto wrapped = [&f](double x) { return std::array<double, 1>{f(x)}; };
  return detail::integrate_array<1>(wrapped, breaks, spec)[0];
}

double integrate_sqrt_singular(const Function& g, double a, double b, const QuadratureSpec& spec) {
  if (!(a <= b)) throw DomainError("integrate_sqrt_singular: need a <= b");
  // w = b - t^2, dw = -2t dt, t in [0, sqrt(b - a)].
  auto substituted = [&g, b](double t) { return 2.0 * t * g(b - t * t); };
  return integrate(substituted, 0.0, std::sqrt(b - a), spec);
}

double find_root(const Function& f, RootBracket bracket, const RootOptions& opts) {
  double a = bracket.lo;
  double b = bracket.hi;
  if (!(a < b)) throw DomainError("find_root: bracket needs lo < hi");
  double fa = f(a);
  double fb = f(b);
  if (std::isnan(fa) || std::isnan(fb)) throw DomainError("find_root: f is NaN at a bracket end");
  if (std::abs(fa) <= opts.f_tol) return a;
  if (std::abs(fb) <= opts.f_tol) return b;
  if ((fa > 0.0) == (fb > 0.0)) {
    std::ostringstream msg;
    msg << "find_root: no sign change on [" << a << ", " << b << "] (f = " << fa << ", " << fb << ")";
    throw BracketError(msg.str(), bracket);
  }

  constexpr double kEps = std::numeric_limits<double>::epsilon();
  const double lo = bracket.lo;
  const double hi = bracket.hi;
  double c = b;
  double fc = fb;
  double d = 0.0;
  double e = 0.0;
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol = 2.0 * kEps * std::abs(b) + 0.5 * (opts.x_tol * std::abs(b) + opts.x_abs);
    const double m = 0.5 * (c - b);
    if (std::abs(m) <= tol || fb == 0.0 || std::abs(fb) <= opts.f_tol) {
      return std::clamp(b, lo, hi);
    }
    if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
      double p;
      double q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * m * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = m;
        e = m;
      }
    } else {
      d = m;
      e = m;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol) ? d : (m > 0.0 ? tol : -tol);
    fb = f(b);
    if (std::isnan(fb)) throw DomainError("find_root: f returned NaN inside the bracket");
  }
  RootBracket best{std::min(b, c), std::max(b, c)};
  std::ostringstream msg;
  msg << "find_root: budget of " << opts.max_iterations << " iterations exhausted, best bracket ["
      << best.lo << ", " << best.hi << "]";
  throw BracketError(msg.str(), best);
}

double find_root(const Function& f, RootBracket bracket, double x_tol, double f_tol) {
  RootOptions opts;
  opts.x_tol = x_tol;
  opts.f_tol = f_tol;
  return find_root(f, bracket, opts);
}

RootBracket expand_bracket_up(const Function& f, double lo, double growth, int budget) {
  if (!(lo > 0.0) || !(growth > 1.0)) {
    throw DomainError("expand_bracket_up: need lo > 0 and growth > 1");
  }
  const double f_lo = f(lo);
  if (std::isnan(f_lo)) throw DomainError("expand_bracket_up: f(lo) is NaN");
  if (f_lo == 0.0) return {lo, lo * growth};
  const bool lo_positive = f_lo > 0.0;
  double prev = lo;
  double hi = lo;
  for (int i = 0; i < budget; ++i) {
    hi = prev * growth;
    if (!std::isfinite(hi)) break;
    const double f_hi = f(hi);
    if (std::isnan(f_hi)) throw DomainError("expand_bracket_up: f is NaN during expansion");
    if (f_hi == 0.0 || (f_hi > 0.0) != lo_positive) return {prev, hi};
    prev = hi;
  }
  std::ostringstream msg;
  msg << "expand_bracket_up: no sign change up to " << hi << " after " << budget << " steps";
  throw BracketError(msg.str(), {lo, hi});
}

LogLogFit fit_loglog_slope(std::span<const std::pair<double, double>> samples) {
  if (samples.size() < 2) throw DomainError("fit_loglog_slope: need at least two samples");
  double sx = 0.0;
  double sy = 0.0;
  for (const auto& [x, y] : samples) {
    if (!(x > 0.0) || !(y > 0.0)) throw DomainError("fit_loglog_slope: samples must be positive");
    sx += std::log(x);
    sy += std::log(y);
  }
  const double n = static_cast<double>(samples.size());
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (const auto& [x, y] : samples) {
    const double dx = std::log(x) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(y) - my);
  }
  if (sxx == 0.0) throw DomainError("fit_loglog_slope: abscissae must not all coincide");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

}  // namespace bifurq::numerics
