#include "bifurq/curves.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <limits>
#include <sstream>

#include "bifurq/asymptotics.hpp"
#include "bifurq/error.hpp"
#include "bifurq/local_solver.hpp"
#include "bifurq/nonlocal.hpp"

namespace bifurq::curves {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Evaluates row(x) for every grid point. Failures are caught per row so one
// bad abscissa does not abort the sweep.
template <class Row>
std::vector<CurveRow> sweep(const std::vector<double>& grid, std::size_t width, Row&& row,
                            Execution exec) {
  std::vector<CurveRow> rows(grid.size());
  const auto n = static_cast<long>(grid.size());
  auto one = [&](long i) {
    CurveRow& out = rows[static_cast<std::size_t>(i)];
    try {
      out.values = row(grid[static_cast<std::size_t>(i)]);
    } catch (const std::exception& e) {
      out.values.assign(width, kNaN);
      out.values[0] = grid[static_cast<std::size_t>(i)];
      out.valid = false;
      out.error = e.what();
    }
  };
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < n; ++i) one(i);
  } else {
    for (long i = 0; i < n; ++i) one(i);
  }
  return rows;
}

CurveMeta make_meta(const Tolerances& tol) {
  CurveMeta meta;
  meta.tol = tol;
  meta.timestamp = utc_timestamp();
  return meta;
}

}  // namespace

const char* kind_name(CurveKind kind) {
  switch (kind) {
    case CurveKind::local_gamma_vs_xi: return "local_gamma_vs_xi";
    case CurveKind::nonlocal_lambda_vs_alpha: return "nonlocal_lambda_vs_alpha";
    case CurveKind::h_vs_xi: return "h_vs_xi";
    case CurveKind::profile: return "profile";
  }
  return "unknown";
}

bool CurveTable::all_valid() const { return invalid_count() == 0; }

std::size_t CurveTable::invalid_count() const {
  std::size_t bad = 0;
  for (const auto& r : rows) bad += r.valid ? 0 : 1;
  return bad;
}

std::vector<double> geometric_grid(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi > lo) || !std::isfinite(hi)) {
    throw DomainError("geometric_grid: need 0 < lo < hi");
  }
  if (n < 2) throw DomainError("geometric_grid: need n >= 2");
  std::vector<double> out(static_cast<std::size_t>(n));
  const double ratio = hi / lo;
  for (int i = 0; i < n; ++i) out[i] = lo * std::pow(ratio, static_cast<double>(i) / (n - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

CurveTable local_curve(double p, double xi_min, double xi_max, int n, const Tolerances& tol,
                       Execution exec) {
  if (!(p > 1.0)) throw DomainError("exponent p must exceed 1");
  const auto grid = geometric_grid(xi_min, xi_max, n);
  const double C1 = asym::compute_C1(p);
  CurveTable table;
  table.kind = CurveKind::local_gamma_vs_xi;
  table.p = p;
  table.columns = {"xi", "gamma", "gamma_asym", "residual"};
  table.meta = make_meta(tol);
  table.rows = sweep(
      grid, 4,
      [&](double xi) {
        const auto sol = local::solve_gamma_for_xi(xi, p, tol);
        const double pred = asym::gamma_asym(xi, p, C1).sum();
        return std::vector<double>{xi, sol.gamma, pred, sol.gamma - pred};
      },
      exec);
  return table;
}

CurveTable nonlocal_curve(const ProblemParams& params, double alpha_min, double alpha_max, int n,
                          const Tolerances& tol, Execution exec) {
  const auto grid = geometric_grid(alpha_min, alpha_max, n);
  const nonlocal::CurveSolver solver(params, tol);
  const double alpha0 = solver.threshold().alpha0;
  if (!(alpha_min > alpha0)) {
    std::ostringstream msg;
    msg << "alpha_min = " << alpha_min << " is not above the threshold alpha0 = " << alpha0;
    throw BelowThresholdError(msg.str(), alpha0);
  }
  const auto model = asym::constants(solver.params());
  CurveTable table;
  table.kind = CurveKind::nonlocal_lambda_vs_alpha;
  table.p = solver.params().p;
  table.q = solver.params().q;
  table.columns = {"alpha", "xi", "h", "lambda", "lambda_asym", "residual"};
  table.meta = make_meta(tol);
  table.rows = sweep(
      grid, 6,
      [&](double alpha) {
        const auto pt = solver.at_alpha(alpha);
        const double pred = asym::lambda_asym(alpha, model).sum();
        return std::vector<double>{alpha, pt.local.xi, pt.h, pt.lambda, pred, pt.lambda - pred};
      },
      exec);
  return table;
}

CurveTable h_curve(const ProblemParams& params, double xi_min, double xi_max, int n,
                   const Tolerances& tol, Execution exec) {
  const auto grid = geometric_grid(xi_min, xi_max, n);
  const nonlocal::CurveSolver solver(params, tol);
  const auto model = asym::constants(solver.params());
  CurveTable table;
  table.kind = CurveKind::h_vs_xi;
  table.p = solver.params().p;
  table.q = solver.params().q;
  table.columns = {"xi", "h", "h_asym", "residual"};
  table.meta = make_meta(tol);
  table.rows = sweep(
      grid, 4,
      [&](double xi) {
        const auto pt = solver.at_xi(xi);
        const double pred = asym::h_asym(xi, model).sum();
        return std::vector<double>{xi, pt.h, pred, pt.h - pred};
      },
      exec);
  return table;
}

CurveTable profile_table(double p, double gamma, int n, const Tolerances& tol) {
  const auto amp = local::solve_amplitude(gamma, p, tol);
  const auto samples = local::reconstruct_profile(amp, gamma, p, n, tol);
  CurveTable table;
  table.kind = CurveKind::profile;
  table.p = p;
  table.columns = {"x", "w"};
  table.meta = make_meta(tol);
  table.rows.reserve(samples.size());
  for (const auto& s : samples) table.rows.push_back({{s.x, s.w}, true, {}});
  return table;
}

}  // namespace bifurq::curves
