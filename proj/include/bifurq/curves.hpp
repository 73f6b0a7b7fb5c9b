#pragma once

// Sampled curves ready for emission. Rows are always ordered by abscissa;
// a row whose solve failed is kept, marked invalid, with its error message.

#include <optional>
#include <string>
#include <vector>

#include "bifurq/params.hpp"
#include "bifurq/tolerances.hpp"

namespace bifurq::curves {

inline constexpr const char* kVersion = "0.1.0";

enum class CurveKind { local_gamma_vs_xi, nonlocal_lambda_vs_alpha, h_vs_xi, profile };

enum class Execution { serial, parallel };

const char* kind_name(CurveKind kind);

struct CurveRow {
  std::vector<double> values;  // one entry per column
  bool valid = true;
  std::string error;
};

struct CurveMeta {
  Tolerances tol;
  std::string timestamp;  // UTC, ISO 8601
  std::string version = kVersion;
};

struct CurveTable {
  CurveKind kind = CurveKind::local_gamma_vs_xi;
  double p = 3.0;
  std::optional<double> q;  // unset for local-only tables
  std::vector<std::string> columns;
  std::vector<CurveRow> rows;
  CurveMeta meta;

  bool all_valid() const;
  std::size_t invalid_count() const;
};

/// n log-spaced points from lo to hi inclusive; lo < hi, both positive, n >= 2.
std::vector<double> geometric_grid(double lo, double hi, int n);

/// xi, gamma, gamma_asym, residual
CurveTable local_curve(double p, double xi_min, double xi_max, int n, const Tolerances& tol = {},
                       Execution exec = Execution::parallel);

/// alpha, xi, h, lambda, lambda_asym, residual. Throws BelowThresholdError
/// carrying alpha0 when alpha_min <= alpha0.
CurveTable nonlocal_curve(const ProblemParams& params, double alpha_min, double alpha_max, int n,
                          const Tolerances& tol = {}, Execution exec = Execution::parallel);

/// xi, h, h_asym, residual
CurveTable h_curve(const ProblemParams& params, double xi_min, double xi_max, int n,
                   const Tolerances& tol = {}, Execution exec = Execution::parallel);

/// x, w over [0, 1]; 2n - 1 rows.
CurveTable profile_table(double p, double gamma, int n, const Tolerances& tol = {});

std::string utc_timestamp();

}  // namespace bifurq::curves
