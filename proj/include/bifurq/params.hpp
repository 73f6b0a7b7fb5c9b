#pragma once

namespace bifurq {

/// Exponents (p, q) of the Kirchhoff problem
///   -(||u'||_2^2 + ||u||_{p+1}^{p+1})^q u'' + u^p = lambda u.
/// Admissible when p > 1 and 0 < q < (p-1)/(p+1).
struct ProblemParams {
  double p = 3.0;
  double q = 1.0 / 3.0;

  /// Validated constructor; throws DomainError when (p, q) is not admissible.
  static ProblemParams make(double p, double q);

  /// (p - 1 - 2q) / (q (p - 1)), the power of h^{p-1} on the left of the scalar equation.
  double scalar_exponent() const { return (p - 1.0 - 2.0 * q) / (q * (p - 1.0)); }
  double y_offset() const { return 2.0 / (p + 1.0); }
};

/// q = (p - 1)/(2p), where the scalar equation is a quadratic in h^{p-1}.
inline double quadratic_q(double p) { return (p - 1.0) / (2.0 * p); }

}  // namespace bifurq
