#include "bifurq/tolerances.hpp"

#include <cmath>
#include <cstdlib>

#include "bifurq/error.hpp"

namespace bifurq {

double parse_positive(const std::string& text, const char* what) {
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (text.empty() || end == nullptr || *end != '\0' || !std::isfinite(value) || value <= 0.0) {
    throw DomainError(std::string(what) + " must be a positive real, got '" + text + "'");
  }
  return value;
}

Tolerances Tolerances::from_env() {
  Tolerances tol;
  if (const char* env = std::getenv("BIFURQ_TOL"); env != nullptr && *env != '\0') {
    tol.rel = parse_positive(env, "BIFURQ_TOL");
  }
  return tol;
}

Tolerances Tolerances::with_rel(std::optional<double> rel_override) {
  Tolerances tol = from_env();
  if (rel_override) {
    if (!(*rel_override > 0.0)) throw DomainError("relative tolerance must be positive");
    tol.rel = *rel_override;
  }
  return tol;
}

}  // namespace bifurq
