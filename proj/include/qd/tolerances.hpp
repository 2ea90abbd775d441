#pragma once

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <string>

#include "qd/error.hpp"

namespace qd {

/// Numerical thresholds shared by all modules. The defaults are the values
/// every test and report is computed under.
struct Tolerances {
  double herm = 1e-10;           ///< Hermitian symmetry check, relative to ||H||
  double eig = 1e-10;            ///< eigen reconstruction, relative to ||H||
  double dual = 1e-8;            ///< ||FG* - I|| for duality / Parseval predicates
  double fp = 1e-8;              ///< Fan-Pall slack and quasi-dual membership slack
  double tie = 1e-8;             ///< eigenvalue-1 multiplicity count (absolute)
  double deflation_tie = 1e-10;  ///< coincident eigenvalues in deflation, relative to scale
  double cert = 1e-8;            ///< certification slack
};

/// Defaults, with `fp` replaced by the QD_TOL environment variable when set.
inline Tolerances tolerances_from_env() {
  Tolerances tol;
  if (const char* raw = std::getenv("QD_TOL"); raw != nullptr && *raw != '\0') {
    char* end = nullptr;
    errno = 0;
    const double value = std::strtod(raw, &end);
    if (errno != 0 || end == raw || *end != '\0' || !std::isfinite(value) || value <= 0.0) {
      throw Error(Errc::InvalidArgument, "QD_TOL must be a positive number, got '" + std::string(raw) + "'");
    }
    tol.fp = value;
  }
  return tol;
}

}  // namespace qd
