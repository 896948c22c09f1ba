#pragma once

namespace prequant {

/// Numerical tolerances used across the library. Every validator takes a
/// Tolerances argument defaulting to default_tolerances(), so callers can
/// tighten or relax thresholds without global state.
struct Tolerances {
  double alg = 1e-10;         ///< matrix/group identity checks
  double norm = 1e-9;         ///< spinor normalization
  double geom = 1e-9;         ///< constraint surfaces, path endpoints
  double fd = 1e-6;           ///< finite-difference agreement targets
  double quad = 1e-6;         ///< quadrature refinement target
  double diag = 1e-6;         ///< diagonal proximity threshold (chart distance)
  double integer_flux = 1e-3; ///< flux/2pi integer test at mesh depth 5
  double phase_snap = 1e-6;   ///< snap window for exchange phases
  double fd_step = 1e-4;      ///< central-difference step
};

inline const Tolerances& default_tolerances() {
  static const Tolerances tol{};
  return tol;
}

}  // namespace prequant
