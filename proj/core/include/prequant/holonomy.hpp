#pragma once

#include <complex>
#include <vector>

#include "prequant/bundle.hpp"
#include "prequant/phase_space.hpp"

namespace prequant {

// ---------------------------------------------------------------------------
// Sampled paths
// ---------------------------------------------------------------------------

/// Discretized curve on a base space. Segments interpolate geodesically on
/// the sphere and linearly in the chart elsewhere (with constraint
/// projection).
struct SampledPath {
  enum class Interp { SphereGeodesic, Chart };

  PhaseSpaceId space;
  std::vector<double> t;
  std::vector<PhasePoint> points;
  Interp interp = Interp::Chart;

  static SampledPath create(const PhaseSpaceId& space, std::vector<double> t,
                            std::vector<PhasePoint> points, Interp interp,
                            const Tolerances& tol = default_tolerances(),
                            double max_chart_step = 0.75);

  bool closed(const Tolerances& tol = default_tolerances()) const;

  /// Interpolated point at parameter s (clamped to [t.front(), t.back()]).
  PhasePoint at(double s) const;
};

/// Discretized curve on a bundle total space.
struct LiftedPath {
  BundleId bundle;
  std::vector<double> t;
  std::vector<BundlePoint> points;

  bool closed(const Tolerances& tol = default_tolerances()) const;
};

/// Interpolates between two total-space representatives: normalized linear
/// interpolation plus constraint projection for spinors, linear for phases
/// and charts.
BundlePoint interpolate_bundle(const BundlePoint& a, const BundlePoint& b,
                               double s);

// ---------------------------------------------------------------------------
// Line holonomy
// ---------------------------------------------------------------------------

struct QuadratureOptions {
  int initial_substeps = 8;  ///< per segment
  int max_doublings = 6;
  double eps = 1e-6;
};

struct Holonomy {
  double angle = 0.0;  ///< raw integral of the connection, unwrapped
  double est_error = 0.0;
  int refinements = 0;
  std::complex<double> phase() const {
    return std::exp(std::complex<double>(0.0, angle));
  }
};

/// exp(i integral of the connection) along a total-space path, by composite
/// midpoint quadrature with refinement until the angle moves less than
/// options.eps.
Holonomy line_holonomy(const LiftedPath& path,
                       const QuadratureOptions& options = {},
                       const Tolerances& tol = default_tolerances());

// ---------------------------------------------------------------------------
// Horizontal lift
// ---------------------------------------------------------------------------

struct LiftOptions {
  /// Target chart arc length per integration substep. The defect of the
  /// finite-difference horizontality residual scales with its square.
  double step = 2.5e-4;
  int min_substeps = 8;
};

/// Parallel transport of `start` along `base`: the lift has vanishing
/// connection along its velocity, and its projection reproduces the base
/// path.
LiftedPath horizontal_lift(const SampledPath& base, const BundlePoint& start,
                           const LiftOptions& options = {},
                           const Tolerances& tol = default_tolerances());

/// Structure-group phase comparing the endpoint of a lift against its start
/// point (the two must share a base point). For a horizontal lift of a loop
/// this is the loop holonomy.
std::complex<double> structure_defect(const LiftedPath& lift,
                                      const Tolerances& tol = default_tolerances());

// ---------------------------------------------------------------------------
// Surface flux and integrality
// ---------------------------------------------------------------------------

struct FluxReport {
  double total_flux = 0.0;
  int depth = 0;
  double est_error = 0.0;
  std::vector<double> per_depth;
};

/// Integral of the symplectic form over the sphere, by icosahedral
/// triangulation refined `depth` times with midpoint evaluation. Converges
/// to 4 pi s. Only the sphere is compact; other spaces are unsupported.
FluxReport surface_flux(const PhaseSpaceId& space, int depth);

/// Flux of the spherical cap of colatitude theta0 about `axis` (s times the
/// cap area, evaluated by the same triangulated quadrature specialized to
/// the cap region as a fan of annulus strips).
double cap_flux(double spin, double theta0, int rings = 2048,
                int sectors = 2048);

struct IntegralityResult {
  bool quantizable = false;
  std::optional<int> n;
  double flux = 0.0;
};

/// Quantizable iff surface_flux / (2 pi) is within tol.integer_flux of an
/// integer; that integer is n = 2s.
IntegralityResult integrality_check(double s,
                                    const Tolerances& tol = default_tolerances(),
                                    int depth = 5);

// ---------------------------------------------------------------------------
// Path builders
// ---------------------------------------------------------------------------

/// Circle at colatitude theta0 about `axis`, traversed counterclockwise as
/// seen from +axis, sampled at `samples` points, closed.
SampledPath sphere_circle(double spin, const Vec3& axis, double theta0,
                          int samples = 257);

/// Arc of the rotation orbit about `axis` starting at x, sweeping `angle`.
SampledPath sphere_rotation_arc(double spin, const Vec3& axis, const Vec3& x,
                                double angle, int samples);

/// Lift of a base path through a local section (phase zero / reference
/// spinor section per flavor); useful for Stokes-type loop integrals.
LiftedPath section_lift(const BundleId& bundle, const SampledPath& base,
                        int oversample = 1);

}  // namespace prequant
