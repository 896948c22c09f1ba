#pragma once

#include <complex>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "prequant/bundle.hpp"
#include "prequant/holonomy.hpp"

namespace prequant {

// ---------------------------------------------------------------------------
// Exchange paths along one-parameter-subgroup orbits.
// ---------------------------------------------------------------------------

/// The two arcs of the circle cut out by the rotation orbit through a pair
/// of sphere points: gamma runs x1 -> x2, gamma' completes the circle
/// x2 -> x1 in the same rotational sense.
struct CommonCircle {
  Vec3 axis;
  double arc_gamma = 0.0;        ///< angle of gamma
  double arc_gamma_prime = 0.0;  ///< angle of gamma'
  SampledPath gamma;
  SampledPath gamma_prime;
};

CommonCircle common_circle(const PhasePoint& x1, const PhasePoint& x2,
                           std::optional<Vec3> tie_break_axis = std::nullopt,
                           int samples = 257,
                           const Tolerances& tol = default_tolerances());

enum class ExchangeMode { TypeI, TypeII };

/// Lie-algebra data of the two legs; both generators are scalar multiples of
/// one common direction.
struct SphereGenerator {
  Vec3 axis;
  double angle1 = 0.0;  ///< signed rotation swept by leg 1
  double angle2 = 0.0;
};
struct EuclidScrewGenerator {  // FreeRel: rotation about the line (center, axis)
  Vec3 axis;
  Vec3 center;
  double angle1 = 0.0, angle2 = 0.0;
};
struct PlanarScrewGenerator {  // ThreeD: rotation about a planar center
  Eigen::Vector2d center;
  double angle1 = 0.0, angle2 = 0.0;
};
struct OriginRotationGenerator {  // Anyon: rotation about the puncture
  double angle1 = 0.0, angle2 = 0.0;
};
struct MassiveSpinGenerator {  // Dirac: spin rotation conjugated by `conj`,
                               // with linear position identification
  Vec3 axis;
  double angle1 = 0.0, angle2 = 0.0;
  SL2CElement conj;
};

using ExchangeGenerator =
    std::variant<SphereGenerator, EuclidScrewGenerator, PlanarScrewGenerator,
                 OriginRotationGenerator, MassiveSpinGenerator>;

/// Two legs on one base space over a shared parameter grid, produced by a
/// common Lie-algebra direction; exp(Z1) carries start1 to start2 and
/// exp(Z2) carries start2 back to start1.
struct PairPath {
  SampledPath leg1;
  SampledPath leg2;
  ExchangeGenerator generator;

  double net_rotation() const;
};

/// Exchange along the circle of common_circle. TypeI runs gamma out and
/// back (it must cross the diagonal); TypeII runs gamma and gamma' in the
/// same sense so the composite is a 2 pi rotation. extra_turns adds full
/// turns to both legs, keeping the composite an odd multiple of 2 pi.
PairPath build_exchange(const PhasePoint& x1, const PhasePoint& x2,
                        ExchangeMode mode, int extra_turns = 0,
                        std::optional<Vec3> tie_break_axis = std::nullopt,
                        int samples = 257,
                        const Tolerances& tol = default_tolerances());

/// Direct construction from per-leg angles; used to probe even-multiple
/// configurations that build_exchange never produces.
PairPath make_sphere_pair_path(const PhasePoint& x1, const PhasePoint& x2,
                               const Vec3& axis, double angle1, double angle2,
                               int samples = 257,
                               const Tolerances& tol = default_tolerances());

/// Diagonal exchange of two FreeRel points by a half-turn screw rotation.
/// Admissible pairs have equal spatial momentum norms with (i1 + i2)
/// orthogonal to (x1 - x2).
PairPath build_exchange_free_rel(const PhasePoint& p1, const PhasePoint& p2,
                                 int extra_turns = 0, int samples = 257,
                                 const Tolerances& tol = default_tolerances());

/// Diagonal exchange of two ThreeD points by a half-turn about the
/// midpoint. Admissible pairs have opposite spatial momenta.
PairPath build_exchange_three_d(const PhasePoint& p1, const PhasePoint& p2,
                                int extra_turns = 0, int samples = 257,
                                const Tolerances& tol = default_tolerances());

/// Exchange of two anyon points on a common circle about the puncture.
PairPath build_exchange_anyon(const PhasePoint& p1, const PhasePoint& p2,
                              int extra_turns = 0, int samples = 513,
                              const Tolerances& tol = default_tolerances());

/// Exchange of two massive-spin configurations sharing I: positions are
/// identified by a linear translation while the spin vectors run a TypeII
/// circle exchange, optionally conjugated into a boosted frame.
PairPath build_exchange_massive(const BundleId& bundle, const Vec3& x1,
                                const Vec3& x2, const DiracSpinor& psi1,
                                const DiracSpinor& psi2,
                                const SL2CElement& conj = SL2CElement::identity(),
                                int extra_turns = 0, int samples = 257,
                                const Tolerances& tol = default_tolerances());

// ---------------------------------------------------------------------------
// Diagonal analysis and the exchange phase
// ---------------------------------------------------------------------------

struct CrossingReport {
  bool crossed = false;
  double min_separation = 0.0;
  double t_min = 0.0;
};

/// Minimum chart separation of the two legs over the shared grid, with
/// per-segment golden-section refinement; crossed when it dips below
/// tol.diag.
CrossingReport diagonal_crossing(const PairPath& p,
                                 const Tolerances& tol = default_tolerances());

/// Lifts both legs through the bundle's group action and returns the U(1)
/// phase relating [g1 xi1, g2 xi2] to the swapped class [xi2, xi1].
/// The start pair must project onto the legs' start points, and the path
/// must not cross the diagonal.
std::complex<double> exchange_phase(const BundleId& bundle, const PairPath& p,
                                    const PairClass& start,
                                    const Tolerances& tol = default_tolerances());

// ---------------------------------------------------------------------------
// Statistics classification
// ---------------------------------------------------------------------------

struct StatisticsVerdict {
  enum class Kind { BoseOnly, SpinStatistics, Anyonic };
  Kind kind = Kind::BoseOnly;
  int f = 0;
  int l = 0;
  std::complex<double> phase{1.0, 0.0};
  // diagnostics
  double net_rotation = 0.0;
  double min_separation = 0.0;
  double accumulated_phase_angle = 0.0;
};

/// Runs TypeII exchanges across the sample pairs and reduces the phases to
/// a verdict: f = n mod 2 for the spinor bundles, Bose-only for the trivial
/// ones, (f = 0, l = 1) with phase e^{i alpha} for the anyon bundle. All
/// samples must agree.
StatisticsVerdict classify_statistics(
    const BundleId& bundle,
    const std::vector<std::pair<PhasePoint, PhasePoint>>& samples,
    const Tolerances& tol = default_tolerances());

/// Exchange phase for a rest-frame configuration transported by the given
/// double-cover Lorentz element: the generators conjugate by the adjoint
/// action and the phase is unchanged.
std::complex<double> adjoint_exchange_massive(
    const BundleId& bundle, const SL2CElement& lorentz_lift,
    const std::pair<Vec3, Vec3>& x_pair,
    const std::pair<DiracSpinor, DiracSpinor>& spinor_pair,
    const Tolerances& tol = default_tolerances());

/// The admissible exchange phases {+1, -1, +e^{i alpha}, -e^{i alpha}} of
/// the anyon bundle, deduplicated (alpha in pi Z collapses the set to two).
std::vector<std::complex<double>> anyon_exchange_phases(
    double alpha, double dedup_tol = 1e-9);

}  // namespace prequant
