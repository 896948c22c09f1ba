#pragma once

#include <utility>
#include <variant>

#include "prequant/algebra.hpp"
#include "prequant/phase_space.hpp"

namespace prequant {

// ---------------------------------------------------------------------------
// Prequantizing bundles, realized as quotient constructions on explicit
// representatives.
//
//   Hopf_n      total space S^3 / Z_n, representative: unit spinor.
//               Structure action e^{i theta}.[xi] = [e^{i theta / n} xi].
//               n = 0 degenerates to the flat bundle over the zero-form
//               sphere; the point then carries (x, phase) directly.
//   Dirac_n     representative (x in R^3, psi on the constraint surface),
//               Z_n quotient on the spinor phase. The connection is
//               -i n psibar dpsi - m' I_mu dx^mu with m' = n * mass_unit,
//               whose curvature is the massive form at mass m'; the base is
//               therefore MassiveSpin(n * mass_unit, n/2).
//   TrivialU1   (base point, phase angle); flat along the base except for
//               the symplectic potential terms carried by the connection.
//   Anyon_a     universal-cover representative (u, v, I) plus a phase whose
//               deck winding is an explicit integer. The quotient
//               identification is (u, theta) ~ (u + k, theta - k alpha), so
//               a lifted 2 pi rotation (u -> u + 1, theta fixed) surfaces as
//               a canonical phase shift of +alpha.
// ---------------------------------------------------------------------------

enum class BundleFlavor { HopfN, DiracBundle, TrivialU1, AnyonBundle };

std::string to_string(BundleFlavor f);

struct BundleId {
  BundleFlavor flavor = BundleFlavor::HopfN;
  int n = 1;
  double mass_unit = 0.0;
  PhaseSpaceId base;

  static BundleId hopf(int n);
  static BundleId dirac(int n, double mass_unit);
  static BundleId trivial_u1(const PhaseSpaceId& base);
  static BundleId anyon(double alpha);

  double m_prime() const { return n * mass_unit; }
  double alpha() const { return base.alpha; }

  bool operator==(const BundleId& o) const;
};

// --- total-space representatives -------------------------------------------

struct HopfRep {
  Spinor2 xi;
};
struct FlatSphereRep {  // Hopf_0
  Vec3 x;
  double phi = 0.0;
};
struct DiracRep {
  Vec3 x;
  DiracSpinor psi;
};
struct TrivialRep {
  PhasePoint base;
  double phi = 0.0;  // unwrapped
};
struct AnyonRep {
  Eigen::Vector2d cover;
  Eigen::Vector2d momentum;
  double phi = 0.0;  // raw phase angle
  int deck = 0;      // winding bookkeeping: total angle = phi + deck * alpha
};

class BundlePoint {
 public:
  using Rep = std::variant<HopfRep, FlatSphereRep, DiracRep, TrivialRep,
                           AnyonRep>;

  BundlePoint(BundleId bundle, Rep rep);

  const BundleId& bundle() const { return bundle_; }
  const Rep& rep() const { return rep_; }

  const HopfRep& hopf() const;
  const FlatSphereRep& flat_sphere() const;
  const DiracRep& dirac() const;
  const TrivialRep& trivial() const;
  const AnyonRep& anyon() const;

  /// Total fiber angle for phase-carrying representations.
  double phase_angle() const;

 private:
  BundleId bundle_;
  Rep rep_;
};

BundlePoint hopf_point(int n, const Spinor2& xi);
BundlePoint hopf0_point(const Vec3& x, double phi);
BundlePoint dirac_point(const BundleId& b, const Vec3& x,
                        const DiracSpinor& psi);
BundlePoint trivial_point(const BundleId& b, const PhasePoint& base,
                          double phi);
BundlePoint anyon_bundle_point(const BundleId& b, const Eigen::Vector2d& cover,
                               const Eigen::Vector2d& momentum, double phi,
                               int deck = 0);

// --- tangents to the total space --------------------------------------------

struct HopfTangent {
  Vec2c dxi;
};
struct FlatSphereTangent {
  Vec3 dx;
  double dphi = 0.0;
};
struct DiracTangent {
  Vec3 dx;
  Vec4c dpsi;
};
struct TrivialTangent {
  Eigen::VectorXd dbase;
  double dphi = 0.0;
};
struct AnyonTangent {
  Eigen::Vector4d dcover_momentum;
  double dphi = 0.0;
};

struct BundleTangent {
  using Comp = std::variant<HopfTangent, FlatSphereTangent, DiracTangent,
                            TrivialTangent, AnyonTangent>;
  Comp comp;
};

// --- projections -------------------------------------------------------------

/// Hopf map x^i = xi^dag sigma^i xi.
Vec3 hopf_project(const Spinor2& xi);

/// (I, J) = (psibar gamma psi, psibar gamma gamma5 psi).
std::pair<Vec4, Vec4> dirac_observables(const DiracSpinor& psi);

/// Projection of a Dirac representative onto MassiveSpin(mass, spin).
PhasePoint dirac_project(const Vec3& x, const DiracSpinor& psi, double mass,
                         double spin,
                         const Tolerances& tol = default_tolerances());

/// Bundle projection pi.
PhasePoint bundle_project(const BundlePoint& p);

// --- sections ---------------------------------------------------------------

/// Local section of the Hopf bundle, smooth away from x = -pole.
Spinor2 hopf_local_section(const Vec3& x, const Vec3& pole);

/// Reference Dirac spinor over (I, J): boost from rest composed with the
/// rotation carrying z-hat to J in the rest frame. Smooth away from the
/// antipode of z-hat in the rest frame.
DiracSpinor dirac_section(const Vec4& I, const Vec4& J);

/// The rest configuration: I = (1,0,0,0), J = (0,0,0,1).
const DiracSpinor& dirac_rest_spinor();

// --- connection and curvature -------------------------------------------------

/// Connection one-form of the bundle evaluated on a total-space tangent.
double connection_eval(const BundlePoint& p, const BundleTangent& w,
                       const Tolerances& tol = default_tolerances());

/// Same value without the tangency validation; for finite-difference chords
/// that satisfy the constraints only to truncation order.
double connection_eval_raw(const BundlePoint& p, const BundleTangent& w);

/// (finite-difference curvature on the horizontal lifts of u and v,
///  symplectic form at the base point). The two agree within tol.fd for
/// every bundle with a curved connection; the anyon bundle's connection is
/// flat by construction and is rejected as unsupported.
std::pair<double, double> curvature_matches_symplectic(
    const BundlePoint& p, const TangentVector& u, const TangentVector& v,
    const Tolerances& tol = default_tolerances());

// --- quotient arithmetic ------------------------------------------------------

/// Canonical representative of the Z_n orbit (deck orbit for the anyon
/// bundle). Idempotent; orbit equality is canonical-form equality.
BundlePoint znq_canonicalize(const BundlePoint& p);

bool bundle_point_equal(const BundlePoint& a, const BundlePoint& b,
                        const Tolerances& tol = default_tolerances());

/// Representative of the combined-system class [xi1, xi2].
struct PairClass {
  PairClass(BundlePoint first, BundlePoint second);
  BundlePoint first, second;
};

/// Canonical representative under (z, z^{-1}) and both Z_n relations:
/// the first slot's leading component is rotated real-positive, then the
/// second slot's discrete orbit is reduced to its lexicographic minimum.
PairClass pair_canonicalize(const PairClass& p);

bool pair_equal(const PairClass& a, const PairClass& b,
                const Tolerances& tol = default_tolerances());

/// The two permutation lifts: [xi1, xi2] -> [xi2, (-1)^f xi1].
PairClass permutation_lift(const PairClass& p, int f);

/// Lifted symmetry action on the total space. Commutes with the projection
/// and with canonicalization.
BundlePoint lifted_group_action(const GroupElement& g, const BundlePoint& p);

/// Structure-group action e^{i theta}.
BundlePoint fiber_action(double theta, const BundlePoint& p);

/// Unit phase c with b = c . a on the same fiber; DomainError if a and b do
/// not lie over the same base point (within tol). The returned value is the
/// spinor-level phase for spinor bundles.
complexd slot_phase(const BundlePoint& a, const BundlePoint& b,
                    const Tolerances& tol = default_tolerances());

}  // namespace prequant
