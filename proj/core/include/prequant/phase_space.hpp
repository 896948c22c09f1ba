#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <variant>

#include "prequant/algebra.hpp"
#include "prequant/errors.hpp"
#include "prequant/tolerances.hpp"

namespace prequant {

// ---------------------------------------------------------------------------
// Phase spaces
//
// Coordinate layouts (ambient coordinates with constraints, upper indices):
//   SpinSphere(s)     : x(3)                      |x| = 1
//   FreeRel(m)        : x(3), I(4)                I.I = 1, x^0 = 0 slice
//   MassiveSpin(m,s)  : x(3), I(4), J(4)          I.I = 1, J.J = -1, I.J = 0
//   Massless(s,chi)   : x(4), I(4), J(4)          I.I = 0, J.J = 0, I.J = -1
//   ThreeD(m,s)       : x(2), I(3)                I.I = 1 (2+1 metric)
//   Anyon(alpha)      : u, v (cover), I(2)        none; base (x,y) != 0
//
// The anyon cover chart is (x, y) = (exp((u+v)) style): see cover_to_plane.
// ---------------------------------------------------------------------------

enum class SpaceKind { SpinSphere, FreeRel, MassiveSpin, Massless, ThreeD, Anyon };

std::string to_string(SpaceKind k);

struct PhaseSpaceId {
  SpaceKind kind = SpaceKind::SpinSphere;
  double spin = 0.0;
  double mass = 0.0;
  double alpha = 0.0;
  int helicity = 1;

  static PhaseSpaceId spin_sphere(double s);
  static PhaseSpaceId free_rel(double m);
  static PhaseSpaceId massive_spin(double m, double s);
  static PhaseSpaceId massless(double s, int chi);
  static PhaseSpaceId three_d(double m, double s);
  static PhaseSpaceId anyon(double alpha);

  /// Ambient coordinate count of the layout above.
  int dim() const;

  bool operator==(const PhaseSpaceId& o) const;
};

struct PhasePoint {
  PhaseSpaceId space;
  Eigen::VectorXd coords;

  Vec3 x3() const { return coords.segment<3>(0); }
  Vec4 x4() const { return coords.segment<4>(0); }
  Eigen::Vector2d x2() const { return coords.segment<2>(0); }
  Vec4 I4() const;
  Vec4 J4() const;
  Eigen::Vector3d I3() const { return coords.segment<3>(2); }
  Eigen::Vector2d cover() const { return coords.segment<2>(0); }
  Eigen::Vector2d I2() const { return coords.segment<2>(2); }
};

struct TangentVector {
  PhasePoint base;
  Eigen::VectorXd components;
};

PhasePoint sphere_point(double s, const Vec3& x,
                        const Tolerances& tol = default_tolerances());
PhasePoint free_rel_point(double m, const Vec3& x, const Vec4& I,
                          const Tolerances& tol = default_tolerances());
PhasePoint massive_point(double m, double s, const Vec3& x, const Vec4& I,
                         const Vec4& J,
                         const Tolerances& tol = default_tolerances());
PhasePoint massless_point(double s, int chi, const Vec4& x, const Vec4& I,
                          const Vec4& J,
                          const Tolerances& tol = default_tolerances());
PhasePoint three_d_point(double m, double s, const Eigen::Vector2d& x,
                         const Eigen::Vector3d& I,
                         const Tolerances& tol = default_tolerances());
PhasePoint anyon_point(double alpha, const Eigen::Vector2d& cover,
                       const Eigen::Vector2d& I);

void validate_point(const PhasePoint& p,
                    const Tolerances& tol = default_tolerances());
void validate_tangent(const TangentVector& u,
                      const Tolerances& tol = default_tolerances());

/// Projects ambient coordinates back onto the constraint surface. Used after
/// every finite-difference displacement.
PhasePoint project_to_constraints(const PhasePoint& p);

/// Projects raw ambient components onto the tangent space at p.
TangentVector project_tangent(const PhasePoint& p,
                              const Eigen::VectorXd& raw);

/// Chart distance between two points of the same space (ambient Euclidean).
double chart_distance(const PhasePoint& a, const PhasePoint& b);

/// The anyon cover chart transition to the punctured plane:
/// x = e^{(u+v)_mix} ... Concretely (x, y) = r (cos 2 pi u, sin 2 pi u) with
/// r = e^v; the deck shift u -> u + k is a rotation by 2 pi k.
Eigen::Vector2d cover_to_plane(const Eigen::Vector2d& cover);

// ---------------------------------------------------------------------------
// Symplectic structure
// ---------------------------------------------------------------------------

/// Pointwise evaluation of the space's symplectic form.
double symplectic_eval(const PhasePoint& p, const TangentVector& u,
                       const TangentVector& v,
                       const Tolerances& tol = default_tolerances());

/// The degenerate direction V(a) of the massless two-form, for a.I = 0.
TangentVector null_directions_massless(
    const PhasePoint& p, const Vec4& a,
    const Tolerances& tol = default_tolerances());

/// Finite-difference estimate of dOmega(u, v, w); closedness means the
/// result is below tol.fd for every space.
double closedness_check(const PhaseSpaceId& space, const PhasePoint& p,
                        const TangentVector& u, const TangentVector& v,
                        const TangentVector& w,
                        const Tolerances& tol = default_tolerances());

// ---------------------------------------------------------------------------
// Symmetry group actions on the base spaces
// ---------------------------------------------------------------------------

/// Poincare element (Lambda, C): x -> Lambda x + C, I -> Lambda I.
struct Poincare4 {
  LorentzElement lorentz;
  Vec4 translation = Vec4::Zero();
};

/// Double-cover Poincare element; the form a Dirac bundle can lift.
struct SpinPoincare4 {
  SL2CElement a;
  Vec4 translation = Vec4::Zero();
};

/// SO(2,1) x R^3 element for the 2+1-dimensional space.
struct Poincare3 {
  Eigen::Matrix3d lorentz = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();
};

/// Rotation about the origin of the punctured plane.
struct PlaneRotation {
  double angle = 0.0;
};

/// Deck transformation of the anyon cover (rotation by 2 pi k).
struct DeckTranslation {
  int winding = 0;
};

/// Structure-group U(1) phase e^{i theta}.
struct FiberPhase {
  double theta = 0.0;
};

using GroupElement = std::variant<SU2Element, SL2CElement, Poincare4,
                                  SpinPoincare4, Poincare3, PlaneRotation,
                                  DeckTranslation, FiberPhase>;

/// Checks that Lambda preserves diag(1,-1,-1) and is proper orthochronous.
void validate_so21(const Eigen::Matrix3d& m,
                   const Tolerances& tol = default_tolerances());

/// 2+1 boost with given rapidity along a unit spatial 2-vector.
Eigen::Matrix3d so21_boost(const Eigen::Vector2d& dir, double rapidity);
/// 2+1 spatial rotation.
Eigen::Matrix3d so21_rotation(double angle);

/// Applies a symmetry element to a base point. Time slices are restored by
/// sliding along I (x ~ x + lambda I), which leaves the symplectic form
/// unchanged.
PhasePoint apply_group(const PhasePoint& p, const GroupElement& g,
                       const Tolerances& tol = default_tolerances());

/// Pushforward of a tangent vector under apply_group (central differences;
/// the actions are affine up to the slice projection).
TangentVector push_tangent(const TangentVector& u, const GroupElement& g,
                           const Tolerances& tol = default_tolerances());

}  // namespace prequant
