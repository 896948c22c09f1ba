#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <complex>

#include "prequant/errors.hpp"
#include "prequant/tolerances.hpp"

namespace prequant {

using complexd = std::complex<double>;
using Mat2c = Eigen::Matrix2cd;
using Mat4c = Eigen::Matrix4cd;
using Vec2c = Eigen::Vector2cd;
using Vec4c = Eigen::Vector4cd;
using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;

// ---------------------------------------------------------------------------
// Conventions, fixed once for the whole library:
//   * metric signature (+,-,-,-), eta = diag(1,-1,-1,-1)
//   * sigma^mu = (1, sigma^i), sigmatilde^mu = (1, -sigma^i)
//   * gamma^mu = [[0, sigmatilde^mu], [sigma^mu, 0]] (2x2 blocks),
//     gamma5 = i g0 g1 g2 g3 = diag(1, 1, -1, -1)
//   * Levi-Civita eps_{0123} = -1 (so eps^{0123} = +1). With this choice the
//     curvature of the Dirac-spinor connection reproduces the massive
//     symplectic form term by term.
// ---------------------------------------------------------------------------

/// Pauli matrix sigma^i, i in {1,2,3}.
const Mat2c& pauli(int i);

/// sigma^mu = (1, sigma^i).
const Mat2c& sigma_mu(int mu);

/// sigmatilde^mu = (1, -sigma^i).
const Mat2c& sigma_tilde_mu(int mu);

/// Dirac matrix gamma^mu in the block (Weyl) realization above.
const Mat4c& gamma_mu(int mu);

/// gamma5 = i gamma^0 gamma^1 gamma^2 gamma^3.
const Mat4c& gamma5();

/// Minkowski inner product a^mu eta_{mu nu} b^nu.
double minkowski_dot(const Vec4& a, const Vec4& b);

/// Fully antisymmetric symbol with eps_{0123} = -1 (all indices down).
double epsilon4_lower(int mu, int nu, int rho, int sigma);

/// eps(a,b,c,d) = eps_{mu nu rho sigma} a^mu b^nu c^rho d^sigma.
double epsilon4_contract(const Vec4& a, const Vec4& b, const Vec4& c,
                         const Vec4& d);

// ---------------------------------------------------------------------------
// Spinors
// ---------------------------------------------------------------------------

/// Unit two-spinor: a point of S^3, the total space of the Hopf bundle.
class Spinor2 {
 public:
  Spinor2(complexd z1, complexd z2,
          const Tolerances& tol = default_tolerances());
  explicit Spinor2(const Vec2c& z,
                   const Tolerances& tol = default_tolerances());

  const Vec2c& components() const { return z_; }
  complexd z1() const { return z_(0); }
  complexd z2() const { return z_(1); }

  /// Hermitian inner product <this, other> (conjugate-linear in this).
  complexd inner(const Spinor2& other) const {
    return z_.dot(other.z_);
  }

  Spinor2 phase_multiplied(complexd unit_phase) const;

  static bool check_unit(const Vec2c& z, const Tolerances& tol);

 private:
  Vec2c z_;
};

/// Dirac spinor on the constraint surface psibar psi = 1, psibar gamma5 psi
/// = 0. In the block realization the two constraints collapse to
/// <upper, lower> = 1/2.
class DiracSpinor {
 public:
  explicit DiracSpinor(const Vec4c& psi,
                       const Tolerances& tol = default_tolerances());

  /// Builds (xi1, conj(xi2)) and validates the constraints.
  static DiracSpinor from_two_spinors(
      const Vec2c& xi1, const Vec2c& xi2,
      const Tolerances& tol = default_tolerances());

  const Vec4c& components() const { return psi_; }
  Vec2c upper() const { return psi_.head<2>(); }
  Vec2c lower() const { return psi_.tail<2>(); }

  /// psibar phi = psi^dag gamma^0 phi.
  complexd dirac_pairing(const Vec4c& phi) const;

  DiracSpinor phase_multiplied(complexd unit_phase) const;

  static void check_constraints(const Vec4c& psi, const Tolerances& tol);

 private:
  Vec4c psi_;
};

// ---------------------------------------------------------------------------
// Group elements
// ---------------------------------------------------------------------------

/// SU(2) element stored as a unit quaternion (w, v) <-> w*1 - i v.sigma.
/// Quaternion storage avoids drift under the long compositions that exchange
/// paths produce; the 2x2 matrix realization is built on demand.
class SU2Element {
 public:
  SU2Element() : q_(Eigen::Quaterniond::Identity()) {}

  static SU2Element identity() { return SU2Element(); }
  static SU2Element from_quaternion(double w, const Vec3& v);
  static SU2Element from_matrix(const Mat2c& m,
                                const Tolerances& tol = default_tolerances());

  Mat2c matrix() const;
  const Eigen::Quaterniond& quaternion() const { return q_; }

  SU2Element operator*(const SU2Element& rhs) const;
  SU2Element inverse() const;
  SU2Element negated() const;

  Vec2c apply(const Vec2c& xi) const { return matrix() * xi; }

  bool approx_equal(const SU2Element& other, double tol) const;

  static void check_invariants(const Mat2c& m, const Tolerances& tol);

 private:
  explicit SU2Element(const Eigen::Quaterniond& q) : q_(q) {}
  Eigen::Quaterniond q_;
};

/// SL(2,C) element: determinant-one 2x2 complex matrix.
class SL2CElement {
 public:
  SL2CElement() : m_(Mat2c::Identity()) {}
  explicit SL2CElement(const Mat2c& m,
                       const Tolerances& tol = default_tolerances());

  static SL2CElement identity() { return SL2CElement(); }
  static SL2CElement from_su2(const SU2Element& a);
  /// Pure boost exp((rapidity/2) sigma.dir).
  static SL2CElement boost(const Vec3& dir, double rapidity);
  /// The pure boost mapping the rest momentum (1,0,0,0) to unit timelike I.
  static SL2CElement boost_from_rest(const Vec4& I);

  const Mat2c& matrix() const { return m_; }
  SL2CElement operator*(const SL2CElement& rhs) const;
  SL2CElement inverse() const;
  SL2CElement negated() const;

  /// Dirac action U(a) = diag(a, (a^dag)^{-1}) on 4-spinors.
  Mat4c dirac_matrix() const;
  Vec4c apply_dirac(const Vec4c& psi) const;

  static void check_invariants(const Mat2c& m, const Tolerances& tol);

 private:
  Mat2c m_;
};

/// Proper rotation matrix.
class SO3Element {
 public:
  SO3Element() : m_(Eigen::Matrix3d::Identity()) {}
  explicit SO3Element(const Eigen::Matrix3d& m,
                      const Tolerances& tol = default_tolerances());

  const Eigen::Matrix3d& matrix() const { return m_; }
  SO3Element operator*(const SO3Element& rhs) const {
    return SO3Element(m_ * rhs.m_, Tolerances{.alg = 1e-8});
  }
  Vec3 apply(const Vec3& x) const { return m_ * x; }

  static void check_invariants(const Eigen::Matrix3d& m,
                               const Tolerances& tol);

 private:
  Eigen::Matrix3d m_;
};

/// Proper orthochronous Lorentz matrix: Lambda^T eta Lambda = eta.
class LorentzElement {
 public:
  LorentzElement() : m_(Eigen::Matrix4d::Identity()) {}
  explicit LorentzElement(const Eigen::Matrix4d& m,
                          const Tolerances& tol = default_tolerances());

  const Eigen::Matrix4d& matrix() const { return m_; }
  LorentzElement operator*(const LorentzElement& rhs) const {
    return LorentzElement(m_ * rhs.m_, Tolerances{.alg = 1e-8});
  }
  Vec4 apply(const Vec4& x) const { return m_ * x; }

  static void check_invariants(const Eigen::Matrix4d& m,
                               const Tolerances& tol);

 private:
  Eigen::Matrix4d m_;
};

// ---------------------------------------------------------------------------
// Exponential and covering maps
// ---------------------------------------------------------------------------

/// Group element cos(s|X|) 1 - i sin(s|X|) sigma.axis for X = angle*axis.
/// The angle is the base rotation angle; the spin weight s scales the
/// response, so (axis, 2pi, n/2) is the scalar matrix (-1)^n.
SU2Element su2_exp(const Vec3& axis, double angle, double spin,
                   const Tolerances& tol = default_tolerances());

/// Covering map O^{ij}(a) = 1/2 Tr(a^dag sigma^i a sigma^j); two-to-one.
SO3Element su2_to_so3(const SU2Element& a);

/// Covering map SL(2,C) -> SO(3,1)^+, defined by
/// a (x^mu sigma_mu-block) a^dag = (Lambda x)^mu sigma_mu-block; two-to-one.
/// Restricted to SU(2) it is block-diag(1, su2_to_so3).
LorentzElement sl2c_to_lorentz(const SL2CElement& a);

/// Minimal rotation carrying unit vector a to unit vector b.
/// Antipodal inputs are a DomainError (no unique axis).
SU2Element su2_rotation_between(const Vec3& a, const Vec3& b,
                                const Tolerances& tol = default_tolerances());

/// Rotation by angle about axis, as the SO(3) matrix (Rodrigues).
Eigen::Matrix3d axis_angle_matrix(const Vec3& axis, double angle);

}  // namespace prequant
