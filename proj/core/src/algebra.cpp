#include "prequant/algebra.hpp"

#include <array>
#include <cmath>

namespace prequant {

namespace {
constexpr complexd kI{0.0, 1.0};

Mat2c make_pauli(int i) {
  Mat2c m;
  switch (i) {
    case 1:
      m << 0, 1, 1, 0;
      break;
    case 2:
      m << 0, -kI, kI, 0;
      break;
    case 3:
      m << 1, 0, 0, -1;
      break;
    default:
      throw DomainError("pauli index must be 1, 2 or 3");
  }
  return m;
}
}  // namespace

const Mat2c& pauli(int i) {
  static const std::array<Mat2c, 3> s = {make_pauli(1), make_pauli(2),
                                         make_pauli(3)};
  if (i < 1 || i > 3) throw DomainError("pauli index must be 1, 2 or 3");
  return s[static_cast<std::size_t>(i - 1)];
}

const Mat2c& sigma_mu(int mu) {
  static const std::array<Mat2c, 4> s = {Mat2c::Identity(), make_pauli(1),
                                         make_pauli(2), make_pauli(3)};
  if (mu < 0 || mu > 3) throw DomainError("sigma index must be in 0..3");
  return s[static_cast<std::size_t>(mu)];
}

const Mat2c& sigma_tilde_mu(int mu) {
  static const std::array<Mat2c, 4> s = {Mat2c::Identity(), -make_pauli(1),
                                         -make_pauli(2), -make_pauli(3)};
  if (mu < 0 || mu > 3) throw DomainError("sigma index must be in 0..3");
  return s[static_cast<std::size_t>(mu)];
}

namespace {
Mat4c make_gamma(int mu) {
  Mat4c g = Mat4c::Zero();
  g.block<2, 2>(0, 2) = sigma_tilde_mu(mu);
  g.block<2, 2>(2, 0) = sigma_mu(mu);
  return g;
}
}  // namespace

const Mat4c& gamma_mu(int mu) {
  static const std::array<Mat4c, 4> g = {make_gamma(0), make_gamma(1),
                                         make_gamma(2), make_gamma(3)};
  if (mu < 0 || mu > 3) throw DomainError("gamma index must be in 0..3");
  return g[static_cast<std::size_t>(mu)];
}

const Mat4c& gamma5() {
  static const Mat4c g5 =
      kI * gamma_mu(0) * gamma_mu(1) * gamma_mu(2) * gamma_mu(3);
  return g5;
}

double minkowski_dot(const Vec4& a, const Vec4& b) {
  return a(0) * b(0) - a(1) * b(1) - a(2) * b(2) - a(3) * b(3);
}

double epsilon4_lower(int mu, int nu, int rho, int sigma) {
  const int idx[4] = {mu, nu, rho, sigma};
  int perm[4];
  for (int i = 0; i < 4; ++i) {
    if (idx[i] < 0 || idx[i] > 3) return 0.0;
    perm[i] = idx[i];
  }
  int sign = 1;
  for (int i = 0; i < 4; ++i) {
    while (perm[i] != i) {
      int j = perm[i];
      if (perm[j] == perm[i]) return 0.0;  // repeated index
      std::swap(perm[i], perm[j]);
      sign = -sign;
    }
  }
  // eps_{0123} = -1
  return -static_cast<double>(sign);
}

double epsilon4_contract(const Vec4& a, const Vec4& b, const Vec4& c,
                         const Vec4& d) {
  // eps_{mu nu rho sig} a^mu b^nu c^rho d^sig = -det[a b c d] with columns in
  // index order, for eps_{0123} = -1.
  Eigen::Matrix4d m;
  m.col(0) = a;
  m.col(1) = b;
  m.col(2) = c;
  m.col(3) = d;
  return -m.determinant();
}

// ---------------------------------------------------------------------------
// Spinor2
// ---------------------------------------------------------------------------

bool Spinor2::check_unit(const Vec2c& z, const Tolerances& tol) {
  return std::abs(z.squaredNorm() - 1.0) <= tol.norm;
}

Spinor2::Spinor2(complexd z1, complexd z2, const Tolerances& tol)
    : Spinor2(Vec2c(z1, z2), tol) {}

Spinor2::Spinor2(const Vec2c& z, const Tolerances& tol) : z_(z) {
  if (!check_unit(z_, tol))
    throw DomainError("Spinor2: |z1|^2 + |z2|^2 must be 1");
}

Spinor2 Spinor2::phase_multiplied(complexd unit_phase) const {
  Spinor2 out(*this);
  out.z_ *= unit_phase / std::abs(unit_phase);
  return out;
}

// ---------------------------------------------------------------------------
// DiracSpinor
// ---------------------------------------------------------------------------

void DiracSpinor::check_constraints(const Vec4c& psi, const Tolerances& tol) {
  const complexd pairing = psi.head<2>().dot(psi.tail<2>());
  // psibar psi = 2 Re<u,v>, psibar gamma5 psi = -2i Im<u,v>
  if (std::abs(2.0 * pairing.real() - 1.0) > tol.norm)
    throw DomainError("DiracSpinor: psibar psi must be 1");
  if (std::abs(2.0 * pairing.imag()) > tol.norm)
    throw DomainError("DiracSpinor: psibar gamma5 psi must be 0");
}

DiracSpinor::DiracSpinor(const Vec4c& psi, const Tolerances& tol) : psi_(psi) {
  check_constraints(psi_, tol);
}

DiracSpinor DiracSpinor::from_two_spinors(const Vec2c& xi1, const Vec2c& xi2,
                                          const Tolerances& tol) {
  Vec4c psi;
  psi.head<2>() = xi1;
  psi.tail<2>() = xi2.conjugate();
  return DiracSpinor(psi, tol);
}

complexd DiracSpinor::dirac_pairing(const Vec4c& phi) const {
  return psi_.dot(gamma_mu(0) * phi);
}

DiracSpinor DiracSpinor::phase_multiplied(complexd unit_phase) const {
  DiracSpinor out(*this);
  out.psi_ *= unit_phase / std::abs(unit_phase);
  return out;
}

// ---------------------------------------------------------------------------
// SU2Element
// ---------------------------------------------------------------------------

SU2Element SU2Element::from_quaternion(double w, const Vec3& v) {
  Eigen::Quaterniond q(w, v(0), v(1), v(2));
  const double n = q.norm();
  if (std::abs(n - 1.0) > 1e-6)
    throw DomainError("SU2Element: quaternion must be unit");
  q.normalize();
  return SU2Element(q);
}

SU2Element SU2Element::from_matrix(const Mat2c& m, const Tolerances& tol) {
  check_invariants(m, tol);
  // m = w 1 - i (x s1 + y s2 + z s3)
  const double w = 0.5 * (m(0, 0) + m(1, 1)).real();
  const double x = -0.5 * (m(0, 1) + m(1, 0)).imag();
  const double y = 0.5 * (m(1, 0) - m(0, 1)).real();
  const double z = -0.5 * (m(0, 0) - m(1, 1)).imag();
  Eigen::Quaterniond q(w, x, y, z);
  q.normalize();
  return SU2Element(q);
}

void SU2Element::check_invariants(const Mat2c& m, const Tolerances& tol) {
  if (!(m * m.adjoint()).isApprox(Mat2c::Identity(), tol.alg * 100) ||
      std::abs(m.determinant() - 1.0) > tol.alg * 100)
    throw DomainError("SU2Element: matrix must be special unitary");
}

Mat2c SU2Element::matrix() const {
  const double w = q_.w(), x = q_.x(), y = q_.y(), z = q_.z();
  Mat2c m;
  m(0, 0) = complexd(w, -z);
  m(0, 1) = complexd(-y, -x);
  m(1, 0) = complexd(y, -x);
  m(1, 1) = complexd(w, z);
  return m;
}

SU2Element SU2Element::operator*(const SU2Element& rhs) const {
  Eigen::Quaterniond q = q_ * rhs.q_;
  q.normalize();
  return SU2Element(q);
}

SU2Element SU2Element::inverse() const { return SU2Element(q_.conjugate()); }

SU2Element SU2Element::negated() const {
  return SU2Element(Eigen::Quaterniond(-q_.w(), -q_.x(), -q_.y(), -q_.z()));
}

bool SU2Element::approx_equal(const SU2Element& other, double tol) const {
  return (q_.coeffs() - other.q_.coeffs()).norm() <= tol;
}

// ---------------------------------------------------------------------------
// SL2CElement
// ---------------------------------------------------------------------------

void SL2CElement::check_invariants(const Mat2c& m, const Tolerances& tol) {
  if (std::abs(m.determinant() - 1.0) > tol.alg * 100)
    throw DomainError("SL2CElement: determinant must be 1");
}

SL2CElement::SL2CElement(const Mat2c& m, const Tolerances& tol) : m_(m) {
  check_invariants(m_, tol);
}

SL2CElement SL2CElement::from_su2(const SU2Element& a) {
  return SL2CElement(a.matrix());
}

SL2CElement SL2CElement::boost(const Vec3& dir, double rapidity) {
  if (std::abs(dir.norm() - 1.0) > 1e-9)
    throw DomainError("SL2CElement::boost: direction must be unit");
  Mat2c n = dir(0) * pauli(1) + dir(1) * pauli(2) + dir(2) * pauli(3);
  Mat2c m = std::cosh(rapidity / 2) * Mat2c::Identity() +
            std::sinh(rapidity / 2) * n;
  return SL2CElement(m);
}

SL2CElement SL2CElement::boost_from_rest(const Vec4& I) {
  const Vec3 sp = I.tail<3>();
  const double nsp = sp.norm();
  if (nsp < 1e-14) return SL2CElement::identity();
  return boost(sp / nsp, std::acosh(I(0)));
}

SL2CElement SL2CElement::operator*(const SL2CElement& rhs) const {
  return SL2CElement(m_ * rhs.m_, Tolerances{.alg = 1e-8});
}

SL2CElement SL2CElement::inverse() const {
  // det = 1: inverse is the adjugate
  Mat2c inv;
  inv << m_(1, 1), -m_(0, 1), -m_(1, 0), m_(0, 0);
  return SL2CElement(inv, Tolerances{.alg = 1e-8});
}

SL2CElement SL2CElement::negated() const {
  return SL2CElement(Mat2c(-m_), Tolerances{.alg = 1e-8});
}

Mat4c SL2CElement::dirac_matrix() const {
  Mat4c u = Mat4c::Zero();
  u.block<2, 2>(0, 0) = m_;
  u.block<2, 2>(2, 2) = inverse().matrix().adjoint();
  return u;
}

Vec4c SL2CElement::apply_dirac(const Vec4c& psi) const {
  Vec4c out;
  out.head<2>() = m_ * psi.head<2>();
  out.tail<2>() = inverse().matrix().adjoint() * psi.tail<2>();
  return out;
}

// ---------------------------------------------------------------------------
// SO3Element / LorentzElement
// ---------------------------------------------------------------------------

void SO3Element::check_invariants(const Eigen::Matrix3d& m,
                                  const Tolerances& tol) {
  if (!(m.transpose() * m).isApprox(Eigen::Matrix3d::Identity(),
                                    tol.alg * 100) ||
      std::abs(m.determinant() - 1.0) > tol.alg * 100)
    throw DomainError("SO3Element: matrix must be a proper rotation");
}

SO3Element::SO3Element(const Eigen::Matrix3d& m, const Tolerances& tol)
    : m_(m) {
  check_invariants(m_, tol);
}

void LorentzElement::check_invariants(const Eigen::Matrix4d& m,
                                      const Tolerances& tol) {
  static const Eigen::Matrix4d eta =
      Eigen::Vector4d(1, -1, -1, -1).asDiagonal();
  if (!(m.transpose() * eta * m).isApprox(eta, tol.alg * 100))
    throw DomainError("LorentzElement: Lambda^T eta Lambda must equal eta");
  if (m(0, 0) < 0 || m.determinant() < 0)
    throw DomainError("LorentzElement: must be proper orthochronous");
}

LorentzElement::LorentzElement(const Eigen::Matrix4d& m, const Tolerances& tol)
    : m_(m) {
  check_invariants(m_, tol);
}

// ---------------------------------------------------------------------------
// Exponential and covering maps
// ---------------------------------------------------------------------------

SU2Element su2_exp(const Vec3& axis, double angle, double spin,
                   const Tolerances& tol) {
  if (std::abs(axis.norm() - 1.0) > tol.norm * 10)
    throw DomainError("su2_exp: axis must be a unit vector");
  if (angle < 0)
    throw DomainError("su2_exp: angle must be nonnegative; use inverse()");
  if (spin < 0 || std::abs(2 * spin - std::round(2 * spin)) > 1e-9)
    throw DomainError("su2_exp: spin must be a nonnegative half-integer");
  // cos(s|X|) 1 - i sin(s|X|) sigma.axis; the angle = 0 limit is the
  // identity with no division by |X|.
  return SU2Element::from_quaternion(std::cos(spin * angle),
                                     std::sin(spin * angle) * axis);
}

SO3Element su2_to_so3(const SU2Element& a) {
  // Quaternion rotation matrix; equals 1/2 Tr(a^dag sigma^i a sigma^j).
  return SO3Element(a.quaternion().toRotationMatrix(),
                    Tolerances{.alg = 1e-8});
}

LorentzElement sl2c_to_lorentz(const SL2CElement& a) {
  const Mat2c& m = a.matrix();
  Eigen::Matrix4d lam;
  for (int nu = 0; nu < 4; ++nu) {
    const Mat2c conj = m * sigma_mu(nu) * m.adjoint();
    lam(0, nu) = 0.5 * conj.trace().real();
    for (int i = 1; i < 4; ++i)
      lam(i, nu) = 0.5 * (pauli(i) * conj).trace().real();
  }
  return LorentzElement(lam, Tolerances{.alg = 1e-7});
}

SU2Element su2_rotation_between(const Vec3& a, const Vec3& b,
                                const Tolerances& tol) {
  if (std::abs(a.norm() - 1.0) > tol.norm * 10 ||
      std::abs(b.norm() - 1.0) > tol.norm * 10)
    throw DomainError("su2_rotation_between: inputs must be unit vectors");
  const Vec3 c = a.cross(b);
  const double d = a.dot(b);
  if (c.norm() < 1e-14) {
    if (d > 0) return SU2Element::identity();
    throw DomainError("su2_rotation_between: antipodal inputs, no unique axis");
  }
  return su2_exp(c.normalized(), std::acos(std::clamp(d, -1.0, 1.0)), 0.5);
}

Eigen::Matrix3d axis_angle_matrix(const Vec3& axis, double angle) {
  return Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
}

}  // namespace prequant
