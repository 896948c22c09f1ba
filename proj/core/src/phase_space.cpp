#include "prequant/phase_space.hpp"

#include <cmath>

namespace prequant {

namespace {
constexpr double kTwoPi = 6.283185307179586476925287;

double mdot3(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  return a(0) * b(0) - a(1) * b(1) - a(2) * b(2);  // 2+1 metric
}
}  // namespace

std::string to_string(SpaceKind k) {
  switch (k) {
    case SpaceKind::SpinSphere: return "spin-sphere";
    case SpaceKind::FreeRel: return "free-rel";
    case SpaceKind::MassiveSpin: return "massive-spin";
    case SpaceKind::Massless: return "massless";
    case SpaceKind::ThreeD: return "three-d";
    case SpaceKind::Anyon: return "anyon";
  }
  return "?";
}

PhaseSpaceId PhaseSpaceId::spin_sphere(double s) {
  if (s < 0) throw DomainError("SpinSphere: s must be nonnegative");
  PhaseSpaceId id;
  id.kind = SpaceKind::SpinSphere;
  id.spin = s;
  return id;
}

PhaseSpaceId PhaseSpaceId::free_rel(double m) {
  if (m <= 0) throw DomainError("FreeRel: m must be positive");
  PhaseSpaceId id;
  id.kind = SpaceKind::FreeRel;
  id.mass = m;
  return id;
}

PhaseSpaceId PhaseSpaceId::massive_spin(double m, double s) {
  if (m <= 0) throw DomainError("MassiveSpin: m must be positive");
  if (s <= 0) throw DomainError("MassiveSpin: s must be positive");
  PhaseSpaceId id;
  id.kind = SpaceKind::MassiveSpin;
  id.mass = m;
  id.spin = s;
  return id;
}

PhaseSpaceId PhaseSpaceId::massless(double s, int chi) {
  if (s <= 0) throw DomainError("Massless: s must be positive");
  if (chi != 1 && chi != -1) throw DomainError("Massless: chi must be +-1");
  PhaseSpaceId id;
  id.kind = SpaceKind::Massless;
  id.spin = s;
  id.helicity = chi;
  return id;
}

PhaseSpaceId PhaseSpaceId::three_d(double m, double s) {
  if (m <= 0) throw DomainError("ThreeD: m must be positive");
  PhaseSpaceId id;
  id.kind = SpaceKind::ThreeD;
  id.mass = m;
  id.spin = s;
  return id;
}

PhaseSpaceId PhaseSpaceId::anyon(double alpha) {
  PhaseSpaceId id;
  id.kind = SpaceKind::Anyon;
  id.alpha = alpha;
  return id;
}

int PhaseSpaceId::dim() const {
  switch (kind) {
    case SpaceKind::SpinSphere: return 3;
    case SpaceKind::FreeRel: return 7;
    case SpaceKind::MassiveSpin: return 11;
    case SpaceKind::Massless: return 12;
    case SpaceKind::ThreeD: return 5;
    case SpaceKind::Anyon: return 4;
  }
  return 0;
}

bool PhaseSpaceId::operator==(const PhaseSpaceId& o) const {
  return kind == o.kind && spin == o.spin && mass == o.mass &&
         alpha == o.alpha && helicity == o.helicity;
}

Vec4 PhasePoint::I4() const {
  return coords.segment<4>(space.kind == SpaceKind::Massless ? 4 : 3);
}

Vec4 PhasePoint::J4() const {
  return coords.segment<4>(space.kind == SpaceKind::Massless ? 8 : 7);
}

// ---------------------------------------------------------------------------
// Factories and validation
// ---------------------------------------------------------------------------

PhasePoint sphere_point(double s, const Vec3& x, const Tolerances& tol) {
  PhasePoint p{PhaseSpaceId::spin_sphere(s), x};
  validate_point(p, tol);
  return p;
}

PhasePoint free_rel_point(double m, const Vec3& x, const Vec4& I,
                          const Tolerances& tol) {
  PhasePoint p{PhaseSpaceId::free_rel(m), Eigen::VectorXd(7)};
  p.coords << x, I;
  validate_point(p, tol);
  return p;
}

PhasePoint massive_point(double m, double s, const Vec3& x, const Vec4& I,
                         const Vec4& J, const Tolerances& tol) {
  PhasePoint p{PhaseSpaceId::massive_spin(m, s), Eigen::VectorXd(11)};
  p.coords << x, I, J;
  validate_point(p, tol);
  return p;
}

PhasePoint massless_point(double s, int chi, const Vec4& x, const Vec4& I,
                          const Vec4& J, const Tolerances& tol) {
  PhasePoint p{PhaseSpaceId::massless(s, chi), Eigen::VectorXd(12)};
  p.coords << x, I, J;
  validate_point(p, tol);
  return p;
}

PhasePoint three_d_point(double m, double s, const Eigen::Vector2d& x,
                         const Eigen::Vector3d& I, const Tolerances& tol) {
  PhasePoint p{PhaseSpaceId::three_d(m, s), Eigen::VectorXd(5)};
  p.coords << x, I;
  validate_point(p, tol);
  return p;
}

PhasePoint anyon_point(double alpha, const Eigen::Vector2d& cover,
                       const Eigen::Vector2d& I) {
  PhasePoint p{PhaseSpaceId::anyon(alpha), Eigen::VectorXd(4)};
  p.coords << cover, I;
  return p;
}

void validate_point(const PhasePoint& p, const Tolerances& tol) {
  if (p.coords.size() != p.space.dim())
    throw DomainError("PhasePoint: wrong coordinate count for space");
  const double g = tol.geom;
  switch (p.space.kind) {
    case SpaceKind::SpinSphere:
      if (std::abs(p.x3().norm() - 1.0) > g)
        throw DomainError("SpinSphere point: |x| must be 1");
      break;
    case SpaceKind::FreeRel: {
      const Vec4 I = p.I4();
      if (std::abs(minkowski_dot(I, I) - 1.0) > g || I(0) <= 0)
        throw DomainError("FreeRel point: I must be unit timelike future");
      break;
    }
    case SpaceKind::MassiveSpin: {
      const Vec4 I = p.I4(), J = p.J4();
      if (std::abs(minkowski_dot(I, I) - 1.0) > g || I(0) <= 0)
        throw DomainError("MassiveSpin point: I must be unit timelike future");
      if (std::abs(minkowski_dot(J, J) + 1.0) > g)
        throw DomainError("MassiveSpin point: J must be unit spacelike");
      if (std::abs(minkowski_dot(I, J)) > g)
        throw DomainError("MassiveSpin point: I.J must vanish");
      break;
    }
    case SpaceKind::Massless: {
      const Vec4 I = p.I4(), J = p.J4();
      if (std::abs(minkowski_dot(I, I)) > g || I(0) <= 0)
        throw DomainError("Massless point: I must be null future");
      if (std::abs(minkowski_dot(J, J)) > g)
        throw DomainError("Massless point: J must be null");
      if (std::abs(minkowski_dot(I, J) + 1.0) > g)
        throw DomainError("Massless point: I.J must equal -1");
      break;
    }
    case SpaceKind::ThreeD: {
      const Eigen::Vector3d I = p.I3();
      if (std::abs(mdot3(I, I) - 1.0) > g || I(0) <= 0)
        throw DomainError("ThreeD point: I must be unit timelike future");
      break;
    }
    case SpaceKind::Anyon:
      break;
  }
}

void validate_tangent(const TangentVector& u, const Tolerances& tol) {
  validate_point(u.base, tol);
  if (u.components.size() != u.base.coords.size())
    throw DomainError("TangentVector: wrong component count");
  const double g = tol.geom * 10;
  const PhasePoint& p = u.base;
  switch (p.space.kind) {
    case SpaceKind::SpinSphere:
      if (std::abs(p.x3().dot(u.components.segment<3>(0))) > g)
        throw DomainError("tangent: x.dx must vanish on the sphere");
      break;
    case SpaceKind::FreeRel:
      if (std::abs(minkowski_dot(p.I4(), u.components.segment<4>(3))) > g)
        throw DomainError("tangent: I.dI must vanish");
      break;
    case SpaceKind::MassiveSpin: {
      const Vec4 dI = u.components.segment<4>(3);
      const Vec4 dJ = u.components.segment<4>(7);
      if (std::abs(minkowski_dot(p.I4(), dI)) > g ||
          std::abs(minkowski_dot(p.J4(), dJ)) > g ||
          std::abs(minkowski_dot(p.I4(), dJ) + minkowski_dot(dI, p.J4())) > g)
        throw DomainError("tangent: constraint derivatives must vanish");
      break;
    }
    case SpaceKind::Massless: {
      const Vec4 dI = u.components.segment<4>(4);
      const Vec4 dJ = u.components.segment<4>(8);
      if (std::abs(minkowski_dot(p.I4(), dI)) > g ||
          std::abs(minkowski_dot(p.J4(), dJ)) > g ||
          std::abs(minkowski_dot(p.I4(), dJ) + minkowski_dot(dI, p.J4())) > g)
        throw DomainError("tangent: constraint derivatives must vanish");
      break;
    }
    case SpaceKind::ThreeD:
      if (std::abs(mdot3(p.I3(), u.components.segment<3>(2))) > g)
        throw DomainError("tangent: I.dI must vanish");
      break;
    case SpaceKind::Anyon:
      break;
  }
}

PhasePoint project_to_constraints(const PhasePoint& p) {
  PhasePoint out = p;
  switch (p.space.kind) {
    case SpaceKind::SpinSphere:
      out.coords.segment<3>(0).normalize();
      break;
    case SpaceKind::FreeRel: {
      Vec4 I = p.I4();
      out.coords.segment<4>(3) = I / std::sqrt(minkowski_dot(I, I));
      break;
    }
    case SpaceKind::MassiveSpin: {
      Vec4 I = p.I4();
      I /= std::sqrt(minkowski_dot(I, I));
      Vec4 J = p.J4();
      J -= minkowski_dot(I, J) * I;
      J /= std::sqrt(-minkowski_dot(J, J));
      out.coords.segment<4>(3) = I;
      out.coords.segment<4>(7) = J;
      break;
    }
    case SpaceKind::Massless: {
      Vec4 I = p.I4();
      I(0) = I.tail<3>().norm();
      Vec4 J = p.J4();
      const double ji = minkowski_dot(J, I);
      J += (-minkowski_dot(J, J) / (2.0 * ji)) * I;
      J /= -minkowski_dot(I, J);
      out.coords.segment<4>(4) = I;
      out.coords.segment<4>(8) = J;
      break;
    }
    case SpaceKind::ThreeD: {
      Eigen::Vector3d I = p.I3();
      out.coords.segment<3>(2) = I / std::sqrt(mdot3(I, I));
      break;
    }
    case SpaceKind::Anyon:
      break;
  }
  return out;
}

TangentVector project_tangent(const PhasePoint& p, const Eigen::VectorXd& raw) {
  if (raw.size() != p.coords.size())
    throw DomainError("project_tangent: wrong component count");
  Eigen::VectorXd c = raw;
  switch (p.space.kind) {
    case SpaceKind::SpinSphere: {
      const Vec3 x = p.x3();
      c.segment<3>(0) -= x.dot(c.segment<3>(0)) * x;
      break;
    }
    case SpaceKind::FreeRel: {
      const Vec4 I = p.I4();
      c.segment<4>(3) -= minkowski_dot(I, c.segment<4>(3)) * I;
      break;
    }
    case SpaceKind::MassiveSpin: {
      const Vec4 I = p.I4(), J = p.J4();
      Vec4 dI = c.segment<4>(3);
      dI -= minkowski_dot(I, dI) * I;
      Vec4 dJ = c.segment<4>(7);
      dJ += minkowski_dot(J, dJ) * J;
      dJ -= (minkowski_dot(I, dJ) + minkowski_dot(dI, J)) * I;
      c.segment<4>(3) = dI;
      c.segment<4>(7) = dJ;
      break;
    }
    case SpaceKind::Massless: {
      const Vec4 I = p.I4(), J = p.J4();
      Vec4 dI = c.segment<4>(4);
      dI += minkowski_dot(I, dI) * J;
      Vec4 dJ = c.segment<4>(8);
      dJ += minkowski_dot(J, dJ) * I;
      dJ += (minkowski_dot(I, dJ) + minkowski_dot(dI, J)) * J;
      c.segment<4>(4) = dI;
      c.segment<4>(8) = dJ;
      break;
    }
    case SpaceKind::ThreeD: {
      const Eigen::Vector3d I = p.I3();
      Eigen::Vector3d dI = c.segment<3>(2);
      dI -= mdot3(I, dI) * I;
      c.segment<3>(2) = dI;
      break;
    }
    case SpaceKind::Anyon:
      break;
  }
  return TangentVector{p, c};
}

double chart_distance(const PhasePoint& a, const PhasePoint& b) {
  if (!(a.space == b.space))
    throw DomainError("chart_distance: points from different spaces");
  if (a.space.kind == SpaceKind::Anyon) {
    const Eigen::Vector2d pa = cover_to_plane(a.cover());
    const Eigen::Vector2d pb = cover_to_plane(b.cover());
    return std::sqrt((pa - pb).squaredNorm() + (a.I2() - b.I2()).squaredNorm());
  }
  return (a.coords - b.coords).norm();
}

Eigen::Vector2d cover_to_plane(const Eigen::Vector2d& cover) {
  const double r = std::exp(cover(1));
  return Eigen::Vector2d(r * std::cos(kTwoPi * cover(0)),
                         r * std::sin(kTwoPi * cover(0)));
}

// ---------------------------------------------------------------------------
// Symplectic evaluation
// ---------------------------------------------------------------------------

namespace {

// Evaluation without tangency validation, shared with the finite-difference
// estimators whose chords are only approximately tangent.
double symplectic_raw(const PhasePoint& p, const Eigen::VectorXd& u,
                      const Eigen::VectorXd& v) {
  const PhaseSpaceId& sp = p.space;
  switch (sp.kind) {
    case SpaceKind::SpinSphere: {
      const Vec3 a = u.segment<3>(0), b = v.segment<3>(0);
      return sp.spin * p.x3().dot(a.cross(b));
    }
    case SpaceKind::FreeRel: {
      // m dx^mu ^ dI_mu on the x^0 = 0 slice
      const Vec3 xu = u.segment<3>(0), xv = v.segment<3>(0);
      const Vec3 Iu = u.segment<3>(4), Iv = v.segment<3>(4);
      return sp.mass * (xv.dot(Iu) - xu.dot(Iv));
    }
    case SpaceKind::MassiveSpin: {
      const Vec3 xu = u.segment<3>(0), xv = v.segment<3>(0);
      const Vec4 Iu = u.segment<4>(3), Iv = v.segment<4>(3);
      const Vec4 Ju = u.segment<4>(7), Jv = v.segment<4>(7);
      double val = sp.mass * (xv.dot(Iu.tail<3>()) - xu.dot(Iv.tail<3>()));
      val += sp.spin * (epsilon4_contract(p.I4(), p.J4(), Iu, Iv) -
                        epsilon4_contract(p.I4(), p.J4(), Ju, Jv));
      return val;
    }
    case SpaceKind::Massless: {
      const Vec4 xu = u.segment<4>(0), xv = v.segment<4>(0);
      const Vec4 Iu = u.segment<4>(4), Iv = v.segment<4>(4);
      const Vec4 Ju = u.segment<4>(8), Jv = v.segment<4>(8);
      const double chi_s = sp.helicity * sp.spin;
      double val = -chi_s * (epsilon4_contract(p.I4(), p.J4(), Iu, Jv) -
                             epsilon4_contract(p.I4(), p.J4(), Iv, Ju));
      val += minkowski_dot(xu, Iv) - minkowski_dot(xv, Iu);
      return val;
    }
    case SpaceKind::ThreeD: {
      const Eigen::Vector2d xu = u.segment<2>(0), xv = v.segment<2>(0);
      const Eigen::Vector3d Iu = u.segment<3>(2), Iv = v.segment<3>(2);
      double val = sp.mass * (xv.dot(Iu.tail<2>()) - xu.dot(Iv.tail<2>()));
      Eigen::Matrix3d m;
      m.col(0) = p.I3();
      m.col(1) = Iu;
      m.col(2) = Iv;
      val += 2.0 * sp.spin * sp.mass * m.determinant();
      return val;
    }
    case SpaceKind::Anyon: {
      // dx ^ dI in plane coordinates, unit mass; tangents arrive in the
      // cover chart and are pushed through the chart Jacobian.
      const Eigen::Vector2d x = cover_to_plane(p.cover());
      const Eigen::Vector2d du = Eigen::Vector2d(-x(1), x(0)) * kTwoPi;
      const Eigen::Vector2d dv = x;
      const Eigen::Vector2d xu = u(0) * du + u(1) * dv;
      const Eigen::Vector2d xv = v(0) * du + v(1) * dv;
      const Eigen::Vector2d Iu = u.segment<2>(2), Iv = v.segment<2>(2);
      return xv.dot(Iu) - xu.dot(Iv);
    }
  }
  return 0.0;
}

}  // namespace

double symplectic_eval(const PhasePoint& p, const TangentVector& u,
                       const TangentVector& v, const Tolerances& tol) {
  if (chart_distance(u.base, p) > tol.geom * 100 ||
      chart_distance(v.base, p) > tol.geom * 100)
    throw DomainError("symplectic_eval: tangent base points must match p");
  validate_tangent(u, tol);
  validate_tangent(v, tol);
  return symplectic_raw(p, u.components, v.components);
}

TangentVector null_directions_massless(const PhasePoint& p, const Vec4& a,
                                       const Tolerances& tol) {
  if (p.space.kind != SpaceKind::Massless)
    throw DomainError("null_directions_massless: point must be massless");
  validate_point(p, tol);
  const Vec4 I = p.I4(), J = p.J4();
  if (std::abs(minkowski_dot(a, I)) > tol.geom * 100)
    throw DomainError("null_directions_massless: a.I must vanish");

  static const Vec4 eta(1, -1, -1, -1);
  const Vec4 Il = eta.cwiseProduct(I);
  const Vec4 Jl = eta.cwiseProduct(J);
  const Vec4 al = eta.cwiseProduct(a);
  Vec4 dJ = Vec4::Zero();
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      for (int rho = 0; rho < 4; ++rho)
        for (int sig = 0; sig < 4; ++sig) {
          // eps^{0123} = +1: upper-index symbol is minus the lower one
          const double e = -epsilon4_lower(mu, nu, rho, sig);
          if (e != 0.0) dJ(mu) += e * Il(nu) * Jl(rho) * al(sig);
        }

  Eigen::VectorXd comp = Eigen::VectorXd::Zero(12);
  comp.segment<4>(0) = p.space.helicity * p.space.spin * a;
  comp.segment<4>(8) = dJ;
  return TangentVector{p, comp};
}

double closedness_check(const PhaseSpaceId& space, const PhasePoint& p,
                        const TangentVector& u, const TangentVector& v,
                        const TangentVector& w, const Tolerances& tol) {
  if (!(space == p.space))
    throw DomainError("closedness_check: space/point mismatch");
  validate_tangent(u, tol);
  validate_tangent(v, tol);
  validate_tangent(w, tol);

  const Eigen::VectorXd dirs[3] = {u.components, v.components, w.components};
  auto at = [&](double r, double s, double t) {
    PhasePoint q = p;
    q.coords += r * dirs[0] + s * dirs[1] + t * dirs[2];
    return project_to_constraints(q);
  };
  // d(F*Omega) on the parameter cube: no bracket terms for coordinate fields.
  auto estimate = [&](double h) {
    auto partial = [&](double r, double s, double t, int k) {
      double d[3] = {r, s, t};
      d[k] += h;
      const PhasePoint hi = at(d[0], d[1], d[2]);
      d[k] -= 2 * h;
      const PhasePoint lo = at(d[0], d[1], d[2]);
      return Eigen::VectorXd((hi.coords - lo.coords) / (2 * h));
    };
    auto term = [&](int k, int a, int b) {
      double hi_c[3] = {0, 0, 0}, lo_c[3] = {0, 0, 0};
      hi_c[k] = h;
      lo_c[k] = -h;
      const PhasePoint p_hi = at(hi_c[0], hi_c[1], hi_c[2]);
      const PhasePoint p_lo = at(lo_c[0], lo_c[1], lo_c[2]);
      const double f_hi =
          symplectic_raw(p_hi, partial(hi_c[0], hi_c[1], hi_c[2], a),
                         partial(hi_c[0], hi_c[1], hi_c[2], b));
      const double f_lo =
          symplectic_raw(p_lo, partial(lo_c[0], lo_c[1], lo_c[2], a),
                         partial(lo_c[0], lo_c[1], lo_c[2], b));
      return (f_hi - f_lo) / (2 * h);
    };
    return term(0, 1, 2) - term(1, 0, 2) + term(2, 0, 1);
  };
  const double coarse = estimate(tol.fd_step);
  const double fine = estimate(0.5 * tol.fd_step);
  return (4.0 * fine - coarse) / 3.0;
}

// ---------------------------------------------------------------------------
// Group actions
// ---------------------------------------------------------------------------

void validate_so21(const Eigen::Matrix3d& m, const Tolerances& tol) {
  static const Eigen::Matrix3d eta = Eigen::Vector3d(1, -1, -1).asDiagonal();
  if (!(m.transpose() * eta * m).isApprox(eta, tol.alg * 100))
    throw DomainError("so21: Lambda^T eta Lambda must equal eta");
  if (m(0, 0) < 0 || m.determinant() < 0)
    throw DomainError("so21: must be proper orthochronous");
}

Eigen::Matrix3d so21_boost(const Eigen::Vector2d& dir, double rapidity) {
  if (std::abs(dir.norm() - 1.0) > 1e-9)
    throw DomainError("so21_boost: direction must be unit");
  const double ch = std::cosh(rapidity), sh = std::sinh(rapidity);
  Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
  m(0, 0) = ch;
  for (int i = 0; i < 2; ++i) {
    m(0, i + 1) = sh * dir(i);
    m(i + 1, 0) = sh * dir(i);
    for (int j = 0; j < 2; ++j) m(i + 1, j + 1) += (ch - 1) * dir(i) * dir(j);
  }
  return m;
}

Eigen::Matrix3d so21_rotation(double angle) {
  Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
  const double c = std::cos(angle), s = std::sin(angle);
  m(1, 1) = c;
  m(1, 2) = -s;
  m(2, 1) = s;
  m(2, 2) = c;
  return m;
}

namespace {

// Restores the x^0 = 0 slice by sliding along I; the shift is symplectically
// invisible because I.dI = 0 and eta is antisymmetric under the wedge.
Vec3 reslice(const Vec4& y, const Vec4& I) {
  const Vec4 shifted = y - (y(0) / I(0)) * I;
  return shifted.tail<3>();
}

Eigen::Vector2d reslice3(const Eigen::Vector3d& y, const Eigen::Vector3d& I) {
  const Eigen::Vector3d shifted = y - (y(0) / I(0)) * I;
  return shifted.tail<2>();
}

PhasePoint apply_poincare4(const PhasePoint& p, const LorentzElement& L,
                           const Vec4& C) {
  PhasePoint out = p;
  switch (p.space.kind) {
    case SpaceKind::FreeRel: {
      const Vec4 I = L.apply(p.I4());
      Vec4 xh(0, p.coords(0), p.coords(1), p.coords(2));
      out.coords.segment<3>(0) = reslice(L.apply(xh) + C, I);
      out.coords.segment<4>(3) = I;
      return out;
    }
    case SpaceKind::MassiveSpin: {
      const Vec4 I = L.apply(p.I4());
      Vec4 xh(0, p.coords(0), p.coords(1), p.coords(2));
      out.coords.segment<3>(0) = reslice(L.apply(xh) + C, I);
      out.coords.segment<4>(3) = I;
      out.coords.segment<4>(7) = L.apply(p.J4());
      return out;
    }
    case SpaceKind::Massless:
      out.coords.segment<4>(0) = L.apply(p.x4()) + C;
      out.coords.segment<4>(4) = L.apply(p.I4());
      out.coords.segment<4>(8) = L.apply(p.J4());
      return out;
    default:
      throw UnsupportedError("Poincare action: unsupported space");
  }
}

}  // namespace

PhasePoint apply_group(const PhasePoint& p, const GroupElement& g,
                       const Tolerances& tol) {
  (void)tol;
  switch (p.space.kind) {
    case SpaceKind::SpinSphere: {
      if (const auto* a = std::get_if<SU2Element>(&g)) {
        PhasePoint out = p;
        out.coords.segment<3>(0) = su2_to_so3(*a).apply(p.x3());
        return out;
      }
      throw UnsupportedError("SpinSphere: group element must be SU(2)");
    }
    case SpaceKind::FreeRel:
    case SpaceKind::MassiveSpin:
    case SpaceKind::Massless: {
      if (const auto* pe = std::get_if<Poincare4>(&g))
        return apply_poincare4(p, pe->lorentz, pe->translation);
      if (const auto* spe = std::get_if<SpinPoincare4>(&g))
        return apply_poincare4(p, sl2c_to_lorentz(spe->a), spe->translation);
      if (const auto* a = std::get_if<SL2CElement>(&g))
        return apply_poincare4(p, sl2c_to_lorentz(*a), Vec4::Zero());
      if (const auto* a = std::get_if<SU2Element>(&g))
        return apply_poincare4(p, sl2c_to_lorentz(SL2CElement::from_su2(*a)),
                               Vec4::Zero());
      throw UnsupportedError("relativistic spaces take Poincare elements");
    }
    case SpaceKind::ThreeD: {
      if (const auto* pe = std::get_if<Poincare3>(&g)) {
        validate_so21(pe->lorentz);
        PhasePoint out = p;
        const Eigen::Vector3d I = pe->lorentz * p.I3();
        Eigen::Vector3d xh(0, p.coords(0), p.coords(1));
        out.coords.segment<2>(0) =
            reslice3(pe->lorentz * xh + pe->translation, I);
        out.coords.segment<3>(2) = I;
        return out;
      }
      throw UnsupportedError("ThreeD: group element must be SO(2,1) x R^3");
    }
    case SpaceKind::Anyon: {
      PhasePoint out = p;
      if (const auto* rot = std::get_if<PlaneRotation>(&g)) {
        out.coords(0) += rot->angle / kTwoPi;
        const double c = std::cos(rot->angle), s = std::sin(rot->angle);
        Eigen::Matrix2d R;
        R << c, -s, s, c;
        out.coords.segment<2>(2) = R * p.I2();
        return out;
      }
      if (const auto* deck = std::get_if<DeckTranslation>(&g)) {
        out.coords(0) += deck->winding;
        return out;
      }
      throw UnsupportedError("Anyon: group element must be rotation or deck");
    }
  }
  throw UnsupportedError("apply_group: unknown space");
}

TangentVector push_tangent(const TangentVector& u, const GroupElement& g,
                           const Tolerances& tol) {
  const double h = 1e-6;
  PhasePoint hi = u.base;
  hi.coords += h * u.components;
  PhasePoint lo = u.base;
  lo.coords -= h * u.components;
  const PhasePoint ghi = apply_group(project_to_constraints(hi), g, tol);
  const PhasePoint glo = apply_group(project_to_constraints(lo), g, tol);
  const PhasePoint gp = apply_group(u.base, g, tol);
  TangentVector out{gp, (ghi.coords - glo.coords) / (2 * h)};
  return project_tangent(gp, out.components);
}

}  // namespace prequant
