#include "prequant/bundle.hpp"

#include <cmath>
#include <functional>

namespace prequant {

namespace {
constexpr double kTwoPi = 6.283185307179586476925287;

double wrap_angle(double a) {
  double w = std::fmod(a, kTwoPi);
  if (w < 0) w += kTwoPi;
  if (w >= kTwoPi) w -= kTwoPi;
  return w;
}

double angle_distance(double a, double b) {
  const double d = wrap_angle(a - b);
  return std::min(d, kTwoPi - d);
}
}  // namespace

std::string to_string(BundleFlavor f) {
  switch (f) {
    case BundleFlavor::HopfN: return "hopf";
    case BundleFlavor::DiracBundle: return "dirac";
    case BundleFlavor::TrivialU1: return "trivial-u1";
    case BundleFlavor::AnyonBundle: return "anyon";
  }
  return "?";
}

BundleId BundleId::hopf(int n) {
  if (n < 0) throw DomainError("Hopf_n: n must be nonnegative");
  BundleId b;
  b.flavor = BundleFlavor::HopfN;
  b.n = n;
  b.base = PhaseSpaceId::spin_sphere(n / 2.0);
  return b;
}

BundleId BundleId::dirac(int n, double mass_unit) {
  if (n < 1) throw DomainError("DiracBundle: n must be at least 1");
  if (mass_unit <= 0) throw DomainError("DiracBundle: mass unit must be > 0");
  BundleId b;
  b.flavor = BundleFlavor::DiracBundle;
  b.n = n;
  b.mass_unit = mass_unit;
  b.base = PhaseSpaceId::massive_spin(n * mass_unit, n / 2.0);
  return b;
}

BundleId BundleId::trivial_u1(const PhaseSpaceId& base) {
  if (base.kind != SpaceKind::FreeRel && base.kind != SpaceKind::ThreeD)
    throw DomainError("TrivialU1: base must be FreeRel or ThreeD");
  BundleId b;
  b.flavor = BundleFlavor::TrivialU1;
  b.n = 1;
  b.base = base;
  return b;
}

BundleId BundleId::anyon(double alpha) {
  BundleId b;
  b.flavor = BundleFlavor::AnyonBundle;
  b.n = 1;
  b.base = PhaseSpaceId::anyon(alpha);
  return b;
}

bool BundleId::operator==(const BundleId& o) const {
  return flavor == o.flavor && n == o.n && mass_unit == o.mass_unit &&
         base == o.base;
}

// ---------------------------------------------------------------------------
// BundlePoint
// ---------------------------------------------------------------------------

BundlePoint::BundlePoint(BundleId bundle, Rep rep)
    : bundle_(std::move(bundle)), rep_(std::move(rep)) {
  switch (bundle_.flavor) {
    case BundleFlavor::HopfN:
      if (bundle_.n >= 1) {
        if (!std::holds_alternative<HopfRep>(rep_))
          throw DomainError("Hopf_n point needs a spinor representative");
      } else if (!std::holds_alternative<FlatSphereRep>(rep_)) {
        throw DomainError("Hopf_0 point needs (x, phase)");
      }
      break;
    case BundleFlavor::DiracBundle:
      if (!std::holds_alternative<DiracRep>(rep_))
        throw DomainError("Dirac point needs (x, psi)");
      break;
    case BundleFlavor::TrivialU1: {
      if (!std::holds_alternative<TrivialRep>(rep_))
        throw DomainError("TrivialU1 point needs (base point, phase)");
      const auto& t = std::get<TrivialRep>(rep_);
      if (!(t.base.space == bundle_.base))
        throw DomainError("TrivialU1 point: base space mismatch");
      validate_point(t.base);
      break;
    }
    case BundleFlavor::AnyonBundle:
      if (!std::holds_alternative<AnyonRep>(rep_))
        throw DomainError("Anyon point needs cover coordinates");
      break;
  }
  if (const auto* f = std::get_if<FlatSphereRep>(&rep_)) {
    if (std::abs(f->x.norm() - 1.0) > 1e-9)
      throw DomainError("Hopf_0 point: |x| must be 1");
  }
}

const HopfRep& BundlePoint::hopf() const {
  if (const auto* r = std::get_if<HopfRep>(&rep_)) return *r;
  throw DomainError("not a Hopf spinor representative");
}
const FlatSphereRep& BundlePoint::flat_sphere() const {
  if (const auto* r = std::get_if<FlatSphereRep>(&rep_)) return *r;
  throw DomainError("not a flat sphere representative");
}
const DiracRep& BundlePoint::dirac() const {
  if (const auto* r = std::get_if<DiracRep>(&rep_)) return *r;
  throw DomainError("not a Dirac representative");
}
const TrivialRep& BundlePoint::trivial() const {
  if (const auto* r = std::get_if<TrivialRep>(&rep_)) return *r;
  throw DomainError("not a trivial-bundle representative");
}
const AnyonRep& BundlePoint::anyon() const {
  if (const auto* r = std::get_if<AnyonRep>(&rep_)) return *r;
  throw DomainError("not an anyon representative");
}

double BundlePoint::phase_angle() const {
  if (const auto* f = std::get_if<FlatSphereRep>(&rep_)) return f->phi;
  if (const auto* t = std::get_if<TrivialRep>(&rep_)) return t->phi;
  if (const auto* a = std::get_if<AnyonRep>(&rep_))
    return a->phi + a->deck * bundle_.alpha();
  throw DomainError("this representative has no explicit phase coordinate");
}

BundlePoint hopf_point(int n, const Spinor2& xi) {
  return BundlePoint(BundleId::hopf(n), HopfRep{xi});
}

BundlePoint hopf0_point(const Vec3& x, double phi) {
  return BundlePoint(BundleId::hopf(0), FlatSphereRep{x, phi});
}

BundlePoint dirac_point(const BundleId& b, const Vec3& x,
                        const DiracSpinor& psi) {
  if (b.flavor != BundleFlavor::DiracBundle)
    throw DomainError("dirac_point: bundle is not a Dirac bundle");
  return BundlePoint(b, DiracRep{x, psi});
}

BundlePoint trivial_point(const BundleId& b, const PhasePoint& base,
                          double phi) {
  return BundlePoint(b, TrivialRep{base, phi});
}

BundlePoint anyon_bundle_point(const BundleId& b, const Eigen::Vector2d& cover,
                               const Eigen::Vector2d& momentum, double phi,
                               int deck) {
  if (b.flavor != BundleFlavor::AnyonBundle)
    throw DomainError("anyon_bundle_point: bundle is not an anyon bundle");
  return BundlePoint(b, AnyonRep{cover, momentum, phi, deck});
}

// ---------------------------------------------------------------------------
// Projections
// ---------------------------------------------------------------------------

Vec3 hopf_project(const Spinor2& xi) {
  const Vec2c& z = xi.components();
  const complexd cross = std::conj(z(0)) * z(1);
  return Vec3(2.0 * cross.real(), 2.0 * cross.imag(),
              std::norm(z(0)) - std::norm(z(1)));
}

std::pair<Vec4, Vec4> dirac_observables(const DiracSpinor& psi) {
  Vec4 I, J;
  const Vec4c& p = psi.components();
  for (int mu = 0; mu < 4; ++mu) {
    I(mu) = psi.dirac_pairing(gamma_mu(mu) * p).real();
    J(mu) = psi.dirac_pairing(gamma_mu(mu) * gamma5() * p).real();
  }
  return {I, J};
}

PhasePoint dirac_project(const Vec3& x, const DiracSpinor& psi, double mass,
                         double spin, const Tolerances& tol) {
  const auto [I, J] = dirac_observables(psi);
  return massive_point(mass, spin, x, I, J, tol);
}

PhasePoint bundle_project(const BundlePoint& p) {
  const BundleId& b = p.bundle();
  switch (b.flavor) {
    case BundleFlavor::HopfN:
      if (b.n >= 1) return sphere_point(b.n / 2.0, hopf_project(p.hopf().xi));
      return sphere_point(0.0, p.flat_sphere().x);
    case BundleFlavor::DiracBundle:
      return dirac_project(p.dirac().x, p.dirac().psi, b.m_prime(),
                           b.n / 2.0);
    case BundleFlavor::TrivialU1:
      return p.trivial().base;
    case BundleFlavor::AnyonBundle:
      return anyon_point(b.alpha(), p.anyon().cover, p.anyon().momentum);
  }
  throw UnsupportedError("bundle_project: unknown flavor");
}

// ---------------------------------------------------------------------------
// Sections
// ---------------------------------------------------------------------------

Spinor2 hopf_local_section(const Vec3& x, const Vec3& pole) {
  const SU2Element R = su2_rotation_between(Vec3(0, 0, 1), pole.normalized());
  const Vec3 xp = su2_to_so3(R.inverse()).apply(x.normalized());
  const double theta = std::acos(std::clamp(xp(2), -1.0, 1.0));
  const double phi = std::atan2(xp(1), xp(0));
  const Vec2c std_spinor(std::cos(theta / 2),
                         std::exp(complexd(0, phi)) * std::sin(theta / 2));
  return Spinor2(Vec2c(R.matrix() * std_spinor));
}

const DiracSpinor& dirac_rest_spinor() {
  static const DiracSpinor psi0(
      Vec4c(1 / std::sqrt(2.0), 0, 1 / std::sqrt(2.0), 0));
  return psi0;
}

DiracSpinor dirac_section(const Vec4& I, const Vec4& J) {
  const SL2CElement B = SL2CElement::boost_from_rest(I);
  const Vec4 j_rest = sl2c_to_lorentz(B.inverse()).apply(J);
  const SL2CElement R = SL2CElement::from_su2(
      su2_rotation_between(Vec3(0, 0, 1), j_rest.tail<3>().normalized()));
  return DiracSpinor((B * R).apply_dirac(dirac_rest_spinor().components()));
}

// ---------------------------------------------------------------------------
// Connection
// ---------------------------------------------------------------------------

namespace {

// Value of the connection form without tangency validation; finite-difference
// callers feed chords that are tangent only to truncation order.
double connection_value(const BundlePoint& p, const BundleTangent& w) {
  const BundleId& b = p.bundle();
  switch (b.flavor) {
    case BundleFlavor::HopfN: {
      if (b.n == 0) return std::get<FlatSphereTangent>(w.comp).dphi;
      const auto& t = std::get<HopfTangent>(w.comp);
      return b.n * p.hopf().xi.components().dot(t.dxi).imag();
    }
    case BundleFlavor::DiracBundle: {
      const auto& t = std::get<DiracTangent>(w.comp);
      const DiracSpinor& psi = p.dirac().psi;
      double val = b.n * psi.dirac_pairing(t.dpsi).imag();
      const auto [I, J] = dirac_observables(psi);
      val += b.m_prime() * I.tail<3>().dot(t.dx);
      return val;
    }
    case BundleFlavor::TrivialU1: {
      const auto& t = std::get<TrivialTangent>(w.comp);
      const PhasePoint& base = p.trivial().base;
      double val = t.dphi;
      if (base.space.kind == SpaceKind::FreeRel) {
        val += base.space.mass *
               base.I4().tail<3>().dot(t.dbase.segment<3>(0));
      } else {  // ThreeD: p.dx plus the hyperboloid potential of the spin term
        const Eigen::Vector3d I = base.I3();
        val += base.space.mass * I.tail<2>().dot(t.dbase.segment<2>(0));
        const Eigen::Vector3d dI = t.dbase.segment<3>(2);
        val += 2.0 * base.space.spin * base.space.mass *
               (I(1) * dI(2) - I(2) * dI(1)) / (1.0 + I(0));
      }
      return val;
    }
    case BundleFlavor::AnyonBundle:
      return std::get<AnyonTangent>(w.comp).dphi;
  }
  throw UnsupportedError("connection_value: unknown flavor");
}

void validate_bundle_tangent(const BundlePoint& p, const BundleTangent& w,
                             const Tolerances& tol) {
  const double g = tol.geom * 10;
  switch (p.bundle().flavor) {
    case BundleFlavor::HopfN: {
      if (p.bundle().n == 0) {
        const auto& t = std::get<FlatSphereTangent>(w.comp);
        if (std::abs(p.flat_sphere().x.dot(t.dx)) > g)
          throw DomainError("tangent: x.dx must vanish");
        return;
      }
      const auto& t = std::get<HopfTangent>(w.comp);
      if (std::abs(p.hopf().xi.components().dot(t.dxi).real()) > g)
        throw DomainError("tangent: Re<xi, dxi> must vanish");
      return;
    }
    case BundleFlavor::DiracBundle: {
      const auto& t = std::get<DiracTangent>(w.comp);
      const Vec4c& psi = p.dirac().psi.components();
      const complexd c =
          t.dpsi.head<2>().dot(psi.tail<2>()) + psi.head<2>().dot(t.dpsi.tail<2>());
      if (std::abs(c) > g)
        throw DomainError("tangent: Dirac constraint derivatives must vanish");
      return;
    }
    case BundleFlavor::TrivialU1: {
      const auto& t = std::get<TrivialTangent>(w.comp);
      validate_tangent(TangentVector{p.trivial().base, t.dbase}, tol);
      return;
    }
    case BundleFlavor::AnyonBundle:
      return;
  }
}

}  // namespace

double connection_eval(const BundlePoint& p, const BundleTangent& w,
                       const Tolerances& tol) {
  validate_bundle_tangent(p, w, tol);
  return connection_value(p, w);
}

double connection_eval_raw(const BundlePoint& p, const BundleTangent& w) {
  return connection_value(p, w);
}

// ---------------------------------------------------------------------------
// Curvature
// ---------------------------------------------------------------------------

std::pair<double, double> curvature_matches_symplectic(const BundlePoint& p,
                                                       const TangentVector& u,
                                                       const TangentVector& v,
                                                       const Tolerances& tol) {
  const BundleId& b = p.bundle();
  if (b.flavor == BundleFlavor::AnyonBundle)
    throw UnsupportedError(
        "anyon bundle connection is flat; no curvature comparison");
  const PhasePoint base = bundle_project(p);
  if (chart_distance(u.base, base) > tol.geom * 1000 ||
      chart_distance(v.base, base) > tol.geom * 1000)
    throw DomainError("curvature: tangents must live at the projection of xi");

  // A smooth local section through the fiber over the displaced base points.
  std::function<BundlePoint(const PhasePoint&)> section;
  switch (b.flavor) {
    case BundleFlavor::HopfN:
      if (b.n == 0) {
        section = [&b](const PhasePoint& y) {
          return hopf0_point(y.x3(), 0.0);
        };
      } else {
        const Vec3 pole = base.x3();
        section = [&b, pole](const PhasePoint& y) {
          return hopf_point(b.n, hopf_local_section(y.x3(), pole));
        };
      }
      break;
    case BundleFlavor::DiracBundle:
      section = [&b](const PhasePoint& y) {
        return dirac_point(b, y.x3(), dirac_section(y.I4(), y.J4()));
      };
      break;
    case BundleFlavor::TrivialU1:
      section = [&b](const PhasePoint& y) { return trivial_point(b, y, 0.0); };
      break;
    default:
      throw UnsupportedError("curvature: unsupported flavor");
  }

  const double h = tol.fd_step;
  const Eigen::VectorXd& du = u.components;
  const Eigen::VectorXd& dv = v.components;
  auto surface = [&](double r, double s) {
    PhasePoint q = base;
    q.coords += r * du + s * dv;
    return project_to_constraints(q);
  };
  // (sigma^* omega) evaluated on the chord of the section along direction k.
  auto omega_along = [&](double r, double s, int k) {
    const PhasePoint y = surface(r, s);
    const PhasePoint y_hi = surface(r + (k == 0 ? h : 0), s + (k == 1 ? h : 0));
    const PhasePoint y_lo = surface(r - (k == 0 ? h : 0), s - (k == 1 ? h : 0));
    const BundlePoint s_mid = section(y);
    const BundlePoint s_hi = section(y_hi);
    const BundlePoint s_lo = section(y_lo);
    BundleTangent w;
    switch (b.flavor) {
      case BundleFlavor::HopfN:
        if (b.n == 0) {
          w.comp = FlatSphereTangent{
              (s_hi.flat_sphere().x - s_lo.flat_sphere().x) / (2 * h), 0.0};
        } else {
          w.comp = HopfTangent{(s_hi.hopf().xi.components() -
                                s_lo.hopf().xi.components()) /
                               (2 * h)};
        }
        break;
      case BundleFlavor::DiracBundle:
        w.comp = DiracTangent{(s_hi.dirac().x - s_lo.dirac().x) / (2 * h),
                              (s_hi.dirac().psi.components() -
                               s_lo.dirac().psi.components()) /
                                  (2 * h)};
        break;
      case BundleFlavor::TrivialU1:
        w.comp = TrivialTangent{
            (s_hi.trivial().base.coords - s_lo.trivial().base.coords) / (2 * h),
            0.0};
        break;
      default:
        throw UnsupportedError("curvature: unsupported flavor");
    }
    return connection_value(s_mid, w);
  };

  const double d_r = (omega_along(h, 0, 1) - omega_along(-h, 0, 1)) / (2 * h);
  const double d_s = (omega_along(0, h, 0) - omega_along(0, -h, 0)) / (2 * h);
  const double fd_curvature = d_r - d_s;

  const double sym = symplectic_eval(
      base, project_tangent(base, du), project_tangent(base, dv), tol);
  return {fd_curvature, sym};
}

// ---------------------------------------------------------------------------
// Quotient arithmetic
// ---------------------------------------------------------------------------

namespace {

// Tolerance-aware lexicographic order on interleaved (re, im) pairs.
bool lex_less(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b,
              double eps = 1e-12) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double dre = a(i).real() - b(i).real();
    if (std::abs(dre) > eps) return dre < 0;
    const double dim = a(i).imag() - b(i).imag();
    if (std::abs(dim) > eps) return dim < 0;
  }
  return false;
}

Eigen::VectorXcd znq_min_member(const Eigen::VectorXcd& z, int n) {
  Eigen::VectorXcd best = z;
  for (int r = 1; r < n; ++r) {
    const complexd ph = std::exp(complexd(0, kTwoPi * r / n));
    Eigen::VectorXcd cand = ph * z;
    if (lex_less(cand, best)) best = cand;
  }
  return best;
}

// Phase rotation making the first component with modulus > 1e-6 real
// positive; returns the applied unit phase.
complexd anchor_phase(const Eigen::VectorXcd& z) {
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    if (std::abs(z(i)) > 1e-6)
      return std::conj(z(i)) / std::abs(z(i));
  }
  throw DomainError("anchor_phase: all components vanish");
}

}  // namespace

BundlePoint znq_canonicalize(const BundlePoint& p) {
  const BundleId& b = p.bundle();
  switch (b.flavor) {
    case BundleFlavor::HopfN: {
      if (b.n == 0)
        throw DomainError("znq_canonicalize: Hopf_0 has no Z_n structure");
      const Eigen::VectorXcd z = p.hopf().xi.components();
      const Eigen::VectorXcd best = znq_min_member(z, b.n);
      return hopf_point(b.n, Spinor2(Vec2c(best)));
    }
    case BundleFlavor::DiracBundle: {
      const Eigen::VectorXcd z = p.dirac().psi.components();
      const Eigen::VectorXcd best = znq_min_member(z, b.n);
      return dirac_point(b, p.dirac().x, DiracSpinor(Vec4c(best)));
    }
    case BundleFlavor::TrivialU1: {
      TrivialRep r = p.trivial();
      r.phi = wrap_angle(r.phi);
      return BundlePoint(b, r);
    }
    case BundleFlavor::AnyonBundle: {
      // Identification (u, theta) ~ (u + k, theta - k alpha): folding the
      // window adds +K alpha to the canonical phase.
      AnyonRep r = p.anyon();
      const int K = static_cast<int>(std::floor(r.cover(0)));
      r.cover(0) -= K;
      r.deck += K;
      r.phi = wrap_angle(r.phi + r.deck * b.alpha());
      r.deck = 0;
      return BundlePoint(b, r);
    }
  }
  throw UnsupportedError("znq_canonicalize: unknown flavor");
}

bool bundle_point_equal(const BundlePoint& a, const BundlePoint& b,
                        const Tolerances& tol) {
  if (!(a.bundle() == b.bundle())) return false;
  const double eps = tol.geom * 100;
  const BundleId& id = a.bundle();
  switch (id.flavor) {
    case BundleFlavor::HopfN: {
      if (id.n == 0) {
        return (a.flat_sphere().x - b.flat_sphere().x).norm() <= eps &&
               angle_distance(a.flat_sphere().phi, b.flat_sphere().phi) <= eps;
      }
      const BundlePoint ca = znq_canonicalize(a), cb = znq_canonicalize(b);
      return (ca.hopf().xi.components() - cb.hopf().xi.components()).norm() <=
             eps;
    }
    case BundleFlavor::DiracBundle: {
      const BundlePoint ca = znq_canonicalize(a), cb = znq_canonicalize(b);
      return (ca.dirac().x - cb.dirac().x).norm() <= eps &&
             (ca.dirac().psi.components() - cb.dirac().psi.components())
                     .norm() <= eps;
    }
    case BundleFlavor::TrivialU1:
      return chart_distance(a.trivial().base, b.trivial().base) <= eps &&
             angle_distance(a.trivial().phi, b.trivial().phi) <= eps;
    case BundleFlavor::AnyonBundle: {
      const BundlePoint ca = znq_canonicalize(a), cb = znq_canonicalize(b);
      return (ca.anyon().cover - cb.anyon().cover).norm() <= eps &&
             (ca.anyon().momentum - cb.anyon().momentum).norm() <= eps &&
             angle_distance(ca.anyon().phi, cb.anyon().phi) <= eps;
    }
  }
  return false;
}

PairClass::PairClass(BundlePoint f, BundlePoint s)
    : first(std::move(f)), second(std::move(s)) {
  if (!(first.bundle() == second.bundle()))
    throw DomainError("PairClass: members must share one bundle");
}

PairClass pair_canonicalize(const PairClass& p) {
  const BundleId& b = p.first.bundle();
  switch (b.flavor) {
    case BundleFlavor::HopfN: {
      if (b.n == 0) {
        const auto& f = p.first.flat_sphere();
        const auto& s = p.second.flat_sphere();
        return PairClass(hopf0_point(f.x, 0.0),
                         hopf0_point(s.x, wrap_angle(f.phi + s.phi)));
      }
      const Eigen::VectorXcd z1 = p.first.hopf().xi.components();
      const Eigen::VectorXcd z2 = p.second.hopf().xi.components();
      const complexd ph = anchor_phase(z1);
      const Eigen::VectorXcd c2 =
          znq_min_member(Eigen::VectorXcd(std::conj(ph) * z2), b.n);
      return PairClass(hopf_point(b.n, Spinor2(Vec2c(ph * z1))),
                       hopf_point(b.n, Spinor2(Vec2c(c2))));
    }
    case BundleFlavor::DiracBundle: {
      const Eigen::VectorXcd z1 = p.first.dirac().psi.components();
      const Eigen::VectorXcd z2 = p.second.dirac().psi.components();
      const complexd ph = anchor_phase(z1);
      const Eigen::VectorXcd c2 =
          znq_min_member(Eigen::VectorXcd(std::conj(ph) * z2), b.n);
      return PairClass(
          dirac_point(b, p.first.dirac().x, DiracSpinor(Vec4c(ph * z1))),
          dirac_point(b, p.second.dirac().x, DiracSpinor(Vec4c(c2))));
    }
    case BundleFlavor::TrivialU1: {
      const auto& f = p.first.trivial();
      const auto& s = p.second.trivial();
      return PairClass(trivial_point(b, f.base, 0.0),
                       trivial_point(b, s.base, wrap_angle(f.phi + s.phi)));
    }
    case BundleFlavor::AnyonBundle: {
      const BundlePoint cf = znq_canonicalize(p.first);
      const BundlePoint cs = znq_canonicalize(p.second);
      AnyonRep f = cf.anyon();
      AnyonRep s = cs.anyon();
      s.phi = wrap_angle(f.phi + s.phi);
      f.phi = 0.0;
      return PairClass(BundlePoint(b, f), BundlePoint(b, s));
    }
  }
  throw UnsupportedError("pair_canonicalize: unknown flavor");
}

bool pair_equal(const PairClass& a, const PairClass& b,
                const Tolerances& tol) {
  if (!(a.first.bundle() == b.first.bundle())) return false;
  const PairClass ca = pair_canonicalize(a);
  const PairClass cb = pair_canonicalize(b);
  const double eps = tol.geom * 100;
  const BundleId& id = ca.first.bundle();
  switch (id.flavor) {
    case BundleFlavor::HopfN: {
      if (id.n == 0)
        return (ca.first.flat_sphere().x - cb.first.flat_sphere().x).norm() <=
                   eps &&
               (ca.second.flat_sphere().x - cb.second.flat_sphere().x).norm() <=
                   eps &&
               angle_distance(ca.second.flat_sphere().phi,
                              cb.second.flat_sphere().phi) <= eps;
      return (ca.first.hopf().xi.components() -
              cb.first.hopf().xi.components())
                     .norm() <= eps &&
             (ca.second.hopf().xi.components() -
              cb.second.hopf().xi.components())
                     .norm() <= eps;
    }
    case BundleFlavor::DiracBundle:
      return (ca.first.dirac().x - cb.first.dirac().x).norm() <= eps &&
             (ca.second.dirac().x - cb.second.dirac().x).norm() <= eps &&
             (ca.first.dirac().psi.components() -
              cb.first.dirac().psi.components())
                     .norm() <= eps &&
             (ca.second.dirac().psi.components() -
              cb.second.dirac().psi.components())
                     .norm() <= eps;
    case BundleFlavor::TrivialU1:
      return chart_distance(ca.first.trivial().base,
                            cb.first.trivial().base) <= eps &&
             chart_distance(ca.second.trivial().base,
                            cb.second.trivial().base) <= eps &&
             angle_distance(ca.second.trivial().phi,
                            cb.second.trivial().phi) <= eps;
    case BundleFlavor::AnyonBundle:
      return (ca.first.anyon().cover - cb.first.anyon().cover).norm() <= eps &&
             (ca.second.anyon().cover - cb.second.anyon().cover).norm() <=
                 eps &&
             (ca.first.anyon().momentum - cb.first.anyon().momentum).norm() <=
                 eps &&
             (ca.second.anyon().momentum - cb.second.anyon().momentum)
                     .norm() <= eps &&
             angle_distance(ca.second.anyon().phi, cb.second.anyon().phi) <=
                 eps;
  }
  return false;
}

PairClass permutation_lift(const PairClass& p, int f) {
  if (f != 0 && f != 1) throw DomainError("permutation_lift: f must be 0 or 1");
  // sign (-1)^f on the moved slot
  BundlePoint moved = p.first;
  const BundleId& b = p.first.bundle();
  if (f == 1) {
    switch (b.flavor) {
      case BundleFlavor::HopfN:
        if (b.n == 0) {
          FlatSphereRep r = moved.flat_sphere();
          r.phi += 3.141592653589793238463;
          moved = BundlePoint(b, r);
        } else {
          moved = hopf_point(b.n, moved.hopf().xi.phase_multiplied(-1.0));
        }
        break;
      case BundleFlavor::DiracBundle:
        moved = dirac_point(b, moved.dirac().x,
                            moved.dirac().psi.phase_multiplied(-1.0));
        break;
      case BundleFlavor::TrivialU1: {
        TrivialRep r = moved.trivial();
        r.phi += 3.141592653589793238463;
        moved = BundlePoint(b, r);
        break;
      }
      case BundleFlavor::AnyonBundle: {
        AnyonRep r = moved.anyon();
        r.phi += 3.141592653589793238463;
        moved = BundlePoint(b, r);
        break;
      }
    }
  }
  return PairClass(p.second, moved);
}

BundlePoint lifted_group_action(const GroupElement& g, const BundlePoint& p) {
  const BundleId& b = p.bundle();
  if (const auto* ph = std::get_if<FiberPhase>(&g))
    return fiber_action(ph->theta, p);
  switch (b.flavor) {
    case BundleFlavor::HopfN: {
      const auto* a = std::get_if<SU2Element>(&g);
      if (!a) throw DomainError("Hopf bundle lifts SU(2) elements");
      if (b.n == 0) {
        FlatSphereRep r = p.flat_sphere();
        r.x = su2_to_so3(*a).apply(r.x);
        return BundlePoint(b, r);
      }
      return hopf_point(b.n, Spinor2(Vec2c(a->apply(
                                  p.hopf().xi.components()))));
    }
    case BundleFlavor::DiracBundle: {
      SL2CElement a;
      Vec4 C = Vec4::Zero();
      if (const auto* s = std::get_if<SL2CElement>(&g)) {
        a = *s;
      } else if (const auto* sp = std::get_if<SpinPoincare4>(&g)) {
        a = sp->a;
        C = sp->translation;
      } else if (const auto* su = std::get_if<SU2Element>(&g)) {
        a = SL2CElement::from_su2(*su);
      } else {
        throw DomainError("Dirac bundle lifts SL(2,C) x R^4 elements");
      }
      const DiracSpinor psi2(a.apply_dirac(p.dirac().psi.components()));
      const auto [I2, J2] = dirac_observables(psi2);
      (void)J2;
      Vec4 xh(0, p.dirac().x(0), p.dirac().x(1), p.dirac().x(2));
      const Vec4 y = sl2c_to_lorentz(a).apply(xh) + C;
      const Vec4 shifted = y - (y(0) / I2(0)) * I2;
      return dirac_point(b, shifted.tail<3>(), psi2);
    }
    case BundleFlavor::TrivialU1: {
      TrivialRep r = p.trivial();
      r.base = apply_group(r.base, g);
      return BundlePoint(b, r);
    }
    case BundleFlavor::AnyonBundle: {
      AnyonRep r = p.anyon();
      if (const auto* rot = std::get_if<PlaneRotation>(&g)) {
        r.cover(0) += rot->angle / kTwoPi;
        const double c = std::cos(rot->angle), s = std::sin(rot->angle);
        Eigen::Matrix2d R;
        R << c, -s, s, c;
        r.momentum = R * r.momentum;
        return BundlePoint(b, r);
      }
      if (const auto* deck = std::get_if<DeckTranslation>(&g)) {
        r.cover(0) += deck->winding;
        return BundlePoint(b, r);
      }
      throw DomainError("anyon bundle lifts rotations and deck elements");
    }
  }
  throw UnsupportedError("lifted_group_action: unknown flavor");
}

BundlePoint fiber_action(double theta, const BundlePoint& p) {
  const BundleId& b = p.bundle();
  switch (b.flavor) {
    case BundleFlavor::HopfN: {
      if (b.n == 0) {
        FlatSphereRep r = p.flat_sphere();
        r.phi += theta;
        return BundlePoint(b, r);
      }
      return hopf_point(
          b.n, p.hopf().xi.phase_multiplied(std::exp(complexd(0, theta / b.n))));
    }
    case BundleFlavor::DiracBundle:
      return dirac_point(b, p.dirac().x,
                         p.dirac().psi.phase_multiplied(
                             std::exp(complexd(0, theta / b.n))));
    case BundleFlavor::TrivialU1: {
      TrivialRep r = p.trivial();
      r.phi += theta;
      return BundlePoint(b, r);
    }
    case BundleFlavor::AnyonBundle: {
      AnyonRep r = p.anyon();
      r.phi += theta;
      return BundlePoint(b, r);
    }
  }
  throw UnsupportedError("fiber_action: unknown flavor");
}

complexd slot_phase(const BundlePoint& a, const BundlePoint& b,
                    const Tolerances& tol) {
  if (!(a.bundle() == b.bundle()))
    throw DomainError("slot_phase: different bundles");
  const BundleId& id = a.bundle();
  const double eps = 1e-6;
  switch (id.flavor) {
    case BundleFlavor::HopfN: {
      if (id.n == 0) {
        if ((a.flat_sphere().x - b.flat_sphere().x).norm() > eps)
          throw DomainError("slot_phase: points lie over different bases");
        return std::exp(complexd(0, b.flat_sphere().phi - a.flat_sphere().phi));
      }
      const complexd c = a.hopf().xi.inner(b.hopf().xi);
      if (std::abs(std::abs(c) - 1.0) > eps)
        throw DomainError("slot_phase: points lie over different bases");
      return c / std::abs(c);
    }
    case BundleFlavor::DiracBundle: {
      if ((a.dirac().x - b.dirac().x).norm() > eps)
        throw DomainError("slot_phase: points lie over different bases");
      const complexd c =
          a.dirac().psi.components().dot(b.dirac().psi.components());
      const double scale =
          a.dirac().psi.components().norm() * b.dirac().psi.components().norm();
      if (std::abs(std::abs(c) / scale - 1.0) > eps)
        throw DomainError("slot_phase: points lie over different bases");
      return c / std::abs(c);
    }
    case BundleFlavor::TrivialU1: {
      if (chart_distance(a.trivial().base, b.trivial().base) > eps)
        throw DomainError("slot_phase: points lie over different bases");
      return std::exp(complexd(0, b.trivial().phi - a.trivial().phi));
    }
    case BundleFlavor::AnyonBundle: {
      const BundlePoint ca = znq_canonicalize(a);
      const BundlePoint cb = znq_canonicalize(b);
      if ((ca.anyon().cover - cb.anyon().cover).norm() > eps ||
          (ca.anyon().momentum - cb.anyon().momentum).norm() > eps * 100)
        throw DomainError("slot_phase: points lie over different bases");
      return std::exp(complexd(0, cb.anyon().phi - ca.anyon().phi));
    }
  }
  (void)tol;
  throw UnsupportedError("slot_phase: unknown flavor");
}

}  // namespace prequant
