#include "prequant/holonomy.hpp"

#include <algorithm>
#include <cmath>

namespace prequant {

namespace {
constexpr double kPi = 3.141592653589793238463;
constexpr double kTwoPi = 2.0 * kPi;

Vec3 slerp(const Vec3& a, const Vec3& b, double s) {
  const double d = std::clamp(a.dot(b), -1.0, 1.0);
  const double ang = std::acos(d);
  if (ang < 1e-9) return ((1 - s) * a + s * b).normalized();
  const double sa = std::sin((1 - s) * ang), sb = std::sin(s * ang);
  return ((sa * a + sb * b) / std::sin(ang)).normalized();
}

Vec2c nlerp2(const Vec2c& a, const Vec2c& b, double s) {
  Vec2c z = (1 - s) * a + s * b;
  return z / z.norm();
}

Vec4c dirac_lerp(const Vec4c& a, const Vec4c& b, double s) {
  Vec4c z = (1 - s) * a + s * b;
  // restore <upper, lower> = 1/2 by a minimal-norm shift of the lower block
  const Vec2c u = z.head<2>();
  const complexd c = u.dot(z.tail<2>());
  z.tail<2>() += u * ((0.5 - c) / u.squaredNorm());
  return z;
}
}  // namespace

// ---------------------------------------------------------------------------
// SampledPath
// ---------------------------------------------------------------------------

SampledPath SampledPath::create(const PhaseSpaceId& space,
                                std::vector<double> t,
                                std::vector<PhasePoint> points, Interp interp,
                                const Tolerances& tol, double max_chart_step) {
  if (t.size() != points.size() || t.size() < 2)
    throw DomainError("SampledPath: need matching t/point lists, length >= 2");
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < -1e-12 || t[i] > 1 + 1e-12)
      throw DomainError("SampledPath: parameters must lie in [0, 1]");
    if (i > 0 && t[i] <= t[i - 1])
      throw DomainError("SampledPath: parameters must increase strictly");
    if (!(points[i].space == space))
      throw DomainError("SampledPath: point space mismatch");
    validate_point(points[i], tol);
    if (i > 0 && chart_distance(points[i - 1], points[i]) > max_chart_step)
      throw DomainError("SampledPath: consecutive points too far apart");
  }
  if (interp == Interp::SphereGeodesic && space.kind != SpaceKind::SpinSphere)
    throw DomainError("SampledPath: geodesic interpolation needs the sphere");
  SampledPath p;
  p.space = space;
  p.t = std::move(t);
  p.points = std::move(points);
  p.interp = interp;
  return p;
}

bool SampledPath::closed(const Tolerances& tol) const {
  return chart_distance(points.front(), points.back()) <= tol.geom * 100;
}

PhasePoint SampledPath::at(double s) const {
  if (s <= t.front()) return points.front();
  if (s >= t.back()) return points.back();
  const auto it = std::upper_bound(t.begin(), t.end(), s);
  const std::size_t k = static_cast<std::size_t>(it - t.begin()) - 1;
  const double lam = (s - t[k]) / (t[k + 1] - t[k]);
  const PhasePoint& a = points[k];
  const PhasePoint& b = points[k + 1];
  if (interp == Interp::SphereGeodesic) {
    PhasePoint out = a;
    out.coords = slerp(a.x3(), b.x3(), lam);
    return out;
  }
  PhasePoint out = a;
  out.coords = (1 - lam) * a.coords + lam * b.coords;
  return project_to_constraints(out);
}

bool LiftedPath::closed(const Tolerances& tol) const {
  return bundle_point_equal(points.front(), points.back(), tol);
}

BundlePoint interpolate_bundle(const BundlePoint& a, const BundlePoint& b,
                               double s) {
  const BundleId& id = a.bundle();
  if (!(id == b.bundle()))
    throw DomainError("interpolate_bundle: bundle mismatch");
  switch (id.flavor) {
    case BundleFlavor::HopfN: {
      if (id.n == 0) {
        const auto& ra = a.flat_sphere();
        const auto& rb = b.flat_sphere();
        return hopf0_point(slerp(ra.x, rb.x, s),
                           (1 - s) * ra.phi + s * rb.phi);
      }
      return hopf_point(id.n, Spinor2(nlerp2(a.hopf().xi.components(),
                                             b.hopf().xi.components(), s)));
    }
    case BundleFlavor::DiracBundle: {
      const auto& ra = a.dirac();
      const auto& rb = b.dirac();
      return dirac_point(id, (1 - s) * ra.x + s * rb.x,
                         DiracSpinor(dirac_lerp(ra.psi.components(),
                                                rb.psi.components(), s)));
    }
    case BundleFlavor::TrivialU1: {
      const auto& ra = a.trivial();
      const auto& rb = b.trivial();
      PhasePoint base = ra.base;
      base.coords = (1 - s) * ra.base.coords + s * rb.base.coords;
      return trivial_point(id, project_to_constraints(base),
                           (1 - s) * ra.phi + s * rb.phi);
    }
    case BundleFlavor::AnyonBundle: {
      const auto& ra = a.anyon();
      const auto& rb = b.anyon();
      if (ra.deck != rb.deck)
        throw DomainError("interpolate_bundle: anyon deck windows differ");
      return anyon_bundle_point(
          id, (1 - s) * ra.cover + s * rb.cover,
          (1 - s) * ra.momentum + s * rb.momentum,
          (1 - s) * ra.phi + s * rb.phi, ra.deck);
    }
  }
  throw UnsupportedError("interpolate_bundle: unknown flavor");
}

// ---------------------------------------------------------------------------
// Line holonomy
// ---------------------------------------------------------------------------

namespace {

BundleTangent bundle_chord(const BundlePoint& a, const BundlePoint& b) {
  const BundleId& id = a.bundle();
  BundleTangent w;
  switch (id.flavor) {
    case BundleFlavor::HopfN:
      if (id.n == 0) {
        w.comp = FlatSphereTangent{b.flat_sphere().x - a.flat_sphere().x,
                                   b.flat_sphere().phi - a.flat_sphere().phi};
      } else {
        w.comp = HopfTangent{b.hopf().xi.components() -
                             a.hopf().xi.components()};
      }
      break;
    case BundleFlavor::DiracBundle:
      w.comp = DiracTangent{b.dirac().x - a.dirac().x,
                            b.dirac().psi.components() -
                                a.dirac().psi.components()};
      break;
    case BundleFlavor::TrivialU1:
      w.comp = TrivialTangent{b.trivial().base.coords - a.trivial().base.coords,
                              b.trivial().phi - a.trivial().phi};
      break;
    case BundleFlavor::AnyonBundle: {
      Eigen::Vector4d d;
      d.head<2>() = b.anyon().cover - a.anyon().cover;
      d.tail<2>() = b.anyon().momentum - a.anyon().momentum;
      w.comp = AnyonTangent{d, b.anyon().phi - a.anyon().phi};
      break;
    }
  }
  return w;
}

}  // namespace

Holonomy line_holonomy(const LiftedPath& path, const QuadratureOptions& options,
                       const Tolerances& tol) {
  if (path.points.size() < 2)
    throw DomainError("line_holonomy: need at least two samples");
  for (const auto& p : path.points)
    if (!(p.bundle() == path.bundle))
      throw DomainError("line_holonomy: bundle mismatch along path");

  auto integrate = [&](int substeps) {
    double angle = 0.0;
    for (std::size_t k = 0; k + 1 < path.points.size(); ++k) {
      const BundlePoint& a = path.points[k];
      const BundlePoint& b = path.points[k + 1];
      for (int j = 0; j < substeps; ++j) {
        const double s0 = static_cast<double>(j) / substeps;
        const double s1 = static_cast<double>(j + 1) / substeps;
        const BundlePoint p0 = interpolate_bundle(a, b, s0);
        const BundlePoint p1 = interpolate_bundle(a, b, s1);
        const BundlePoint pm = interpolate_bundle(a, b, 0.5 * (s0 + s1));
        angle += connection_eval_raw(pm, bundle_chord(p0, p1));
      }
    }
    return angle;
  };

  int substeps = options.initial_substeps;
  double angle = integrate(substeps);
  double err = std::abs(angle);
  int refinements = 0;
  for (int d = 0; d < options.max_doublings; ++d) {
    const double finer = integrate(substeps * 2);
    err = std::abs(finer - angle);
    angle = finer;
    substeps *= 2;
    ++refinements;
    if (err < options.eps) break;
  }
  (void)tol;
  Holonomy h;
  h.angle = angle;
  h.est_error = err;
  h.refinements = refinements;
  return h;
}

// ---------------------------------------------------------------------------
// Horizontal lift
// ---------------------------------------------------------------------------

LiftedPath horizontal_lift(const SampledPath& base, const BundlePoint& start,
                           const LiftOptions& options, const Tolerances& tol) {
  const BundleId& id = start.bundle();
  if (!(bundle_project(start).space == base.space))
    throw DomainError("horizontal_lift: bundle base mismatch");
  if (chart_distance(bundle_project(start), base.points.front()) >
      tol.geom * 1000)
    throw DomainError("horizontal_lift: start must project to the first point");

  LiftedPath lift;
  lift.bundle = id;
  lift.t.push_back(base.t.front());
  lift.points.push_back(start);

  BundlePoint cur = start;
  for (std::size_t k = 0; k + 1 < base.points.size(); ++k) {
    const double t0 = base.t[k], t1 = base.t[k + 1];
    const double seg =
        chart_distance(base.points[k], base.points[k + 1]);
    const int substeps = std::max(
        options.min_substeps, static_cast<int>(std::ceil(seg / options.step)));
    for (int j = 1; j <= substeps; ++j) {
      const double tn = t0 + (t1 - t0) * j / substeps;
      const PhasePoint y = base.at(tn);
      BundlePoint cand = cur;
      switch (id.flavor) {
        case BundleFlavor::HopfN: {
          if (id.n == 0) {
            cand = hopf0_point(y.x3(), cur.flat_sphere().phi);
            break;
          }
          const Vec3 xc = hopf_project(cur.hopf().xi);
          const SU2Element step = su2_rotation_between(xc, y.x3());
          const Spinor2 moved(Vec2c(step.apply(cur.hopf().xi.components())));
          BundlePoint tilde = hopf_point(id.n, moved);
          const BundlePoint mid = interpolate_bundle(cur, tilde, 0.5);
          const double seg_angle =
              connection_eval_raw(mid, bundle_chord(cur, tilde));
          cand = hopf_point(
              id.n,
              moved.phase_multiplied(std::exp(complexd(0, -seg_angle / id.n))));
          break;
        }
        case BundleFlavor::DiracBundle: {
          const auto [Ic, Jc] = dirac_observables(cur.dirac().psi);
          const SL2CElement Ac =
              SL2CElement::boost_from_rest(Ic) *
              SL2CElement::from_su2(su2_rotation_between(
                  Vec3(0, 0, 1),
                  sl2c_to_lorentz(SL2CElement::boost_from_rest(Ic).inverse())
                      .apply(Jc)
                      .tail<3>()
                      .normalized()));
          const SL2CElement An =
              SL2CElement::boost_from_rest(y.I4()) *
              SL2CElement::from_su2(su2_rotation_between(
                  Vec3(0, 0, 1),
                  sl2c_to_lorentz(
                      SL2CElement::boost_from_rest(y.I4()).inverse())
                      .apply(y.J4())
                      .tail<3>()
                      .normalized()));
          const SL2CElement T = An * Ac.inverse();
          const DiracSpinor moved(T.apply_dirac(cur.dirac().psi.components()));
          BundlePoint tilde = dirac_point(id, y.x3(), moved);
          const BundlePoint mid = interpolate_bundle(cur, tilde, 0.5);
          const double seg_angle =
              connection_eval_raw(mid, bundle_chord(cur, tilde));
          cand = dirac_point(id, y.x3(),
                             moved.phase_multiplied(
                                 std::exp(complexd(0, -seg_angle / id.n))));
          break;
        }
        case BundleFlavor::TrivialU1: {
          BundlePoint tilde = trivial_point(id, y, cur.trivial().phi);
          const BundlePoint mid = interpolate_bundle(cur, tilde, 0.5);
          const double seg_angle =
              connection_eval_raw(mid, bundle_chord(cur, tilde));
          cand = trivial_point(id, y, cur.trivial().phi - seg_angle);
          break;
        }
        case BundleFlavor::AnyonBundle: {
          const auto& r = cur.anyon();
          cand = anyon_bundle_point(id, y.cover(), y.I2(), r.phi, r.deck);
          break;
        }
      }
      cur = cand;
      lift.t.push_back(tn);
      lift.points.push_back(cur);
    }
  }
  return lift;
}

std::complex<double> structure_defect(const LiftedPath& lift,
                                      const Tolerances& tol) {
  const complexd c = slot_phase(lift.points.front(), lift.points.back(), tol);
  const BundleId& id = lift.bundle;
  if ((id.flavor == BundleFlavor::HopfN && id.n >= 1) ||
      id.flavor == BundleFlavor::DiracBundle) {
    complexd out{1.0, 0.0};
    for (int i = 0; i < id.n; ++i) out *= c;
    return out / std::abs(out);
  }
  return c;
}

// ---------------------------------------------------------------------------
// Surface flux and integrality
// ---------------------------------------------------------------------------

namespace {

struct Tri {
  Vec3 a, b, c;
};

std::vector<Tri> icosahedron() {
  const double p = (1.0 + std::sqrt(5.0)) / 2.0;
  const Vec3 v[12] = {
      {0, 1, p},  {0, -1, p},  {0, 1, -p},  {0, -1, -p},
      {1, p, 0},  {1, -p, 0},  {-1, p, 0},  {-1, -p, 0},
      {p, 0, 1},  {p, 0, -1},  {-p, 0, 1},  {-p, 0, -1},
  };
  const int f[20][3] = {{0, 1, 8},  {0, 10, 1}, {0, 4, 6},  {0, 8, 4},
                        {0, 6, 10}, {1, 7, 5},  {1, 5, 8},  {1, 10, 7},
                        {2, 9, 3},  {2, 3, 11}, {2, 6, 4},  {2, 4, 9},
                        {2, 11, 6}, {3, 5, 7},  {3, 9, 5},  {3, 7, 11},
                        {4, 8, 9},  {5, 9, 8},  {6, 11, 10}, {7, 10, 11}};
  std::vector<Tri> tris;
  tris.reserve(20);
  for (const auto& face : f) {
    Tri t{v[face[0]].normalized(), v[face[1]].normalized(),
          v[face[2]].normalized()};
    // outward counterclockwise orientation
    if ((t.b - t.a).cross(t.c - t.a).dot(t.a + t.b + t.c) < 0)
      std::swap(t.b, t.c);
    tris.push_back(t);
  }
  return tris;
}

std::vector<Tri> subdivide(const std::vector<Tri>& tris) {
  std::vector<Tri> out;
  out.reserve(tris.size() * 4);
  for (const Tri& t : tris) {
    const Vec3 ab = (t.a + t.b).normalized();
    const Vec3 bc = (t.b + t.c).normalized();
    const Vec3 ca = (t.c + t.a).normalized();
    out.push_back({t.a, ab, ca});
    out.push_back({t.b, bc, ab});
    out.push_back({t.c, ca, bc});
    out.push_back({ab, bc, ca});
  }
  return out;
}

double flux_of(const std::vector<Tri>& tris, double spin) {
  double total = 0.0;
  for (const Tri& t : tris) {
    const Vec3 c = (t.a + t.b + t.c).normalized();
    total += 0.5 * spin * c.dot((t.b - t.a).cross(t.c - t.a));
  }
  return total;
}

}  // namespace

FluxReport surface_flux(const PhaseSpaceId& space, int depth) {
  if (space.kind != SpaceKind::SpinSphere)
    throw UnsupportedError("surface_flux: only the sphere is compact");
  if (depth < 0) throw DomainError("surface_flux: depth must be >= 0");
  FluxReport report;
  report.depth = depth;
  std::vector<Tri> tris = icosahedron();
  report.per_depth.push_back(flux_of(tris, space.spin));
  for (int d = 1; d <= depth; ++d) {
    tris = subdivide(tris);
    report.per_depth.push_back(flux_of(tris, space.spin));
  }
  report.total_flux = report.per_depth.back();
  report.est_error =
      report.per_depth.size() > 1
          ? std::abs(report.per_depth.back() -
                     report.per_depth[report.per_depth.size() - 2])
          : std::abs(report.total_flux);
  return report;
}

double cap_flux(double spin, double theta0, int rings, int sectors) {
  // midpoint quadrature of the two-form over the (theta, phi) chart
  const double dth = theta0 / rings;
  const double dph = kTwoPi / sectors;
  double total = 0.0;
  for (int i = 0; i < rings; ++i) {
    const double th = (i + 0.5) * dth;
    const double st = std::sin(th), ct = std::cos(th);
    for (int j = 0; j < sectors; ++j) {
      const double ph = (j + 0.5) * dph;
      const Vec3 x(st * std::cos(ph), st * std::sin(ph), ct);
      const Vec3 dxdth(ct * std::cos(ph), ct * std::sin(ph), -st);
      const Vec3 dxdph(-st * std::sin(ph), st * std::cos(ph), 0.0);
      total += spin * x.dot(dxdth.cross(dxdph)) * dth * dph;
    }
  }
  return total;
}

IntegralityResult integrality_check(double s, const Tolerances& tol,
                                    int depth) {
  const FluxReport report = surface_flux(PhaseSpaceId::spin_sphere(s), depth);
  IntegralityResult out;
  out.flux = report.total_flux;
  const double ratio = report.total_flux / kTwoPi;
  const double nearest = std::round(ratio);
  if (std::abs(ratio - nearest) <= tol.integer_flux) {
    out.quantizable = true;
    out.n = static_cast<int>(nearest);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Path builders
// ---------------------------------------------------------------------------

SampledPath sphere_circle(double spin, const Vec3& axis, double theta0,
                          int samples) {
  if (samples < 3) throw DomainError("sphere_circle: need >= 3 samples");
  const Vec3 n = axis.normalized();
  // frame adapted to the axis
  Vec3 e1 = n.cross(Vec3(0, 0, 1));
  if (e1.norm() < 1e-6) e1 = n.cross(Vec3(1, 0, 0));
  e1.normalize();
  const Vec3 e2 = n.cross(e1);
  std::vector<double> t(samples);
  std::vector<PhasePoint> pts;
  pts.reserve(samples);
  for (int i = 0; i < samples; ++i) {
    t[i] = static_cast<double>(i) / (samples - 1);
    const double ph = kTwoPi * t[i];
    const Vec3 x = std::sin(theta0) * (std::cos(ph) * e1 + std::sin(ph) * e2) +
                   std::cos(theta0) * n;
    pts.push_back(sphere_point(spin, x.normalized()));
  }
  pts.back() = pts.front();  // bitwise closure
  return SampledPath::create(PhaseSpaceId::spin_sphere(spin), std::move(t),
                             std::move(pts), SampledPath::Interp::SphereGeodesic);
}

SampledPath sphere_rotation_arc(double spin, const Vec3& axis, const Vec3& x,
                                double angle, int samples) {
  if (samples < 2) throw DomainError("sphere_rotation_arc: need >= 2 samples");
  std::vector<double> t(samples);
  std::vector<PhasePoint> pts;
  pts.reserve(samples);
  for (int i = 0; i < samples; ++i) {
    t[i] = static_cast<double>(i) / (samples - 1);
    pts.push_back(sphere_point(
        spin, axis_angle_matrix(axis, angle * t[i]) * x));
  }
  return SampledPath::create(PhaseSpaceId::spin_sphere(spin), std::move(t),
                             std::move(pts), SampledPath::Interp::SphereGeodesic);
}

LiftedPath section_lift(const BundleId& bundle, const SampledPath& base,
                        int oversample) {
  if (oversample < 1) throw DomainError("section_lift: oversample >= 1");
  LiftedPath lift;
  lift.bundle = bundle;
  Vec3 pole = Vec3::Zero();
  if (bundle.flavor == BundleFlavor::HopfN && bundle.n >= 1) {
    for (const auto& p : base.points) pole += p.x3();
    if (pole.norm() < 1e-6)
      throw DomainError("section_lift: cannot infer a section pole");
    pole.normalize();
  }
  const std::size_t segs = base.points.size() - 1;
  for (std::size_t k = 0; k <= segs * oversample; ++k) {
    const double tt =
        base.t.front() +
        (base.t.back() - base.t.front()) * k / double(segs * oversample);
    const PhasePoint y = base.at(tt);
    switch (bundle.flavor) {
      case BundleFlavor::HopfN:
        if (bundle.n == 0)
          lift.points.push_back(hopf0_point(y.x3(), 0.0));
        else
          lift.points.push_back(
              hopf_point(bundle.n, hopf_local_section(y.x3(), pole)));
        break;
      case BundleFlavor::DiracBundle:
        lift.points.push_back(
            dirac_point(bundle, y.x3(), dirac_section(y.I4(), y.J4())));
        break;
      case BundleFlavor::TrivialU1:
        lift.points.push_back(trivial_point(bundle, y, 0.0));
        break;
      case BundleFlavor::AnyonBundle:
        lift.points.push_back(
            anyon_bundle_point(bundle, y.cover(), y.I2(), 0.0, 0));
        break;
    }
    lift.t.push_back(tt);
  }
  return lift;
}

}  // namespace prequant
