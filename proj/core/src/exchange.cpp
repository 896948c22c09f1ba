#include "prequant/exchange.hpp"

#include <algorithm>
#include <cmath>

namespace prequant {

namespace {
constexpr double kPi = 3.141592653589793238463;
constexpr double kTwoPi = 2.0 * kPi;

double wrap_angle(double a) {
  double w = std::fmod(a, kTwoPi);
  if (w < 0) w += kTwoPi;
  return w;
}

Eigen::Matrix2d rot2(double angle) {
  Eigen::Matrix2d m;
  const double c = std::cos(angle), s = std::sin(angle);
  m << c, -s, s, c;
  return m;
}

SU2Element su2_signed(const Vec3& axis, double angle) {
  if (angle >= 0) return su2_exp(axis, angle, 0.5);
  return su2_exp(axis, -angle, 0.5).inverse();
}

complexd phase_power(complexd c, int n) {
  complexd out{1.0, 0.0};
  for (int i = 0; i < n; ++i) out *= c;
  const double m = std::abs(out);
  return m > 0 ? out / m : out;
}

complexd snap_phase(complexd measured, const std::vector<complexd>& admissible,
                    double window) {
  for (const complexd& c : admissible)
    if (std::abs(measured - c) <= window) return c;
  throw InconsistencyError("exchange phase " + std::to_string(measured.real()) +
                           (measured.imag() < 0 ? "-" : "+") +
                           std::to_string(std::abs(measured.imag())) +
                           "i lies outside the admissible set");
}
}  // namespace

// ---------------------------------------------------------------------------
// common_circle and path builders
// ---------------------------------------------------------------------------

CommonCircle common_circle(const PhasePoint& x1, const PhasePoint& x2,
                           std::optional<Vec3> tie_break_axis, int samples,
                           const Tolerances& tol) {
  if (x1.space.kind != SpaceKind::SpinSphere || !(x1.space == x2.space))
    throw DomainError("common_circle: points must share one sphere");
  const Vec3 a = x1.x3(), b = x2.x3();
  if ((a - b).norm() <= tol.geom * 100)
    throw DegenerateInputError("common_circle: the points coincide");
  Vec3 axis = a.cross(b);
  if (axis.norm() < 1e-9) {  // antipodal
    if (!tie_break_axis)
      throw AmbiguousAxisError(
          "common_circle: antipodal pair needs a tie-break axis");
    axis = tie_break_axis->normalized();
    if (std::abs(axis.dot(a)) > 1e-9)
      throw DomainError("common_circle: tie-break axis orbit misses the pair");
  } else {
    axis.normalize();
  }
  const double arc = std::acos(std::clamp(a.dot(b), -1.0, 1.0));
  CommonCircle cc;
  cc.axis = axis;
  cc.arc_gamma = arc;
  cc.arc_gamma_prime = kTwoPi - arc;
  cc.gamma = sphere_rotation_arc(x1.space.spin, axis, a, arc, samples);
  cc.gamma_prime =
      sphere_rotation_arc(x1.space.spin, axis, b, kTwoPi - arc, samples);
  return cc;
}

double PairPath::net_rotation() const {
  return std::visit(
      [](const auto& g) -> double { return g.angle1 + g.angle2; }, generator);
}

PairPath make_sphere_pair_path(const PhasePoint& x1, const PhasePoint& x2,
                               const Vec3& axis, double angle1, double angle2,
                               int samples, const Tolerances& tol) {
  PairPath p{sphere_rotation_arc(x1.space.spin, axis, x1.x3(), angle1, samples),
             sphere_rotation_arc(x2.space.spin, axis, x2.x3(), angle2, samples),
             SphereGenerator{axis, angle1, angle2}};
  if (chart_distance(p.leg1.points.back(), x2) > tol.geom * 1000 ||
      chart_distance(p.leg2.points.back(), x1) > tol.geom * 1000)
    throw DomainError("pair path: legs do not exchange the endpoints");
  return p;
}

PairPath build_exchange(const PhasePoint& x1, const PhasePoint& x2,
                        ExchangeMode mode, int extra_turns,
                        std::optional<Vec3> tie_break_axis, int samples,
                        const Tolerances& tol) {
  if (extra_turns < 0) throw DomainError("build_exchange: extra_turns >= 0");
  const CommonCircle cc = common_circle(x1, x2, tie_break_axis, samples, tol);
  const double turn = kTwoPi * extra_turns;
  double angle1 = cc.arc_gamma + turn;
  double angle2 = mode == ExchangeMode::TypeI
                      ? -(cc.arc_gamma + turn)
                      : cc.arc_gamma_prime + turn;
  return make_sphere_pair_path(x1, x2, cc.axis, angle1, angle2, samples, tol);
}

PairPath build_exchange_free_rel(const PhasePoint& p1, const PhasePoint& p2,
                                 int extra_turns, int samples,
                                 const Tolerances& tol) {
  if (p1.space.kind != SpaceKind::FreeRel || !(p1.space == p2.space))
    throw DomainError("build_exchange_free_rel: need two FreeRel points");
  const Vec3 x1 = p1.x3(), x2 = p2.x3();
  if ((x1 - x2).norm() <= tol.geom * 100)
    throw DegenerateInputError("exchange: coincident positions");
  const Vec3 i1 = p1.I4().tail<3>(), i2 = p2.I4().tail<3>();
  if (std::abs(i1.norm() - i2.norm()) > 1e-9)
    throw DomainError("exchange: momenta must have equal spatial norms");
  Vec3 axis;
  const Vec3 isum = i1 + i2;
  if (isum.norm() > 1e-9) {
    axis = isum.normalized();
    if (std::abs(axis.dot(x1 - x2)) > 1e-9)
      throw DomainError("exchange: (i1 + i2) must be orthogonal to (x1 - x2)");
  } else if (i1.norm() > 1e-9) {
    axis = i1.cross(x1 - x2);
    if (axis.norm() < 1e-9)
      throw DomainError("exchange: no admissible half-turn axis");
    axis.normalize();
  } else {
    const Vec3 d = (x1 - x2).normalized();
    axis = d.cross(Vec3(0, 0, 1));
    if (axis.norm() < 1e-6) axis = d.cross(Vec3(1, 0, 0));
    axis.normalize();
  }
  // half-turn about the line through the midpoint must swap the momenta
  if ((axis_angle_matrix(axis, kPi) * i1 - i2).norm() > 1e-8)
    throw DomainError("exchange: half-turn does not swap the momenta");

  const Vec3 center = 0.5 * (x1 + x2);
  const double angle = kPi * (2 * extra_turns + 1);
  std::vector<double> t(samples);
  std::vector<PhasePoint> l1, l2;
  l1.reserve(samples);
  l2.reserve(samples);
  const double m = p1.space.mass;
  for (int k = 0; k < samples; ++k) {
    t[k] = static_cast<double>(k) / (samples - 1);
    const Eigen::Matrix3d R = axis_angle_matrix(axis, angle * t[k]);
    auto leg_point = [&](const Vec3& x, const Vec3& i, double I0) {
      Vec4 I;
      I << I0, R * i;
      return free_rel_point(m, R * (x - center) + center, I);
    };
    l1.push_back(leg_point(x1, i1, p1.I4()(0)));
    l2.push_back(leg_point(x2, i2, p2.I4()(0)));
  }
  PairPath p{SampledPath::create(p1.space, t, std::move(l1),
                                 SampledPath::Interp::Chart, tol),
             SampledPath::create(p1.space, std::move(t), std::move(l2),
                                 SampledPath::Interp::Chart, tol),
             EuclidScrewGenerator{axis, center, angle, angle}};
  if (chart_distance(p.leg1.points.back(), p2) > 1e-7 ||
      chart_distance(p.leg2.points.back(), p1) > 1e-7)
    throw DomainError("exchange: half-turn does not swap the pair");
  return p;
}

PairPath build_exchange_three_d(const PhasePoint& p1, const PhasePoint& p2,
                                int extra_turns, int samples,
                                const Tolerances& tol) {
  if (p1.space.kind != SpaceKind::ThreeD || !(p1.space == p2.space))
    throw DomainError("build_exchange_three_d: need two ThreeD points");
  const Eigen::Vector2d x1 = p1.x2(), x2 = p2.x2();
  if ((x1 - x2).norm() <= tol.geom * 100)
    throw DegenerateInputError("exchange: coincident positions");
  const Eigen::Vector2d i1 = p1.I3().tail<2>(), i2 = p2.I3().tail<2>();
  if ((i1 + i2).norm() > 1e-9)
    throw DomainError("exchange: planar momenta must be opposite");
  const Eigen::Vector2d center = 0.5 * (x1 + x2);
  const double angle = kPi * (2 * extra_turns + 1);
  std::vector<double> t(samples);
  std::vector<PhasePoint> l1, l2;
  for (int k = 0; k < samples; ++k) {
    t[k] = static_cast<double>(k) / (samples - 1);
    const Eigen::Matrix2d R = rot2(angle * t[k]);
    auto leg_point = [&](const Eigen::Vector2d& x, const Eigen::Vector2d& i,
                         double I0) {
      Eigen::Vector3d I;
      I << I0, R * i;
      return three_d_point(p1.space.mass, p1.space.spin,
                           R * (x - center) + center, I);
    };
    l1.push_back(leg_point(x1, i1, p1.I3()(0)));
    l2.push_back(leg_point(x2, i2, p2.I3()(0)));
  }
  PairPath p{SampledPath::create(p1.space, t, std::move(l1),
                                 SampledPath::Interp::Chart, tol),
             SampledPath::create(p1.space, std::move(t), std::move(l2),
                                 SampledPath::Interp::Chart, tol),
             PlanarScrewGenerator{center, angle, angle}};
  if (chart_distance(p.leg1.points.back(), p2) > 1e-7 ||
      chart_distance(p.leg2.points.back(), p1) > 1e-7)
    throw DomainError("exchange: half-turn does not swap the pair");
  return p;
}

PairPath build_exchange_anyon(const PhasePoint& p1, const PhasePoint& p2,
                              int extra_turns, int samples,
                              const Tolerances& tol) {
  if (p1.space.kind != SpaceKind::Anyon || !(p1.space == p2.space))
    throw DomainError("build_exchange_anyon: need two anyon points");
  const Eigen::Vector2d c1 = p1.cover(), c2 = p2.cover();
  if (std::abs(c1(1) - c2(1)) > 1e-9)
    throw DomainError("exchange: anyon pair must share the orbit radius");
  const double du = c2(0) - std::floor(c2(0)) - (c1(0) - std::floor(c1(0)));
  const double frac = du - std::floor(du);  // in [0,1)
  if (frac < 1e-6 || frac > 1 - 1e-6)
    throw DegenerateInputError("exchange: coincident anyon positions");
  const double angle1 = kTwoPi * (frac + extra_turns);
  const double angle2 = kTwoPi * (1.0 - frac + extra_turns);
  std::vector<double> t(samples);
  std::vector<PhasePoint> l1, l2;
  const double alpha = p1.space.alpha;
  for (int k = 0; k < samples; ++k) {
    t[k] = static_cast<double>(k) / (samples - 1);
    auto leg_point = [&](const PhasePoint& p, double angle) {
      Eigen::Vector2d cov = p.cover();
      cov(0) += angle * t[k] / kTwoPi;
      return anyon_point(alpha, cov, rot2(angle * t[k]) * p.I2());
    };
    l1.push_back(leg_point(p1, angle1));
    l2.push_back(leg_point(p2, angle2));
  }
  PairPath p{SampledPath::create(p1.space, t, std::move(l1),
                                 SampledPath::Interp::Chart, tol, 1e9),
             SampledPath::create(p1.space, std::move(t), std::move(l2),
                                 SampledPath::Interp::Chart, tol, 1e9),
             OriginRotationGenerator{angle1, angle2}};
  if (chart_distance(p.leg1.points.back(), p2) > 1e-7 ||
      chart_distance(p.leg2.points.back(), p1) > 1e-7)
    throw DomainError("exchange: rotations do not swap the pair");
  return p;
}

PairPath build_exchange_massive(const BundleId& bundle, const Vec3& x1,
                                const Vec3& x2, const DiracSpinor& psi1,
                                const DiracSpinor& psi2,
                                const SL2CElement& conj, int extra_turns,
                                int samples, const Tolerances& tol) {
  if (bundle.flavor != BundleFlavor::DiracBundle)
    throw DomainError("build_exchange_massive: need a Dirac bundle");
  const auto [I1, J1] = dirac_observables(psi1);
  const auto [I2, J2] = dirac_observables(psi2);
  const Vec4 rest(1, 0, 0, 0);
  if ((I1 - rest).norm() > 1e-6 || (I2 - rest).norm() > 1e-6)
    throw DomainError(
        "build_exchange_massive: configuration must sit in the common rest "
        "frame");
  if ((x1 - x2).norm() <= tol.geom * 100 && (J1 - J2).norm() <= tol.geom * 100)
    throw DegenerateInputError("exchange: coincident configurations");

  const Vec3 n1 = J1.tail<3>().normalized(), n2 = J2.tail<3>().normalized();
  const double spin = bundle.n / 2.0;
  const CommonCircle cc =
      common_circle(sphere_point(spin, n1), sphere_point(spin, n2),
                    std::nullopt, samples, tol);
  const double turn = kTwoPi * extra_turns;
  const double angle1 = cc.arc_gamma + turn;
  const double angle2 = cc.arc_gamma_prime + turn;

  std::vector<double> t(samples);
  std::vector<PhasePoint> l1, l2;
  const GroupElement conj_g = conj;
  for (int k = 0; k < samples; ++k) {
    t[k] = static_cast<double>(k) / (samples - 1);
    const Eigen::Matrix3d R = axis_angle_matrix(cc.axis, t[k]);
    auto leg_point = [&](const Vec3& xa, const Vec3& xb, const Vec4& J,
                         double angle) {
      Eigen::Matrix3d Rt = axis_angle_matrix(cc.axis, angle * t[k]);
      Vec4 Jt;
      Jt << 0, Rt * J.tail<3>();
      const PhasePoint rest_pt = massive_point(
          bundle.base.mass, bundle.base.spin, (1 - t[k]) * xa + t[k] * xb,
          rest, Jt);
      return apply_group(rest_pt, conj_g, tol);
    };
    (void)R;
    l1.push_back(leg_point(x1, x2, J1, angle1));
    l2.push_back(leg_point(x2, x1, J2, angle2));
  }
  PairPath p{SampledPath::create(bundle.base, t, std::move(l1),
                                 SampledPath::Interp::Chart, tol),
             SampledPath::create(bundle.base, std::move(t), std::move(l2),
                                 SampledPath::Interp::Chart, tol),
             MassiveSpinGenerator{cc.axis, angle1, angle2, conj}};
  return p;
}

// ---------------------------------------------------------------------------
// Diagonal crossing
// ---------------------------------------------------------------------------

CrossingReport diagonal_crossing(const PairPath& p, const Tolerances& tol) {
  if (p.leg1.t.size() != p.leg2.t.size())
    throw DomainError("diagonal_crossing: legs need a shared parameter grid");
  for (std::size_t i = 0; i < p.leg1.t.size(); ++i)
    if (std::abs(p.leg1.t[i] - p.leg2.t[i]) > 1e-12)
      throw DomainError("diagonal_crossing: legs need a shared parameter grid");

  auto separation = [&](double t) {
    return chart_distance(p.leg1.at(t), p.leg2.at(t));
  };
  const int grid = 1024;
  double best = separation(0.0);
  double t_best = 0.0;
  std::vector<double> d(grid + 1);
  for (int i = 0; i <= grid; ++i) {
    const double t = static_cast<double>(i) / grid;
    d[i] = separation(t);
    if (d[i] < best) {
      best = d[i];
      t_best = t;
    }
  }
  // golden-section refinement around every interior local minimum
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int i = 1; i < grid; ++i) {
    if (d[i] <= d[i - 1] && d[i] <= d[i + 1]) {
      double lo = static_cast<double>(i - 1) / grid;
      double hi = static_cast<double>(i + 1) / grid;
      double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
      double f1 = separation(x1), f2 = separation(x2);
      for (int it = 0; it < 60; ++it) {
        if (f1 < f2) {
          hi = x2;
          x2 = x1;
          f2 = f1;
          x1 = hi - gr * (hi - lo);
          f1 = separation(x1);
        } else {
          lo = x1;
          x1 = x2;
          f1 = f2;
          x2 = lo + gr * (hi - lo);
          f2 = separation(x2);
        }
      }
      const double tm = 0.5 * (lo + hi);
      const double fm = separation(tm);
      if (fm < best) {
        best = fm;
        t_best = tm;
      }
    }
  }
  CrossingReport report;
  report.min_separation = best;
  report.t_min = t_best;
  report.crossed = best < tol.diag;
  return report;
}

// ---------------------------------------------------------------------------
// Exchange phase
// ---------------------------------------------------------------------------

namespace {

struct AnyonExtract {
  double raw = 0.0;  // continuous angle part
  int deck = 0;      // exact winding part, phase contribution deck * alpha
};

AnyonExtract anyon_slot_extract(const BundlePoint& ref, const BundlePoint& end) {
  const auto& r = ref.anyon();
  const auto& e = end.anyon();
  const double udiff = e.cover(0) - r.cover(0);
  const int k = static_cast<int>(std::lround(udiff));
  if (std::abs(udiff - k) > 1e-7)
    throw InconsistencyError("anyon exchange endpoint misses the reference");
  AnyonExtract out;
  // identification (u, theta) ~ (u + j, theta - j alpha): sliding the
  // endpoint down to the reference window adds +k alpha.
  out.deck = k + (e.deck - r.deck);
  out.raw = e.phi - r.phi;
  return out;
}

std::vector<complexd> admissible_phases(const BundleId& b) {
  switch (b.flavor) {
    case BundleFlavor::HopfN:
    case BundleFlavor::DiracBundle:
      return {complexd(1, 0), complexd(-1, 0)};
    case BundleFlavor::TrivialU1:
      return {complexd(1, 0)};
    case BundleFlavor::AnyonBundle:
      return anyon_exchange_phases(b.alpha(), 0.0);
  }
  return {complexd(1, 0)};
}

}  // namespace

std::complex<double> exchange_phase(const BundleId& bundle, const PairPath& p,
                                    const PairClass& start,
                                    const Tolerances& tol) {
  if (!(start.first.bundle() == bundle) || !(start.second.bundle() == bundle))
    throw DomainError("exchange_phase: start pair bundle mismatch");
  const CrossingReport crossing = diagonal_crossing(p, tol);
  if (crossing.crossed)
    throw DiagonalCrossingError(
        "exchange_phase: the pair path crosses the diagonal (min separation " +
        std::to_string(crossing.min_separation) + ")");
  if (chart_distance(bundle_project(start.first), p.leg1.points.front()) >
          1e-6 ||
      chart_distance(bundle_project(start.second), p.leg2.points.front()) >
          1e-6)
    throw DomainError("exchange_phase: start pair must lie over the leg starts");

  complexd measured;
  if (const auto* g = std::get_if<SphereGenerator>(&p.generator)) {
    const GroupElement g1 = su2_signed(g->axis, g->angle1);
    const GroupElement g2 = su2_signed(g->axis, g->angle2);
    const BundlePoint w1 = lifted_group_action(g1, start.first);
    const BundlePoint w2 = lifted_group_action(g2, start.second);
    const complexd c = slot_phase(start.second, w1, tol) *
                       slot_phase(start.first, w2, tol);
    if (bundle.n == 0) {
      measured = c;  // flat bundle: the product is already the full phase
    } else {
      measured = phase_power(c, bundle.n);
      // class-level consistency against the swapped pair
      const PairClass endpoint(w1, w2);
      const PairClass swapped(start.second,
                              hopf_point(bundle.n, start.first.hopf()
                                                        .xi.phase_multiplied(c)));
      if (!pair_equal(endpoint, swapped, tol))
        throw InconsistencyError(
            "exchange_phase: endpoint class mismatches the swapped class");
    }
  } else if (const auto* gm = std::get_if<MassiveSpinGenerator>(&p.generator)) {
    const SL2CElement rot1 =
        gm->conj * SL2CElement::from_su2(su2_signed(gm->axis, gm->angle1)) *
        gm->conj.inverse();
    const SL2CElement rot2m =
        gm->conj * SL2CElement::from_su2(su2_signed(gm->axis, gm->angle2)) *
        gm->conj.inverse();
    const BundlePoint w1 =
        dirac_point(bundle, p.leg1.points.back().x3(),
                    DiracSpinor(rot1.apply_dirac(
                        start.first.dirac().psi.components())));
    const BundlePoint w2 =
        dirac_point(bundle, p.leg2.points.back().x3(),
                    DiracSpinor(rot2m.apply_dirac(
                        start.second.dirac().psi.components())));
    const complexd c = slot_phase(start.second, w1, tol) *
                       slot_phase(start.first, w2, tol);
    measured = phase_power(c, bundle.n);
    const PairClass endpoint(w1, w2);
    const PairClass swapped(
        start.second,
        dirac_point(bundle, start.first.dirac().x,
                    start.first.dirac().psi.phase_multiplied(c)));
    if (!pair_equal(endpoint, swapped, tol))
      throw InconsistencyError(
          "exchange_phase: endpoint class mismatches the swapped class");
  } else if (std::get_if<EuclidScrewGenerator>(&p.generator) ||
             std::get_if<PlanarScrewGenerator>(&p.generator)) {
    // trivial bundles: the lift leaves fibers untouched
    const BundlePoint w1 =
        trivial_point(bundle, p.leg1.points.back(), start.first.trivial().phi);
    const BundlePoint w2 = trivial_point(bundle, p.leg2.points.back(),
                                         start.second.trivial().phi);
    measured = slot_phase(start.second, w1, tol) *
               slot_phase(start.first, w2, tol);
  } else if (const auto* ga = std::get_if<OriginRotationGenerator>(&p.generator)) {
    const BundlePoint w1 =
        lifted_group_action(PlaneRotation{ga->angle1}, start.first);
    const BundlePoint w2 =
        lifted_group_action(PlaneRotation{ga->angle2}, start.second);
    const AnyonExtract a = anyon_slot_extract(start.second, w1);
    const AnyonExtract b = anyon_slot_extract(start.first, w2);
    const int parity = ((a.deck + b.deck) % 2 + 2) % 2;
    measured = std::exp(complexd(0, a.raw + b.raw + parity * bundle.alpha()));
  } else {
    throw UnsupportedError("exchange_phase: unknown generator");
  }
  return snap_phase(measured, admissible_phases(bundle), tol.phase_snap);
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

namespace {

BundlePoint start_point_over(const BundleId& b, const PhasePoint& p) {
  switch (b.flavor) {
    case BundleFlavor::HopfN:
      if (b.n == 0) return hopf0_point(p.x3(), 0.0);
      return hopf_point(b.n, hopf_local_section(p.x3(), p.x3()));
    case BundleFlavor::DiracBundle:
      return dirac_point(b, p.x3(), dirac_section(p.I4(), p.J4()));
    case BundleFlavor::TrivialU1:
      return trivial_point(b, p, 0.0);
    case BundleFlavor::AnyonBundle:
      return anyon_bundle_point(b, p.cover(), p.I2(), 0.0, 0);
  }
  throw UnsupportedError("start_point_over: unknown flavor");
}

}  // namespace

StatisticsVerdict classify_statistics(
    const BundleId& bundle,
    const std::vector<std::pair<PhasePoint, PhasePoint>>& samples,
    const Tolerances& tol) {
  if (samples.empty())
    throw DomainError("classify_statistics: need at least one sample");

  StatisticsVerdict verdict;
  verdict.min_separation = std::numeric_limits<double>::infinity();
  bool first = true;
  for (const auto& [p1, p2] : samples) {
    PairPath path = [&]() {
      switch (bundle.flavor) {
        case BundleFlavor::HopfN:
          return build_exchange(p1, p2, ExchangeMode::TypeII, 0, std::nullopt,
                                257, tol);
        case BundleFlavor::DiracBundle:
          return build_exchange_massive(
              bundle, p1.x3(), p2.x3(), dirac_section(p1.I4(), p1.J4()),
              dirac_section(p2.I4(), p2.J4()), SL2CElement::identity(), 0, 257,
              tol);
        case BundleFlavor::TrivialU1:
          return bundle.base.kind == SpaceKind::FreeRel
                     ? build_exchange_free_rel(p1, p2, 0, 257, tol)
                     : build_exchange_three_d(p1, p2, 0, 257, tol);
        case BundleFlavor::AnyonBundle:
          return build_exchange_anyon(p1, p2, 0, 513, tol);
      }
      throw UnsupportedError("classify_statistics: unknown flavor");
    }();

    BundlePoint s1 = start_point_over(bundle, path.leg1.points.front());
    BundlePoint s2 = start_point_over(bundle, path.leg2.points.front());
    const complexd phase = exchange_phase(bundle, path, PairClass(s1, s2), tol);
    const CrossingReport crossing = diagonal_crossing(path, tol);

    if (first) {
      verdict.phase = phase;
      first = false;
    } else if (std::abs(verdict.phase - phase) > 1e-9) {
      throw InconsistencyError(
          "classify_statistics: samples disagree on the exchange phase");
    }
    verdict.min_separation = std::min(verdict.min_separation,
                                      crossing.min_separation);
    verdict.net_rotation = path.net_rotation();
  }

  verdict.accumulated_phase_angle = std::arg(verdict.phase);
  switch (bundle.flavor) {
    case BundleFlavor::HopfN:
    case BundleFlavor::DiracBundle:
      verdict.kind = StatisticsVerdict::Kind::SpinStatistics;
      verdict.f = verdict.phase.real() < 0 ? 1 : 0;
      verdict.l = 0;
      break;
    case BundleFlavor::TrivialU1:
      verdict.kind = StatisticsVerdict::Kind::BoseOnly;
      verdict.f = 0;
      verdict.l = 0;
      break;
    case BundleFlavor::AnyonBundle: {
      verdict.kind = StatisticsVerdict::Kind::Anyonic;
      // the odd-turn rule selects winding parity l = 1 and raw sign f = 0
      verdict.f = 0;
      verdict.l = 1;
      const complexd expected = std::exp(complexd(0, bundle.alpha()));
      if (std::abs(verdict.phase - expected) > 1e-9)
        throw InconsistencyError(
            "classify_statistics: anyon phase is not e^{i alpha}");
      break;
    }
  }
  return verdict;
}

std::complex<double> adjoint_exchange_massive(
    const BundleId& bundle, const SL2CElement& lorentz_lift,
    const std::pair<Vec3, Vec3>& x_pair,
    const std::pair<DiracSpinor, DiracSpinor>& spinor_pair,
    const Tolerances& tol) {
  const PairPath path = build_exchange_massive(
      bundle, x_pair.first, x_pair.second, spinor_pair.first,
      spinor_pair.second, lorentz_lift, 0, 257, tol);
  const GroupElement g = SpinPoincare4{lorentz_lift, Vec4::Zero()};
  const BundlePoint s1 = lifted_group_action(
      g, dirac_point(bundle, x_pair.first, spinor_pair.first));
  const BundlePoint s2 = lifted_group_action(
      g, dirac_point(bundle, x_pair.second, spinor_pair.second));
  return exchange_phase(bundle, path, PairClass(s1, s2), tol);
}

std::vector<std::complex<double>> anyon_exchange_phases(double alpha,
                                                        double dedup_tol) {
  const complexd e = std::exp(complexd(0, alpha));
  std::vector<complexd> phases = {complexd(1, 0), complexd(-1, 0), e, -e};
  if (dedup_tol <= 0) return phases;
  std::vector<complexd> out;
  for (const complexd& c : phases) {
    bool dup = false;
    for (const complexd& o : out)
      if (std::abs(c - o) <= dedup_tol) dup = true;
    if (!dup) out.push_back(c);
  }
  return out;
}

}  // namespace prequant
