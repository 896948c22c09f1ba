#include "prequant/bundle.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "prequant/rng.hpp"

using namespace prequant;

namespace {
constexpr double kPi = 3.141592653589793238463;
constexpr double kTwoPi = 2 * kPi;

Spinor2 random_spinor(Rng& rng) {
  Vec2c z(complexd(rng.normal(), rng.normal()),
          complexd(rng.normal(), rng.normal()));
  z.normalize();
  return Spinor2(z);
}

DiracSpinor random_dirac(Rng& rng) {
  Vec2c u(complexd(rng.normal(), rng.normal()),
          complexd(rng.normal(), rng.normal()));
  Vec2c v(complexd(rng.normal(), rng.normal()),
          complexd(rng.normal(), rng.normal()));
  const complexd c = u.dot(v);
  v /= 2.0 * c;
  Vec4c psi;
  psi << u, v;
  return DiracSpinor(psi);
}

PhasePoint random_massive_base(const BundleId& b, Rng& rng) {
  const DiracSpinor psi = random_dirac(rng);
  return dirac_project(Vec3(rng.normal(), rng.normal(), rng.normal()), psi,
                       b.base.mass, b.base.spin);
}

TangentVector random_base_tangent(const PhasePoint& p, Rng& rng) {
  Eigen::VectorXd raw(p.coords.size());
  for (Eigen::Index i = 0; i < raw.size(); ++i) raw(i) = rng.normal();
  return project_tangent(p, raw);
}
}  // namespace

TEST(HopfProject, PinnedValues) {
  EXPECT_LT((hopf_project(Spinor2(1.0, 0.0)) - Vec3(0, 0, 1)).norm(), 1e-15);
  const double r = 1 / std::sqrt(2.0);
  EXPECT_LT((hopf_project(Spinor2(r, r)) - Vec3(1, 0, 0)).norm(), 1e-14);
}

TEST(HopfProject, FiberInvarianceAndUnitImage) {
  Rng rng(211);
  for (int k = 0; k < 25; ++k) {
    const Spinor2 xi = random_spinor(rng);
    const Vec3 x = hopf_project(xi);
    EXPECT_NEAR(x.norm(), 1.0, 1e-13);
    const double phi = rng.uniform(0, kTwoPi);
    const Vec3 y = hopf_project(xi.phase_multiplied(std::exp(complexd(0, phi))));
    EXPECT_LT((x - y).norm(), 1e-13);
  }
}

TEST(HopfProject, EquivariantUnderSu2) {
  Rng rng(223);
  for (int k = 0; k < 25; ++k) {
    const Spinor2 xi = random_spinor(rng);
    const SU2Element a = SU2Element::from_matrix(oracles::random_su2_matrix(rng));
    const Vec3 lhs = hopf_project(Spinor2(Vec2c(a.apply(xi.components()))));
    const Vec3 rhs = su2_to_so3(a).apply(hopf_project(xi));
    EXPECT_LT((lhs - rhs).norm(), 1e-12);
  }
}

TEST(DiracProject, RestConfiguration) {
  const auto [I, J] = dirac_observables(dirac_rest_spinor());
  EXPECT_LT((I - Vec4(1, 0, 0, 0)).norm(), 1e-14);
  EXPECT_LT((J - Vec4(0, 0, 0, 1)).norm(), 1e-14);
}

TEST(DiracProject, ConstraintsAndFiberInvariance) {
  Rng rng(227);
  for (int k = 0; k < 30; ++k) {
    const DiracSpinor psi = random_dirac(rng);
    const auto [I, J] = dirac_observables(psi);
    EXPECT_NEAR(minkowski_dot(I, I), 1.0, 1e-12);
    EXPECT_NEAR(minkowski_dot(J, J), -1.0, 1e-12);
    EXPECT_NEAR(minkowski_dot(I, J), 0.0, 1e-10);
    const auto [I2, J2] = dirac_observables(
        psi.phase_multiplied(std::exp(complexd(0, rng.uniform(0, kTwoPi)))));
    EXPECT_LT((I - I2).norm() + (J - J2).norm(), 1e-12);
  }
}

TEST(DiracProject, CovariantUnderDiracAction) {
  Rng rng(229);
  for (int k = 0; k < 20; ++k) {
    const DiracSpinor psi = random_dirac(rng);
    const SL2CElement a(oracles::random_sl2c_matrix(rng));
    const auto [I, J] = dirac_observables(psi);
    const auto [ature, Jt] =
        dirac_observables(DiracSpinor(a.apply_dirac(psi.components())));
    const Eigen::Matrix4d L = sl2c_to_lorentz(a).matrix();
    EXPECT_LT((ature - L * I).norm(), 1e-10);
    EXPECT_LT((Jt - L * J).norm(), 1e-10);
  }
}

TEST(DiracSection, ProjectsBack) {
  Rng rng(233);
  for (int k = 0; k < 20; ++k) {
    const DiracSpinor psi = random_dirac(rng);
    const auto [I, J] = dirac_observables(psi);
    const auto [I2, J2] = dirac_observables(dirac_section(I, J));
    EXPECT_LT((I - I2).norm() + (J - J2).norm(), 1e-10);
  }
}

TEST(Connection, VerticalGeneratorGivesN) {
  Rng rng(239);
  for (int n : {1, 2, 3, 5}) {
    const Spinor2 xi = random_spinor(rng);
    const BundlePoint p = hopf_point(n, xi);
    BundleTangent vertical{HopfTangent{complexd(0, 1) * xi.components()}};
    EXPECT_NEAR(connection_eval(p, vertical), n, 1e-12);
    BundleTangent zero{HopfTangent{Vec2c::Zero()}};
    EXPECT_NEAR(connection_eval(p, zero), 0.0, 1e-15);
  }
}

TEST(Connection, TrivialFiberDirectionGivesOne) {
  const Vec4 I(1, 0, 0, 0);
  const BundleId b = BundleId::trivial_u1(PhaseSpaceId::free_rel(1.0));
  const BundlePoint p =
      trivial_point(b, free_rel_point(1.0, Vec3(0.2, 0.1, -0.4), I), 0.7);
  BundleTangent w{TrivialTangent{Eigen::VectorXd::Zero(7), 1.0}};
  EXPECT_NEAR(connection_eval(p, w), 1.0, 1e-15);
}

TEST(Connection, DiracVerticalGeneratorGivesN) {
  Rng rng(241);
  for (int n : {1, 2, 4}) {
    const BundleId b = BundleId::dirac(n, 0.8);
    const DiracSpinor psi = random_dirac(rng);
    const BundlePoint p = dirac_point(b, Vec3(0.1, 0.2, 0.3), psi);
    BundleTangent vertical{
        DiracTangent{Vec3::Zero(), complexd(0, 1) * psi.components()}};
    EXPECT_NEAR(connection_eval(p, vertical), n, 1e-12);
  }
}

TEST(Connection, RejectsNonTangentInput) {
  Rng rng(251);
  const Spinor2 xi = random_spinor(rng);
  const BundlePoint p = hopf_point(1, xi);
  BundleTangent bad{HopfTangent{xi.components()}};  // radial, not tangent
  EXPECT_THROW(connection_eval(p, bad), DomainError);
}

TEST(Connection, InvariantUnderLiftedAction) {
  Rng rng(257);
  for (int k = 0; k < 20; ++k) {
    const int n = 1 + static_cast<int>(rng.next_u64() % 3);
    const Spinor2 xi = random_spinor(rng);
    const SU2Element a = SU2Element::from_matrix(oracles::random_su2_matrix(rng));
    Vec2c dxi(complexd(rng.normal(), rng.normal()),
              complexd(rng.normal(), rng.normal()));
    dxi -= xi.components() * xi.components().dot(dxi).real();
    const double before =
        connection_eval(hopf_point(n, xi), BundleTangent{HopfTangent{dxi}});
    const double after = connection_eval(
        hopf_point(n, Spinor2(Vec2c(a.apply(xi.components())))),
        BundleTangent{HopfTangent{a.matrix() * dxi}});
    EXPECT_NEAR(after, before, 1e-10);
  }
  // SL(2,C) rotations on the Dirac bundle act by quantomorphisms too
  for (int k = 0; k < 20; ++k) {
    const BundleId b = BundleId::dirac(2, 0.7);
    const DiracSpinor psi = random_dirac(rng);
    const SU2Element rot = SU2Element::from_matrix(oracles::random_su2_matrix(rng));
    const SL2CElement a = SL2CElement::from_su2(rot);
    const Vec3 x(rng.normal(), rng.normal(), rng.normal());
    Vec4c dpsi(complexd(rng.normal(), rng.normal()),
               complexd(rng.normal(), rng.normal()),
               complexd(rng.normal(), rng.normal()),
               complexd(rng.normal(), rng.normal()));
    // project onto the constraint tangent space
    const Vec2c u = psi.upper(), v = psi.lower();
    const complexd viol = dpsi.head<2>().dot(v) + u.dot(dpsi.tail<2>());
    dpsi.tail<2>() -= u * (std::conj(viol) / u.squaredNorm());
    Vec3 dx(rng.normal(), rng.normal(), rng.normal());
    const double before = connection_eval(dirac_point(b, x, psi),
                                          BundleTangent{DiracTangent{dx, dpsi}});
    const BundlePoint moved = lifted_group_action(a, dirac_point(b, x, psi));
    const double after = connection_eval(
        moved,
        BundleTangent{DiracTangent{su2_to_so3(rot).apply(dx),
                                   a.dirac_matrix() * dpsi}});
    EXPECT_NEAR(after, before, 1e-9);
  }
}

TEST(Curvature, MatchesSymplecticOnHopf) {
  Rng rng(263);
  for (int n : {1, 2}) {
    for (int k = 0; k < 25; ++k) {
      const Spinor2 xi = random_spinor(rng);
      const BundlePoint p = hopf_point(n, xi);
      const PhasePoint base = bundle_project(p);
      const auto [fd, sym] =
          curvature_matches_symplectic(p, random_base_tangent(base, rng),
                                       random_base_tangent(base, rng));
      EXPECT_NEAR(fd, sym, 1e-6 * (1 + std::abs(sym))) << "n=" << n;
    }
  }
}

TEST(Curvature, MatchesSymplecticOnTrivialBundles) {
  Rng rng(269);
  {
    const BundleId b = BundleId::trivial_u1(PhaseSpaceId::free_rel(1.4));
    for (int k = 0; k < 10; ++k) {
      const Vec3 i(rng.normal(), rng.normal(), rng.normal());
      Vec4 I;
      I << std::sqrt(1 + i.squaredNorm()), i;
      const PhasePoint base =
          free_rel_point(1.4, Vec3(rng.normal(), rng.normal(), rng.normal()), I);
      const BundlePoint p = trivial_point(b, base, rng.uniform(0, kTwoPi));
      const auto [fd, sym] =
          curvature_matches_symplectic(p, random_base_tangent(base, rng),
                                       random_base_tangent(base, rng));
      EXPECT_NEAR(fd, sym, 1e-7 * (1 + std::abs(sym)));
    }
  }
  {
    // the 2+1 bundle carries the hyperboloid potential for its spin term
    const BundleId b = BundleId::trivial_u1(PhaseSpaceId::three_d(0.9, 0.65));
    for (int k = 0; k < 10; ++k) {
      const Eigen::Vector2d i(rng.normal(), rng.normal());
      Eigen::Vector3d I;
      I << std::sqrt(1 + i.squaredNorm()), i;
      const PhasePoint base = three_d_point(
          0.9, 0.65, Eigen::Vector2d(rng.normal(), rng.normal()), I);
      const BundlePoint p = trivial_point(b, base, 0.0);
      const auto [fd, sym] =
          curvature_matches_symplectic(p, random_base_tangent(base, rng),
                                       random_base_tangent(base, rng));
      EXPECT_NEAR(fd, sym, 1e-6 * (1 + std::abs(sym)));
    }
  }
}

TEST(Curvature, MatchesSymplecticOnDirac) {
  Rng rng(271);
  const BundleId b = BundleId::dirac(2, 0.7);
  for (int k = 0; k < 25; ++k) {
    const DiracSpinor psi = random_dirac(rng);
    const BundlePoint p =
        dirac_point(b, Vec3(rng.normal(), rng.normal(), rng.normal()), psi);
    const PhasePoint base = bundle_project(p);
    const auto [fd, sym] = curvature_matches_symplectic(
        p, random_base_tangent(base, rng), random_base_tangent(base, rng));
    EXPECT_NEAR(fd, sym, 1e-5 * (1 + std::abs(sym)));
  }
}

TEST(Curvature, AnyonConnectionIsFlat) {
  const BundleId b = BundleId::anyon(0.9);
  const BundlePoint p =
      anyon_bundle_point(b, Eigen::Vector2d(0.2, 0.1),
                         Eigen::Vector2d(0.5, -0.3), 0.0, 0);
  const PhasePoint base = bundle_project(p);
  TangentVector u{base, Eigen::Vector4d(1, 0, 0, 0)};
  TangentVector v{base, Eigen::Vector4d(0, 0, 1, 0)};
  EXPECT_THROW(curvature_matches_symplectic(p, u, v), UnsupportedError);
}

TEST(Canonicalize, ZnOrbitReduction) {
  Rng rng(277);
  const Spinor2 xi = random_spinor(rng);
  // n = 1: identity
  EXPECT_TRUE(bundle_point_equal(znq_canonicalize(hopf_point(1, xi)),
                                 hopf_point(1, xi)));
  // n = 2: xi and -xi collapse
  EXPECT_TRUE(bundle_point_equal(hopf_point(2, xi),
                                 hopf_point(2, xi.phase_multiplied(-1.0))));
  // n = 3: all three roots collapse
  for (int r = 1; r < 3; ++r) {
    const complexd ph = std::exp(complexd(0, kTwoPi * r / 3));
    EXPECT_TRUE(bundle_point_equal(hopf_point(3, xi),
                                   hopf_point(3, xi.phase_multiplied(ph))));
  }
  // distinct fibers stay distinct
  EXPECT_FALSE(bundle_point_equal(
      hopf_point(3, xi),
      hopf_point(3, xi.phase_multiplied(std::exp(complexd(0, 0.4))))));
  // idempotent
  const BundlePoint c = znq_canonicalize(hopf_point(3, xi));
  EXPECT_TRUE(bundle_point_equal(c, znq_canonicalize(c)));
  EXPECT_THROW(znq_canonicalize(hopf0_point(Vec3(0, 0, 1), 0.3)), DomainError);
}

TEST(Canonicalize, AnyonDeckFolding) {
  const double alpha = 1.1;
  const BundleId b = BundleId::anyon(alpha);
  const BundlePoint p = anyon_bundle_point(
      b, Eigen::Vector2d(2.3, 0.4), Eigen::Vector2d(0.1, 0.2), 0.5, 0);
  const BundlePoint c = znq_canonicalize(p);
  EXPECT_NEAR(c.anyon().cover(0), 0.3, 1e-12);
  EXPECT_EQ(c.anyon().deck, 0);
  EXPECT_NEAR(c.anyon().phi, std::fmod(0.5 + 2 * alpha, kTwoPi), 1e-12);
  EXPECT_TRUE(bundle_point_equal(p, c));
}

TEST(PairClasses, FiberRelationCollapses) {
  Rng rng(281);
  for (int n : {1, 2, 3}) {
    const Spinor2 xi1 = random_spinor(rng);
    const Spinor2 xi2 = random_spinor(rng);
    const PairClass base(hopf_point(n, xi1), hopf_point(n, xi2));
    for (int k = 0; k < 8; ++k) {
      const double phi = rng.uniform(0, kTwoPi);
      const PairClass moved(
          hopf_point(n, xi1.phase_multiplied(std::exp(complexd(0, phi)))),
          hopf_point(n, xi2.phase_multiplied(std::exp(complexd(0, -phi)))));
      EXPECT_TRUE(pair_equal(base, moved)) << "n=" << n;
    }
    // the Z_n relations act slotwise
    const PairClass zn(hopf_point(n, xi1.phase_multiplied(
                                         std::exp(complexd(0, kTwoPi / n)))),
                       hopf_point(n, xi2));
    EXPECT_TRUE(pair_equal(base, zn));
  }
}

TEST(PairClasses, ResidualFiberActionMovesTheClass) {
  Rng rng(283);
  for (int n : {1, 2, 3}) {
    const Spinor2 xi1 = random_spinor(rng);
    const Spinor2 xi2 = random_spinor(rng);
    const PairClass base(hopf_point(n, xi1), hopf_point(n, xi2));
    // equal phases on both slots: nontrivial unless phi is a multiple of
    // pi/n (the kernel of the residual fiber action)
    const double phi = 0.7 * kPi / n;
    const PairClass moved(
        hopf_point(n, xi1.phase_multiplied(std::exp(complexd(0, phi)))),
        hopf_point(n, xi2.phase_multiplied(std::exp(complexd(0, phi)))));
    EXPECT_FALSE(pair_equal(base, moved)) << "n=" << n;
  }
}

TEST(PairClasses, CanonicalizeIsIdempotent) {
  Rng rng(293);
  for (int n : {1, 2, 3}) {
    const PairClass p(hopf_point(n, random_spinor(rng)),
                      hopf_point(n, random_spinor(rng)));
    const PairClass c = pair_canonicalize(p);
    EXPECT_TRUE(pair_equal(p, c));
    const PairClass cc = pair_canonicalize(c);
    EXPECT_LT((c.first.hopf().xi.components() - cc.first.hopf().xi.components())
                  .norm(),
              1e-12);
    EXPECT_LT(
        (c.second.hopf().xi.components() - cc.second.hopf().xi.components())
            .norm(),
        1e-12);
  }
}

TEST(PermutationLift, SquaresToIdentity) {
  Rng rng(307);
  for (int n : {1, 2, 3}) {
    const PairClass p(hopf_point(n, random_spinor(rng)),
                      hopf_point(n, random_spinor(rng)));
    for (int f : {0, 1}) {
      const PairClass twice = permutation_lift(permutation_lift(p, f), f);
      EXPECT_TRUE(pair_equal(p, twice)) << "n=" << n << " f=" << f;
    }
  }
}

TEST(PermutationLift, SignAbsorbedExactlyWhenNEven) {
  Rng rng(311);
  const Spinor2 xi1 = random_spinor(rng);
  const Spinor2 xi2 = random_spinor(rng);
  // n = 2: the Z_2 relation absorbs the sign, the two lifts coincide
  {
    const PairClass p(hopf_point(2, xi1), hopf_point(2, xi2));
    EXPECT_TRUE(pair_equal(permutation_lift(p, 0), permutation_lift(p, 1)));
  }
  // n = 1: they differ
  {
    const PairClass p(hopf_point(1, xi1), hopf_point(1, xi2));
    EXPECT_FALSE(pair_equal(permutation_lift(p, 0), permutation_lift(p, 1)));
  }
}

TEST(LiftedAction, CommutesWithProjection) {
  Rng rng(313);
  // Hopf
  for (int k = 0; k < 10; ++k) {
    const int n = 1 + static_cast<int>(rng.next_u64() % 3);
    const SU2Element a = SU2Element::from_matrix(oracles::random_su2_matrix(rng));
    const BundlePoint p = hopf_point(n, random_spinor(rng));
    const PhasePoint lhs = bundle_project(lifted_group_action(a, p));
    const PhasePoint rhs = apply_group(bundle_project(p), a);
    EXPECT_LT(chart_distance(lhs, rhs), 1e-9);
  }
  // Dirac with boosts and translations
  const BundleId b = BundleId::dirac(2, 0.7);
  for (int k = 0; k < 10; ++k) {
    const SL2CElement a(oracles::random_sl2c_matrix(rng));
    const Vec4 C(0, rng.normal(), rng.normal(), rng.normal());
    const GroupElement g = SpinPoincare4{a, C};
    const BundlePoint p = dirac_point(
        b, Vec3(rng.normal(), rng.normal(), rng.normal()), random_dirac(rng));
    const PhasePoint lhs = bundle_project(lifted_group_action(g, p));
    const PhasePoint rhs = apply_group(bundle_project(p), g);
    EXPECT_LT(chart_distance(lhs, rhs), 1e-9);
  }
  // anyon rotations and deck moves
  const BundleId ab = BundleId::anyon(0.8);
  for (int k = 0; k < 10; ++k) {
    const BundlePoint p = anyon_bundle_point(
        ab, Eigen::Vector2d(rng.uniform(-1, 1), rng.uniform(-1, 1)),
        Eigen::Vector2d(rng.normal(), rng.normal()), rng.uniform(0, kTwoPi), 0);
    const GroupElement rot = PlaneRotation{rng.uniform(0, kTwoPi)};
    EXPECT_LT(chart_distance(bundle_project(lifted_group_action(rot, p)),
                             apply_group(bundle_project(p), rot)),
              1e-9);
  }
}

TEST(LiftedAction, CommutesWithCanonicalization) {
  Rng rng(317);
  for (int n : {2, 3}) {
    const SU2Element a = SU2Element::from_matrix(oracles::random_su2_matrix(rng));
    const BundlePoint p = hopf_point(n, random_spinor(rng));
    const BundlePoint lhs = znq_canonicalize(lifted_group_action(a, p));
    const BundlePoint rhs = lifted_group_action(a, znq_canonicalize(p));
    EXPECT_TRUE(bundle_point_equal(lhs, rhs));
  }
}

TEST(LiftedAction, IdentityAndRotationPhases) {
  Rng rng(331);
  // identity fixes everything
  const BundlePoint p = hopf_point(2, random_spinor(rng));
  EXPECT_TRUE(bundle_point_equal(
      lifted_group_action(SU2Element::identity(), p), p));
  // a full turn multiplies the spinor by (-1)^n
  for (int n : {0, 1, 2, 3, 4, 5, 6}) {
    const SU2Element g = su2_exp(Vec3(0, 0, 1), kTwoPi, n / 2.0);
    if (n == 0) {
      const BundlePoint q = hopf0_point(rng.unit_vector3(), 0.4);
      const BundlePoint moved = lifted_group_action(g, q);
      EXPECT_TRUE(bundle_point_equal(q, moved));
      continue;
    }
    const Spinor2 xi = random_spinor(rng);
    const BundlePoint moved = lifted_group_action(g, hopf_point(n, xi));
    const complexd expected = n % 2 == 0 ? complexd(1, 0) : complexd(-1, 0);
    EXPECT_LT(std::abs(slot_phase(hopf_point(n, xi), moved) - expected), 1e-12);
  }
}

TEST(LiftedAction, AnyonDeckMultipliesPhaseByAlpha) {
  const double alpha = 0.9;
  const BundleId b = BundleId::anyon(alpha);
  const BundlePoint p = anyon_bundle_point(
      b, Eigen::Vector2d(0.25, -0.1), Eigen::Vector2d(0.3, 0.4), 0.2, 0);
  const BundlePoint moved = lifted_group_action(DeckTranslation{1}, p);
  EXPECT_NEAR(moved.anyon().cover(0), 1.25, 1e-12);
  // same quotient point, and the canonical phase advanced by alpha
  const complexd ph = slot_phase(p, moved);
  EXPECT_LT(std::abs(ph - std::exp(complexd(0, alpha))), 1e-12);
}

TEST(LiftedAction, GroupBundleMismatchRejected) {
  Rng rng(337);
  const BundlePoint p = hopf_point(1, random_spinor(rng));
  EXPECT_THROW(lifted_group_action(PlaneRotation{0.3}, p), DomainError);
}

TEST(FiberAction, StructurePhases) {
  Rng rng(347);
  const Spinor2 xi = random_spinor(rng);
  for (int n : {1, 2, 3}) {
    const BundlePoint p = hopf_point(n, xi);
    const double theta = rng.uniform(0, kTwoPi);
    const BundlePoint moved = fiber_action(theta, p);
    EXPECT_LT(std::abs(slot_phase(p, moved) -
                       std::exp(complexd(0, theta / n))),
              1e-12);
  }
}
