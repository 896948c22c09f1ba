#include "prequant/algebra.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "prequant/errors.hpp"
#include "prequant/rng.hpp"

using namespace prequant;

namespace {
const Vec3 kZ(0, 0, 1);
constexpr double kPi = 3.141592653589793238463;
}  // namespace

TEST(GammaAlgebra, CliffordRelations) {
  const Eigen::Matrix4d eta = Eigen::Vector4d(1, -1, -1, -1).asDiagonal();
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      const Mat4c anti =
          gamma_mu(mu) * gamma_mu(nu) + gamma_mu(nu) * gamma_mu(mu);
      EXPECT_TRUE(anti.isApprox(2.0 * eta(mu, nu) * Mat4c::Identity(), 1e-15))
          << "mu=" << mu << " nu=" << nu;
    }
}

TEST(GammaAlgebra, Gamma5BlockForm) {
  Mat4c expected = Mat4c::Zero();
  expected(0, 0) = expected(1, 1) = 1;
  expected(2, 2) = expected(3, 3) = -1;
  EXPECT_TRUE(gamma5().isApprox(expected, 1e-15));
}

TEST(Su2Exp, ZeroAngleIsIdentity) {
  Rng rng(11);
  for (int k = 0; k < 5; ++k) {
    const SU2Element a = su2_exp(rng.unit_vector3(), 0.0, 0.5 * (k % 4));
    EXPECT_TRUE(a.matrix().isApprox(Mat2c::Identity(), 1e-15));
  }
}

TEST(Su2Exp, FullTurnAtSpinHalfIsMinusOne) {
  const SU2Element a = su2_exp(kZ, 2 * kPi, 0.5);
  EXPECT_TRUE(a.matrix().isApprox(-Mat2c::Identity(), 1e-12));
}

TEST(Su2Exp, HalfTurnAtSpinHalf) {
  // power-series oracle for exp(-i (pi/2) sigma_z) = -i sigma_z
  const SU2Element a = su2_exp(kZ, kPi, 0.5);
  const Mat2c expected =
      oracles::expm_power_series(Mat2c(complexd(0, -kPi / 2) * pauli(3)));
  EXPECT_LT((a.matrix() - expected).norm(), 1e-12);
  EXPECT_LT((a.matrix() - Mat2c(complexd(0, -1) * pauli(3))).norm(), 1e-12);
}

TEST(Su2Exp, MatchesPowerSeriesExponential) {
  Rng rng(17);
  for (int k = 0; k < 40; ++k) {
    const Vec3 axis = rng.unit_vector3();
    const double angle = rng.uniform(0.0, 4 * kPi);
    const double s = 0.5 * static_cast<double>(rng.next_u64() % 4);
    Mat2c gen = Mat2c::Zero();
    for (int i = 0; i < 3; ++i) gen += axis(i) * pauli(i + 1);
    const Mat2c expected =
        oracles::expm_power_series(Mat2c(complexd(0, -s * angle) * gen));
    EXPECT_LT((su2_exp(axis, angle, s).matrix() - expected).norm(), 1e-10);
  }
}

TEST(Su2Exp, RejectsBadInput) {
  EXPECT_THROW(su2_exp(Vec3(0, 0, 2), 1.0, 0.5), DomainError);
  EXPECT_THROW(su2_exp(kZ, -0.5, 0.5), DomainError);
  EXPECT_THROW(su2_exp(kZ, 1.0, 0.3), DomainError);
}

TEST(Su2ToSo3, IdentityAndCenter) {
  EXPECT_TRUE(su2_to_so3(SU2Element::identity())
                  .matrix()
                  .isApprox(Eigen::Matrix3d::Identity(), 1e-14));
  // the map is two-to-one: -1 also covers the identity rotation
  EXPECT_TRUE(su2_to_so3(SU2Element::identity().negated())
                  .matrix()
                  .isApprox(Eigen::Matrix3d::Identity(), 1e-14));
}

TEST(Su2ToSo3, AxisAngleAgreesWithRodrigues) {
  Rng rng(23);
  for (int k = 0; k < 30; ++k) {
    const Vec3 axis = rng.unit_vector3();
    const double angle = rng.uniform(0.0, 2 * kPi);
    const SO3Element O = su2_to_so3(su2_exp(axis, angle, 0.5));
    EXPECT_LT((O.matrix() - oracles::rodrigues(axis, angle)).norm(), 1e-12);
  }
}

TEST(Su2ToSo3, MatchesTraceFormula) {
  // O^{ij} = 1/2 Tr(a^dag sigma^i a sigma^j)
  Rng rng(29);
  for (int k = 0; k < 20; ++k) {
    const SU2Element a =
        SU2Element::from_matrix(oracles::random_su2_matrix(rng));
    const Eigen::Matrix3d O = su2_to_so3(a).matrix();
    for (int i = 1; i <= 3; ++i)
      for (int j = 1; j <= 3; ++j) {
        const Mat2c prod =
            a.matrix().adjoint() * pauli(i) * a.matrix() * pauli(j);
        EXPECT_NEAR(O(i - 1, j - 1), 0.5 * prod.trace().real(), 1e-12);
      }
  }
}

TEST(Su2ToSo3, Homomorphism) {
  Rng rng(31);
  for (int k = 0; k < 100; ++k) {
    const SU2Element a = SU2Element::from_matrix(oracles::random_su2_matrix(rng));
    const SU2Element b = SU2Element::from_matrix(oracles::random_su2_matrix(rng));
    const Eigen::Matrix3d lhs = su2_to_so3(a * b).matrix();
    const Eigen::Matrix3d rhs =
        su2_to_so3(a).matrix() * su2_to_so3(b).matrix();
    EXPECT_LT((lhs - rhs).norm(), 1e-9);
  }
}

TEST(Su2ToSo3, KernelIsPlusMinusOne) {
  Rng rng(37);
  int kernel_hits = 0;
  for (int k = 0; k < 200; ++k) {
    const SU2Element a = SU2Element::from_matrix(oracles::random_su2_matrix(rng));
    const bool covers_identity =
        (su2_to_so3(a).matrix() - Eigen::Matrix3d::Identity()).norm() < 1e-9;
    const bool is_center = a.approx_equal(SU2Element::identity(), 1e-9) ||
                           a.approx_equal(SU2Element::identity().negated(), 1e-9);
    EXPECT_EQ(covers_identity, is_center);
    if (covers_identity) ++kernel_hits;
  }
  EXPECT_EQ(kernel_hits, 0);  // random elements never hit the center
  EXPECT_TRUE((su2_to_so3(SU2Element::identity().negated()).matrix() -
               Eigen::Matrix3d::Identity())
                  .norm() < 1e-14);
}

TEST(Sl2cToLorentz, IdentityAndCenter) {
  EXPECT_TRUE(sl2c_to_lorentz(SL2CElement::identity())
                  .matrix()
                  .isApprox(Eigen::Matrix4d::Identity(), 1e-14));
  EXPECT_TRUE(sl2c_to_lorentz(SL2CElement::identity().negated())
                  .matrix()
                  .isApprox(Eigen::Matrix4d::Identity(), 1e-14));
}

TEST(Sl2cToLorentz, BoostAgreesWithOracle) {
  Rng rng(41);
  for (int k = 0; k < 20; ++k) {
    const Vec3 dir = rng.unit_vector3();
    const double eta = rng.uniform(-1.5, 1.5);
    const LorentzElement L = sl2c_to_lorentz(SL2CElement::boost(dir, eta));
    EXPECT_LT((L.matrix() - oracles::boost_matrix(dir, eta)).norm(), 1e-12);
    EXPECT_NEAR(L.matrix()(0, 0), std::cosh(eta), 1e-12);
  }
}

TEST(Sl2cToLorentz, PreservesMetricAndHomomorphism) {
  Rng rng(43);
  const Eigen::Matrix4d eta = Eigen::Vector4d(1, -1, -1, -1).asDiagonal();
  for (int k = 0; k < 100; ++k) {
    const SL2CElement a(oracles::random_sl2c_matrix(rng));
    const SL2CElement b(oracles::random_sl2c_matrix(rng));
    const Eigen::Matrix4d La = sl2c_to_lorentz(a).matrix();
    EXPECT_LT((La.transpose() * eta * La - eta).norm(), 1e-9);
    const Eigen::Matrix4d lhs = sl2c_to_lorentz(a * b).matrix();
    const Eigen::Matrix4d rhs = La * sl2c_to_lorentz(b).matrix();
    EXPECT_LT((lhs - rhs).norm(), 1e-9);
  }
}

TEST(Sl2cToLorentz, TwoToOne) {
  Rng rng(47);
  for (int k = 0; k < 20; ++k) {
    const SL2CElement a(oracles::random_sl2c_matrix(rng));
    EXPECT_LT((sl2c_to_lorentz(a).matrix() -
               sl2c_to_lorentz(a.negated()).matrix())
                  .norm(),
              1e-10);
  }
}

TEST(Sl2cToLorentz, RestrictsToRotationsOnSu2) {
  Rng rng(53);
  for (int k = 0; k < 20; ++k) {
    const SU2Element a = SU2Element::from_matrix(oracles::random_su2_matrix(rng));
    const Eigen::Matrix4d L =
        sl2c_to_lorentz(SL2CElement::from_su2(a)).matrix();
    EXPECT_NEAR(L(0, 0), 1.0, 1e-12);
    const double mixing =
        L.block(1, 0, 3, 1).norm() + L.block(0, 1, 1, 3).norm();
    EXPECT_LT(mixing, 1e-12);
    EXPECT_LT((L.block(1, 1, 3, 3) - su2_to_so3(a).matrix()).norm(), 1e-12);
  }
}

TEST(Spinors, UnitNormEnforced) {
  EXPECT_NO_THROW(Spinor2(1.0, 0.0));
  EXPECT_THROW(Spinor2(1.0, 0.5), DomainError);
}

TEST(Spinors, DiracConstraintsEnforced) {
  const Vec4c good(1 / std::sqrt(2.0), 0, 1 / std::sqrt(2.0), 0);
  EXPECT_NO_THROW(DiracSpinor{good});
  EXPECT_THROW(DiracSpinor{Vec4c(1, 0, 0, 0)}, DomainError);
  // psibar psi invariant under the Dirac action
  Rng rng(59);
  DiracSpinor psi(good);
  for (int k = 0; k < 10; ++k) {
    const SL2CElement a(oracles::random_sl2c_matrix(rng));
    EXPECT_NO_THROW(DiracSpinor{a.apply_dirac(psi.components())});
  }
}

TEST(Quaternions, LongCompositionStaysUnitary) {
  Rng rng(61);
  SU2Element acc = SU2Element::identity();
  for (int k = 0; k < 20000; ++k)
    acc = acc * su2_exp(rng.unit_vector3(), rng.uniform(0, 0.1), 0.5);
  SU2Element::check_invariants(acc.matrix(), Tolerances{});
}
