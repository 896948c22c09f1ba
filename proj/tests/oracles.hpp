#pragma once

// Test-only oracles, independent of the library code paths they check.

#include <Eigen/Core>
#include <cmath>
#include <complex>

#include "prequant/rng.hpp"

namespace oracles {

/// Matrix exponential by scaled-and-squared power series.
template <typename Mat>
Mat expm_power_series(Mat a) {
  int squarings = 0;
  while (a.norm() > 0.5) {
    a /= 2.0;
    ++squarings;
  }
  Mat term = Mat::Identity();
  Mat sum = Mat::Identity();
  for (int k = 1; k < 40; ++k) {
    term = (term * a) / static_cast<double>(k);
    sum += term;
    if (term.norm() < 1e-18) break;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

/// Axis-angle rotation matrix straight from the Rodrigues formula.
inline Eigen::Matrix3d rodrigues(const Eigen::Vector3d& axis, double angle) {
  Eigen::Matrix3d k;
  k << 0, -axis(2), axis(1), axis(2), 0, -axis(0), -axis(1), axis(0), 0;
  return Eigen::Matrix3d::Identity() + std::sin(angle) * k +
         (1 - std::cos(angle)) * k * k;
}

/// Standard boost matrix along a unit direction.
inline Eigen::Matrix4d boost_matrix(const Eigen::Vector3d& dir,
                                    double rapidity) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  const double ch = std::cosh(rapidity), sh = std::sinh(rapidity);
  m(0, 0) = ch;
  for (int i = 0; i < 3; ++i) {
    m(0, i + 1) = sh * dir(i);
    m(i + 1, 0) = sh * dir(i);
    for (int j = 0; j < 3; ++j) m(i + 1, j + 1) += (ch - 1) * dir(i) * dir(j);
  }
  return m;
}

/// Random SU(2) matrix via a random unit quaternion.
inline Eigen::Matrix2cd random_su2_matrix(prequant::Rng& rng) {
  Eigen::Vector4d q(rng.normal(), rng.normal(), rng.normal(), rng.normal());
  q.normalize();
  Eigen::Matrix2cd m;
  const std::complex<double> i{0, 1};
  m(0, 0) = q(0) - i * q(3);
  m(0, 1) = -q(2) - i * q(1);
  m(1, 0) = q(2) - i * q(1);
  m(1, 1) = q(0) + i * q(3);
  return m;
}

/// Random SL(2,C) matrix: exp of a random traceless complex matrix.
inline Eigen::Matrix2cd random_sl2c_matrix(prequant::Rng& rng, double scale = 0.7) {
  Eigen::Matrix2cd a;
  const std::complex<double> i{0, 1};
  const std::complex<double> d{rng.normal() * scale, rng.normal() * scale};
  a(0, 0) = d;
  a(1, 1) = -d;
  a(0, 1) = std::complex<double>(rng.normal(), rng.normal()) * scale;
  a(1, 0) = std::complex<double>(rng.normal(), rng.normal()) * scale;
  (void)i;
  return expm_power_series(a);
}

}  // namespace oracles
