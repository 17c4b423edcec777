#pragma once

#include <cmath>
#include <cstdio>
#include <string>

#include <Eigen/Dense>

#include "mechspace/measure.hpp"

namespace mechspace {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Vec5 = Eigen::Matrix<double, 5, 1>;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using Mat5 = Eigen::Matrix<double, 5, 5>;

/// Minkowski metric with signature (+++-); index 3 is time.
inline Mat4 minkowski_metric() {
  return Eigen::Vector4d(1.0, 1.0, 1.0, -1.0).asDiagonal();
}

inline double minkowski(const Vec4& a, const Vec4& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] - a[3] * b[3];
}

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.cwiseAbs().maxCoeff();
}

/// A vector of N components in a single measure line.
template <int N>
struct VectorQuantity {
  Eigen::Matrix<double, N, 1> value = Eigen::Matrix<double, N, 1>::Zero();
  Dimension dim;
};

/// Fixed 17 significant digits; round-trips every double.
inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace mechspace
