#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "mechspace/linalg.hpp"

namespace mechspace {

/// Seeded source of the random draws used by every property sweep.  The
/// conversions from raw 64-bit words are written out here (instead of using
/// the <random> distributions) so streams are identical across standard
/// library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double unit() { return double(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  /// Magnitude uniform in [lo, hi], random sign.
  double signed_magnitude(double lo, double hi) {
    const double m = uniform(lo, hi);
    return (engine_() & 1u) ? m : -m;
  }

  int sign() { return (engine_() & 1u) ? 1 : -1; }

  Vec3 vec3(double scale) {
    return {uniform(-scale, scale), uniform(-scale, scale), uniform(-scale, scale)};
  }

  Vec4 vec4(double scale) {
    return {uniform(-scale, scale), uniform(-scale, scale), uniform(-scale, scale),
            uniform(-scale, scale)};
  }

  Vec5 vec5(double scale) {
    Vec5 v;
    for (int i = 0; i < 5; ++i) v[i] = uniform(-scale, scale);
    return v;
  }

  /// Uniform direction on the unit sphere.
  Vec3 direction() {
    const double z = uniform(-1.0, 1.0);
    const double phi = uniform(0.0, 2.0 * std::numbers::pi);
    const double r = std::sqrt(1.0 - z * z);
    return {r * std::cos(phi), r * std::sin(phi), z};
  }

  /// Haar-uniform rotation from a uniformly distributed unit quaternion.
  Mat3 rotation() {
    const double u1 = unit(), u2 = unit(), u3 = unit();
    const double a = std::sqrt(1.0 - u1), b = std::sqrt(u1);
    const double tau = 2.0 * std::numbers::pi;
    const Eigen::Quaterniond q(b * std::cos(tau * u3), a * std::sin(tau * u2),
                               a * std::cos(tau * u2), b * std::sin(tau * u3));
    return q.normalized().toRotationMatrix();
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mechspace
