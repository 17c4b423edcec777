#pragma once

#include <string>
#include <utility>

#include "mechspace/groups.hpp"
#include "mechspace/linalg.hpp"

namespace mechspace {

inline const std::string kStandardFrame = "standard";

/// Element of the five-dimensional mechanical space expressed in an inertial
/// frame.  Newtonian layout (mx, mt, m); Einsteinian layout (mx^mu, m).
struct FiveVector {
  Vec5 coords = Vec5::Zero();
  std::string frame = kStandardFrame;

  FiveVector() = default;
  explicit FiveVector(const Vec5& c, std::string f = kStandardFrame)
      : coords(c), frame(std::move(f)) {}
  FiveVector(double x1, double x2, double x3, double x4, double x5,
             std::string f = kStandardFrame)
      : frame(std::move(f)) {
    coords << x1, x2, x3, x4, x5;
  }

  double operator[](int i) const { return coords[i]; }
  double mass_coord() const { return coords[4]; }
  bool is_finite() const { return coords.allFinite(); }
};

inline FiveVector operator+(const FiveVector& a, const FiveVector& b) {
  return FiveVector(a.coords + b.coords, a.frame);
}
inline FiveVector operator-(const FiveVector& a, const FiveVector& b) {
  return FiveVector(a.coords - b.coords, a.frame);
}
inline FiveVector operator*(double s, const FiveVector& a) {
  return FiveVector(s * a.coords, a.frame);
}

/// Active transformation inside the vector's own frame.
template <GroupElement G>
FiveVector apply(const G& g, const FiveVector& p) {
  return FiveVector(apply(g, p.coords), p.frame);
}

/// Scale-aware tolerance used for orbit boundary decisions.
inline double class_tolerance(const Vec5& p) { return 1e-9 * std::max(1.0, max_abs(p)); }

}  // namespace mechspace
