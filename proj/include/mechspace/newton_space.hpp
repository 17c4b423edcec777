#pragma once

// Invariant structure of the Newtonian mechanical space in coordinates
// (mx, mt, m): the orbit decomposition into hyperplanes M_m, E_mt and
// spheres S_md, the evaluation maps, space-time events and time.

#include <cmath>
#include <string>
#include <variant>

#include "mechspace/errors.hpp"
#include "mechspace/five_vector.hpp"
#include "mechspace/measure.hpp"

namespace mechspace::newton {

/// Whether [kg], [kgs] and E0 carry orientations.  Only the vector product
/// (internal angular momentum) needs one.
struct SpaceOrientation {
  bool oriented = false;
};

inline bool in_m0(const Vec5& p) { return std::fabs(p[4]) <= class_tolerance(p); }
inline bool in_e0(const Vec5& p) {
  const double tol = class_tolerance(p);
  return std::fabs(p[3]) <= tol && std::fabs(p[4]) <= tol;
}

/// m : (mx, mt, m) -> m
inline Quantity eval_m(const FiveVector& p) { return {p[4], dims::kg()}; }

/// mt : (mx, mt, 0) -> mt, defined on M0.
inline Quantity eval_mt(const FiveVector& p) {
  if (!in_m0(p.coords)) throw DomainError("mt is defined on M0 only (mass coordinate != 0)");
  return {p[3], dims::kgs()};
}

/// md : (mx, 0, 0) -> |mx|, defined on E0.
inline Quantity eval_md(const FiveVector& p) {
  if (!in_e0(p.coords)) throw DomainError("md is defined on E0 only");
  return {p.coords.head<3>().norm(), dim_abs(dims::kgm())};
}

/// Euclidean scalar product on E0 obtained from md by polarization.
inline Quantity scalar_product(const FiveVector& v, const FiveVector& w) {
  if (!in_e0(v.coords) || !in_e0(w.coords))
    throw DomainError("scalar product is defined on E0 only");
  const Quantity plus = eval_md(v + w);
  const Quantity minus = eval_md(v - w);
  return 0.25 * (plus * plus - minus * minus);
}

struct HyperplaneM {
  Quantity mass;
};
struct HyperplaneE {
  Quantity mass_time;
};
struct SphereS {
  Quantity mass_distance;
};
struct Origin {};

using OrbitClass = std::variant<HyperplaneM, HyperplaneE, SphereS, Origin>;

inline OrbitClass classify_orbit(const FiveVector& p) {
  const double tol = class_tolerance(p.coords);
  if (std::fabs(p[4]) > tol) return HyperplaneM{{p[4], dims::kg()}};
  if (std::fabs(p[3]) > tol) return HyperplaneE{{p[3], dims::kgs()}};
  const double md = p.coords.head<3>().norm();
  if (md > tol) return SphereS{{md, dim_abs(dims::kgm())}};
  return Origin{};
}

inline std::string describe(const OrbitClass& c) {
  struct {
    std::string operator()(const HyperplaneM& h) const {
      return "class=HyperplaneM m=" + format_double(h.mass.magnitude());
    }
    std::string operator()(const HyperplaneE& h) const {
      return "class=HyperplaneE mt=" + format_double(h.mass_time.magnitude());
    }
    std::string operator()(const SphereS& s) const {
      return "class=SphereS md=" + format_double(s.mass_distance.magnitude());
    }
    std::string operator()(const Origin&) const { return "class=Origin"; }
  } visitor;
  return std::visit(visitor, c);
}

/// A point of Galilei space-time M, stored as its representative (x, t, 1).
class Event {
 public:
  explicit Event(const FiveVector& p) : p_(p) {
    if (p.coords[4] != 1.0) throw DomainError("event representative needs fifth coordinate 1");
  }
  Event(const Vec3& x, double t, std::string frame = kStandardFrame)
      : p_(x[0], x[1], x[2], t, 1.0, std::move(frame)) {}

  const FiveVector& vector() const { return p_; }
  Vec3 position() const { return p_.coords.head<3>(); }
  double time() const { return p_.coords[3]; }

 private:
  FiveVector p_;
};

/// A point of V(1), stored as (v, 1, 0).
class FourVelocity {
 public:
  explicit FourVelocity(const Vec3& v, std::string frame = kStandardFrame)
      : p_(v[0], v[1], v[2], 1.0, 0.0, std::move(frame)) {}
  explicit FourVelocity(const FiveVector& p) : p_(p) {
    if (p.coords[3] != 1.0 || p.coords[4] != 0.0)
      throw DomainError("four-velocity representative must be (v, 1, 0)");
  }

  const FiveVector& vector() const { return p_; }
  Vec3 velocity() const { return p_.coords.head<3>(); }

 private:
  FiveVector p_;
};

/// u(p) = p / m(p)
inline Event eval_u(const FiveVector& p) {
  if (std::fabs(p[4]) <= class_tolerance(p.coords)) throw ZeroMass("u needs nonzero mass");
  Vec5 c = p.coords / p[4];
  c[4] = 1.0;
  return Event(FiveVector(c, p.frame));
}

/// tau : (mx, mt, m) -> t
inline Quantity eval_tau(const FiveVector& p) {
  if (std::fabs(p[4]) <= class_tolerance(p.coords)) throw ZeroMass("tau needs nonzero mass");
  return {p[3] / p[4], dims::second()};
}

inline constexpr double kTolSync = 1e-9;

/// Distance between two simultaneous events.
inline Quantity synchronous_distance(const Event& a, const Event& b) {
  if (std::fabs(a.time() - b.time()) > kTolSync * std::max(1.0, std::fabs(a.time())))
    throw NotSynchronous("events are not simultaneous");
  return {(a.position() - b.position()).norm(), dims::metre()};
}

}  // namespace mechspace::newton
