#pragma once

// Invariant structure of the Einsteinian mechanical space in coordinates
// (mx^mu, m), signature (+++-) with index 3 the time axis.

#include <array>
#include <cmath>
#include <string>
#include <utility>
#include <variant>

#include "mechspace/errors.hpp"
#include "mechspace/five_vector.hpp"
#include "mechspace/groups.hpp"
#include "mechspace/measure.hpp"

namespace mechspace::einstein {

inline bool in_m0(const Vec5& p) { return std::fabs(p[4]) <= class_tolerance(p); }

inline Vec4 spacetime_part(const FiveVector& p) { return p.coords.head<4>(); }

/// Generalized Lorentz form on M0, valued in [kgm]^2 (negative on timelike
/// vectors).
inline Quantity lorentz_product(const FiveVector& v, const FiveVector& w) {
  if (!in_m0(v.coords) || !in_m0(w.coords))
    throw DomainError("Lorentz product is defined on M0 only");
  return {minkowski(spacetime_part(v), spacetime_part(w)), dim_pow(dims::kgm(), 2)};
}

enum class Sheet { future, past };

struct HyperplaneM {
  Quantity mass;
};
/// mt is signed: positive on the future sheet, negative on the past one.
struct HyperboloidH {
  Quantity mass_time;
  Sheet sheet;
};
struct QuadricS {
  Quantity mass_distance;
};
struct LightCone {};
struct Origin {};

using CausalClass = std::variant<HyperplaneM, HyperboloidH, QuadricS, LightCone, Origin>;

inline double null_tolerance(const Vec4& x) {
  const double s = std::max(1.0, max_abs(x));
  return 1e-9 * s * s;
}

inline CausalClass classify_causal(const FiveVector& p) {
  const double tol = class_tolerance(p.coords);
  if (std::fabs(p[4]) > tol) return HyperplaneM{{p[4], dims::kg()}};
  const Vec4 x = spacetime_part(p);
  if (max_abs(x) <= tol) return Origin{};
  const double q = minkowski(x, x);
  if (std::fabs(q) <= null_tolerance(x)) return LightCone{};
  if (q < 0.0) {
    const double mt = std::sqrt(-q);
    return x[3] > 0.0 ? HyperboloidH{{mt, dims::kgs()}, Sheet::future}
                      : HyperboloidH{{-mt, dims::kgs()}, Sheet::past};
  }
  return QuadricS{{std::sqrt(q), dim_abs(dims::kgm())}};
}

inline std::string describe(const CausalClass& c) {
  struct {
    std::string operator()(const HyperplaneM& h) const {
      return "class=HyperplaneM m=" + format_double(h.mass.magnitude());
    }
    std::string operator()(const HyperboloidH& h) const {
      return std::string("class=HyperboloidH mt=") + format_double(h.mass_time.magnitude()) +
             " sheet=" + (h.sheet == Sheet::future ? "future" : "past");
    }
    std::string operator()(const QuadricS& s) const {
      return "class=QuadricS md=" + format_double(s.mass_distance.magnitude());
    }
    std::string operator()(const LightCone&) const { return "class=LightCone"; }
    std::string operator()(const Origin&) const { return "class=Origin"; }
  } visitor;
  return std::visit(visitor, c);
}

inline Quantity eval_m(const FiveVector& p) { return {p[4], dims::kg()}; }

/// mt on timelike (or lightlike, value 0) vectors of M0, signed by sheet.
inline Quantity eval_mt(const FiveVector& p) {
  if (!in_m0(p.coords)) throw DomainError("mt is defined on M0 only");
  const Vec4 x = spacetime_part(p);
  const double q = minkowski(x, x);
  if (std::fabs(q) <= null_tolerance(x)) return {0.0, dims::kgs()};
  if (q > 0.0) throw DomainError("mt is defined on timelike vectors only");
  return {std::copysign(std::sqrt(-q), x[3]), dims::kgs()};
}

/// md on spacelike (or lightlike, value 0) vectors of M0.
inline Quantity eval_md(const FiveVector& p) {
  if (!in_m0(p.coords)) throw DomainError("md is defined on M0 only");
  const Vec4 x = spacetime_part(p);
  const double q = minkowski(x, x);
  if (std::fabs(q) <= null_tolerance(x)) return {0.0, dim_abs(dims::kgm())};
  if (q < 0.0) throw DomainError("md is defined on spacelike vectors only");
  return {std::sqrt(q), dim_abs(dims::kgm())};
}

/// c = |c1| = |c2| in |[m]/[s]|; exactly 1 in every inertial frame.
inline Quantity speed_of_light() {
  return {1.0, dim_abs(dims::metre() / dims::second())};
}

/// Outcome of the light-cone reflection construction in a Lorentzian plane.
struct LightReflection {
  Vec4 timelike_unit;  // h with mt(h) = 1, future
  Vec4 image_first;    // R1 h: fixes the first light line, negates the second
  Vec4 image_second;   // R2 h
  double speed;        // md(R1 h) / mt(h)
  double residual;     // max(|speed - 1|, |<R1h,R1h> - 1|, |R1 h + R2 h|)
};

/// The two light lines of the plane spanned by a, b determine reflections
/// carrying the unit-mt point of the plane to the unit-md points.
inline LightReflection light_reflection(const Vec4& a, const Vec4& b) {
  const double A = minkowski(a, a), C = minkowski(a, b), B = minkowski(b, b);
  const double disc = C * C - A * B;
  if (!(disc > 0.0)) throw DomainError("plane is not Lorentzian");
  const double q = -(C + std::copysign(std::sqrt(disc), C));
  // Null directions: B a + q b and q a + A b.
  Vec4 n1 = B * a + q * b;
  Vec4 n2 = q * a + A * b;
  if (n1[3] < 0.0) n1 = -n1;
  if (n2[3] < 0.0) n2 = -n2;
  const Vec4 s = n1 + n2;
  const double k = 1.0 / std::sqrt(-minkowski(s, s));
  LightReflection r;
  r.timelike_unit = k * s;
  r.image_first = k * (n1 - n2);
  r.image_second = k * (n2 - n1);
  const double mt = std::sqrt(-minkowski(r.timelike_unit, r.timelike_unit));
  const double md2 = minkowski(r.image_first, r.image_first);
  const double md = std::sqrt(std::max(0.0, md2));
  r.speed = md / mt;
  r.residual = std::max({std::fabs(r.speed - 1.0), std::fabs(md2 - 1.0),
                         max_abs(r.image_first + r.image_second)});
  return r;
}

/// Event of Minkowski space-time stored as (x^mu, 1).
class Event {
 public:
  explicit Event(const FiveVector& p) : p_(p) {
    if (p.coords[4] != 1.0) throw DomainError("event representative needs fifth coordinate 1");
  }
  explicit Event(const Vec4& x, std::string frame = kStandardFrame)
      : p_(x[0], x[1], x[2], x[3], 1.0, std::move(frame)) {}

  const FiveVector& vector() const { return p_; }
  Vec4 position() const { return p_.coords.head<4>(); }

 private:
  FiveVector p_;
};

inline Event eval_u(const FiveVector& p) {
  if (std::fabs(p[4]) <= class_tolerance(p.coords)) throw ZeroMass("u needs nonzero mass");
  Vec5 c = p.coords / p[4];
  c[4] = 1.0;
  return Event(FiveVector(c, p.frame));
}

enum class Separation { spacelike, lightlike, timelike };

/// Lorentz norm of a - b.  Spacelike values live in [m]; timelike ones are
/// returned as |[s]| values.
struct Interval {
  Separation kind;
  Quantity value;
};

inline Interval spacetime_distance(const Event& a, const Event& b) {
  const Vec4 d = a.position() - b.position();
  const double q = minkowski(d, d);
  if (std::fabs(q) <= 1e-12 * std::max(1.0, d.squaredNorm()))
    return {max_abs(d) == 0.0 ? Separation::spacelike : Separation::lightlike,
            {0.0, dims::metre()}};
  if (q > 0.0) return {Separation::spacelike, {std::sqrt(q), dims::metre()}};
  return {Separation::timelike, {std::sqrt(-q), dim_abs(dims::second())}};
}

/// A spacelike three-dimensional subspace E of M0 together with its unit
/// future normal.
class SpacelikeSubspace {
 public:
  static constexpr double kTol = 1e-10;

  SpacelikeSubspace(const std::array<Vec4, 3>& basis, const Vec4& normal)
      : basis_(basis), normal_(normal) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j)
        if (std::fabs(minkowski(basis_[i], basis_[j]) - (i == j ? 1.0 : 0.0)) > kTol)
          throw DomainError("subspace basis is not Lorentz-orthonormal");
      if (std::fabs(minkowski(basis_[i], normal_)) > kTol)
        throw DomainError("subspace basis is not orthogonal to the normal");
    }
    if (std::fabs(minkowski(normal_, normal_) + 1.0) > kTol || normal_[3] <= 0.0)
      throw DomainError("normal must be a future unit timelike vector");
  }

  /// E = span(e1, e2, e3) of the standard frame.
  static SpacelikeSubspace standard() {
    return {{Vec4::UnitX(), Vec4::UnitY(), Vec4::UnitZ()}, Vec4::UnitW()};
  }

  /// The image of the standard subspace under a Lorentz transformation.
  static SpacelikeSubspace transformed(const Mat4& l) {
    return {{l.col(0), l.col(1), l.col(2)}, l.col(3)};
  }

  const std::array<Vec4, 3>& basis() const { return basis_; }
  const Vec4& normal() const { return normal_; }

  /// Components of P_E(v) in the adapted basis.
  Vec3 coordinates(const Vec4& v) const {
    return {minkowski(v, basis_[0]), minkowski(v, basis_[1]), minkowski(v, basis_[2])};
  }

  /// Signed time coordinate -<v, n>.
  double time_coordinate(const Vec4& v) const { return -minkowski(v, normal_); }

 private:
  std::array<Vec4, 3> basis_;
  Vec4 normal_;
};

/// (P_E v, P_E^perp v); the two parts sum to v.
inline std::pair<Vec4, Vec4> orthogonal_projections(const SpacelikeSubspace& e, const Vec4& v) {
  const Vec4 perp = e.time_coordinate(v) * e.normal();
  return {v - perp, perp};
}

/// Gamma_E(v) = P_E(v) / |P_E^perp(v)|, Gamma_E(0) = 0.  In the standard
/// frame this is (x, t) -> x / |t|.
inline VectorQuantity<3> cayley_map(const SpacelikeSubspace& e, const FiveVector& v) {
  if (!in_m0(v.coords)) throw DomainError("Cayley map is defined on M0 only");
  const Vec4 x = spacetime_part(v);
  VectorQuantity<3> r{Vec3::Zero(), dims::metre() / dims::second()};
  if (max_abs(x) == 0.0) return r;
  const double t = e.time_coordinate(x);
  if (std::fabs(t) <= 1e-15 * max_abs(x)) throw OnEPlane("Cayley map undefined on E");
  r.value = e.coordinates(x) / std::fabs(t);
  return r;
}

/// Future unit four-velocity with three-velocity `beta` (|beta| < 1).
inline Vec4 four_velocity(const Vec3& beta) {
  const double b2 = beta.squaredNorm();
  if (!(b2 < 1.0)) throw DomainError("three-velocity must be below the speed of light");
  const double gamma = 1.0 / std::sqrt(1.0 - b2);
  return {gamma * beta[0], gamma * beta[1], gamma * beta[2], gamma};
}

inline Vec4 four_velocity_from_rapidity(const Vec3& direction, double rapidity) {
  const Vec3 n = direction.normalized();
  const double sh = std::sinh(rapidity);
  return {sh * n[0], sh * n[1], sh * n[2], std::cosh(rapidity)};
}

/// Geodesic distance on V(1) (hyperboloid model), computed as
/// 2 asinh(|u - w| / 2), equal to arccosh(-<u, w>).
inline double hyperbolic_distance(const Vec4& u, const Vec4& w) {
  const Vec4 d = u - w;
  return 2.0 * std::asinh(std::sqrt(std::max(0.0, minkowski(d, d))) / 2.0);
}

/// Distance of the Beltrami-Klein ball for points with |x|, |y| < 1.
inline double klein_distance(const Vec3& x, const Vec3& y) {
  const double num = 1.0 - x.dot(y);
  const double den = std::sqrt((1.0 - x.squaredNorm()) * (1.0 - y.squaredNorm()));
  return std::acosh(std::max(1.0, num / den));
}

}  // namespace mechspace::einstein
