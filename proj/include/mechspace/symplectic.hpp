#pragma once

// The manifold F_m of timelike lines in M_m, its generalized symplectic form
// and the action of the (extended) symmetry groups on it.
//
// Both flavors store a line by a four-velocity u and an offset q in the
// (x, t) coordinates of an event; the line is {m (q + s u) : s real} in M_m.
//   Newtonian:   u = (w, 1), q = (q, 0)   (q is the place at t = 0)
//   Einsteinian: <u, u> = -1, u_4 > 0, <q, u> = 0.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mechspace/dynamics.hpp"
#include "mechspace/errors.hpp"
#include "mechspace/groups.hpp"
#include "mechspace/measure.hpp"
#include "mechspace/random.hpp"

namespace mechspace::symplectic {

inline constexpr double kTolTangent = 1e-10;

struct LinePoint {
  Flavor flavor = Flavor::newton;
  double mass = 1.0;
  Vec4 velocity = Vec4::UnitW();
  Vec4 offset = Vec4::Zero();
  std::string frame = kStandardFrame;

  Vec3 three_velocity() const { return velocity.head<3>(); }
};

struct TangentPair {
  Vec4 dv = Vec4::Zero();
  Vec4 dq = Vec4::Zero();
};

/// Value line of omega: [kgm] [m] / [s].
inline Dimension omega_dimension() { return dims::kgm() * dims::metre() / dims::second(); }

namespace detail {

inline Vec4 future_unit(const Vec4& d) {
  const double q = -minkowski(d, d);
  if (!(q > 0.0)) throw NotTimelike("direction is not timelike");
  const Vec4 u = d / std::sqrt(q);
  return u[3] < 0.0 ? Vec4(-u) : u;
}

/// Orthogonal projection onto the Lorentz complement of the unit timelike u.
inline Vec4 project(const Vec4& q, const Vec4& u) { return q + minkowski(q, u) * u; }

}  // namespace detail

inline void validate(const LinePoint& x) {
  if (x.mass == 0.0 || !std::isfinite(x.mass)) throw ZeroMass("line point needs nonzero mass");
  const double tol = kTolTangent * std::max(1.0, max_abs(x.velocity) * max_abs(x.offset));
  if (x.flavor == Flavor::newton) {
    if (x.velocity[3] != 1.0) throw DomainError("Newtonian four-velocity must have mt = 1");
    if (x.offset[3] != 0.0) throw DomainError("Newtonian offset must lie at t = 0");
  } else {
    if (std::fabs(minkowski(x.velocity, x.velocity) + 1.0) > kTolTangent * max_abs(x.velocity) ||
        x.velocity[3] <= 0.0)
      throw DomainError("Einsteinian four-velocity must be a future unit vector");
    if (std::fabs(minkowski(x.offset, x.velocity)) > tol)
      throw DomainError("Einsteinian offset must be orthogonal to the four-velocity");
  }
}

inline LinePoint newton_line(double mass, const Vec3& w, const Vec3& q,
                             std::string frame = kStandardFrame) {
  LinePoint x{Flavor::newton, mass, {w[0], w[1], w[2], 1.0}, {q[0], q[1], q[2], 0.0},
              std::move(frame)};
  validate(x);
  return x;
}

/// Line with four-velocity u through the event y.
inline LinePoint einstein_line(double mass, const Vec4& u, const Vec4& y,
                               std::string frame = kStandardFrame) {
  const Vec4 uu = detail::future_unit(u);
  LinePoint x{Flavor::einstein, mass, uu, detail::project(y, uu), std::move(frame)};
  validate(x);
  return x;
}

inline void check_tangent(const LinePoint& x, const TangentPair& t) {
  const double tol = kTolTangent * std::max(1.0, max_abs(t.dv) * max_abs(x.velocity));
  if (x.flavor == Flavor::newton) {
    if (std::fabs(t.dv[3]) > tol || std::fabs(t.dq[3]) > tol)
      throw TangencyViolation("Newtonian tangent must keep mt = 1 and t = 0");
  } else if (std::fabs(minkowski(t.dv, x.velocity)) > tol) {
    throw TangencyViolation("velocity variation is not tangent to V(1)");
  }
}

/// omega_m((dv1, dq1), (dv2, dq2)) = m (<dv1, dq2> - <dv2, dq1>).
inline Quantity omega(const LinePoint& x, const TangentPair& u1, const TangentPair& u2) {
  check_tangent(x, u1);
  check_tangent(x, u2);
  const double w = x.mass * (minkowski(u1.dv, u2.dq) - minkowski(u2.dv, u1.dq));
  return {w, omega_dimension()};
}

/// The line through the images of two of its points, in canonical form.
template <GroupElement G>
LinePoint act_on_line(const G& g, const LinePoint& x) {
  const bool newton_group = G::family == Family::galilei || G::family == Family::extended_galilei;
  if (newton_group != (x.flavor == Flavor::newton))
    throw DomainError("group does not act on this flavor of line");
  const Mat5 mat = g.matrix();
  Vec5 p0, p1;
  p0 << x.mass * x.offset, x.mass;
  p1 << x.mass * (x.offset + x.velocity), x.mass;
  const Vec5 q0 = mat * p0, q1 = mat * p1;
  const double m = q0[4];
  if (m == 0.0) throw ZeroMass("image line has zero mass");
  const Vec4 y = q0.head<4>() / m;
  const Vec4 d = (q1 - q0).head<4>() / m;

  LinePoint r{x.flavor, m, Vec4::Zero(), Vec4::Zero(), x.frame};
  if (x.flavor == Flavor::newton) {
    if (std::fabs(d[3]) <= 1e-14 * max_abs(d)) throw NotTimelike("image line lies in E");
    r.velocity = d / d[3];
    r.velocity[3] = 1.0;
    r.offset = y - y[3] * r.velocity;
    r.offset[3] = 0.0;
  } else {
    r.velocity = detail::future_unit(d);
    r.offset = detail::project(y, r.velocity);
  }
  return r;
}

/// Curve through x with initial velocity t, staying on F_m.
inline LinePoint retract(const LinePoint& x, const TangentPair& t, double eps) {
  LinePoint r = x;
  if (x.flavor == Flavor::newton) {
    r.velocity += eps * t.dv;
    r.offset += eps * t.dq;
    r.velocity[3] = 1.0;
    r.offset[3] = 0.0;
  } else {
    r.velocity = detail::future_unit(x.velocity + eps * t.dv);
    r.offset = detail::project(x.offset + eps * t.dq, r.velocity);
  }
  return r;
}

/// Makes a tangent exact at x by removing the finite-difference component
/// normal to V(1).
inline TangentPair tangent_part(const LinePoint& x, TangentPair t) {
  if (x.flavor == Flavor::newton) {
    t.dv[3] = 0.0;
    t.dq[3] = 0.0;
  } else {
    t.dv = detail::project(t.dv, x.velocity);
  }
  return t;
}

inline constexpr double kStepCoarse = 1e-4;
inline constexpr double kStepFine = 5e-5;

/// Richardson-extrapolated central difference of eps -> map(retract(x, t, eps)).
template <typename Map>
auto directional_derivative(const Map& map, const LinePoint& x, const TangentPair& t) {
  auto central = [&](double h) {
    return ((map(retract(x, t, h)) - map(retract(x, t, -h))) / (2.0 * h)).eval();
  };
  return ((4.0 * central(kStepFine) - central(kStepCoarse)) / 3.0).eval();
}

inline Eigen::Matrix<double, 8, 1> coordinates(const LinePoint& x) {
  Eigen::Matrix<double, 8, 1> c;
  c << x.velocity, x.offset;
  return c;
}

/// Tangent map of the action of g at x.
template <GroupElement G>
TangentPair pushforward(const G& g, const LinePoint& x, const TangentPair& t) {
  const LinePoint gx = act_on_line(g, x);
  const auto d = directional_derivative(
      [&g](const LinePoint& y) { return coordinates(act_on_line(g, y)); }, x, t);
  return tangent_part(gx, {d.template head<4>(), d.template tail<4>()});
}

// ---------------------------------------------------------------------------
// Random data

inline LinePoint random_line(Rng& rng, Flavor flavor, double mass) {
  if (flavor == Flavor::newton) return newton_line(mass, rng.vec3(1.0), rng.vec3(1.0));
  const Vec4 u = einstein::four_velocity_from_rapidity(rng.direction(), rng.uniform(0.0, 1.5));
  return einstein_line(mass, u, rng.vec4(1.0));
}

/// Random tangent vector at x (the offset variation also preserves <q,u> = 0).
inline TangentPair random_tangent(Rng& rng, const LinePoint& x) {
  TangentPair t{rng.vec4(1.0), rng.vec4(1.0)};
  if (x.flavor == Flavor::newton) {
    t.dv[3] = 0.0;
    t.dq[3] = 0.0;
  } else {
    t.dv = detail::project(t.dv, x.velocity);
    t.dq = detail::project(t.dq, x.velocity) + minkowski(x.offset, t.dv) * x.velocity;
  }
  return t;
}

/// Typical size of the terms of omega(x, u1, u2), used as the reference in
/// relative residuals.
inline double omega_scale(const LinePoint& x, const TangentPair& u1, const TangentPair& u2) {
  return std::fabs(x.mass) *
         std::max(1e-300, u1.dv.norm() * u2.dq.norm() + u2.dv.norm() * u1.dq.norm());
}

// ---------------------------------------------------------------------------
// Induced action on the value line and the Hamiltonian chart

/// The scalar g~ by which an extended element multiplies the value line of
/// omega: alpha^2 / beta for the extended Galilei group, the space-time
/// factor for the extended Poincare group.
inline double value_line_factor(const ExtendedGalileiElement& g) {
  const GalileiScale s = factorize(g).scale;
  return s.space * s.space / s.time;
}
inline double value_line_factor(const ExtendedPoincareElement& g) {
  return factorize(g).scale.spacetime;
}
inline double value_line_factor(const GalileiElement&) { return 1.0; }
inline double value_line_factor(const PoincareElement&) { return 1.0; }

inline double mass_factor(const ExtendedGalileiElement& g) { return g.e; }
inline double mass_factor(const ExtendedPoincareElement& g) { return g.b; }
inline double mass_factor(const GalileiElement&) { return 1.0; }
inline double mass_factor(const PoincareElement&) { return 1.0; }

/// Canonical chart (v, Pi) on F_m with omega = <dv1, dPi2> - <dv2, dPi1>.
/// Pi / m is the place where the line meets t = 0; v is the spatial part of
/// the four-velocity.
inline Eigen::Matrix<double, 6, 1> chart(const LinePoint& x) {
  Eigen::Matrix<double, 6, 1> z;
  const Vec3 v = x.three_velocity();
  const Vec3 place = x.offset.head<3>() - (x.offset[3] / x.velocity[3]) * v;
  z << v, x.mass * place;
  return z;
}

inline LinePoint from_chart(Flavor flavor, double mass, const Eigen::Matrix<double, 6, 1>& z) {
  const Vec3 v = z.head<3>();
  const Vec3 place = z.tail<3>() / mass;
  if (flavor == Flavor::newton) return newton_line(mass, v, place);
  const Vec4 u(v[0], v[1], v[2], std::sqrt(1.0 + v.squaredNorm()));
  return einstein_line(mass, u, Vec4(place[0], place[1], place[2], 0.0));
}

enum class Hamiltonian { newton, einstein_standard, einstein_printed };

inline std::string_view hamiltonian_name(Hamiltonian h) {
  switch (h) {
    case Hamiltonian::newton: return "m|v|^2/2";
    case Hamiltonian::einstein_standard: return "sqrt(m^2c^4+m^2c^2|v|^2)";
    case Hamiltonian::einstein_printed: return "sqrt(m^2c^4+m^2|v|^4)";
  }
  return "";
}

/// H_m in the chart (c = 1).  The relativistic candidates carry the sign of
/// m so that they reduce to the Newtonian one at small |v|.
inline double hamiltonian(Hamiltonian h, double m, const Vec3& v) {
  const double v2 = v.squaredNorm();
  switch (h) {
    case Hamiltonian::newton: return 0.5 * m * v2;
    case Hamiltonian::einstein_standard: return std::copysign(std::sqrt(m * m + m * m * v2), m);
    case Hamiltonian::einstein_printed: return std::copysign(std::sqrt(m * m + m * m * v2 * v2), m);
  }
  return 0.0;
}

/// X_H from iota_X omega = dH: X = (dH/dPi, -dH/dv), gradients by central
/// differences.
inline Eigen::Matrix<double, 6, 1> hamiltonian_vector_field(Hamiltonian h, double m,
                                                            const Eigen::Matrix<double, 6, 1>& z) {
  constexpr double step = 1e-5;
  Eigen::Matrix<double, 6, 1> grad;
  for (int i = 0; i < 6; ++i) {
    Eigen::Matrix<double, 6, 1> a = z, b = z;
    a[i] += step;
    b[i] -= step;
    grad[i] = (hamiltonian(h, m, a.head<3>()) - hamiltonian(h, m, b.head<3>())) / (2.0 * step);
  }
  Eigen::Matrix<double, 6, 1> x;
  x << grad.tail<3>(), -grad.head<3>();
  return x;
}

/// RK4 flow of X_H for time T with step h.
inline Eigen::Matrix<double, 6, 1> hamiltonian_flow(Hamiltonian h, double m,
                                                    Eigen::Matrix<double, 6, 1> z, double T,
                                                    double step) {
  const auto n = std::size_t(std::llround(T / step));
  const double dt = T / double(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto k1 = hamiltonian_vector_field(h, m, z);
    const auto k2 = hamiltonian_vector_field(h, m, z + 0.5 * dt * k1);
    const auto k3 = hamiltonian_vector_field(h, m, z + 0.5 * dt * k2);
    const auto k4 = hamiltonian_vector_field(h, m, z + dt * k3);
    z += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return z;
}

/// Time translation by T along the fourth axis.
inline LinePoint time_translate(const LinePoint& x, double T) {
  if (x.flavor == Flavor::newton)
    return act_on_line(GalileiElement::shift(Vec3::Zero(), T), x);
  return act_on_line(PoincareElement::shift(Vec4(0.0, 0.0, 0.0, T)), x);
}

}  // namespace mechspace::symplectic
