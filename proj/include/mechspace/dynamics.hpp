#pragma once

// Pointlike particles as sampled curves in M_m, their kinematic functions,
// force fields and the equations of motion.

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mechspace/einstein_space.hpp"
#include "mechspace/errors.hpp"
#include "mechspace/five_vector.hpp"
#include "mechspace/measure.hpp"
#include "mechspace/newton_space.hpp"

namespace mechspace {

enum class Flavor { newton, einstein };

inline std::string_view flavor_name(Flavor f) {
  return f == Flavor::newton ? "newton" : "einstein";
}

inline Flavor parse_flavor(std::string_view s) {
  if (s == "newton" || s == "n" || s == "newtonian" || s == "galilei") return Flavor::newton;
  if (s == "einstein" || s == "e" || s == "einsteinian" || s == "poincare")
    return Flavor::einstein;
  throw DomainError("unknown flavor '" + std::string(s) + "'");
}

/// Uniformly sampled particle f : I -> M_m.  Sample i sits at parameter
/// t0 + i h.  Momenta are kept when the trajectory was produced by
/// integration; otherwise they are recovered by finite differences.
class Trajectory {
 public:
  static constexpr double kTol = 1e-9;

  Trajectory(Flavor flavor, double mass, double t0, double h, std::vector<Vec5> points,
             std::string frame = kStandardFrame, std::vector<Vec5> momenta = {})
      : flavor_(flavor),
        mass_(mass),
        t0_(t0),
        h_(h),
        points_(std::move(points)),
        momenta_(std::move(momenta)),
        frame_(std::move(frame)) {
    if (mass_ == 0.0 || !std::isfinite(mass_)) throw ZeroMass("particle mass must be nonzero");
    if (!(h_ > 0.0)) throw DomainError("sample step must be positive");
    if (points_.empty()) throw TooFewSamples("trajectory has no samples");
    if (!momenta_.empty() && momenta_.size() != points_.size())
      throw DomainError("momentum samples do not match point samples");
    const double mtol = kTol * std::fabs(mass_);
    for (std::size_t i = 0; i < points_.size(); ++i) {
      const Vec5& p = points_[i];
      if (std::fabs(p[4] - mass_) > mtol)
        throw DomainError("sample " + std::to_string(i) + " leaves the mass hyperplane");
      if (flavor_ == Flavor::newton &&
          std::fabs(p[3] / p[4] - parameter(i)) > kTol * std::max(1.0, std::fabs(parameter(i))))
        throw DomainError("sample " + std::to_string(i) + " is not at time equal to its parameter");
    }
  }

  Flavor flavor() const { return flavor_; }
  double mass() const { return mass_; }
  Quantity mass_quantity() const { return {mass_, dims::kg()}; }
  double step() const { return h_; }
  double t_begin() const { return t0_; }
  double t_end() const { return parameter(points_.size() - 1); }
  double parameter(std::size_t i) const { return t0_ + double(i) * h_; }
  std::size_t size() const { return points_.size(); }
  const std::vector<Vec5>& points() const { return points_; }
  const std::vector<Vec5>& momenta() const { return momenta_; }
  bool has_momenta() const { return !momenta_.empty(); }
  const std::string& frame() const { return frame_; }

  bool contains(double t) const {
    const double slack = 1e-12 * std::max(1.0, std::fabs(t));
    return t >= t_begin() - slack && t <= t_end() + slack;
  }

 private:
  Flavor flavor_;
  double mass_;
  double t0_;
  double h_;
  std::vector<Vec5> points_;
  std::vector<Vec5> momenta_;
  std::string frame_;
};

namespace detail {

/// Fourth-order first derivative of uniformly spaced samples.
inline std::vector<Vec5> differentiate(const std::vector<Vec5>& f, double h) {
  const std::size_t n = f.size();
  std::vector<Vec5> d(n);
  const double k = 1.0 / (12.0 * h);
  for (std::size_t i = 2; i + 2 < n; ++i)
    d[i] = k * (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]);
  d[0] = k * (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]);
  d[1] = k * (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]);
  const std::size_t e = n - 1;
  d[e] = -k * (-25.0 * f[e] + 48.0 * f[e - 1] - 36.0 * f[e - 2] + 16.0 * f[e - 3] -
               3.0 * f[e - 4]);
  d[e - 1] = -k * (-3.0 * f[e] - 10.0 * f[e - 1] + 18.0 * f[e - 2] - 6.0 * f[e - 3] +
                   f[e - 4]);
  return d;
}

/// Cubic Lagrange interpolation through the four samples around t.
inline Vec5 interpolate(const std::vector<Vec5>& f, double t0, double h, double t) {
  const std::size_t n = f.size();
  const double s = (t - t0) / h;
  const double nearest = std::round(s);
  if (std::fabs(s - nearest) < 1e-12 && nearest >= 0.0 && nearest <= double(n - 1))
    return f[std::size_t(nearest)];
  if (n < 4) throw TooFewSamples("interpolation needs at least 4 samples");
  const auto base = std::size_t(std::clamp(std::floor(s) - 1.0, 0.0, double(n - 4)));
  Vec5 r = Vec5::Zero();
  for (std::size_t j = 0; j < 4; ++j) {
    double w = 1.0;
    for (std::size_t k = 0; k < 4; ++k)
      if (k != j) w *= (s - double(base + k)) / (double(j) - double(k));
    r += w * f[base + j];
  }
  return r;
}

}  // namespace detail

struct Kinematics {
  std::vector<Vec5> momentum;      // p = f'
  std::vector<Vec5> velocity;      // v = p / m
  std::vector<Vec5> force;         // F = p'
  std::vector<Vec5> acceleration;  // a = F / m
};

inline Kinematics derive_kinematics(const Trajectory& f) {
  if (f.size() < 5) throw TooFewSamples("kinematics need at least 5 samples");
  Kinematics k;
  k.momentum = detail::differentiate(f.points(), f.step());
  k.force = detail::differentiate(k.momentum, f.step());
  const double inv = 1.0 / f.mass();
  for (const Vec5& p : k.momentum) k.velocity.push_back(inv * p);
  for (const Vec5& a : k.force) k.acceleration.push_back(inv * a);
  return k;
}

/// Momentum at sample i: stored if available, otherwise differentiated.
inline std::vector<Vec5> momentum_samples(const Trajectory& f) {
  return f.has_momenta() ? f.momenta() : derive_kinematics(f).momentum;
}

/// F(x, p).  An evaluator returns std::nullopt for states outside the
/// field's domain.
struct ForceField {
  using Evaluator = std::function<std::optional<Vec5>(const Vec5& point, const Vec5& momentum)>;

  Flavor flavor = Flavor::newton;
  std::string name = "zero";
  Evaluator evaluate;
  bool serial = false;
};

namespace fields {

namespace detail {

/// Force with spatial part `s`; relativistic fields are projected to the
/// Lorentz-orthogonal complement of p.
inline Vec5 spatial_force(Flavor flavor, const Vec3& s, const Vec5& p) {
  Vec5 out = Vec5::Zero();
  out.head<3>() = s;
  if (flavor == Flavor::einstein) {
    const Vec4 p4 = p.head<4>();
    const Vec4 f4 = out.head<4>();
    out.head<4>() = f4 - (minkowski(f4, p4) / minkowski(p4, p4)) * p4;
  }
  return out;
}

}  // namespace detail

inline ForceField zero(Flavor flavor) {
  return {flavor, "zero", [](const Vec5&, const Vec5&) -> std::optional<Vec5> {
            return Vec5::Zero();
          }};
}

/// F = -k x with x the spatial place f / m.
inline ForceField isotropic_oscillator(Flavor flavor, double k) {
  return {flavor, "isotropic-oscillator",
          [flavor, k](const Vec5& f, const Vec5& p) -> std::optional<Vec5> {
            const Vec3 x = f.head<3>() / f[4];
            return detail::spatial_force(flavor, -k * x, p);
          }};
}

/// F = -kappa x / |x|^3, undefined at x = 0.
inline ForceField inverse_square(Flavor flavor, double kappa) {
  return {flavor, "inverse-square",
          [flavor, kappa](const Vec5& f, const Vec5& p) -> std::optional<Vec5> {
            const Vec3 x = f.head<3>() / f[4];
            const double r = x.norm();
            if (r == 0.0) return std::nullopt;
            return detail::spatial_force(flavor, (-kappa / (r * r * r)) * x, p);
          }};
}

/// F = lambda (p2, -p1, 0, 0): rotation in the 1-2 plane, orthogonal to p
/// for either signature.
inline ForceField antisymmetric(Flavor flavor, double lambda) {
  return {flavor, "antisymmetric-relativistic",
          [lambda](const Vec5&, const Vec5& p) -> std::optional<Vec5> {
            Vec5 out = Vec5::Zero();
            out[0] = lambda * p[1];
            out[1] = -lambda * p[0];
            return out;
          }};
}

}  // namespace fields

namespace detail {

inline Vec5 checked_force(const ForceField& field, const Vec5& f, const Vec5& p) {
  const std::optional<Vec5> r = field.evaluate(f, p);
  if (!r) throw FieldDomainError("force field '" + field.name + "' rejects the state");
  const Vec5& F = *r;
  if (!F.allFinite()) throw FieldDomainError("force field '" + field.name + "' is not finite");
  if (field.flavor == Flavor::newton) {
    if (F[3] != 0.0 || F[4] != 0.0)
      throw FieldDomainError("Newtonian force must lie in E0");
  } else {
    if (F[4] != 0.0) throw FieldDomainError("Einsteinian force must lie in M0");
    const double tol = 1e-8 * std::max(1.0, max_abs(F) * max_abs(p));
    if (std::fabs(minkowski(F.head<4>(), p.head<4>())) > tol)
      throw FieldDomainError("Einsteinian force is not Lorentz-orthogonal to the momentum");
  }
  return F;
}

inline void check_initial_data(Flavor flavor, const Vec5& f0, const Vec5& p0) {
  const double m = f0[4];
  if (m == 0.0 || !std::isfinite(m)) throw BadInitialData("initial point has zero mass");
  if (!f0.allFinite() || !p0.allFinite()) throw BadInitialData("initial data not finite");
  const double tol = Trajectory::kTol * std::max(1.0, std::fabs(m));
  if (std::fabs(p0[4]) > tol)
    throw BadInitialData("initial momentum must have zero mass component");
  if (flavor == Flavor::newton) {
    if (std::fabs(p0[3] - m) > tol)
      throw BadInitialData("initial condition m0 = mt(f'(t0)) violated");
  } else {
    const Vec4 p = p0.head<4>();
    const double q = minkowski(p, p);
    if (std::fabs(std::sqrt(std::max(0.0, -q)) - std::fabs(m)) > tol)
      throw BadInitialData("initial momentum off the mass shell ||f'|| = m");
    if (p[3] / m <= 0.0)
      throw BadInitialData("initial four-velocity p/m is not future-pointing");
  }
}

}  // namespace detail

/// Fixed-step classical Runge-Kutta for f' = p, p' = F(f, p); n steps of
/// size h, n + 1 samples.
inline Trajectory integrate(const ForceField& field, const FiveVector& initial_point,
                            const FiveVector& initial_momentum, double h, std::size_t n) {
  if (!(h > 0.0)) throw DomainError("integration step must be positive");
  if (initial_point.frame != initial_momentum.frame)
    throw FrameMismatch("initial point and momentum are given in different frames");
  const Flavor flavor = field.flavor;
  Vec5 f = initial_point.coords;
  Vec5 p = initial_momentum.coords;
  detail::check_initial_data(flavor, f, p);
  const double m = f[4];
  p[4] = 0.0;
  if (flavor == Flavor::newton) p[3] = m;

  std::vector<Vec5> points{f}, momenta{p};
  points.reserve(n + 1);
  momenta.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec5 k1f = p;
    const Vec5 k1p = detail::checked_force(field, f, p);
    const Vec5 k2f = p + 0.5 * h * k1p;
    const Vec5 k2p = detail::checked_force(field, f + 0.5 * h * k1f, k2f);
    const Vec5 k3f = p + 0.5 * h * k2p;
    const Vec5 k3p = detail::checked_force(field, f + 0.5 * h * k2f, k3f);
    const Vec5 k4f = p + h * k3p;
    const Vec5 k4p = detail::checked_force(field, f + h * k3f, k4f);
    f += (h / 6.0) * (k1f + 2.0 * k2f + 2.0 * k3f + k4f);
    p += (h / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    if (flavor == Flavor::einstein) {
      const double q = -minkowski(p.head<4>(), p.head<4>());
      if (!(q > 0.0)) throw FieldDomainError("momentum left the timelike cone");
      p.head<4>() *= std::fabs(m) / std::sqrt(q);
    }
    points.push_back(f);
    momenta.push_back(p);
  }
  const double t0 = flavor == Flavor::newton ? initial_point.coords[3] / m : 0.0;
  return Trajectory(flavor, m, t0, h, std::move(points), initial_point.frame, std::move(momenta));
}

/// Elapsed parameter between two instants of a trajectory, in |[s]|.
inline Quantity proper_time(const Trajectory& f, double a, double b) {
  if (!f.contains(a) || !f.contains(b))
    throw OutOfInterval("instant outside the trajectory's parameter interval");
  return {std::fabs(a - b), dim_abs(dims::second())};
}

struct Aggregate {
  FiveVector center_of_mass;
  FiveVector total_momentum;
  std::optional<VectorQuantity<3>> angular_momentum;  // only in oriented spaces
};

namespace detail {

inline void check_ensemble(const std::vector<Trajectory>& fs, double t) {
  if (fs.empty()) throw DomainError("aggregate needs at least one particle");
  for (const Trajectory& f : fs) {
    if (f.flavor() != Flavor::newton) throw DomainError("aggregates are Newtonian only");
    if (f.frame() != fs.front().frame())
      throw FrameMismatch("particles are given in different frames");
    if (!f.contains(t)) throw OutOfInterval("instant outside a particle's interval");
  }
}

}  // namespace detail

/// J = sum_{i<j} (m_j f_i - m_i f_j)/(m_i + m_j) x (f_i/m_i - f_j/m_j)'.
inline VectorQuantity<3> internal_angular_momentum(const std::vector<Trajectory>& fs, double t,
                                                   newton::SpaceOrientation orientation) {
  detail::check_ensemble(fs, t);
  if (!orientation.oriented)
    throw NotOriented("internal angular momentum needs an oriented Newtonian space");
  std::vector<Vec3> x, v;
  std::vector<double> m;
  for (const Trajectory& f : fs) {
    const Vec5 q = detail::interpolate(f.points(), f.t_begin(), f.step(), t);
    const Vec5 p = detail::interpolate(momentum_samples(f), f.t_begin(), f.step(), t);
    m.push_back(f.mass());
    x.push_back(q.head<3>() / f.mass());
    v.push_back(p.head<3>() / f.mass());
  }
  VectorQuantity<3> j{Vec3::Zero(), dims::kgm() * dims::metre() / dims::second()};
  for (std::size_t a = 0; a < fs.size(); ++a)
    for (std::size_t b = a + 1; b < fs.size(); ++b) {
      const double mu = m[a] * m[b] / (m[a] + m[b]);
      j.value += mu * (x[a] - x[b]).cross(v[a] - v[b]);
    }
  return j;
}

inline Aggregate aggregate(const std::vector<Trajectory>& fs, double t,
                           newton::SpaceOrientation orientation = {}) {
  detail::check_ensemble(fs, t);
  Aggregate r;
  r.center_of_mass.frame = r.total_momentum.frame = fs.front().frame();
  for (const Trajectory& f : fs) {
    r.center_of_mass.coords += detail::interpolate(f.points(), f.t_begin(), f.step(), t);
    r.total_momentum.coords +=
        detail::interpolate(momentum_samples(f), f.t_begin(), f.step(), t);
  }
  if (orientation.oriented) r.angular_momentum = internal_angular_momentum(fs, t, orientation);
  return r;
}

}  // namespace mechspace
