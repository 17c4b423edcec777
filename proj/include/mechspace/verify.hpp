#pragma once

// Seeded property sweeps over every module.  Each sweep returns a Report
// whose text form is byte-stable for a fixed seed.

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mechspace/dynamics.hpp"
#include "mechspace/einstein_space.hpp"
#include "mechspace/groups.hpp"
#include "mechspace/measure.hpp"
#include "mechspace/newton_space.hpp"
#include "mechspace/random.hpp"
#include "mechspace/symplectic.hpp"

namespace mechspace::verify {

struct Check {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = true;
};

struct Verdict {
  std::string name;
  bool value = false;
  bool expected = false;
};

struct Report {
  Report() = default;
  Report(std::string name, std::uint64_t s, std::size_t n)
      : suite(std::move(name)), seed(s), trials(n) {}

  std::string suite;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::vector<Check> checks;
  std::vector<Verdict> verdicts;
  std::vector<std::pair<std::string, std::string>> notes;

  void check(const std::string& name, double residual, double tolerance) {
    checks.push_back({name, residual, tolerance, residual <= tolerance});
  }
  void verdict(const std::string& name, bool value, bool expected) {
    verdicts.push_back({name, value, expected});
  }
  void note(const std::string& key, const std::string& value) { notes.emplace_back(key, value); }

  double max_residual() const {
    double r = 0.0;
    for (const Check& c : checks) r = std::isnan(c.residual) ? c.residual : std::max(r, c.residual);
    return r;
  }

  bool pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; }) &&
           std::all_of(verdicts.begin(), verdicts.end(),
                       [](const Verdict& v) { return v.value == v.expected; });
  }

  void merge(const Report& other, const std::string& prefix) {
    for (Check c : other.checks) {
      c.name = prefix + c.name;
      checks.push_back(std::move(c));
    }
    for (Verdict v : other.verdicts) {
      v.name = prefix + v.name;
      verdicts.push_back(std::move(v));
    }
    for (auto [k, v] : other.notes) notes.emplace_back(prefix + k, v);
  }

  std::string text() const {
    std::ostringstream os;
    os << "suite = " << suite << "\n";
    os << "seed = " << seed << "\n";
    os << "trials = " << trials << "\n";
    for (const Check& c : checks) {
      os << c.name << ".max_residual = " << format_double(c.residual) << "\n";
      os << c.name << ".tolerance = " << format_double(c.tolerance) << "\n";
      os << c.name << ".pass = " << (c.pass ? "true" : "false") << "\n";
    }
    for (const Verdict& v : verdicts) {
      os << v.name << " = " << (v.value ? "true" : "false") << "\n";
      os << v.name << ".expected = " << (v.expected ? "true" : "false") << "\n";
    }
    for (const auto& [k, v] : notes) os << k << " = " << v << "\n";
    os << "max_residual = " << format_double(max_residual()) << "\n";
    os << "pass = " << (pass() ? "true" : "false") << "\n";
    return os.str();
  }
};

struct Options {
  std::optional<Flavor> flavor;  // both flavors when unset
  std::vector<double> masses;    // suite default when empty
  std::optional<std::size_t> trials;
  std::uint64_t seed = 1;
};

namespace detail {

inline std::vector<Flavor> flavors(const Options& o) {
  if (o.flavor) return {*o.flavor};
  return {Flavor::newton, Flavor::einstein};
}

inline double rel(double got, double want, double scale) {
  return std::fabs(got - want) / std::max({std::fabs(want), scale, 1e-300});
}

inline std::string mass_label(double m) {
  std::string s = format_double(m);
  return "m=" + s;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Invariance of the evaluation maps and orbit classes

namespace detail {

/// Orbit type of a causal class, with the sheet for hyperboloids.
inline int causal_kind(const einstein::CausalClass& c) {
  if (const auto* h = std::get_if<einstein::HyperboloidH>(&c))
    return h->sheet == einstein::Sheet::future ? 10 : 11;
  return int(c.index());
}

}  // namespace detail

inline Report invariance(const Options& o) {
  Report r{"invariance", o.seed, o.trials.value_or(1000)};
  constexpr int kPoints = 100;
  r.note("points_per_element", std::to_string(kPoints));
  Rng rng(o.seed);
  for (Flavor f : detail::flavors(o)) {
    double res_m = 0.0, res_mt = 0.0, res_md = 0.0;
    std::size_t class_changes = 0;
    for (std::size_t i = 0; i < r.trials; ++i) {
      Mat5 g;
      if (f == Flavor::newton) g = draw<GalileiElement>(rng).matrix();
      else g = draw<PoincareElement>(rng).matrix();
      for (int k = 0; k < kPoints; ++k) {
        const FiveVector p(rng.vec5(2.0));
        FiveVector p0 = p;
        p0.coords[4] = 0.0;
        const FiveVector gp(g * p.coords), gp0(g * p0.coords);
        if (f == Flavor::newton) {
          FiveVector e0 = p0;
          e0.coords[3] = 0.0;
          const FiveVector ge0(g * e0.coords);
          res_m = std::max(res_m, detail::rel(newton::eval_m(gp).magnitude(),
                                              newton::eval_m(p).magnitude(), 0.0));
          res_mt = std::max(res_mt, detail::rel(newton::eval_mt(gp0).magnitude(),
                                                newton::eval_mt(p0).magnitude(), 0.0));
          res_md = std::max(res_md, detail::rel(newton::eval_md(ge0).magnitude(),
                                                newton::eval_md(e0).magnitude(), 0.0));
          for (const FiveVector* v : std::array<const FiveVector*, 3>{&p, &p0, &e0})
            if (newton::classify_orbit(*v).index() !=
                newton::classify_orbit(FiveVector(g * v->coords)).index())
              ++class_changes;
        } else {
          res_m = std::max(res_m, detail::rel(einstein::eval_m(gp).magnitude(),
                                              einstein::eval_m(p).magnitude(), 0.0));
          // Points of M0 are drawn on a definite orbit: timelike and
          // spacelike ones at a random Lorentz position, plus light-cone
          // points for the class check.
          const Mat4 l = lorentz::rotation(rng.rotation()) *
                         lorentz::boost(Vec3::UnitX(), rng.uniform(-1.5, 1.5));
          const double size = rng.signed_magnitude(0.5, 2.0);
          const int kind = k % 3;
          const Vec4 seed = kind == 0 ? Vec4::UnitW() : kind == 1 ? Vec4::UnitX()
                                                                  : Vec4(1.0, 0.0, 0.0, 1.0);
          const Vec4 x = size * (l * seed);
          const FiveVector v(x[0], x[1], x[2], x[3], 0.0);
          const FiveVector gv(g * v.coords);
          if (kind == 0)
            res_mt = std::max(res_mt, detail::rel(einstein::eval_mt(gv).magnitude(),
                                                  einstein::eval_mt(v).magnitude(), 0.0));
          else if (kind == 1)
            res_md = std::max(res_md, detail::rel(einstein::eval_md(gv).magnitude(),
                                                  einstein::eval_md(v).magnitude(), 0.0));
          if (detail::causal_kind(einstein::classify_causal(v)) !=
                  detail::causal_kind(einstein::classify_causal(gv)) ||
              detail::causal_kind(einstein::classify_causal(p)) !=
                  detail::causal_kind(einstein::classify_causal(gp)))
            ++class_changes;
        }
      }
    }
    const std::string pre = std::string(flavor_name(f)) + ".";
    r.check(pre + "m", res_m, 1e-12);
    r.check(pre + "mt", res_mt, 1e-12);
    r.check(pre + "md", res_md, 1e-12);
    r.check(pre + "class_changes", double(class_changes), 0.0);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Factorization of extended elements into scale times group element

inline Report factorization(const Options& o) {
  Report r{"factorization", o.seed, o.trials.value_or(500)};
  Rng rng(o.seed);
  for (Flavor f : detail::flavors(o)) {
    double recon = 0.0, unique = 0.0;
    for (std::size_t i = 0; i < r.trials; ++i) {
      if (f == Flavor::newton) {
        const GalileiScale s{rng.signed_magnitude(0.5, 2.0), rng.signed_magnitude(0.5, 2.0),
                             rng.signed_magnitude(0.5, 2.0)};
        const GalileiElement g = draw<GalileiElement>(rng);
        const auto x = ExtendedGalileiElement::from(s, g);
        const GalileiFactorization fa = factorize(x);
        const Mat5 back = fa.scale.matrix() * fa.element.matrix();
        recon = std::max(recon, max_abs(back - x.matrix()) / std::max(1.0, max_abs(x.matrix())));
        unique = std::max({unique, std::fabs(fa.scale.space - s.space),
                           std::fabs(fa.scale.time - s.time), std::fabs(fa.scale.mass - s.mass),
                           max_abs(fa.element.matrix() - g.matrix())});
      } else {
        const PoincareScale s{rng.signed_magnitude(0.5, 2.0), rng.signed_magnitude(0.5, 2.0)};
        const PoincareElement g = draw<PoincareElement>(rng);
        const auto x = ExtendedPoincareElement::from(s, g);
        const PoincareFactorization fa = factorize(x);
        const Mat5 back = fa.scale.matrix() * fa.element.matrix();
        recon = std::max(recon, max_abs(back - x.matrix()) / std::max(1.0, max_abs(x.matrix())));
        unique = std::max({unique, std::fabs(fa.scale.spacetime - s.spacetime),
                           std::fabs(fa.scale.mass - s.mass),
                           max_abs(fa.element.matrix() - g.matrix())});
      }
    }
    const std::string pre = std::string(flavor_name(f)) + ".";
    r.check(pre + "reconstruction", recon, 1e-12);
    r.check(pre + "uniqueness", unique, 1e-10);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Measure-line algebra

namespace detail {

/// Every dimension with exponents from a fixed set of rationals with
/// denominators up to 6, in both orientation states and with or without |.|.
inline std::vector<Dimension> dimension_corpus() {
  const std::vector<Rational> exps{{0},     {1},     {-1},   {2},     {1, 2},  {-1, 3},
                                   {2, 3},  {-3, 4}, {5, 6}, {-1, 6}, {7, 5}, {-3, 2}};
  std::vector<Dimension> out;
  for (const Rational& a : exps)
    for (const Rational& b : exps)
      for (const Rational& c : exps) {
        if ((out.size() + a.num() + b.den() + c.num()) % 3 != 0) continue;
        const Dimension d = dim_pow(dims::kg(), a) * dim_pow(dims::kgs(), b) *
                            dim_pow(dims::kgm(), c);
        out.push_back(d);
        out.push_back(d * dims::kg() / dim_abs(dims::kg()));
        out.push_back(dim_abs(d));
      }
  return out;
}

inline std::string random_expression(Rng& rng, int depth) {
  static const char* const kAtoms[] = {"kg", "kgs", "kgm", "m", "s", "1"};
  std::string primary;
  const double u = rng.unit();
  if (depth <= 0 || u < 0.5) {
    primary = kAtoms[std::size_t(rng.unit() * 6.0)];
  } else if (u < 0.7) {
    primary = "|" + random_expression(rng, depth - 1) + "|";
  } else if (u < 0.85) {
    primary = "root(" + random_expression(rng, depth - 1) + "," +
              std::to_string(1 + int(rng.unit() * 6.0)) + ")";
  } else {
    primary = "(" + random_expression(rng, depth - 1) + ")";
  }
  if (rng.unit() < 0.4) {
    const int p = int(rng.unit() * 9.0) - 4;
    const int q = 1 + int(rng.unit() * 6.0);
    primary += "^" + std::to_string(p);
    if (q > 1) primary += "/" + std::to_string(q);
  }
  if (depth > 0 && rng.unit() < 0.5) {
    primary += rng.unit() < 0.5 ? "*" : "/";
    // After an exponent, "/1" would read as a denominator.
    const std::string rhs = random_expression(rng, depth - 1);
    primary += std::isdigit(static_cast<unsigned char>(rhs[0])) ? "(" + rhs + ")" : rhs;
  }
  return primary;
}

}  // namespace detail

inline Report measure(const Options& o) {
  Report r{"measure", o.seed, o.trials.value_or(1000)};
  const std::vector<Dimension> corpus = detail::dimension_corpus();
  r.note("corpus_size", std::to_string(corpus.size()));
  std::size_t mul_div = 0, assoc = 0, root_pow = 0, parity = 0, print = 0;
  const std::vector<Dimension> small(corpus.begin(),
                                     corpus.begin() + std::min<std::size_t>(40, corpus.size()));
  for (const Dimension& v : corpus) {
    for (const Dimension& d : corpus)
      if (!dim_mul(d, dim_div(v, d)).equivalent(v)) ++mul_div;
    for (const Dimension& a : small)
      for (const Dimension& b : small)
        if (!dim_div(dim_div(v, a), b).equivalent(dim_div(v, dim_mul(a, b)))) ++assoc;
    for (std::int64_t n = 1; n <= 12; ++n)
      if (dim_root(dim_pow(v, n), n).exponents() != v.exponents()) ++root_pow;
    if (!(parse_dimension(to_string(v)) == v)) ++print;
  }
  for (Base b : kAllBases)
    for (std::int64_t p = -12; p <= 12; ++p) {
      const bool want = p % 2 == 0 || base_oriented(b);
      if (dim_pow(Dimension::base(b), p).oriented() != want) ++parity;
    }
  r.check("product_quotient_identity.failures", double(mul_div), 0.0);
  r.check("quotient_associativity.failures", double(assoc), 0.0);
  r.check("root_power_identity.failures", double(root_pow), 0.0);
  r.check("orientation_parity.failures", double(parity), 0.0);
  r.check("print_parse_corpus.failures", double(print), 0.0);

  Rng rng(o.seed);
  std::size_t expr_fail = 0;
  for (std::size_t i = 0; i < r.trials; ++i) {
    const std::string e = detail::random_expression(rng, 3);
    const Dimension d = parse_dimension(e);
    const std::string canon = to_string(d);
    if (!(parse_dimension(canon) == d) || to_string(parse_dimension(canon)) != canon) ++expr_fail;
  }
  r.check("parser_round_trip.failures", double(expr_fail), 0.0);
  return r;
}

// ---------------------------------------------------------------------------
// Dynamics

namespace detail {

inline Report dynamics_newton(Rng& rng, std::size_t trials) {
  Report r;
  // Free particles stay on their straight line.
  double straight = 0.0, mass_drift = 0.0;
  for (std::size_t i = 0; i < trials; ++i) {
    const double m = rng.signed_magnitude(0.5, 3.0);
    const Vec3 x0 = rng.vec3(1.0), w = rng.vec3(1.0);
    const double t0 = rng.uniform(-1.0, 1.0);
    const FiveVector f0(m * x0[0], m * x0[1], m * x0[2], m * t0, m);
    const FiveVector p0(m * w[0], m * w[1], m * w[2], m, 0.0);
    const double h = 1e-3;
    const Trajectory f = integrate(fields::zero(Flavor::newton), f0, p0, h, 1000);
    for (std::size_t k = 0; k < f.size(); ++k) {
      const double t = f.parameter(k);
      const Vec3 line = x0 + (t - t0) * w;
      const Vec3 got = f.points()[k].head<3>() / m;
      straight = std::max(straight, max_abs(got - line));
      mass_drift = std::max(mass_drift, std::fabs(f.points()[k][4] - m));
    }
  }
  r.check("zero_field_straight_line", straight, 1e-12);
  r.check("mass_constancy", mass_drift, 1e-12);

  // Isotropic oscillator against x(t) = A cos(wt) + B/w sin(wt).
  double osc = 0.0;
  for (std::size_t i = 0; i < trials; ++i) {
    const double m = rng.uniform(0.5, 3.0), k = rng.uniform(0.5, 4.0);
    const double omega = std::sqrt(k / m), period = 2.0 * std::numbers::pi / omega;
    const Vec3 a = rng.vec3(1.0), b = rng.vec3(1.0);
    const FiveVector f0(m * a[0], m * a[1], m * a[2], 0.0, m);
    const FiveVector p0(m * b[0], m * b[1], m * b[2], m, 0.0);
    const std::size_t n = 1000;
    const Trajectory f =
        integrate(fields::isotropic_oscillator(Flavor::newton, k), f0, p0, period / n, n);
    for (std::size_t j = 0; j < f.size(); ++j) {
      const double t = f.parameter(j);
      const Vec3 x = a * std::cos(omega * t) + b / omega * std::sin(omega * t);
      osc = std::max(osc, max_abs(f.points()[j].head<3>() / m - x));
    }
  }
  r.check("oscillator_closed_form", osc, 1e-6);

  // Transforming initial data by g commutes with integration.
  double cov = 0.0;
  for (std::size_t i = 0; i < trials; ++i) {
    const GalileiElement g = draw<GalileiElement>(rng);
    const double m = rng.uniform(0.5, 3.0);
    const Vec3 x0 = rng.vec3(1.0), w = rng.vec3(1.0);
    const FiveVector f0(m * x0[0], m * x0[1], m * x0[2], 0.0, m);
    const FiveVector p0(m * w[0], m * w[1], m * w[2], m, 0.0);
    const auto field = fields::zero(Flavor::newton);
    const Trajectory a = integrate(field, f0, p0, 1e-3, 1000);
    const Trajectory b = integrate(field, apply(g, f0), apply(g, p0), 1e-3, 1000);
    const Mat5 gm = g.matrix();
    for (std::size_t k = 0; k < a.size(); ++k)
      cov = std::max(cov, max_abs(gm * a.points()[k] - b.points()[k]) /
                              std::max(1.0, max_abs(b.points()[k])));
  }
  r.check("galilei_covariance", cov, 1e-10);
  return r;
}

inline Report dynamics_einstein(Rng& rng, std::size_t trials) {
  Report r;
  double norm_v = 0.0, orth = 0.0, shell = 0.0, field_orth = 0.0;
  for (std::size_t i = 0; i < trials; ++i) {
    const double m = rng.signed_magnitude(0.5, 3.0), lambda = rng.uniform(0.5, 2.0);
    const Vec4 u = einstein::four_velocity_from_rapidity(rng.direction(), rng.uniform(0.0, 1.5));
    const Vec4 x0 = rng.vec4(1.0);
    const FiveVector f0(m * x0[0], m * x0[1], m * x0[2], m * x0[3], m);
    const FiveVector p0(m * u[0], m * u[1], m * u[2], m * u[3], 0.0);
    const auto field = fields::antisymmetric(Flavor::einstein, lambda);
    const Trajectory f = integrate(field, f0, p0, 1e-3, 10000);
    const Kinematics k = derive_kinematics(f);
    for (std::size_t j = 0; j < f.size(); ++j) {
      const Vec4 v = k.velocity[j].head<4>(), a = k.acceleration[j].head<4>();
      norm_v = std::max(norm_v, std::fabs(std::sqrt(-minkowski(v, v)) - 1.0));
      orth = std::max(orth, std::fabs(minkowski(a, v)));
      const Vec4 p = f.momenta()[j].head<4>();
      shell = std::max(shell, std::fabs(std::sqrt(-minkowski(p, p)) - std::fabs(m)));
      const Vec5 F = *field.evaluate(f.points()[j], f.momenta()[j]);
      field_orth = std::max(field_orth, std::fabs(minkowski(F.head<4>(), p)));
    }
  }
  r.check("unit_four_velocity", norm_v, 1e-8);
  r.check("acceleration_orthogonal", orth, 1e-6);
  r.check("mass_shell_drift", shell, 1e-9);
  r.check("force_orthogonal", field_orth, 1e-8);
  return r;
}

}  // namespace detail

inline Report dynamics(const Options& o) {
  Report r{"dynamics", o.seed, o.trials.value_or(5)};
  Rng rng(o.seed);
  for (Flavor f : detail::flavors(o)) {
    const Report part = f == Flavor::newton ? detail::dynamics_newton(rng, r.trials)
                                            : detail::dynamics_einstein(rng, r.trials);
    r.merge(part, std::string(flavor_name(f)) + ".");
  }
  return r;
}

// ---------------------------------------------------------------------------
// Velocity of light

namespace detail {

/// Random plane spanned by a, b whose two light lines are well separated.
inline std::pair<Vec4, Vec4> lorentzian_plane(Rng& rng) {
  for (;;) {
    const Vec4 a = rng.vec4(1.0), b = rng.vec4(1.0);
    const double A = minkowski(a, a), B = minkowski(b, b), C = minkowski(a, b);
    if (C * C - A * B > 1e-2 * std::max({A * A, B * B, C * C})) return {a, b};
  }
}

}  // namespace detail

inline Report light(const Options& o) {
  Report r{"light", o.seed, o.trials.value_or(100)};
  Rng rng(o.seed);
  r.check("speed_of_light_exact", std::fabs(einstein::speed_of_light().magnitude() - 1.0), 0.0);
  double plane_res = 0.0, opposite = 0.0, conj_res = 0.0, covariance = 0.0;
  for (std::size_t i = 0; i < r.trials; ++i) {
    const auto [a, b] = detail::lorentzian_plane(rng);
    const einstein::LightReflection lr = einstein::light_reflection(a, b);
    plane_res = std::max(plane_res, lr.residual);
    opposite = std::max(opposite, max_abs(lr.image_first + lr.image_second));
  }
  for (std::size_t i = 0; i < r.trials; ++i) {
    const auto [a, b] = detail::lorentzian_plane(rng);
    const einstein::LightReflection base = einstein::light_reflection(a, b);
    const auto g = draw<ExtendedPoincareElement>(rng);
    const einstein::LightReflection lr = einstein::light_reflection(g.A * a, g.A * b);
    conj_res = std::max(conj_res, lr.residual);
    // The construction is frame independent: h transforms with the frame.
    Vec4 h = g.A * base.timelike_unit;
    h /= std::sqrt(-minkowski(h, h));
    if (h[3] < 0.0) h = -h;
    covariance = std::max(covariance, max_abs(h - lr.timelike_unit));
  }
  r.check("reflection_random_planes", plane_res, 1e-12);
  r.check("two_halves_opposite", opposite, 1e-12);
  r.check("reflection_conjugated_frames", conj_res, 1e-12);
  r.check("construction_covariance", covariance, 1e-10);
  return r;
}

// ---------------------------------------------------------------------------
// Cayley map and hyperbolic geometry of V(1)

inline Report cayley(const Options& o) {
  Report r{"cayley", o.seed, o.trials.value_or(10000)};
  Rng rng(o.seed);
  const auto e = einstein::SpacelikeSubspace::standard();
  double max_norm = 0.0;
  std::size_t outside = 0;
  for (std::size_t i = 0; i < r.trials; ++i) {
    const Vec4 u = einstein::four_velocity_from_rapidity(rng.direction(), rng.uniform(0.0, 5.0));
    const FiveVector v(u[0], u[1], u[2], u[3], 0.0);
    const double n = einstein::cayley_map(e, v).value.norm();
    max_norm = std::max(max_norm, n);
    if (!(n < 1.0)) ++outside;
  }
  r.check("outside_unit_ball", double(outside), 0.0);
  r.note("max_ball_norm", format_double(max_norm));

  std::size_t non_monotone = 0;
  double prev = -1.0;
  for (int k = 0; k <= 100; ++k) {
    const Vec4 u = einstein::four_velocity_from_rapidity(Vec3(1.0, 2.0, 2.0), 0.05 * k);
    const double n = einstein::cayley_map(e, FiveVector(u[0], u[1], u[2], u[3], 0.0)).value.norm();
    if (k > 0 && !(n > prev)) ++non_monotone;
    prev = n;
  }
  r.check("norm_monotone_in_rapidity", double(non_monotone), 0.0);

  constexpr std::size_t kBoosts = 100, kPairs = 10;
  double iso = 0.0, klein = 0.0;
  for (std::size_t i = 0; i < kBoosts; ++i) {
    const Mat4 l = lorentz::boost(rng.direction(), rng.uniform(-2.0, 2.0));
    for (std::size_t j = 0; j < kPairs; ++j) {
      const Vec4 u = einstein::four_velocity_from_rapidity(rng.direction(), rng.uniform(0.0, 2.0));
      const Vec4 w = einstein::four_velocity_from_rapidity(rng.direction(), rng.uniform(0.0, 2.0));
      const double d = einstein::hyperbolic_distance(u, w);
      iso = std::max(iso, std::fabs(einstein::hyperbolic_distance(l * u, l * w) - d));
      const Vec3 bu = einstein::cayley_map(e, FiveVector(u[0], u[1], u[2], u[3], 0.0)).value;
      const Vec3 bw = einstein::cayley_map(e, FiveVector(w[0], w[1], w[2], w[3], 0.0)).value;
      klein = std::max(klein, std::fabs(einstein::klein_distance(bu, bw) - d));
    }
  }
  r.check("boost_isometry", iso, 1e-9);
  r.check("klein_ball_distance", klein, 1e-9);
  return r;
}

// ---------------------------------------------------------------------------
// Symplectic structure

namespace detail {

template <GroupElement G>
double action_residual(Rng& rng, Flavor flavor, double m) {
  const G g = draw<G>(rng);
  const symplectic::LinePoint x = symplectic::random_line(rng, flavor, m);
  const symplectic::TangentPair u1 = symplectic::random_tangent(rng, x);
  const symplectic::TangentPair u2 = symplectic::random_tangent(rng, x);
  const double w = symplectic::omega(x, u1, u2).magnitude();
  const symplectic::LinePoint gx = symplectic::act_on_line(g, x);
  const double wg = symplectic::omega(gx, symplectic::pushforward(g, x, u1),
                                      symplectic::pushforward(g, x, u2))
                        .magnitude();
  return std::fabs(wg - w) / symplectic::omega_scale(x, u1, u2);
}

inline std::vector<double> masses(const Options& o, std::vector<double> fallback) {
  return o.masses.empty() ? fallback : o.masses;
}

}  // namespace detail

inline Report symplectic_action(Flavor flavor, double m, std::size_t trials, std::uint64_t seed) {
  Report r{"symplectic", seed, trials};
  Rng rng(seed);
  double worst = 0.0;
  for (std::size_t i = 0; i < trials; ++i)
    worst = std::max(worst, flavor == Flavor::newton
                                ? detail::action_residual<GalileiElement>(rng, flavor, m)
                                : detail::action_residual<PoincareElement>(rng, flavor, m));
  r.check(std::string(flavor_name(flavor)) + "." + detail::mass_label(m), worst, 1e-6);
  return r;
}

inline Report symplectic_suite(const Options& o) {
  Report r{"symplectic", o.seed, o.trials.value_or(500)};
  std::uint64_t stream = o.seed;
  for (Flavor f : detail::flavors(o))
    for (double m : detail::masses(o, {1.0, 2.0})) {
      const Report part = symplectic_action(f, m, r.trials, stream++);
      r.merge(part, "");
    }
  return r;
}

/// Commutation of the mass-scaling square for an extended element taking
/// M_{m1} to M_{m2}, and the equivalence verdict of F_{m1} and F_{m2}.
template <ExtendedGroupElement X>
Report scaling_diagram(double m1, double m2, const X& gbar, std::size_t trials,
                       std::uint64_t seed) {
  constexpr Flavor flavor =
      X::family == Family::extended_galilei ? Flavor::newton : Flavor::einstein;
  if (std::fabs(symplectic::mass_factor(gbar) * m1 - m2) > 1e-12 * std::fabs(m2))
    throw ScaleMismatch("extended element does not map M_m1 onto M_m2");
  Report r{"scaling", seed, trials};
  Rng rng(seed);
  const double factor = symplectic::value_line_factor(gbar);
  double diagram = 0.0, equivalence = 0.0, ratio = 0.0;
  for (std::size_t i = 0; i < trials; ++i) {
    const symplectic::LinePoint x = symplectic::random_line(rng, flavor, m1);
    const symplectic::TangentPair u1 = symplectic::random_tangent(rng, x);
    const symplectic::TangentPair u2 = symplectic::random_tangent(rng, x);
    const double w1 = symplectic::omega(x, u1, u2).magnitude();
    const double scale = symplectic::omega_scale(x, u1, u2);
    const symplectic::LinePoint gx = symplectic::act_on_line(gbar, x);
    const double w2 = symplectic::omega(gx, symplectic::pushforward(gbar, x, u1),
                                        symplectic::pushforward(gbar, x, u2))
                          .magnitude();
    diagram = std::max(diagram, std::fabs(w2 - factor * w1) / (std::fabs(factor) * scale));
    // Identity intertwiner F_m1 -> F_m2, (u, q) -> (u, q), up to the sign of
    // the value line.
    symplectic::LinePoint y = x;
    y.mass = m2;
    const double wy = symplectic::omega(y, u1, u2).magnitude();
    equivalence = std::max(equivalence, std::min(std::fabs(wy - w1), std::fabs(wy + w1)) / scale);
    if (std::fabs(w1) > 1e-3 * scale) ratio = std::max(ratio, std::fabs(wy / w1));
  }
  r.check("diagram_commutes", diagram, 1e-6);
  const bool equivalent = equivalence <= 1e-9;
  r.verdict("equivalent", equivalent, std::fabs(std::fabs(m1) - std::fabs(m2)) <= 1e-12);
  r.note("equivalence_residual", format_double(equivalence));
  r.note("omega_ratio", format_double(ratio));
  r.note("value_line_factor", format_double(factor));
  return r;
}

inline Report scaling_suite(const Options& o) {
  Report r{"scaling", o.seed, o.trials.value_or(50)};
  Rng rng(o.seed);
  const std::vector<double> grid = detail::masses(o, {1.0, -1.0, 2.0, -2.0, 3.0});
  std::uint64_t stream = o.seed;
  for (Flavor f : detail::flavors(o))
    for (double m1 : grid)
      for (double m2 : grid) {
        const std::string pre = std::string(flavor_name(f)) + "." + format_double(m1) + "->" +
                                format_double(m2) + ".";
        Report part;
        if (f == Flavor::newton) {
          const GalileiScale s{rng.signed_magnitude(0.5, 2.0), rng.signed_magnitude(0.5, 2.0),
                               m2 / m1};
          const auto g = ExtendedGalileiElement::from(s, draw<GalileiElement>(rng));
          part = scaling_diagram(m1, m2, g, r.trials, ++stream);
        } else {
          const PoincareScale s{rng.signed_magnitude(0.5, 2.0), m2 / m1};
          const auto g = ExtendedPoincareElement::from(s, draw<PoincareElement>(rng));
          part = scaling_diagram(m1, m2, g, r.trials, ++stream);
        }
        r.merge(part, pre);
      }
  return r;
}

/// Distance in the chart between the Hamiltonian flow for time T and the
/// group's time translation by T.
inline double flow_deviation(symplectic::Hamiltonian h, const symplectic::LinePoint& x, double T,
                             double step) {
  const auto z = symplectic::hamiltonian_flow(h, x.mass, symplectic::chart(x), T, step);
  const auto want = symplectic::chart(symplectic::time_translate(x, T));
  return max_abs(z - want);
}

inline Report hamiltonian_suite(const Options& o) {
  Report r{"hamiltonian", o.seed, o.trials.value_or(3)};
  Rng rng(o.seed);
  constexpr double T = 1.0, step = 1e-3;
  for (Flavor f : detail::flavors(o))
    for (double m : detail::masses(o, {1.0})) {
      const std::string pre = std::string(flavor_name(f)) + "." + detail::mass_label(m) + ".";
      std::vector<symplectic::LinePoint> lines;
      if (f == Flavor::newton) {
        lines.push_back(symplectic::newton_line(m, Vec3::Zero(), Vec3(0.3, -0.2, 0.1)));
        lines.push_back(symplectic::newton_line(m, Vec3(0.5, 0.0, 0.0), Vec3::Zero()));
      } else {
        lines.push_back(symplectic::einstein_line(m, Vec4::UnitW(), Vec4(0.3, -0.2, 0.1, 0.0)));
        lines.push_back(symplectic::einstein_line(
            m, einstein::four_velocity_from_rapidity(Vec3::UnitX(), 1.0), Vec4::Zero()));
      }
      for (std::size_t i = 0; i < r.trials; ++i) lines.push_back(symplectic::random_line(rng, f, m));
      if (f == Flavor::newton) {
        double dev = 0.0;
        for (const auto& x : lines)
          dev = std::max(dev, flow_deviation(symplectic::Hamiltonian::newton, x, T, step));
        r.check(pre + "flow_vs_time_translation", dev, 1e-6);
      } else {
        double standard = 0.0, printed = 0.0;
        for (const auto& x : lines) {
          standard = std::max(
              standard, flow_deviation(symplectic::Hamiltonian::einstein_standard, x, T, step));
          printed = std::max(
              printed, flow_deviation(symplectic::Hamiltonian::einstein_printed, x, T, step));
        }
        r.check(pre + "flow_vs_time_translation", standard, 1e-6);
        r.note(pre + "candidate.standard",
               std::string(symplectic::hamiltonian_name(symplectic::Hamiltonian::einstein_standard)));
        r.note(pre + "candidate.standard.deviation", format_double(standard));
        r.note(pre + "candidate.printed",
               std::string(symplectic::hamiltonian_name(symplectic::Hamiltonian::einstein_printed)));
        r.note(pre + "candidate.printed.deviation", format_double(printed));
        const bool printed_generates = printed <= 1e-6;
        r.note(pre + "generator", printed_generates ? "printed" : standard <= 1e-6 ? "standard"
                                                                                     : "none");
      }
    }
  return r;
}

/// The chart (u, q) -> (v, Pi) carries omega_m to the canonical form.
inline Report chart_suite(const Options& o) {
  Report r{"chart", o.seed, o.trials.value_or(200)};
  Rng rng(o.seed);
  for (Flavor f : detail::flavors(o))
    for (double m : detail::masses(o, {1.0, 2.0})) {
      double worst = 0.0;
      for (std::size_t i = 0; i < r.trials; ++i) {
        const symplectic::LinePoint x = symplectic::random_line(rng, f, m);
        const symplectic::TangentPair u1 = symplectic::random_tangent(rng, x);
        const symplectic::TangentPair u2 = symplectic::random_tangent(rng, x);
        const auto d1 = symplectic::directional_derivative(
            [](const symplectic::LinePoint& y) { return symplectic::chart(y); }, x, u1);
        const auto d2 = symplectic::directional_derivative(
            [](const symplectic::LinePoint& y) { return symplectic::chart(y); }, x, u2);
        const double canonical = d1.head<3>().dot(d2.tail<3>()) - d2.head<3>().dot(d1.tail<3>());
        const double w = symplectic::omega(x, u1, u2).magnitude();
        worst = std::max(worst, std::fabs(canonical - w) / symplectic::omega_scale(x, u1, u2));
      }
      r.check(std::string(flavor_name(f)) + "." + detail::mass_label(m), worst, 1e-6);
    }
  return r;
}

// ---------------------------------------------------------------------------

using Suite = std::function<Report(const Options&)>;

inline const std::map<std::string, Suite>& suites() {
  static const std::map<std::string, Suite> table{
      {"invariance", invariance},   {"factorization", factorization},
      {"measure", measure},         {"dynamics", dynamics},
      {"light", light},             {"cayley", cayley},
      {"symplectic", symplectic_suite}, {"scaling", scaling_suite},
      {"hamiltonian", hamiltonian_suite}, {"chart", chart_suite},
  };
  return table;
}

inline Report run_suite(const std::string& name, const Options& o) {
  const auto& t = suites();
  const auto it = t.find(name);
  if (it == t.end()) throw DomainError("unknown verification suite '" + name + "'");
  return it->second(o);
}

}  // namespace mechspace::verify
