#include <gtest/gtest.h>

#include "mechspace/einstein_space.hpp"

namespace ms = mechspace;
namespace es = mechspace::einstein;
using ms::FiveVector;
using ms::PoincareElement;
using ms::Vec3;
using ms::Vec4;

namespace {

Vec4 random_lorentz_image(ms::Rng& rng, const Vec4& v) {
  return ms::draw<PoincareElement>(rng).lorentz * v;
}

FiveVector in_m0(const Vec4& x) { return {x[0], x[1], x[2], x[3], 0.0}; }

}  // namespace

TEST(LorentzProduct, Examples) {
  EXPECT_EQ(es::lorentz_product({1, 0, 0, 0, 0}, {1, 0, 0, 0, 0}).magnitude(), 1.0);
  EXPECT_EQ(es::lorentz_product({0, 0, 0, 1, 0}, {0, 0, 0, 1, 0}).magnitude(), -1.0);
  EXPECT_EQ(es::lorentz_product({1, 0, 0, 1, 0}, {1, 0, 0, 1, 0}).magnitude(), 0.0);
  EXPECT_EQ(es::lorentz_product({3, 0, 0, 5, 0}, {3, 0, 0, 5, 0}).magnitude(), -16.0);
  EXPECT_THROW(es::lorentz_product({0, 0, 0, 1, 1}, {0, 0, 0, 1, 0}), ms::DomainError);
}

TEST(LorentzProduct, InvariantUnderPoincare) {
  ms::Rng rng(201);
  for (int i = 0; i < 1000; ++i) {
    const ms::Mat4 l = ms::draw<PoincareElement>(rng).lorentz;
    const Vec4 v = rng.vec4(2.0), w = rng.vec4(2.0);
    const double want = ms::minkowski(v, w);
    const double got = es::lorentz_product(in_m0(l * v), in_m0(l * w)).magnitude();
    const double scale = (l * v).norm() * (l * w).norm();
    EXPECT_LE(std::fabs(got - want), 1e-9 * std::max(1.0, scale));
  }
}

TEST(Classify, Examples) {
  const auto h = es::classify_causal({0, 0, 0, 1, 0});
  ASSERT_TRUE(std::holds_alternative<es::HyperboloidH>(h));
  EXPECT_EQ(std::get<es::HyperboloidH>(h).mass_time.magnitude(), 1.0);
  EXPECT_EQ(std::get<es::HyperboloidH>(h).sheet, es::Sheet::future);

  const auto past = es::classify_causal({0, 0, 0, -2, 0});
  ASSERT_TRUE(std::holds_alternative<es::HyperboloidH>(past));
  EXPECT_EQ(std::get<es::HyperboloidH>(past).sheet, es::Sheet::past);

  EXPECT_TRUE(std::holds_alternative<es::LightCone>(es::classify_causal({1, 0, 0, 1, 0})));
  const auto m = es::classify_causal({0, 0, 0, 0, 2});
  ASSERT_TRUE(std::holds_alternative<es::HyperplaneM>(m));
  EXPECT_EQ(std::get<es::HyperplaneM>(m).mass.magnitude(), 2.0);
  const auto s = es::classify_causal({3, 4, 0, 0, 0});
  ASSERT_TRUE(std::holds_alternative<es::QuadricS>(s));
  EXPECT_EQ(std::get<es::QuadricS>(s).mass_distance.magnitude(), 5.0);
  EXPECT_TRUE(std::holds_alternative<es::Origin>(es::classify_causal(FiveVector())));
}

TEST(Classify, InvariantUnderPoincareIncludingSheet) {
  ms::Rng rng(202);
  const std::array<Vec4, 4> reps{Vec4(0, 0, 0, 1), Vec4(0, 0, 0, -1), Vec4(1, 0, 0, 0),
                                 Vec4(1, 0, 0, 1)};
  for (int i = 0; i < 400; ++i) {
    const Vec4 x = rng.uniform(0.5, 2.0) * reps[i % 4];
    const Vec4 y = random_lorentz_image(rng, x);
    const auto a = es::classify_causal(in_m0(x)), b = es::classify_causal(in_m0(y));
    ASSERT_EQ(a.index(), b.index()) << es::describe(a) << " vs " << es::describe(b);
    if (const auto* h = std::get_if<es::HyperboloidH>(&a)) {
      const auto& g = std::get<es::HyperboloidH>(b);
      EXPECT_EQ(h->sheet, g.sheet);
      EXPECT_NEAR(h->mass_time.magnitude(), g.mass_time.magnitude(), 1e-9 * (1 + y.norm()));
    }
  }
}

TEST(Classify, TimeReversalFlipsSheet) {
  ms::Mat5 t = ms::Mat5::Identity();
  t(3, 3) = -1.0;
  const FiveVector p(0.2, 0, 0, 1, 0);
  const auto a = std::get<es::HyperboloidH>(es::classify_causal(p));
  const auto b = std::get<es::HyperboloidH>(es::classify_causal(FiveVector(t * p.coords)));
  EXPECT_NE(a.sheet, b.sheet);
}

TEST(Evaluation, Examples) {
  EXPECT_EQ(es::eval_mt({0, 0, 0, 5, 0}).magnitude(), 5.0);
  EXPECT_EQ(es::eval_mt({0, 0, 0, -5, 0}).magnitude(), -5.0);
  EXPECT_EQ(es::eval_md({3, 4, 0, 0, 0}).magnitude(), 5.0);
  EXPECT_EQ(es::eval_mt({1, 0, 0, 1, 0}).magnitude(), 0.0);
  EXPECT_EQ(es::eval_md({1, 0, 0, 1, 0}).magnitude(), 0.0);
  EXPECT_THROW(es::eval_mt({3, 0, 0, 1, 0}), ms::DomainError);
  EXPECT_THROW(es::eval_md({0, 0, 0, 1, 0}), ms::DomainError);
  EXPECT_THROW(es::eval_mt({0, 0, 0, 1, 1}), ms::DomainError);
  EXPECT_EQ(es::eval_m({0, 0, 0, 1, 1.5}).magnitude(), 1.5);
}

TEST(SpeedOfLight, ExactlyOne) {
  const ms::Quantity c = es::speed_of_light();
  EXPECT_EQ(c.magnitude(), 1.0);
  EXPECT_TRUE(c.dim().equivalent(ms::dim_abs(ms::dims::metre() / ms::dims::second())));
}

TEST(SpeedOfLight, ReflectionConstruction) {
  ms::Rng rng(203);
  int planes = 0;
  while (planes < 100) {
    const Vec4 a = rng.vec4(2.0), b = rng.vec4(2.0);
    const double A = ms::minkowski(a, a), B = ms::minkowski(b, b), C = ms::minkowski(a, b);
    if (C * C - A * B < 1e-3) continue;
    ++planes;
    const es::LightReflection r = es::light_reflection(a, b);
    EXPECT_LT(r.residual, 1e-12);
    EXPECT_NEAR(r.speed, 1.0, 1e-12);
    // c1 = -c2
    EXPECT_LT(ms::max_abs(r.image_first + r.image_second), 1e-12);
    // h is unit future timelike, R1 h unit spacelike and orthogonal to h.
    EXPECT_NEAR(ms::minkowski(r.timelike_unit, r.timelike_unit), -1.0, 1e-12);
    EXPECT_GT(r.timelike_unit[3], 0.0);
    EXPECT_NEAR(ms::minkowski(r.image_first, r.timelike_unit), 0.0, 1e-12);
  }
  EXPECT_THROW(es::light_reflection(Vec4(1, 0, 0, 0), Vec4(0, 1, 0, 0)), ms::DomainError);
}

TEST(SpacetimeDistance, Examples) {
  const es::Event o(Vec4(0, 0, 0, 0));
  const auto zero = es::spacetime_distance(o, o);
  EXPECT_EQ(zero.value.magnitude(), 0.0);
  const auto s = es::spacetime_distance(o, es::Event(Vec4(3, 0, 0, 0)));
  EXPECT_EQ(s.kind, es::Separation::spacelike);
  EXPECT_EQ(s.value.magnitude(), 3.0);
  EXPECT_EQ(s.value.dim(), ms::dims::metre());
  const auto t = es::spacetime_distance(o, es::Event(Vec4(0, 0, 0, 2)));
  EXPECT_EQ(t.kind, es::Separation::timelike);
  EXPECT_EQ(t.value.magnitude(), 2.0);
  EXPECT_TRUE(t.value.dim().equivalent(ms::dim_abs(ms::dims::second())));
  EXPECT_EQ(es::spacetime_distance(o, es::Event(Vec4(1, 0, 0, 1))).kind, es::Separation::lightlike);
}

TEST(Projections, Examples) {
  const auto e = es::SpacelikeSubspace::standard();
  const auto [pe, pp] = es::orthogonal_projections(e, Vec4(1, 2, 3, 4));
  EXPECT_EQ(pe, Vec4(1, 2, 3, 0));
  EXPECT_EQ(pp, Vec4(0, 0, 0, 4));
  const auto [a, b] = es::orthogonal_projections(e, Vec4(1, 2, 3, 0));
  EXPECT_EQ(a, Vec4(1, 2, 3, 0));
  EXPECT_EQ(b, Vec4::Zero());
  const auto [c, d] = es::orthogonal_projections(e, Vec4::UnitW());
  EXPECT_EQ(c, Vec4::Zero());
  EXPECT_EQ(d, Vec4::UnitW());
}

TEST(Projections, TransformedSubspaceSplit) {
  ms::Rng rng(204);
  for (int i = 0; i < 200; ++i) {
    const auto e = es::SpacelikeSubspace::transformed(ms::draw<PoincareElement>(rng).lorentz);
    const Vec4 v = rng.vec4(2.0);
    const auto [pe, pp] = es::orthogonal_projections(e, v);
    EXPECT_LT(ms::max_abs(pe + pp - v), 1e-12 * std::max(1.0, 10 * ms::max_abs(pe)));
    EXPECT_LT(std::fabs(ms::minkowski(pe, pp)), 1e-9 * std::max(1.0, pe.norm() * pp.norm()));
  }
  EXPECT_THROW(es::SpacelikeSubspace({Vec4::UnitX(), Vec4::UnitX(), Vec4::UnitZ()}, Vec4::UnitW()),
               ms::DomainError);
}

TEST(Cayley, Examples) {
  const auto e = es::SpacelikeSubspace::standard();
  EXPECT_EQ(es::cayley_map(e, {0, 0, 0, 1, 0}).value, Vec3::Zero());
  EXPECT_EQ(es::cayley_map(e, FiveVector()).value, Vec3::Zero());
  const Vec4 u = es::four_velocity({0.6, 0, 0});
  const auto g = es::cayley_map(e, in_m0(u));
  EXPECT_NEAR(g.value[0], 0.6, 1e-15);
  EXPECT_EQ(g.value[1], 0.0);
  EXPECT_TRUE(g.dim.equivalent(ms::dims::metre() / ms::dims::second()));
  EXPECT_EQ(es::cayley_map(e, {1, 0, 0, 1, 0}).value.norm(), 1.0);
  EXPECT_THROW(es::cayley_map(e, {1, 0, 0, 0, 0}), ms::OnEPlane);
}

TEST(Cayley, InsideBallAndMonotone) {
  const auto e = es::SpacelikeSubspace::standard();
  ms::Rng rng(205);
  for (int i = 0; i < 10000; ++i) {
    const Vec4 u = es::four_velocity_from_rapidity(rng.direction(), rng.uniform(0.0, 5.0));
    EXPECT_LT(es::cayley_map(e, in_m0(u)).value.norm(), 1.0);
  }
  double prev = -1.0;
  for (int k = 0; k <= 50; ++k) {
    const double n = es::cayley_map(e, in_m0(es::four_velocity_from_rapidity(Vec3::UnitY(), 0.1 * k)))
                         .value.norm();
    EXPECT_GT(n, prev);
    prev = n;
  }
}

TEST(Hyperbolic, DistanceMatchesArccosh) {
  ms::Rng rng(206);
  for (int i = 0; i < 1000; ++i) {
    const Vec4 u = es::four_velocity_from_rapidity(rng.direction(), rng.uniform(0.0, 2.0));
    const Vec4 w = es::four_velocity_from_rapidity(rng.direction(), rng.uniform(0.0, 2.0));
    const double oracle = std::acosh(std::max(1.0, -ms::minkowski(u, w)));
    EXPECT_NEAR(es::hyperbolic_distance(u, w), oracle, 1e-7);
  }
}

TEST(Hyperbolic, BoostsAreIsometries) {
  ms::Rng rng(207);
  const auto e = es::SpacelikeSubspace::standard();
  for (int b = 0; b < 100; ++b) {
    const ms::Mat4 l = ms::draw<PoincareElement>(rng).lorentz;
    for (int j = 0; j < 10; ++j) {
      const Vec4 u = es::four_velocity_from_rapidity(rng.direction(), rng.uniform(0.0, 1.5));
      const Vec4 w = es::four_velocity_from_rapidity(rng.direction(), rng.uniform(0.0, 1.5));
      const double d = es::hyperbolic_distance(u, w);
      EXPECT_NEAR(es::hyperbolic_distance(l * u, l * w), d, 1e-9 * std::max(1.0, d));
      // Independent model: the Klein ball through the Cayley map.
      const Vec3 x = es::cayley_map(e, in_m0(l * u)).value, y = es::cayley_map(e, in_m0(l * w)).value;
      EXPECT_NEAR(es::klein_distance(x, y), d, 1e-9 * std::max(1.0, d));
    }
  }
}

TEST(Event, EvalU) {
  const es::Event e = es::eval_u({2, 4, 6, 8, 2});
  EXPECT_EQ(e.position(), Vec4(1, 2, 3, 4));
  EXPECT_THROW(es::eval_u({1, 0, 0, 1, 0}), ms::ZeroMass);
  EXPECT_THROW(es::Event(FiveVector(0, 0, 0, 0, 3)), ms::DomainError);
}
