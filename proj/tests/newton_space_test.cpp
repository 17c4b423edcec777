#include <gtest/gtest.h>

#include "mechspace/newton_space.hpp"

namespace ms = mechspace;
namespace nw = mechspace::newton;
using ms::FiveVector;
using ms::GalileiElement;
using ms::Vec3;

namespace {

double rel(double got, double want) { return std::fabs(got - want) / std::max(1.0, std::fabs(want)); }

}  // namespace

TEST(EvalM, Examples) {
  EXPECT_EQ(nw::eval_m(FiveVector()).magnitude(), 0.0);
  const ms::Quantity m = nw::eval_m({2, 4, 6, 3, 1.5});
  EXPECT_EQ(m.magnitude(), 1.5);
  EXPECT_EQ(m.dim(), ms::dims::kg());
}

TEST(EvalMt, Examples) {
  EXPECT_EQ(nw::eval_mt(FiveVector()).magnitude(), 0.0);
  const ms::Quantity mt = nw::eval_mt({1, 1, 1, 7, 0});
  EXPECT_EQ(mt.magnitude(), 7.0);
  EXPECT_EQ(mt.dim(), ms::dims::kgs());
  EXPECT_THROW(nw::eval_mt({1, 1, 1, 7, 2}), ms::DomainError);
}

TEST(EvalMd, Examples) {
  EXPECT_EQ(nw::eval_md(FiveVector()).magnitude(), 0.0);
  const ms::Quantity md = nw::eval_md({3, 4, 0, 0, 0});
  EXPECT_EQ(md.magnitude(), 5.0);
  EXPECT_TRUE(md.dim().absolute());
  EXPECT_THROW(nw::eval_md({3, 4, 0, 1, 0}), ms::DomainError);
}

TEST(ScalarProduct, Examples) {
  EXPECT_NEAR(nw::scalar_product({1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}).magnitude(), 0.0, 1e-15);
  EXPECT_NEAR(nw::scalar_product({3, 4, 0, 0, 0}, {3, 4, 0, 0, 0}).magnitude(), 25.0, 1e-13);
  EXPECT_THROW(nw::scalar_product({1, 0, 0, 1, 0}, {1, 0, 0, 0, 0}), ms::DomainError);
}

TEST(ScalarProduct, MatchesDotProduct) {
  ms::Rng rng(101);
  for (int i = 0; i < 1000; ++i) {
    const Vec3 a = rng.vec3(5.0), b = rng.vec3(5.0);
    const FiveVector v(a[0], a[1], a[2], 0, 0), w(b[0], b[1], b[2], 0, 0);
    const double got = nw::scalar_product(v, w).magnitude();
    EXPECT_LE(std::fabs(got - a.dot(b)), 1e-12 * a.norm() * b.norm());
    EXPECT_EQ(got, nw::scalar_product(w, v).magnitude());
  }
}

TEST(Classify, Examples) {
  const auto m = nw::classify_orbit({0, 0, 0, 0, 3});
  ASSERT_TRUE(std::holds_alternative<nw::HyperplaneM>(m));
  EXPECT_EQ(std::get<nw::HyperplaneM>(m).mass.magnitude(), 3.0);

  const auto s = nw::classify_orbit({1, 2, 2, 0, 0});
  ASSERT_TRUE(std::holds_alternative<nw::SphereS>(s));
  EXPECT_EQ(std::get<nw::SphereS>(s).mass_distance.magnitude(), 3.0);

  const auto e = nw::classify_orbit({1, 2, 2, -4, 0});
  ASSERT_TRUE(std::holds_alternative<nw::HyperplaneE>(e));
  EXPECT_EQ(std::get<nw::HyperplaneE>(e).mass_time.magnitude(), -4.0);

  EXPECT_TRUE(std::holds_alternative<nw::Origin>(nw::classify_orbit(FiveVector())));
  EXPECT_EQ(nw::describe(nw::classify_orbit({1, 2, 2, 0, 0})), "class=SphereS md=3");
}

TEST(Classify, InvariantUnderGalilei) {
  ms::Rng rng(102);
  for (int i = 0; i < 1000; ++i) {
    const auto g = ms::draw<GalileiElement>(rng);
    ms::Vec5 c = rng.vec5(2.0);
    const int kind = i % 3;
    if (kind >= 1) c[4] = 0.0;
    if (kind == 2) c[3] = 0.0;
    const FiveVector p(c);
    const FiveVector q = ms::apply(g, p);
    const auto a = nw::classify_orbit(p), b = nw::classify_orbit(q);
    ASSERT_EQ(a.index(), b.index());
    EXPECT_EQ(nw::eval_m(q).magnitude(), nw::eval_m(p).magnitude());
    if (kind >= 1) {
      EXPECT_LE(rel(nw::eval_mt(q).magnitude(), nw::eval_mt(p).magnitude()), 1e-12);
    }
    if (kind == 2) {
      EXPECT_LE(rel(nw::eval_md(q).magnitude(), nw::eval_md(p).magnitude()), 1e-12);
    }
  }
}

TEST(Classify, ParameterScalesUnderExtendedElements) {
  ms::Rng rng(103);
  for (int i = 0; i < 200; ++i) {
    const auto x = ms::draw<ms::ExtendedGalileiElement>(rng);
    const auto f = ms::factorize(x);
    const FiveVector m(rng.vec5(2.0));
    EXPECT_LE(rel(nw::eval_m(FiveVector(ms::apply(x, m.coords))).magnitude(),
                  f.scale.mass * m[4]), 1e-12);
    const FiveVector e(1.0, -0.5, 2.0, 0.75, 0.0);
    EXPECT_LE(rel(nw::eval_mt(FiveVector(ms::apply(x, e.coords))).magnitude(),
                  f.scale.time * 0.75), 1e-12);
    const FiveVector s(3.0, 4.0, 0.0, 0.0, 0.0);
    EXPECT_LE(rel(nw::eval_md(FiveVector(ms::apply(x, s.coords))).magnitude(),
                  std::fabs(f.scale.space) * 5.0), 1e-12);
  }
}

TEST(Linearity, MassAndMassTime) {
  ms::Rng rng(104);
  for (int i = 0; i < 1000; ++i) {
    FiveVector a(rng.vec5(3.0)), b(rng.vec5(3.0));
    const double s = rng.uniform(-2.0, 2.0);
    EXPECT_NEAR(nw::eval_m(s * a + b).magnitude(),
                s * nw::eval_m(a).magnitude() + nw::eval_m(b).magnitude(), 1e-12 * 10);
    a.coords[4] = b.coords[4] = 0.0;
    EXPECT_NEAR(nw::eval_mt(s * a + b).magnitude(),
                s * nw::eval_mt(a).magnitude() + nw::eval_mt(b).magnitude(), 1e-12 * 10);
  }
}

TEST(EvalU, Examples) {
  EXPECT_EQ(nw::eval_u({0, 0, 0, 0, 1}).vector().coords, FiveVector(0, 0, 0, 0, 1).coords);
  const nw::Event e = nw::eval_u({2, 4, 6, 3, 1.5});
  EXPECT_NEAR(e.position()[0], 4.0 / 3.0, 1e-15);
  EXPECT_NEAR(e.position()[1], 8.0 / 3.0, 1e-15);
  EXPECT_EQ(e.position()[2], 4.0);
  EXPECT_EQ(e.time(), 2.0);
  EXPECT_EQ(e.vector()[4], 1.0);
  EXPECT_THROW(nw::eval_u({1, 1, 1, 1, 0}), ms::ZeroMass);
}

TEST(EvalU, ProductStructureReconstructs) {
  ms::Rng rng(105);
  for (int i = 0; i < 1000; ++i) {
    ms::Vec5 c = rng.vec5(3.0);
    c[4] = rng.signed_magnitude(0.1, 3.0);
    const FiveVector p(c);
    const ms::Vec5 back = nw::eval_m(p).magnitude() * nw::eval_u(p).vector().coords;
    EXPECT_LT(ms::max_abs(back - c), 1e-14 * std::max(1.0, ms::max_abs(c)));
  }
}

TEST(EvalTau, Examples) {
  EXPECT_EQ(nw::eval_tau({0, 0, 0, 6, 2}).magnitude(), 3.0);
  EXPECT_EQ(nw::eval_tau({0, 0, 0, 6, 2}).dim(), ms::dims::second());
  EXPECT_EQ(nw::eval_tau({0, 0, 0, 0, 1}).magnitude(), 0.0);
  EXPECT_THROW(nw::eval_tau({0, 0, 0, 1, 0}), ms::ZeroMass);
  ms::Rng rng(106);
  for (int i = 0; i < 100; ++i) {
    ms::Vec5 c = rng.vec5(3.0);
    c[4] = rng.signed_magnitude(0.5, 3.0);
    const double tg = rng.uniform(-5.0, 5.0);
    const FiveVector q = ms::apply(GalileiElement::shift(Vec3::Zero(), tg), FiveVector(c));
    EXPECT_NEAR(nw::eval_tau(q).magnitude(), c[3] / c[4] + tg, 1e-12);
  }
}

TEST(SynchronousDistance, Examples) {
  const nw::Event a(Vec3::Zero(), 1.0), b(Vec3(3, 4, 0), 1.0);
  EXPECT_EQ(nw::synchronous_distance(a, a).magnitude(), 0.0);
  EXPECT_EQ(nw::synchronous_distance(a, b).magnitude(), 5.0);
  EXPECT_EQ(nw::synchronous_distance(a, b).dim(), ms::dims::metre());
  EXPECT_THROW(nw::synchronous_distance(a, nw::Event(Vec3::Zero(), 2.0)), ms::NotSynchronous);
}

TEST(SynchronousDistance, GalileiInvariant) {
  ms::Rng rng(107);
  for (int i = 0; i < 500; ++i) {
    const auto g = ms::draw<GalileiElement>(rng);
    const double t = rng.uniform(-2.0, 2.0);
    const nw::Event a(rng.vec3(2.0), t), b(rng.vec3(2.0), t);
    const nw::Event ga(ms::apply(g, a.vector())), gb(ms::apply(g, b.vector()));
    EXPECT_NEAR(nw::synchronous_distance(ga, gb).magnitude(),
                nw::synchronous_distance(a, b).magnitude(), 1e-12 * 10);
  }
}

TEST(Event, RepresentativesAreValidated) {
  EXPECT_THROW(nw::Event(FiveVector(0, 0, 0, 0, 2)), ms::DomainError);
  EXPECT_THROW(nw::FourVelocity(FiveVector(0, 0, 0, 2, 0)), ms::DomainError);
  EXPECT_EQ(nw::FourVelocity(Vec3(1, 2, 3)).vector()[3], 1.0);
}
