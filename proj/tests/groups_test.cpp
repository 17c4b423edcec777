#include <gtest/gtest.h>

#include "mechspace/groups.hpp"

namespace ms = mechspace;
using ms::ExtendedGalileiElement;
using ms::ExtendedPoincareElement;
using ms::GalileiElement;
using ms::Mat5;
using ms::PoincareElement;
using ms::SubgroupTag;
using ms::Vec3;
using ms::Vec4;
using ms::Vec5;

namespace {

Vec5 v5(double a, double b, double c, double d, double e) {
  Vec5 v;
  v << a, b, c, d, e;
  return v;
}

// The displayed action (Ox + vy + az, y + tz, z), written out by hand.
Vec5 galilei_action(const GalileiElement& g, const Vec5& p) {
  const Vec3 x = p.head<3>();
  const double y = p[3], z = p[4];
  const Vec3 xs = g.rotation * x + g.velocity * y + g.translation * z;
  return v5(xs[0], xs[1], xs[2], y + g.time * z, z);
}

double eta_residual(const ms::Mat4& l) {
  return ms::max_abs(l.transpose() * ms::minkowski_metric() * l - ms::minkowski_metric());
}

template <typename G>
void check_axioms(std::uint64_t seed) {
  ms::Rng rng(seed);
  for (int i = 0; i < 500; ++i) {
    const G g = ms::draw<G>(rng), h = ms::draw<G>(rng), k = ms::draw<G>(rng);
    const Mat5 l = ms::compose(ms::compose(g, h), k).matrix();
    const Mat5 r = ms::compose(g, ms::compose(h, k)).matrix();
    EXPECT_LT(ms::max_abs(l - r), 1e-9 * std::max(1.0, ms::max_abs(l)));
    EXPECT_LT(ms::max_abs(ms::compose(g, ms::inverse(g)).matrix() - Mat5::Identity()), 1e-10);
    EXPECT_LT(ms::max_abs(ms::compose(g, h).matrix() - g.matrix() * h.matrix()),
              1e-12 * std::max(1.0, ms::max_abs(l)));
  }
}

}  // namespace

TEST(Compose, IdentityAndTranslations) {
  const GalileiElement g = ms::sample<GalileiElement>(5);
  EXPECT_EQ(ms::compose(g, GalileiElement::identity()).matrix(), g.matrix());

  const auto a = GalileiElement::shift({1, 2, 3}, 0.5);
  const auto b = GalileiElement::shift({-4, 0.5, 2}, 1.25);
  const GalileiElement c = ms::compose(a, b);
  EXPECT_EQ(c.translation, Vec3(-3, 2.5, 5));
  EXPECT_EQ(c.time, 1.75);
  EXPECT_EQ(c.rotation, ms::Mat3::Identity());
}

TEST(Compose, BoostsAdd) {
  const GalileiElement c =
      ms::compose(GalileiElement::boost({0.5, 0, 1}), GalileiElement::boost({0.25, -2, 0}));
  EXPECT_EQ(c.velocity, Vec3(0.75, -2, 1));
  EXPECT_EQ(c.translation, Vec3::Zero());
  EXPECT_EQ(c.time, 0.0);
}

TEST(Apply, DisplayedFormula) {
  const Vec5 p = v5(1, 2, 3, 4, 5);
  EXPECT_EQ(ms::apply(GalileiElement::identity(), p), p);
  EXPECT_EQ(ms::apply(GalileiElement::boost({1, 0, 0}), v5(0, 0, 0, 1, 1)), v5(1, 0, 0, 1, 1));
  EXPECT_EQ(ms::apply(GalileiElement::shift(Vec3::Zero(), 2), v5(0, 0, 0, 3, 1)),
            v5(0, 0, 0, 5, 1));
  ms::Rng rng(21);
  for (int i = 0; i < 200; ++i) {
    const auto g = ms::draw<GalileiElement>(rng);
    const Vec5 q = rng.vec5(3.0);
    EXPECT_LT(ms::max_abs(ms::apply(g, q) - galilei_action(g, q)), 1e-13);
  }
}

TEST(Axioms, Galilei) { check_axioms<GalileiElement>(31); }
TEST(Axioms, ExtendedGalilei) { check_axioms<ExtendedGalileiElement>(32); }
TEST(Axioms, Poincare) { check_axioms<PoincareElement>(33); }
TEST(Axioms, ExtendedPoincare) { check_axioms<ExtendedPoincareElement>(34); }

TEST(Sample, DeterministicAndValid) {
  EXPECT_EQ(ms::sample<GalileiElement>(0).matrix(), ms::sample<GalileiElement>(0).matrix());
  EXPECT_NE(ms::sample<GalileiElement>(0).matrix(), ms::sample<GalileiElement>(1).matrix());
  EXPECT_THROW(ms::sample<GalileiElement>(0, 0.0), ms::DomainError);
  ms::Rng rng(41);
  for (int i = 0; i < 500; ++i) {
    const auto g = ms::draw<GalileiElement>(rng);
    EXPECT_LT(std::fabs(g.rotation.determinant() - 1.0), 1e-12);
    EXPECT_TRUE(g.is_valid(1e-12));
    const auto p = ms::draw<PoincareElement>(rng);
    EXPECT_LT(eta_residual(p.lorentz), 1e-12 * std::max(1.0, ms::max_abs(p.lorentz)));
    EXPECT_GE(p.lorentz(3, 3), 1.0);
    EXPECT_TRUE(p.is_valid(1e-12));
  }
}

TEST(Membership, RejectsNonMembers) {
  GalileiElement g;
  g.rotation(0, 0) = -1.0;  // det -1
  EXPECT_FALSE(g.is_valid());
  PoincareElement p;
  p.lorentz(3, 3) = -1.0;
  p.lorentz(0, 0) = -1.0;  // det +1 but time-reversing
  EXPECT_FALSE(p.is_valid());
  ExtendedGalileiElement x;
  x.A(0, 1) = 0.3;
  EXPECT_FALSE(x.is_valid());
  EXPECT_THROW(ms::factorize(x), ms::NotInExtendedGroup);
}

TEST(Membership, PoincareDriftAfterCompositions) {
  ms::Rng rng(51);
  PoincareElement acc;
  for (int i = 0; i < 100; ++i) acc = ms::compose(acc, ms::draw<PoincareElement>(rng, 0.1));
  const double n = ms::max_abs(acc.lorentz);
  EXPECT_LT(eta_residual(acc.lorentz) / (n * n), 1e-9);
}

TEST(Factorize, Examples) {
  const auto g = ms::sample<GalileiElement>(9);
  const auto f0 = ms::factorize(ExtendedGalileiElement::from(g));
  EXPECT_EQ(f0.scale.space, 1.0);
  EXPECT_EQ(f0.scale.time, 1.0);
  EXPECT_EQ(f0.scale.mass, 1.0);
  EXPECT_LT(ms::max_abs(f0.element.matrix() - g.matrix()), 1e-15);

  const ms::Mat3 o = g.rotation;
  ExtendedGalileiElement x;
  x.A = 2.0 * o;
  x.d = 3.0;
  x.e = 5.0;
  const auto f = ms::factorize(x);
  EXPECT_NEAR(f.scale.space, 2.0, 1e-15);
  EXPECT_EQ(f.scale.time, 3.0);
  EXPECT_EQ(f.scale.mass, 5.0);
  EXPECT_LT(ms::max_abs(f.element.rotation - o), 1e-15);
  EXPECT_EQ(f.element.velocity, Vec3::Zero());
  EXPECT_EQ(f.element.time, 0.0);

  const auto p = ms::sample<PoincareElement>(10);
  ExtendedPoincareElement y{-2.0 * p.lorentz, -2.0 * p.translation, 0.5};
  const auto fp = ms::factorize(y);
  EXPECT_NEAR(fp.scale.spacetime, -2.0, 1e-14);
  EXPECT_EQ(fp.scale.mass, 0.5);
  EXPECT_LT(ms::max_abs(fp.element.lorentz - p.lorentz), 1e-13 * ms::max_abs(p.lorentz));
}

TEST(Factorize, NegativeSpatialScale) {
  const auto g = ms::sample<GalileiElement>(12);
  const auto x = ExtendedGalileiElement::from(ms::GalileiScale{-1.5, 2.0, -0.75}, g);
  const auto f = ms::factorize(x);
  EXPECT_NEAR(f.scale.space, -1.5, 1e-14);
  EXPECT_LT(ms::max_abs(f.element.matrix() - g.matrix()), 1e-14);
}

TEST(Factorize, ReconstructionAndUniqueness) {
  ms::Rng rng(61);
  for (int i = 0; i < 500; ++i) {
    const auto x = ms::draw<ExtendedGalileiElement>(rng);
    const auto f = ms::factorize(x);
    EXPECT_LT(ms::max_abs(f.scale.matrix() * f.element.matrix() - x.matrix()),
              1e-12 * ms::max_abs(x.matrix()));
    const auto f2 = ms::factorize(ExtendedGalileiElement::from_matrix(x.matrix()));
    EXPECT_LT(ms::max_abs(f2.element.matrix() - f.element.matrix()), 1e-10);

    const auto y = ms::draw<ExtendedPoincareElement>(rng);
    const auto fp = ms::factorize(y);
    EXPECT_LT(ms::max_abs(fp.scale.matrix() * fp.element.matrix() - y.matrix()),
              1e-12 * ms::max_abs(y.matrix()));
  }
}

TEST(Subgroups, IdentityHasEveryTag) {
  const auto gt = ms::classify_subgroup(GalileiElement::identity());
  for (SubgroupTag t : ms::kGalileiTags) EXPECT_TRUE(gt.count(t)) << ms::tag_name(t);
  const auto pt = ms::classify_subgroup(PoincareElement::identity());
  for (SubgroupTag t : ms::kPoincareTags) EXPECT_TRUE(pt.count(t)) << ms::tag_name(t);
}

TEST(Subgroups, PureBoost) {
  const auto tags = ms::classify_subgroup(GalileiElement::boost({1, 0, 0}));
  const ms::TagSet want{SubgroupTag::B, SubgroupTag::BT3, SubgroupTag::BT4, SubgroupTag::SOB,
                        SubgroupTag::SOBT3};
  EXPECT_EQ(tags, want);
}

TEST(Subgroups, PoincareRotation) {
  const ms::Mat3 rz = Eigen::AngleAxisd(0.7, Vec3::UnitZ()).toRotationMatrix();
  const auto tags = ms::classify_subgroup(PoincareElement{ms::lorentz::rotation(rz), Vec4::Zero()});
  EXPECT_TRUE(tags.count(SubgroupTag::stab_timelike));
  EXPECT_TRUE(tags.count(SubgroupTag::L_full));
  EXPECT_FALSE(tags.count(SubgroupTag::stab_spacelike));
  EXPECT_FALSE(tags.count(SubgroupTag::boost));

  const auto bx = ms::classify_subgroup(PoincareElement{ms::lorentz::boost(Vec3::UnitX(), 0.4), {}});
  EXPECT_TRUE(bx.count(SubgroupTag::boost));
  EXPECT_FALSE(bx.count(SubgroupTag::stab_timelike));
}

TEST(Subgroups, UpwardClosedAlongInclusions) {
  ms::Rng rng(71);
  for (int i = 0; i < 300; ++i) {
    GalileiElement g = ms::draw<GalileiElement>(rng);
    // Zero out a random subset of the blocks to land in smaller subgroups.
    if (rng.unit() < 0.5) g.rotation.setIdentity();
    if (rng.unit() < 0.5) g.velocity.setZero();
    if (rng.unit() < 0.5) g.translation.setZero();
    if (rng.unit() < 0.5) g.time = 0.0;
    const auto tags = ms::classify_subgroup(g);
    for (auto [small, large] : ms::kGalileiInclusions)
      if (tags.count(small)) {
        EXPECT_TRUE(tags.count(large)) << ms::tag_name(small);
      }
  }
}

TEST(Subgroups, NormalSubgroupsAreStableUnderConjugation) {
  ms::Rng rng(81);
  for (SubgroupTag tag : ms::kGalileiNormalTags) {
    for (int i = 0; i < 100; ++i) {
      GalileiElement n = ms::draw<GalileiElement>(rng);
      switch (tag) {
        case SubgroupTag::T3: n = GalileiElement::shift(n.translation, 0.0); break;
        case SubgroupTag::T4: n = GalileiElement::shift(n.translation, n.time); break;
        case SubgroupTag::BT3: n.rotation.setIdentity(); n.time = 0.0; break;
        case SubgroupTag::BT4: n.rotation.setIdentity(); break;
        case SubgroupTag::SOBT3: n.time = 0.0; break;
        default: break;
      }
      ASSERT_TRUE(ms::classify_subgroup(n).count(tag));
      const GalileiElement g = ms::draw<GalileiElement>(rng);
      const GalileiElement c = ms::compose(ms::compose(g, n), ms::inverse(g));
      EXPECT_TRUE(ms::classify_subgroup(c).count(tag)) << ms::tag_name(tag);
    }
  }
}

TEST(Subgroups, NonNormalSubgroupIsMoved) {
  // Rotations are not normal: conjugating by a translation leaves SOg.
  const GalileiElement r = GalileiElement::rotate(
      Eigen::AngleAxisd(0.5, Vec3::UnitZ()).toRotationMatrix());
  const GalileiElement t = GalileiElement::shift({1, 0, 0}, 0.0);
  const auto c = ms::compose(ms::compose(t, r), ms::inverse(t));
  EXPECT_FALSE(ms::classify_subgroup(c).count(SubgroupTag::SOg));
}
