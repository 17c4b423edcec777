#pragma once

// Matrix realizations of the Galilei group, the Poincare group, and their
// automorphism ("extended") groups acting on R^5.
//
// Block parameters are the source of truth; the 5x5 matrix is derived on
// demand.  Galilei layout is R^3 x R x R (space, mass-time, mass); Poincare
// layout is R^4 x R with index 3 the time axis.

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <set>
#include <string_view>
#include <utility>

#include "mechspace/errors.hpp"
#include "mechspace/linalg.hpp"
#include "mechspace/random.hpp"

namespace mechspace {

/// Absolute tolerance on orthogonality residuals.
inline constexpr double kTolOrth = 1e-10;
/// Tolerance for subgroup membership conditions.
inline constexpr double kTolClass = 1e-10;

enum class Family : std::uint8_t { galilei, extended_galilei, poincare, extended_poincare };

constexpr std::string_view family_name(Family f) {
  switch (f) {
    case Family::galilei: return "galilei";
    case Family::extended_galilei: return "extended-galilei";
    case Family::poincare: return "poincare";
    case Family::extended_poincare: return "extended-poincare";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Galilei group

struct GalileiElement {
  Mat3 rotation = Mat3::Identity();
  Vec3 velocity = Vec3::Zero();
  Vec3 translation = Vec3::Zero();
  double time = 0.0;

  static constexpr Family family = Family::galilei;
  static GalileiElement identity() { return {}; }

  static GalileiElement boost(const Vec3& v) { return {Mat3::Identity(), v, Vec3::Zero(), 0.0}; }
  static GalileiElement shift(const Vec3& x, double t) {
    return {Mat3::Identity(), Vec3::Zero(), x, t};
  }
  static GalileiElement rotate(const Mat3& o) { return {o, Vec3::Zero(), Vec3::Zero(), 0.0}; }

  Mat5 matrix() const {
    Mat5 m = Mat5::Zero();
    m.block<3, 3>(0, 0) = rotation;
    m.block<3, 1>(0, 3) = velocity;
    m.block<3, 1>(0, 4) = translation;
    m(3, 3) = 1.0;
    m(3, 4) = time;
    m(4, 4) = 1.0;
    return m;
  }

  /// max(|O^T O - I|, |det O - 1|)
  double membership_residual() const {
    return std::max(max_abs(rotation.transpose() * rotation - Mat3::Identity()),
                    std::fabs(rotation.determinant() - 1.0));
  }

  bool is_valid(double tol = kTolOrth) const {
    return velocity.allFinite() && translation.allFinite() && std::isfinite(time) &&
           membership_residual() <= tol;
  }
};

inline GalileiElement compose(const GalileiElement& g, const GalileiElement& h) {
  GalileiElement r;
  r.rotation = g.rotation * h.rotation;
  r.velocity = g.rotation * h.velocity + g.velocity;
  r.translation = g.rotation * h.translation + g.velocity * h.time + g.translation;
  r.time = g.time + h.time;
  if (!r.is_valid())
    throw MembershipViolation("Galilei composition drifted out of SO(3); re-orthonormalize");
  return r;
}

inline GalileiElement inverse(const GalileiElement& g) {
  GalileiElement r;
  r.rotation = g.rotation.transpose();
  r.velocity = -r.rotation * g.velocity;
  r.translation = -r.rotation * (g.translation - g.velocity * g.time);
  r.time = -g.time;
  return r;
}

/// (Ox + vy + az, y + tz, z)
inline Vec5 apply(const GalileiElement& g, const Vec5& p) {
  Vec5 r;
  r.head<3>() = g.rotation * p.head<3>() + g.velocity * p[3] + g.translation * p[4];
  r[3] = p[3] + g.time * p[4];
  r[4] = p[4];
  return r;
}

/// Gram-Schmidt on the columns of the rotation block.
inline GalileiElement reorthonormalize(GalileiElement g) {
  Mat3& o = g.rotation;
  Vec3 c0 = o.col(0).normalized();
  Vec3 c1 = (o.col(1) - c0.dot(o.col(1)) * c0).normalized();
  Vec3 c2 = c0.cross(c1);
  o.col(0) = c0;
  o.col(1) = c1;
  o.col(2) = c2;
  return g;
}

/// diag(a Id, b, c): the unit-changing factor of the extended Galilei group.
struct GalileiScale {
  double space = 1.0;  // a: acts on [kgm]
  double time = 1.0;   // b: acts on [kgs]
  double mass = 1.0;   // c: acts on [kg]

  Mat5 matrix() const {
    Mat5 m = Mat5::Zero();
    m.diagonal() << space, space, space, time, mass;
    return m;
  }
};

struct ExtendedGalileiElement {
  Mat3 A = Mat3::Identity();
  Vec3 a = Vec3::Zero();
  Vec3 b = Vec3::Zero();
  double c = 0.0;
  double d = 1.0;
  double e = 1.0;

  static constexpr Family family = Family::extended_galilei;
  static ExtendedGalileiElement identity() { return {}; }

  static ExtendedGalileiElement from(const GalileiElement& g) {
    return {g.rotation, g.velocity, g.translation, g.time, 1.0, 1.0};
  }

  /// c * g
  static ExtendedGalileiElement from(const GalileiScale& s, const GalileiElement& g) {
    return {s.space * g.rotation, s.space * g.velocity, s.space * g.translation,
            s.time * g.time,      s.time,               s.mass};
  }

  static ExtendedGalileiElement from_matrix(const Mat5& m) {
    ExtendedGalileiElement r;
    r.A = m.block<3, 3>(0, 0);
    r.a = m.block<3, 1>(0, 3);
    r.b = m.block<3, 1>(0, 4);
    r.d = m(3, 3);
    r.c = m(3, 4);
    r.e = m(4, 4);
    return r;
  }

  Mat5 matrix() const {
    Mat5 m = Mat5::Zero();
    m.block<3, 3>(0, 0) = A;
    m.block<3, 1>(0, 3) = a;
    m.block<3, 1>(0, 4) = b;
    m(3, 3) = d;
    m(3, 4) = c;
    m(4, 4) = e;
    return m;
  }

  /// n with A A^T = n Id.
  double conformal_factor() const { return (A * A.transpose()).trace() / 3.0; }

  double membership_residual() const {
    const double n = conformal_factor();
    if (!(n > 0.0)) return std::numeric_limits<double>::infinity();
    return max_abs(A * A.transpose() - n * Mat3::Identity()) / n;
  }

  bool is_valid(double tol = kTolOrth) const {
    return A.allFinite() && a.allFinite() && b.allFinite() && std::isfinite(c) && d != 0.0 &&
           e != 0.0 && std::isfinite(d) && std::isfinite(e) && membership_residual() <= tol;
  }
};

inline ExtendedGalileiElement compose(const ExtendedGalileiElement& g,
                                      const ExtendedGalileiElement& h) {
  auto r = ExtendedGalileiElement::from_matrix(g.matrix() * h.matrix());
  if (!r.is_valid())
    throw MembershipViolation("extended Galilei composition drifted out of the group");
  return r;
}

inline ExtendedGalileiElement inverse(const ExtendedGalileiElement& g) {
  ExtendedGalileiElement r;
  r.A = g.A.inverse();
  r.d = 1.0 / g.d;
  r.e = 1.0 / g.e;
  r.c = -g.c / (g.d * g.e);
  r.a = -r.A * g.a * r.d;
  r.b = -r.A * (g.a * r.c + g.b * r.e);
  return r;
}

inline Vec5 apply(const ExtendedGalileiElement& g, const Vec5& p) { return g.matrix() * p; }

struct GalileiFactorization {
  GalileiScale scale;
  GalileiElement element;
};

/// The unique decomposition g_ext = c * g with c a scale and g in G^R.
/// The sign of the spatial scale follows det A, so A = -sqrt(n) O is accepted.
inline GalileiFactorization factorize(const ExtendedGalileiElement& x) {
  if (!x.is_valid()) throw NotInExtendedGroup("matrix is not in the extended Galilei group");
  const double n = x.conformal_factor();
  const double alpha = std::copysign(std::sqrt(n), x.A.determinant());
  GalileiFactorization f;
  f.scale = {alpha, x.d, x.e};
  f.element.rotation = x.A / alpha;
  f.element.velocity = x.a / alpha;
  f.element.translation = x.b / alpha;
  f.element.time = x.c / x.d;
  return f;
}

// ---------------------------------------------------------------------------
// Poincare group

namespace lorentz {

inline Mat4 boost(const Vec3& direction, double rapidity) {
  const Vec3 n = direction.normalized();
  const double ch = std::cosh(rapidity), sh = std::sinh(rapidity);
  Mat4 l = Mat4::Identity();
  l.block<3, 3>(0, 0) += (ch - 1.0) * n * n.transpose();
  l.block<3, 1>(0, 3) = sh * n;
  l.block<1, 3>(3, 0) = sh * n.transpose();
  l(3, 3) = ch;
  return l;
}

inline Mat4 rotation(const Mat3& o) {
  Mat4 l = Mat4::Identity();
  l.block<3, 3>(0, 0) = o;
  return l;
}

/// Boost carrying the rest frame e4 to the unit four-velocity u.
inline Mat4 boost_to(const Vec4& u) {
  const Vec3 s = u.head<3>();
  const double g = u[3];
  Mat4 l = Mat4::Identity();
  const double k = 1.0 / (1.0 + g);
  l.block<3, 3>(0, 0) += k * s * s.transpose();
  l.block<3, 1>(0, 3) = s;
  l.block<1, 3>(3, 0) = s.transpose();
  l(3, 3) = g;
  return l;
}

/// max |L^T eta L - eta| divided by max(1, |L|^2).
inline double residual(const Mat4& l) {
  const Mat4 eta = minkowski_metric();
  const double s = std::max(1.0, max_abs(l));
  return max_abs(l.transpose() * eta * l - eta) / (s * s);
}

inline bool is_proper_orthochronous(const Mat4& l, double tol) {
  if (!l.allFinite()) return false;
  const double s = std::max(1.0, max_abs(l));
  return residual(l) <= tol && std::fabs(l.determinant() - 1.0) <= tol * s * s * s * s &&
         l(3, 3) >= 1.0 - tol;
}

}  // namespace lorentz

struct PoincareElement {
  Mat4 lorentz = Mat4::Identity();
  Vec4 translation = Vec4::Zero();

  static constexpr Family family = Family::poincare;
  static PoincareElement identity() { return {}; }
  static PoincareElement shift(const Vec4& x) { return {Mat4::Identity(), x}; }

  Mat5 matrix() const {
    Mat5 m = Mat5::Zero();
    m.block<4, 4>(0, 0) = lorentz;
    m.block<4, 1>(0, 4) = translation;
    m(4, 4) = 1.0;
    return m;
  }

  double membership_residual() const { return lorentz::residual(lorentz); }

  bool is_valid(double tol = kTolOrth) const {
    return translation.allFinite() && lorentz::is_proper_orthochronous(lorentz, tol);
  }
};

inline PoincareElement compose(const PoincareElement& g, const PoincareElement& h) {
  PoincareElement r{g.lorentz * h.lorentz, g.lorentz * h.translation + g.translation};
  if (!r.is_valid())
    throw MembershipViolation("Poincare composition drifted out of SO+(3,1); re-orthonormalize");
  return r;
}

inline PoincareElement inverse(const PoincareElement& g) {
  const Mat4 eta = minkowski_metric();
  const Mat4 li = eta * g.lorentz.transpose() * eta;
  return {li, -li * g.translation};
}

inline Vec5 apply(const PoincareElement& g, const Vec5& p) {
  Vec5 r;
  r.head<4>() = g.lorentz * p.head<4>() + g.translation * p[4];
  r[4] = p[4];
  return r;
}

/// Gram-Schmidt with respect to eta, starting from the timelike column.
inline PoincareElement reorthonormalize(PoincareElement g) {
  Mat4& l = g.lorentz;
  std::array<Vec4, 4> c{l.col(0), l.col(1), l.col(2), l.col(3)};
  c[3] /= std::sqrt(-minkowski(c[3], c[3]));
  for (int i = 0; i < 3; ++i) {
    c[i] += minkowski(c[i], c[3]) * c[3];
    for (int j = 0; j < i; ++j) c[i] -= minkowski(c[i], c[j]) * c[j];
    c[i] /= std::sqrt(minkowski(c[i], c[i]));
  }
  for (int i = 0; i < 4; ++i) l.col(i) = c[i];
  return g;
}

/// diag(a Id_4, b)
struct PoincareScale {
  double spacetime = 1.0;
  double mass = 1.0;

  Mat5 matrix() const {
    Mat5 m = Mat5::Zero();
    m.diagonal() << spacetime, spacetime, spacetime, spacetime, mass;
    return m;
  }
};

struct ExtendedPoincareElement {
  Mat4 A = Mat4::Identity();
  Vec4 a = Vec4::Zero();
  double b = 1.0;

  static constexpr Family family = Family::extended_poincare;
  static ExtendedPoincareElement identity() { return {}; }

  static ExtendedPoincareElement from(const PoincareElement& p) {
    return {p.lorentz, p.translation, 1.0};
  }

  static ExtendedPoincareElement from(const PoincareScale& s, const PoincareElement& p) {
    return {s.spacetime * p.lorentz, s.spacetime * p.translation, s.mass};
  }

  static ExtendedPoincareElement from_matrix(const Mat5& m) {
    return {m.block<4, 4>(0, 0), m.block<4, 1>(0, 4), m(4, 4)};
  }

  Mat5 matrix() const {
    Mat5 m = Mat5::Zero();
    m.block<4, 4>(0, 0) = A;
    m.block<4, 1>(0, 4) = a;
    m(4, 4) = b;
    return m;
  }

  /// n with A = n L, L in SO+(3,1): |n| = |det A|^(1/4), sign from A_44.
  double scale_factor() const {
    return std::copysign(std::pow(std::fabs(A.determinant()), 0.25), A(3, 3));
  }

  bool is_valid(double tol = kTolOrth) const {
    if (!A.allFinite() || !a.allFinite() || !std::isfinite(b) || b == 0.0) return false;
    const double n = scale_factor();
    return n != 0.0 && lorentz::is_proper_orthochronous(A / n, tol);
  }
};

inline ExtendedPoincareElement compose(const ExtendedPoincareElement& g,
                                       const ExtendedPoincareElement& h) {
  auto r = ExtendedPoincareElement::from_matrix(g.matrix() * h.matrix());
  if (!r.is_valid())
    throw MembershipViolation("extended Poincare composition drifted out of the group");
  return r;
}

inline ExtendedPoincareElement inverse(const ExtendedPoincareElement& g) {
  const Mat4 ai = g.A.inverse();
  return {ai, -ai * g.a / g.b, 1.0 / g.b};
}

inline Vec5 apply(const ExtendedPoincareElement& g, const Vec5& p) { return g.matrix() * p; }

struct PoincareFactorization {
  PoincareScale scale;
  PoincareElement element;
};

inline PoincareFactorization factorize(const ExtendedPoincareElement& x) {
  if (!x.is_valid()) throw NotInExtendedGroup("matrix is not in the extended Poincare group");
  const double n = x.scale_factor();
  return {{n, x.b}, {x.A / n, x.a / n}};
}

// ---------------------------------------------------------------------------
// Generic interface

template <typename G>
concept GroupElement = requires(const G& g, const Vec5& v) {
  { G::identity() } -> std::same_as<G>;
  { compose(g, g) } -> std::same_as<G>;
  { inverse(g) } -> std::same_as<G>;
  { apply(g, v) } -> std::convertible_to<Vec5>;
  { g.matrix() } -> std::convertible_to<Mat5>;
  { g.is_valid() } -> std::convertible_to<bool>;
};

template <typename G>
concept ExtendedGroupElement =
    GroupElement<G> && (G::family == Family::extended_galilei ||
                        G::family == Family::extended_poincare);

/// Random element drawn from a seeded stream.  Rotations are Haar-uniform,
/// Galilei velocities/translations uniform in [-scale, scale] per component,
/// Lorentz parts rotation * boost(rapidity in [-2, 2]) * rotation.
template <GroupElement G>
G draw(Rng& rng, double scale = 1.0) {
  if constexpr (G::family == Family::galilei) {
    GalileiElement g;
    g.rotation = rng.rotation();
    g.velocity = rng.vec3(scale);
    g.translation = rng.vec3(scale);
    g.time = rng.uniform(-scale, scale);
    return g;
  } else if constexpr (G::family == Family::poincare) {
    PoincareElement p;
    const Mat4 r1 = lorentz::rotation(rng.rotation());
    const Mat4 r2 = lorentz::rotation(rng.rotation());
    p.lorentz = r1 * lorentz::boost(Vec3::UnitX(), rng.uniform(-2.0, 2.0)) * r2;
    p.translation = rng.vec4(scale);
    return p;
  } else if constexpr (G::family == Family::extended_galilei) {
    GalileiScale s{rng.signed_magnitude(0.5, 2.0), rng.signed_magnitude(0.5, 2.0),
                   rng.signed_magnitude(0.5, 2.0)};
    return ExtendedGalileiElement::from(s, draw<GalileiElement>(rng, scale));
  } else {
    PoincareScale s{rng.signed_magnitude(0.5, 2.0), rng.signed_magnitude(0.5, 2.0)};
    return ExtendedPoincareElement::from(s, draw<PoincareElement>(rng, scale));
  }
}

template <GroupElement G>
G sample(std::uint64_t seed, double scale = 1.0) {
  if (!(scale > 0.0)) throw DomainError("sample scale must be positive");
  Rng rng(seed);
  return draw<G>(rng, scale);
}

// ---------------------------------------------------------------------------
// Subgroup lattice

enum class SubgroupTag : std::uint8_t {
  // Galilei normal subgroups and their companions
  T4,     // parallel translations: O = I, v = 0
  B,      // boosts: O = I, x = 0, t = 0
  SOg,    // rotations: v = 0, x = 0, t = 0
  BT4,    // kernel of the restriction to E0: O = I
  T3,     // spacelike translations: O = I, v = 0, t = 0
  BT3,    // SOBT3 intersect BT4: O = I, t = 0
  SOBT3,  // kernel of the time-translation homomorphism: t = 0
  SOB,    // homogeneous Galilei group: x = 0, t = 0
  // Poincare
  L_full,          // homogeneous Lorentz group: x = 0
  stab_timelike,   // stabilizer of e4
  stab_spacelike,  // stabilizer of e1
  stab_lightlike,  // stabilizer of e1 + e4
  boost,           // boosts along e1 (identity on span(e2, e3))
};

constexpr std::string_view tag_name(SubgroupTag t) {
  switch (t) {
    case SubgroupTag::T4: return "T4";
    case SubgroupTag::B: return "B";
    case SubgroupTag::SOg: return "SOg";
    case SubgroupTag::BT4: return "BT4";
    case SubgroupTag::T3: return "T3";
    case SubgroupTag::BT3: return "BT3";
    case SubgroupTag::SOBT3: return "SOBT3";
    case SubgroupTag::SOB: return "SOB";
    case SubgroupTag::L_full: return "L";
    case SubgroupTag::stab_timelike: return "stab_timelike";
    case SubgroupTag::stab_spacelike: return "stab_spacelike";
    case SubgroupTag::stab_lightlike: return "stab_lightlike";
    case SubgroupTag::boost: return "boost";
  }
  return "?";
}

using TagSet = std::set<SubgroupTag>;

inline constexpr std::array<SubgroupTag, 8> kGalileiTags{
    SubgroupTag::T4,  SubgroupTag::B,     SubgroupTag::SOg,   SubgroupTag::BT4,
    SubgroupTag::T3,  SubgroupTag::BT3,   SubgroupTag::SOBT3, SubgroupTag::SOB};

inline constexpr std::array<SubgroupTag, 5> kPoincareTags{
    SubgroupTag::L_full, SubgroupTag::stab_timelike, SubgroupTag::stab_spacelike,
    SubgroupTag::stab_lightlike, SubgroupTag::boost};

/// Normal subgroups of the Galilei group.
inline constexpr std::array<SubgroupTag, 5> kGalileiNormalTags{
    SubgroupTag::T3, SubgroupTag::T4, SubgroupTag::BT3, SubgroupTag::BT4, SubgroupTag::SOBT3};

/// (smaller, larger) canonical inclusions among the tagged subgroups.
inline constexpr std::array<std::pair<SubgroupTag, SubgroupTag>, 9> kGalileiInclusions{{
    {SubgroupTag::T3, SubgroupTag::T4},
    {SubgroupTag::T4, SubgroupTag::BT4},
    {SubgroupTag::T3, SubgroupTag::BT3},
    {SubgroupTag::BT3, SubgroupTag::BT4},
    {SubgroupTag::BT3, SubgroupTag::SOBT3},
    {SubgroupTag::B, SubgroupTag::BT3},
    {SubgroupTag::B, SubgroupTag::SOB},
    {SubgroupTag::SOg, SubgroupTag::SOB},
    {SubgroupTag::SOB, SubgroupTag::SOBT3},
}};

inline constexpr std::array<std::pair<SubgroupTag, SubgroupTag>, 4> kPoincareInclusions{{
    {SubgroupTag::stab_timelike, SubgroupTag::L_full},
    {SubgroupTag::stab_spacelike, SubgroupTag::L_full},
    {SubgroupTag::stab_lightlike, SubgroupTag::L_full},
    {SubgroupTag::boost, SubgroupTag::L_full},
}};

inline TagSet classify_subgroup(const GalileiElement& g, double tol = kTolClass) {
  const bool o_id = max_abs(g.rotation - Mat3::Identity()) <= tol;
  const bool v0 = max_abs(g.velocity) <= tol;
  const bool x0 = max_abs(g.translation) <= tol;
  const bool t0 = std::fabs(g.time) <= tol;
  TagSet tags;
  if (o_id && v0) tags.insert(SubgroupTag::T4);
  if (o_id && x0 && t0) tags.insert(SubgroupTag::B);
  if (v0 && x0 && t0) tags.insert(SubgroupTag::SOg);
  if (o_id) tags.insert(SubgroupTag::BT4);
  if (o_id && v0 && t0) tags.insert(SubgroupTag::T3);
  if (o_id && t0) tags.insert(SubgroupTag::BT3);
  if (t0) tags.insert(SubgroupTag::SOBT3);
  if (x0 && t0) tags.insert(SubgroupTag::SOB);
  return tags;
}

inline TagSet classify_subgroup(const PoincareElement& p, double tol = kTolClass) {
  const Mat4& l = p.lorentz;
  const double s = std::max(1.0, max_abs(l));
  const bool x0 = max_abs(p.translation) <= tol;
  TagSet tags;
  if (max_abs(l - Mat4::Identity()) <= tol) tags.insert(SubgroupTag::T4);
  if (!x0) return tags;
  tags.insert(SubgroupTag::L_full);
  const Vec4 e1 = Vec4::UnitX(), e4 = Vec4::UnitW();
  if (max_abs(l * e4 - e4) <= tol * s) tags.insert(SubgroupTag::stab_timelike);
  if (max_abs(l * e1 - e1) <= tol * s) tags.insert(SubgroupTag::stab_spacelike);
  if (max_abs(l * (e1 + e4) - (e1 + e4)) <= tol * s) tags.insert(SubgroupTag::stab_lightlike);
  const bool fixes_transverse = max_abs(l.col(1) - Vec4::UnitY()) <= tol * s &&
                                max_abs(l.col(2) - Vec4::UnitZ()) <= tol * s;
  const bool keeps_plane = std::fabs(l(1, 0)) + std::fabs(l(2, 0)) + std::fabs(l(1, 3)) +
                               std::fabs(l(2, 3)) <= tol * s;
  if (fixes_transverse && keeps_plane) tags.insert(SubgroupTag::boost);
  return tags;
}

}  // namespace mechspace
