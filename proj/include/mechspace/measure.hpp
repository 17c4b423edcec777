#pragma once

// Algebra of one-dimensional real linear spaces ("measure lines").
//
// A dimension is a product of rational powers of the three primitive lines
// [kg], [kgs] and [kgm].  Canonical isomorphism classes are tracked exactly:
// the exponent vector plus, for each unoriented primitive, the parity of its
// orientation character.  A line is oriented iff every character is even;
// |D| clears the characters and marks the line as an absolute value.

#include <array>
#include <cctype>
#include <cmath>
#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>

#include "mechspace/errors.hpp"

namespace mechspace {

/// Exact rational number, always gcd-reduced with a positive denominator.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT
  Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) {
    if (d == 0) throw DivisionByZero("rational with zero denominator");
    normalize();
  }

  constexpr std::int64_t num() const { return num_; }
  constexpr std::int64_t den() const { return den_; }
  constexpr bool is_integer() const { return den_ == 1; }
  constexpr bool is_zero() const { return num_ == 0; }
  double to_double() const { return double(num_) / double(den_); }

  friend Rational operator+(Rational a, Rational b) {
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
  }
  friend Rational operator-(Rational a, Rational b) {
    return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
  }
  friend Rational operator*(Rational a, Rational b) {
    return {a.num_ * b.num_, a.den_ * b.den_};
  }
  friend Rational operator/(Rational a, Rational b) {
    if (b.num_ == 0) throw DivisionByZero("rational division by zero");
    return {a.num_ * b.den_, a.den_ * b.num_};
  }
  friend Rational operator-(Rational a) { return {-a.num_, a.den_}; }

  friend constexpr bool operator==(Rational, Rational) = default;
  friend std::strong_ordering operator<=>(Rational a, Rational b) {
    return (a.num_ * b.den_) <=> (b.num_ * a.den_);
  }

  /// "p" or "p/q".
  std::string to_string() const {
    return den_ == 1 ? std::to_string(num_)
                     : std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const std::int64_t g = std::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline std::ostream& operator<<(std::ostream& os, Rational r) {
  return os << r.to_string();
}

/// Primitive measure lines.  Only [kgm] carries an orientation.
enum class Base : std::uint8_t { kg = 0, kgs = 1, kgm = 2 };

inline constexpr std::array<Base, 3> kAllBases{Base::kg, Base::kgs, Base::kgm};

constexpr bool base_oriented(Base b) { return b == Base::kgm; }

constexpr std::string_view base_name(Base b) {
  switch (b) {
    case Base::kg: return "kg";
    case Base::kgs: return "kgs";
    case Base::kgm: return "kgm";
  }
  return "?";
}

class Dimension {
 public:
  Dimension() = default;

  static Dimension dimensionless() { return {}; }

  static Dimension base(Base b) {
    Dimension d;
    d.exponents_[idx(b)] = 1;
    if (!base_oriented(b)) d.twist_[idx(b)] = true;
    return d;
  }

  const Rational& exponent(Base b) const { return exponents_[idx(b)]; }
  const std::array<Rational, 3>& exponents() const { return exponents_; }

  /// Parity of the orientation character of an unoriented primitive.
  bool twisted(Base b) const { return !base_oriented(b) && twist_[idx(b)]; }

  bool absolute() const { return absolute_; }
  bool oriented() const { return !twist_[0] && !twist_[1]; }
  bool is_dimensionless() const {
    return exponents_[0].is_zero() && exponents_[1].is_zero() &&
           exponents_[2].is_zero();
  }

  /// Canonically isomorphic: same exponents and same orientation character.
  /// Ignores the absolute-value marker.
  bool equivalent(const Dimension& o) const {
    return exponents_ == o.exponents_ && twist_ == o.twist_;
  }

  friend bool operator==(const Dimension&, const Dimension&) = default;

  friend Dimension dim_mul(const Dimension& a, const Dimension& b);
  friend Dimension dim_inverse(const Dimension& a);
  friend Dimension dim_pow(const Dimension& a, std::int64_t n);
  friend Dimension dim_abs(const Dimension& a);
  friend Dimension dim_root(const Dimension& a, std::int64_t n);

 private:
  static constexpr std::size_t idx(Base b) { return std::size_t(b); }

  std::array<Rational, 3> exponents_{};
  std::array<bool, 2> twist_{false, false};  // kg, kgs
  bool absolute_ = false;
};

/// Tensor product.  Characters add mod 2, so A (x) B is oriented iff the
/// unoriented primitives appear with even total character.
inline Dimension dim_mul(const Dimension& a, const Dimension& b) {
  Dimension r;
  for (std::size_t i = 0; i < 3; ++i)
    r.exponents_[i] = a.exponents_[i] + b.exponents_[i];
  for (std::size_t i = 0; i < 2; ++i) r.twist_[i] = a.twist_[i] != b.twist_[i];
  r.absolute_ = a.absolute_ && b.absolute_;
  return r;
}

/// Dual line D* = R/D.
inline Dimension dim_inverse(const Dimension& a) {
  Dimension r = a;
  for (auto& e : r.exponents_) e = -e;
  return r;
}

/// W/D := Hom(D, W).
inline Dimension dim_div(const Dimension& a, const Dimension& b) {
  return dim_mul(a, dim_inverse(b));
}

inline Dimension dim_pow(const Dimension& a, std::int64_t n) {
  Dimension r = a;
  for (auto& e : r.exponents_) e = e * Rational(n);
  for (auto& t : r.twist_) t = t && (n % 2 != 0);
  return r;
}

/// |D|: the nonnegative half of the oriented line D/{+-1}.  Idempotent.
inline Dimension dim_abs(const Dimension& a) {
  Dimension r = a;
  r.twist_ = {false, false};
  r.absolute_ = true;
  return r;
}

/// n-th root; an unoriented line is first replaced by its absolute value.
inline Dimension dim_root(const Dimension& a, std::int64_t n) {
  if (n < 1) throw DomainError("root order must be >= 1");
  Dimension r = a.oriented() ? a : dim_abs(a);
  for (auto& e : r.exponents_) e = e / Rational(n);
  return r;
}

/// D^(p/q) := root(D^p, q).
inline Dimension dim_pow(const Dimension& a, Rational p) {
  if (p.is_integer()) return dim_pow(a, p.num());
  return dim_root(dim_pow(a, p.num()), p.den());
}

inline Dimension operator*(const Dimension& a, const Dimension& b) { return dim_mul(a, b); }
inline Dimension operator/(const Dimension& a, const Dimension& b) { return dim_div(a, b); }

namespace dims {
inline Dimension none() { return Dimension::dimensionless(); }
inline Dimension kg() { return Dimension::base(Base::kg); }
inline Dimension kgs() { return Dimension::base(Base::kgs); }
inline Dimension kgm() { return Dimension::base(Base::kgm); }
/// [m] := |[kgm]/[kg]|
inline Dimension metre() { return dim_abs(kgm() / kg()); }
/// [s] := [kgs]/[kg]
inline Dimension second() { return kgs() / kg(); }
}  // namespace dims

namespace detail {

inline std::string power_text(std::string_view head, Rational e) {
  std::string s(head);
  if (e != Rational(1)) s += "^" + e.to_string();
  return s;
}

}  // namespace detail

/// Canonical text form: primitives in the order kg, kgs, kgm joined by '*',
/// exponents as ^p/q (omitted when 1), and |...| around absolute lines.
/// An unoriented primitive whose character disagrees with its exponent is
/// written as |b|^r * b.  The result always parses back to the same value.
inline std::string to_string(const Dimension& d) {
  std::string out;
  auto append = [&out](const std::string& f) {
    if (!out.empty()) out += "*";
    out += f;
  };

  if (d.absolute()) {
    for (Base b : kAllBases) {
      const Rational e = d.exponent(b);
      if (!e.is_zero()) append(detail::power_text(base_name(b), e));
    }
    return "|" + (out.empty() ? std::string("1") : out) + "|";
  }

  bool all_absolute_factors = true;
  for (Base b : kAllBases) {
    const Rational e = d.exponent(b);
    const bool t = d.twisted(b);
    if (base_oriented(b)) {
      if (!e.is_zero()) {
        append(detail::power_text(base_name(b), e));
        all_absolute_factors = false;
      }
      continue;
    }
    if (e.is_integer() && ((e.num() % 2 != 0) == t)) {
      if (!e.is_zero()) {
        append(detail::power_text(base_name(b), e));
        all_absolute_factors = false;
      }
      continue;
    }
    const Rational rest = e - Rational(t ? 1 : 0);
    if (!rest.is_zero())
      append(detail::power_text("|" + std::string(base_name(b)) + "|", rest));
    if (t) {
      append(std::string(base_name(b)));
      all_absolute_factors = false;
    }
  }
  if (out.empty()) return "1";
  if (all_absolute_factors) out += "*1";
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const Dimension& d) {
  return os << to_string(d);
}

namespace detail {

// expr    := term (('*' | '/') term)*
// term    := primary ('^' rational)?
// primary := base | '1' | '|' expr '|' | 'root' '(' expr ',' int ')' | '(' expr ')'
class DimensionParser {
 public:
  explicit DimensionParser(std::string_view text) : s_(text) {}

  Dimension parse() {
    Dimension d = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected character");
    return d;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("dimension: " + msg, pos_);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  Dimension expr() {
    Dimension d = term();
    for (;;) {
      if (peek('*')) {
        ++pos_;
        d = dim_mul(d, term());
      } else if (peek('/')) {
        ++pos_;
        d = dim_div(d, term());
      } else {
        return d;
      }
    }
  }

  Dimension term() {
    Dimension d = primary();
    if (peek('^')) {
      ++pos_;
      d = dim_pow(d, rational());
    }
    return d;
  }

  std::int64_t integer() {
    skip_ws();
    bool neg = false;
    if (pos_ < s_.size() && s_[pos_] == '-') {
      neg = true;
      ++pos_;
    }
    const std::size_t start = pos_;
    std::int64_t v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      if (pos_ - start > 15) fail("integer too large");
      v = v * 10 + (s_[pos_] - '0');
      ++pos_;
    }
    if (pos_ == start) fail("expected integer");
    return neg ? -v : v;
  }

  Rational rational() {
    const std::int64_t p = integer();
    // '/' followed by a digit continues the exponent; otherwise it divides.
    if (pos_ + 1 < s_.size() && s_[pos_] == '/' &&
        std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
      ++pos_;
      const std::int64_t q = integer();
      if (q == 0) fail("zero denominator in exponent");
      return {p, q};
    }
    return {p};
  }

  Dimension primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '|') {
      ++pos_;
      Dimension d = expr();
      expect('|');
      return dim_abs(d);
    }
    if (c == '(') {
      ++pos_;
      Dimension d = expr();
      expect(')');
      return d;
    }
    if (c == '1') {
      ++pos_;
      return Dimension::dimensionless();
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) fail("expected a measure line");
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    const std::string_view word = s_.substr(start, pos_ - start);
    if (word == "root") {
      expect('(');
      Dimension d = expr();
      expect(',');
      const std::int64_t n = integer();
      if (n < 1) fail("root order must be positive");
      expect(')');
      return dim_root(d, n);
    }
    if (word == "kg") return dims::kg();
    if (word == "kgs") return dims::kgs();
    if (word == "kgm") return dims::kgm();
    if (word == "m") return dims::metre();
    if (word == "s") return dims::second();
    throw UnknownBase("unknown measure line '" + std::string(word) + "' at " +
                      std::to_string(start));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Dimension parse_dimension(std::string_view text) {
  return detail::DimensionParser(text).parse();
}

/// A real magnitude in a measure line.
class Quantity {
 public:
  Quantity() = default;
  Quantity(double magnitude, Dimension dim) : magnitude_(magnitude), dim_(std::move(dim)) {
    if (dim_.absolute() && magnitude_ < 0.0)
      throw DomainError("negative magnitude in absolute line " + to_string(dim_));
  }

  double magnitude() const { return magnitude_; }
  const Dimension& dim() const { return dim_; }

  friend bool operator==(const Quantity&, const Quantity&) = default;

 private:
  double magnitude_ = 0.0;
  Dimension dim_;
};

inline Quantity qty_add(const Quantity& a, const Quantity& b) {
  if (a.dim() != b.dim())
    throw DimensionMismatch("cannot add " + to_string(a.dim()) + " and " + to_string(b.dim()));
  return {a.magnitude() + b.magnitude(), a.dim()};
}

/// Difference; an absolute line falls back to the underlying oriented line
/// because the result may be negative.
inline Quantity qty_sub(const Quantity& a, const Quantity& b) {
  if (a.dim() != b.dim())
    throw DimensionMismatch("cannot subtract " + to_string(b.dim()) + " from " +
                            to_string(a.dim()));
  Dimension d = a.dim();
  if (d.absolute()) d = dim_mul(d, Dimension::dimensionless());
  return {a.magnitude() - b.magnitude(), d};
}

inline Quantity qty_mul(const Quantity& a, const Quantity& b) {
  return {a.magnitude() * b.magnitude(), dim_mul(a.dim(), b.dim())};
}

inline Quantity qty_div(const Quantity& a, const Quantity& b) {
  if (b.magnitude() == 0.0) throw DivisionByZero("quantity division by zero");
  return {a.magnitude() / b.magnitude(), dim_div(a.dim(), b.dim())};
}

inline Quantity qty_abs(const Quantity& a) {
  return {std::fabs(a.magnitude()), dim_abs(a.dim())};
}

inline Quantity qty_root(const Quantity& a, std::int64_t n) {
  if (n < 1) throw DomainError("root order must be >= 1");
  if (n % 2 == 0 && a.magnitude() < 0.0)
    throw NegativeRoot("even root of a negative quantity");
  const Dimension d = dim_root(a.dim(), n);
  const double x = a.magnitude();
  double r;
  if (d.absolute() || x >= 0.0) {
    r = n == 2 ? std::sqrt(std::fabs(x)) : std::pow(std::fabs(x), 1.0 / double(n));
  } else {
    r = -std::pow(-x, 1.0 / double(n));
  }
  return {r, d};
}

inline Quantity operator+(const Quantity& a, const Quantity& b) { return qty_add(a, b); }
inline Quantity operator-(const Quantity& a, const Quantity& b) { return qty_sub(a, b); }
inline Quantity operator*(const Quantity& a, const Quantity& b) { return qty_mul(a, b); }
inline Quantity operator/(const Quantity& a, const Quantity& b) { return qty_div(a, b); }
inline Quantity operator*(double s, const Quantity& q) {
  Dimension d = q.dim();
  if (s < 0.0 && d.absolute()) d = dim_mul(d, Dimension::dimensionless());
  return {s * q.magnitude(), d};
}

inline std::ostream& operator<<(std::ostream& os, const Quantity& q) {
  return os << q.magnitude() << " " << to_string(q.dim());
}

}  // namespace mechspace
