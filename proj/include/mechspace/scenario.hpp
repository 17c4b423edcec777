#pragma once

// Scenario files: line-oriented `key = value` text grouped in sections.
//
//   flavor = newton
//
//   [group g1]
//   family = galilei
//   velocity = 0.5 0 0
//
//   [frame lab]
//   group = g1
//
//   [particle p1]
//   mass = 1
//   position = 0 0 0 0
//   velocity = 0.5 0 0
//   frame = lab
//
//   [field]
//   type = isotropic-oscillator
//   k = 1
//
//   [integrate]
//   h = 0.001
//   n = 1000
//
//   [verify symplectic]
//   mass = 1 2
//   trials = 500
//   seed = 7

#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "mechspace/dynamics.hpp"
#include "mechspace/errors.hpp"
#include "mechspace/groups.hpp"
#include "mechspace/verify.hpp"

namespace mechspace::scenario {

// ---------------------------------------------------------------------------
// Section/key text format

struct Entry {
  std::string value;
  std::size_t line = 0;
};

struct Section {
  std::string kind;  // "" for the leading global section
  std::string name;
  std::size_t line = 0;
  std::map<std::string, Entry> entries;

  bool has(const std::string& key) const { return entries.count(key) != 0; }
};

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

}  // namespace detail

inline std::vector<Section> parse_sections(std::istream& in) {
  std::vector<Section> out(1);
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const auto hash = raw.find('#');
    const std::string text = detail::trim(std::string_view(raw).substr(0, hash));
    if (text.empty()) continue;
    if (text.front() == '[') {
      if (text.back() != ']') throw ParseError("scenario: unterminated section header", line);
      std::istringstream hs(text.substr(1, text.size() - 2));
      Section s;
      s.line = line;
      hs >> s.kind >> s.name;
      std::string extra;
      if (s.kind.empty() || (hs >> extra))
        throw ParseError("scenario: section header must be [kind] or [kind name]", line);
      out.push_back(std::move(s));
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ParseError("scenario: expected 'key = value'", line);
    const std::string key = detail::trim(std::string_view(text).substr(0, eq));
    const std::string value = detail::trim(std::string_view(text).substr(eq + 1));
    if (key.empty()) throw ParseError("scenario: empty key", line);
    if (!out.back().entries.emplace(key, Entry{value, line}).second)
      throw ParseError("scenario: duplicate key '" + key + "'", line);
  }
  return out;
}

inline std::vector<double> numbers(const Entry& e, const std::string& key) {
  std::istringstream is(e.value);
  std::vector<double> v;
  std::string tok;
  while (is >> tok) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || !std::isfinite(x))
      throw ParseError("scenario: '" + key + "' expects numbers, got '" + tok + "'", e.line);
    v.push_back(x);
  }
  return v;
}

inline std::vector<double> numbers(const Section& s, const std::string& key, std::size_t count) {
  const auto it = s.entries.find(key);
  if (it == s.entries.end())
    throw ValidationError("section [" + s.kind + " " + s.name + "] needs '" + key + "'");
  std::vector<double> v = numbers(it->second, key);
  if (count != 0 && v.size() != count)
    throw ParseError("scenario: '" + key + "' expects " + std::to_string(count) + " numbers",
                     it->second.line);
  return v;
}

inline double number(const Section& s, const std::string& key) { return numbers(s, key, 1)[0]; }

inline std::optional<double> optional_number(const Section& s, const std::string& key) {
  if (!s.has(key)) return std::nullopt;
  return number(s, key);
}

inline bool boolean(const Section& s, const std::string& key, bool fallback) {
  const auto it = s.entries.find(key);
  if (it == s.entries.end()) return fallback;
  if (it->second.value == "true" || it->second.value == "yes" || it->second.value == "1")
    return true;
  if (it->second.value == "false" || it->second.value == "no" || it->second.value == "0")
    return false;
  throw ParseError("scenario: '" + key + "' expects true or false", it->second.line);
}

inline std::string text(const Section& s, const std::string& key, const std::string& fallback) {
  const auto it = s.entries.find(key);
  return it == s.entries.end() ? fallback : it->second.value;
}

// ---------------------------------------------------------------------------
// Group elements by block parameters

using AnyElement =
    std::variant<GalileiElement, ExtendedGalileiElement, PoincareElement, ExtendedPoincareElement>;

inline Mat5 matrix_of(const AnyElement& g) {
  return std::visit([](const auto& e) { return Mat5(e.matrix()); }, g);
}

inline AnyElement inverse_of(const AnyElement& g) {
  return std::visit([](const auto& e) { return AnyElement(inverse(e)); }, g);
}

inline Family family_of(const AnyElement& g) {
  return std::visit([](const auto& e) { return std::decay_t<decltype(e)>::family; }, g);
}

namespace detail {

inline Mat3 rotation_block(const Section& s) {
  Mat3 o = Mat3::Identity();
  if (s.has("rotation")) {
    const auto v = numbers(s, "rotation", 9);
    o << v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8];
  } else if (s.has("axis")) {
    const auto v = numbers(s, "axis", 4);
    const Vec3 axis(v[0], v[1], v[2]);
    if (axis.norm() == 0.0) throw ValidationError("rotation axis must be nonzero");
    o = Eigen::AngleAxisd(v[3], axis.normalized()).toRotationMatrix();
  }
  return o;
}

inline Vec3 vec3_or_zero(const Section& s, const std::string& key) {
  if (!s.has(key)) return Vec3::Zero();
  const auto v = numbers(s, key, 3);
  return {v[0], v[1], v[2]};
}

inline std::string where(const Section& s) {
  return "group '" + s.name + "' (line " + std::to_string(s.line) + ")";
}

}  // namespace detail

/// Keys: family; rotation (9, row-major) or axis (x y z angle); velocity,
/// translation, time for Galilei; boost (x y z rapidity), lorentz (16),
/// translation (4) for Poincare; scale (3 resp. 2) for the extended groups.
inline AnyElement parse_group(const Section& s) {
  const std::string family = text(s, "family", "");
  if (family == "galilei" || family == "extended-galilei") {
    GalileiElement g;
    g.rotation = detail::rotation_block(s);
    g.velocity = detail::vec3_or_zero(s, "velocity");
    g.translation = detail::vec3_or_zero(s, "translation");
    g.time = optional_number(s, "time").value_or(0.0);
    if (!g.is_valid())
      throw ValidationError(detail::where(s) + ": rotation block is not special orthogonal");
    if (family == "galilei") {
      if (s.has("scale")) throw ValidationError(detail::where(s) + ": scale needs an extended family");
      return g;
    }
    const auto c = s.has("scale") ? numbers(s, "scale", 3) : std::vector<double>{1.0, 1.0, 1.0};
    if (c[0] == 0.0 || c[1] == 0.0 || c[2] == 0.0)
      throw ValidationError(detail::where(s) + ": scale factors must be nonzero");
    return ExtendedGalileiElement::from(GalileiScale{c[0], c[1], c[2]}, g);
  }
  if (family == "poincare" || family == "extended-poincare") {
    PoincareElement p;
    if (s.has("lorentz")) {
      const auto v = numbers(s, "lorentz", 16);
      for (int i = 0; i < 16; ++i) p.lorentz(i / 4, i % 4) = v[std::size_t(i)];
    } else {
      p.lorentz = lorentz::rotation(detail::rotation_block(s));
      if (s.has("boost")) {
        const auto b = numbers(s, "boost", 4);
        const Vec3 dir(b[0], b[1], b[2]);
        if (dir.norm() == 0.0) throw ValidationError(detail::where(s) + ": boost direction is zero");
        p.lorentz = p.lorentz * lorentz::boost(dir, b[3]);
      }
    }
    if (s.has("translation")) {
      const auto t = numbers(s, "translation", 4);
      p.translation = Vec4(t[0], t[1], t[2], t[3]);
    }
    if (!p.is_valid())
      throw ValidationError(detail::where(s) +
                            ": Lorentz block is not proper orthochronous (L^T eta L != eta)");
    if (family == "poincare") {
      if (s.has("scale")) throw ValidationError(detail::where(s) + ": scale needs an extended family");
      return p;
    }
    const auto c = s.has("scale") ? numbers(s, "scale", 2) : std::vector<double>{1.0, 1.0};
    if (c[0] == 0.0 || c[1] == 0.0)
      throw ValidationError(detail::where(s) + ": scale factors must be nonzero");
    return ExtendedPoincareElement::from(PoincareScale{c[0], c[1]}, p);
  }
  throw ValidationError(detail::where(s) + ": unknown family '" + family + "'");
}

// ---------------------------------------------------------------------------
// Scenario

struct Frame {
  std::string name;
  std::optional<std::string> group;  // standard coordinates -> frame coordinates
};

struct Particle {
  std::string name;
  double mass = 1.0;
  FiveVector point;
  FiveVector momentum;
};

struct FieldSpec {
  std::string type = "zero";
  double k = 1.0, kappa = 1.0, lambda = 1.0;
  bool serial = false;
};

struct VerifyRequest {
  std::string suite;
  verify::Options options;
};

struct Scenario {
  Flavor flavor = Flavor::newton;
  std::map<std::string, AnyElement> groups;
  std::vector<Frame> frames;
  std::vector<Particle> particles;
  FieldSpec field;
  double h = 1e-3;
  std::size_t n = 1000;
  bool derived = false;
  std::vector<VerifyRequest> verifications;
};

inline ForceField make_field(Flavor flavor, const FieldSpec& f) {
  ForceField r;
  if (f.type == "zero") r = fields::zero(flavor);
  else if (f.type == "isotropic-oscillator") r = fields::isotropic_oscillator(flavor, f.k);
  else if (f.type == "inverse-square") r = fields::inverse_square(flavor, f.kappa);
  else if (f.type == "antisymmetric-relativistic") r = fields::antisymmetric(flavor, f.lambda);
  else throw ValidationError("unknown force field '" + f.type + "'");
  r.serial = f.serial;
  return r;
}

namespace detail {

inline std::string particle_where(const Section& s) {
  return "particle '" + s.name + "' (line " + std::to_string(s.line) + ")";
}

inline Particle parse_particle(const Section& s, Flavor flavor) {
  Particle p;
  p.name = s.name;
  p.mass = number(s, "mass");
  if (p.mass == 0.0) throw ValidationError(particle_where(s) + ": mass must be nonzero");
  const std::string frame = text(s, "frame", kStandardFrame);
  const double m = p.mass;
  if (s.has("point")) {
    const auto v = numbers(s, "point", 5);
    p.point = FiveVector(v[0], v[1], v[2], v[3], v[4], frame);
    if (std::fabs(v[4] - m) > Trajectory::kTol * std::fabs(m))
      throw ValidationError(particle_where(s) + ": initial point is not in M_m (fifth coordinate != mass)");
  } else {
    const auto x = numbers(s, "position", 4);
    p.point = FiveVector(m * x[0], m * x[1], m * x[2], m * x[3], m, frame);
  }
  if (s.has("momentum")) {
    const auto v = numbers(s, "momentum", 5);
    p.momentum = FiveVector(v[0], v[1], v[2], v[3], v[4], frame);
  } else {
    const auto w = numbers(s, "velocity", 3);
    const Vec3 v(w[0], w[1], w[2]);
    if (flavor == Flavor::newton) {
      p.momentum = FiveVector(m * v[0], m * v[1], m * v[2], m, 0.0, frame);
    } else {
      const Vec4 u = einstein::four_velocity(v);
      p.momentum = FiveVector(m * u[0], m * u[1], m * u[2], m * u[3], 0.0, frame);
    }
  }
  try {
    mechspace::detail::check_initial_data(flavor, p.point.coords, p.momentum.coords);
  } catch (const BadInitialData& e) {
    throw ValidationError(particle_where(s) + ": " + e.what());
  }
  return p;
}

inline VerifyRequest parse_verify(const Section& s, Flavor flavor, bool flavor_given) {
  VerifyRequest r;
  r.suite = s.name;
  if (!verify::suites().count(r.suite))
    throw ValidationError("unknown verification suite '" + s.name + "' (line " +
                          std::to_string(s.line) + ")");
  if (!s.has("seed"))
    throw ValidationError("verification '" + s.name + "' needs a seed");
  const double seed = number(s, "seed");
  if (seed < 0.0 || seed != std::floor(seed))
    throw ValidationError("verification '" + s.name + "': seed must be a nonnegative integer");
  r.options.seed = std::uint64_t(seed);
  if (s.has("trials")) {
    const double t = number(s, "trials");
    if (t < 1.0 || t != std::floor(t))
      throw ValidationError("verification '" + s.name + "': trials must be a positive integer");
    r.options.trials = std::size_t(t);
  }
  if (s.has("mass")) {
    r.options.masses = numbers(s, "mass", 0);
    for (double m : r.options.masses)
      if (m == 0.0) throw ValidationError("verification '" + s.name + "': masses must be nonzero");
  }
  const std::string f = text(s, "flavor", "");
  if (f == "both") r.options.flavor.reset();
  else if (!f.empty()) r.options.flavor = parse_flavor(f);
  else if (flavor_given) r.options.flavor = flavor;
  return r;
}

}  // namespace detail

inline Scenario load(std::istream& in) {
  const std::vector<Section> sections = parse_sections(in);
  Scenario sc;
  const Section& global = sections.front();
  for (const auto& [key, e] : global.entries)
    if (key != "flavor") throw ParseError("scenario: unknown global key '" + key + "'", e.line);
  const bool flavor_given = global.has("flavor");
  if (flavor_given) {
    try {
      sc.flavor = parse_flavor(text(global, "flavor", ""));
    } catch (const DomainError& e) {
      throw ParseError(std::string("scenario: ") + e.what(), global.entries.at("flavor").line);
    }
  }

  std::map<std::string, std::size_t> seen;
  auto unique = [&seen](const Section& s) {
    const std::string key = s.kind + " " + s.name;
    if (!seen.emplace(key, s.line).second)
      throw ParseError("scenario: duplicate section [" + key + "]", s.line);
  };

  std::vector<const Section*> particle_sections;
  for (std::size_t i = 1; i < sections.size(); ++i) {
    const Section& s = sections[i];
    unique(s);
    if (s.kind == "group") {
      if (s.name.empty()) throw ParseError("scenario: [group] needs a name", s.line);
      sc.groups.emplace(s.name, parse_group(s));
    } else if (s.kind == "frame") {
      if (s.name.empty()) throw ParseError("scenario: [frame] needs a name", s.line);
      Frame f{s.name, std::nullopt};
      if (s.has("group")) f.group = text(s, "group", "");
      sc.frames.push_back(f);
    } else if (s.kind == "particle") {
      if (s.name.empty()) throw ParseError("scenario: [particle] needs a name", s.line);
      particle_sections.push_back(&s);
    } else if (s.kind == "field") {
      sc.field.type = text(s, "type", "zero");
      sc.field.k = optional_number(s, "k").value_or(1.0);
      sc.field.kappa = optional_number(s, "kappa").value_or(1.0);
      sc.field.lambda = optional_number(s, "lambda").value_or(1.0);
      sc.field.serial = boolean(s, "serial", false);
    } else if (s.kind == "integrate") {
      sc.h = number(s, "h");
      const double n = number(s, "n");
      if (!(sc.h > 0.0)) throw ValidationError("integration step h must be positive");
      if (n < 4.0 || n != std::floor(n))
        throw ValidationError("integration needs an integer number of steps n >= 4");
      sc.n = std::size_t(n);
      sc.derived = boolean(s, "derived", false);
    } else if (s.kind == "verify") {
      sc.verifications.push_back(detail::parse_verify(s, sc.flavor, flavor_given));
    } else {
      throw ParseError("scenario: unknown section kind '" + s.kind + "'", s.line);
    }
  }

  for (const Frame& f : sc.frames) {
    if (!f.group) continue;
    const auto it = sc.groups.find(*f.group);
    if (it == sc.groups.end())
      throw ValidationError("frame '" + f.name + "' refers to undeclared group '" + *f.group + "'");
    const Family fam = family_of(it->second);
    const bool newton_group = fam == Family::galilei || fam == Family::extended_galilei;
    if (newton_group != (sc.flavor == Flavor::newton))
      throw ValidationError("frame '" + f.name + "' uses a group of the other flavor");
  }
  for (const auto& [name, g] : sc.groups) {
    const Family fam = family_of(g);
    const bool newton_group = fam == Family::galilei || fam == Family::extended_galilei;
    if (newton_group != (sc.flavor == Flavor::newton))
      throw ValidationError("group '" + name + "' does not match the scenario flavor");
  }
  if (!particle_sections.empty() && !flavor_given)
    throw ValidationError("scenario with particles must declare its flavor");
  (void)make_field(sc.flavor, sc.field);
  for (const Section* s : particle_sections) {
    Particle p = detail::parse_particle(*s, sc.flavor);
    const std::string& frame = p.point.frame;
    const bool declared =
        frame == kStandardFrame ||
        std::any_of(sc.frames.begin(), sc.frames.end(),
                    [&frame](const Frame& f) { return f.name == frame; });
    if (!declared)
      throw ValidationError("particle '" + p.name + "' uses undeclared frame '" + frame + "'");
    sc.particles.push_back(std::move(p));
  }
  return sc;
}

inline Scenario load_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read scenario '" + path.string() + "'");
  return load(in);
}

// ---------------------------------------------------------------------------
// Output

inline std::string csv_header(const Scenario& sc) {
  std::string h = "parameter";
  const char* const groups[] = {"x", "p", "v", "F", "a"};
  const int count = sc.derived ? 5 : 1;
  for (int g = 0; g < count; ++g)
    for (int i = 1; i <= 5; ++i) h += std::string(",") + groups[g] + std::to_string(i);
  return h;
}

inline void write_csv(std::ostream& os, const Scenario& sc, const Particle& p,
                      const Trajectory& f) {
  os << "# frame=" << f.frame() << " flavor=" << flavor_name(f.flavor())
     << " mass=" << format_double(f.mass()) << " field=" << sc.field.type << "\n";
  os << csv_header(sc) << "\n";
  std::optional<Kinematics> k;
  if (sc.derived) k = derive_kinematics(f);
  for (std::size_t i = 0; i < f.size(); ++i) {
    os << format_double(f.parameter(i));
    for (int j = 0; j < 5; ++j) os << "," << format_double(f.points()[i][j]);
    if (k) {
      for (const auto* col : {&k->momentum, &k->velocity, &k->force, &k->acceleration})
        for (int j = 0; j < 5; ++j) os << "," << format_double((*col)[i][j]);
    }
    os << "\n";
  }
  (void)p;
}

struct RunResult {
  std::vector<std::string> files;
  bool all_pass = true;
};

/// Integrates every particle and runs every verification request; files go
/// to out_dir and are listed in manifest.txt.
inline RunResult run(const Scenario& sc, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  RunResult r;
  auto write = [&](const std::string& name, const std::string& content) {
    std::ofstream os(out_dir / name, std::ios::binary);
    if (!os) throw ValidationError("cannot write '" + (out_dir / name).string() + "'");
    os << content;
    r.files.push_back(name);
  };
  const ForceField field = make_field(sc.flavor, sc.field);
  for (const Particle& p : sc.particles) {
    const Trajectory f = integrate(field, p.point, p.momentum, sc.h, sc.n);
    std::ostringstream os;
    write_csv(os, sc, p, f);
    write(p.name + ".csv", os.str());
  }
  for (const VerifyRequest& v : sc.verifications) {
    const verify::Report rep = verify::run_suite(v.suite, v.options);
    r.all_pass = r.all_pass && rep.pass();
    write(v.suite + ".report.txt", rep.text());
  }
  std::ostringstream manifest;
  for (const std::string& f : r.files) manifest << f << "\n";
  std::ofstream os(out_dir / "manifest.txt", std::ios::binary);
  os << manifest.str();
  return r;
}

}  // namespace mechspace::scenario
