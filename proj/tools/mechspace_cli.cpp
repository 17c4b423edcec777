// mechspace: batch front-end for scenarios, classification, transforms,
// verification sweeps and dimension expressions.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mechspace/mechspace.hpp"

namespace ms = mechspace;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitError = 2;

std::vector<ms::Vec5> read_vectors(std::istream& in) {
  std::vector<ms::Vec5> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream is(line);
    std::vector<double> v;
    double x = 0.0;
    while (is >> x) v.push_back(x);
    if (!is.eof()) throw ms::ParseError("vector input: not a number", n);
    if (v.empty()) continue;
    if (v.size() != 5) throw ms::ParseError("vector input: expected 5 coordinates", n);
    out.emplace_back(v[0], v[1], v[2], v[3], v[4]);
  }
  return out;
}

void print_vector(const ms::Vec5& v) {
  for (int i = 0; i < 5; ++i) std::cout << (i ? " " : "") << ms::format_double(v[i]);
  std::cout << "\n";
}

int cmd_run(const std::string& path, const std::string& out) {
  const ms::scenario::Scenario sc = ms::scenario::load_file(path);
  const auto r = ms::scenario::run(sc, out);
  for (const auto& f : r.files) std::cout << f << "\n";
  return r.all_pass ? 0 : kExitFail;
}

int cmd_classify(const std::string& flavor) {
  const ms::Flavor f = ms::parse_flavor(flavor);
  for (const ms::Vec5& v : read_vectors(std::cin)) {
    const ms::FiveVector p(v);
    std::cout << (f == ms::Flavor::newton ? ms::newton::describe(ms::newton::classify_orbit(p))
                                          : ms::einstein::describe(ms::einstein::classify_causal(p)))
              << "\n";
  }
  return 0;
}

int cmd_transform(const std::string& group_file, const std::string& vector_file, bool inverse) {
  std::ifstream gs(group_file, std::ios::binary);
  if (!gs) throw ms::ValidationError("cannot read group file '" + group_file + "'");
  const auto sections = ms::scenario::parse_sections(gs);
  const ms::scenario::Section* group = nullptr;
  for (const auto& s : sections)
    if (s.kind == "group") {
      if (group) throw ms::ValidationError("group file must contain exactly one [group] section");
      group = &s;
    }
  if (!group) throw ms::ValidationError("group file has no [group] section");
  ms::scenario::AnyElement g = ms::scenario::parse_group(*group);
  if (inverse) g = ms::scenario::inverse_of(g);
  const ms::Mat5 m = ms::scenario::matrix_of(g);
  std::ifstream vs(vector_file, std::ios::binary);
  if (!vs) throw ms::ValidationError("cannot read vector file '" + vector_file + "'");
  for (const ms::Vec5& v : read_vectors(vs)) print_vector(m * v);
  return 0;
}

int cmd_verify(const std::string& suite, const std::string& flavor,
               const std::vector<double>& masses, std::size_t trials, std::uint64_t seed) {
  ms::verify::Options o;
  if (!flavor.empty()) o.flavor = ms::parse_flavor(flavor);
  o.masses = masses;
  if (trials > 0) o.trials = trials;
  o.seed = seed;
  const ms::verify::Report r = ms::verify::run_suite(suite, o);
  std::cout << r.text();
  return r.pass() ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mechanical spaces: scenarios, invariants and verification sweeps"};
  app.require_subcommand(1);

  std::string scenario_path, out_dir;
  auto* run = app.add_subcommand("run", "Integrate and verify a scenario file");
  run->add_option("scenario", scenario_path, "Scenario file")->required();
  run->add_option("--out", out_dir, "Output directory")->required();

  std::string flavor;
  auto* classify = app.add_subcommand("classify", "Classify five-vectors read from stdin");
  classify->add_option("--flavor", flavor, "n (Newtonian) or e (Einsteinian)")->required();

  std::string group_file, vector_file;
  bool inverse = false;
  auto* transform = app.add_subcommand("transform", "Apply a group element to vectors");
  transform->add_option("group-file", group_file)->required();
  transform->add_option("vector-file", vector_file)->required();
  transform->add_flag("--inverse", inverse, "Apply the inverse element");

  std::string suite, vflavor;
  std::vector<double> masses;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  auto* verify = app.add_subcommand("verify", "Run a verification sweep");
  verify->add_option("suite", suite)->required();
  verify->add_option("--flavor", vflavor, "newton or einstein (both when omitted)");
  verify->add_option("--mass", masses, "Mass values");
  verify->add_option("--trials", trials, "Trial count (suite default when omitted)");
  verify->add_option("--seed", seed, "Random seed")->required();

  std::string expr;
  auto* dims = app.add_subcommand("dims", "Print the canonical form of a dimension expression");
  dims->add_option("expr", expr)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitError;
  }

  try {
    if (*run) return cmd_run(scenario_path, out_dir);
    if (*classify) return cmd_classify(flavor);
    if (*transform) return cmd_transform(group_file, vector_file, inverse);
    if (*verify) return cmd_verify(suite, vflavor, masses, trials, seed);
    if (*dims) {
      std::cout << ms::to_string(ms::parse_dimension(expr)) << "\n";
      return 0;
    }
  } catch (const ms::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitError;
  } catch (const ms::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
