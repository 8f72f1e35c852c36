// tetrapack: build, certify and export the dimer and simple double-lattice
// tetrahedron packings.
//
// Exit codes: 0 success / valid, 1 verification failure, 2 usage or parse
// error.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "tetrapack/tetrapack.hpp"

namespace tp = tetrapack;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_invalid = 1;
constexpr int exit_usage = 2;

struct UsageError : tp::Error {
  using tp::Error::Error;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in)
    throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out)
    throw UsageError("cannot write '" + path + "'");
  out << text;
}

std::string dump(const tp::json& j) { return j.dump(2) + "\n"; }

tp::AnyPacking load(const std::string& path) { return tp::parse_packing(read_input(path)); }

std::vector<tp::Rational> parse_list(const std::vector<std::string>& items) {
  std::vector<tp::Rational> out;
  for (const auto& s : items)
    out.push_back(tp::Rational::parse(s));
  return out;
}

// "(139+40*sqrt(10))/369" style rendering over a common denominator.
std::string pretty(const tp::Rational& r) {
  return r.is_integer() ? r.numerator().get_str() : r.numerator().get_str() + "/" + r.denominator().get_str();
}
std::string pretty(const tp::Q10& q) {
  if (tp::is_zero(q.coef()))
    return pretty(q.rat());
  mpz_class den;
  mpz_lcm(den.get_mpz_t(), q.rat().denominator().get_mpz_t(), q.coef().denominator().get_mpz_t());
  mpz_class a = q.rat().numerator() * (den / q.rat().denominator());
  mpz_class b = q.coef().numerator() * (den / q.coef().denominator());
  std::string body = a.get_str() + (b < 0 ? "-" : "+") + mpz_class(abs(b)).get_str() + "*sqrt(10)";
  return den == 1 ? body : "(" + body + ")/" + den.get_str();
}

// COMMANDS

struct BuildArgs {
  std::string family;
  std::string x;
  std::vector<std::string> offsets;
  std::string output;
  bool with_derived = false;
};

int cmd_build(const BuildArgs& a) {
  tp::json doc;
  auto finish = [&](const auto& p) {
    doc = tp::packing_to_json(p);
    if (a.with_derived)
      doc["derived"] = tp::derived_block(p);
  };
  if (a.family == "dimer") {
    if (a.x.empty())
      throw UsageError("--family dimer needs --x p/q");
    finish(tp::build_dimer_packing(tp::Rational::parse(a.x)));
  } else if (a.family == "simple") {
    finish(tp::build_simple_packing());
  } else if (a.family == "layered") {
    if (a.offsets.empty())
      throw UsageError("--family layered needs --offsets p/q,...");
    finish(tp::build_layered_packing(parse_list(a.offsets)));
  }
  write_output(dump(doc), a.output);
  return exit_ok;
}

struct VerifyArgs {
  std::string input;
  std::vector<std::string> interval;
  std::string output;
};

int cmd_verify(const VerifyArgs& a) {
  if (!a.interval.empty()) {
    tp::Gram<tp::Rational> gram = tp::dimer_gram();
    if (!a.input.empty()) {
      auto any = load(a.input);
      auto* p = std::get_if<tp::Packing<tp::Rational>>(&any);
      if (!p || p->family != "dimer")
        throw UsageError("--interval applies to dimer-family documents only");
      gram = p->gram;
    }
    auto lo = tp::Rational::parse(a.interval[0]), hi = tp::Rational::parse(a.interval[1]);
    if (hi < lo)
      throw UsageError("--interval needs lo <= hi");
    auto cert = tp::verify_family_interval(lo, hi, tp::dimer_family(gram));
    write_output(dump(tp::interval_to_json(cert)), a.output);
    return cert.complete ? exit_ok : exit_invalid;
  }
  if (a.input.empty())
    throw UsageError("verify needs an input document or --interval");
  return std::visit(
      [&](const auto& p) {
        auto rep = tp::verify_packing(p);
        write_output(dump(tp::report_to_json(rep)), a.output);
        return rep.valid ? exit_ok : exit_invalid;
      },
      load(a.input));
}

int cmd_fraction(const std::string& input, int digits) {
  return std::visit(
      [&](const auto& p) {
        auto phi = tp::packing_fraction(p);
        tp::json out = {{"packing", tp::describe(p)},
                        {"fraction", tp::encode(phi)},
                        {"text", pretty(phi)},
                        {"decimal", tp::to_decimal(phi, digits)},
                        {"motif_size", p.size()}};
        std::cout << dump(out);
        return exit_ok;
      },
      load(input));
}

int cmd_contacts(const std::string& input, const std::string& output) {
  return std::visit(
      [&](const auto& p) {
        auto rep = tp::verify_packing(p);
        if (!rep.valid) {
          std::cerr << "packing is invalid (" << rep.overlaps << " overlapping pairs); no census\n";
          write_output(dump(tp::report_to_json(rep)), output);
          return exit_invalid;
        }
        write_output(dump(tp::census_to_json(tp::contact_census(p))), output);
        return exit_ok;
      },
      load(input));
}

int cmd_centers(const std::string& input) {
  return std::visit(
      [&](const auto& p) {
        try {
          std::cout << dump(tp::centers_to_json(tp::inversion_center_report(p)));
        } catch (const tp::NoInversion& e) {
          throw UsageError(e.what());
        }
        return exit_ok;
      },
      load(input));
}

int cmd_neighbors(const std::string& input, int reference, bool inclusive) {
  return std::visit(
      [&](const auto& p) {
        using S = std::decay_t<decltype(p.gram(0, 0))>;
        if (reference < 0 || reference >= p.size())
          throw UsageError("--reference out of range");
        auto list = tp::enumerate_candidates(p, tp::CandidateOptions<S>{reference, inclusive, std::nullopt});
        std::cout << dump(tp::candidates_to_json(list));
        return exit_ok;
      },
      load(input));
}

struct ExportArgs {
  std::string input;
  std::string format = "off";
  int shells = 1;
  int precision = 6;
  std::string output;
};

int cmd_export(const ExportArgs& a) {
  if (a.shells < 1)
    throw UsageError("--shells must be >= 1");
  if (a.precision < 1 || a.precision > 17)
    throw UsageError("--precision must be in 1..17");
  return std::visit(
      [&](const auto& p) {
        auto mesh = tp::build_mesh(p, a.shells);
        write_output(a.format == "obj" ? tp::to_obj(mesh, a.precision) : tp::to_off(mesh, a.precision), a.output);
        return exit_ok;
      },
      load(a.input));
}

int cmd_report() {
  struct Row {
    std::string name, phi, approx, n, z, transitive, source;
  };
  std::vector<Row> rows;

  auto dimer = tp::build_dimer_packing(tp::Rational(4, 7));
  auto phi_d = tp::packing_fraction(dimer);
  std::string z_d;
  for (const auto& x : {tp::dimer_x_min(), tp::Rational(4, 7), tp::dimer_x_max()}) {
    auto census = tp::contact_census(tp::build_dimer_packing(x));
    z_d += (z_d.empty() ? "" : "/") + pretty(census.average);
  }
  rows.push_back({"Dimer double lattice", pretty(phi_d), tp::to_decimal(phi_d, 6), std::to_string(dimer.size()),
                  z_d + " (x=29/56, 4/7, 9/14)", tp::is_transitive(dimer) ? "Yes" : "No", "computed"});

  auto simple = tp::build_simple_packing();
  auto phi_s = tp::packing_fraction(simple);
  rows.push_back({"Simple double lattice", pretty(phi_s), tp::to_decimal(phi_s, 6), std::to_string(simple.size()),
                  pretty(tp::contact_census(simple).average), tp::is_transitive(simple) ? "Yes" : "No", "computed"});

  const char* cited = "cited, not computed";
  rows.push_back({"Optimal lattice", "18/49", "0.3673", "1", "14", "Yes", cited});
  rows.push_back({"Warp and weft", "2/3", "0.6666", "2", "10", "Yes", cited});
  rows.push_back({"Welsh", "17/24", "0.7083", "34", "25.9", "No", cited});
  rows.push_back({"Wagon wheels", "", "0.7786", "18", "7.1", "No", cited});
  rows.push_back({"Compressed wagon wheels", "", "0.7820", "72", "7.6", "No", cited});
  rows.push_back({"Disordered wagon wheels", "", "0.8226", "314", "7.4", "No", cited});
  rows.push_back({"Quasicrystal approximant", "", "0.8503", "656", "", "No", cited});

  Row header{"Name", "phi", "decimal", "N", "Z", "Transitive", "Source"};
  std::array<std::size_t, 7> w{};
  auto widen = [&](const Row& r) {
    const std::string* f[] = {&r.name, &r.phi, &r.approx, &r.n, &r.z, &r.transitive, &r.source};
    for (std::size_t i = 0; i < 7; ++i)
      w[i] = std::max(w[i], f[i]->size());
  };
  widen(header);
  for (const auto& r : rows)
    widen(r);
  auto print = [&](const Row& r) {
    const std::string* f[] = {&r.name, &r.phi, &r.approx, &r.n, &r.z, &r.transitive, &r.source};
    for (std::size_t i = 0; i < 7; ++i)
      std::cout << std::left << std::setw(static_cast<int>(w[i]) + 2) << *f[i];
    std::cout << "\n";
  };
  print(header);
  for (const auto& r : rows)
    print(r);

  std::cout << "\nSquared edge length: dimer " << pretty(tp::check_regularity(dimer)) << ", simple "
            << pretty(tp::check_regularity(simple))
            << " (the simple-packing basis gives edge sqrt(2); fractions are scale-free).\n";
  return exit_ok;
}

struct ScanArgs {
  std::string lo = "29/56";
  std::string hi = "9/14";
  int steps = 8;
};

int cmd_scan(const ScanArgs& a) {
  if (a.steps < 1)
    throw UsageError("--steps must be >= 1");
  auto lo = tp::Rational::parse(a.lo), hi = tp::Rational::parse(a.hi);
  if (hi < lo)
    throw UsageError("scan-x needs lo <= hi");
  bool all_valid = true;
  tp::json rows = tp::json::array();
  for (int i = 0; i <= a.steps; ++i) {
    tp::Rational x = lo + (hi - lo) * tp::Rational(i, a.steps);
    auto rep = tp::verify_packing(tp::build_dimer_packing(x));
    all_valid = all_valid && rep.valid;
    rows.push_back({{"x", tp::encode(x)}, {"status", rep.valid ? "valid" : "invalid"},
                    {"pairs", rep.pairs.size()}, {"overlaps", rep.overlaps}});
  }
  std::cout << dump(rows);
  return all_valid ? exit_ok : exit_invalid;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact construction and certification of dense tetrahedron packings"};
  app.require_subcommand(1);

  BuildArgs build;
  auto* c_build = app.add_subcommand("build", "Write the packing document for a family");
  c_build->add_option("--family", build.family, "dimer | simple | layered")
      ->required()
      ->check(CLI::IsMember({"dimer", "simple", "layered"}));
  c_build->add_option("--x", build.x, "dimer parameter, exact p/q");
  c_build->add_option("--offsets", build.offsets, "layer offsets p/q,... (layered)")->delimiter(',');
  c_build->add_option("-o,--output", build.output, "output path (default stdout)");
  c_build->add_flag("--with-derived", build.with_derived, "attach fraction, census and center summaries");

  VerifyArgs verify;
  auto* c_verify = app.add_subcommand("verify", "Certify that no two tetrahedra overlap");
  c_verify->add_option("input", verify.input, "packing document ('-' for stdin)");
  c_verify->add_option("--interval", verify.interval, "certify the dimer family for all x in [lo, hi]")
      ->expected(2);
  c_verify->add_option("-o,--output", verify.output, "report path (default stdout)");

  std::string input;
  int digits = 6;
  auto* c_fraction = app.add_subcommand("fraction", "Exact packing fraction");
  c_fraction->add_option("input", input)->required();
  c_fraction->add_option("--digits", digits, "decimal digits")->check(CLI::Range(0, 60));

  std::string output;
  auto* c_contacts = app.add_subcommand("contacts", "Contact census");
  c_contacts->add_option("input", input)->required();
  c_contacts->add_option("-o,--output", output);

  auto* c_centers = app.add_subcommand("centers", "Inversion centers and their parallelepiped");
  c_centers->add_option("input", input)->required();

  int reference = 0;
  bool inclusive = false;
  auto* c_neighbors = app.add_subcommand("neighbors", "Candidate neighbours of a reference tetrahedron");
  c_neighbors->add_option("input", input)->required();
  c_neighbors->add_option("--reference", reference, "motif index of the reference");
  c_neighbors->add_flag("--inclusive", inclusive, "keep candidates exactly at the threshold");

  ExportArgs exp;
  auto* c_export = app.add_subcommand("export", "Write an OFF or OBJ mesh");
  c_export->add_option("input", exp.input)->required();
  c_export->add_option("--format", exp.format)->check(CLI::IsMember({"off", "obj"}));
  c_export->add_option("--shells", exp.shells, "unit cells per axis");
  c_export->add_option("--precision", exp.precision, "decimal places, 1..17");
  c_export->add_option("-o,--output", exp.output);

  auto* c_report = app.add_subcommand("report", "Summary table of the computed packings");

  ScanArgs scan;
  auto* c_scan = app.add_subcommand("scan-x", "Verify the dimer family on a grid of x values");
  c_scan->add_option("--lo", scan.lo);
  c_scan->add_option("--hi", scan.hi);
  c_scan->add_option("--steps", scan.steps);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*c_build)
      return cmd_build(build);
    if (*c_verify)
      return cmd_verify(verify);
    if (*c_fraction)
      return cmd_fraction(input, digits);
    if (*c_contacts)
      return cmd_contacts(input, output);
    if (*c_centers)
      return cmd_centers(input);
    if (*c_neighbors)
      return cmd_neighbors(input, reference, inclusive);
    if (*c_export)
      return cmd_export(exp);
    if (*c_report)
      return cmd_report();
    if (*c_scan)
      return cmd_scan(scan);
  } catch (const std::exception& e) {
    std::cerr << "tetrapack: " << e.what() << "\n";
    return exit_usage;
  }
  return exit_usage;
}
