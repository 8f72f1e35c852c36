// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Every comparison is exact unless a tolerance is printed with the line.

#include <algorithm>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tetrapack/tetrapack.hpp"

using namespace tetrapack;

namespace {

using V = Vec3<Rational>;
using T = Tetrahedron<Rational>;
using CT = ContactType;

const Rational x_lo(29, 56), x_mid(4, 7), x_hi(9, 14);
const Q10 simple_phi(Rational(139, 369), Rational(40, 369));

constexpr int fraction_digits = 4;       // AC2 rendering
constexpr const char* simple_phi_text = "0.7194";
constexpr std::size_t expected_candidates = 46;
constexpr int random_x_count = 10;
constexpr int fuzz_pairs = 10000;
constexpr int monoclinic_grams = 3;
constexpr unsigned long seed = 20240611;

struct Check {
  bool ok = true;
  std::ostringstream why;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      why << " [" << what << "]";
    }
  }
};

int failures = 0;

void criterion(const char* id, const char* title, const std::function<void(Check&)>& body) {
  Check c;
  try {
    body(c);
  } catch (const std::exception& e) {
    c.ok = false;
    c.why << " [exception: " << e.what() << "]";
  }
  if (!c.ok)
    ++failures;
  std::cout << (c.ok ? "PASS " : "FAIL ") << id << "  " << title << c.why.str() << std::endl;
}

template <class S>
Relation certificate_relation(const Tetrahedron<S>& a, const Tetrahedron<S>& b) {
  auto cert = separate_by_vertex_plane(a, b);
  if (!cert)
    return Relation::overlapping;
  return cert->touching ? Relation::touching : Relation::disjoint;
}

// Random rational strictly inside (lo, hi).
Rational interior(std::mt19937_64& rng, const Rational& lo, const Rational& hi) {
  std::uniform_int_distribution<long> den(2, 997);
  long d = den(rng);
  std::uniform_int_distribution<long> num(1, d - 1);
  return lo + (hi - lo) * Rational(num(rng), d);
}

Gram<Rational> random_monoclinic(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(1, 40), den(1, 12), off(-10, 10);
  for (;;) {
    Mat3<Rational> g = Mat3<Rational>::diagonal({num(rng), den(rng)}, {num(rng), den(rng)}, {num(rng), den(rng)});
    g(0, 2) = g(2, 0) = Rational(off(rng), den(rng));
    if (is_positive_definite(g) && !(g == dimer_gram().matrix()))
      return Gram<Rational>(g);
  }
}

// Rational tetrahedron pairs, biased towards shared features so that
// touching pairs are frequent.
struct Fuzzer {
  std::mt19937_64 rng;
  explicit Fuzzer(unsigned long s) : rng(s) {}

  Rational coord() {
    std::uniform_int_distribution<long> num(-4, 4), den(1, 2);
    return {num(rng), den(rng)};
  }
  V point() { return {coord(), coord(), coord()}; }

  T tetrahedron() {
    for (;;) {
      T t;
      t.vertices = {point(), point(), point(), point()};
      if (!is_zero(tetra_volume_lattice(t.vertices)))
        return t;
    }
  }

  std::pair<T, T> next() {
    T a = tetrahedron();
    std::uniform_int_distribution<int> mode(0, 3);
    switch (mode(rng)) {
    case 0: return {a, tetrahedron()};
    case 1:
      for (;;) {
        T b = tetrahedron();
        int s = std::uniform_int_distribution<int>(1, 3)(rng);
        for (int i = 0; i < s; ++i)
          b.vertices[i] = a.vertices[i];
        if (!is_zero(tetra_volume_lattice(b.vertices)))
          return {a, b};
      }
    case 2: {
      int n = std::uniform_int_distribution<int>(1, 3)(rng);
      V c{};
      for (int i = 0; i < n; ++i)
        c += a.vertices[i];
      c = c / Rational(n);
      return {a, apply_isometry(Isometry<Rational>::inversion_about(c), a)};
    }
    default: {
      std::uniform_int_distribution<long> d(-2, 2);
      V shift{d(rng), d(rng), d(rng)};
      T b = a;
      for (auto& v : b.vertices)
        v += shift;
      return {a, b};
    }
    }
  }
};

template <class S>
std::size_t candidate_disagreements(const Packing<S>& p, std::size_t& pairs) {
  std::size_t bad = 0;
  for (int ref = 0; ref < p.size(); ++ref) {
    auto list = enumerate_candidates(p, CandidateOptions<S>{ref, true, std::nullopt});
    const auto& r = p.motif[static_cast<std::size_t>(ref)];
    for (const auto& c : list.entries) {
      auto other = p.image(c.motif_index, c.offset);
      ++pairs;
      if (certificate_relation(r, other) != halfspace_intersection_oracle(r, other))
        ++bad;
    }
  }
  return bad;
}

std::string census_key(const ContactCensus<Rational>& c) {
  std::ostringstream os;
  for (const auto& [b, n] : c.per_body)
    os << "b" << b << ":" << n << " ";
  for (const auto& [m, n] : c.per_tetrahedron)
    os << "t" << m << ":" << n << " ";
  for (const auto& [t, n] : c.by_type)
    os << to_string(t) << ":" << n << " ";
  return os.str();
}

} // namespace

int main() {
  std::mt19937_64 rng(seed);

  criterion("AC1", "dimer packing fraction is 100/117 at x = 29/56, 4/7, 9/14 (exact)", [](Check& c) {
    for (const auto& x : {x_lo, x_mid, x_hi}) {
      Rational phi = packing_fraction(build_dimer_packing(x));
      c.expect(phi == Rational(100, 117), "x=" + x.str() + " phi=" + phi.str());
    }
  });

  criterion("AC2", "simple packing fraction is (139+40*sqrt(10))/369 (exact) and renders as 0.7194 at 4 decimals",
            [](Check& c) {
              Q10 phi = packing_fraction(build_simple_packing());
              c.expect(phi == simple_phi, "exact value differs");
              std::string text = to_decimal(phi, fraction_digits);
              c.expect(text == simple_phi_text, "rendered " + text + ", expected " + simple_phi_text +
                                                    "; 10 digits " + to_decimal(phi, 10));
            });

  criterion("AC3", "dimer family candidates over [29/56, 9/14] number exactly 46", [](Check& c) {
    auto list = enumerate_candidates(dimer_family(), x_lo, x_hi);
    c.expect(list.size() == expected_candidates, "got " + std::to_string(list.size()));
  });

  criterion("AC4", "verify_packing valid at the named and 10 random x, overlaps at 1/2 and 9/14 + 1/1000",
            [&](Check& c) {
              std::vector<Rational> xs = {x_lo, x_mid, x_hi};
              for (int i = 0; i < random_x_count; ++i)
                xs.push_back(interior(rng, x_lo, x_hi));
              for (const auto& x : xs) {
                auto rep = verify_packing(build_dimer_packing(x));
                c.expect(rep.valid && rep.overlaps == 0, "invalid at x=" + x.str());
              }
              for (const auto& x : {Rational(1, 2), x_hi + Rational(1, 1000)}) {
                auto rep = verify_packing(build_dimer_packing(x));
                bool witnessed = false;
                for (const auto& v : rep.pairs)
                  witnessed = witnessed || (v.overlap() && v.overlap_point.has_value());
                c.expect(!rep.valid && rep.overlaps >= 1 && witnessed, "no overlap at x=" + x.str());
              }
            });

  criterion("AC5", "interval [29/56, 9/14] certified; [29/56 - 1/1000, 29/56] fails", [](Check& c) {
    auto ok = verify_family_interval(x_lo, x_hi);
    c.expect(ok.complete && ok.failures.empty() && !ok.pairs.empty(), "full range not certified");
    std::size_t leaves = 0;
    for (const auto& cover : ok.pairs)
      leaves += cover.leaves.size();
    c.expect(leaves >= ok.pairs.size(), "empty cover");
    auto bad = verify_family_interval(x_lo - Rational(1, 1000), x_lo);
    c.expect(!bad.complete && !bad.failures.empty(), "below-range interval certified");
  });

  criterion("AC6", "contact census 12/8 at 4/7, 16/10 at 29/56, 16/11 at 9/14, 19 for the simple packing",
            [](Check& c) {
              struct Expect {
                Rational x;
                std::size_t body, tetra;
                std::map<CT, std::size_t> types;
              };
              const std::vector<Expect> expected = {
                  {x_mid, 12, 8, {{CT::face_face, 8}, {CT::edge_edge, 2}, {CT::vertex_edge, 1}, {CT::edge_vertex, 1}}},
                  {x_lo, 16, 10, {{CT::face_face, 8}, {CT::edge_edge, 6}, {CT::vertex_edge, 1}, {CT::edge_vertex, 1}}},
                  {x_hi,
                   16,
                   11,
                   {{CT::face_face, 8},
                    {CT::edge_edge, 2},
                    {CT::vertex_edge, 1},
                    {CT::edge_vertex, 1},
                    {CT::vertex_face, 2},
                    {CT::face_vertex, 2}}},
              };
              for (const auto& e : expected) {
                auto cen = contact_census(build_dimer_packing(e.x));
                std::string at = "x=" + e.x.str() + " ";
                bool body_ok = cen.per_body.size() == 1 && cen.per_body[0].second == e.body;
                c.expect(body_ok, at + "per dimer " + census_key(cen));
                bool tetra_ok = !cen.per_tetrahedron.empty();
                for (const auto& [m, n] : cen.per_tetrahedron)
                  tetra_ok = tetra_ok && n == e.tetra;
                c.expect(tetra_ok, at + "per tetrahedron " + census_key(cen));
                c.expect(cen.by_type == e.types, at + "types " + census_key(cen));
              }
              auto s = contact_census(build_simple_packing());
              c.expect(s.per_tetrahedron.size() == 1 && s.per_tetrahedron[0].second == 19,
                       "simple " + std::to_string(s.per_tetrahedron.empty() ? 0 : s.per_tetrahedron[0].second));
            });

  criterion("AC7", "8 inversion centers per cell, parallelepiped 1/8 of the cell, 8 on the dimer, 5 on the tetrahedron",
            [](Check& c) {
              for (const auto& x : {x_lo, x_mid, x_hi}) {
                auto d = build_dimer_packing(x);
                auto rep = inversion_center_report(d);
                bool all = true;
                for (const auto& p : rep.centers)
                  all = all && is_inversion_center(d, p);
                std::set<HalfLatticePoint> classes(rep.parity.begin(), rep.parity.end());
                c.expect(all && classes.size() == 8, "dimer centers x=" + x.str());
                c.expect(rep.volume_ratio == Rational(1, 8), "dimer ratio " + rep.volume_ratio.str());
                c.expect(rep.on_surface_count == 8, "dimer on surface " + std::to_string(rep.on_surface_count));
              }
              auto s = build_simple_packing();
              auto rep = inversion_center_report(s);
              bool all = true;
              for (const auto& p : rep.centers)
                all = all && is_inversion_center(s, p);
              std::set<HalfLatticePoint> classes(rep.parity.begin(), rep.parity.end());
              c.expect(all && classes.size() == 8, "simple centers");
              c.expect(rep.volume_ratio == Q10(Rational(1, 8)), "simple ratio");
              c.expect(rep.on_surface_count == 5, "simple on surface " + std::to_string(rep.on_surface_count));
            });

  criterion("AC8", "common squared edge length: 1 for the dimer family, 2 for the simple packing", [](Check& c) {
    c.expect(check_regularity(dimer_family()) == RatPoly(1), "symbolic family");
    for (const auto& x : {x_lo, x_mid, x_hi})
      c.expect(check_regularity(build_dimer_packing(x)) == Rational(1), "dimer x=" + x.str());
    c.expect(check_regularity(build_simple_packing()) == Q10(2), "simple");
  });

  criterion("AC9", "vertex-plane certificates agree with the half-space oracle on candidates and 10^4 fuzzed pairs",
            [](Check& c) {
              std::size_t pairs = 0, bad = 0;
              for (const auto& x : {x_lo, x_mid, x_hi, Rational(1, 2), x_hi + Rational(1, 1000)})
                bad += candidate_disagreements(build_dimer_packing(x), pairs);
              bad += candidate_disagreements(build_simple_packing(), pairs);
              c.expect(bad == 0, std::to_string(bad) + " of " + std::to_string(pairs) + " candidate pairs disagree");

              Fuzzer fz(seed);
              std::vector<std::pair<T, T>> fuzzed;
              for (int i = 0; i < fuzz_pairs; ++i)
                fuzzed.push_back(fz.next());
              auto agree = parallel_map(fuzzed.size(), [&](std::size_t i) {
                const auto& [a, b] = fuzzed[i];
                Relation h = halfspace_intersection_oracle(a, b);
                return static_cast<int>(certificate_relation(a, b) == h && certificate_relation(b, a) == h);
              });
              long mismatches = std::count(agree.begin(), agree.end(), 0);
              c.expect(mismatches == 0, std::to_string(mismatches) + " fuzzed pairs disagree");
            });

  criterion("AC10", "dimer verdict and census unchanged under 3 random monoclinic Grams", [&](Check& c) {
    std::vector<Rational> xs = {x_lo, x_mid, x_hi, Rational(1, 2)};
    std::vector<std::string> base_census;
    std::vector<bool> base_valid;
    for (const auto& x : xs) {
      auto p = build_dimer_packing(x);
      base_valid.push_back(verify_packing(p).valid);
      base_census.push_back(base_valid.back() ? census_key(contact_census(p)) : "");
    }
    for (int g = 0; g < monoclinic_grams; ++g) {
      auto gram = random_monoclinic(rng);
      for (std::size_t i = 0; i < xs.size(); ++i) {
        auto p = build_dimer_packing(xs[i], gram);
        bool valid = verify_packing(p).valid;
        c.expect(valid == base_valid[i], "verdict gram " + std::to_string(g) + " x=" + xs[i].str());
        if (valid && base_valid[i])
          c.expect(census_key(contact_census(p)) == base_census[i],
                   "census gram " + std::to_string(g) + " x=" + xs[i].str());
      }
    }
  });

  criterion("AC11", "layered [29/56, 9/14] valid with fraction 100/117; [29/56, 1/2] fails with a witness",
            [](Check& c) {
              auto good = build_layered_packing({x_lo, x_hi});
              c.expect(verify_packing(good).valid, "staggered stack invalid");
              c.expect(packing_fraction(good) == Rational(100, 117), "fraction " + packing_fraction(good).str());
              auto bad = verify_packing(build_layered_packing({x_lo, Rational(1, 2)}));
              bool witnessed = false;
              for (const auto& v : bad.pairs)
                witnessed = witnessed || (v.overlap() && v.overlap_point.has_value());
              c.expect(!bad.valid && witnessed, "bad stack accepted");
            });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
