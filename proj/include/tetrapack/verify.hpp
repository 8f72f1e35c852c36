// Whole-packing certification: candidate neighbor enumeration, pairwise
// verification, interval-in-x certification of the dimer family, packing
// fraction, contact census and inversion-center analysis.

#ifndef TETRAPACK_VERIFY_HPP_
#define TETRAPACK_VERIFY_HPP_

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "error.hpp"
#include "exact.hpp"
#include "linalg.hpp"
#include "model.hpp"
#include "parallel.hpp"
#include "separation.hpp"

namespace tetrapack {

template <class S>
std::string describe(const Packing<S>& p) {
  std::ostringstream os;
  os << p.family;
  if (p.x)
    os << " x=" << *p.x;
  if (!p.offsets.empty()) {
    os << " offsets=[";
    for (std::size_t i = 0; i < p.offsets.size(); ++i)
      os << (i ? ", " : "") << p.offsets[i];
    os << "]";
  }
  return os.str();
}

// CANDIDATES

template <class S>
struct Candidate {
  int motif_index = 0;
  LatticeOffset offset{};
  std::optional<Isometry<S>> element;  // maps the reference onto this image
  S distance2{};                       // squared centroid distance to the reference
};

template <class S>
struct CandidateList {
  int reference = 0;
  S threshold2{};
  bool inclusive = false;  // distance2 <= threshold2 instead of <
  std::vector<Candidate<S>> entries;

  std::size_t size() const { return entries.size(); }
};

template <class T>
struct CandidateOptions {
  int reference = 0;
  bool inclusive = false;
  std::optional<T> threshold2;  // default: circumsphere_threshold2
};

// Squared diameter of the smallest centroid-centred ball containing the
// reference tetrahedron: two such balls are disjoint when the centroids are
// at least this far apart. For a regular tetrahedron this is 4 (3/8) edge^2.
template <class S>
S circumsphere_threshold2(const Packing<S>& p, int reference = 0) {
  const auto& t = p.motif.at(static_cast<std::size_t>(reference));
  Vec3<S> c = centroid(t);
  S best{};
  for (const auto& v : t.vertices) {
    S d = gram_norm2(p.gram, v - c);
    if (less(best, d))
      best = d;
  }
  return S(4) * best;
}

namespace detail {

// Smallest B >= 0 with B^2 >= r.
template <class S>
mpz_class sqrt_ceil(const S& r) {
  if (sign(r) <= 0)
    return 0;
  long double approx = std::ceil(std::sqrt(to_long_double(r)));
  mpz_class b;
  b.set_str(std::to_string(static_cast<long long>(approx)), 10);
  auto covers = [&](const mpz_class& k) { return sign(S(Rational(k * k, 1)) - r) >= 0; };
  while (b > 0 && covers(b - 1))
    --b;
  while (!covers(b))
    ++b;
  return b;
}

using Box = std::array<std::pair<long, long>, 3>;

// Offsets n with |L (n + e)|_G^2 <= t satisfy |n_j + e_j|^2 <= t (M^-1)_jj
// for M = L^T G L, so each coordinate lies in a closed interval.
template <class S>
Box offset_box(const Vec3<S>& e, const Mat3<S>& m_inv, const S& t) {
  Box box;
  for (int j = 0; j < 3; ++j) {
    mpz_class r = sqrt_ceil(S(t * m_inv(j, j)));
    mpz_class f = floor(S(-e[j]));
    box[j] = {mpz_class(f - r).get_si(), mpz_class(f + 1 + r).get_si()};
  }
  return box;
}

template <class S>
Vec3<S> lattice_coefficients(const LatticeOffset& n) { return {S(n.a), S(n.b), S(n.c)}; }

template <class S>
std::optional<Isometry<S>> candidate_element(const Packing<S>& p, int k, const LatticeOffset& n) {
  const auto& w = p.witness.at(static_cast<std::size_t>(k));
  if (!w)
    return std::nullopt;
  return Isometry<S>{w->linear, w->translation + p.translation(n)};
}

template <class F>
void for_each_offset(const Box& box, F&& f) {
  for (long a = box[0].first; a <= box[0].second; ++a)
    for (long b = box[1].first; b <= box[1].second; ++b)
      for (long c = box[2].first; c <= box[2].second; ++c)
        f(LatticeOffset{a, b, c});
}

inline Box box_union(const Box& x, const Box& y) {
  Box out;
  for (int j = 0; j < 3; ++j)
    out[j] = {std::min(x[j].first, y[j].first), std::max(x[j].second, y[j].second)};
  return out;
}

// Exact minimum of a polynomial of degree <= 2 over [lo, hi].
inline Rational min_on_interval(const RatPoly& q, const Rational& lo, const Rational& hi) {
  if (q.degree() > 2)
    fail("squared distance is not quadratic in x");
  Rational m = std::min(q(lo), q(hi));
  if (q.degree() == 2) {
    Rational vertex = -q.coefficient(1) / (Rational(2) * q.coefficient(2));
    if (lo < vertex && vertex < hi)
      m = std::min(m, q(vertex));
  }
  return m;
}

} // namespace detail

// Every image of a motif tetrahedron (excluding the reference itself) whose
// centroid is closer than the threshold to the reference centroid.
template <class S>
CandidateList<S> enumerate_candidates(const Packing<S>& p, const CandidateOptions<S>& opt = {}) {
  CandidateList<S> out;
  out.reference = opt.reference;
  out.inclusive = opt.inclusive;
  out.threshold2 = opt.threshold2 ? *opt.threshold2 : circumsphere_threshold2(p, opt.reference);

  Mat3<S> cell = p.group.cell_matrix();
  Mat3<S> cell_inv = inverse(cell);
  Mat3<S> m_inv = inverse(cell.transposed() * p.gram.matrix() * cell);
  Vec3<S> c_ref = centroid(p.motif.at(static_cast<std::size_t>(opt.reference)));
  for (int k = 0; k < p.size(); ++k) {
    Vec3<S> delta = centroid(p.motif[static_cast<std::size_t>(k)]) - c_ref;
    auto box = detail::offset_box(cell_inv * delta, m_inv, out.threshold2);
    detail::for_each_offset(box, [&](const LatticeOffset& n) {
      if (k == opt.reference && n == LatticeOffset{})
        return;
      S d2 = gram_norm2(p.gram, delta + p.translation(n));
      bool keep = opt.inclusive ? less_equal(d2, out.threshold2) : less(d2, out.threshold2);
      if (keep)
        out.entries.push_back({k, n, detail::candidate_element(p, k, n), d2});
    });
  }
  return out;
}

// Candidates for a family whose cell depends affinely on x: an image is
// kept when its squared centroid distance, a quadratic in x, dips below the
// threshold somewhere on [lo, hi].
inline CandidateList<RatPoly> enumerate_candidates(const Packing<RatPoly>& family, const Rational& lo,
                                                   const Rational& hi,
                                                   const CandidateOptions<Rational>& opt = {}) {
  if (hi < lo)
    fail("empty interval");
  for (const auto& t : family.motif)
    for (const auto& v : t.vertices)
      for (int i = 0; i < 3; ++i)
        if (!v[i].is_constant())
          fail("interval enumeration needs an x-independent motif");
  Mat3<RatPoly> cell = family.group.cell_matrix();
  Mat3<RatPoly> adj = adjugate(cell);
  if (!det3(cell).is_constant() ||
      std::any_of(adj.e.begin(), adj.e.end(), [](const RatPoly& q) { return q.degree() > 1; }))
    fail("interval enumeration needs a cell inverse affine in x");

  // The per-axis bounds are affine +- convex in x, so the union of the
  // endpoint boxes covers every x in between.
  auto p_lo = evaluate(family, lo), p_hi = evaluate(family, hi);
  Rational thr = opt.threshold2 ? *opt.threshold2 : circumsphere_threshold2(p_lo, opt.reference);
  auto boxes_for = [&](const Packing<Rational>& p, int k) {
    Mat3<Rational> c = p.group.cell_matrix();
    Mat3<Rational> m_inv = inverse(c.transposed() * p.gram.matrix() * c);
    Vec3<Rational> delta = centroid(p.motif[static_cast<std::size_t>(k)]) -
                           centroid(p.motif[static_cast<std::size_t>(opt.reference)]);
    return detail::offset_box(inverse(c) * delta, m_inv, thr);
  };

  CandidateList<RatPoly> out;
  out.reference = opt.reference;
  out.inclusive = opt.inclusive;
  out.threshold2 = thr;
  Vec3<RatPoly> c_ref = centroid(family.motif.at(static_cast<std::size_t>(opt.reference)));
  for (int k = 0; k < family.size(); ++k) {
    auto box = detail::box_union(boxes_for(p_lo, k), boxes_for(p_hi, k));
    Vec3<RatPoly> delta = centroid(family.motif[static_cast<std::size_t>(k)]) - c_ref;
    detail::for_each_offset(box, [&](const LatticeOffset& n) {
      if (k == opt.reference && n == LatticeOffset{})
        return;
      RatPoly d2 = gram_norm2(family.gram, delta + family.translation(n));
      Rational m = detail::min_on_interval(d2, lo, hi);
      if (opt.inclusive ? m <= thr : m < thr)
        out.entries.push_back({k, n, detail::candidate_element(family, k, n), d2});
    });
  }
  return out;
}

// PAIRWISE VERIFICATION

template <class S>
struct PairVerdict {
  int reference = 0;
  int motif_index = 0;
  LatticeOffset offset{};
  std::optional<SeparationCertificate> certificate;  // absent means overlap
  std::optional<Vec3<S>> overlap_point;              // interior point of both, on overlap

  bool overlap() const { return !certificate; }
};

template <class S>
struct VerificationReport {
  std::string packing;
  bool transitive = false;
  std::vector<int> references;
  S threshold2{};
  std::vector<PairVerdict<S>> pairs;
  std::size_t overlaps = 0;
  bool valid = false;
  unsigned workers = 1;
  double elapsed_ms = 0;
  std::string exclusion;
};

template <class S>
PairVerdict<S> verify_pair(const Tetrahedron<S>& ref, const Tetrahedron<S>& other) {
  PairVerdict<S> v;
  v.reference = ref.motif_index;
  v.motif_index = other.motif_index;
  v.offset = other.offset;
  v.certificate = separate_by_vertex_plane(ref, other);
  if (!v.certificate) {
    auto inter = halfspace_intersection(ref, other);
    if (inter.relation != Relation::overlapping)
      fail("vertex-plane search and half-space oracle disagree on a pair");
    v.overlap_point = inter.interior_point;
  }
  return v;
}

// Checks every reference against its candidates: motif[0] alone when the
// packing is transitive, every motif member otherwise.
template <class S>
VerificationReport<S> verify_packing(const Packing<S>& p) {
  auto start = std::chrono::steady_clock::now();
  VerificationReport<S> rep;
  rep.packing = describe(p);
  rep.transitive = is_transitive(p);
  if (rep.transitive)
    rep.references = {0};
  else
    for (int k = 0; k < p.size(); ++k)
      rep.references.push_back(k);

  std::vector<std::pair<int, Candidate<S>>> jobs;
  for (int r : rep.references) {
    auto cands = enumerate_candidates(p, CandidateOptions<S>{r, false, std::nullopt});
    if (r == rep.references.front())
      rep.threshold2 = cands.threshold2;
    for (auto& c : cands.entries)
      jobs.emplace_back(r, std::move(c));
  }
  rep.pairs = parallel_map(jobs.size(), [&](std::size_t i) {
    const auto& [r, c] = jobs[i];
    return verify_pair(p.image(r, {}), p.image(c.motif_index, c.offset));
  });
  std::sort(rep.pairs.begin(), rep.pairs.end(), [](const PairVerdict<S>& a, const PairVerdict<S>& b) {
    return std::tie(a.reference, a.motif_index, a.offset) < std::tie(b.reference, b.motif_index, b.offset);
  });
  rep.overlaps = static_cast<std::size_t>(
      std::count_if(rep.pairs.begin(), rep.pairs.end(), [](const PairVerdict<S>& v) { return v.overlap(); }));
  rep.valid = rep.overlaps == 0;
  rep.workers = worker_count();
  std::ostringstream note;
  note << "tetrahedra outside the candidate list have centroid distance^2 >= " << rep.threshold2
       << " from the reference, so their centroid balls cannot meet";
  rep.exclusion = note.str();
  rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

// INTERVAL CERTIFICATION

struct IntervalLeaf {
  Rational lo, hi;
  std::array<int, 3> witness{};
  int orientation = 1;
};

struct PairCover {
  int motif_index = 0;
  LatticeOffset offset{};
  std::vector<IntervalLeaf> leaves;  // ordered, consecutive, covering [lo, hi]
};

struct IntervalFailure {
  int motif_index = 0;
  LatticeOffset offset{};
  Rational lo, hi;                     // subinterval without a witness
  std::optional<Rational> overlap_at;  // x where the pair provably overlaps
  std::string reason;
};

struct IntervalCertificate {
  Rational lo, hi;
  std::size_t candidates = 0;
  bool complete = false;
  std::vector<PairCover> pairs;
  std::vector<IntervalFailure> failures;
  int max_depth = 0;
  std::optional<VerificationReport<Rational>> point_report;  // lo == hi
  double elapsed_ms = 0;
};

constexpr int interval_depth_cap = 32;

namespace detail {

struct PairCoverer {
  const Tetrahedron<RatPoly>& a;
  const Tetrahedron<RatPoly>& b;
  std::vector<PolyWitness> witnesses;
  PairCover cover;
  std::optional<IntervalFailure> failure;
  int max_depth = 0;

  PairCoverer(const Tetrahedron<RatPoly>& a_, const Tetrahedron<RatPoly>& b_) : a(a_), b(b_) {
    for (const auto& tri : vertex_triples()) {
      auto pts = pair_vertices(a, b);
      if (is_zero(cross(pts[tri[1]] - pts[tri[0]], pts[tri[2]] - pts[tri[0]])))
        continue;
      witnesses.push_back(separation_poly_in_x(a, b, tri));
    }
    cover.motif_index = b.motif_index;
    cover.offset = b.offset;
  }

  bool overlaps_at(const Rational& x) const {
    auto at = [&](const Tetrahedron<RatPoly>& t) {
      Tetrahedron<Rational> out;
      for (int i = 0; i < 4; ++i)
        out.vertices[i] = transform(t.vertices[i], [&](const RatPoly& q) { return q(x); });
      return out;
    };
    return !separate_by_vertex_plane(at(a), at(b));
  }

  // Returns false once a failure has been recorded.
  bool run(const Rational& lo, const Rational& hi, int depth) {
    max_depth = std::max(max_depth, depth);
    for (const auto& w : witnesses) {
      if (auto o = witness_orientation_on(w, lo, hi)) {
        cover.leaves.push_back({lo, hi, w.plane, *o});
        return true;
      }
    }
    Rational mid = (lo + hi) / Rational(2);
    for (const auto& x : {lo, mid, hi}) {
      if (overlaps_at(x)) {
        failure = IntervalFailure{b.motif_index, b.offset, lo, hi, x, "pair overlaps"};
        return false;
      }
    }
    if (depth >= interval_depth_cap) {
      failure = IntervalFailure{b.motif_index, b.offset, lo, hi, std::nullopt,
                                "no witness plane at the subdivision depth cap"};
      return false;
    }
    return run(lo, mid, depth + 1) && run(mid, hi, depth + 1);
  }
};

} // namespace detail

// Certifies that motif[0] of the symbolic family overlaps none of its
// candidates for any x in [lo, hi]: each pair's interval is split into
// subintervals, each carrying one vertex-plane witness whose orientation
// polynomials keep their signs throughout.
inline IntervalCertificate verify_family_interval(const Rational& lo, const Rational& hi,
                                                  const Packing<RatPoly>& family = dimer_family()) {
  auto start = std::chrono::steady_clock::now();
  if (hi < lo)
    fail("interval with lo > hi");
  IntervalCertificate cert;
  cert.lo = lo;
  cert.hi = hi;
  if (lo == hi) {
    cert.point_report = verify_packing(evaluate(family, lo));
    cert.candidates = cert.point_report->pairs.size();
    cert.complete = cert.point_report->valid;
  } else {
    auto cands = enumerate_candidates(family, lo, hi);
    cert.candidates = cands.size();
    Tetrahedron<RatPoly> ref = family.image(0, {});
    auto results = parallel_map(cands.size(), [&](std::size_t i) {
      const auto& c = cands.entries[i];
      Tetrahedron<RatPoly> other = family.image(c.motif_index, c.offset);
      detail::PairCoverer pc(ref, other);
      pc.run(lo, hi, 0);
      return std::make_tuple(pc.cover, pc.failure, pc.max_depth);
    });
    for (auto& [cover, failure, depth] : results) {
      cert.max_depth = std::max(cert.max_depth, depth);
      if (failure)
        cert.failures.push_back(*failure);
      else
        cert.pairs.push_back(std::move(cover));
    }
    cert.complete = cert.failures.empty();
  }
  cert.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return cert;
}

// PACKING FRACTION

// Motif volume over cell volume, both in lattice units.
template <class S>
S packing_fraction(const Packing<S>& p) {
  S volume{};
  for (const auto& t : p.motif)
    volume += tetra_volume_lattice(t);
  return volume / abs(det3(p.group.cell_matrix()));
}

// CONTACT CENSUS

template <class S>
struct ContactCensus {
  bool composite = false;  // bodies made of several tetrahedra
  std::vector<int> reference_bodies;
  std::vector<ContactRecord<S>> tetra_contacts;  // touching tetrahedron pairs of the references
  std::vector<ContactRecord<S>> body_contacts;   // one per (reference body, outside body)
  std::vector<std::pair<int, std::size_t>> per_tetrahedron;
  std::vector<std::pair<int, std::size_t>> per_body;
  std::map<ContactType, std::size_t> by_type;  // over body_contacts
  Rational average;                            // mean contacts per tetrahedron
};

// Contacts of each reference body with every body it touches. Two bodies
// in contact form one contact however many member pairs touch. A member
// tetrahedron is credited with the body contact when the contact feature
// on the reference body is a face of that member; contacts inside a body
// count for its members but not for the body.
template <class S>
ContactCensus<S> contact_census(const Packing<S>& p) {
  ContactCensus<S> census;
  auto bodies = p.body_list();
  census.composite = std::any_of(bodies.begin(), bodies.end(), [](const auto& b) { return b.size() > 1; });
  if (is_transitive(p))
    census.reference_bodies = {p.body_of(0)};
  else
    for (int b = 0; b < static_cast<int>(bodies.size()); ++b)
      census.reference_bodies.push_back(b);

  auto make_body = [&](int b, const LatticeOffset& n) {
    std::vector<Tetrahedron<S>> parts;
    for (int k : bodies[static_cast<std::size_t>(b)])
      parts.push_back(p.image(k, n));
    return ConvexBody<S>::from_tetrahedra(parts);
  };

  std::size_t tetra_total = 0, tetra_count = 0;
  for (int b : census.reference_bodies) {
    const auto& members = bodies[static_cast<std::size_t>(b)];
    ConvexBody<S> body = make_body(b, {});
    std::map<BodyRef, std::vector<ContactRecord<S>>> pieces;
    std::map<int, std::size_t> internal;
    for (int m : members) {
      auto ref = p.image(m, {});
      auto cands = enumerate_candidates(p, CandidateOptions<S>{m, true, std::nullopt});
      auto inter = parallel_map(cands.size(), [&](std::size_t i) {
        const auto& c = cands.entries[i];
        return halfspace_intersection(ref, p.image(c.motif_index, c.offset));
      });
      for (std::size_t i = 0; i < cands.size(); ++i) {
        const auto& c = cands.entries[i];
        if (inter[i].relation == Relation::overlapping)
          fail("contact census on an overlapping packing (" + describe(p) + ")");
        if (inter[i].relation != Relation::touching)
          continue;
        auto other = p.image(c.motif_index, c.offset);
        auto rec = classify_region(ConvexBody<S>::from_tetrahedron(ref), ConvexBody<S>::from_tetrahedron(other),
                                   inter[i].vertices);
        rec.a = {m, {}};
        rec.b = {c.motif_index, c.offset};
        census.tetra_contacts.push_back(rec);
        BodyRef outside{p.body_of(c.motif_index), c.offset};
        if (outside == BodyRef{b, {}})
          ++internal[m];
        else
          pieces[outside].push_back(rec);
      }
    }

    std::map<int, std::size_t> credited;
    for (auto& [outside, recs] : pieces) {
      std::vector<Vec3<S>> region;
      for (const auto& r : recs)
        for (const auto& v : r.region)
          if (std::find(region.begin(), region.end(), v) == region.end())
            region.push_back(v);
      auto rec = classify_region(body, make_body(outside.index, outside.offset), region);
      rec.a = {b, {}};
      rec.b = outside;
      auto largest = std::max_element(recs.begin(), recs.end(), [](const auto& x, const auto& y) {
        return x.dimension < y.dimension;
      });
      rec.center = largest->center;
      census.body_contacts.push_back(rec);
      ++census.by_type[rec.type];
      for (int m : members) {
        const auto& mv = p.motif[static_cast<std::size_t>(m)].vertices;
        bool participates = std::all_of(rec.feature_a.begin(), rec.feature_a.end(), [&](int vi) {
          return std::find(mv.begin(), mv.end(), body.vertices[static_cast<std::size_t>(vi)]) != mv.end();
        });
        if (participates)
          ++credited[m];
      }
    }
    census.per_body.emplace_back(b, pieces.size());
    for (int m : members) {
      std::size_t n = internal[m] + credited[m];
      census.per_tetrahedron.emplace_back(m, n);
      tetra_total += n;
      ++tetra_count;
    }
  }
  census.average = Rational(static_cast<long>(tetra_total), static_cast<long>(tetra_count));
  return census;
}

// INVERSION CENTERS

using HalfLatticePoint = std::array<long, 3>;

template <class S>
struct InversionCenterReport {
  std::string body;  // "dimer" or "tetrahedron"
  Vec3<S> base_center{};
  // Corners are base + L (origin + B e) / 2 for e in {0,1}^3, where the
  // columns of B (`basis`, integer cell coordinates) have determinant +-1.
  HalfLatticePoint origin{};
  std::array<HalfLatticePoint, 3> basis{};
  std::array<Vec3<S>, 3> edges;  // L B / 2
  std::array<Vec3<S>, 8> centers;
  std::array<HalfLatticePoint, 8> parity{};  // class of each center modulo the lattice
  S cell_volume{};                          // lattice units
  S parallelepiped_volume{};
  S volume_ratio{};
  std::array<bool, 8> on_surface{};
  int on_surface_count = 0;
};

namespace detail {

inline bool is_integral(const Rational& r) { return r.is_integer(); }
template <int D>
bool is_integral(const QuadExt<D>& q) { return is_zero(q.coef()) && q.rat().is_integer(); }

template <class S>
Vec3<S> inversion_base(const Packing<S>& p) {
  for (const auto& g : p.group.generators)
    if (g.linear == -Mat3<S>::identity())
      return g.translation / S(2);
  throw NoInversion("space group of " + describe(p) + " has no point inversion");
}

inline long det3(const std::array<HalfLatticePoint, 3>& b) {
  return b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1]) - b[1][0] * (b[0][1] * b[2][2] - b[0][2] * b[2][1]) +
         b[2][0] * (b[0][1] * b[1][2] - b[0][2] * b[1][1]);
}

// Unimodular bases with entries in {-1, 0, 1}, one sign per column, the
// cell axes first.
inline const std::vector<std::array<HalfLatticePoint, 3>>& small_unimodular_bases() {
  static const std::vector<std::array<HalfLatticePoint, 3>> bases = [] {
    std::vector<HalfLatticePoint> dirs;
    for (long a = -1; a <= 1; ++a)
      for (long b = -1; b <= 1; ++b)
        for (long c = -1; c <= 1; ++c) {
          HalfLatticePoint v{a, b, c};
          auto lead = std::find_if(v.begin(), v.end(), [](long t) { return t != 0; });
          if (lead != v.end() && *lead > 0)
            dirs.push_back(v);
        }
    std::vector<std::array<HalfLatticePoint, 3>> out{{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}};
    for (std::size_t i = 0; i < dirs.size(); ++i)
      for (std::size_t j = i + 1; j < dirs.size(); ++j)
        for (std::size_t k = j + 1; k < dirs.size(); ++k) {
          std::array<HalfLatticePoint, 3> b{dirs[i], dirs[j], dirs[k]};
          if (std::abs(det3(b)) == 1 && b != out.front())
            out.push_back(b);
        }
    return out;
  }();
  return bases;
}

inline HalfLatticePoint corner(const HalfLatticePoint& origin, const std::array<HalfLatticePoint, 3>& basis,
                               int e) {
  HalfLatticePoint m = origin;
  for (int i = 0; i < 3; ++i)
    if ((e >> i) & 1)
      for (int j = 0; j < 3; ++j)
        m[j] += basis[i][j];
  return m;
}

} // namespace detail

// True when the point inversion about `point` belongs to the group.
template <class S>
bool is_inversion_center(const Packing<S>& p, const Vec3<S>& point) {
  Vec3<S> n = inverse(p.group.cell_matrix()) * (S(2) * (point - detail::inversion_base(p)));
  return detail::is_integral(n.u) && detail::is_integral(n.v) && detail::is_integral(n.w);
}

// The inversion centers of the group are base + L m / 2 for integer m; they
// fall into 8 classes modulo the lattice, and the corners of any
// half-lattice parallelepiped with a unimodular edge basis meet each class
// once. Reports the parallelepiped with the most corners on the closed
// surface of the body containing motif[0] (cell axes win ties).
template <class S>
InversionCenterReport<S> inversion_center_report(const Packing<S>& p) {
  InversionCenterReport<S> rep;
  rep.base_center = detail::inversion_base(p);
  int b = p.body_of(0);
  auto members = p.body_list()[static_cast<std::size_t>(b)];
  std::vector<Tetrahedron<S>> parts;
  for (int k : members)
    parts.push_back(p.image(k, {}));
  auto body = ConvexBody<S>::from_tetrahedra(parts);
  rep.body = parts.size() > 1 ? "dimer" : "tetrahedron";

  Mat3<S> cell = p.group.cell_matrix();
  auto point = [&](const HalfLatticePoint& m) {
    return rep.base_center + cell * Vec3<S>{S(m[0]), S(m[1]), S(m[2])} / S(2);
  };

  // Half-lattice points on the body surface, within a margin of its centre.
  Vec3<S> guide = inverse(cell) * (S(2) * (body.center() - rep.base_center));
  HalfLatticePoint g{floor(guide.u).get_si(), floor(guide.v).get_si(), floor(guide.w).get_si()};
  constexpr long reach = 4;
  std::vector<HalfLatticePoint> surface;
  for (long i = -reach; i <= reach; ++i)
    for (long j = -reach; j <= reach; ++j)
      for (long k = -reach; k <= reach; ++k) {
        HalfLatticePoint m{g[0] + i, g[1] + j, g[2] + k};
        if (body.on_surface(point(m)))
          surface.push_back(m);
      }
  std::sort(surface.begin(), surface.end());
  auto on = [&](const HalfLatticePoint& m) { return std::binary_search(surface.begin(), surface.end(), m); };

  int best = -1;
  for (const auto& basis : detail::small_unimodular_bases())
    for (long i = -reach; i <= reach; ++i)
      for (long j = -reach; j <= reach; ++j)
        for (long k = -reach; k <= reach; ++k) {
          HalfLatticePoint origin{g[0] + i, g[1] + j, g[2] + k};
          int count = 0;
          for (int e = 0; e < 8; ++e)
            count += on(detail::corner(origin, basis, e));
          if (count > best) {
            best = count;
            rep.origin = origin;
            rep.basis = basis;
          }
        }

  for (int i = 0; i < 3; ++i)
    rep.edges[i] = cell * Vec3<S>{S(rep.basis[i][0]), S(rep.basis[i][1]), S(rep.basis[i][2])} / S(2);
  for (int e = 0; e < 8; ++e) {
    HalfLatticePoint m = detail::corner(rep.origin, rep.basis, e);
    rep.centers[e] = point(m);
    for (int i = 0; i < 3; ++i)
      rep.parity[e][i] = ((m[i] % 2) + 2) % 2;
    rep.on_surface[e] = on(m);
  }
  rep.on_surface_count = best;
  rep.cell_volume = abs(det3(cell));
  rep.parallelepiped_volume = abs(det3(rep.edges[0], rep.edges[1], rep.edges[2]));
  rep.volume_ratio = rep.parallelepiped_volume / rep.cell_volume;
  return rep;
}

} // namespace tetrapack

#endif // TETRAPACK_VERIFY_HPP_
