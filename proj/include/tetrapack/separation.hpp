// Exact disjointness and contact predicates for pairs of tetrahedra.
//
// Two independent routes decide whether a pair overlaps:
//   * separate_by_vertex_plane() searches the planes through three of the
//     eight vertices for one that puts the bodies in opposite closed
//     half-spaces, and returns it as a certificate;
//   * halfspace_intersection() enumerates the vertices of the polytope cut
//     out by the eight facet half-spaces and measures its dimension.
// Both are metric-free: they only use orientation signs in lattice
// coordinates.

#ifndef TETRAPACK_SEPARATION_HPP_
#define TETRAPACK_SEPARATION_HPP_

#include <algorithm>
#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "exact.hpp"
#include "linalg.hpp"
#include "model.hpp"

namespace tetrapack {

enum class Relation { disjoint, touching, overlapping };

inline const char* to_string(Relation r) {
  switch (r) {
  case Relation::disjoint: return "disjoint";
  case Relation::touching: return "touching";
  case Relation::overlapping: return "overlapping";
  }
  return "?";
}

// Closed half-space {p : normal . p <= offset}.
template <class S>
struct HalfSpace {
  Vec3<S> normal;
  S offset;

  S excess(const Vec3<S>& p) const { return pair(normal, p) - offset; }
};

// Half-space bounded by the plane through a, b, c containing `inside`.
template <class S>
HalfSpace<S> halfspace_through(const Vec3<S>& a, const Vec3<S>& b, const Vec3<S>& c,
                               const Vec3<S>& inside) {
  Vec3<S> n = cross(b - a, c - a);
  HalfSpace<S> h{n, pair(n, a)};
  if (sign(h.excess(inside)) > 0)
    h = {-n, -h.offset};
  return h;
}

// Facet i is opposite vertex i.
template <class S>
std::array<HalfSpace<S>, 4> facet_halfspaces(const Tetrahedron<S>& t) {
  const auto& v = t.vertices;
  return {halfspace_through(v[1], v[2], v[3], v[0]), halfspace_through(v[0], v[2], v[3], v[1]),
          halfspace_through(v[0], v[1], v[3], v[2]), halfspace_through(v[0], v[1], v[2], v[3])};
}

// VERTEX-PLANE CERTIFICATES

// Vertices 0-3 belong to A, 4-7 to B. `side` is normalized so that every A
// vertex has sign <= 0 and every B vertex sign >= 0; `orientation` is the
// factor that was applied to the raw orient(plane, vertex) signs.
struct SeparationCertificate {
  std::array<int, 3> plane_vertices{};
  int orientation = 1;
  std::array<int, 8> side{};
  bool touching = false;
  std::vector<int> on_plane;
};

namespace detail {

template <class S>
struct Point2 {
  S x, y;
};

template <class S>
int orient2(const Point2<S>& a, const Point2<S>& b, const Point2<S>& c) {
  return sign((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x));
}

template <class S>
bool same_point(const Point2<S>& a, const Point2<S>& b) { return a.x == b.x && a.y == b.y; }

// p on the closed segment [a, b] (a may equal b).
template <class S>
bool on_segment(const Point2<S>& p, const Point2<S>& a, const Point2<S>& b) {
  if (orient2(a, b, p) != 0)
    return false;
  S d = (p.x - a.x) * (p.x - b.x) + (p.y - a.y) * (p.y - b.y);
  return sign(d) <= 0;
}

template <class S>
bool segments_meet(const Point2<S>& a, const Point2<S>& b, const Point2<S>& c, const Point2<S>& d) {
  int o1 = orient2(a, b, c), o2 = orient2(a, b, d), o3 = orient2(c, d, a), o4 = orient2(c, d, b);
  if (o1 * o2 < 0 && o3 * o4 < 0)
    return true;
  return on_segment(c, a, b) || on_segment(d, a, b) || on_segment(a, c, d) || on_segment(b, c, d);
}

// Point in the closed convex hull of at most three points.
template <class S>
bool in_small_hull(const Point2<S>& p, const std::vector<Point2<S>>& h) {
  if (h.size() == 1)
    return same_point(p, h[0]);
  if (h.size() == 2)
    return on_segment(p, h[0], h[1]);
  int s0 = orient2(h[0], h[1], p), s1 = orient2(h[1], h[2], p), s2 = orient2(h[2], h[0], p);
  bool has_neg = s0 < 0 || s1 < 0 || s2 < 0, has_pos = s0 > 0 || s1 > 0 || s2 > 0;
  if (orient2(h[0], h[1], h[2]) == 0)  // degenerate triangle: union of its sides
    return on_segment(p, h[0], h[1]) || on_segment(p, h[1], h[2]) || on_segment(p, h[2], h[0]);
  return !(has_neg && has_pos);
}

// Two convex hulls of at most three coplanar points intersect iff a point
// of one lies in the other or two of their edges meet.
template <class S>
bool small_hulls_meet(const std::vector<Point2<S>>& p, const std::vector<Point2<S>>& q) {
  for (const auto& a : p)
    if (in_small_hull(a, q))
      return true;
  for (const auto& b : q)
    if (in_small_hull(b, p))
      return true;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      for (std::size_t k = 0; k < q.size(); ++k)
        for (std::size_t l = k + 1; l < q.size(); ++l)
          if (segments_meet(p[i], p[j], q[k], q[l]))
            return true;
  return false;
}

// Affine projection of a plane with the given normal onto a coordinate plane.
template <class S>
Point2<S> project(const Vec3<S>& p, int drop) {
  switch (drop) {
  case 0: return {p.v, p.w};
  case 1: return {p.u, p.w};
  default: return {p.u, p.v};
  }
}

template <class S>
std::array<Vec3<S>, 8> pair_vertices(const Tetrahedron<S>& a, const Tetrahedron<S>& b) {
  return {a.vertices[0], a.vertices[1], a.vertices[2], a.vertices[3],
          b.vertices[0], b.vertices[1], b.vertices[2], b.vertices[3]};
}

// Lexicographic list of the 56 vertex triples of a pair.
inline const std::vector<std::array<int, 3>>& vertex_triples() {
  static const std::vector<std::array<int, 3>> triples = [] {
    std::vector<std::array<int, 3>> t;
    for (int i = 0; i < 8; ++i)
      for (int j = i + 1; j < 8; ++j)
        for (int k = j + 1; k < 8; ++k)
          t.push_back({i, j, k});
    return t;
  }();
  return triples;
}

} // namespace detail

// First plane (in lexicographic triple order) through three of the eight
// vertices that separates A and B into opposite closed half-spaces; nullopt
// means no such plane exists, i.e. the interiors overlap.
template <class S>
std::optional<SeparationCertificate> separate_by_vertex_plane(const Tetrahedron<S>& a,
                                                              const Tetrahedron<S>& b) {
  auto pts = detail::pair_vertices(a, b);
  for (const auto& tri : detail::vertex_triples()) {
    const auto& p = pts[tri[0]];
    const auto& q = pts[tri[1]];
    const auto& r = pts[tri[2]];
    Vec3<S> normal = cross(q - p, r - p);
    if (is_zero(normal))
      continue;
    std::array<int, 8> side{};
    for (int m = 0; m < 8; ++m)
      side[m] = sign(pair(normal, pts[m] - p));
    auto a_max = *std::max_element(side.begin(), side.begin() + 4);
    auto a_min = *std::min_element(side.begin(), side.begin() + 4);
    auto b_max = *std::max_element(side.begin() + 4, side.end());
    auto b_min = *std::min_element(side.begin() + 4, side.end());
    int orientation = 0;
    if (a_max <= 0 && b_min >= 0)
      orientation = 1;
    else if (a_min >= 0 && b_max <= 0)
      orientation = -1;
    else
      continue;

    SeparationCertificate cert;
    cert.plane_vertices = tri;
    cert.orientation = orientation;
    for (int m = 0; m < 8; ++m) {
      cert.side[m] = orientation * side[m];
      if (side[m] == 0)
        cert.on_plane.push_back(m);
    }
    // Closed bodies meet only inside the plane: A and B touch iff their
    // in-plane faces (hulls of the on-plane vertices) intersect.
    int drop = !is_zero(normal.w) ? 2 : !is_zero(normal.v) ? 1 : 0;
    std::vector<detail::Point2<S>> fa, fb;
    for (int m : cert.on_plane)
      (m < 4 ? fa : fb).push_back(detail::project(pts[m], drop));
    cert.touching = !fa.empty() && !fb.empty() && detail::small_hulls_meet(fa, fb);
    return cert;
  }
  return std::nullopt;
}

// HALF-SPACE INTERSECTION ORACLE

template <class S>
struct IntersectionResult {
  Relation relation = Relation::disjoint;
  std::vector<Vec3<S>> vertices;  // vertices of A ∩ B
  int dimension = -1;             // affine dimension of A ∩ B, -1 when empty
  std::optional<Vec3<S>> interior_point;  // strictly inside both, when overlapping
};

template <class S>
int affine_dimension(const std::vector<Vec3<S>>& pts) {
  if (pts.empty())
    return -1;
  const auto& p0 = pts[0];
  auto it1 = std::find_if(pts.begin(), pts.end(), [&](const Vec3<S>& p) { return !(p == p0); });
  if (it1 == pts.end())
    return 0;
  Vec3<S> d1 = *it1 - p0;
  auto it2 = std::find_if(pts.begin(), pts.end(),
                          [&](const Vec3<S>& p) { return !is_zero(cross(d1, p - p0)); });
  if (it2 == pts.end())
    return 1;
  Vec3<S> n = cross(d1, *it2 - p0);
  bool solid = std::any_of(pts.begin(), pts.end(),
                           [&](const Vec3<S>& p) { return !is_zero(pair(n, p - p0)); });
  return solid ? 3 : 2;
}

template <class S>
Vec3<S> vertex_average(const std::vector<Vec3<S>>& pts) {
  Vec3<S> sum{};
  for (const auto& p : pts)
    sum += p;
  return sum / S(static_cast<long>(pts.size()));
}

// The vertices of A ∩ B are the points where three of the eight facet
// planes meet and all eight closed half-spaces hold.
template <class S>
IntersectionResult<S> halfspace_intersection(const Tetrahedron<S>& a, const Tetrahedron<S>& b) {
  std::array<HalfSpace<S>, 8> hs;
  auto fa = facet_halfspaces(a), fb = facet_halfspaces(b);
  std::copy(fa.begin(), fa.end(), hs.begin());
  std::copy(fb.begin(), fb.end(), hs.begin() + 4);

  IntersectionResult<S> out;
  for (const auto& tri : detail::vertex_triples()) {
    Mat3<S> m = Mat3<S>::from_rows(hs[tri[0]].normal, hs[tri[1]].normal, hs[tri[2]].normal);
    S det = det3(m);
    if (is_zero(det))
      continue;
    Vec3<S> rhs{hs[tri[0]].offset, hs[tri[1]].offset, hs[tri[2]].offset};
    Vec3<S> p = adjugate(m) * rhs / det;
    if (std::all_of(hs.begin(), hs.end(), [&](const HalfSpace<S>& h) { return sign(h.excess(p)) <= 0; }) &&
        std::find(out.vertices.begin(), out.vertices.end(), p) == out.vertices.end())
      out.vertices.push_back(p);
  }
  out.dimension = affine_dimension(out.vertices);
  if (out.dimension < 0)
    out.relation = Relation::disjoint;
  else if (out.dimension < 3)
    out.relation = Relation::touching;
  else {
    out.relation = Relation::overlapping;
    out.interior_point = vertex_average(out.vertices);
  }
  return out;
}

template <class S>
Relation halfspace_intersection_oracle(const Tetrahedron<S>& a, const Tetrahedron<S>& b) {
  return halfspace_intersection(a, b).relation;
}

// CONTACT CLASSIFICATION

// Convex polytope given by vertices and outward facet half-spaces. Built
// from one tetrahedron or from several whose union is convex (a dimer).
template <class S>
struct ConvexBody {
  std::vector<Vec3<S>> vertices;
  std::vector<HalfSpace<S>> facets;

  static ConvexBody from_tetrahedra(std::span<const Tetrahedron<S>> parts) {
    ConvexBody body;
    for (const auto& t : parts)
      for (const auto& v : t.vertices)
        if (std::find(body.vertices.begin(), body.vertices.end(), v) == body.vertices.end())
          body.vertices.push_back(v);
    std::vector<std::vector<int>> seen;
    for (const auto& t : parts) {
      for (const auto& h : facet_halfspaces(t)) {
        // Internal faces have body vertices on both sides.
        bool outer = std::all_of(body.vertices.begin(), body.vertices.end(),
                                 [&](const Vec3<S>& v) { return sign(h.excess(v)) <= 0; });
        if (!outer)
          continue;
        std::vector<int> on = body.on_plane(h);
        if (std::find(seen.begin(), seen.end(), on) != seen.end())
          continue;
        seen.push_back(on);
        body.facets.push_back(h);
      }
    }
    return body;
  }

  static ConvexBody from_tetrahedron(const Tetrahedron<S>& t) {
    return from_tetrahedra(std::span<const Tetrahedron<S>>(&t, 1));
  }

  std::vector<int> on_plane(const HalfSpace<S>& h) const {
    std::vector<int> on;
    for (int i = 0; i < static_cast<int>(vertices.size()); ++i)
      if (is_zero(h.excess(vertices[static_cast<std::size_t>(i)])))
        on.push_back(i);
    return on;
  }

  // Vertex indices of the smallest face containing every point.
  std::vector<int> minimal_face(const std::vector<Vec3<S>>& pts) const {
    std::vector<int> face(vertices.size());
    for (std::size_t i = 0; i < face.size(); ++i)
      face[i] = static_cast<int>(i);
    for (const auto& h : facets) {
      bool tight = std::all_of(pts.begin(), pts.end(),
                               [&](const Vec3<S>& p) { return is_zero(h.excess(p)); });
      if (!tight)
        continue;
      auto on = on_plane(h);
      std::vector<int> keep;
      std::set_intersection(face.begin(), face.end(), on.begin(), on.end(), std::back_inserter(keep));
      face = std::move(keep);
    }
    return face;
  }

  bool contains(const Vec3<S>& p) const {
    return std::all_of(facets.begin(), facets.end(),
                       [&](const HalfSpace<S>& h) { return sign(h.excess(p)) <= 0; });
  }

  // On the closed boundary: inside and on at least one facet plane.
  bool on_surface(const Vec3<S>& p) const {
    return contains(p) && std::any_of(facets.begin(), facets.end(),
                                      [&](const HalfSpace<S>& h) { return is_zero(h.excess(p)); });
  }

  Vec3<S> center() const { return vertex_average(vertices); }
};

enum class ContactType {
  face_face,
  edge_edge,
  vertex_edge,
  edge_vertex,
  vertex_face,
  face_vertex,
  vertex_vertex,
  edge_face,
  face_edge,
  none,
};

inline const char* to_string(ContactType t) {
  switch (t) {
  case ContactType::face_face: return "face-face";
  case ContactType::edge_edge: return "edge-edge";
  case ContactType::vertex_edge: return "vertex-edge";
  case ContactType::edge_vertex: return "edge-vertex";
  case ContactType::vertex_face: return "vertex-face";
  case ContactType::face_vertex: return "face-vertex";
  case ContactType::vertex_vertex: return "vertex-vertex";
  case ContactType::edge_face: return "edge-face";
  case ContactType::face_edge: return "face-edge";
  case ContactType::none: return "none";
  }
  return "?";
}

// 0 for a vertex, 1 for an edge, 2 for a facet.
inline int face_dimension(std::size_t vertex_count) {
  return vertex_count <= 1 ? 0 : vertex_count == 2 ? 1 : 2;
}

inline ContactType contact_type(std::size_t feature_a, std::size_t feature_b) {
  static constexpr ContactType table[3][3] = {
      {ContactType::vertex_vertex, ContactType::vertex_edge, ContactType::vertex_face},
      {ContactType::edge_vertex, ContactType::edge_edge, ContactType::edge_face},
      {ContactType::face_vertex, ContactType::face_edge, ContactType::face_face}};
  return table[face_dimension(feature_a)][face_dimension(feature_b)];
}

// Identity of a packed body or tetrahedron: index (motif or body) plus the
// lattice offset of its cell.
struct BodyRef {
  int index = 0;
  LatticeOffset offset{};
  friend auto operator<=>(const BodyRef&, const BodyRef&) = default;
  friend bool operator==(const BodyRef&, const BodyRef&) = default;
};

template <class S>
struct ContactRecord {
  BodyRef a, b;
  ContactType type = ContactType::none;
  std::vector<int> feature_a, feature_b;  // vertex indices of the minimal faces
  std::vector<Vec3<S>> region;            // vertices of the contact set
  Vec3<S> center{};                       // vertex average of the region
  int dimension = -1;                     // affine dimension of the region

  std::optional<Vec3<S>> point() const {
    if (dimension == 0)
      return region.front();
    return std::nullopt;
  }
};

template <class S>
ContactRecord<S> classify_region(const ConvexBody<S>& a, const ConvexBody<S>& b,
                                 const std::vector<Vec3<S>>& region) {
  ContactRecord<S> rec;
  rec.region = region;
  rec.dimension = affine_dimension(region);
  rec.center = vertex_average(region);
  rec.feature_a = a.minimal_face(region);
  rec.feature_b = b.minimal_face(region);
  if (rec.feature_a.size() == a.vertices.size() || rec.feature_b.size() == b.vertices.size())
    fail("contact region reaches a body interior");
  rec.type = contact_type(rec.feature_a.size(), rec.feature_b.size());
  return rec;
}

template <class S>
ContactRecord<S> classify_contact(const Tetrahedron<S>& a, const Tetrahedron<S>& b) {
  auto inter = halfspace_intersection(a, b);
  if (inter.relation != Relation::touching)
    throw NotTouching(std::string("pair is ") + to_string(inter.relation) + ", not touching");
  auto rec = classify_region(ConvexBody<S>::from_tetrahedron(a), ConvexBody<S>::from_tetrahedron(b),
                             inter.vertices);
  rec.a = {a.motif_index, a.offset};
  rec.b = {b.motif_index, b.offset};
  return rec;
}

// SYMBOLIC WITNESSES

// Orientation polynomials of the five off-plane vertices of a pair whose
// coordinates are affine in x, against the plane through `plane`.
struct PolyWitness {
  std::array<int, 3> plane{};
  std::array<int, 5> vertex{};
  std::array<RatPoly, 5> orient;
  Vec3<RatPoly> normal;  // plane normal; zero at x iff the triple is collinear there
};

inline PolyWitness separation_poly_in_x(const Tetrahedron<RatPoly>& a, const Tetrahedron<RatPoly>& b,
                                        const std::array<int, 3>& plane) {
  auto pts = detail::pair_vertices(a, b);
  PolyWitness w;
  w.plane = plane;
  const auto& p = pts[plane[0]];
  w.normal = cross(pts[plane[1]] - p, pts[plane[2]] - p);
  if (is_zero(w.normal))
    fail("degenerate witness: vertex triple is collinear for every x");
  int slot = 0;
  for (int m = 0; m < 8; ++m) {
    if (m == plane[0] || m == plane[1] || m == plane[2])
      continue;
    w.vertex[slot] = m;
    w.orient[slot] = pair(w.normal, pts[m] - p);
    ++slot;
  }
  return w;
}

// Orientation (+1: A side <= 0, -1: mirrored) under which the witness
// separates the pair for every x in [lo, hi], if any.
inline std::optional<int> witness_orientation_on(const PolyWitness& w, const Rational& lo,
                                                 const Rational& hi) {
  bool noncollinear = false;
  for (int i = 0; i < 3 && !noncollinear; ++i)
    noncollinear = is_strict(poly_sign_on_interval(w.normal[i], lo, hi).cls);
  if (!noncollinear)
    return std::nullopt;
  bool plus = true, minus = true;
  for (int s = 0; s < 5 && (plus || minus); ++s) {
    SignClass c = poly_sign_on_interval(w.orient[s], lo, hi).cls;
    bool on_a = w.vertex[s] < 4;
    plus = plus && (on_a ? is_nonpositive(c) : is_nonnegative(c));
    minus = minus && (on_a ? is_nonnegative(c) : is_nonpositive(c));
  }
  if (plus)
    return 1;
  if (minus)
    return -1;
  return std::nullopt;
}

} // namespace tetrapack

#endif // TETRAPACK_SEPARATION_HPP_
