// Packing data model: tetrahedra, isometries, space groups, and the
// constructors for the dimer double-lattice family, the simple double
// lattice over Q(sqrt 10), and layered (non-transitive) dimer stackings.

#ifndef TETRAPACK_MODEL_HPP_
#define TETRAPACK_MODEL_HPP_

#include <algorithm>
#include <array>
#include <compare>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"
#include "exact.hpp"
#include "linalg.hpp"

namespace tetrapack {

// Integer coefficients of a translation in the cell basis.
struct LatticeOffset {
  long a = 0, b = 0, c = 0;

  long operator[](int i) const { return i == 0 ? a : i == 1 ? b : c; }
  friend LatticeOffset operator+(const LatticeOffset& x, const LatticeOffset& y) {
    return {x.a + y.a, x.b + y.b, x.c + y.c};
  }
  friend LatticeOffset operator-(const LatticeOffset& x, const LatticeOffset& y) {
    return {x.a - y.a, x.b - y.b, x.c - y.c};
  }
  friend auto operator<=>(const LatticeOffset&, const LatticeOffset&) = default;
  friend bool operator==(const LatticeOffset&, const LatticeOffset&) = default;
};

template <class S>
struct Tetrahedron {
  std::array<Vec3<S>, 4> vertices;
  int motif_index = 0;
  LatticeOffset offset{};

  friend bool operator==(const Tetrahedron& x, const Tetrahedron& y) {
    return x.vertices == y.vertices && x.motif_index == y.motif_index && x.offset == y.offset;
  }
};

// x -> linear * x + translation, in lattice coordinates.
template <class S>
struct Isometry {
  Mat3<S> linear = Mat3<S>::identity();
  Vec3<S> translation{};

  static Isometry identity() { return {}; }
  static Isometry inversion_about(const Vec3<S>& center) {
    return {-Mat3<S>::identity(), S(2) * center};
  }

  Vec3<S> operator()(const Vec3<S>& p) const { return linear * p + translation; }

  // (*this) after `inner`.
  Isometry after(const Isometry& inner) const {
    return {linear * inner.linear, linear * inner.translation + translation};
  }

  friend bool operator==(const Isometry& x, const Isometry& y) {
    return x.linear == y.linear && x.translation == y.translation;
  }
};

template <class S>
struct SpaceGroup {
  std::array<Vec3<S>, 3> cell;  // lattice translations
  std::vector<Isometry<S>> generators;  // point generators (non-translations)
  std::string type;

  Mat3<S> cell_matrix() const { return Mat3<S>::from_columns(cell[0], cell[1], cell[2]); }
  Vec3<S> translation(const LatticeOffset& n) const {
    return S(n.a) * cell[0] + S(n.b) * cell[1] + S(n.c) * cell[2];
  }

  friend bool operator==(const SpaceGroup& x, const SpaceGroup& y) {
    return x.cell == y.cell && x.generators == y.generators && x.type == y.type;
  }
};

template <class S>
struct Packing {
  std::string family;              // "dimer", "simple", "layered" or "custom"
  std::optional<Rational> x;       // dimer parameter, reduced mod 1
  std::vector<Rational> offsets;   // layered stagger offsets
  Gram<S> gram;
  SpaceGroup<S> group;
  std::vector<Tetrahedron<S>> motif;
  // witness[i] maps motif[0] onto motif[i] when the packing is transitive.
  std::vector<std::optional<Isometry<S>>> witness;
  // Motif members glued into one packed body (the bipyramidal dimers).
  // Empty means every tetrahedron is its own body.
  std::vector<std::vector<int>> bodies;

  int size() const { return static_cast<int>(motif.size()); }

  Vec3<S> translation(const LatticeOffset& n) const { return group.translation(n); }

  Tetrahedron<S> image(int k, const LatticeOffset& n) const {
    Tetrahedron<S> t = motif.at(static_cast<std::size_t>(k));
    Vec3<S> shift = translation(n);
    for (auto& v : t.vertices)
      v += shift;
    t.motif_index = k;
    t.offset = n;
    return t;
  }

  std::vector<std::vector<int>> body_list() const {
    if (!bodies.empty())
      return bodies;
    std::vector<std::vector<int>> out;
    for (int k = 0; k < size(); ++k)
      out.push_back({k});
    return out;
  }

  int body_of(int k) const {
    auto list = body_list();
    for (std::size_t b = 0; b < list.size(); ++b)
      if (std::find(list[b].begin(), list[b].end(), k) != list[b].end())
        return static_cast<int>(b);
    fail("motif index without a body");
  }

  friend bool operator==(const Packing& p, const Packing& q) {
    return p.family == q.family && p.x == q.x && p.offsets == q.offsets && p.gram == q.gram &&
           p.group == q.group && p.motif == q.motif && p.witness == q.witness && p.bodies == q.bodies;
  }
};

// OPERATIONS

template <class S>
Vec3<S> centroid(const Tetrahedron<S>& t) {
  const auto& v = t.vertices;
  return (v[0] + v[1] + v[2] + v[3]) / S(4);
}

template <class S>
S tetra_volume_lattice(const Tetrahedron<S>& t) { return tetra_volume_lattice(t.vertices); }

// Vertex-wise image; vertex order and identity tags are preserved.
template <class S>
Tetrahedron<S> apply_isometry(const Isometry<S>& iso, const Tetrahedron<S>& t) {
  Tetrahedron<S> out = t;
  for (auto& v : out.vertices)
    v = iso(v);
  return out;
}

template <class S>
bool check_metric_preserved(const Isometry<S>& iso, const Gram<S>& g) {
  return iso.linear.transposed() * g.matrix() * iso.linear == g.matrix();
}

// Common squared edge length of motif[0] under the packing's metric.
template <class S>
S check_regularity(const Packing<S>& p) {
  const auto& v = p.motif.at(0).vertices;
  std::vector<S> lengths;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      lengths.push_back(gram_norm2(p.gram, v[i] - v[j]));
  std::vector<S> distinct;
  for (const auto& l : lengths)
    if (std::find(distinct.begin(), distinct.end(), l) == distinct.end())
      distinct.push_back(l);
  if (distinct.size() != 1) {
    std::ostringstream msg;
    msg << "tetrahedron is not regular; squared edge lengths:";
    for (const auto& l : distinct)
      msg << " " << l;
    throw NotRegular(msg.str());
  }
  return distinct.front();
}

template <class S>
bool same_vertex_set(const Tetrahedron<S>& a, const Tetrahedron<S>& b) {
  return std::all_of(a.vertices.begin(), a.vertices.end(), [&](const Vec3<S>& v) {
    return std::find(b.vertices.begin(), b.vertices.end(), v) != b.vertices.end();
  });
}

// True when every motif member carries a witness isometry that maps
// motif[0] exactly onto it.
template <class S>
bool is_transitive(const Packing<S>& p) {
  if (p.witness.size() != p.motif.size())
    return false;
  for (std::size_t i = 0; i < p.motif.size(); ++i) {
    if (!p.witness[i])
      return false;
    if (!same_vertex_set(apply_isometry(*p.witness[i], p.motif[0]), p.motif[i]))
      return false;
  }
  return true;
}

// SCALAR SUBSTITUTION

template <class S, class F>
auto map_scalars(const Mat3<S>& m, F&& f) {
  Mat3<decltype(f(m.e[0]))> out;
  for (std::size_t i = 0; i < 9; ++i)
    out.e[i] = f(m.e[i]);
  return out;
}

template <class S, class F>
auto map_scalars(const Packing<S>& p, F&& f) {
  using T = decltype(f(p.gram(0, 0)));
  Packing<T> out;
  out.family = p.family;
  out.x = p.x;
  out.offsets = p.offsets;
  out.gram = Gram<T>(map_scalars(p.gram.matrix(), f));
  for (int i = 0; i < 3; ++i)
    out.group.cell[i] = transform(p.group.cell[i], f);
  for (const auto& g : p.group.generators)
    out.group.generators.push_back({map_scalars(g.linear, f), transform(g.translation, f)});
  out.group.type = p.group.type;
  for (const auto& t : p.motif) {
    Tetrahedron<T> u;
    for (int i = 0; i < 4; ++i)
      u.vertices[i] = transform(t.vertices[i], f);
    u.motif_index = t.motif_index;
    u.offset = t.offset;
    out.motif.push_back(u);
  }
  for (const auto& w : p.witness) {
    if (w)
      out.witness.push_back(Isometry<T>{map_scalars(w->linear, f), transform(w->translation, f)});
    else
      out.witness.push_back(std::nullopt);
  }
  out.bodies = p.bodies;
  return out;
}

// Instance of a packing whose coordinates are polynomials in x.
inline Packing<Rational> evaluate(const Packing<RatPoly>& p, const Rational& x) {
  auto out = map_scalars(p, [&](const RatPoly& q) { return q(x); });
  out.x = x;
  return out;
}

// CONSTRUCTORS

// Range of x for which the dimer family is a packing (mod 1).
inline Rational dimer_x_min() { return {29, 56}; }
inline Rational dimer_x_max() { return {9, 14}; }

// Orthogonal basis with |a| = 2 sqrt(7)/5, |b| = sqrt(3)/2, |c| = 13 sqrt(3/14)/5.
inline Gram<Rational> dimer_gram() {
  return Gram<Rational>(Mat3<Rational>::diagonal({28, 25}, {3, 4}, {507, 350}));
}

namespace detail {

template <class S>
Vec3<S> rvec(Rational a, Rational b, Rational c) { return {S(a), S(b), S(c)}; }

template <class S>
std::array<Vec3<S>, 4> dimer_fundamental() {
  return {rvec<S>({27, 28}, {-7, 30}, {10, 39}), rvec<S>({1, 4}, {-9, 10}, 0),
          rvec<S>({1, 14}, {1, 10}, {5, 13}), rvec<S>({3, 7}, {1, 10}, {-5, 13})};
}

// Two-fold rotation about the axis {a/4 + t b}: (u, v, w) -> (1/2 - u, v, -w).
template <class S>
Isometry<S> dimer_rotation() {
  return {Mat3<S>::diagonal(S(-1), S(1), S(-1)), rvec<S>({1, 2}, 0, 0)};
}

template <class S>
Isometry<S> point_inversion() { return Isometry<S>::inversion_about({}); }

// The four motif tetrahedra T0, R2 T0, -T0, -R2 T0 with their witnesses.
template <class S>
void dimer_motif(Packing<S>& p, const Vec3<S>& shift = {}) {
  Tetrahedron<S> t0;
  t0.vertices = dimer_fundamental<S>();
  auto id = Isometry<S>::identity();
  auto rot = dimer_rotation<S>();
  auto inv = point_inversion<S>();
  Isometry<S> shift_iso{Mat3<S>::identity(), shift};
  std::array<Isometry<S>, 4> elems = {id, rot, inv, inv.after(rot)};
  int base = p.size();
  for (int k = 0; k < 4; ++k) {
    Isometry<S> g = shift_iso.after(elems[k]);
    Tetrahedron<S> t = apply_isometry(g, t0);
    t.motif_index = base + k;
    p.motif.push_back(t);
    p.witness.push_back(g);
  }
  p.bodies.push_back({base, base + 1});
  p.bodies.push_back({base + 2, base + 3});
}

template <class S>
Packing<S> dimer(const S& x, Gram<S> gram) {
  Packing<S> p;
  p.family = "dimer";
  p.gram = std::move(gram);
  p.group.type = "C2/c";
  p.group.cell = {rvec<S>(1, 0, 0), rvec<S>(0, 1, 0),
                  Vec3<S>{x, S(Rational(1, 2)), S(Rational(1, 2))}};
  p.group.generators = {point_inversion<S>(), dimer_rotation<S>()};
  dimer_motif(p);
  return p;
}

inline void require_monoclinic(const Gram<Rational>& g) {
  if (!is_zero(g(0, 1)) || !is_zero(g(1, 2)))
    fail("dimer family needs a monoclinic Gram matrix (a.b = b.c = 0)");
}

} // namespace detail

// The dimer family with x left symbolic: every coordinate is a polynomial
// of degree <= 1 in x.
inline Packing<RatPoly> dimer_family(const Gram<Rational>& gram = dimer_gram()) {
  detail::require_monoclinic(gram);
  return detail::dimer<RatPoly>(RatPoly::x(), Gram<RatPoly>(gram));
}

inline Packing<Rational> build_dimer_packing(const Rational& x, const Gram<Rational>& gram) {
  detail::require_monoclinic(gram);
  Rational r = mod1(x);
  auto p = detail::dimer<Rational>(r, gram);
  p.x = r;
  return p;
}

inline Packing<Rational> build_dimer_packing(const Rational& x) {
  return build_dimer_packing(x, dimer_gram());
}

// Cartesian basis vectors a, b, c of the triclinic simple double lattice.
inline std::array<Vec3<Q10>, 3> simple_cartesian_basis() {
  auto q = [](long r_num, long r_den, long c_num, long c_den) {
    return Q10(Rational(r_num, r_den), Rational(c_num, c_den));
  };
  return {Vec3<Q10>{1, q(-13, 3, 4, 3), 0},
          Vec3<Q10>{q(-4, 3, 1, 3), q(3, 1, -1, 1), -1},
          Vec3<Q10>{q(3, 1, -1, 1), 1, q(4, 3, -1, 3)}};
}

inline Packing<Q10> build_simple_packing() {
  auto basis = simple_cartesian_basis();
  Mat3<Q10> g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      g(i, j) = pair(basis[i], basis[j]);

  auto v = [](long a0, long a1, long b0, long b1, long c0, long c1) {
    auto s = [](long r, long c) { return Q10(Rational(r, 246), Rational(c, 246)); };
    return Vec3<Q10>{s(a0, a1), s(b0, b1), s(c0, c1)};
  };
  Tetrahedron<Q10> t0;
  t0.vertices = {v(433, -86, 611, -133, 188, -22), v(111, -30, 93, -75, -66, -42),
                 v(-85, -28, 13, -29, 4, 10), v(179, -106, 427, -101, -20, -50)};

  Packing<Q10> p;
  p.family = "simple";
  p.gram = Gram<Q10>(g);
  p.group.type = "P-1";
  p.group.cell = {Vec3<Q10>{1, 0, 0}, Vec3<Q10>{0, 1, 0}, Vec3<Q10>{0, 0, 1}};
  auto inv = detail::point_inversion<Q10>();
  p.group.generators = {inv};
  Tetrahedron<Q10> t1 = apply_isometry(inv, t0);
  t1.motif_index = 1;
  p.motif = {t0, t1};
  p.witness = {Isometry<Q10>::identity(), inv};
  return p;
}

// Dimer layers stacked with individually chosen stagger offsets. Layer j+1
// sits at (b + c)/2 above layer j, shifted by offsets[j] along a; the
// vertical period spans offsets.size() layers. A single offset gives the
// transitive family member for that x.
inline Packing<Rational> build_layered_packing(const std::vector<Rational>& offsets) {
  if (offsets.empty())
    fail("layered packing needs at least one offset");
  std::vector<Rational> reduced;
  for (const auto& o : offsets)
    reduced.push_back(mod1(o));
  if (reduced.size() == 1)
    return build_dimer_packing(reduced.front());

  Packing<Rational> p;
  p.family = "layered";
  p.offsets = reduced;
  p.gram = dimer_gram();
  p.group.type = "P1";
  Rational along, k(static_cast<long>(reduced.size()));
  for (std::size_t j = 0; j < reduced.size(); ++j) {
    Rational lift = Rational(static_cast<long>(j)) / Rational(2);
    detail::dimer_motif(p, Vec3<Rational>{along, lift, lift});
    along += reduced[j];
  }
  p.group.cell = {Vec3<Rational>{1, 0, 0}, Vec3<Rational>{0, 1, 0},
                  Vec3<Rational>{along, k / Rational(2), k / Rational(2)}};
  // Only translations are guaranteed symmetries of a staggered stack.
  for (std::size_t i = 1; i < p.witness.size(); ++i)
    p.witness[i] = std::nullopt;
  return p;
}

} // namespace tetrapack

#endif // TETRAPACK_MODEL_HPP_
