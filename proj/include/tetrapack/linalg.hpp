// Three-dimensional vectors and matrices over an exact scalar type, the
// Gram-matrix metric, and the affine orientation predicate.
//
// All coordinates are lattice coordinates. The metric enters only through
// gram_dot(); orient() and the volume routines are metric-free.

#ifndef TETRAPACK_LINALG_HPP_
#define TETRAPACK_LINALG_HPP_

#include <array>
#include <cstddef>
#include <ostream>
#include <utility>

#include "error.hpp"
#include "exact.hpp"

namespace tetrapack {

template <class S>
struct Vec3 {
  S u{}, v{}, w{};

  Vec3() = default;
  Vec3(S u_, S v_, S w_) : u(std::move(u_)), v(std::move(v_)), w(std::move(w_)) {}
  // Lift between scalar systems (Rational -> Q10, Rational -> RatPoly).
  template <class T>
    requires(!std::is_same_v<S, T> && std::is_constructible_v<S, const T&>)
  explicit Vec3(const Vec3<T>& o) : u(S(o.u)), v(S(o.v)), w(S(o.w)) {}

  const S& operator[](int i) const { return i == 0 ? u : i == 1 ? v : w; }
  S& operator[](int i) { return i == 0 ? u : i == 1 ? v : w; }

  Vec3 operator-() const { return {-u, -v, -w}; }
  Vec3& operator+=(const Vec3& o) { u += o.u; v += o.v; w += o.w; return *this; }
  Vec3& operator-=(const Vec3& o) { u -= o.u; v -= o.v; w -= o.w; return *this; }
  friend Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
  friend Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
  friend Vec3 operator*(const S& s, const Vec3& a) { return {s * a.u, s * a.v, s * a.w}; }
  friend Vec3 operator/(const Vec3& a, const S& s) { return {a.u / s, a.v / s, a.w / s}; }
  friend bool operator==(const Vec3& a, const Vec3& b) {
    return a.u == b.u && a.v == b.v && a.w == b.w;
  }
  friend std::ostream& operator<<(std::ostream& os, const Vec3& a) {
    return os << "(" << a.u << ", " << a.v << ", " << a.w << ")";
  }
};

// Component-wise image under f, possibly into another scalar system.
template <class S, class F>
auto transform(const Vec3<S>& a, F&& f) -> Vec3<decltype(f(a.u))> {
  return {f(a.u), f(a.v), f(a.w)};
}

template <class S>
bool is_zero(const Vec3<S>& a) { return a == Vec3<S>{}; }

// Pairing of a covector (plane normal in lattice coordinates) with a point.
template <class S>
S pair(const Vec3<S>& n, const Vec3<S>& p) { return n.u * p.u + n.v * p.v + n.w * p.w; }

// Coordinate cross product: a covector vanishing on a and b.
template <class S>
Vec3<S> cross(const Vec3<S>& a, const Vec3<S>& b) {
  return {a.v * b.w - a.w * b.v, a.w * b.u - a.u * b.w, a.u * b.v - a.v * b.u};
}

template <class S>
struct Mat3 {
  std::array<S, 9> e{};  // row-major

  Mat3() = default;
  template <class T>
    requires(!std::is_same_v<S, T> && std::is_constructible_v<S, const T&>)
  explicit Mat3(const Mat3<T>& o) {
    for (std::size_t i = 0; i < 9; ++i)
      e[i] = S(o.e[i]);
  }

  static Mat3 identity() { return diagonal(S(1), S(1), S(1)); }
  static Mat3 diagonal(S a, S b, S c) {
    Mat3 m;
    m(0, 0) = std::move(a);
    m(1, 1) = std::move(b);
    m(2, 2) = std::move(c);
    return m;
  }
  static Mat3 from_rows(const Vec3<S>& r0, const Vec3<S>& r1, const Vec3<S>& r2) {
    Mat3 m;
    for (int j = 0; j < 3; ++j) {
      m(0, j) = r0[j];
      m(1, j) = r1[j];
      m(2, j) = r2[j];
    }
    return m;
  }
  static Mat3 from_columns(const Vec3<S>& c0, const Vec3<S>& c1, const Vec3<S>& c2) {
    return from_rows(c0, c1, c2).transposed();
  }

  S& operator()(int i, int j) { return e[static_cast<std::size_t>(3 * i + j)]; }
  const S& operator()(int i, int j) const { return e[static_cast<std::size_t>(3 * i + j)]; }
  Vec3<S> row(int i) const { return {(*this)(i, 0), (*this)(i, 1), (*this)(i, 2)}; }
  Vec3<S> column(int j) const { return {(*this)(0, j), (*this)(1, j), (*this)(2, j)}; }

  Mat3 transposed() const {
    Mat3 t;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        t(i, j) = (*this)(j, i);
    return t;
  }

  Mat3 operator-() const {
    Mat3 m = *this;
    for (auto& x : m.e)
      x = -x;
    return m;
  }
  friend Mat3 operator*(const Mat3& a, const Mat3& b) {
    Mat3 m;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        m(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j) + a(i, 2) * b(2, j);
    return m;
  }
  friend Vec3<S> operator*(const Mat3& a, const Vec3<S>& x) {
    return {pair(a.row(0), x), pair(a.row(1), x), pair(a.row(2), x)};
  }
  friend Mat3 operator*(const S& s, Mat3 a) {
    for (auto& x : a.e)
      x = s * x;
    return a;
  }
  friend bool operator==(const Mat3& a, const Mat3& b) { return a.e == b.e; }
};

template <class S>
S det3(const Mat3<S>& m) {
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

template <class S>
S det3(const Vec3<S>& a, const Vec3<S>& b, const Vec3<S>& c) {
  return pair(a, cross(b, c));
}

template <class S>
Mat3<S> adjugate(const Mat3<S>& m) {
  // Columns of adj(m) are cross products of the rows of m.
  Vec3<S> c0 = cross(m.row(1), m.row(2));
  Vec3<S> c1 = cross(m.row(2), m.row(0));
  Vec3<S> c2 = cross(m.row(0), m.row(1));
  return Mat3<S>::from_columns(c0, c1, c2);
}

template <class S>
Mat3<S> inverse(const Mat3<S>& m) {
  S d = det3(m);
  if (is_zero(d))
    fail("singular 3x3 matrix");
  Mat3<S> a = adjugate(m);
  for (auto& x : a.e)
    x = x / d;
  return a;
}

template <class S>
bool is_symmetric(const Mat3<S>& m) {
  return m(0, 1) == m(1, 0) && m(0, 2) == m(2, 0) && m(1, 2) == m(2, 1);
}

// Sylvester's criterion, decided exactly.
template <class S>
bool is_positive_definite(const Mat3<S>& m) {
  S m1 = m(0, 0);
  S m2 = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  return is_symmetric(m) && sign(m1) > 0 && sign(m2) > 0 && sign(det3(m)) > 0;
}

// Inner products of the lattice basis vectors.
template <class S>
class Gram {
public:
  Gram() : g_(Mat3<S>::identity()) {}
  // Validates symmetry and positive definiteness.
  explicit Gram(Mat3<S> g) : g_(std::move(g)) {
    if (!is_symmetric(g_))
      fail("Gram matrix is not symmetric");
    if constexpr (requires(const S& s) { sign(s); }) {
      if (!is_positive_definite(g_))
        fail("Gram matrix is not positive definite");
    }
  }
  template <class T>
    requires(!std::is_same_v<S, T> && std::is_constructible_v<S, const T&>)
  explicit Gram(const Gram<T>& o) : g_(Mat3<S>(o.matrix())) {}

  const Mat3<S>& matrix() const { return g_; }
  const S& operator()(int i, int j) const { return g_(i, j); }
  friend bool operator==(const Gram& a, const Gram& b) { return a.g_ == b.g_; }

private:
  Mat3<S> g_;
};

template <class S>
S gram_dot(const Gram<S>& g, const Vec3<S>& a, const Vec3<S>& b) {
  return pair(a, g.matrix() * b);
}

template <class S>
S gram_norm2(const Gram<S>& g, const Vec3<S>& a) { return gram_dot(g, a, a); }

// det[q - p, r - p, s - p] as a scalar; for polynomial coordinates this is
// the orientation polynomial.
template <class S>
S orient_det(const Vec3<S>& p, const Vec3<S>& q, const Vec3<S>& r, const Vec3<S>& s) {
  return det3(q - p, r - p, s - p);
}

// Affine orientation predicate; invariant under any orientation-preserving
// affine map of the four points, so independent of the metric.
template <class S>
int orient(const Vec3<S>& p, const Vec3<S>& q, const Vec3<S>& r, const Vec3<S>& s) {
  return sign(orient_det(p, q, r, s));
}

template <class S>
bool collinear(const Vec3<S>& p, const Vec3<S>& q, const Vec3<S>& r) {
  return is_zero(cross(q - p, r - p));
}

// Signed 6x volume of the simplex, in lattice units.
template <class S>
S signed_volume6(const std::array<Vec3<S>, 4>& v) { return orient_det(v[0], v[1], v[2], v[3]); }

// |det[r2 - r1, r3 - r1, r4 - r1]| / 6. The Cartesian volume is this times
// sqrt(det G); ratios of volumes never need that factor.
template <class S>
S tetra_volume_lattice(const std::array<Vec3<S>, 4>& v) {
  return abs(signed_volume6(v)) / S(6);
}

} // namespace tetrapack

#endif // TETRAPACK_LINALG_HPP_
