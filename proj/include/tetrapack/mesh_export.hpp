// OFF / OBJ export of a block of packed tetrahedra in Cartesian
// coordinates. Geometry stays exact up to the final conversion of each
// vertex to long double.

#ifndef TETRAPACK_MESH_EXPORT_HPP_
#define TETRAPACK_MESH_EXPORT_HPP_

#include <array>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include "error.hpp"
#include "exact.hpp"
#include "linalg.hpp"
#include "model.hpp"

namespace tetrapack {

using Point3 = std::array<long double, 3>;
using CartesianBasis = std::array<Point3, 3>;  // Cartesian images of a, b, c

// The table basis for the simple packing; for any other packing the
// Cholesky factor of the Gram matrix, which for a diagonal Gram is the
// orthogonal basis a = (|a|, 0, 0), b = (0, |b|, 0), c = (0, 0, |c|).
template <class S>
CartesianBasis cartesian_basis(const Packing<S>& p) {
  CartesianBasis out{};
  if constexpr (std::is_same_v<S, Q10>) {
    if (p.family == "simple") {
      auto basis = simple_cartesian_basis();
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          out[i][j] = to_long_double(basis[i][j]);
      return out;
    }
  }
  long double g[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      g[i][j] = to_long_double(p.gram(i, j));
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j <= i; ++j) {
      long double s = g[i][j];
      for (int k = 0; k < j; ++k)
        s -= out[i][k] * out[j][k];
      if (i == j) {
        if (s <= 0)
          fail("Gram matrix is not positive definite");
        out[i][i] = std::sqrt(s);
      } else {
        out[i][j] = s / out[j][j];
      }
    }
  }
  return out;
}

template <class S>
Point3 to_cartesian(const CartesianBasis& basis, const Vec3<S>& v) {
  Point3 out{};
  for (int i = 0; i < 3; ++i) {
    long double c = to_long_double(v[i]);
    for (int j = 0; j < 3; ++j)
      out[j] += c * basis[i][j];
  }
  return out;
}

struct Mesh {
  std::vector<Point3> vertices;
  std::vector<std::array<int, 3>> faces;  // 0-based, counter-clockwise seen from outside
  std::size_t tetrahedra = 0;
};

// Every motif image with lattice offset in [0, shells)^3; four vertices and
// four faces per tetrahedron.
template <class S>
Mesh build_mesh(const Packing<S>& p, int shells) {
  if (shells < 1)
    fail("shells must be >= 1");
  CartesianBasis basis = cartesian_basis(p);
  long double det = basis[0][0] * (basis[1][1] * basis[2][2] - basis[1][2] * basis[2][1]) -
                    basis[0][1] * (basis[1][0] * basis[2][2] - basis[1][2] * basis[2][0]) +
                    basis[0][2] * (basis[1][0] * basis[2][1] - basis[1][1] * basis[2][0]);
  int handed = det > 0 ? 1 : -1;
  Mesh mesh;
  for (long a = 0; a < shells; ++a)
    for (long b = 0; b < shells; ++b)
      for (long c = 0; c < shells; ++c)
        for (int k = 0; k < p.size(); ++k) {
          auto t = p.image(k, {a, b, c});
          int base = static_cast<int>(mesh.vertices.size());
          for (const auto& v : t.vertices)
            mesh.vertices.push_back(to_cartesian(basis, v));
          for (int opp = 0; opp < 4; ++opp) {
            std::array<int, 3> f{};
            for (int i = 0, n = 0; i < 4; ++i)
              if (i != opp)
                f[static_cast<std::size_t>(n++)] = i;
            // Outward when the opposite vertex is on the negative side.
            const auto& v = t.vertices;
            if (handed * orient(v[f[0]], v[f[1]], v[f[2]], v[opp]) > 0)
              std::swap(f[1], f[2]);
            mesh.faces.push_back({base + f[0], base + f[1], base + f[2]});
          }
          ++mesh.tetrahedra;
        }
  return mesh;
}

namespace detail {

inline void check_precision(int precision) {
  if (precision < 1 || precision > 17)
    fail("precision must be in 1..17");
}

inline void write_point(std::ostream& os, const Point3& p, int precision) {
  long double half_ulp = 0.5L * std::pow(10.0L, -precision);
  for (int i = 0; i < 3; ++i) {
    long double x = p[i];
    if (std::fabs(x) < half_ulp)
      x = 0;  // no "-0.000"
    os << (i ? " " : "") << x;
  }
}

} // namespace detail

inline std::string to_off(const Mesh& m, int precision) {
  detail::check_precision(precision);
  std::ostringstream os;
  os << std::fixed << std::setprecision(precision);
  os << "OFF\n" << m.vertices.size() << " " << m.faces.size() << " 0\n";
  for (const auto& v : m.vertices) {
    detail::write_point(os, v, precision);
    os << "\n";
  }
  for (const auto& f : m.faces)
    os << "3 " << f[0] << " " << f[1] << " " << f[2] << "\n";
  return os.str();
}

inline std::string to_obj(const Mesh& m, int precision) {
  detail::check_precision(precision);
  std::ostringstream os;
  os << std::fixed << std::setprecision(precision);
  os << "# " << m.tetrahedra << " tetrahedra\n";
  for (const auto& v : m.vertices) {
    os << "v ";
    detail::write_point(os, v, precision);
    os << "\n";
  }
  for (const auto& f : m.faces)
    os << "f " << f[0] + 1 << " " << f[1] + 1 << " " << f[2] + 1 << "\n";
  return os.str();
}

} // namespace tetrapack

#endif // TETRAPACK_MESH_EXPORT_HPP_
