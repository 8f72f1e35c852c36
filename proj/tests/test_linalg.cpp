#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <random>

#include "tetrapack/linalg.hpp"
#include "tetrapack/model.hpp"

using namespace tetrapack;

namespace {

using V = Vec3<Rational>;
using M = Mat3<Rational>;

const V r1{Rational(27, 28), Rational(-7, 30), Rational(10, 39)};
const V r2{Rational(1, 4), Rational(-9, 10), 0};
const V r3{Rational(1, 14), Rational(1, 10), Rational(5, 13)};
const V r4{Rational(3, 7), Rational(1, 10), Rational(-5, 13)};

Rational random_rational(std::mt19937_64& rng, long range = 20) {
  std::uniform_int_distribution<long> num(-range, range), den(1, 9);
  return {num(rng), den(rng)};
}

V random_vec(std::mt19937_64& rng) { return {random_rational(rng), random_rational(rng), random_rational(rng)}; }

// Leibniz expansion, independent of the cofactor code under test.
Rational leibniz(const std::array<V, 3>& rows) {
  static const int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
  Rational sum;
  for (int p = 0; p < 6; ++p) {
    Rational term = p < 3 ? Rational(1) : Rational(-1);
    for (int i = 0; i < 3; ++i)
      term *= rows[i][perms[p][i]];
    sum += term;
  }
  return sum;
}

} // namespace

TEST(GramDot, IdentityMetric) {
  EXPECT_EQ(gram_dot(Gram<Rational>(), V{1, 0, 0}, V{1, 0, 0}), Rational(1));
}

TEST(GramDot, DimerEdgesHaveUnitLength) {
  auto g = dimer_gram();
  EXPECT_EQ(r1 - r2, (V{Rational(5, 7), Rational(2, 3), Rational(10, 39)}));
  EXPECT_EQ(r3 - r4, (V{Rational(-5, 14), 0, Rational(10, 13)}));
  // Hand expansion with the diagonal metric.
  auto diag_norm = [](const V& u) {
    return Rational(28, 25) * u.u * u.u + Rational(3, 4) * u.v * u.v + Rational(507, 350) * u.w * u.w;
  };
  EXPECT_EQ(diag_norm(r1 - r2), Rational(1));
  EXPECT_EQ(gram_dot(g, r1 - r2, r1 - r2), Rational(1));
  EXPECT_EQ(gram_dot(g, r3 - r4, r3 - r4), Rational(1));
  std::array<V, 4> r{r1, r2, r3, r4};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      EXPECT_EQ(gram_norm2(g, r[i] - r[j]), diag_norm(r[i] - r[j]));
}

TEST(GramDot, PositiveOnNonzeroVectors) {
  std::mt19937_64 rng(3);
  auto g = dimer_gram();
  auto s = build_simple_packing().gram;
  for (int i = 0; i < 2000; ++i) {
    V u = random_vec(rng);
    if (is_zero(u))
      continue;
    EXPECT_GT(sign(gram_norm2(g, u)), 0);
    EXPECT_GT(sign(gram_norm2(s, Vec3<Q10>(u))), 0);
  }
}

TEST(Gram, RejectsInvalidMatrices) {
  EXPECT_THROW(Gram<Rational>(M::from_rows({1, 1, 0}, {0, 1, 0}, {0, 0, 1})), Error);
  EXPECT_THROW(Gram<Rational>(M::diagonal(1, -1, 1)), Error);
  EXPECT_THROW(Gram<Rational>(M::from_rows({1, 2, 0}, {2, 1, 0}, {0, 0, 1})), Error);
  EXPECT_NO_THROW(Gram<Rational>(M::from_rows({2, 1, 0}, {1, 2, 0}, {0, 0, 1})));
}

TEST(Det3, Examples) {
  EXPECT_EQ(det3(M::identity()), Rational(1));
  for (const auto& x : {Rational(0), Rational(29, 56), Rational(4, 7), Rational(9, 14), Rational(-3, 2)})
    EXPECT_EQ(det3(M::from_rows({1, 0, 0}, {0, 1, 0}, {x, Rational(1, 2), Rational(1, 2)})), Rational(1, 2));
  // Symbolically: constant in x.
  Mat3<RatPoly> cell = Mat3<RatPoly>::from_rows({1, 0, 0}, {0, 1, 0}, {RatPoly::x(), Rational(1, 2), Rational(1, 2)});
  EXPECT_EQ(det3(cell), RatPoly(Rational(1, 2)));
  EXPECT_EQ(det3(M::from_rows(r1, r2, r1)), Rational(0));
}

TEST(Det3, AgreesWithLeibnizAndInverse) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 500; ++i) {
    std::array<V, 3> rows{random_vec(rng), random_vec(rng), random_vec(rng)};
    M m = M::from_rows(rows[0], rows[1], rows[2]);
    ASSERT_EQ(det3(m), leibniz(rows));
    if (!is_zero(det3(m))) {
      EXPECT_EQ(inverse(m) * m, M::identity());
      EXPECT_EQ(m * inverse(m), M::identity());
    }
  }
  EXPECT_THROW(inverse(M()), Error);
}

TEST(Orient, Examples) {
  EXPECT_EQ(orient(V{0, 0, 0}, V{1, 0, 0}, V{0, 1, 0}, V{5, 7, 0}), 0);
  EXPECT_EQ(orient_det(r2, r3, r4, r1), Rational(-25, 39));
  EXPECT_EQ(leibniz({r3 - r2, r4 - r2, r1 - r2}), Rational(-25, 39));
  EXPECT_EQ(orient(r2, r3, r4, r1), -1);
}

TEST(Orient, SwapFlipsSign) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 10000; ++i) {
    V p = random_vec(rng), q = random_vec(rng), r = random_vec(rng), s = random_vec(rng);
    int o = orient(p, q, r, s);
    ASSERT_EQ(orient(q, p, r, s), -o);
    ASSERT_EQ(orient(p, q, s, r), -o);
    ASSERT_EQ(orient(s, q, r, p), -o);
  }
}

TEST(Orient, InvariantUnderPositiveAffineMaps) {
  std::mt19937_64 rng(29);
  int used = 0;
  while (used < 500) {
    M a = M::from_rows(random_vec(rng), random_vec(rng), random_vec(rng));
    if (sign(det3(a)) <= 0)
      continue;
    ++used;
    V t = random_vec(rng);
    auto f = [&](const V& x) { return a * x + t; };
    V p = random_vec(rng), q = random_vec(rng), r = random_vec(rng), s = random_vec(rng);
    ASSERT_EQ(orient(f(p), f(q), f(r), f(s)), orient(p, q, r, s));
    ASSERT_EQ(orient_det(f(p), f(q), f(r), f(s)), det3(a) * orient_det(p, q, r, s));
  }
}

TEST(Volume, DimerTetrahedron) {
  EXPECT_EQ(tetra_volume_lattice(std::array<V, 4>{r1, r2, r3, r4}), Rational(25, 234));
  // Cartesian volume^2 = lattice volume^2 * det G = 1/72 = (sqrt 2 / 12)^2.
  Rational v(25, 234);
  EXPECT_EQ(v * v * det3(dimer_gram().matrix()), Rational(1, 72));
}

TEST(Volume, SimpleTetrahedron) {
  auto p = build_simple_packing();
  EXPECT_EQ(tetra_volume_lattice(p.motif[0].vertices), Q10(Rational(139, 738), Rational(40, 738)));
}

TEST(Volume, DegenerateAndInvariances) {
  EXPECT_EQ(tetra_volume_lattice(std::array<V, 4>{V{0, 0, 0}, V{1, 0, 0}, V{0, 1, 0}, V{1, 1, 0}}), Rational(0));
  std::mt19937_64 rng(31);
  for (int i = 0; i < 300; ++i) {
    std::array<V, 4> v{random_vec(rng), random_vec(rng), random_vec(rng), random_vec(rng)};
    Rational vol = tetra_volume_lattice(v);
    V t = random_vec(rng);
    std::array<V, 4> shifted = v;
    for (auto& x : shifted)
      x += t;
    EXPECT_EQ(tetra_volume_lattice(shifted), vol);
    std::array<int, 4> idx{0, 1, 2, 3};
    while (std::next_permutation(idx.begin(), idx.end()))
      EXPECT_EQ(tetra_volume_lattice(std::array<V, 4>{v[idx[0]], v[idx[1]], v[idx[2]], v[idx[3]]}), vol);
  }
}

TEST(Cross, CovectorVanishesOnArguments) {
  std::mt19937_64 rng(37);
  for (int i = 0; i < 500; ++i) {
    V a = random_vec(rng), b = random_vec(rng);
    V n = cross(a, b);
    EXPECT_EQ(pair(n, a), Rational(0));
    EXPECT_EQ(pair(n, b), Rational(0));
    EXPECT_EQ(collinear(V{}, a, b), is_zero(n));
  }
}
