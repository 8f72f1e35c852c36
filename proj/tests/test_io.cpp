#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "tetrapack/json_io.hpp"
#include "tetrapack/mesh_export.hpp"

using namespace tetrapack;

namespace {

template <class S>
Packing<S> round_trip(const Packing<S>& p) {
  std::string text = packing_to_json(p).dump(2);
  return std::get<Packing<S>>(parse_packing(text));
}

json dimer_doc() { return packing_to_json(build_dimer_packing(Rational(4, 7))); }

struct OffMesh {
  std::vector<Point3> vertices;
  std::vector<std::array<int, 3>> faces;
};

OffMesh parse_off(const std::string& text) {
  std::istringstream in(text);
  std::string magic;
  std::size_t nv = 0, nf = 0, ne = 0;
  in >> magic >> nv >> nf >> ne;
  EXPECT_EQ(magic, "OFF");
  OffMesh m;
  m.vertices.resize(nv);
  for (auto& v : m.vertices)
    in >> v[0] >> v[1] >> v[2];
  m.faces.resize(nf);
  for (auto& f : m.faces) {
    int k = 0;
    in >> k >> f[0] >> f[1] >> f[2];
    EXPECT_EQ(k, 3);
  }
  EXPECT_FALSE(in.fail());
  return m;
}

long double dist(const Point3& a, const Point3& b) {
  long double s = 0;
  for (int i = 0; i < 3; ++i)
    s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

Point3 sub(const Point3& a, const Point3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

} // namespace

TEST(Json, RoundTripIsIdentity) {
  for (const auto& x : {Rational(29, 56), Rational(4, 7), Rational(9, 14), Rational(1, 2)}) {
    auto p = build_dimer_packing(x);
    EXPECT_EQ(round_trip(p), p);
  }
  auto s = build_simple_packing();
  EXPECT_EQ(round_trip(s), s);
  auto l = build_layered_packing({Rational(29, 56), Rational(9, 14), Rational(3, 5)});
  EXPECT_EQ(round_trip(l), l);
}

TEST(Json, DocumentShape) {
  json d = dimer_doc();
  EXPECT_EQ(d["schema_version"], schema_version);
  EXPECT_EQ(d["family"], "dimer");
  EXPECT_EQ(d["field"], "Q");
  EXPECT_EQ(d["x"], "4/7");
  EXPECT_EQ(d["cell_translations"][2], json::array({"4/7", "1/2", "1/2"}));
  EXPECT_EQ(d["motif"].size(), 4u);
  EXPECT_EQ(d["motif"][0]["vertices"][0], json::array({"27/28", "-7/30", "10/39"}));
  EXPECT_EQ(d["bodies"], json::parse("[[0,1],[2,3]]"));
  EXPECT_EQ(d["space_group"]["type"], "C2/c");

  json s = packing_to_json(build_simple_packing());
  EXPECT_EQ(s["field"], "Q(sqrt10)");
  EXPECT_EQ(s["gram"][0][0], json::parse(R"({"a": "338/9", "b": "-104/9", "d": 10})"));

  json l = packing_to_json(build_layered_packing({Rational(29, 56), Rational(1, 2)}));
  EXPECT_EQ(l["offsets"], json::array({"29/56", "1/2"}));
  EXPECT_TRUE(l["motif"][1]["witness"].is_null());
}

TEST(Json, ParseErrorsAreReported) {
  auto mutate = [](auto&& f) {
    json d = dimer_doc();
    f(d);
    return d.dump();
  };
  std::vector<std::string> bad = {
      "{not json",
      "[]",
      mutate([](json& d) { d["schema_version"] = 2; }),
      mutate([](json& d) { d["field"] = "R"; }),
      mutate([](json& d) { d.erase("gram"); }),
      mutate([](json& d) { d["x"] = 0.5; }),
      mutate([](json& d) { d["x"] = "0.5"; }),
      mutate([](json& d) { d["gram"][0][0] = "1/0"; }),
      mutate([](json& d) { d["gram"][0][1] = "1/3"; }),
      mutate([](json& d) { d["cell_translations"][2] = d["cell_translations"][0]; }),
      mutate([](json& d) { d["motif"][0]["vertices"][1] = d["motif"][0]["vertices"][0]; }),
      mutate([](json& d) { d["motif"][0]["vertices"].erase(3); }),
      mutate([](json& d) { d["motif"][1]["index"] = 3; }),
      mutate([](json& d) { d["motif"] = json::array(); }),
      mutate([](json& d) { d["bodies"] = json::parse("[[0,1],[1,2]]"); }),
      mutate([](json& d) { d["bodies"] = json::parse("[[0,1],[2]]"); }),
      mutate([](json& d) { d["family"] = 7; }),
      mutate([](json& d) { d["space_group"]["generators"][0]["linear"] = "I"; }),
  };
  for (const auto& text : bad)
    EXPECT_THROW(parse_packing(text), Error) << text;

  json s = packing_to_json(build_simple_packing());
  s["gram"][0][0]["d"] = 11;
  EXPECT_THROW(parse_packing(s.dump()), Error);
}

TEST(Json, EmptyBodiesMeanSingleTetrahedra) {
  json d = dimer_doc();
  d["bodies"] = json::array();
  auto p = std::get<Packing<Rational>>(parse_packing(d.dump()));
  EXPECT_EQ(p.body_list().size(), 4u);
}

TEST(Json, DerivedBlock) {
  json d = derived_block(build_dimer_packing(Rational(4, 7)));
  EXPECT_EQ(d["fraction"]["exact"], "100/117");
  EXPECT_EQ(d["fraction"]["decimal"], "0.854701");
  EXPECT_EQ(d["squared_edge_length"], "1/1");
  EXPECT_EQ(d["valid"], true);
  EXPECT_EQ(d["average_contacts"], "8/1");
  EXPECT_EQ(d["inversion_centers"]["volume_ratio"], "1/8");
  EXPECT_EQ(d["inversion_centers"]["on_surface_count"], 8);

  json s = derived_block(build_simple_packing());
  EXPECT_EQ(s["fraction"]["exact"], json::parse(R"({"a": "139/369", "b": "40/369", "d": 10})"));
  EXPECT_EQ(s["fraction"]["decimal"], "0.719488");
  EXPECT_EQ(s["squared_edge_length"], json::parse(R"({"a": "2/1", "b": "0/1", "d": 10})"));
  EXPECT_EQ(s["inversion_centers"]["on_surface_count"], 5);

  json bad = derived_block(build_dimer_packing(Rational(1, 2)));
  EXPECT_EQ(bad["valid"], false);
  EXPECT_TRUE(bad["average_contacts"].is_null());

  json layered = derived_block(build_layered_packing({Rational(29, 56), Rational(9, 14)}));
  EXPECT_TRUE(layered["inversion_centers"].is_null());
  EXPECT_EQ(layered["fraction"]["exact"], "100/117");
}

TEST(Json, Reports) {
  auto rep = report_to_json(verify_packing(build_dimer_packing(Rational(1, 2))));
  EXPECT_EQ(rep["status"], "invalid");
  EXPECT_GT(rep["overlaps"].get<int>(), 0);
  auto cert = interval_to_json(verify_family_interval(Rational(29, 56), Rational(9, 14)));
  EXPECT_EQ(cert["status"], "certified");
  EXPECT_EQ(cert["interval"], json::array({"29/56", "9/14"}));
  EXPECT_EQ(cert["tree"].size(), cert["candidates"].get<std::size_t>());
  auto census = census_to_json(contact_census(build_dimer_packing(Rational(4, 7))));
  EXPECT_EQ(census["average_per_tetrahedron"]["exact"], "8/1");
  EXPECT_EQ(census["by_type"]["face-face"], 8);
  auto centers = centers_to_json(inversion_center_report(build_dimer_packing(Rational(4, 7))));
  EXPECT_EQ(centers["centers"].size(), 8u);
  auto cands = candidates_to_json(enumerate_candidates(build_dimer_packing(Rational(4, 7))));
  EXPECT_EQ(cands["count"], cands["candidates"].size());
}

TEST(Mesh, Counts) {
  auto p = build_dimer_packing(Rational(4, 7));
  auto one = build_mesh(p, 1);
  EXPECT_EQ(one.tetrahedra, 4u);
  EXPECT_EQ(one.vertices.size(), 16u);
  EXPECT_EQ(one.faces.size(), 16u);
  EXPECT_EQ(build_mesh(p, 3).tetrahedra, 108u);
  EXPECT_EQ(build_mesh(build_simple_packing(), 2).tetrahedra, 16u);
  EXPECT_THROW(build_mesh(p, 0), Error);
}

TEST(Mesh, OffRoundsEdgesWithinPrecision) {
  struct Case {
    std::string name;
    Mesh mesh;
    long double edge;
  };
  std::vector<Case> cases = {{"dimer", build_mesh(build_dimer_packing(Rational(4, 7)), 2), 1.0L},
                             {"simple", build_mesh(build_simple_packing(), 2), std::sqrt(2.0L)}};
  for (const auto& c : cases) {
    for (int precision : {3, 6, 10, 15}) {
      OffMesh m = parse_off(to_off(c.mesh, precision));
      ASSERT_EQ(m.vertices.size(), c.mesh.vertices.size());
      long double tol = std::pow(10.0L, -(precision - 2));
      for (std::size_t t = 0; t < m.vertices.size(); t += 4)
        for (std::size_t i = 0; i < 4; ++i)
          for (std::size_t j = i + 1; j < 4; ++j)
            ASSERT_NEAR(dist(m.vertices[t + i], m.vertices[t + j]), c.edge, tol) << c.name << " p=" << precision;
    }
  }
}

TEST(Mesh, FacesWindOutward) {
  for (const auto& mesh : {build_mesh(build_dimer_packing(Rational(29, 56)), 1), build_mesh(build_simple_packing(), 1)}) {
    OffMesh m = parse_off(to_off(mesh, 12));
    for (std::size_t f = 0; f < m.faces.size(); ++f) {
      std::size_t base = (f / 4) * 4;
      Point3 c{};
      for (std::size_t i = 0; i < 4; ++i)
        for (int k = 0; k < 3; ++k)
          c[k] += m.vertices[base + i][k] / 4;
      const auto& a = m.vertices[static_cast<std::size_t>(m.faces[f][0])];
      const auto& b = m.vertices[static_cast<std::size_t>(m.faces[f][1])];
      const auto& d = m.vertices[static_cast<std::size_t>(m.faces[f][2])];
      Point3 u = sub(b, a), v = sub(d, a), out = sub(a, c);
      Point3 n{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
      EXPECT_GT(n[0] * out[0] + n[1] * out[1] + n[2] * out[2], 0) << "face " << f;
    }
  }
}

TEST(Mesh, CartesianBasisReproducesGram) {
  auto check = [](const auto& p) {
    auto basis = cartesian_basis(p);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        long double dot = 0;
        for (int k = 0; k < 3; ++k)
          dot += basis[i][k] * basis[j][k];
        EXPECT_NEAR(dot, to_long_double(p.gram(i, j)), 1e-12L);
      }
  };
  check(build_dimer_packing(Rational(4, 7)));
  check(build_simple_packing());
  Mat3<Rational> g = dimer_gram().matrix();
  g(0, 2) = g(2, 0) = Rational(1, 7);
  check(build_dimer_packing(Rational(4, 7), Gram<Rational>(g)));
}

TEST(Mesh, ObjFormat) {
  auto mesh = build_mesh(build_dimer_packing(Rational(4, 7)), 1);
  std::istringstream in(to_obj(mesh, 6));
  std::string line;
  int v = 0, f = 0, max_index = 0;
  while (std::getline(in, line)) {
    if (line.rfind("v ", 0) == 0)
      ++v;
    if (line.rfind("f ", 0) == 0) {
      ++f;
      std::istringstream fl(line.substr(2));
      for (int k = 0, i = 0; k < 3; ++k) {
        fl >> i;
        EXPECT_GE(i, 1);
        max_index = std::max(max_index, i);
      }
    }
  }
  EXPECT_EQ(v, 16);
  EXPECT_EQ(f, 16);
  EXPECT_EQ(max_index, 16);
}

TEST(Mesh, PrecisionBoundsAndSignedZeros) {
  auto mesh = build_mesh(build_dimer_packing(Rational(4, 7)), 2);
  EXPECT_THROW(to_off(mesh, 0), Error);
  EXPECT_THROW(to_obj(mesh, 18), Error);
  for (int p : {1, 3, 17}) {
    std::string off = to_off(mesh, p);
    std::string neg_zero = "-0." + std::string(static_cast<std::size_t>(p), '0');
    EXPECT_EQ(off.find(neg_zero + " "), std::string::npos);
    EXPECT_EQ(off.find(neg_zero + "\n"), std::string::npos);
  }
}
