// JSON packing documents and report serializers. Scalars are always
// written in exact form: a rational as "p/q", a quadratic-field element as
// {"a": "p/q", "b": "r/s", "d": 10}.

#ifndef TETRAPACK_JSON_IO_HPP_
#define TETRAPACK_JSON_IO_HPP_

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "error.hpp"
#include "exact.hpp"
#include "linalg.hpp"
#include "model.hpp"
#include "separation.hpp"
#include "verify.hpp"

namespace tetrapack {

using json = nlohmann::ordered_json;

constexpr int schema_version = 1;

// SCALARS

inline json encode(const Rational& r) { return r.str(); }

template <int D>
json encode(const QuadExt<D>& q) {
  return {{"a", q.rat().str()}, {"b", q.coef().str()}, {"d", D}};
}

inline json encode(const RatPoly& p) {
  json out = json::array();
  for (const auto& c : p.coefficients())
    out.push_back(c.str());
  return out;
}

template <class S>
json encode(const Vec3<S>& v) { return json::array({encode(v.u), encode(v.v), encode(v.w)}); }

template <class S>
json encode(const Mat3<S>& m) {
  return json::array({encode(m.row(0)), encode(m.row(1)), encode(m.row(2))});
}

template <class S>
json encode(const Isometry<S>& g) { return {{"linear", encode(g.linear)}, {"translation", encode(g.translation)}}; }

inline json encode(const LatticeOffset& n) { return json::array({n.a, n.b, n.c}); }

template <class S>
json with_decimal(const S& value, int digits = 6) {
  return {{"exact", encode(value)}, {"decimal", to_decimal(value, digits)}};
}

template <class S>
struct Decode;

template <>
struct Decode<Rational> {
  static Rational scalar(const json& j) {
    if (!j.is_string())
      fail("expected a rational string \"p/q\", got " + j.dump());
    return Rational::parse(j.get<std::string>());
  }
};

template <int D>
struct Decode<QuadExt<D>> {
  static QuadExt<D> scalar(const json& j) {
    if (!j.is_object() || !j.contains("a") || !j.contains("b") || !j.contains("d"))
      fail("expected a field element {\"a\", \"b\", \"d\"}, got " + j.dump());
    if (!j.at("d").is_number_integer() || j.at("d").get<int>() != D)
      fail("field element with radicand " + j.at("d").dump() + ", expected " + std::to_string(D));
    return {Decode<Rational>::scalar(j.at("a")), Decode<Rational>::scalar(j.at("b"))};
  }
};

namespace detail {

inline const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    fail(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline const json& array_of(const json& j, std::size_t n, const char* what) {
  if (!j.is_array() || j.size() != n)
    fail(std::string(what) + ": expected an array of " + std::to_string(n) + ", got " + j.dump());
  return j;
}

template <class S>
Vec3<S> decode_vec(const json& j) {
  array_of(j, 3, "vector");
  return {Decode<S>::scalar(j[0]), Decode<S>::scalar(j[1]), Decode<S>::scalar(j[2])};
}

template <class S>
Mat3<S> decode_mat(const json& j) {
  array_of(j, 3, "matrix");
  return Mat3<S>::from_rows(decode_vec<S>(j[0]), decode_vec<S>(j[1]), decode_vec<S>(j[2]));
}

template <class S>
Isometry<S> decode_isometry(const json& j) {
  return {decode_mat<S>(member(j, "linear")), decode_vec<S>(member(j, "translation"))};
}

inline LatticeOffset decode_offset(const json& j) {
  array_of(j, 3, "lattice offset");
  for (const auto& e : j)
    if (!e.is_number_integer())
      fail("lattice offset entries must be integers");
  return {j[0].get<long>(), j[1].get<long>(), j[2].get<long>()};
}

template <class S>
const char* field_name();
template <>
inline const char* field_name<Rational>() { return "Q"; }
template <>
inline const char* field_name<Q10>() { return "Q(sqrt10)"; }

} // namespace detail

// PACKING DOCUMENTS

template <class S>
json packing_to_json(const Packing<S>& p) {
  json doc;
  doc["schema_version"] = schema_version;
  doc["family"] = p.family;
  doc["field"] = detail::field_name<S>();
  if (p.x)
    doc["x"] = encode(*p.x);
  if (!p.offsets.empty()) {
    doc["offsets"] = json::array();
    for (const auto& o : p.offsets)
      doc["offsets"].push_back(encode(o));
  }
  doc["gram"] = encode(p.gram.matrix());
  doc["cell_translations"] = json::array();
  for (const auto& t : p.group.cell)
    doc["cell_translations"].push_back(encode(t));
  json gens = json::array();
  for (const auto& g : p.group.generators)
    gens.push_back(encode(g));
  doc["space_group"] = {{"type", p.group.type}, {"generators", gens}};
  doc["motif"] = json::array();
  for (std::size_t i = 0; i < p.motif.size(); ++i) {
    const auto& t = p.motif[i];
    json verts = json::array();
    for (const auto& v : t.vertices)
      verts.push_back(encode(v));
    json entry = {{"index", t.motif_index}, {"offset", encode(t.offset)}, {"vertices", verts}};
    entry["witness"] = i < p.witness.size() && p.witness[i] ? encode(*p.witness[i]) : json(nullptr);
    doc["motif"].push_back(entry);
  }
  doc["bodies"] = p.bodies;
  return doc;
}

template <class S>
Packing<S> packing_from_json(const json& doc) {
  using detail::member;
  Packing<S> p;
  p.family = member(doc, "family").get<std::string>();
  if (doc.contains("x"))
    p.x = Decode<Rational>::scalar(doc.at("x"));
  if (doc.contains("offsets"))
    for (const auto& o : doc.at("offsets"))
      p.offsets.push_back(Decode<Rational>::scalar(o));
  p.gram = Gram<S>(detail::decode_mat<S>(member(doc, "gram")));
  const auto& cell = detail::array_of(member(doc, "cell_translations"), 3, "cell_translations");
  for (int i = 0; i < 3; ++i)
    p.group.cell[i] = detail::decode_vec<S>(cell[static_cast<std::size_t>(i)]);
  if (is_zero(det3(p.group.cell_matrix())))
    fail("cell translations are linearly dependent");
  const auto& group = member(doc, "space_group");
  p.group.type = member(group, "type").get<std::string>();
  for (const auto& g : member(group, "generators"))
    p.group.generators.push_back(detail::decode_isometry<S>(g));
  const auto& motif = member(doc, "motif");
  if (!motif.is_array() || motif.empty())
    fail("motif must be a nonempty array");
  for (const auto& entry : motif) {
    Tetrahedron<S> t;
    t.motif_index = member(entry, "index").get<int>();
    if (t.motif_index != static_cast<int>(p.motif.size()))
      fail("motif indices must be 0, 1, 2, ... in order");
    if (entry.contains("offset"))
      t.offset = detail::decode_offset(entry.at("offset"));
    const auto& verts = detail::array_of(member(entry, "vertices"), 4, "tetrahedron vertices");
    for (int i = 0; i < 4; ++i)
      t.vertices[i] = detail::decode_vec<S>(verts[static_cast<std::size_t>(i)]);
    if (orient(t.vertices[0], t.vertices[1], t.vertices[2], t.vertices[3]) == 0)
      fail("degenerate tetrahedron in motif");
    p.motif.push_back(t);
    if (entry.contains("witness") && !entry.at("witness").is_null())
      p.witness.push_back(detail::decode_isometry<S>(entry.at("witness")));
    else
      p.witness.push_back(std::nullopt);
  }
  if (doc.contains("bodies") && !doc.at("bodies").empty()) {
    p.bodies = doc.at("bodies").get<std::vector<std::vector<int>>>();
    std::vector<int> seen;
    for (const auto& b : p.bodies)
      for (int k : b) {
        if (k < 0 || k >= p.size() || std::find(seen.begin(), seen.end(), k) != seen.end())
          fail("bodies must partition the motif indices");
        seen.push_back(k);
      }
    if (static_cast<int>(seen.size()) != p.size())
      fail("bodies must partition the motif indices");
  }
  return p;
}

using AnyPacking = std::variant<Packing<Rational>, Packing<Q10>>;

inline AnyPacking parse_packing(const json& doc) {
  if (!doc.is_object())
    fail("packing document must be a JSON object");
  const auto& version = detail::member(doc, "schema_version");
  if (!version.is_number_integer() || version.get<int>() != schema_version)
    fail("unsupported schema_version " + version.dump());
  std::string field = detail::member(doc, "field").get<std::string>();
  if (field == detail::field_name<Rational>())
    return packing_from_json<Rational>(doc);
  if (field == detail::field_name<Q10>())
    return packing_from_json<Q10>(doc);
  fail("unknown field '" + field + "'");
}

inline AnyPacking parse_packing(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
  try {
    return parse_packing(doc);
  } catch (const json::exception& e) {
    fail(std::string("malformed packing document: ") + e.what());
  }
}

// REPORTS

inline json certificate_to_json(const SeparationCertificate& c) {
  return {{"plane_vertices", c.plane_vertices}, {"orientation", c.orientation}, {"side", c.side},
          {"touching", c.touching}, {"on_plane", c.on_plane}};
}

template <class S>
json report_to_json(const VerificationReport<S>& r) {
  json pairs = json::array();
  for (const auto& v : r.pairs) {
    json e = {{"reference", v.reference}, {"motif_index", v.motif_index}, {"offset", encode(v.offset)}};
    if (v.certificate) {
      e["verdict"] = v.certificate->touching ? "touching" : "separated";
      e["certificate"] = certificate_to_json(*v.certificate);
    } else {
      e["verdict"] = "overlap";
      if (v.overlap_point)
        e["interior_point"] = encode(*v.overlap_point);
    }
    pairs.push_back(e);
  }
  return {{"packing", r.packing},
          {"status", r.valid ? "valid" : "invalid"},
          {"transitive", r.transitive},
          {"references", r.references},
          {"threshold2", encode(r.threshold2)},
          {"pairs_checked", r.pairs.size()},
          {"overlaps", r.overlaps},
          {"excluded", r.exclusion},
          {"workers", r.workers},
          {"elapsed_ms", r.elapsed_ms},
          {"pairs", pairs}};
}

inline json interval_to_json(const IntervalCertificate& c) {
  json out = {{"interval", {encode(c.lo), encode(c.hi)}},
              {"status", c.complete ? "certified" : "failed"},
              {"candidates", c.candidates},
              {"max_depth", c.max_depth},
              {"elapsed_ms", c.elapsed_ms}};
  if (c.point_report)
    out["point_report"] = report_to_json(*c.point_report);
  json tree = json::array();
  for (const auto& pc : c.pairs) {
    json leaves = json::array();
    for (const auto& l : pc.leaves)
      leaves.push_back({{"lo", encode(l.lo)}, {"hi", encode(l.hi)}, {"plane_vertices", l.witness},
                        {"orientation", l.orientation}});
    tree.push_back({{"motif_index", pc.motif_index}, {"offset", encode(pc.offset)}, {"leaves", leaves}});
  }
  out["tree"] = tree;
  json failures = json::array();
  for (const auto& f : c.failures) {
    json e = {{"motif_index", f.motif_index}, {"offset", encode(f.offset)},
              {"lo", encode(f.lo)}, {"hi", encode(f.hi)}, {"reason", f.reason}};
    if (f.overlap_at)
      e["overlap_at"] = encode(*f.overlap_at);
    failures.push_back(e);
  }
  out["failures"] = failures;
  return out;
}

template <class S>
json contact_to_json(const ContactRecord<S>& r) {
  json region = json::array();
  for (const auto& v : r.region)
    region.push_back(encode(v));
  json out = {{"a", {{"index", r.a.index}, {"offset", encode(r.a.offset)}}},
              {"b", {{"index", r.b.index}, {"offset", encode(r.b.offset)}}},
              {"type", to_string(r.type)},
              {"feature_a", r.feature_a},
              {"feature_b", r.feature_b},
              {"dimension", r.dimension},
              {"center", encode(r.center)},
              {"region", region}};
  if (auto pt = r.point())
    out["point"] = encode(*pt);
  return out;
}

template <class S>
json census_to_json(const ContactCensus<S>& c) {
  json by_type = json::object();
  for (const auto& [t, n] : c.by_type)
    by_type[to_string(t)] = n;
  json per_tet = json::array(), per_body = json::array();
  for (const auto& [k, n] : c.per_tetrahedron)
    per_tet.push_back({{"motif_index", k}, {"contacts", n}});
  for (const auto& [b, n] : c.per_body)
    per_body.push_back({{"body", b}, {"contacts", n}});
  json bodies = json::array(), tetras = json::array();
  for (const auto& r : c.body_contacts)
    bodies.push_back(contact_to_json(r));
  for (const auto& r : c.tetra_contacts)
    tetras.push_back(contact_to_json(r));
  return {{"composite_bodies", c.composite}, {"average_per_tetrahedron", with_decimal(c.average, 4)},
          {"per_tetrahedron", per_tet}, {"per_body", per_body}, {"by_type", by_type},
          {"body_contacts", bodies}, {"tetrahedron_contacts", tetras}};
}

template <class S>
json centers_to_json(const InversionCenterReport<S>& r) {
  json centers = json::array();
  for (int e = 0; e < 8; ++e)
    centers.push_back({{"point", encode(r.centers[e])}, {"class", r.parity[e]}, {"on_surface", r.on_surface[e]}});
  json edges = json::array();
  for (const auto& e : r.edges)
    edges.push_back(encode(e));
  return {{"body", r.body},
          {"base_center", encode(r.base_center)},
          {"origin_half_lattice", r.origin},
          {"basis", r.basis},
          {"edges", edges},
          {"centers", centers},
          {"cell_volume", encode(r.cell_volume)},
          {"parallelepiped_volume", encode(r.parallelepiped_volume)},
          {"volume_ratio", encode(r.volume_ratio)},
          {"on_surface_count", r.on_surface_count}};
}

template <class S>
json candidates_to_json(const CandidateList<S>& c) {
  json entries = json::array();
  for (const auto& e : c.entries) {
    json j = {{"motif_index", e.motif_index}, {"offset", encode(e.offset)}, {"distance2", encode(e.distance2)}};
    j["element"] = e.element ? encode(*e.element) : json(nullptr);
    entries.push_back(j);
  }
  return {{"reference", c.reference}, {"threshold2", encode(c.threshold2)}, {"inclusive", c.inclusive},
          {"count", c.size()}, {"candidates", entries}};
}

// Derived quantities attached to a document by `build --with-derived`.
template <class S>
json derived_block(const Packing<S>& p) {
  json out = {{"fraction", with_decimal(packing_fraction(p))},
              {"squared_edge_length", encode(check_regularity(p))}};
  out["valid"] = verify_packing(p).valid;
  out["average_contacts"] = out["valid"].get<bool>() ? encode(contact_census(p).average) : json(nullptr);
  try {
    auto centers = inversion_center_report(p);
    out["inversion_centers"] = {{"volume_ratio", encode(centers.volume_ratio)},
                                {"on_surface_count", centers.on_surface_count}};
  } catch (const NoInversion&) {
    out["inversion_centers"] = nullptr;
  }
  return out;
}

} // namespace tetrapack

#endif // TETRAPACK_JSON_IO_HPP_
