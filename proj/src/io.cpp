#include "isoperi/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "isoperi/errors.hpp"
#include "isoperi/sampling.hpp"

namespace isoperi::io {

namespace {

[[noreturn]] void bad(const std::string& pointer, const std::string& what) {
  throw UsageError("recipe " + (pointer.empty() ? std::string("/") : pointer) + ": " + what);
}

const Json& field(const Json& obj, const char* key, const std::string& at) {
  if (!obj.is_object()) bad(at, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) bad(at + "/" + key, "missing");
  return *it;
}

std::size_t positive_int(const Json& obj, const char* key, const std::string& at) {
  const Json& v = field(obj, key, at);
  if (!v.is_number_integer() || v.get<long long>() < 1) bad(at + "/" + key, "expected a positive integer");
  return v.get<std::size_t>();
}

double number_or(const Json& obj, const char* key, double fallback, const std::string& at) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number() || !std::isfinite(it->get<double>())) bad(at + "/" + key, "expected a finite number");
  return it->get<double>();
}

Vec vector_of(const Json& v, std::size_t dim, const std::string& at) {
  if (!v.is_array() || v.size() != dim) bad(at, "expected an array of " + std::to_string(dim) + " numbers");
  Vec out;
  for (const Json& x : v) {
    if (!x.is_number()) bad(at, "expected numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

Construction from_body(Polytope body, std::optional<double> inradius = std::nullopt) {
  ClosedForms f = make_closed_forms(body.dim(), body.volume(), body.surface_area(), body.facet_count(),
                                    body.vertex_count());
  f.inradius = inradius;
  return {std::move(body), f};
}

Construction build(const Json& recipe, const std::string& at) {
  const Json& fam = field(recipe, "family", at);
  if (!fam.is_string()) bad(at + "/family", "expected a string");
  const std::string family = fam.get<std::string>();
  const std::string pat = at + "/params";
  const Json& params = field(recipe, "params", at);
  if (!params.is_object()) bad(pat, "expected an object");

  if (family == "simplex") return simplex_regular(positive_int(params, "n", pat));
  if (family == "cross") return cross_polytope(positive_int(params, "n", pat), number_or(params, "scale", 1.0, pat));
  if (family == "cube") return cube(positive_int(params, "n", pat), number_or(params, "scale", 1.0, pat));
  if (family == "product" || family == "l1sum") {
    const char* key = family == "product" ? "factors" : "summands";
    const Json& list = field(params, key, pat);
    if (!list.is_array() || list.empty()) bad(pat + "/" + key, "expected a non-empty array of recipes");
    std::vector<Construction> parts;
    for (std::size_t i = 0; i < list.size(); ++i)
      parts.push_back(build(list[i], pat + "/" + key + "/" + std::to_string(i)));
    if (family == "l1sum") return l1_sum({std::move(parts)}).result;
    bool normalize = false;
    if (auto it = params.find("normalize"); it != params.end()) {
      if (!it->is_boolean()) bad(pat + "/normalize", "expected a boolean");
      normalize = it->get<bool>();
    }
    return cartesian_product(parts, normalize);
  }
  if (family == "lindelof") {
    const std::size_t n = positive_int(params, "n", pat);
    std::vector<Vec> normals;
    if (auto it = params.find("normals"); it != params.end()) {
      if (!it->is_array()) bad(pat + "/normals", "expected an array");
      for (std::size_t i = 0; i < it->size(); ++i)
        normals.push_back(vector_of((*it)[i], n, pat + "/normals/" + std::to_string(i)));
    } else {
      const std::size_t count = positive_int(params, "count", pat);
      std::uint64_t seed = 1;
      if (auto s = params.find("seed"); s != params.end()) {
        if (!s->is_number_unsigned()) bad(pat + "/seed", "expected a non-negative integer");
        seed = s->get<std::uint64_t>();
      }
      Rng rng(seed);
      if (count <= n) bad(pat + "/count", "needs more than n normals");
      do {
        normals.clear();
        for (std::size_t i = 0; i < count; ++i) normals.push_back(random_unit(n, rng));
      } while (!positively_spanning(n, normals));
    }
    return from_body(lindelof_body(n, normals), 1.0);
  }
  if (family == "extremal_facet")
    return extremal_facet_polytope(positive_int(params, "n", pat), positive_int(params, "phi", pat)).result;
  if (family == "extremal_vertex")
    return extremal_vertex_polytope(positive_int(params, "n", pat), positive_int(params, "beta", pat)).result;
  bad(at + "/family", "unknown family '" + family + "'");
}

}  // namespace

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
  return rows;
}

Json polytope_to_json(const Polytope& p) {
  Json doc;
  doc["dim"] = p.dim();
  if (p.origin_interior()) {
    Json h = Json::array();
    for (const FacetData& f : p.facets()) h.push_back({{"normal", f.normal}, {"offset", f.offset}});
    doc["hrep"] = std::move(h);
  }
  doc["vrep"] = p.vertices();
  return doc;
}

Polytope polytope_from_json(const Json& doc) {
  if (!doc.is_object()) throw UsageError("polytope /: expected an object");
  auto d = doc.find("dim");
  if (d == doc.end() || !d->is_number_integer() || d->get<long long>() < 1)
    throw UsageError("polytope /dim: expected a positive integer");
  const std::size_t n = d->get<std::size_t>();
  auto v = doc.find("vrep");
  if (v != doc.end()) {
    if (!v->is_array()) throw UsageError("polytope /vrep: expected an array");
    std::vector<Vec> pts;
    for (std::size_t i = 0; i < v->size(); ++i) {
      const std::string at = "/vrep/" + std::to_string(i);
      if (!(*v)[i].is_array() || (*v)[i].size() != n) throw UsageError("polytope " + at + ": expected " + std::to_string(n) + " numbers");
      pts.push_back(vector_of((*v)[i], n, at));
    }
    return Polytope::from_points(std::move(pts));
  }
  auto h = doc.find("hrep");
  if (h == doc.end() || !h->is_array()) throw UsageError("polytope: needs an hrep or vrep array");
  std::vector<Halfspace> hs;
  for (std::size_t i = 0; i < h->size(); ++i) {
    const Json& row = (*h)[i];
    const std::string at = "/hrep/" + std::to_string(i);
    if (!row.is_object() || !row.contains("normal") || !row.contains("offset") || !row["offset"].is_number())
      throw UsageError("polytope " + at + ": expected {\"normal\", \"offset\"}");
    hs.push_back({vector_of(row["normal"], n, at + "/normal"), row["offset"].get<double>()});
  }
  return Polytope::from_halfspaces(n, std::move(hs));
}

Json to_json(const ClosedForms& f) {
  Json j{{"volume", f.volume},
         {"surface_area", f.surface_area},
         {"iq", f.iq},
         {"facet_count", f.facet_count},
         {"vertex_count", f.vertex_count}};
  if (f.minimal_iq) j["minimal_iq"] = *f.minimal_iq;
  if (f.inradius) j["inradius"] = *f.inradius;
  return j;
}

Json to_json(const PositionResult& r) {
  return {{"a", to_json(r.a)},
          {"iq_before", r.iq_before},
          {"iq_after", r.iq_after},
          {"isotropy_residual", r.isotropy_residual},
          {"schatten1_a", r.schatten1_a},
          {"iterations", r.iterations},
          {"restarts", r.restarts},
          {"certified", r.certified}};
}

Json to_json(const SchattenCheck& s) {
  return {{"lhs", s.lhs}, {"rhs", s.rhs}, {"slack", s.slack}, {"ok", s.ok}};
}

Json to_json(const BLDecomposition& d) {
  return {{"b", to_json(d.b.matrix())},
          {"c", d.c},
          {"u", d.u},
          {"identity_residual", d.identity_residual},
          {"weight_sum", d.weight_sum},
          {"near_degenerate", d.near_degenerate}};
}

Json to_json(const SpectralCertificate& c) {
  return {{"n", c.n},
          {"m", c.m},
          {"lambda_bound", c.lambda_bound},
          {"halfwidth", c.halfwidth},
          {"five_m", c.five_m},
          {"vol_bound_lhs", c.vol_bound_lhs},
          {"vol_bound_product", c.vol_bound_product},
          {"vol_bound_rhs", c.vol_bound_rhs},
          {"volume_bound_slack", c.volume_bound_slack},
          {"vol_halfwidth", c.vol_halfwidth},
          {"identity_residual", c.identity_residual},
          {"weight_sum", c.weight_sum},
          {"exact", c.exact},
          {"volume_exact", c.volume_exact},
          {"samples", c.samples},
          {"seed", c.seed},
          {"passed", c.passed}};
}

Construction build_recipe(const Json& recipe) { return build(recipe, ""); }

Json parse_json(const std::string& text, const std::string& where) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw UsageError(where + ": malformed JSON (" + e.what() + ")");
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Json read_json_file(const std::string& path) { return parse_json(read_text_file(path), path); }

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("write failed: " + path);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace isoperi::io
