#include "core/problem.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "core/errors.hpp"

namespace toric {

namespace {

using nlohmann::json;

class Violations {
 public:
  void add(const std::string& msg) { items_.push_back(msg); }
  bool empty() const { return items_.empty(); }
  [[noreturn]] void raise() const {
    std::string all = "schema violations:";
    for (const auto& v : items_) all += "\n  - " + v;
    fail(ErrorCode::schema_error, all);
  }

 private:
  std::vector<std::string> items_;
};

bool finite_number(const json& j) {
  if (!j.is_number()) return false;
  double v = j.get<double>();
  return std::isfinite(v);
}

double get_finite(const json& j, const std::string& field, Violations& v, double fallback = 0.0) {
  if (!finite_number(j)) {
    v.add(field + ": expected a finite number");
    return fallback;
  }
  return j.get<double>();
}

}  // namespace

ProblemSpec parse_problem_text(const std::string& text, const std::string& fallback_name) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::parse_error, std::string("problem file is not valid JSON: ") + e.what());
  } catch (const json::out_of_range& e) {
    // number overflow (e.g. 1e999); every numeric field must be finite
    fail(ErrorCode::schema_error,
         std::string("schema violations:\n  - non-finite number in input: ") + e.what());
  }

  Violations v;
  if (!doc.is_object()) {
    v.add("top level: expected an object");
    v.raise();
  }

  ProblemSpec spec;
  spec.name = fallback_name;
  if (doc.contains("name")) {
    if (doc["name"].is_string() && !doc["name"].get<std::string>().empty())
      spec.name = doc["name"].get<std::string>();
    else
      v.add("name: expected a non-empty string");
  }

  if (!doc.contains("dim") || !doc["dim"].is_number_integer() || doc["dim"].get<int>() < 1)
    v.add("dim: expected a positive integer");
  else
    spec.dim = doc["dim"].get<int>();
  int m = std::max(spec.dim, 1);

  if (!doc.contains("polytope") || !doc["polytope"].is_object()) {
    v.add("polytope: expected an object with vertices and facets");
  } else {
    const json& poly = doc["polytope"];
    if (!poly.contains("vertices") || !poly["vertices"].is_array() || poly["vertices"].empty()) {
      v.add("polytope.vertices: expected a non-empty array");
    } else {
      int vi = 0;
      for (const auto& vert : poly["vertices"]) {
        std::string field = "polytope.vertices[" + std::to_string(vi++) + "]";
        if (!vert.is_array() || (int)vert.size() != m) {
          v.add(field + ": expected an array of " + std::to_string(m) + " numbers");
          continue;
        }
        Vec p;
        for (const auto& c : vert) p.push_back(get_finite(c, field, v));
        spec.vertices.push_back(std::move(p));
      }
    }
    if (!poly.contains("facets") || !poly["facets"].is_array() || poly["facets"].empty()) {
      v.add("polytope.facets: expected a non-empty array");
    } else {
      int fi = 0;
      for (const auto& fac : poly["facets"]) {
        std::string field = "polytope.facets[" + std::to_string(fi++) + "]";
        if (!fac.is_object() || !fac.contains("normal") || !fac.contains("offset") ||
            !fac["normal"].is_array() || (int)fac["normal"].size() != m) {
          v.add(field + ": expected {normal: [" + std::to_string(m) + " numbers], offset: number}");
          continue;
        }
        Facet f;
        for (const auto& c : fac["normal"]) f.normal.push_back(get_finite(c, field + ".normal", v));
        f.offset = get_finite(fac["offset"], field + ".offset", v);
        spec.facets.push_back(std::move(f));
      }
    }
  }

  if (!doc.contains("forms") || !doc["forms"].is_object()) {
    v.add("forms: expected an object with either preset or raw a/b lists");
  } else {
    const json& forms = doc["forms"];
    bool has_preset = forms.contains("preset");
    bool has_raw = forms.contains("a") || forms.contains("b");
    if (has_preset && has_raw)
      v.add("forms: preset and raw a/b are mutually exclusive");
    if (!has_preset && !has_raw)
      v.add("forms: expected exactly one of preset or raw a/b (empty lists mean a point base)");
    if (has_preset) {
      if (!forms["preset"].is_string() || forms["preset"].get<std::string>().empty())
        v.add("forms.preset: expected a non-empty string");
      else {
        spec.use_preset = true;
        spec.preset = forms["preset"].get<std::string>();
      }
    } else if (has_raw) {
      if (!forms.contains("a") || !forms.contains("b") || !forms["a"].is_array() ||
          !forms["b"].is_array()) {
        v.add("forms: raw weights need both a (array of vectors) and b (array of numbers)");
      } else if (forms["a"].size() != forms["b"].size()) {
        v.add("forms: a and b must have the same length");
      } else {
        int ai = 0;
        for (const auto& row : forms["a"]) {
          std::string field = "forms.a[" + std::to_string(ai++) + "]";
          if (!row.is_array() || (int)row.size() != m) {
            v.add(field + ": expected an array of " + std::to_string(m) + " numbers");
            continue;
          }
          Vec a;
          for (const auto& c : row) a.push_back(get_finite(c, field, v));
          spec.raw_a.push_back(std::move(a));
        }
        int bi = 0;
        for (const auto& c : forms["b"])
          spec.raw_b.push_back(get_finite(c, "forms.b[" + std::to_string(bi++) + "]", v));
      }
    }
  }

  if (doc.contains("options")) {
    if (!doc["options"].is_object()) {
      v.add("options: expected an object");
    } else {
      const json& o = doc["options"];
      if (o.contains("tol")) {
        double t = get_finite(o["tol"], "options.tol", v, spec.options.tol);
        if (!(t > 0.0))
          v.add("options.tol: must be positive");
        else
          spec.options.tol = t;
      }
      if (o.contains("quad_degree_cap")) {
        if (!o["quad_degree_cap"].is_number_integer() || o["quad_degree_cap"].get<int>() < 5)
          v.add("options.quad_degree_cap: expected an integer >= 5");
        else
          spec.options.quad_degree_cap = o["quad_degree_cap"].get<int>();
      }
      if (o.contains("n_grid")) {
        if (!o["n_grid"].is_number_integer() || o["n_grid"].get<int>() < 8 ||
            o["n_grid"].get<int>() > (1 << 20))
          v.add("options.n_grid: expected an integer in [8, 1048576]");
        else
          spec.options.n_grid = o["n_grid"].get<int>();
      }
      if (o.contains("seed")) {
        if (!o["seed"].is_number_integer() || o["seed"].get<double>() < 0)
          v.add("options.seed: expected a non-negative integer");
        else
          spec.options.seed = o["seed"].get<uint64_t>();
      }
      if (o.contains("oracle")) {
        if (!o["oracle"].is_boolean())
          v.add("options.oracle: expected a boolean");
        else
          spec.options.oracle = o["oracle"].get<bool>();
      }
    }
  }

  if (!v.empty()) v.raise();
  return spec;
}

ProblemSpec parse_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io_error, "cannot open problem file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string stem = path;
  auto slash = stem.find_last_of('/');
  if (slash != std::string::npos) stem = stem.substr(slash + 1);
  auto dot = stem.find_last_of('.');
  if (dot != std::string::npos && dot > 0) stem = stem.substr(0, dot);
  return parse_problem_text(buf.str(), stem);
}

nlohmann::json canonical_spec_json(const ProblemSpec& spec) {
  json doc;
  doc["name"] = spec.name;
  doc["dim"] = spec.dim;
  json verts = json::array();
  for (const auto& vtx : spec.vertices) {
    json row = json::array();
    for (double c : vtx) row.push_back((double)c);
    verts.push_back(row);
  }
  json facets = json::array();
  for (const auto& f : spec.facets) {
    json ff;
    json n = json::array();
    for (double c : f.normal) n.push_back((double)c);
    ff["normal"] = n;
    ff["offset"] = (double)f.offset;
    facets.push_back(ff);
  }
  doc["polytope"] = {{"vertices", verts}, {"facets", facets}};
  if (spec.use_preset) {
    doc["forms"] = {{"preset", spec.preset}};
  } else {
    json a = json::array();
    for (const auto& row : spec.raw_a) {
      json r = json::array();
      for (double c : row) r.push_back((double)c);
      a.push_back(r);
    }
    json b = json::array();
    for (double c : spec.raw_b) b.push_back((double)c);
    doc["forms"] = {{"a", a}, {"b", b}};
  }
  doc["options"] = {{"tol", (double)spec.options.tol},
                    {"quad_degree_cap", spec.options.quad_degree_cap},
                    {"n_grid", spec.options.n_grid},
                    {"seed", spec.options.seed},
                    {"oracle", spec.options.oracle}};
  return doc;
}

std::string canonical_spec_dump(const ProblemSpec& spec) {
  return canonical_spec_json(spec).dump();
}

std::string input_hash(const ProblemSpec& spec) {
  return fnv1a64_hex(canonical_spec_dump(spec));
}

}  // namespace toric
