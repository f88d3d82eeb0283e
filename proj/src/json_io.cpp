#include "wstruct/json_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace wstruct {

namespace {

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw InputError(where, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw InputError(where, std::string("missing field '") + key + "'");
  return *it;
}

std::string child(const std::string& where, const std::string& key) { return where + "/" + key; }
std::string child(const std::string& where, std::size_t i) { return where + "/" + std::to_string(i); }

long get_long(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw InputError(where, "expected an integer");
  return j.get<long>();
}

std::string scalar_text(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return std::to_string(j.get<long>());
  if (j.is_string()) return j.get<std::string>();
  throw InputError(where, "expected an integer or a rational string");
}

Scalar get_scalar(Field f, const Json& j, const std::string& where) {
  try {
    return Scalar::parse(f, scalar_text(j, where));
  } catch (const std::invalid_argument& e) {
    throw InputError(where, e.what());
  }
}

std::vector<long> long_list(const Json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where, "expected an array of integers");
  std::vector<long> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_long(j[i], child(where, i)));
  return out;
}

}  // namespace

Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(origin + ": byte " + std::to_string(e.byte), "malformed JSON");
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

Json rational_json(const mpq_class& q) { return rational_to_string(q); }

Json rational_vector_json(const RationalVector& v) {
  Json a = Json::array();
  for (const mpq_class& x : v) a.push_back(rational_json(x));
  return a;
}

Json int_lattice_json(const IntLattice& l) {
  Json rows = Json::array();
  for (const IntVector& b : l.basis()) {
    Json r = Json::array();
    for (const mpz_class& x : b) r.push_back(x.get_str());
    rows.push_back(r);
  }
  return {{"ambient_rank", l.ambient_rank()}, {"hnf_basis", rows}};
}

Json scaled_lattice_json(const ScaledLattice& l) {
  Json basis = Json::array();
  for (const RationalVector& v : l.basis()) basis.push_back(rational_vector_json(v));
  return {{"denominator", l.denominator().get_str()}, {"lattice", int_lattice_json(l.lattice())}, {"basis", basis}};
}

// ---------------------------------------------------------------------------
// Quivers and complexes

Json quiver_json(const Quiver& q) {
  Json arrows = Json::array();
  for (const auto& [s, t] : q.arrows()) arrows.push_back({q.vertices()[static_cast<std::size_t>(s)], q.vertices()[static_cast<std::size_t>(t)]});
  return {{"vertices", q.vertices()}, {"arrows", arrows}};
}

Quiver quiver_from_json(const Json& j) {
  const Json& vs = field(j, "vertices", "");
  if (!vs.is_array() || vs.empty()) throw InputError("/vertices", "expected a non-empty array of labels");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (!vs[i].is_string()) throw InputError(child("/vertices", i), "expected a string");
    labels.push_back(vs[i].get<std::string>());
  }
  std::vector<std::pair<std::string, std::string>> arrows;
  if (j.contains("arrows")) {
    const Json& as = j["arrows"];
    if (!as.is_array()) throw InputError("/arrows", "expected an array");
    for (std::size_t i = 0; i < as.size(); ++i) {
      const Json& a = as[i];
      if (!a.is_array() || a.size() != 2 || !a[0].is_string() || !a[1].is_string())
        throw InputError(child("/arrows", i), "expected [from, to] labels");
      arrows.emplace_back(a[0].get<std::string>(), a[1].get<std::string>());
    }
  }
  try {
    return Quiver::from_labels(labels, arrows);
  } catch (const std::invalid_argument& e) {
    throw InputError("", e.what());
  }
}

Json base_morphism_json(const BaseMorphism& f) {
  const Quiver& q = f.quiver();
  Json rows = Json::array();
  for (std::size_t i = 0; i < f.target().size(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < f.source().size(); ++j) {
      const std::vector<int>& ps = f.paths(i, j);
      if (ps.size() == 1 && q.path(ps[0]).length() == 0) {
        row.push_back(f.coef(i, j, ps[0]).to_string());
      } else {
        Json e = Json::array();
        for (int p : ps) e.push_back(f.coef(i, j, p).to_string());
        row.push_back(e);
      }
    }
    rows.push_back(row);
  }
  return rows;
}

BaseMorphism base_morphism_from_json(const Json& j, const BaseObject& source, const BaseObject& target,
                                     const std::string& where) {
  BaseMorphism f(source, target);
  const Field fld = f.field();
  if (!j.is_array() || j.size() != target.size()) throw InputError(where, "expected " + std::to_string(target.size()) + " rows");
  for (std::size_t i = 0; i < target.size(); ++i) {
    const Json& row = j[i];
    const std::string wr = child(where, i);
    if (!row.is_array() || row.size() != source.size())
      throw InputError(wr, "expected " + std::to_string(source.size()) + " entries");
    for (std::size_t c = 0; c < source.size(); ++c) {
      const std::vector<int>& ps = f.paths(i, c);
      const Json& e = row[c];
      const std::string we = child(wr, c);
      if (e.is_array()) {
        if (e.size() != ps.size()) throw InputError(we, "expected " + std::to_string(ps.size()) + " path coefficients");
        for (std::size_t k = 0; k < ps.size(); ++k) f.coef(i, c, ps[k]) = get_scalar(fld, e[k], child(we, k));
      } else {
        const Scalar s = get_scalar(fld, e, we);
        if (s.is_zero()) continue;
        if (source.vertex_of(c) != target.vertex_of(i)) throw InputError(we, "a scalar entry needs a trivial path");
        f.set_trivial(i, c, s);
      }
    }
  }
  return f;
}

Json complex_json(const Complex& c) {
  Json terms = Json::array(), diffs = Json::array();
  for (int i = c.lo(); i <= c.hi(); ++i) {
    terms.push_back(c.term(i).mult());
    if (i < c.hi()) diffs.push_back(base_morphism_json(c.diff(i)));
  }
  return {{"lo", c.is_zero() ? 0 : c.lo()}, {"terms", terms}, {"diffs", diffs}};
}

Complex complex_from_json(const Json& j, const CategoryPtr& cat, const std::string& where) {
  const int lo = static_cast<int>(get_long(field(j, "lo", where), child(where, "lo")));
  const Json& ts = field(j, "terms", where);
  if (!ts.is_array()) throw InputError(child(where, "terms"), "expected an array");
  std::vector<BaseObject> terms;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const std::string wt = child(child(where, "terms"), k);
    std::vector<long> m = long_list(ts[k], wt);
    if (m.size() != cat->vertex_count())
      throw InputError(wt, "expected " + std::to_string(cat->vertex_count()) + " multiplicities");
    std::vector<int> mi;
    for (long x : m) {
      if (x < 0) throw InputError(wt, "negative multiplicity");
      mi.push_back(static_cast<int>(x));
    }
    terms.emplace_back(cat, mi);
  }
  std::vector<BaseMorphism> diffs;
  const std::size_t need = terms.empty() ? 0 : terms.size() - 1;
  const Json empty = Json::array();
  const Json& ds = j.contains("diffs") ? j["diffs"] : empty;
  if (!ds.is_array() || ds.size() != need)
    throw InputError(child(where, "diffs"), "expected " + std::to_string(need) + " differentials");
  for (std::size_t k = 0; k < need; ++k)
    diffs.push_back(base_morphism_from_json(ds[k], terms[k], terms[k + 1], child(child(where, "diffs"), k)));
  try {
    return Complex::make(cat, lo, std::move(terms), std::move(diffs));
  } catch (const std::invalid_argument& e) {
    throw InputError(where, e.what());
  }
}

Json graded_map_json(const GradedMap& f) {
  Json comps = Json::object();
  const Complex& s = f.source();
  for (int i = s.lo(); i <= s.hi() && !s.is_zero(); ++i) {
    const BaseMorphism c = f.component(i);
    if (!c.is_zero()) comps[std::to_string(i)] = base_morphism_json(c);
  }
  return {{"source", complex_json(f.source())}, {"target", complex_json(f.target())}, {"degree", f.degree()},
          {"components", comps}};
}

GradedMap graded_map_from_json(const Json& j, const CategoryPtr& cat, const std::string& where) {
  const Complex s = complex_from_json(field(j, "source", where), cat, child(where, "source"));
  const Complex t = complex_from_json(field(j, "target", where), cat, child(where, "target"));
  const int deg = j.contains("degree") ? static_cast<int>(get_long(j["degree"], child(where, "degree"))) : 0;
  GradedMap f(s, t, deg);
  if (!j.contains("components")) return f;
  const Json& cs = j["components"];
  const std::string wc = child(where, "components");
  if (!cs.is_object()) throw InputError(wc, "expected an object keyed by degree");
  for (const auto& [key, val] : cs.items()) {
    int i = 0;
    try {
      i = std::stoi(key);
    } catch (const std::exception&) {
      throw InputError(child(wc, key), "degree key is not an integer");
    }
    f.set_component(i, base_morphism_from_json(val, s.term(i), t.term(i + deg), child(wc, key)));
  }
  return f;
}

Json decomposition_json(const WeightDecomposition& d) {
  return {{"index", d.m}, {"object", complex_json(d.object())}, {"low", complex_json(d.low())},
          {"high", complex_json(d.high)}, {"x", graded_map_json(d.x)}};
}

Json triangle_json(const Triangle& t) {
  return {{"f", graded_map_json(t.f)}, {"cone", complex_json(t.cone)}};
}

// ---------------------------------------------------------------------------
// Slope objects

Json slope_object_json(const SlopeObject& m) {
  const EPSequence& d = m.dims;
  Json core = Json::object();
  for (long i = d.left_end() + 1; i < d.right_start(); ++i)
    if (d(i) != 0) core[std::to_string(i)] = d(i);
  return {{"core", core},
          {"left", {{"end", d.left_end()}, {"vals", d.left().vals}}},
          {"right", {{"start", d.right_start()}, {"vals", d.right().vals}}}};
}

SlopeObject slope_object_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) throw InputError(where, "expected a profile object");
  std::map<long, long> core;
  if (j.contains("core")) {
    const Json& c = j["core"];
    const std::string wc = child(where, "core");
    if (!c.is_object()) throw InputError(wc, "expected an object keyed by degree");
    for (const auto& [key, val] : c.items()) {
      long i = 0;
      try {
        i = std::stol(key);
      } catch (const std::exception&) {
        throw InputError(child(wc, key), "degree key is not an integer");
      }
      core[i] = get_long(val, child(wc, key));
    }
  }
  auto tail = [&](const char* side, const char* anchor_key, std::optional<long>& anchor) {
    Tail t{{0, 0}};
    if (!j.contains(side)) return t;
    const std::string ws = child(where, side);
    const Json& s = j[side];
    anchor = get_long(field(s, anchor_key, ws), child(ws, anchor_key));
    t.vals = long_list(field(s, "vals", ws), child(ws, "vals"));
    if (s.contains("period") && get_long(s["period"], child(ws, "period")) != static_cast<long>(t.vals.size()))
      throw InputError(child(ws, "period"), "period differs from the number of values");
    return t;
  };
  std::optional<long> le, rs;
  const Tail left = tail("left", "end", le), right = tail("right", "start", rs);
  const long cmin = core.empty() ? 0 : core.begin()->first, cmax = core.empty() ? -1 : core.rbegin()->first;
  if (!rs) rs = std::max(cmax + 1, le ? *le + 1 : cmax + 1);
  if (!le) le = std::min(cmin - 1, *rs - 1);
  std::vector<long> vals;
  for (long i = *le + 1; i < *rs; ++i) vals.push_back(core.count(i) ? core[i] : 0);
  for (const auto& [i, v] : core)
    if (i <= *le || i >= *rs) throw InputError(child(where, "core"), "degree " + std::to_string(i) + " lies inside a tail");
  try {
    return {EPSequence(*le, left, vals, *rs, right)};
  } catch (const std::invalid_argument& e) {
    throw InputError(where, e.what());
  }
}

Json slope_pair_json(const SlopePair& s) { return {{"alpha", rational_json(s.alpha)}, {"beta", rational_json(s.beta)}}; }

Json certificate_json(const ObstructionCertificate& c) {
  Json cuts = Json::array();
  for (const auto& cut : c.cuts)
    cuts.push_back({{"index", cut.index}, {"low", slope_pair_json(cut.low)}, {"high", slope_pair_json(cut.high)}});
  return {{"object", slope_object_json(c.object)},
          {"slopes", slope_pair_json(c.slopes)},
          {"beta_minus_alpha", rational_json(c.beta_minus_alpha)},
          {"cuts", cuts},
          {"additivity_samples", c.additivity_samples},
          {"additivity_failures", c.additivity_failures}};
}

// ---------------------------------------------------------------------------
// K_0 reports

Json criterion_json(const CriterionResult& r) {
  Json j = {{"satisfied", r.satisfied},
            {"g_cap_k_minus", scaled_lattice_json(r.g_minus)},
            {"g_cap_k_plus", scaled_lattice_json(r.g_plus)},
            {"sum", scaled_lattice_json(r.sum)}};
  j["counterexample"] = r.counterexample ? rational_vector_json(*r.counterexample) : Json(nullptr);
  return j;
}

Json necessary_condition_json(const NecessaryConditionReport& r) {
  Json gens = Json::array();
  for (std::size_t i = 0; i < r.generators.size(); ++i)
    gens.push_back({{"profile", slope_object_json(r.generators[i])}, {"vector", rational_vector_json(r.generator_vectors[i])}});
  return {{"scenario", r.scenario},
          {"period", r.period},
          {"generators", gens},
          {"G", scaled_lattice_json(r.g)},
          {"K_minus", scaled_lattice_json(r.k_minus)},
          {"K_plus", scaled_lattice_json(r.k_plus)},
          {"criterion", criterion_json(r.result)},
          {"verdict", r.verdict},
          {"note", r.note}};
}

}  // namespace wstruct
