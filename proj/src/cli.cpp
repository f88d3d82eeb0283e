#include "wstruct/cli.hpp"

#include <chrono>
#include <cstdint>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>

#include "wstruct/acceptance.hpp"
#include "wstruct/json_io.hpp"
#include "wstruct/random.hpp"

namespace wstruct {

namespace {

struct Options {
  std::string base = "vect";
  std::string quiver_file;
  std::string field;
  int samples = 20;
  std::uint64_t seed = 0;
  bool pretty = false;
  std::string scenario;

  std::string structure = "stupid";
  int index = 0;
  std::optional<int> tower_n;
  std::string alpha, beta;
  long period = 2;
};

struct Outcome {
  Json report;
  int exit_code = kExitOk;
};

struct Context {
  const Options& opt;
  CategoryPtr cat;
  std::optional<Json> scenario;
  Rng rng;
};

CategoryPtr make_category(const Options& o) {
  const bool quiver = o.base == "quiver" || !o.quiver_file.empty();
  Field f = quiver ? Field::prime(kDefaultPrime) : Field::rationals();
  if (!o.field.empty()) {
    try {
      f = Field::parse(o.field);
    } catch (const std::invalid_argument& e) {
      throw InputError("--field", e.what());
    }
  }
  if (!quiver) return BaseCategory::vect(f);
  const Quiver q = o.quiver_file.empty() ? Quiver::linear_a(3) : quiver_from_json(read_json_file(o.quiver_file));
  return BaseCategory::quiver(q, f);
}

Complex random_sample(Context& c) {
  RandomComplexOptions o;
  o.min_degree = -1;
  o.max_degree = 1;
  o.max_mult = c.cat->backend() == Backend::Vect ? 2 : 1;
  return random_complex(c.cat, c.rng, o);
}

// Payload list from the scenario, or fresh random samples.
std::vector<Complex> samples_or_scenario(Context& c, const char* key) {
  std::vector<Complex> out;
  if (c.scenario && c.scenario->contains(key)) {
    const Json& a = (*c.scenario)[key];
    if (!a.is_array()) throw InputError(std::string("/") + key, "expected an array of complexes");
    for (std::size_t i = 0; i < a.size(); ++i)
      out.push_back(complex_from_json(a[i], c.cat, std::string("/") + key + "/" + std::to_string(i)));
    return out;
  }
  for (int t = 0; t < c.opt.samples; ++t) out.push_back(random_sample(c));
  return out;
}

std::vector<Complex> generators(Context& c) {
  if (c.scenario && c.scenario->contains("generators")) return samples_or_scenario(c, "generators");
  return degree_zero_stalks(c.cat);
}

Json header(const Context& c, const std::string& command) {
  return {{"command", command}, {"base", c.cat->describe()}, {"seed", c.opt.seed}};
}

WeightSpec structure_for(Context& c) {
  if (c.opt.structure == "stupid") return WeightSpec::stupid(c.cat);
  return WeightSpec::generated(c.cat, generators(c));
}

Json violations_json(const std::vector<Violation>& vs) {
  Json a = Json::array();
  for (const Violation& v : vs)
    a.push_back({{"axiom", v.axiom}, {"sample", v.sample}, {"other", v.other ? Json(*v.other) : Json(nullptr)},
                 {"detail", v.detail}});
  return a;
}

Json negativity_json(const NegativityResult& r) {
  Json j = {{"negative", r.negative}, {"i_max", r.i_max}};
  if (r.pair) j["witness"] = {{"first", r.pair->first}, {"second", r.pair->second}, {"shift", r.shift}};
  return j;
}

mpq_class rational_flag(const std::string& text, const char* flag) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument& e) {
    throw InputError(flag, e.what());
  }
}

SlopeObject slope_input(Context& c) {
  if (c.scenario && c.scenario->contains("profile")) return slope_object_from_json((*c.scenario)["profile"], "/profile");
  if (c.opt.alpha.empty()) throw InputError("--alpha", "needs --alpha (and optionally --beta) or a scenario with a profile");
  const mpq_class a = rational_flag(c.opt.alpha, "--alpha");
  const mpq_class b = c.opt.beta.empty() ? a : rational_flag(c.opt.beta, "--beta");
  return slope_object_with(a, b);
}

// ---------------------------------------------------------------------------
// Commands

Outcome cmd_axioms(Context& c) {
  const WeightSpec w = structure_for(c);
  const std::vector<Complex> s = samples_or_scenario(c, "complexes");
  const AxiomReport r = check_axioms(w, s);
  Json j = header(c, "axioms");
  j["structure"] = w.name();
  j["samples"] = r.samples;
  j["violations"] = violations_json(r.violations);
  j["ok"] = r.ok();
  return {j, r.ok() ? kExitOk : kExitViolation};
}

Outcome cmd_decompose(Context& c) {
  const WeightSpec w = structure_for(c);
  const std::vector<Complex> s = samples_or_scenario(c, "complexes");
  Json list = Json::array();
  std::size_t failures = 0;
  for (const Complex& m : s) {
    const WeightDecomposition d = w.decompose(m, c.opt.index);
    const std::string v = verify_decomposition(w, d);
    failures += !v.empty();
    Json e = decomposition_json(d);
    e["verified"] = v.empty();
    if (!v.empty()) e["failure"] = v;
    list.push_back(e);
  }
  Json j = header(c, "decompose");
  j["structure"] = w.name();
  j["index"] = c.opt.index;
  j["decompositions"] = list;
  j["failures"] = failures;
  j["ok"] = failures == 0;
  return {j, failures ? kExitViolation : kExitOk};
}

Outcome cmd_construct_w(Context& c) {
  const std::vector<Complex> gens = generators(c);
  const NegativityResult neg = negativity_check(gens);
  Json j = header(c, "construct-w");
  j["generators"] = gens.size();
  j["negativity"] = negativity_json(neg);
  if (!neg.negative) {
    j["ok"] = false;
    return {j, kExitViolation};
  }
  const WeightSpec w = WeightSpec::generated(c.cat, gens);
  const std::vector<Complex> s = samples_or_scenario(c, "complexes");
  const AxiomReport ax = check_axioms(w, s);
  const bool stalks = gens == degree_zero_stalks(c.cat);
  Json members = Json::array();
  std::size_t disagreements = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const bool le = w.member(s[i], Side::Le), ge = w.member(s[i], Side::Ge);
    members.push_back({{"sample", i}, {"w_le_0", le}, {"w_ge_0", ge}});
    if (stalks) disagreements += (le != stupid_membership(s[i], Side::Le)) + (ge != stupid_membership(s[i], Side::Ge));
  }
  j["samples"] = s.size();
  j["membership"] = members;
  j["violations"] = violations_json(ax.violations);
  // With the degree-0 stalks the constructed structure must be the stupid one.
  j["compared_with_stupid"] = stalks;
  j["disagreements"] = disagreements;
  const bool ok = ax.ok() && disagreements == 0;
  j["ok"] = ok;
  return {j, ok ? kExitOk : kExitViolation};
}

Outcome cmd_negativity(Context& c) {
  const NegativityResult r = negativity_check(generators(c));
  Json j = header(c, "negativity");
  j["result"] = negativity_json(r);
  j["ok"] = r.negative;
  return {j, r.negative ? kExitOk : kExitViolation};
}

Outcome cmd_heart(Context& c) {
  const WeightSpec w = WeightSpec::generated(c.cat, generators(c));
  std::vector<Complex> s;
  if (c.scenario && c.scenario->contains("complexes")) {
    s = samples_or_scenario(c, "complexes");
  } else {
    // Half heart objects in disguise (degree-0 stalks with contractible padding), half arbitrary.
    for (int t = 0; t < c.opt.samples; ++t) {
      if (t % 2 == 0) {
        const Complex base = Complex::stalk(random_object(c.cat, c.rng, 2), 0);
        const Complex pad = cone(ChainMap::identity(Complex::stalk(random_object(c.cat, c.rng, 1), 0))).cone;
        s.push_back(direct_sum(base, pad).sum);
      } else {
        s.push_back(random_sample(c));
      }
    }
  }
  const HeartReport r = heart_of(w, s);
  Json j = header(c, "heart");
  j["samples"] = s.size();
  j["in_heart"] = r.in_heart;
  j["confirmed_retracts"] = r.confirmed;
  j["failures"] = r.failures;
  j["ok"] = r.ok();
  return {j, r.ok() ? kExitOk : kExitViolation};
}

Outcome cmd_retract_tower(Context& c) {
  std::vector<std::pair<ChainMap, ChainMap>> pairs;
  if (c.scenario && c.scenario->contains("retraction")) {
    const Json& sc = *c.scenario;
    if (!sc.contains("section")) throw InputError("/section", "missing the section s: N -> M");
    pairs.emplace_back(graded_map_from_json(sc["retraction"], c.cat, "/retraction"),
                       graded_map_from_json(sc["section"], c.cat, "/section"));
  } else {
    for (int t = 0; t < c.opt.samples; ++t) {
      const Complex n = random_sample(c), p = random_sample(c);
      pairs.push_back(random_retraction(n, p, c.rng));
    }
  }
  const std::vector<int> ns = c.opt.tower_n ? std::vector<int>{*c.opt.tower_n} : std::vector<int>{1, 2, 3};
  std::size_t triangles = 0;
  Json failures = Json::array();
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto& [r, s] = pairs[k];
    const Splitting sp = make_splitting(r, s);
    for (int n : ns) {
      const std::vector<Triangle> tri = retract_tower(r, s, n);
      for (int jdx = 0; jdx < n; ++jdx) {
        const std::string a = verify_split_triangle(tri[2 * jdx], shift(sp.p, 2 * jdx + 1));
        const std::string b = verify_split_triangle(tri[2 * jdx + 1], shift(sp.n, 2 * jdx + 2));
        triangles += 2;
        if (!a.empty()) failures.push_back({{"sample", k}, {"n", n}, {"triangle", 2 * jdx}, {"detail", a}});
        if (!b.empty()) failures.push_back({{"sample", k}, {"n", n}, {"triangle", 2 * jdx + 1}, {"detail", b}});
      }
    }
  }
  Json j = header(c, "retract-tower");
  j["splittings"] = pairs.size();
  j["n_values"] = ns;
  j["triangles"] = triangles;
  j["failures"] = failures;
  j["ok"] = failures.empty();
  return {j, failures.empty() ? kExitOk : kExitViolation};
}

Outcome cmd_combine(Context& c) {
  const WeightSpec w = WeightSpec::stupid(c.cat);
  std::vector<std::pair<ChainMap, int>> gluings;
  if (c.scenario && c.scenario->contains("gluing")) {
    gluings.emplace_back(graded_map_from_json((*c.scenario)["gluing"], c.cat, "/gluing"), c.opt.index);
  } else {
    for (int t = 0; t < c.opt.samples; ++t) {
      const Complex n = random_sample(c), m = random_sample(c);
      const ChainMap g = random_chain_map(shift(m, -1), n, c.rng);
      gluings.emplace_back(g, static_cast<int>(c.rng.uniform(-1, 1)));
    }
  }
  Json results = Json::array();
  std::size_t failures = 0;
  for (const auto& [g, idx] : gluings) {
    if (!is_chain_map(g)) throw InputError("/gluing", "not a chain map");
    const Complex m = shift(g.source(), 1);
    const WeightDecomposition e = combine_decompositions(g, stupid_decomposition(g.target(), idx), stupid_decomposition(m, idx));
    std::string v = verify_decomposition(w, e);
    if (v.empty() && e.object() != cone(g).cone) v = "object is not Cone(g)";
    failures += !v.empty();
    Json r = {{"index", idx}, {"verified", v.empty()}};
    if (!v.empty()) r["failure"] = v;
    if (c.scenario) r["decomposition"] = decomposition_json(e);
    results.push_back(r);
  }
  Json j = header(c, "combine");
  j["extensions"] = gluings.size();
  j["results"] = results;
  j["failures"] = failures;
  j["ok"] = failures == 0;
  return {j, failures ? kExitViolation : kExitOk};
}

Outcome cmd_counterexample(Context& c) {
  const SlopeObject m = slope_input(c);
  const ObstructionCertificate cert = no_decomposition_witness(m, c.opt.seed);
  const std::string check = check_certificate(cert);
  const OracleResult o = exhaustive_oracle(m, -2, 2, 3);
  Json j = {{"command", "counterexample"}, {"seed", c.opt.seed}};
  j["certificate"] = certificate_json(cert);
  j["certificate_check"] = check.empty() ? "verified" : check;
  j["oracle"] = {{"indices", {-2, 2}},
                 {"value_bound", 3},
                 {"decompositions_in_D", o.decompositions},
                 {"decompositions_inside_C_prime", o.inside}};
  const bool ok = check.empty() && o.inside == 0;
  j["verdict"] = ok ? "no weight decomposition inside C'" : "certificate rejected";
  j["ok"] = ok;
  return {j, ok ? kExitOk : kExitViolation};
}

Outcome cmd_pad_to_c(Context& c) {
  const SlopeObject m = slope_input(c);
  const SlopeObject n = pad_to_C(m);
  const bool in_c = membership(n, SlopeClass::C), dom = dominated(m, n);
  Json j = {{"command", "pad-to-c"}};
  j["input"] = slope_object_json(m);
  j["input_slopes"] = slope_pair_json(slopes(m));
  j["padded"] = slope_object_json(n);
  j["padded_slopes"] = slope_pair_json(slopes(n));
  j["in_C"] = in_c;
  j["dominates_input"] = dom;
  j["ok"] = in_c && dom;
  return {j, in_c && dom ? kExitOk : kExitViolation};
}

std::vector<RationalVector> rational_rows(const Json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where, "expected a list of vectors");
  std::vector<RationalVector> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string w = where + "/" + std::to_string(i);
    if (!j[i].is_array()) throw InputError(w, "expected a vector");
    RationalVector v;
    for (std::size_t k = 0; k < j[i].size(); ++k) {
      const Json& x = j[i][k];
      try {
        v.push_back(parse_rational(x.is_string() ? x.get<std::string>() : x.dump()));
      } catch (const std::invalid_argument& e) {
        throw InputError(w + "/" + std::to_string(k), e.what());
      }
    }
    out.push_back(std::move(v));
  }
  return out;
}

Outcome cmd_k0(Context& c) {
  const std::string& sc = c.opt.scenario;
  if (sc.empty()) throw InputError("--scenario", "needs c, cprime, d or a lattice file");
  Json j = {{"command", "k0-criterion"}};
  if (sc == "c" || sc == "cprime" || sc == "d") {
    j["report"] = necessary_condition_json(necessary_condition_report(sc, c.opt.period));
  } else {
    const Json f = read_json_file(sc);
    if (f.contains("scenario")) {
      if (!f["scenario"].is_string()) throw InputError("/scenario", "expected a string");
      const long p = f.contains("period") ? f["period"].get<long>() : c.opt.period;
      j["report"] = necessary_condition_json(necessary_condition_report(f["scenario"].get<std::string>(), p));
    } else {
      const auto g = rational_rows(f.value("G", Json::array()), "/G");
      const auto km = rational_rows(f.value("K_minus", Json::array()), "/K_minus");
      const auto kp = rational_rows(f.value("K_plus", Json::array()), "/K_plus");
      if (g.empty()) throw InputError("/G", "needs at least one generator");
      const std::size_t n = g[0].size();
      const ScaledLattice lg = ScaledLattice::from_generators(n, g);
      const ScaledLattice lm = ScaledLattice::from_generators(n, km), lp = ScaledLattice::from_generators(n, kp);
      const CriterionResult r = criterion_check(lg, lm, lp);
      j["report"] = {{"G", scaled_lattice_json(lg)},
                     {"K_minus", scaled_lattice_json(lm)},
                     {"K_plus", scaled_lattice_json(lp)},
                     {"criterion", criterion_json(r)},
                     {"verdict", r.satisfied ? "no obstruction at invariant level" : "no extension exists"}};
    }
  }
  j["ok"] = true;
  return {j, kExitOk};
}

Outcome cmd_self_test(Context& c) {
  const std::vector<CriterionOutcome> res = run_acceptance(c.opt.seed);
  Json list = Json::array();
  bool all = true;
  for (const CriterionOutcome& o : res) {
    all = all && o.passed;
    list.push_back({{"id", o.id}, {"name", o.name}, {"passed", o.passed}, {"detail", o.detail}});
  }
  Json j = {{"command", "self-test"}, {"seed", c.opt.seed}, {"criteria", list}, {"ok", all}};
  return {j, all ? kExitOk : kExitViolation};
}

// ---------------------------------------------------------------------------
// Rendering

void flatten(std::ostream& os, const std::string& prefix, const Json& j) {
  if (j.is_object() && !j.empty()) {
    for (const auto& [key, val] : j.items()) flatten(os, prefix.empty() ? key : prefix + "." + key, val);
    return;
  }
  std::string text = j.is_string() ? j.get<std::string>() : j.dump();
  if (text.size() > 100) text = text.substr(0, 97) + "...";
  os << std::left << std::setw(40) << prefix << " " << text << "\n";
}

std::string render_pretty(const Json& j, double ms) {
  std::ostringstream os;
  if (j.contains("criteria")) {
    for (const Json& k : j["criteria"])
      os << (k["passed"].get<bool>() ? "PASS" : "FAIL") << "  [" << k["id"].get<int>() << "] " << k["name"].get<std::string>()
         << ": " << k["detail"].get<std::string>() << "\n";
  }
  Json rest = j;
  rest.erase("criteria");
  flatten(os, "", rest);
  os << std::left << std::setw(40) << "elapsed_ms" << " " << std::fixed << std::setprecision(1) << ms << "\n";
  return os.str();
}

}  // namespace

CliResult run_cli(const std::vector<std::string>& args) {
  CliResult res;
  Options o;
  CLI::App app{"Weight structures on homotopy categories: checks, constructions and certificates."};
  app.name("wstruct");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--base", o.base, "Additive base category")->check(CLI::IsMember({"vect", "quiver"}));
  app.add_option("--quiver", o.quiver_file, "Quiver JSON file (implies --base quiver)");
  app.add_option("--field", o.field, "Coefficient field: q or fp:P");
  app.add_option("--samples", o.samples, "Number of random samples")->check(CLI::Range(0, 100000));
  app.add_option("--seed", o.seed, "Seed for all sampling");
  app.add_flag("--pretty", o.pretty, "Human-readable table instead of JSON");
  app.add_option("--scenario", o.scenario, "Scenario JSON file (k0-criterion also takes c, cprime or d)");

  using Handler = Outcome (*)(Context&);
  std::vector<std::pair<CLI::App*, Handler>> commands;
  auto add = [&](const char* name, const char* help, Handler h) {
    CLI::App* sub = app.add_subcommand(name, help);
    commands.emplace_back(sub, h);
    return sub;
  };
  const auto structures = CLI::IsMember({"stupid", "generated"});
  add("axioms", "Check the weight-structure axioms on samples", cmd_axioms)
      ->add_option("--structure", o.structure)
      ->check(structures);
  CLI::App* dec = add("decompose", "Weight decompositions with independent verification", cmd_decompose);
  dec->add_option("--structure", o.structure)->check(structures);
  dec->add_option("--index", o.index, "Decomposition index m");
  add("construct-w", "Weight structure generated by a negative set", cmd_construct_w);
  add("negativity", "Negativity check of the generators", cmd_negativity);
  add("heart", "Heart objects are retracts of sums of generators", cmd_heart);
  add("retract-tower", "Split triangles of the retract tower", cmd_retract_tower)
      ->add_option("--n", o.tower_n, "Tower length (default: 1, 2 and 3)")
      ->check(CLI::Range(0, 20));
  add("combine", "Weight decompositions of extensions", cmd_combine)->add_option("--index", o.index);
  CLI::App* ce = add("counterexample", "Obstruction certificate for the slope object", cmd_counterexample);
  ce->add_option("--alpha", o.alpha, "Right slope, e.g. 1/2");
  ce->add_option("--beta", o.beta, "Left slope (default: alpha)");
  CLI::App* pad = add("pad-to-c", "Dominating object with integer slopes", cmd_pad_to_c);
  pad->add_option("--alpha", o.alpha);
  pad->add_option("--beta", o.beta);
  add("k0-criterion", "Grothendieck-group criterion", cmd_k0)->add_option("--period", o.period)->check(CLI::PositiveNumber);
  add("self-test", "Run the acceptance suite", cmd_self_test);

  std::ostringstream out, err;
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    res.exit_code = app.exit(e, out, err) == 0 ? kExitOk : kExitInputError;
    res.out = out.str();
    res.err = err.str();
    return res;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    Handler handler = nullptr;
    for (const auto& [sub, h] : commands)
      if (sub->parsed()) handler = h;
    Context ctx{o, nullptr, std::nullopt, Rng(o.seed)};
    const bool k0 = app.got_subcommand("k0-criterion");
    const bool slope = k0 || app.got_subcommand("counterexample") || app.got_subcommand("pad-to-c") ||
                       app.got_subcommand("self-test");
    if (!slope) ctx.cat = make_category(o);
    if (!k0 && !o.scenario.empty()) ctx.scenario = read_json_file(o.scenario);
    const Outcome r = handler(ctx);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    res.exit_code = r.exit_code;
    res.out = o.pretty ? render_pretty(r.report, ms) : r.report.dump(2) + "\n";
  } catch (const InputError& e) {
    res.exit_code = kExitInputError;
    res.err = std::string("input error: ") + e.what() + "\n";
  } catch (const std::invalid_argument& e) {
    res.exit_code = kExitInputError;
    res.err = std::string("input error: ") + e.what() + "\n";
  } catch (const Json::exception& e) {
    res.exit_code = kExitInputError;
    res.err = std::string("input error: ") + e.what() + "\n";
  } catch (const std::exception& e) {
    res.exit_code = kExitViolation;
    res.err = std::string("failure: ") + e.what() + "\n";
  }
  return res;
}

}  // namespace wstruct
