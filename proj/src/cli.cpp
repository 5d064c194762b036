#include "invk/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "invk/invariants.hpp"
#include "invk/parse.hpp"

namespace invk::cli {

namespace {

// ---------------------------------------------------------------------------
// Job decoding

// The algebra and the group acting on it.
struct Setting {
  AlgebraPtr algebra;
  std::optional<FiniteGroupAction> finite;
  std::optional<AlgebraicGroupAction> algebraic;
  std::optional<GaAction> ga;
  std::string type;
};

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::vector<std::string> strings(const Json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be a list of strings");
  std::vector<std::string> out;
  for (const auto& s : j) {
    if (!s.is_string()) throw InputError(std::string(what) + " must be a list of strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

std::vector<std::string> optional_strings(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) return {};
  return strings(j.at(key), key);
}

int get_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw InputError(std::string(what) + " must be an integer");
  return j.get<int>();
}

Rat get_rat(const Json& j) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  if (j.is_string()) {
    Rat q;
    if (q.set_str(j.get<std::string>(), 10) != 0) throw InputError("bad rational '" + j.get<std::string>() + "'");
    q.canonicalize();
    return q;
  }
  throw InputError("matrix entries must be integers or rational strings");
}

CoeffRing coefficients(const Json& c) {
  if (c.is_string()) {
    if (c == "ZZ") return CoeffRing::ZZ();
    if (c == "QQ") return CoeffRing::QQ();
  } else if (c.is_object() && c.contains("GF")) {
    return CoeffRing::GF(Int(get_int(c.at("GF"), "GF")));
  }
  throw InputError("coeff must be \"ZZ\", \"QQ\" or {\"GF\": p}");
}

bool flag(const Json& j, const char* key, bool dflt) {
  if (!j.is_object() || !j.contains(key)) return dflt;
  if (!j.at(key).is_boolean()) throw InputError(std::string(key) + " must be a boolean");
  return j.at(key).get<bool>();
}

AlgebraPtr algebra_from(const Json& ring) {
  CoeffRing k = coefficients(field(ring, "coeff"));
  std::vector<std::string> vars = strings(field(ring, "vars"), "vars");
  std::vector<std::string> rels = optional_strings(ring, "relations");
  if (flag(ring, "laurent", false)) {
    if (!rels.empty() || ring.contains("order") || ring.contains("grading"))
      throw InputError("Laurent rings take no relations, order or grading");
    return laurent_algebra(k, vars);
  }
  RingPtr r = ring.contains("order")
                  ? PolyRing::make(k, vars, parse_order(field(ring, "order").get<std::string>(), vars))
                  : PolyRing::make(k, vars);
  std::vector<Poly> rp;
  for (const auto& s : rels) rp.push_back(parse_poly(s, *r));
  std::vector<int> grading;
  if (ring.contains("grading"))
    for (const auto& g : ring.at("grading")) grading.push_back(get_int(g, "grading"));
  if (!grading.empty() && grading.size() != vars.size()) throw InputError("grading needs one degree per variable");
  return make_algebra(r, rp, flag(ring, "domain", true), grading);
}

Setting setting_from(const Json& job) {
  const Json& ring = field(job, "ring");
  const Json& action = field(job, "action");
  Setting s;
  s.type = field(action, "type").get<std::string>();
  if (s.type == "multiplicative") {
    std::vector<IntMatrix> mats;
    for (const auto& m : field(action, "matrices")) {
      IntMatrix M;
      for (const auto& row : m) {
        std::vector<long> r;
        for (const auto& e : row) r.push_back(get_int(e, "matrix entry"));
        M.push_back(r);
      }
      mats.push_back(M);
    }
    if (ring.contains("relations")) throw InputError("multiplicative actions take no relations");
    s.finite = multiplicative_action(coefficients(field(ring, "coeff")), strings(field(ring, "vars"), "vars"), mats);
    s.algebra = s.finite->algebra;
    return s;
  }
  AlgebraPtr A = algebra_from(ring);
  s.algebra = A;
  if (s.type == "finite") {
    std::vector<Automorphism> gens;
    for (const auto& g : field(action, "generators")) {
      Automorphism a;
      for (const auto& img : strings(g, "generator images")) a.push_back(A->parse(img));
      if (int(a.size()) != A->nvars()) throw InputError("each generator needs one image per variable");
      gens.push_back(a);
    }
    s.finite = close_group(A, gens);
  } else if (s.type == "linear") {
    std::vector<std::vector<std::vector<Rat>>> mats;
    for (const auto& m : field(action, "matrices")) {
      std::vector<std::vector<Rat>> M;
      for (const auto& row : m) {
        std::vector<Rat> r;
        for (const auto& e : row) r.push_back(get_rat(e));
        M.push_back(r);
      }
      mats.push_back(M);
    }
    s.finite = linear_action(A, mats);
  } else if (s.type == "algebraic") {
    s.algebraic = make_algebraic_action(A, strings(field(action, "group_vars"), "group_vars"),
                                        optional_strings(action, "group_ideal"),
                                        strings(field(action, "images"), "images"));
  } else if (s.type == "ga") {
    s.ga = make_ga_action(A, field(action, "parameter").get<std::string>(), strings(field(action, "images"), "images"));
    s.algebraic = s.ga->base;
  } else {
    throw InputError("unknown action type '" + s.type + "'");
  }
  return s;
}

const Json& input_of(const Json& job) {
  static const Json empty = Json::object();
  return job.contains("input") ? job.at("input") : empty;
}
const Json& options_of(const Json& job) {
  static const Json empty = Json::object();
  return job.contains("options") ? job.at("options") : empty;
}

std::optional<int> option_int(const Json& job, const char* key, std::optional<int> cli) {
  if (cli) return cli;
  const Json& o = options_of(job);
  if (o.contains(key)) return get_int(o.at(key), key);
  return std::nullopt;
}

std::optional<std::string> order_y_spec(const Json& job, const RunOptions& opts) {
  if (opts.order) return opts.order;
  const Json& o = options_of(job);
  if (o.contains("order_y")) return o.at("order_y").get<std::string>();
  return std::nullopt;
}

std::optional<MonomialOrder> order_y(const Json& job, const RunOptions& opts, const PolyRing& xr, int ny) {
  auto spec = order_y_spec(job, opts);
  if (!spec) return std::nullopt;
  return parse_order(*spec, y_names(xr.names(), ny));
}

DerksenRoute route_of(const Json& job) {
  const Json& o = options_of(job);
  if (!o.contains("route")) return DerksenRoute::Auto;
  std::string r = o.at("route").get<std::string>();
  if (r == "auto") return DerksenRoute::Auto;
  if (r == "closed-form") return DerksenRoute::ClosedForm;
  if (r == "intersection") return DerksenRoute::Intersection;
  throw InputError("route must be auto, closed-form or intersection");
}

std::vector<Poly> parse_list(const AlgebraPtr& A, const std::vector<std::string>& s) {
  std::vector<Poly> out;
  for (const auto& t : s) out.push_back(A->parse(t));
  return out;
}

const FiniteGroupAction& need_finite(const Setting& s, const std::string& cmd) {
  if (!s.finite) throw InputError(cmd + " needs a finite, linear or multiplicative action");
  return *s.finite;
}
const AlgebraicGroupAction& need_algebraic(const Setting& s, const std::string& cmd) {
  if (!s.algebraic) throw InputError(cmd + " needs an algebraic or ga action");
  return *s.algebraic;
}

// ---------------------------------------------------------------------------
// Serialization

// Grevlex, descending terms.
std::string canon(const PolyRing& r, const Poly& f) {
  RingPtr g = r.with_order(MonomialOrder::grevlex(r.nvars()));
  return g->format(g->resort(f));
}

Json canon_list(const PolyRing& r, const std::vector<Poly>& fs) {
  Json out = Json::array();
  for (const auto& f : fs) out.push_back(canon(r, f));
  return out;
}

std::string canon(const FractionField& L, const Fraction& f) {
  Fraction s = L.simplify(f);
  return L.format(s);
}

Json canon_list(const FractionField& L, const std::vector<Fraction>& fs) {
  Json out = Json::array();
  for (const auto& f : fs) out.push_back(canon(L, f));
  return out;
}

Json certificate(const std::string& check, bool passed) { return Json{{"check", check}, {"passed", passed}}; }

bool invariant(const Setting& s, const Poly& f) {
  return s.finite ? is_invariant(*s.finite, f) : is_invariant(*s.algebraic, f);
}
bool invariant(const Setting& s, const FractionField& L, const Fraction& f) {
  return s.finite ? is_invariant(*s.finite, L, f) : is_invariant(*s.algebraic, L, f);
}

bool all_invariant(const Setting& s, const std::vector<Poly>& fs) {
  for (const auto& f : fs)
    if (!invariant(s, f)) return false;
  return true;
}

// h(gens) = 0 in R for every relation h.
bool relations_vanish(const AlgebraPtr& R, const PolyRing& zr, const std::vector<Poly>& rels,
                      const std::vector<Poly>& gens) {
  for (const auto& h : rels)
    if (!R->is_zero(zr.substitute(h, *R->ring, gens))) return false;
  return true;
}

void put_ring_result(Json& out, const Setting& s, const InvariantRingResult& res) {
  const PolyRing& r = *s.algebra->ring;
  out["generators"] = canon_list(r, res.gens);
  out["relation_vars"] = res.z_ring ? Json(res.z_ring->names()) : Json::array();
  out["relations"] = res.z_ring ? canon_list(*res.z_ring, res.relations) : Json::array();
  out["localizer"] = res.localizer ? Json(canon(r, *res.localizer)) : Json(nullptr);
  out["rounds"] = res.rounds;
  Json& c = out["certificates"];
  c.push_back(certificate("generators_invariant", all_invariant(s, res.gens)));
  if (res.localizer) c.push_back(certificate("localizer_invariant", invariant(s, *res.localizer)));
  if (res.z_ring) c.push_back(certificate("relations_vanish", relations_vanish(s.algebra, *res.z_ring, res.relations, res.gens)));
}

Json derksen_json(const ExtendedDerksenGB& e) {
  Json out;
  out["generators"] = e.formatted();
  out["y_vars"] = e.y_ring->names();
  out["route"] = e.route;
  out["tame"] = e.tame;
  return out;
}

ExtendedDerksenGB derksen_for(const Setting& s, const Json& job, const RunOptions& opts) {
  if (s.finite) {
    DerksenFiniteOptions d;
    d.route = route_of(job);
    d.order_y = order_y(job, opts, *s.algebra->ring, s.algebra->nvars());
    return derksen_finite(*s.finite, d);
  }
  return derksen_algebraic(*s.algebraic, optional_strings(input_of(job), "constraints"),
                           order_y(job, opts, *s.algebra->ring, s.algebra->nvars()));
}

bool coefficients_invariant(const Setting& s, const ExtendedDerksenGB& e) {
  if (!s.finite) return true;
  for (const auto& g : e.basis)
    for (const auto& t : g)
      if (!is_invariant(*s.finite, *e.L, t.c)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Commands

Json cmd_derksen(const Setting& s, const Json& job, const RunOptions& opts) {
  ExtendedDerksenGB e = derksen_for(s, job, opts);
  Json out = derksen_json(e);
  out["relations"] = Json::array();
  out["localizer"] = nullptr;
  out["certificates"] = Json::array();
  if (s.finite) out["certificates"].push_back(certificate("coefficients_invariant", coefficients_invariant(s, e)));
  return out;
}

Json cmd_finite_invariants(const Setting& s, const Json& job, const RunOptions& opts) {
  const FiniteGroupAction& G = need_finite(s, "finite-invariants");
  FiniteInvariantOptions o;
  o.route = route_of(job);
  o.order_y = order_y(job, opts, *s.algebra->ring, s.algebra->nvars());
  o.prune = flag(options_of(job), "prune", true);
  if (auto c = option_int(job, "cap_rounds", opts.cap_rounds)) o.max_rounds = *c;
  Json out;
  out["certificates"] = Json::array();
  put_ring_result(out, s, finite_invariant_ring(G, o));
  return out;
}

Json cmd_noether(const Setting& s, const Json& job, const RunOptions&) {
  const FiniteGroupAction& G = need_finite(s, "noether-invariants");
  NoetherOptions o;
  o.enlarge_with_cover = flag(options_of(job), "cover", false);
  o.module_generators = parse_list(s.algebra, optional_strings(input_of(job), "module_generators"));
  Json out;
  out["certificates"] = Json::array();
  put_ring_result(out, s, noether_invariant_ring(G, o));
  return out;
}

Json cmd_ga(const Setting& s, const Json& job, const RunOptions&) {
  if (!s.ga) throw InputError("ga needs a ga action");
  GaLocalized g = ga_localized(*s.ga);
  const PolyRing& r = *s.algebra->ring;
  Json out;
  out["generators"] = canon_list(r, g.loc.gens);
  out["relations"] = Json::array();
  out["localizer"] = canon(r, g.loc.a);
  out["slice"] = g.slice < 0 ? Json(nullptr) : Json(r.names()[g.slice]);
  out["images"] = canon_list(*g.L, g.images);
  Json values = Json::array();
  for (const auto& p : parse_list(s.algebra, optional_strings(input_of(job), "polys")))
    values.push_back(canon(*g.L, ga_invariantize(g, p)));
  out["values"] = values;
  std::vector<Poly> all = g.loc.gens;
  all.push_back(g.loc.a);
  out["certificates"] = Json::array({certificate("generators_invariant", all_invariant(s, all))});
  return out;
}

Json cmd_localize(const Setting& s, const Json& job, const RunOptions& opts) {
  const PolyRing& r = *s.algebra->ring;
  Json out;
  out["relations"] = Json::array();
  out["certificates"] = Json::array();
  std::optional<LocalizedInvariantRing> loc;
  if (s.finite) {
    ExtendedDerksenGB e = derksen_for(s, job, opts);
    loc = localized_invariant_ring(*s.finite, e);
  } else {
    LocalizeOptions o;
    o.user_I_Z = optional_strings(input_of(job), "constraints");
    o.use_cross_section = flag(options_of(job), "cross_section", true);
    if (auto c = option_int(job, "cap_degree", opts.cap_degree)) o.degree_cap = *c;
    AlgebraicLocalization al = flag(options_of(job), "field_only", false)
                                   ? algebraic_field_generators(*s.algebraic, o)
                                   : localize_invariant_ring_algebraic(*s.algebraic, o);
    out["tame"] = al.edg.tame;
    out["field_generators"] = al.edg.tame ? canon_list(*al.edg.L, al.field_gens) : Json::array();
    if (al.edg.tame) {
      bool ok = true;
      for (const auto& f : al.field_gens) ok = ok && invariant(s, *al.edg.L, f);
      out["certificates"].push_back(certificate("field_generators_invariant", ok));
    }
    loc = al.loc;
  }
  out["generators"] = loc ? canon_list(r, loc->gens) : Json::array();
  out["localizer"] = loc ? Json(canon(r, loc->a)) : Json(nullptr);
  if (loc) {
    std::vector<Poly> all = loc->gens;
    all.push_back(loc->a);
    out["certificates"].push_back(certificate("generators_invariant", all_invariant(s, all)));
  }
  return out;
}

std::pair<std::vector<Poly>, Poly> gens_and_localizer(const Setting& s, const Json& job) {
  const Json& in = input_of(job);
  std::vector<Poly> gens = parse_list(s.algebra, strings(field(in, "generators"), "generators"));
  Poly a = s.algebra->parse(field(in, "localizer").get<std::string>());
  return {gens, a};
}

Json cmd_unlocalize(const Setting& s, const Json& job, const RunOptions& opts) {
  auto [gens, a] = gens_and_localizer(s, job);
  int rounds = option_int(job, "cap_rounds", opts.cap_rounds).value_or(kDefaultUnlocalizeRounds);
  InvariantRingResult res = unlocalize(s.algebra, gens, a, rounds);
  if (!res.localizer) res.localizer = a;
  Json out;
  out["certificates"] = Json::array();
  put_ring_result(out, s, res);
  return out;
}

DegreeInvariants degree_invariants(const Setting& s) {
  if (s.finite) return [G = *s.finite](int d) { return homogeneous_invariants(G, d); };
  return [G = *s.algebraic](int d) { return homogeneous_invariants(G, d); };
}

Json cmd_graded_unlocalize(const Setting& s, const Json& job, const RunOptions& opts) {
  auto [gens, a] = gens_and_localizer(s, job);
  int cap = option_int(job, "cap_degree", opts.cap_degree).value_or(kDefaultGradedDegreeCap);
  Json out;
  out["certificates"] = Json::array();
  put_ring_result(out, s,
                  unlocalize_graded(s.algebra, gens, a, degree_invariants(s), flag(options_of(job), "minimal", true), cap));
  return out;
}

Json cmd_master(const Setting& s, const Json& job, const RunOptions& opts) {
  const AlgebraicGroupAction& G = need_algebraic(s, "master");
  MasterOptions o;
  o.minimal = flag(options_of(job), "minimal", true);
  o.localize.user_I_Z = optional_strings(input_of(job), "constraints");
  if (auto c = option_int(job, "cap_degree", opts.cap_degree)) o.max_degree = *c;
  Json out;
  out["certificates"] = Json::array();
  put_ring_result(out, s, master_reductive(G, o));
  return out;
}

Json cmd_invariantize(const Setting& s, const Json& job, const RunOptions& opts) {
  std::vector<Poly> ps = parse_list(s.algebra, strings(field(input_of(job), "polys"), "polys"));
  Json out;
  out["relations"] = Json::array();
  out["localizer"] = nullptr;
  Json values = Json::array();
  bool ok = true;
  if (s.ga && !flag(options_of(job), "derksen", false)) {
    GaLocalized g = ga_localized(*s.ga);
    for (const auto& p : ps) {
      Fraction v = ga_invariantize(g, p);
      ok = ok && invariant(s, *g.L, v);
      values.push_back(canon(*g.L, v));
    }
  } else {
    InvariantizationMap m{derksen_for(s, job, opts)};
    out["y_vars"] = m.edg.y_ring->names();
    for (const auto& p : ps) {
      Fraction v = invariantize(m, p);
      ok = ok && invariant(s, *m.edg.L, v);
      values.push_back(canon(*m.edg.L, v));
    }
  }
  out["generators"] = values;
  out["certificates"] = Json::array({certificate("values_invariant", ok)});
  return out;
}

Json cmd_rewrite(const Setting& s, const Json& job, const RunOptions& opts) {
  std::vector<Poly> ps = parse_list(s.algebra, strings(field(input_of(job), "polys"), "polys"));
  RewriteContext ctx = make_rewrite_context(derksen_for(s, job, opts));
  const FractionField& L = *ctx.edg.L;
  Json out;
  out["relations"] = Json::array();
  out["localizer"] = nullptr;
  out["generators"] = canon_list(L, ctx.images);
  out["t_vars"] = ctx.t_ring->names();
  Json rw = Json::array();
  bool ok = true;
  for (const auto& p : ps) {
    Rewrite w = rewrite_invariant(ctx, p);
    Json e{{"invariant", w.invariant}, {"expression", canon(*ctx.t_ring, w.g0)}};
    if (!w.invariant) e["discrepancy"] = canon(L, w.discrepancy);
    // psi(g0) = b exactly when invariant
    if (w.invariant) ok = ok && L.equal(apply_psi(ctx, w.g0), L.from_poly(s.algebra->ring->transfer_by_name(p, L.ring())));
    rw.push_back(e);
  }
  out["rewrites"] = rw;
  out["certificates"] = Json::array({certificate("rewrites_evaluate_back", ok)});
  return out;
}

using Handler = Json (*)(const Setting&, const Json&, const RunOptions&);

const std::vector<std::pair<std::string, Handler>>& handlers() {
  static const std::vector<std::pair<std::string, Handler>> h{
      {"derksen", cmd_derksen},
      {"finite-invariants", cmd_finite_invariants},
      {"noether-invariants", cmd_noether},
      {"ga", cmd_ga},
      {"localize", cmd_localize},
      {"unlocalize", cmd_unlocalize},
      {"invariantize", cmd_invariantize},
      {"rewrite", cmd_rewrite},
      {"master", cmd_master},
      {"graded-unlocalize", cmd_graded_unlocalize},
  };
  return h;
}

// ---------------------------------------------------------------------------
// Verification

struct Report {
  Json checks = Json::array();
  void add(const std::string& name, bool passed, const std::string& detail = "") {
    Json c{{"check", name}, {"passed", passed}};
    if (!detail.empty()) c["detail"] = detail;
    checks.push_back(c);
  }
};

std::vector<Poly> parse_result_list(const AlgebraPtr& A, const Json& j) {
  std::vector<Poly> out;
  for (const auto& s : j) out.push_back(parse_poly(s.get<std::string>(), *A->ring));
  return out;
}

void verify_ring_result(Report& rep, const Setting& s, const Json& res, const std::string& cmd, bool full) {
  const AlgebraPtr& R = s.algebra;
  std::vector<Poly> gens = parse_result_list(R, res.at("generators"));
  for (size_t i = 0; i < gens.size(); ++i)
    rep.add("generator_invariant[" + std::to_string(i) + "]", invariant(s, gens[i]), res.at("generators")[i]);
  std::optional<Poly> a;
  if (res.contains("localizer") && !res.at("localizer").is_null()) {
    a = parse_poly(res.at("localizer").get<std::string>(), *R->ring);
    rep.add("localizer_invariant", invariant(s, *a));
  }
  if (res.contains("relation_vars") && !res.at("relation_vars").empty()) {
    RingPtr zr = PolyRing::make(R->coeffs(), strings(res.at("relation_vars"), "relation_vars"));
    std::vector<Poly> rels;
    for (const auto& h : res.at("relations")) rels.push_back(parse_poly(h.get<std::string>(), *zr));
    rep.add("relations_vanish", relations_vanish(R, *zr, rels, gens));
  }
  if (!full) return;
  bool unloc = cmd == "finite-invariants" || cmd == "unlocalize" || cmd == "graded-unlocalize" || cmd == "master";
  if (unloc && a && !R->ring->is_constant(*a)) {
    try {
      rep.add("unlocalization_terminated", saturation_test(R, gens, *a));
    } catch (const MathError& e) {
      rep.add("unlocalization_terminated", false, e.what());
    }
  }
}

void verify_routes(Report& rep, const Setting& s) {
  if (!s.finite) return;
  DerksenFiniteOptions p;
  p.route = DerksenRoute::ClosedForm;
  ExtendedDerksenGB ep;
  try {
    ep = derksen_finite(*s.finite, p);
  } catch (const InputError&) {
    return;  // only one route applies
  }
  DerksenFiniteOptions i;
  i.route = DerksenRoute::Intersection;
  i.order_y = ep.y_ring->order();
  rep.add("routes_agree", derksen_finite(*s.finite, i).formatted() == ep.formatted());
}

Poly random_poly(const PolyRing& r, std::mt19937& rng) {
  std::uniform_int_distribution<int> coef(-4, 4), deg(0, 3);
  Poly out;
  for (int t = 0; t < 3; ++t) {
    Mono m;
    int left = deg(rng);
    for (int v = 0; v < r.nvars() && left > 0; ++v) {
      std::uniform_int_distribution<int> e(0, left);
      int k = e(rng);
      m.e[v] = uint16_t(k);
      left -= k;
    }
    out = r.add(out, r.monomial(m, r.coeffs().normalize(Rat(coef(rng)))));
  }
  return out;
}

void verify_invariantize(Report& rep, const Setting& s, const Json& job, const Json& res, const RunOptions& o, bool full,
                         unsigned seed) {
  Json again = cmd_invariantize(s, job, o);
  rep.add("values_reproduced", again.at("generators") == res.at("generators"));
  if (!full || s.ga) return;
  InvariantizationMap m{derksen_for(s, job, o)};
  const FractionField& L = *m.edg.L;
  const PolyRing& r = *s.algebra->ring;
  std::mt19937 rng(seed);
  bool linear = true, idempotent = true;
  for (int i = 0; i < 20; ++i) {
    Poly f = random_poly(r, rng), g = random_poly(r, rng);
    linear = linear && L.equal(invariantize(m, r.add(f, g)), L.add(invariantize(m, f), invariantize(m, g)));
    Fraction v = invariantize(m, f);
    // phi is the identity on its polynomial values
    if (auto p = L.try_polynomial(v); p && s.algebra->coeffs().is_field())
      idempotent = idempotent && L.equal(invariantize(m, L.ring().transfer_by_name(*p, r)), v);
  }
  rep.add("invariantization_linear", linear);
  rep.add("invariantization_idempotent", idempotent);
}

// ---------------------------------------------------------------------------
// Hashing

std::string fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json options_json(const RunOptions& o) {
  Json j = Json::object();
  j["seed"] = o.seed;
  if (o.cap_rounds) j["cap_rounds"] = *o.cap_rounds;
  if (o.cap_degree) j["cap_degree"] = *o.cap_degree;
  if (o.order) j["order"] = *o.order;
  return j;
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [n, h] : handlers()) v.push_back(n);
    v.push_back("verify");
    return v;
  }();
  return names;
}

std::string inputs_digest(const std::string& command, const Json& job, const RunOptions& opts) {
  return fnv1a(command + "\n" + job.dump() + "\n" + options_json(opts).dump());
}

Json run(const std::string& command, const Json& job, const RunOptions& opts) {
  auto start = std::chrono::steady_clock::now();
  if (!job.is_object()) throw InputError("job must be a JSON object");
  if (job.contains("command") && job.at("command") != command)
    throw InputError("job is for command '" + job.at("command").get<std::string>() + "', not '" + command + "'");
  Handler h = nullptr;
  for (const auto& [n, f] : handlers())
    if (n == command) h = f;
  if (!h) throw InputError("unknown command '" + command + "'");
  Setting s;
  try {
    s = setting_from(job);
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed job: ") + e.what());
  }
  Json body;
  try {
    body = h(s, job, opts);
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed job: ") + e.what());
  }
  Json out = body;
  out["command"] = command;
  out["inputs_digest"] = inputs_digest(command, job, opts);
  out["options"] = options_json(opts);
  out["job"] = job;
  if (opts.timing)
    out["elapsed_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return out;
}

Json verify(const Json& result, const std::string& level, unsigned seed) {
  Report rep;
  const bool full = level == "full";
  try {
    const Json& job = field(result, "job");
    std::string cmd = field(result, "command").get<std::string>();
    RunOptions o;
    const Json& ro = result.contains("options") ? result.at("options") : Json::object();
    if (ro.contains("seed")) o.seed = ro.at("seed").get<unsigned>();
    if (ro.contains("cap_rounds")) o.cap_rounds = ro.at("cap_rounds").get<int>();
    if (ro.contains("cap_degree")) o.cap_degree = ro.at("cap_degree").get<int>();
    if (ro.contains("order")) o.order = ro.at("order").get<std::string>();
    rep.add("inputs_digest", result.value("inputs_digest", "") == inputs_digest(cmd, job, o));
    Setting s = setting_from(job);
    if (cmd == "invariantize") {
      verify_invariantize(rep, s, job, result, o, full, seed);
    } else if (cmd == "derksen" || cmd == "rewrite") {
      Json again = run(cmd, job, o);
      rep.add("result_reproduced", again.at("generators") == result.at("generators"));
      if (cmd == "derksen" && s.finite) {
        ExtendedDerksenGB e = derksen_for(s, job, o);
        rep.add("coefficients_invariant", coefficients_invariant(s, e));
      }
    } else {
      verify_ring_result(rep, s, result, cmd, full);
    }
    if (full && (cmd == "derksen" || cmd == "finite-invariants" || cmd == "localize")) verify_routes(rep, s);
  } catch (const std::exception& e) {
    rep.add("verification_ran", false, e.what());
  }
  bool ok = true;
  for (const auto& c : rep.checks) ok = ok && c.at("passed").get<bool>();
  return Json{{"level", level}, {"ok", ok}, {"checks", rep.checks}};
}

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const UnsupportedBranch*>(&e)) return "unsupported-branch";
  if (dynamic_cast<const BudgetExhausted*>(&e)) return "budget-exhausted";
  if (dynamic_cast<const InputError*>(&e) || dynamic_cast<const Json::exception*>(&e)) return "input-error";
  return "error";
}

int exit_code(const std::exception& e) {
  std::string k = error_kind(e);
  if (k == "unsupported-branch") return 2;
  if (k == "budget-exhausted") return 3;
  if (k == "input-error") return 4;
  return 1;
}

int main(int argc, char** argv) {
  ::CLI::App app{"Invariant rings and fields of group actions"};
  std::string command, file, out_file, verify_level;
  RunOptions opts;
  int cap_rounds = -1, cap_degree = -1;
  std::string order;
  app.add_option("command", command, "derksen | finite-invariants | noether-invariants | ga | localize | unlocalize | "
                                     "invariantize | rewrite | master | graded-unlocalize | verify")
      ->required();
  app.add_option("file", file, "job file (a result document for verify)")->required();
  app.add_option("--seed", opts.seed, "seed for sampled checks");
  app.add_option("--cap-rounds", cap_rounds, "unlocalization round cap");
  app.add_option("--cap-degree", cap_degree, "degree cap for localizer search and graded unlocalization");
  app.add_option("--order", order, "order of the y variables, e.g. lex or \"lex(y2,y1)\"");
  app.add_option("--verify", verify_level, "verify the result: fast or full")
      ->check(::CLI::IsMember({"fast", "full"}));
  app.add_option("--out", out_file, "write the result here instead of stdout");
  app.add_flag("--timing", opts.timing, "include elapsed_ms in the result");
  try {
    app.parse(argc, argv);
  } catch (const ::CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 4;
  }
  if (cap_rounds >= 0) opts.cap_rounds = cap_rounds;
  if (cap_degree >= 0) opts.cap_degree = cap_degree;
  if (!order.empty()) opts.order = order;

  auto emit = [&](const Json& doc) {
    std::string text = doc.dump(2) + "\n";
    if (out_file.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(out_file);
      f << text;
    }
  };

  Json input;
  {
    std::ifstream f(file);
    if (!f) {
      std::cerr << "invk: cannot read " << file << "\n";
      return 4;
    }
    try {
      input = Json::parse(f);
    } catch (const Json::exception& e) {
      std::cerr << "invk: " << file << ": " << e.what() << "\n";
      return 4;
    }
  }

  if (command == "verify") {
    Json rep = verify(input, verify_level.empty() ? "fast" : verify_level, opts.seed);
    emit(rep);
    return rep.at("ok").get<bool>() ? 0 : 1;
  }
  try {
    Json res = run(command, input, opts);
    if (!verify_level.empty()) res["verification"] = verify(res, verify_level, opts.seed);
    emit(res);
    if (!verify_level.empty() && !res["verification"].at("ok").get<bool>()) return 1;
    return 0;
  } catch (const std::exception& e) {
    Json err{{"command", command}, {"error", {{"kind", error_kind(e)}, {"message", e.what()}}}};
    emit(err);
    std::cerr << "invk: " << e.what() << "\n";
    return exit_code(e);
  }
}

}  // namespace invk::cli
