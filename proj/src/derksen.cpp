#include "invk/derksen.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "invk/parse.hpp"

namespace invk {

namespace {

std::string fresh(const std::vector<std::string>& taken, std::string base) {
  while (std::find(taken.begin(), taken.end(), base) != taken.end()) base += "_";
  return base;
}

bool frac_is_one(const FractionField& L, const Fraction& c) {
  Rat v;
  return L.is_constant(c, &v) && v == 1;
}

// "c*m" pieces for formatting; returns the sign separately.
std::string format_term(const FractionField& L, const PolyRing& yr, const YTerm& t, bool& negative) {
  const int n = yr.nvars();
  bool one_mono = mono_is_one(t.m, n);
  std::string m = one_mono ? "" : yr.format_mono(t.m);
  Rat v;
  negative = false;
  if (L.is_constant(t.c, &v)) {
    if (v < 0) {
      negative = true;
      v = -v;
    }
    if (one_mono) return format_rat(v);
    if (v == 1) return m;
    return format_rat(v) + "*" + m;
  }
  Fraction c = t.c;
  const PolyRing& r = L.ring();
  bool single = r.is_constant(c.den) && c.num.size() == 1;
  if (c.num[0].c < 0) {
    negative = true;
    c = L.neg(c);
  }
  std::string cs = L.format(c);
  if (one_mono) return (single || !r.is_constant(c.den)) ? cs : "(" + cs + ")";
  if (!single) cs = "(" + cs + ")";
  return cs + "*" + m;
}

}  // namespace

std::vector<std::string> y_names(const std::vector<std::string>& taken, int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(fresh(taken, n == 1 ? "y" : "y" + std::to_string(i + 1)));
  return out;
}

YPoly yp_add(const FractionField& L, const PolyRing& yr, const YPoly& f, const YPoly& g) {
  YPoly out;
  size_t i = 0, j = 0;
  while (i < f.size() || j < g.size()) {
    int c = i == f.size() ? -1 : j == g.size() ? 1 : yr.cmp(f[i].m, g[j].m);
    if (c > 0) {
      out.push_back(f[i++]);
    } else if (c < 0) {
      out.push_back(g[j++]);
    } else {
      Fraction s = L.add(f[i].c, g[j].c);
      if (!L.is_zero(s)) out.push_back(YTerm{f[i].m, s});
      ++i;
      ++j;
    }
  }
  return out;
}

YPoly yp_scale(const FractionField& L, const YPoly& f, const Fraction& c, const Mono& m) {
  YPoly out;
  if (L.is_zero(c)) return out;
  out.reserve(f.size());
  for (const auto& t : f) out.push_back(YTerm{mono_mul(t.m, m, kMaxVars), L.mul(t.c, c)});
  return out;
}

YPoly yp_monic(const FractionField& L, const YPoly& f) {
  if (f.empty() || frac_is_one(L, f[0].c)) return f;
  return yp_scale(L, f, L.inv(f[0].c), Mono{});
}

namespace {

YPoly yp_reduce(const FractionField& L, const PolyRing& yr, YPoly f, const std::vector<YPoly>& G) {
  const int n = yr.nvars();
  YPoly done;
  while (!f.empty()) {
    bool reduced = false;
    for (const auto& g : G) {
      if (!mono_divides(g[0].m, f[0].m, n)) continue;
      Fraction c = L.div(f[0].c, g[0].c);
      f = yp_add(L, yr, f, yp_scale(L, g, L.neg(c), mono_div(f[0].m, g[0].m, n)));
      reduced = true;
      break;
    }
    if (!reduced) {
      done.push_back(f[0]);
      f.erase(f.begin());
    }
  }
  return done;
}

void sort_ascending(const PolyRing& yr, std::vector<YPoly>& G) {
  std::sort(G.begin(), G.end(), [&](const YPoly& a, const YPoly& b) { return yr.cmp(a[0].m, b[0].m) < 0; });
}

}  // namespace

std::vector<YPoly> yp_reduced_groebner(const FractionField& L, const PolyRing& yr, std::vector<YPoly> gens) {
  const int n = yr.nvars();
  std::vector<YPoly> G;
  for (auto& g : gens) {
    YPoly h = yp_monic(L, yp_reduce(L, yr, g, G));
    if (h.empty()) continue;
    if (mono_is_one(h[0].m, n)) return {h};
    G.push_back(h);
  }
  std::vector<std::pair<size_t, size_t>> pairs;
  for (size_t j = 0; j < G.size(); ++j)
    for (size_t i = 0; i < j; ++i) pairs.push_back({i, j});
  while (!pairs.empty()) {
    auto [i, j] = pairs.back();
    pairs.pop_back();
    const Mono &a = G[i][0].m, &b = G[j][0].m;
    if (mono_coprime(a, b, n)) continue;
    Mono l = mono_lcm(a, b, n);
    YPoly s = yp_add(L, yr, yp_scale(L, G[i], L.constant(Rat(1)), mono_div(l, a, n)),
                     yp_scale(L, G[j], L.constant(Rat(-1)), mono_div(l, b, n)));
    YPoly h = yp_monic(L, yp_reduce(L, yr, s, G));
    if (h.empty()) continue;
    if (mono_is_one(h[0].m, n)) return {h};
    G.push_back(h);
    for (size_t k = 0; k + 1 < G.size(); ++k) pairs.push_back({k, G.size() - 1});
  }
  // Minimize and interreduce.
  std::vector<YPoly> min;
  for (size_t i = 0; i < G.size(); ++i) {
    bool redundant = false;
    for (size_t j = 0; j < G.size() && !redundant; ++j) {
      if (i == j || !mono_divides(G[j][0].m, G[i][0].m, n)) continue;
      redundant = G[j][0].m != G[i][0].m || j < i;
    }
    if (!redundant) min.push_back(G[i]);
  }
  std::vector<YPoly> out;
  for (size_t i = 0; i < min.size(); ++i) {
    std::vector<YPoly> others;
    for (size_t j = 0; j < min.size(); ++j)
      if (j != i) others.push_back(min[j]);
    YPoly head{min[i][0]};
    YPoly tail(min[i].begin() + 1, min[i].end());
    YPoly r = yp_reduce(L, yr, tail, others);
    out.push_back(yp_monic(L, yp_add(L, yr, head, r)));
  }
  sort_ascending(yr, out);
  return out;
}

std::string ExtendedDerksenGB::format(const YPoly& f) const {
  if (f.empty()) return "0";
  std::string out;
  for (size_t i = 0; i < f.size(); ++i) {
    bool neg = false;
    std::string t = format_term(*L, *y_ring, f[i], neg);
    if (i == 0)
      out = neg ? "-" + t : t;
    else
      out += (neg ? " - " : " + ") + t;
  }
  return out;
}

std::vector<std::string> ExtendedDerksenGB::formatted() const {
  std::vector<std::string> out;
  for (const auto& g : basis) out.push_back(format(g));
  return out;
}

Fraction ExtendedDerksenGB::evaluate(const YPoly& f, const std::vector<Fraction>& images) const {
  Fraction acc = L->constant(Rat(0));
  for (const auto& t : f) {
    Fraction v = t.c;
    for (int i = 0; i < ny(); ++i)
      for (int e = 0; e < t.m.e[i]; ++e) v = L->mul(v, images[i]);
    acc = L->add(acc, v);
  }
  return acc;
}

YPoly ExtendedDerksenGB::normal_form(YPoly f) const { return yp_reduce(*L, *y_ring, std::move(f), basis); }

YPoly ExtendedDerksenGB::from_poly(const Poly& f) const {
  YPoly out;
  for (const auto& t : f) out.push_back(YTerm{t.m, L->constant(t.c)});
  return out;
}

// ---------------------------------------------------------------------------
// Finite groups

bool has_trivial_stabilizer(const FiniteGroupAction& G, const Poly& f) {
  const PresentedAlgebra& A = *G.algebra;
  Poly nf = A.nf(f);
  for (size_t i = 1; i < G.elements.size(); ++i)
    if (apply(A, G.elements[i], nf) == nf) return false;
  return true;
}

std::optional<Poly> trivial_stabilizer_generator(const FiniteGroupAction& G, const std::vector<Poly>& gens, int trials,
                                                 int height, unsigned seed) {
  for (const auto& a : gens)
    if (has_trivial_stabilizer(G, a)) return a;
  const PolyRing& r = *G.algebra->ring;
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> d(-height, height);
  for (int t = 0; t < trials; ++t) {
    Poly c;
    for (const auto& a : gens) c = r.add(c, r.scale(a, r.coeffs().from_int(d(rng))));
    if (!c.empty() && has_trivial_stabilizer(G, c)) return G.algebra->nf(c);
  }
  return std::nullopt;
}

Poly closed_form_discriminant(const FiniteGroupAction& G, const Poly& a) {
  const PresentedAlgebra& A = *G.algebra;
  const PolyRing& r = *A.ring;
  std::vector<Poly> u;
  for (const auto& s : G.elements) u.push_back(apply(A, s, a));
  Poly d = r.constant(Rat(1));
  for (size_t i = 0; i < u.size(); ++i)
    for (size_t j = 0; j < u.size(); ++j)
      if (i != j) d = A.nf(r.mul(d, r.sub(u[i], u[j])));
  return d;
}

namespace {

// Closed-form basis: a_j has trivial stabilizer and y_j is the smallest
// variable with y_j^k < y_i.
std::vector<YPoly> closed_form_basis(const FiniteGroupAction& G, const FractionField& L, const PolyRing& yr,
                                     const std::vector<Poly>& a, int j) {
  const PresentedAlgebra& A = *G.algebra;
  const PolyRing& r = *A.ring;
  const size_t N = G.order();
  std::vector<Poly> c = orbit_polynomial(G, a[j]);
  auto ymono = [&](int var, int e) {
    Mono m;
    m.e[var] = uint16_t(e);
    return m;
  };
  std::vector<YPoly> out;
  YPoly f;
  for (size_t k = N + 1; k-- > 0;)
    if (!c[k].empty()) f.push_back(YTerm{ymono(j, int(k)), L.from_poly(c[k])});
  out.push_back(f);
  // q_sigma = f / (Y - sigma a_j), d_sigma = q_sigma(sigma a_j).
  std::vector<std::vector<Poly>> q(N);
  std::vector<Poly> d(N);
  for (size_t s = 0; s < N; ++s) {
    Poly u = apply(A, G.elements[s], a[j]);
    std::vector<Poly> qs(N);
    qs[N - 1] = r.constant(Rat(1));
    for (size_t k = N - 1; k >= 1; --k) qs[k - 1] = A.nf(r.add(c[k], r.mul(u, qs[k])));
    Poly val;
    Poly upow = r.constant(Rat(1));
    for (size_t k = 0; k < N; ++k) {
      val = r.add(val, r.mul(qs[k], upow));
      upow = A.nf(r.mul(upow, u));
    }
    d[s] = A.nf(val);
    q[s] = std::move(qs);
  }
  for (int i = 0; i < int(a.size()); ++i) {
    if (i == j) continue;
    YPoly h{YTerm{ymono(i, 1), L.constant(Rat(1))}};
    YPoly tail;
    for (size_t k = N; k-- > 0;) {
      Fraction acc = L.constant(Rat(0));
      for (size_t s = 0; s < N; ++s) {
        Poly sa = apply(A, G.elements[s], a[i]);
        acc = L.add(acc, L.make(A.nf(r.mul(sa, q[s][k])), d[s]));
      }
      if (!L.is_zero(acc)) tail.push_back(YTerm{ymono(j, int(k)), L.neg(acc)});
    }
    out.push_back(yp_add(L, yr, h, tail));
  }
  sort_ascending(yr, out);
  return out;
}

// Reduced basis of the ideal of the points (sigma a_1, .., sigma a_n) over L.
std::vector<YPoly> points_basis(const FiniteGroupAction& G, const FractionField& L, const PolyRing& yr,
                                const std::vector<Poly>& a) {
  const PresentedAlgebra& A = *G.algebra;
  const PolyRing& r = *A.ring;
  const int n = yr.nvars();
  const size_t N = G.order();
  std::vector<std::vector<Poly>> pts(N);
  for (size_t s = 0; s < N; ++s)
    for (const auto& ai : a) pts[s].push_back(apply(A, G.elements[s], ai));

  struct Row {
    std::vector<Fraction> v;
    size_t pivot;
    YPoly poly;
  };
  std::vector<Row> rows;
  std::vector<YPoly> basis;
  std::vector<std::pair<Mono, std::vector<Poly>>> standard;
  auto cmp = [&](const Mono& x, const Mono& y) { return yr.cmp(x, y) < 0; };
  std::set<Mono, decltype(cmp)> cand(cmp);
  cand.insert(Mono{});
  while (!cand.empty()) {
    Mono m = *cand.begin();
    cand.erase(cand.begin());
    bool divisible = false;
    for (const auto& g : basis)
      if (mono_divides(g[0].m, m, n)) divisible = true;
    if (divisible) continue;
    std::vector<Poly> ev(N);
    if (mono_is_one(m, n)) {
      for (auto& e : ev) e = r.constant(Rat(1));
    } else {
      bool found = false;
      for (const auto& [sm, sev] : standard) {
        for (int i = 0; i < n && !found; ++i) {
          if (m.e[i] == 0) continue;
          Mono p = m;
          p.e[i]--;
          if (p != sm) continue;
          for (size_t s = 0; s < N; ++s) ev[s] = A.nf(r.mul(sev[s], pts[s][i]));
          found = true;
        }
        if (found) break;
      }
      if (!found) throw MathError("points basis: candidate without a standard predecessor");
    }
    std::vector<Fraction> v;
    for (const auto& e : ev) v.push_back(L.from_poly(e));
    YPoly poly{YTerm{m, L.constant(Rat(1))}};
    for (const auto& row : rows) {
      Fraction c = v[row.pivot];
      if (L.is_zero(c)) continue;
      for (size_t s = 0; s < N; ++s) v[s] = L.sub(v[s], L.mul(c, row.v[s]));
      poly = yp_add(L, yr, poly, yp_scale(L, row.poly, L.neg(c), Mono{}));
    }
    size_t p = 0;
    while (p < N && L.is_zero(v[p])) ++p;
    if (p == N) {
      basis.push_back(poly);
      continue;
    }
    Fraction inv = L.inv(v[p]);
    for (auto& x : v) x = L.mul(x, inv);
    rows.push_back(Row{std::move(v), p, yp_scale(L, poly, inv, Mono{})});
    standard.push_back({m, std::move(ev)});
    for (int i = 0; i < n; ++i) {
      Mono nm = m;
      nm.e[i]++;
      cand.insert(nm);
    }
  }
  sort_ascending(yr, basis);
  return basis;
}

// Index j of the smallest y variable if y_j^k < y_i for all i != j and k < N.
std::optional<int> closed_form_variable(const PolyRing& yr, size_t N) {
  const int n = yr.nvars();
  auto var = [&](int i, int e) {
    Mono m;
    m.e[i] = uint16_t(e);
    return m;
  };
  int j = 0;
  for (int i = 1; i < n; ++i)
    if (yr.cmp(var(i, 1), var(j, 1)) < 0) j = i;
  for (int i = 0; i < n; ++i)
    if (i != j && yr.cmp(var(j, int(std::max<size_t>(N, 2) - 1)), var(i, 1)) >= 0) return std::nullopt;
  return j;
}

}  // namespace

ExtendedDerksenGB derksen_finite(const FiniteGroupAction& G, const DerksenFiniteOptions& opts) {
  const AlgebraPtr& A = G.algebra;
  if (!A->prime_claimed) throw InputError("derksen_finite requires an algebra claimed to be a domain");
  ExtendedDerksenGB out;
  out.base = A;
  out.L = std::make_shared<FractionField>(A);
  std::vector<Poly> a = opts.generators;
  if (a.empty())
    for (int i = 0; i < A->nvars(); ++i) a.push_back(A->ring->variable(i));
  for (auto& x : a) x = A->nf(x);
  out.generators = a;
  const int n = int(a.size());
  std::vector<std::string> names = y_names(A->ring->names(), n);
  const CoeffRing k = A->coeffs().fraction_field();

  std::optional<int> j;
  if (opts.order_y) {
    out.y_ring = PolyRing::make(k, names, *opts.order_y);
    j = closed_form_variable(*out.y_ring, G.order());
    if (j && !has_trivial_stabilizer(G, a[*j])) j.reset();
    if (opts.route == DerksenRoute::ClosedForm && !j)
      throw InputError("the requested order does not admit the closed-form basis");
  } else if (opts.route != DerksenRoute::Intersection) {
    for (int i = 0; i < n && !j; ++i)
      if (has_trivial_stabilizer(G, a[i])) j = i;
    if (j) {
      std::vector<int> others;
      for (int i = 0; i < n; ++i)
        if (i != *j) others.push_back(i);
      std::vector<std::pair<std::vector<int>, OrderRule::Kind>> bl;
      if (!others.empty()) bl.push_back({others, OrderRule::GrevLex});
      bl.push_back({{*j}, OrderRule::GrevLex});
      out.y_ring = PolyRing::make(k, names, MonomialOrder::blocks(n, bl));
    } else if (opts.route == DerksenRoute::ClosedForm) {
      throw InputError("no generator has trivial stabilizer");
    }
  }
  if (!out.y_ring) out.y_ring = PolyRing::make(k, names);
  if (j && opts.route != DerksenRoute::Intersection) {
    out.route = "closed-form";
    out.basis = closed_form_basis(G, *out.L, *out.y_ring, a, *j);
  } else {
    out.route = "intersection";
    out.basis = points_basis(G, *out.L, *out.y_ring, a);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Algebraic groups

namespace {

struct ZYXRing {
  RingPtr ring;  // z, y, x
  RingPtr y_ring;
  std::vector<std::string> ynames;
  int nz, ny, nx;
  std::vector<int> x_map;  // xz_ring index -> ring index
};

ZYXRing make_zyx(const AlgebraicGroupAction& G, const std::optional<MonomialOrder>& order_y) {
  ZYXRing R;
  R.nz = G.nz();
  R.nx = G.nx();
  R.ny = R.nx;
  std::vector<std::string> taken = G.xz_ring->names();
  R.ynames = y_names(taken, R.ny);
  const CoeffRing k = G.xz_ring->coeffs().fraction_field();
  MonomialOrder yo = order_y ? *order_y : MonomialOrder::grevlex(R.ny);
  R.y_ring = PolyRing::make(k, R.ynames, yo);
  std::vector<std::string> names = G.z_vars;
  names.insert(names.end(), R.ynames.begin(), R.ynames.end());
  for (int i = 0; i < R.nx; ++i) names.push_back(taken[i]);
  const int total = int(names.size());
  std::vector<OrderRule> rules;
  if (R.nz > 0) {
    OrderRule z;
    for (int i = 0; i < R.nz; ++i) z.vars.push_back(i);
    rules.push_back(z);
  }
  for (auto& rr : yo.shifted_rules(R.nz, total)) rules.push_back(rr);
  OrderRule x;
  for (int i = 0; i < R.nx; ++i) x.vars.push_back(R.nz + R.ny + i);
  rules.push_back(x);
  R.ring = PolyRing::make(k, names, MonomialOrder(total, rules));
  R.x_map.resize(R.nx + R.nz);
  for (int i = 0; i < R.nx; ++i) R.x_map[i] = R.nz + R.ny + i;
  for (int i = 0; i < R.nz; ++i) R.x_map[R.nx + i] = i;
  return R;
}

std::vector<Poly> graph_ideal(const AlgebraicGroupAction& G, const ZYXRing& R) {
  std::vector<Poly> gens;
  for (const auto& p : G.base_ideal()) gens.push_back(G.xz_ring->transfer(p, *R.ring, R.x_map));
  for (int i = 0; i < R.ny; ++i)
    gens.push_back(R.ring->sub(R.ring->variable(R.nz + i), G.xz_ring->transfer(G.action_polys[i], *R.ring, R.x_map)));
  return gens;
}

MixedIdeal eliminate_z(const ZYXRing& R, const std::vector<Poly>& gens) {
  GroebnerBasis gb = groebner(R.ring, gens);
  MixedIdeal out;
  out.ny = R.ny;
  out.y_ring = R.y_ring;
  std::vector<std::string> names(R.ring->names().begin() + R.nz, R.ring->names().end());
  const int total = R.ny + R.nx;
  std::vector<OrderRule> rules;
  for (auto& rr : R.y_ring->order().shifted_rules(0, total)) rules.push_back(rr);
  OrderRule x;
  for (int i = 0; i < R.nx; ++i) x.vars.push_back(R.ny + i);
  rules.push_back(x);
  out.yx_ring = PolyRing::make(R.ring->coeffs(), names, MonomialOrder(total, rules));
  std::vector<int> map(R.ring->nvars(), -1);
  for (int i = 0; i < total; ++i) map[R.nz + i] = i;
  std::vector<bool> allowed(R.ring->nvars(), true);
  for (int i = 0; i < R.nz; ++i) allowed[i] = false;
  for (const auto& g : gb.gens)
    if (R.ring->uses_only(g, allowed)) out.gens.push_back(R.ring->transfer(g, *out.yx_ring, map));
  return out;
}

// K[x] ∩ <I_X, I_G, extra> ⊆ I_X, with extra in the xz ring.
bool elimination_within_ix(const AlgebraicGroupAction& G, const std::vector<Poly>& extra) {
  std::vector<Poly> gens = G.base_ideal();
  gens.insert(gens.end(), extra.begin(), extra.end());
  RingPtr fr = G.base_gb.ring;
  std::vector<Poly> fg;
  for (const auto& g : gens) fg.push_back(G.xz_ring->transfer_by_name(g, *fr));
  std::vector<std::string> keep(fr->names().begin(), fr->names().begin() + G.nx());
  Ideal e = elimination_ideal(fr, fg, keep);
  AlgebraPtr X = over_fraction_field(G.x_algebra);
  for (const auto& p : e.gens)
    if (!X->is_zero(e.ring->transfer_by_name(p, *X->ring))) return false;
  return true;
}

}  // namespace

MixedIdeal derksen_elimination(const AlgebraicGroupAction& G, const std::optional<MonomialOrder>& order_y) {
  ZYXRing R = make_zyx(G, order_y);
  return eliminate_z(R, graph_ideal(G, R));
}

Extension extend_with_constraints(const AlgebraicGroupAction& G, const std::vector<std::string>& f_list,
                                  const std::optional<MonomialOrder>& order_y) {
  ZYXRing R = make_zyx(G, order_y);
  std::vector<Poly> gens = graph_ideal(G, R);
  std::vector<Poly> fy, substituted;
  std::vector<int> ymap(R.ny);
  for (int i = 0; i < R.ny; ++i) ymap[i] = R.nz + i;
  RingPtr xzf = G.xz_ring->with_coeffs(R.y_ring->coeffs());
  for (const auto& s : f_list) {
    Poly f = parse_poly(s, *R.y_ring);
    fy.push_back(f);
    substituted.push_back(R.y_ring->substitute(f, *xzf, G.action_polys));
  }
  Extension out;
  out.tame = elimination_within_ix(G, substituted);
  if (out.tame) {
    for (const auto& f : fy) gens.push_back(R.y_ring->transfer(f, *R.ring, ymap));
    out.ideal = eliminate_z(R, gens);
    return out;
  }
  // Not tame: E = D + (f_list), usable only if it meets R trivially.
  out.ideal = eliminate_z(R, gens);
  const RingPtr& yx = out.ideal.yx_ring;
  std::vector<Poly> e = out.ideal.gens;
  std::vector<int> map(R.ny);
  for (int i = 0; i < R.ny; ++i) map[i] = i;
  for (const auto& f : fy) e.push_back(R.y_ring->transfer(f, *yx, map));
  out.ideal.gens = groebner(yx, e).gens;
  AlgebraPtr X = over_fraction_field(G.x_algebra);
  std::vector<bool> xonly(yx->nvars(), true);
  for (int i = 0; i < R.ny; ++i) xonly[i] = false;
  for (const auto& g : out.ideal.gens) {
    if (!yx->uses_only(g, xonly)) continue;
    if (!X->is_zero(yx->transfer_by_name(g, *X->ring)))
      throw MathError("improper extension: the extended ideal meets R");
  }
  return out;
}

Rat eta(const CoeffRing& k, long i) {
  if (k.kind() == CoeffKind::PrimeField && Int(i) >= k.prime()) throw BudgetExhausted("field elements exhausted");
  return Rat(i);
}

CrossSection cross_section_search(const AlgebraicGroupAction& G, int d, long budget) {
  const int n = G.nx();
  if (d < 0 || d > n) throw InputError("cross-section dimension out of range");
  if (d == 0) return {};
  std::vector<std::vector<int>> subsets;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (int(cur.size()) == d) {
      subsets.push_back(cur);
      return;
    }
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  long tried = 0;
  const PolyRing& r = *G.xz_ring;
  for (long s = 0;; ++s) {
    // Tuples of nonnegative integers of length d summing to s, lexicographic.
    std::vector<std::vector<long>> tuples;
    std::vector<long> t(d, 0);
    std::function<void(int, long)> gen = [&](int pos, long left) {
      if (pos == d - 1) {
        t[pos] = left;
        tuples.push_back(t);
        return;
      }
      for (long v = 0; v <= left; ++v) {
        t[pos] = v;
        gen(pos + 1, left - v);
      }
    };
    gen(0, s);
    for (const auto& idx : subsets) {
      for (const auto& tu : tuples) {
        if (++tried > budget) throw BudgetExhausted("cross-section search budget exhausted");
        std::vector<Rat> beta;
        std::vector<Poly> extra;
        for (int j = 0; j < d; ++j) {
          beta.push_back(eta(r.coeffs(), tu[j]));
          extra.push_back(r.sub(G.action_polys[idx[j]], r.constant(r.coeffs().normalize(beta.back()))));
        }
        if (elimination_within_ix(G, extra)) return CrossSection{idx, beta};
      }
    }
  }
}

int generic_orbit_dimension(const AlgebraicGroupAction& G) {
  MixedIdeal D = derksen_elimination(G);
  AlgebraPtr X = over_fraction_field(G.x_algebra);
  return krull_dimension(D.yx_ring, D.gens) - krull_dimension(X->ring, X->relations);
}

ExtendedDerksenGB reduce_over_function_field(const MixedIdeal& mixed, const AlgebraPtr& X) {
  ExtendedDerksenGB out;
  out.base = X;
  out.L = std::make_shared<FractionField>(X);
  out.y_ring = mixed.y_ring;
  for (int i = 0; i < X->nvars(); ++i) out.generators.push_back(X->ring->variable(i));
  const FractionField& L = *out.L;
  const PolyRing& lr = L.ring();
  const int ny = mixed.ny;
  const int nx = X->nvars();
  std::vector<YPoly> gens;
  for (const auto& g : mixed.gens) {
    std::map<std::vector<uint16_t>, std::vector<Term>> parts;
    std::vector<Mono> ymonos;
    for (const auto& t : g) {
      std::vector<uint16_t> key(t.m.e.begin(), t.m.e.begin() + ny);
      Term u;
      u.c = t.c;
      for (int i = 0; i < nx; ++i) u.m.e[i] = t.m.e[ny + i];
      parts[key].push_back(u);
    }
    YPoly yp;
    for (auto& [key, ts] : parts) {
      Mono m;
      for (int i = 0; i < ny; ++i) m.e[i] = key[i];
      Poly c = L.field_algebra()->nf(lr.from_terms(ts));
      if (c.empty()) continue;
      yp.push_back(YTerm{m, L.from_poly(c)});
    }
    std::sort(yp.begin(), yp.end(), [&](const YTerm& a, const YTerm& b) { return mixed.y_ring->cmp(a.m, b.m) > 0; });
    if (yp.empty()) continue;
    gens.push_back(yp);
  }
  out.basis = yp_reduced_groebner(L, *out.y_ring, gens);
  out.route = "elimination";
  return out;
}

ExtendedDerksenGB derksen_algebraic(const AlgebraicGroupAction& G, const std::vector<std::string>& f_list,
                                    const std::optional<MonomialOrder>& order_y) {
  if (f_list.empty()) {
    ExtendedDerksenGB e = reduce_over_function_field(derksen_elimination(G, order_y), G.x_algebra);
    e.tame = true;
    return e;
  }
  Extension ext = extend_with_constraints(G, f_list, order_y);
  ExtendedDerksenGB e = reduce_over_function_field(ext.ideal, G.x_algebra);
  e.tame = ext.tame;
  for (const auto& s : f_list) e.extension_polys.push_back(parse_poly(s, *e.y_ring));
  return e;
}

}  // namespace invk
