#include "invk/invariants.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "invk/parse.hpp"

namespace invk {

namespace {

std::string fresh(const std::vector<std::string>& taken, std::string base) {
  while (std::find(taken.begin(), taken.end(), base) != taken.end()) base += "_";
  return base;
}

std::vector<std::string> numbered(const std::vector<std::string>& taken, const std::string& prefix, int m) {
  std::vector<std::string> out;
  std::vector<std::string> all = taken;
  for (int i = 0; i < m; ++i) {
    std::string s = fresh(all, prefix + std::to_string(i + 1));
    out.push_back(s);
    all.push_back(s);
  }
  return out;
}

// Ring on x names then extra names, block x > extra, grevlex inside.
RingPtr two_block_ring(const CoeffRing& k, const std::vector<std::string>& xs, const std::vector<std::string>& ts) {
  std::vector<std::string> names = xs;
  names.insert(names.end(), ts.begin(), ts.end());
  const int nx = int(xs.size()), nt = int(ts.size());
  std::vector<int> xv(nx), tv(nt);
  std::iota(xv.begin(), xv.end(), 0);
  std::iota(tv.begin(), tv.end(), nx);
  std::vector<std::pair<std::vector<int>, OrderRule::Kind>> bl;
  if (nx) bl.push_back({xv, OrderRule::GrevLex});
  if (nt) bl.push_back({tv, OrderRule::GrevLex});
  return PolyRing::make(k, names, MonomialOrder::blocks(nx + nt, bl));
}

std::vector<int> iota_map(int n, int shift = 0) {
  std::vector<int> m(n);
  std::iota(m.begin(), m.end(), shift);
  return m;
}

bool uses_only_tail(const PolyRing& r, const Poly& f, int from) {
  std::vector<bool> allowed(r.nvars(), false);
  for (int i = from; i < r.nvars(); ++i) allowed[i] = true;
  return r.uses_only(f, allowed);
}

// Move a polynomial of `big` that only uses variables from..end into `small`.
Poly tail_down(const PolyRing& big, const Poly& f, const PolyRing& small, int from) {
  std::vector<int> map(big.nvars(), -1);
  for (int i = from; i < big.nvars(); ++i) map[i] = i - from;
  return big.transfer(f, small, map);
}

int weight_of(const std::vector<int>& grading, int i) { return grading.empty() ? 1 : grading[i]; }

// All monomials of weighted degree d in n variables.
std::vector<Mono> monomials_of_degree(int n, const std::vector<int>& grading, int d) {
  std::vector<Mono> out;
  Mono m;
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == n) {
      if (left == 0) out.push_back(m);
      return;
    }
    int w = weight_of(grading, i);
    for (int e = 0; e * w <= left; ++e) {
      m.e[i] = uint16_t(e);
      rec(i + 1, left - e * w);
    }
    m.e[i] = 0;
  };
  rec(0, d);
  return out;
}

std::vector<Mono> monomials_up_to(int n, int d) {
  std::vector<Mono> out;
  for (int k = 0; k <= d; ++k) {
    auto part = monomials_of_degree(n, {}, k);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

// Coordinates of polynomials on a shared monomial index.
struct MonoIndex {
  std::map<std::vector<uint16_t>, int> idx;
  std::vector<Mono> monos;
  int nvars;
  explicit MonoIndex(int n) : nvars(n) {}
  int of(const Mono& m) {
    std::vector<uint16_t> key(m.e.begin(), m.e.begin() + nvars);
    auto it = idx.find(key);
    if (it != idx.end()) return it->second;
    int k = int(monos.size());
    idx[key] = k;
    monos.push_back(m);
    return k;
  }
  SparseVec vec(const Poly& f) {
    SparseVec v;
    for (const auto& t : f) v[of(t.m)] = t.c;
    return v;
  }
};

// Rows of a nullspace basis turned into polynomials on the given monomials,
// echelonized so that distinct elements have distinct leading monomials.
std::vector<Poly> polys_from_solutions(const PolyRing& r, const std::vector<Mono>& monos,
                                       const std::vector<std::vector<Rat>>& sols) {
  std::vector<Poly> ps;
  for (const auto& s : sols) {
    std::vector<Term> ts;
    for (size_t i = 0; i < monos.size(); ++i)
      if (s[i] != 0) ts.push_back(Term{monos[i], s[i]});
    ps.push_back(r.from_terms(ts));
  }
  // Gauss-Jordan on leading monomials.
  std::vector<Poly> out;
  for (auto p : ps) {
    for (const auto& q : out) {
      for (const auto& t : p)
        if (t.m == q[0].m) {
          p = r.sub(p, r.scale(q, t.c));
          break;
        }
    }
    if (p.empty()) continue;
    p = r.normalize_lc(p);
    for (auto& q : out)
      for (const auto& t : q)
        if (t.m == p[0].m) {
          q = r.sub(q, r.scale(p, t.c));
          break;
        }
    out.push_back(p);
  }
  for (auto& q : out) q = r.normalize_lc(q);
  std::sort(out.begin(), out.end(), [&](const Poly& a, const Poly& b) { return r.cmp(a[0].m, b[0].m) > 0; });
  return out;
}

Fraction frac_pow(const FractionField& L, const Fraction& f, unsigned e) {
  Fraction out = L.constant(Rat(1));
  for (unsigned i = 0; i < e; ++i) out = L.mul(out, f);
  return out;
}

}  // namespace

namespace {

// Positively graded with homogeneous relations, and all of `fs` homogeneous
// of positive degree: membership reduces to linear algebra in each degree.
bool graded_membership_applies(const PresentedAlgebra& R, const std::vector<Poly>& fs) {
  if (!R.laurent_pairs.empty()) return false;
  for (int i = 0; i < R.nvars(); ++i)
    if (weight_of(R.grading, i) < 1) return false;
  for (const auto& g : R.relations)
    if (!R.is_homogeneous(g)) return false;
  for (const auto& f : fs)
    if (R.ring->is_constant(f) || !R.is_homogeneous(f)) return false;
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// Subalgebras

SubalgebraTest::SubalgebraTest(AlgebraPtr R, std::vector<Poly> gens, const std::string& tprefix)
    : R_(std::move(R)), gens_(std::move(gens)) {
  const PolyRing& xr = *R_->ring;
  const int nx = xr.nvars(), m = int(gens_.size());
  std::vector<std::string> tn = numbered(xr.names(), tprefix, m);
  big_ = two_block_ring(xr.coeffs(), xr.names(), tn);
  t_ring_ = PolyRing::make(xr.coeffs(), tn);
  std::vector<Poly> hat;
  auto up = iota_map(nx);
  for (const auto& g : R_->relations) hat.push_back(xr.transfer(g, *big_, up));
  for (int i = 0; i < m; ++i) hat.push_back(big_->sub(big_->variable(nx + i), xr.transfer(gens_[i], *big_, up)));
  gb_ = groebner(big_, hat);
}

std::optional<Poly> SubalgebraTest::express(const Poly& f) const {
  const PolyRing& xr = *R_->ring;
  const int nx = xr.nvars();
  Poly nf = normal_form(xr.transfer(f, *big_, iota_map(nx)), gb_);
  if (!uses_only_tail(*big_, nf, nx)) return std::nullopt;
  return tail_down(*big_, nf, *t_ring_, nx);
}

std::vector<Poly> SubalgebraTest::relations() const {
  const int nx = R_->nvars();
  std::vector<Poly> out;
  for (const auto& g : gb_.gens)
    if (uses_only_tail(*big_, g, nx)) out.push_back(tail_down(*big_, g, *t_ring_, nx));
  return out;
}

bool algebra_contains(const AlgebraPtr& R, const std::vector<Poly>& big, const std::vector<Poly>& small) {
  SubalgebraTest t(R, big);
  for (const auto& f : small)
    if (!t.contains(f)) return false;
  return true;
}

bool algebras_equal(const AlgebraPtr& R, const std::vector<Poly>& a, const std::vector<Poly>& b) {
  return algebra_contains(R, a, b) && algebra_contains(R, b, a);
}

namespace {

// Normalized generators without constants, repeats and members of the
// algebra of the others; `keep` (already normalized) is never dropped.
std::vector<Poly> prune_except(const AlgebraPtr& R, std::vector<Poly> gens, const Poly* keep) {
  const PolyRing& r = *R->ring;
  std::vector<Poly> cand;
  for (auto& g : gens) {
    g = R->nf(g);
    if (r.is_constant(g)) continue;
    g = r.sub(g, r.constant(r.constant_term(g)));
    if (g[0].c < 0) g = r.neg(g);
    bool dup = false;
    for (const auto& h : cand)
      if (h == g || h == r.neg(g)) dup = true;
    if (!dup) cand.push_back(g);
  }
  std::vector<size_t> order(cand.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    int da = R->weighted_degree(cand[a]), db = R->weighted_degree(cand[b]);
    if (da != db) return da > db;
    return cand[a].size() > cand[b].size();
  });
  const bool graded = graded_membership_applies(*R, cand);
  std::vector<bool> alive(cand.size(), true);
  for (size_t i : order) {
    if (keep && cand[i] == *keep) continue;
    std::vector<Poly> rest;
    for (size_t j = 0; j < cand.size(); ++j)
      if (j != i && alive[j]) rest.push_back(cand[j]);
    bool member = graded ? homogeneous_member(R, rest, cand[i]) : SubalgebraTest(R, rest).contains(cand[i]);
    if (member) alive[i] = false;
  }
  std::vector<Poly> out;
  for (size_t j = 0; j < cand.size(); ++j)
    if (alive[j]) out.push_back(cand[j]);
  return out;
}

Poly positive(const PolyRing& r, const Poly& f) { return !f.empty() && f[0].c < 0 ? r.neg(f) : f; }

}  // namespace

std::vector<Poly> prune_generators(const AlgebraPtr& R, std::vector<Poly> gens) {
  return prune_except(R, std::move(gens), nullptr);
}

// ---------------------------------------------------------------------------
// Coefficients, localization, invariantization

std::vector<Fraction> coefficient_algebra(const ExtendedDerksenGB& e) {
  const FractionField& L = *e.L;
  std::vector<Fraction> out;
  for (const auto& g : e.basis)
    for (const auto& t : g) {
      if (L.is_constant(t.c)) continue;
      Fraction c = L.simplify(t.c);
      if (c.num[0].c < 0) c = L.neg(c);
      bool seen = false;
      for (const auto& d : out)
        if (L.equal(c, d)) seen = true;
      if (!seen) out.push_back(c);
    }
  return out;
}

std::vector<Fraction> invariant_field(const ExtendedDerksenGB& e) {
  if (!e.tame) throw InputError("invariant field generators need a tamely extended Derksen ideal");
  return coefficient_algebra(e);
}

LocalizedInvariantRing localized_invariant_ring(const ExtendedDerksenGB& e, const Poly& a, int k_max) {
  LocalizedInvariantRing out;
  out.algebra = e.base;
  out.a = e.base->nf(a);
  out.source = e.route;
  for (const auto& c : coefficient_algebra(e)) {
    auto [k, b] = clear_denominators(*e.L, c, a, k_max);
    (void)k;
    b = e.base->nf(b);
    if (e.base->ring->is_constant(b)) continue;
    bool dup = false;
    for (const auto& h : out.gens)
      if (h == b) dup = true;
    if (!dup) out.gens.push_back(b);
  }
  return out;
}

LocalizedInvariantRing localized_invariant_ring(const FiniteGroupAction& G, const ExtendedDerksenGB& e) {
  const FractionField& L = *e.L;
  const PolyRing& fr = L.ring();
  const AlgebraPtr& A = G.algebra;
  const bool integral = !A->coeffs().is_field();
  Poly D = fr.constant(Rat(1));
  Int ilcm = 1;
  for (const auto& c : coefficient_algebra(e)) {
    Poly den = c.den;
    Poly prim = fr.make_primitive(den);
    Rat content = den[0].c / prim[0].c;
    if (integral) {
      Int cn = abs(content.get_num());
      mpz_lcm(ilcm.get_mpz_t(), ilcm.get_mpz_t(), cn.get_mpz_t());
    }
    if (fr.is_constant(prim)) continue;
    Poly g = gcd_poly(fr, D, prim);
    D = fr.make_primitive(fr.mul(D, *divide_exact(fr, prim, g)));
  }
  Poly d = A->nf(fr.scale(D, Rat(ilcm)));
  Poly a;
  if (fr.is_constant(d)) {
    a = d;
  } else {
    std::vector<Poly> orbit;
    Poly distinct = fr.constant(Rat(1)), full = fr.constant(Rat(1));
    for (const auto& s : G.elements) {
      Poly sd = apply(*A, s, d);
      full = A->nf(fr.mul(full, sd));
      Poly key = fr.make_primitive(sd);
      bool seen = false;
      for (const auto& o : orbit)
        if (o == key) seen = true;
      if (!seen) {
        orbit.push_back(key);
        distinct = A->nf(fr.mul(distinct, sd));
      }
    }
    a = is_invariant(G, distinct) ? distinct : full;
    a = integral ? positive(fr, a) : fr.normalize_lc(a);
  }
  LocalizedInvariantRing out = localized_invariant_ring(e, a, 4 * int(G.order()) + 4);
  out.source = "finite/" + e.route;
  return out;
}

Fraction invariantize_y(const InvariantizationMap& map, const YPoly& f) {
  YPoly nf = map.edg.normal_form(f);
  const int n = map.edg.ny();
  for (const auto& t : nf)
    if (mono_is_one(t.m, n)) return t.c;
  return map.edg.L->constant(Rat(0));
}

namespace {

void require_variable_generators(const ExtendedDerksenGB& e) {
  const PolyRing& r = *e.base->ring;
  if (int(e.generators.size()) != r.nvars() || e.ny() != r.nvars())
    throw InputError("representing an element needs the variables as Derksen generators");
  for (int i = 0; i < r.nvars(); ++i)
    if (e.generators[i] != r.variable(i)) throw InputError("representing an element needs the variables as Derksen generators");
}

}  // namespace

Fraction invariantize(const InvariantizationMap& map, const Poly& b) {
  require_variable_generators(map.edg);
  const ExtendedDerksenGB& e = map.edg;
  Poly f = e.y_ring->from_terms(std::vector<Term>(b.begin(), b.end()));
  return invariantize_y(map, e.from_poly(f));
}

Fraction evaluate_fractions(const FractionField& L, const PolyRing& r, const Poly& f,
                            const std::vector<Fraction>& images) {
  const int n = r.nvars();
  std::vector<std::vector<Fraction>> powers(n);
  auto power = [&](int i, int e) -> Fraction {
    auto& p = powers[i];
    if (p.empty()) p.push_back(L.constant(Rat(1)));
    while (int(p.size()) <= e) p.push_back(L.mul(p.back(), images[i]));
    return p[e];
  };
  Fraction acc = L.constant(Rat(0));
  for (const auto& t : f) {
    Fraction term = L.constant(t.c);
    for (int i = 0; i < n; ++i)
      if (t.m.e[i]) term = L.mul(term, power(i, t.m.e[i]));
    acc = L.add(acc, term);
  }
  return L.simplify(acc);
}

RewriteContext make_rewrite_context(const ExtendedDerksenGB& e) {
  RewriteContext ctx;
  ctx.edg = e;
  ctx.images = coefficient_algebra(e);
  const FractionField& L = *e.L;
  const PolyRing& yr = *e.y_ring;
  const int ny = yr.nvars(), nt = int(ctx.images.size());
  std::vector<std::string> taken = yr.names();
  taken.insert(taken.end(), e.base->ring->names().begin(), e.base->ring->names().end());
  std::vector<std::string> tn = numbered(taken, "t", nt);
  std::vector<std::string> names = yr.names();
  names.insert(names.end(), tn.begin(), tn.end());
  std::vector<OrderRule> rules = yr.order().shifted_rules(0, ny + nt);
  std::vector<int> tv = iota_map(nt, ny);
  if (nt) rules.push_back(OrderRule{OrderRule::GrevLex, tv, {}});
  const CoeffRing k = yr.coeffs();
  ctx.yt_ring = PolyRing::make(k, names, MonomialOrder(ny + nt, rules));
  ctx.t_ring = PolyRing::make(k, tn);
  for (const auto& g : e.basis) {
    std::vector<Term> ts;
    for (const auto& t : g) {
      Rat v;
      if (L.is_constant(t.c, &v)) {
        ts.push_back(Term{t.m, v});
        continue;
      }
      int idx = -1;
      Rat sign(1);
      for (int j = 0; j < nt && idx < 0; ++j)
        if (L.equal(t.c, ctx.images[j])) {
          idx = j;
        } else if (L.equal(L.neg(t.c), ctx.images[j])) {
          idx = j;
          sign = -1;
        }
      Term u{t.m, sign};
      u.m.e[ny + idx] = 1;
      ts.push_back(u);
    }
    ctx.basis_t.push_back(ctx.yt_ring->from_terms(ts));
  }
  return ctx;
}

Fraction apply_psi(const RewriteContext& ctx, const Poly& g0) {
  return evaluate_fractions(*ctx.edg.L, *ctx.t_ring, g0, ctx.images);
}

Rewrite rewrite_invariant(const RewriteContext& ctx, const Poly& b) {
  require_variable_generators(ctx.edg);
  const FractionField& L = *ctx.edg.L;
  const int ny = ctx.edg.ny();
  Poly f = ctx.yt_ring->from_terms(std::vector<Term>(b.begin(), b.end()));
  Poly r = reduce_by(*ctx.yt_ring, f, ctx.basis_t);
  std::vector<Term> g0;
  for (const auto& t : r) {
    bool pure_t = true;
    for (int i = 0; i < ny; ++i)
      if (t.m.e[i]) pure_t = false;
    if (!pure_t) continue;
    Term u;
    u.c = t.c;
    for (int i = ny; i < ctx.yt_ring->nvars(); ++i) u.m.e[i - ny] = t.m.e[i];
    g0.push_back(u);
  }
  Rewrite out;
  out.g0 = ctx.t_ring->from_terms(g0);
  Fraction value = apply_psi(ctx, out.g0);
  Fraction bb = L.from_poly(L.field_algebra()->nf(L.ring().from_terms(std::vector<Term>(b.begin(), b.end()))));
  out.invariant = L.equal(value, bb);
  if (!out.invariant) out.discrepancy = L.simplify(L.sub(value, bb));
  return out;
}

// ---------------------------------------------------------------------------
// Unlocalization

InvariantRingResult unlocalize(const AlgebraPtr& R, std::vector<Poly> gens, const Poly& a0, int max_rounds) {
  const PolyRing& xr = *R->ring;
  const CoeffRing& k = xr.coeffs();
  const int nx = xr.nvars();
  InvariantRingResult out;
  out.algebra = R;
  Poly a = positive(xr, R->nf(a0));
  if (a.empty()) throw InputError("the localizer must be nonzero");
  std::vector<Poly> fs;
  for (auto& g : gens) {
    g = R->nf(g);
    if (xr.is_constant(g)) continue;
    if (std::find(fs.begin(), fs.end(), g) == fs.end()) fs.push_back(g);
  }
  // g with g(f) = a
  std::vector<std::string> zn0 = numbered(xr.names(), "z", int(fs.size()));
  RingPtr z0 = PolyRing::make(k, zn0);
  Poly gz;
  if (xr.is_constant(a)) {
    gz = z0->constant(a[0].c);
  } else {
    auto it = std::find(fs.begin(), fs.end(), a);
    if (it != fs.end()) {
      gz = z0->variable(int(it - fs.begin()));
    } else {
      SubalgebraTest t(R, fs, "z");
      auto e = t.express(a);
      if (!e) throw InputError("the localizer does not lie in the given subalgebra");
      gz = t.t_ring()->transfer(*e, *z0, iota_map(int(fs.size())));
    }
  }
  RingPtr zr_prev = z0;
  for (int round = 0;; ++round) {
    const int m = int(fs.size());
    std::vector<std::string> zn = numbered(xr.names(), "z", m);
    RingPtr big = two_block_ring(k, xr.names(), zn);
    RingPtr zr = PolyRing::make(k, zn);
    auto a_at = std::find(fs.begin(), fs.end(), a);
    if (a_at != fs.end())
      gz = zr->variable(int(a_at - fs.begin()));
    else
      gz = zr_prev->transfer(gz, *zr, iota_map(zr_prev->nvars()));
    zr_prev = zr;
    auto up = iota_map(nx);
    std::vector<Poly> lhat;
    for (const auto& g : R->relations) lhat.push_back(xr.transfer(g, *big, up));
    for (int i = 0; i < m; ++i) lhat.push_back(big->sub(big->variable(nx + i), xr.transfer(fs[i], *big, up)));
    GroebnerBasis gl = groebner(big, lhat);
    std::vector<Poly> J;
    for (const auto& g : gl.gens)
      if (uses_only_tail(*big, g, nx)) J.push_back(tail_down(*big, g, *zr, nx));
    out.gens = fs;
    out.z_ring = zr;
    out.relations = J;
    out.rounds = round;
    if (xr.is_constant(a) && k.is_unit(a[0].c)) return out;

    Poly g_big = zr->transfer(gz, *big, iota_map(m, nx));
    std::vector<Poly> mhat = gl.gens;
    mhat.push_back(g_big);
    GroebnerBasis gm = groebner(big, mhat);
    std::vector<Poly> Lz = J;
    Lz.push_back(gz);
    GroebnerBasis gLz = groebner(zr, Lz);
    std::vector<Poly> hs;
    for (const auto& g : gm.gens)
      if (uses_only_tail(*big, g, nx)) {
        Poly h = tail_down(*big, g, *zr, nx);
        if (!normal_form(h, gLz).empty()) hs.push_back(h);
      }
    if (hs.empty()) return out;
    if (round >= max_rounds)
      throw BudgetExhausted("unlocalize: no stable generating set after " + std::to_string(max_rounds) +
                            " rounds (the invariant ring may not be finitely generated)");

    // g(f) * f_new = h(f) modulo I, via cofactors.
    Poly gf = R->nf(zr->substitute(gz, xr, fs));
    std::vector<Poly> jp{gf};
    jp.insert(jp.end(), R->relations.begin(), R->relations.end());
    GroebnerBasis gj = groebner(R->ring, jp, true);
    std::vector<Poly> fresh_gens;
    for (const auto& h : hs) {
      Poly hf = R->nf(zr->substitute(h, xr, fs));
      std::vector<Poly> q;
      Poly rem = reduce_by(xr, hf, gj.gens, &q);
      if (!rem.empty()) throw MathError("unlocalize: h(f) is not a multiple of the localizer");
      Poly c = xr.zero();
      for (size_t i = 0; i < q.size(); ++i)
        if (!q[i].empty()) c = xr.add(c, xr.mul(q[i], gj.cofactors[i][0]));
      c = R->nf(c);
      if (xr.is_constant(c)) continue;
      fresh_gens.push_back(xr.sub(c, xr.constant(xr.constant_term(c))));
    }
    // Admit candidates not yet in the algebra, smallest first.
    std::stable_sort(fresh_gens.begin(), fresh_gens.end(), [&](const Poly& p, const Poly& q) {
      int dp = R->weighted_degree(p), dq = R->weighted_degree(q);
      return dp != dq ? dp < dq : p.size() < q.size();
    });
    std::optional<SubalgebraTest> current;
    for (const auto& c : fresh_gens) {
      std::vector<Poly> with = fs;
      with.push_back(c);
      if (graded_membership_applies(*R, with)) {
        if (homogeneous_member(R, fs, c)) continue;
      } else {
        if (!current) current.emplace(R, fs, "z");
        if (current->contains(c)) continue;
      }
      fs.push_back(c);
      current.reset();
    }
    if (int(fs.size()) == m) throw MathError("unlocalize: no new generators extracted");
    // Cheap pruning keeps the tag rings small; a stays as a generator.
    if (std::find(fs.begin(), fs.end(), a) != fs.end() && graded_membership_applies(*R, fs))
      fs = prune_except(R, fs, &a);
  }
}

namespace {

void finish_pruned(InvariantRingResult& res) {
  SubalgebraTest t(res.algebra, res.gens, "z");
  res.z_ring = t.t_ring();
  res.relations = t.relations();
}

}  // namespace

InvariantRingResult finite_invariant_ring(const FiniteGroupAction& G, const FiniteInvariantOptions& opts) {
  DerksenFiniteOptions d;
  d.route = opts.route;
  d.order_y = opts.order_y;
  ExtendedDerksenGB e = derksen_finite(G, d);
  LocalizedInvariantRing loc = localized_invariant_ring(G, e);
  std::vector<Poly> B = loc.gens;
  if (!G.algebra->ring->is_constant(loc.a)) B.insert(B.begin(), loc.a);
  if (opts.prune) {
    Poly a = positive(*G.algebra->ring, G.algebra->nf(loc.a));
    B = prune_except(G.algebra, B, G.algebra->ring->is_constant(a) ? nullptr : &a);
  }
  InvariantRingResult res = unlocalize(G.algebra, B, loc.a, opts.max_rounds);
  res.localizer = loc.a;
  if (opts.prune) {
    res.gens = prune_generators(G.algebra, res.gens);
    finish_pruned(res);
  }
  return res;
}

InvariantRingResult noether_invariant_ring(const FiniteGroupAction& G, const NoetherOptions& opts) {
  const AlgebraPtr& A = G.algebra;
  const PolyRing& xr = *A->ring;
  const int n = xr.nvars();
  const size_t N = G.order();
  // orbit polynomial coefficients.
  std::vector<Poly> b;
  for (int i = 0; i < n; ++i)
    for (const auto& c : orbit_polynomial(G, xr.variable(i))) {
      Poly p = A->nf(c);
      if (xr.is_constant(p)) continue;
      if (std::find(b.begin(), b.end(), p) == b.end() && std::find(b.begin(), b.end(), xr.neg(p)) == b.end())
        b.push_back(p);
    }
  InvariantRingResult res;
  res.algebra = A;
  if (b.empty()) {
    for (int i = 0; i < n; ++i) res.gens.push_back(xr.variable(i));
    res.gens = prune_generators(A, res.gens);
    finish_pruned(res);
    return res;
  }
  // module generators, c_1 = 1.
  std::vector<Poly> c = opts.module_generators;
  if (c.empty()) {
    Mono m;
    std::function<void(int)> rec = [&](int i) {
      if (i == n) {
        c.push_back(A->nf(xr.monomial(m, Rat(1))));
        return;
      }
      for (size_t e = 0; e < N; ++e) {
        m.e[i] = uint16_t(e);
        rec(i + 1);
      }
      m.e[i] = 0;
    };
    rec(0);
    std::vector<Poly> uniq;
    for (const auto& p : c)
      if (!p.empty() && std::find(uniq.begin(), uniq.end(), p) == uniq.end()) uniq.push_back(p);
    c = uniq;
  }
  if (c.empty() || c[0] != xr.constant(Rat(1))) c.insert(c.begin(), xr.constant(Rat(1)));
  const int r = int(c.size());
  // eta.
  AlgebraMapKernel ker = algebra_map_kernel(A->ring, A->relations, b, c);
  RingPtr P = ker.P;
  const auto& eta = ker.kernel;
  const int me = int(eta.size());
  // psi(e_j) for each generator sigma_i.
  const int s = int(G.generators.size());
  std::vector<std::vector<std::vector<Poly>>> psi(s, std::vector<std::vector<Poly>>(r));
  for (int i = 0; i < s; ++i) {
    const Automorphism& sg = G.elements[G.generators[i]];
    for (int j = 0; j < r; ++j) {
      std::vector<Poly> h = c;
      h.push_back(apply(*A, sg, c[j]));
      AlgebraMapKernel kj = algebra_map_kernel(A->ring, A->relations, b, h);
      if (!kj.unit_last) throw MathError("noether: could not express a group image in the module generators");
      std::vector<Poly> v(r);
      for (int l = 0; l < r; ++l) v[l] = kj.P->transfer(P->neg((*kj.unit_last)[l]), *P, iota_map(P->nvars()));
      v[j] = P->sub(v[j], P->constant(Rat(1)));
      psi[i][j] = v;
    }
  }
  // kernel of (-psi) ⊕ eta^{⊕s}, rows r*s.
  const int rows = r * s, cols = r + me * s;
  std::vector<std::vector<Poly>> mat(rows, std::vector<Poly>(cols));
  for (int i = 0; i < s; ++i)
    for (int l = 0; l < r; ++l) {
      int row = i * r + l;
      for (int j = 0; j < r; ++j) mat[row][j] = P->neg(psi[i][j][l]);
      for (int q = 0; q < me; ++q) mat[row][r + i * me + q] = eta[q][l];
    }
  std::vector<std::vector<Poly>> M = module_kernel(P, mat);
  std::vector<Poly> out = b;
  SubalgebraTest inA(A, b);
  for (const auto& mv : M) {
    Poly v = xr.zero();
    for (int j = 0; j < r; ++j)
      if (!mv[j].empty()) v = xr.add(v, xr.mul(P->substitute(mv[j], xr, b), c[j]));
    v = A->nf(v);
    if (xr.is_constant(v) || inA.contains(v)) continue;
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  for (const auto& g : out)
    if (!is_invariant(G, g)) throw MathError("noether: produced a non-invariant element");
  res.gens = prune_generators(A, out);
  finish_pruned(res);
  return res;
}

// ---------------------------------------------------------------------------
// Algebraic groups

GaLocalized ga_localized(const GaAction& ga) {
  const AlgebraicGroupAction& G = ga.base;
  const AlgebraPtr& X = G.x_algebra;
  const PolyRing& xr = *X->ring;
  const CoeffRing& k = xr.coeffs();
  const int n = G.nx();
  GaLocalized out;
  out.L = std::make_shared<FractionField>(X);
  const FractionField& L = *out.L;
  const PolyRing& fr = L.ring();
  int best = -1;
  for (int i = 0; i < n; ++i) {
    int d = ga.degrees[i];
    if (d < 1) continue;
    if (k.characteristic() != 0 && Int(d) % k.characteristic() == 0) continue;
    if (best < 0 || d < ga.degrees[best]) best = i;
  }
  if (best < 0) throw InputError("no action polynomial has a z-degree prime to the characteristic");
  out.slice = best;
  const int di = ga.degrees[best];
  auto lift = [&](const Poly& p) { return fr.from_terms(std::vector<Term>(p.begin(), p.end())); };
  Poly gi0 = X->nf(ga.coeffs[best][di]);
  Poly gi1 = X->nf(ga.coeffs[best][di - 1]);
  out.raw_a = gi0;
  Fraction zstar = L.make(fr.neg(lift(gi1)), fr.scale(lift(gi0), Rat(di)));
  std::vector<Poly> bs;
  for (int j = 0; j < n; ++j) {
    Fraction h = L.constant(Rat(0));
    for (int e = 0; e <= ga.degrees[j]; ++e)
      if (!ga.coeffs[j][e].empty()) h = L.add(h, L.mul(L.from_poly(lift(ga.coeffs[j][e])), frac_pow(L, zstar, e)));
    h = L.simplify(h);
    out.images.push_back(h);
    auto b = L.try_polynomial(L.mul(L.from_poly(lift(fr.pow(lift(gi0), ga.degrees[j]))), h));
    if (!b) throw MathError("ga: g_{i,0}^{d_j} h_j is not a polynomial");
    bs.push_back(X->nf(*b));
  }
  // Localizer: the radical of g_{i,0} when it is invariant and in the algebra.
  Poly a = xr.normalize_lc(gi0);
  if (k.characteristic() == 0 && k.is_field() && !xr.is_constant(a)) {
    Poly rad = X->nf(squarefree_part(xr, a));
    std::vector<Poly> pool = bs;
    pool.push_back(a);
    if (rad != a && is_invariant(G, rad) && SubalgebraTest(X, pool).contains(rad)) a = rad;
  }
  std::vector<Poly> gens;
  for (auto b : bs) {
    if (b.empty()) continue;
    if (!xr.is_constant(a))
      while (true) {
        auto q = divide_exact(xr, b, a);
        if (!q || q->empty()) break;
        b = *q;
      }
    if (k.is_field()) b = xr.normalize_lc(k.kind() == CoeffKind::Rationals ? xr.make_primitive(b) : b);
    if (xr.is_constant(b) || b == a) continue;
    if (std::find(gens.begin(), gens.end(), b) == gens.end()) gens.push_back(b);
  }
  out.loc.algebra = X;
  out.loc.a = a;
  out.loc.gens = gens;
  out.loc.source = "ga";
  return out;
}

Fraction ga_invariantize(const GaLocalized& g, const Poly& f) {
  const PolyRing& fr = g.L->ring();
  return evaluate_fractions(*g.L, fr, fr.from_terms(std::vector<Term>(f.begin(), f.end())), g.images);
}

AlgebraicLocalization algebraic_field_generators(const AlgebraicGroupAction& G, const LocalizeOptions& opts) {
  AlgebraicLocalization out;
  std::vector<std::string> f_list = opts.user_I_Z;
  std::optional<CrossSection> cs;
  if (f_list.empty() && opts.use_cross_section) {
    int d = generic_orbit_dimension(G);
    if (d > 0) {
      cs = cross_section_search(G, d);
      std::vector<std::string> yn = y_names(G.x_algebra->ring->names(), G.nx());
      for (size_t j = 0; j < cs->indices.size(); ++j)
        f_list.push_back(yn[cs->indices[j]] + " - (" + format_rat(cs->values[j]) + ")");
    }
  }
  out.edg = derksen_algebraic(G, f_list);
  out.edg.cross_section = cs;
  if (out.edg.tame) out.field_gens = coefficient_algebra(out.edg);
  return out;
}

AlgebraicLocalization localize_invariant_ring_algebraic(const AlgebraicGroupAction& G, const LocalizeOptions& opts) {
  AlgebraicLocalization out = algebraic_field_generators(G, opts);
  const AlgebraPtr& X = G.x_algebra;
  const PolyRing& xr = *X->ring;
  const FractionField& L = *out.edg.L;
  const PolyRing& fr = L.ring();
  const CoeffRing k = xr.coeffs();
  if (!k.is_field()) throw InputError("localization for algebraic groups needs a field of coefficients");
  std::vector<Fraction> cs = coefficient_algebra(out.edg);
  LocalizedInvariantRing loc;
  loc.algebra = X;
  loc.source = "localize";
  bool polynomial = true;
  std::vector<Poly> direct;
  for (const auto& c : cs) {
    auto p = L.try_polynomial(c);
    if (!p) {
      polynomial = false;
      break;
    }
    direct.push_back(X->nf(*p));
  }
  if (polynomial) {
    loc.a = xr.constant(Rat(1));
    for (const auto& p : direct)
      if (!xr.is_constant(p)) loc.gens.push_back(p);
    out.loc = loc;
    return out;
  }
  const int nx = xr.nvars();
  const int kk = int(cs.size());
  const PolyRing& xzr = *G.xz_ring;
  const int nxz = xzr.nvars();
  for (int r = 0; r <= opts.degree_cap; ++r) {
    std::vector<Mono> monos;
    for (const auto& m : monomials_up_to(nx, r)) {
      Poly p = xr.monomial(m, Rat(1));
      if (X->nf(p) == p) monos.push_back(m);
    }
    const int l = int(monos.size());
    const int unknowns = l * (kk + 1);
    std::vector<SparseVec> rows;
    // f_j m_i alpha_i - h_j m_i beta_ij, coefficientwise.
    for (int j = 0; j < kk; ++j) {
      MonoIndex mi(nx);
      std::map<int, SparseVec> eqs;
      for (int i = 0; i < l; ++i) {
        Poly fm = X->nf(fr.mul_term(cs[j].num, monos[i], Rat(1)));
        Poly hm = X->nf(fr.mul_term(cs[j].den, monos[i], Rat(1)));
        for (const auto& t : fm) eqs[mi.of(t.m)][i] = k.add(eqs[mi.of(t.m)][i], t.c);
        int col = l + j * l + i;
        for (const auto& t : hm) eqs[mi.of(t.m)][col] = k.sub(eqs[mi.of(t.m)][col], t.c);
      }
      for (auto& [key, row] : eqs) {
        SparseVec clean;
        for (auto& [c, v] : row)
          if (v != 0) clean[c] = v;
        if (!clean.empty()) rows.push_back(clean);
      }
    }
    // sum alpha_i NF(m_i(g) - m_i) = 0.
    {
      MonoIndex mi(nxz);
      std::map<int, SparseVec> eqs;
      for (int i = 0; i < l; ++i) {
        Poly m = xr.monomial(monos[i], Rat(1));
        Poly diff = normal_form(xzr.sub(G.act(m), G.embed_x(m)), G.base_gb);
        for (const auto& t : diff) eqs[mi.of(t.m)][i] = k.add(eqs[mi.of(t.m)][i], t.c);
      }
      for (auto& [key, row] : eqs) {
        SparseVec clean;
        for (auto& [c, v] : row)
          if (v != 0) clean[c] = v;
        if (!clean.empty()) rows.push_back(clean);
      }
    }
    auto sols = nullspace(k, rows, unknowns);
    for (const auto& s : sols) {
      std::vector<Term> at;
      for (int i = 0; i < l; ++i)
        if (s[i] != 0) at.push_back(Term{monos[i], s[i]});
      if (at.empty()) continue;
      Poly a = xr.from_terms(at);
      Rat scale = k.inv(a[0].c);
      loc.a = xr.scale(a, scale);
      for (int j = 0; j < kk; ++j) {
        std::vector<Term> bt;
        for (int i = 0; i < l; ++i)
          if (s[l + j * l + i] != 0) bt.push_back(Term{monos[i], s[l + j * l + i]});
        Poly b = xr.scale(xr.from_terms(bt), scale);
        if (!xr.is_constant(b) && std::find(loc.gens.begin(), loc.gens.end(), b) == loc.gens.end())
          loc.gens.push_back(b);
      }
      out.loc = loc;
      return out;
    }
  }
  throw BudgetExhausted("no localizer up to degree " + std::to_string(opts.degree_cap) +
                        ": either the invariant field is not the fraction field of the invariant ring, or the "
                        "degree cap is too small");
}

// ---------------------------------------------------------------------------
// Graded algebras

std::vector<Poly> homogeneous_invariants(const FiniteGroupAction& G, int d) {
  const AlgebraPtr& A = G.algebra;
  const PolyRing& r = *A->ring;
  if (!A->is_free()) throw InputError("homogeneous invariants need a polynomial ring");
  if (!r.coeffs().is_field()) throw InputError("homogeneous invariants need a field of coefficients");
  std::vector<Mono> monos = monomials_of_degree(r.nvars(), A->grading, d);
  MonoIndex mi(r.nvars());
  std::vector<std::map<int, SparseVec>> eqs(G.generators.size());
  for (size_t i = 0; i < monos.size(); ++i) {
    Poly m = r.monomial(monos[i], Rat(1));
    for (size_t g = 0; g < G.generators.size(); ++g) {
      Poly diff = r.sub(apply(*A, G.elements[G.generators[g]], m), m);
      for (const auto& t : diff) {
        Rat& v = eqs[g][mi.of(t.m)][int(i)];
        v = r.coeffs().add(v, t.c);
      }
    }
  }
  std::vector<SparseVec> rows;
  for (auto& e : eqs)
    for (auto& [key, row] : e) rows.push_back(row);
  return polys_from_solutions(r, monos, nullspace(r.coeffs(), rows, int(monos.size())));
}

std::vector<Poly> homogeneous_invariants(const AlgebraicGroupAction& G, int d) {
  const AlgebraPtr& X = G.x_algebra;
  const PolyRing& r = *X->ring;
  const PolyRing& xz = *G.xz_ring;
  if (!X->is_free()) throw InputError("homogeneous invariants need a polynomial ring");
  if (!r.coeffs().is_field()) throw InputError("homogeneous invariants need a field of coefficients");
  const int nx = r.nvars();
  for (int i = 0; i < nx; ++i) {
    int want = weight_of(X->grading, i);
    for (const auto& t : G.action_polys[i]) {
      int deg = 0;
      for (int v = 0; v < nx; ++v) deg += t.m.e[v] * weight_of(X->grading, v);
      if (deg != want) throw InputError("the action does not preserve the grading");
    }
  }
  std::vector<Mono> monos = monomials_of_degree(nx, X->grading, d);
  MonoIndex mi(xz.nvars());
  std::map<int, SparseVec> eqs;
  for (size_t i = 0; i < monos.size(); ++i) {
    Poly m = r.monomial(monos[i], Rat(1));
    Poly diff = normal_form(xz.sub(G.act(m), G.embed_x(m)), G.base_gb);
    for (const auto& t : diff) {
      Rat& v = eqs[mi.of(t.m)][int(i)];
      v = r.coeffs().add(v, t.c);
    }
  }
  std::vector<SparseVec> rows;
  for (auto& [key, row] : eqs) rows.push_back(row);
  return polys_from_solutions(r, monos, nullspace(r.coeffs(), rows, int(monos.size())));
}

namespace {

// Homogeneous components by weighted degree.
std::map<int, Poly> homogeneous_parts(const PresentedAlgebra& R, const Poly& f) {
  std::map<int, std::vector<Term>> parts;
  for (const auto& t : f) {
    int deg = 0;
    for (int v = 0; v < R.nvars(); ++v) deg += t.m.e[v] * weight_of(R.grading, v);
    parts[deg].push_back(t);
  }
  std::map<int, Poly> out;
  for (auto& [d, ts] : parts) out[d] = R.ring->from_terms(ts);
  return out;
}

}  // namespace

namespace {

// Lattice (or vector space) bases of the graded pieces of K[gens], built
// degree by degree from gens * basis(d - deg gen).
class DegreeSpans {
 public:
  DegreeSpans(const AlgebraPtr& R, const std::vector<Poly>& gens) : R_(R), gens_(gens), mi_(R->nvars()) {
    for (const auto& g : gens) {
      if (!R->is_homogeneous(g) || R->ring->is_constant(g))
        throw InputError("subalgebra generators must be homogeneous and nonconstant");
      degs_.push_back(R->weighted_degree(g));
    }
  }

  const Echelon& span(int d) {
    compute(d);
    return spans_.at(d);
  }
  const std::vector<Poly>& basis(int d) {
    compute(d);
    return bases_.at(d);
  }
  SparseVec vec(const Poly& f) { return mi_.vec(f); }

 private:
  void compute(int d) {
    if (spans_.count(d)) return;
    const PolyRing& r = *R_->ring;
    Echelon ech(r.coeffs());
    std::vector<Poly> out;
    if (d == 0) {
      out.push_back(r.constant(Rat(1)));
      ech.insert(mi_.vec(out[0]));
    } else {
      for (size_t i = 0; i < gens_.size(); ++i) {
        if (degs_[i] > d) continue;
        compute(d - degs_[i]);
        for (const auto& b : bases_.at(d - degs_[i])) {
          Poly p = R_->nf(r.mul(gens_[i], b));
          if (!p.empty() && ech.insert(mi_.vec(p))) out.push_back(p);
        }
      }
    }
    spans_.emplace(d, std::move(ech));
    bases_.emplace(d, std::move(out));
  }

  AlgebraPtr R_;
  std::vector<Poly> gens_;
  std::vector<int> degs_;
  MonoIndex mi_;
  std::map<int, Echelon> spans_;
  std::map<int, std::vector<Poly>> bases_;
};

}  // namespace

std::vector<Poly> subalgebra_degree_basis(const AlgebraPtr& R, const std::vector<Poly>& gens, int d) {
  DegreeSpans spans(R, gens);
  return spans.basis(d);
}

bool homogeneous_member(const AlgebraPtr& R, const std::vector<Poly>& gens, const Poly& f) {
  DegreeSpans spans(R, gens);
  for (const auto& [d, part] : homogeneous_parts(*R, R->nf(f))) {
    if (d == 0) continue;
    if (!spans.span(d).reduce(spans.vec(part)).empty()) return false;
  }
  return true;
}

bool saturation_test(const AlgebraPtr& R, const std::vector<Poly>& gens, const Poly& a) {
  const PolyRing& xr = *R->ring;
  if (xr.is_constant(a)) {
    if (a.empty()) throw InputError("saturation test needs a nonzero element");
    return true;
  }
  const int nx = xr.nvars(), m = int(gens.size());
  std::vector<std::string> yn = numbered(xr.names(), "y", m);
  RingPtr big = two_block_ring(xr.coeffs(), xr.names(), yn);
  auto up = iota_map(nx);
  std::vector<Poly> mh{xr.transfer(a, *big, up)};
  for (const auto& g : R->relations) mh.push_back(xr.transfer(g, *big, up));
  for (int i = 0; i < m; ++i) mh.push_back(big->sub(big->variable(nx + i), xr.transfer(gens[i], *big, up)));
  Ideal M = elimination_ideal(big, mh, yn);
  const bool graded = graded_membership_applies(*R, gens);
  std::optional<SubalgebraTest> sub;
  if (!graded) sub.emplace(R, gens);
  for (const auto& h : M.gens) {
    Poly hf = R->nf(M.ring->substitute(h, xr, gens));
    auto q = divide_exact(xr, hf, a);
    if (!q) throw MathError("saturation test: element of M not divisible by a");
    if (graded ? !homogeneous_member(R, gens, *q) : !sub->contains(*q)) return false;
  }
  return true;
}

InvariantRingResult unlocalize_graded(const AlgebraPtr& R, const std::vector<Poly>& B, const Poly& a,
                                      const DegreeInvariants& invariants, bool minimal, int max_degree) {
  const PolyRing& r = *R->ring;
  std::vector<Poly> Bh;
  for (const auto& b : B)
    for (const auto& [d, p] : homogeneous_parts(*R, R->nf(b)))
      if (d > 0) Bh.push_back(p);
  if (!R->is_homogeneous(a)) throw InputError("graded unlocalization needs a homogeneous localizer");
  InvariantRingResult out;
  out.algebra = R;
  out.localizer = a;
  out.minimal = minimal;
  std::vector<Poly> A;
  for (int d = 1; d <= max_degree + 1; ++d) {
    bool contained = true;
    for (const auto& b : Bh)
      if (!homogeneous_member(R, A, b)) {
        contained = false;
        break;
      }
    if (contained && saturation_test(R, A, a)) {
      out.gens = A;
      out.rounds = d - 1;
      finish_pruned(out);
      return out;
    }
    if (d > max_degree) break;
    std::vector<Poly> S = invariants(d);
    if (minimal) {
      MonoIndex mi(r.nvars());
      Echelon ech(r.coeffs());
      for (const auto& p : subalgebra_degree_basis(R, A, d)) ech.insert(mi.vec(p));
      std::vector<Poly> keep;
      for (const auto& s : S)
        if (ech.insert(mi.vec(s))) keep.push_back(s);
      S = keep;
    }
    A.insert(A.end(), S.begin(), S.end());
  }
  throw BudgetExhausted("graded unlocalization did not stabilize up to degree " + std::to_string(max_degree));
}

InvariantRingResult master_reductive(const AlgebraicGroupAction& G, const MasterOptions& opts) {
  const AlgebraPtr& X = G.x_algebra;
  const PolyRing& xr = *X->ring;
  const PolyRing& xz = *G.xz_ring;
  if (!X->is_free()) throw InputError("the master algorithm needs a polynomial ring");
  if (xr.coeffs().kind() != CoeffKind::Rationals) throw InputError("the master algorithm needs characteristic 0");
  AlgebraicLocalization al = algebraic_field_generators(G, opts.localize);
  const FractionField& L = *al.edg.L;
  const PolyRing& fr = L.ring();
  std::vector<Fraction> cs = coefficient_algebra(al.edg);
  // a = squarefree part of the product of denominators; character c.
  Poly prod = fr.constant(Rat(1));
  for (const auto& c : cs) prod = fr.mul(prod, c.den);
  Poly a = xr.normalize_lc(squarefree_part(xr, prod));
  Poly c;
  if (xr.is_constant(a)) {
    c = xz.constant(Rat(1));
  } else {
    Poly ag = normal_form(G.act(a), G.base_gb);
    auto q = divide_exact(xz, ag, G.embed_x(a));
    if (!q) throw MathError("master: the denominator is not a semi-invariant (coprimality assumption violated)");
    c = *q;
    std::vector<bool> zonly(xz.nvars(), false);
    for (int i = G.nx(); i < xz.nvars(); ++i) zonly[i] = true;
    if (!xz.uses_only(c, zonly)) throw MathError("master: the character involves x variables");
  }
  // J = K[y] ∩ (I_G, y - c).
  std::vector<std::string> names = G.z_vars;
  std::string y = fresh(xz.names(), "y");
  names.push_back(y);
  const int nz = G.nz();
  RingPtr zy = PolyRing::make(xr.coeffs(), names);
  std::vector<int> zmap(xz.nvars(), -1);
  for (int i = 0; i < nz; ++i) zmap[G.nx() + i] = i;
  std::vector<Poly> jh;
  for (const auto& g : G.group_ideal) jh.push_back(xz.transfer(g, *zy, zmap));
  jh.push_back(zy->sub(zy->variable(nz), xz.transfer(c, *zy, zmap)));
  Ideal J = elimination_ideal(zy, jh, {y});
  int d = 0;
  if (J.gens.size() == 1) {
    const Poly& g = J.gens[0];
    if (g.size() == 2 && g[1].c == -g[0].c && mono_is_one(g[1].m, 1)) {
      d = g[0].m.e[0];
    }
  }
  if (d <= 0)
    throw UnsupportedBranch("multiplicative-character branch unsupported: the character c = " +
                            xz.format(c) + " has infinite image; H = V(I_G, c - 1) would be needed");
  // Character of finite order d: unlocalize with a^d.
  Poly ad = X->nf(xr.pow(a, unsigned(d)));
  std::vector<Poly> B{ad};
  for (const auto& f : cs) {
    auto [k, g] = clear_denominators(L, f, ad, 64);
    (void)k;
    if (!xr.is_constant(g)) B.push_back(g);
  }
  DegreeInvariants inv = [&](int deg) { return homogeneous_invariants(G, deg); };
  InvariantRingResult res = unlocalize_graded(X, B, ad, inv, opts.minimal, opts.max_degree);
  res.localizer = ad;
  return res;
}

}  // namespace invk
