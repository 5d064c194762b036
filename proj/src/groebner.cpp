#include "invk/groebner.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace invk {

namespace {

Int num(const Rat& c) { return c.get_num(); }

// Core division loop. step(i, q, m) is called for every reduction p -= q*m*G[i].
Poly reduce_core(const PolyRing& r, Poly p, const std::vector<const Poly*>& G,
                 const std::function<void(size_t, const Rat&, const Mono&)>& step) {
  const int n = r.nvars();
  const CoeffRing& k = r.coeffs();
  const bool euclid = !k.is_field();
  Poly rem;
  while (!p.empty()) {
    const Term& t = p.front();
    bool progressed = false;
    for (size_t i = 0; i < G.size(); ++i) {
      const Poly& g = *G[i];
      if (g.empty() || !mono_divides(g[0].m, t.m, n)) continue;
      Rat q;
      if (euclid) {
        Int qq, rr;
        CoeffRing::divmod_balanced(num(t.c), num(g[0].c), qq, rr);
        if (qq == 0) continue;
        q = Rat(qq);
      } else {
        q = k.div(t.c, g[0].c);
      }
      Mono m = mono_div(t.m, g[0].m, n);
      if (step) step(i, q, m);
      p = r.sub_mul_term(p, q, m, g);
      progressed = true;
      break;
    }
    if (!progressed) {
      rem.push_back(std::move(p.front()));
      p.erase(p.begin());
    }
  }
  return rem;
}

struct Elem {
  Poly p;
  int sugar = 0;
  std::vector<Poly> cof;
  bool active = true;
};

struct Pair {
  int i, j;
  Mono lcm;
  int sugar;
  bool gpair;
};

class Engine {
 public:
  Engine(RingPtr ring, size_t ninputs, const GBOptions& opts)
      : ring_(std::move(ring)), r_(*ring_), n_(r_.nvars()), ninputs_(ninputs), opts_(opts),
        euclid_(!r_.coeffs().is_field()) {}

  void add_input(const Poly& f, size_t idx) {
    std::vector<Poly> cof;
    if (opts_.track_cofactors) {
      cof.assign(ninputs_, Poly{});
      cof[idx] = r_.constant(Rat(1));
    }
    insert(f, r_.degree(f), std::move(cof));
  }

  void run() {
    long processed = 0;
    while (!pairs_.empty() && !unit_) {
      size_t best = 0;
      for (size_t a = 1; a < pairs_.size(); ++a)
        if (pair_less(pairs_[a], pairs_[best])) best = a;
      Pair pr = pairs_[best];
      pairs_[best] = pairs_.back();
      pairs_.pop_back();
      if (opts_.max_pairs >= 0 && ++processed > opts_.max_pairs)
        throw BudgetExhausted("Groebner basis computation exceeded its pair budget");
      std::vector<Poly> cof;
      Poly s = pair_poly(pr, cof);
      insert(s, pr.sugar, std::move(cof));
    }
  }

  GroebnerBasis result() {
    GroebnerBasis gb;
    gb.ring = ring_;
    gb.tracked = opts_.track_cofactors;
    for (auto& e : elems_) {
      if (!e.active) continue;
      gb.gens.push_back(e.p);
      if (gb.tracked) gb.cofactors.push_back(e.cof);
    }
    return gb;
  }

 private:
  bool pair_less(const Pair& a, const Pair& b) const {
    if (a.sugar != b.sugar) return a.sugar < b.sugar;
    int c = r_.cmp(a.lcm, b.lcm);
    if (c != 0) return c < 0;
    if (a.gpair != b.gpair) return !a.gpair;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  }

  Poly pair_poly(const Pair& pr, std::vector<Poly>& cof) {
    const Elem& f = elems_[pr.i];
    const Elem& g = elems_[pr.j];
    Mono mf = mono_div(pr.lcm, f.p[0].m, n_);
    Mono mg = mono_div(pr.lcm, g.p[0].m, n_);
    Rat a, b;
    if (!euclid_) {
      a = r_.coeffs().inv(f.p[0].c);
      b = r_.coeffs().neg(r_.coeffs().inv(g.p[0].c));
    } else if (!pr.gpair) {
      Int l;
      mpz_lcm(l.get_mpz_t(), num(f.p[0].c).get_mpz_t(), num(g.p[0].c).get_mpz_t());
      a = Rat(Int(l / num(f.p[0].c)));
      b = Rat(Int(-(l / num(g.p[0].c))));
    } else {
      Int d, u, v;
      mpz_gcdext(d.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), num(f.p[0].c).get_mpz_t(), num(g.p[0].c).get_mpz_t());
      a = Rat(u);
      b = Rat(v);
    }
    Poly s = r_.add(r_.mul_term(f.p, mf, a), r_.mul_term(g.p, mg, b));
    if (opts_.track_cofactors) {
      cof.assign(ninputs_, Poly{});
      for (size_t t = 0; t < ninputs_; ++t)
        cof[t] = r_.add(r_.mul_term(f.cof[t], mf, a), r_.mul_term(g.cof[t], mg, b));
    }
    return s;
  }

  void insert(Poly h, int sugar, std::vector<Poly> cof) {
    std::vector<const Poly*> G;
    std::vector<int> gidx;
    for (size_t i = 0; i < elems_.size(); ++i)
      if (elems_[i].active) {
        G.push_back(&elems_[i].p);
        gidx.push_back(int(i));
      }
    std::function<void(size_t, const Rat&, const Mono&)> step;
    if (opts_.track_cofactors) {
      step = [&](size_t i, const Rat& q, const Mono& m) {
        const Elem& e = elems_[gidx[i]];
        for (size_t t = 0; t < ninputs_; ++t) cof[t] = r_.sub_mul_term(cof[t], q, m, e.cof[t]);
      };
    }
    h = reduce_core(r_, std::move(h), G, step);
    if (h.empty()) return;
    Rat lc = h[0].c;
    Rat factor(1);
    if (!euclid_)
      factor = r_.coeffs().inv(lc);
    else if (lc < 0)
      factor = Rat(-1);
    if (factor != 1) {
      h = r_.scale(h, factor);
      for (auto& c : cof) c = r_.scale(c, factor);
    }
    Elem e;
    e.p = std::move(h);
    e.sugar = std::max(sugar, r_.degree(e.p));
    e.cof = std::move(cof);
    int hidx = int(elems_.size());
    elems_.push_back(std::move(e));
    if (r_.is_constant(elems_[hidx].p) && r_.coeffs().is_unit(elems_[hidx].p[0].c)) {
      for (auto& x : elems_) x.active = false;
      elems_[hidx].active = true;
      pairs_.clear();
      unit_ = true;
      return;
    }
    if (euclid_)
      update_euclid(hidx);
    else
      update_field(hidx);
  }

  Pair make_pair(int i, int j, bool gpair) const {
    Pair p;
    p.i = i;
    p.j = j;
    p.gpair = gpair;
    p.lcm = mono_lcm(elems_[i].p[0].m, elems_[j].p[0].m, n_);
    int di = mono_div(p.lcm, elems_[i].p[0].m, n_).degree(n_);
    int dj = mono_div(p.lcm, elems_[j].p[0].m, n_).degree(n_);
    p.sugar = std::max(elems_[i].sugar + di, elems_[j].sugar + dj);
    return p;
  }

  // Gebauer-Moeller update for field coefficients.
  void update_field(int h) {
    const Mono& lh = elems_[h].p[0].m;
    std::vector<Pair> C, D;
    for (size_t g = 0; g < elems_.size(); ++g)
      if (elems_[g].active && int(g) != h) C.push_back(make_pair(int(g), h, false));
    for (size_t a = 0; a < C.size(); ++a) {
      const Pair& p = C[a];
      bool keep = mono_coprime(lh, elems_[p.i].p[0].m, n_);
      if (!keep) {
        keep = true;
        for (size_t b = a + 1; b < C.size() && keep; ++b)
          if (mono_divides(C[b].lcm, p.lcm, n_)) keep = false;
        for (size_t b = 0; b < D.size() && keep; ++b)
          if (mono_divides(D[b].lcm, p.lcm, n_)) keep = false;
      }
      if (keep) D.push_back(p);
    }
    std::vector<Pair> B;
    for (const Pair& p : pairs_) {
      if (mono_divides(lh, p.lcm, n_)) {
        Mono l1 = mono_lcm(elems_[p.i].p[0].m, lh, n_);
        Mono l2 = mono_lcm(elems_[p.j].p[0].m, lh, n_);
        if (l1 != p.lcm && l2 != p.lcm) continue;
      }
      B.push_back(p);
    }
    for (const Pair& p : D)
      if (!mono_coprime(lh, elems_[p.i].p[0].m, n_)) B.push_back(p);
    pairs_ = std::move(B);
    for (size_t g = 0; g < elems_.size(); ++g)
      if (int(g) != h && elems_[g].active && mono_divides(lh, elems_[g].p[0].m, n_)) elems_[g].active = false;
  }

  // Strong basis over ZZ. Pairs are compared by their lcm term |c| * m;
  // S-pairs use the chain and coprime criteria, and a G-pair is dropped when
  // some leading term divides its gcd term.
  Int lcm_coef(const Pair& p) const {
    Int l;
    mpz_lcm(l.get_mpz_t(), num(elems_[p.i].p[0].c).get_mpz_t(), num(elems_[p.j].p[0].c).get_mpz_t());
    return l;
  }
  bool term_divides(int k, const Int& c, const Mono& m) const {
    return mono_divides(elems_[k].p[0].m, m, n_) && mpz_divisible_p(c.get_mpz_t(), num(elems_[k].p[0].c).get_mpz_t());
  }

  void update_euclid(int h) {
    const Elem& eh = elems_[h];
    Int lh = abs(num(eh.p[0].c));
    std::vector<Pair> kept;
    for (const Pair& p : pairs_) {
      if (!p.gpair && p.i != h && p.j != h) {
        Int c = lcm_coef(p);
        if (term_divides(h, c, p.lcm)) {
          Pair a = make_pair(p.i, h, false), b = make_pair(p.j, h, false);
          bool ea = a.lcm == p.lcm && lcm_coef(a) == c;
          bool eb = b.lcm == p.lcm && lcm_coef(b) == c;
          if (!ea && !eb) continue;
        }
      }
      kept.push_back(p);
    }
    pairs_ = std::move(kept);

    std::vector<Pair> C;
    std::vector<Int> cc;
    for (size_t g = 0; g < elems_.size(); ++g)
      if (elems_[g].active && int(g) != h) {
        C.push_back(make_pair(int(g), h, false));
        cc.push_back(lcm_coef(C.back()));
      }
    std::vector<bool> drop(C.size(), false);
    for (size_t a = 0; a < C.size(); ++a)
      for (size_t b = 0; b < C.size() && !drop[a]; ++b) {
        if (a == b || drop[b]) continue;
        bool div = mono_divides(C[b].lcm, C[a].lcm, n_) && mpz_divisible_p(cc[a].get_mpz_t(), cc[b].get_mpz_t());
        if (!div) continue;
        bool equal = C[b].lcm == C[a].lcm && cc[a] == cc[b];
        if (!equal || b < a) drop[a] = true;
      }
    for (size_t a = 0; a < C.size(); ++a) {
      if (drop[a]) continue;
      const Elem& eg = elems_[C[a].i];
      Int d;
      mpz_gcd(d.get_mpz_t(), lh.get_mpz_t(), num(eg.p[0].c).get_mpz_t());
      if (mono_coprime(eh.p[0].m, eg.p[0].m, n_) && d == 1) continue;
      pairs_.push_back(C[a]);
    }
    for (size_t g = 0; g < elems_.size(); ++g) {
      if (!elems_[g].active || int(g) == h) continue;
      Int lg = abs(num(elems_[g].p[0].c));
      bool divides = mpz_divisible_p(lh.get_mpz_t(), lg.get_mpz_t()) || mpz_divisible_p(lg.get_mpz_t(), lh.get_mpz_t());
      if (divides) continue;
      Pair gp = make_pair(int(g), h, true);
      Int d;
      mpz_gcd(d.get_mpz_t(), lh.get_mpz_t(), lg.get_mpz_t());
      bool covered = false;
      for (size_t k = 0; k < elems_.size() && !covered; ++k)
        if (elems_[k].active && term_divides(int(k), d, gp.lcm)) covered = true;
      if (!covered) pairs_.push_back(gp);
    }
    for (size_t g = 0; g < elems_.size(); ++g) {
      if (int(g) == h || !elems_[g].active) continue;
      const Elem& eg = elems_[g];
      if (mono_divides(eh.p[0].m, eg.p[0].m, n_) && mpz_divisible_p(num(eg.p[0].c).get_mpz_t(), lh.get_mpz_t())) {
        // The S-pair (g,h) keeps g represented once it leaves the basis.
        bool have = false;
        for (const Pair& p : pairs_)
          if (!p.gpair && ((p.i == int(g) && p.j == h) || (p.i == h && p.j == int(g)))) have = true;
        if (!have) pairs_.push_back(make_pair(int(g), h, false));
        elems_[g].active = false;
      }
    }
  }

  RingPtr ring_;
  const PolyRing& r_;
  int n_;
  size_t ninputs_;
  GBOptions opts_;
  bool euclid_;
  bool unit_ = false;
  std::vector<Elem> elems_;
  std::vector<Pair> pairs_;
};

// Leading-term order used to sort bases: by leading monomial, then by the
// absolute value of the leading coefficient.
bool lt_less(const PolyRing& r, const Poly& a, const Poly& b) {
  int c = r.cmp(a[0].m, b[0].m);
  if (c != 0) return c < 0;
  return abs(a[0].c) < abs(b[0].c);
}

bool lt_divides(const PolyRing& r, const Poly& a, const Poly& b) {
  if (!mono_divides(a[0].m, b[0].m, r.nvars())) return false;
  if (r.coeffs().is_field()) return true;
  return mpz_divisible_p(num(b[0].c).get_mpz_t(), num(a[0].c).get_mpz_t()) != 0;
}

std::string fresh_name(const std::vector<std::string>& taken, const std::string& base) {
  std::string s = base;
  while (std::find(taken.begin(), taken.end(), s) != taken.end()) s += "_";
  return s;
}

}  // namespace

bool GroebnerBasis::is_unit_ideal() const {
  for (const auto& g : gens)
    if (ring->is_constant(g) && !g.empty() && ring->coeffs().is_unit(g[0].c)) return true;
  return false;
}

Poly reduce_by(const PolyRing& r, const Poly& f, const std::vector<Poly>& G, std::vector<Poly>* quotients) {
  std::vector<const Poly*> ptrs;
  for (const auto& g : G) ptrs.push_back(&g);
  std::function<void(size_t, const Rat&, const Mono&)> step;
  if (quotients) {
    quotients->assign(G.size(), Poly{});
    step = [&](size_t i, const Rat& q, const Mono& m) { (*quotients)[i] = r.add((*quotients)[i], r.monomial(m, q)); };
  }
  return reduce_core(r, f, ptrs, step);
}

Poly normal_form(const Poly& f, const GroebnerBasis& gb) { return reduce_by(*gb.ring, f, gb.gens); }

GroebnerBasis reduce_basis(const GroebnerBasis& gb) {
  const PolyRing& r = *gb.ring;
  std::vector<size_t> order;
  for (size_t i = 0; i < gb.gens.size(); ++i)
    if (!gb.gens[i].empty()) order.push_back(i);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return lt_less(r, gb.gens[a], gb.gens[b]); });
  std::vector<size_t> kept;
  for (size_t i : order) {
    bool redundant = false;
    for (size_t j : kept)
      if (lt_divides(r, gb.gens[j], gb.gens[i])) redundant = true;
    if (!redundant) kept.push_back(i);
  }
  GroebnerBasis out;
  out.ring = gb.ring;
  out.tracked = gb.tracked;
  out.reduced = true;
  for (size_t a = 0; a < kept.size(); ++a) {
    const Poly& g = gb.gens[kept[a]];
    std::vector<Poly> others;
    for (size_t b = 0; b < kept.size(); ++b)
      if (b != a) others.push_back(gb.gens[kept[b]]);
    Poly tail(g.begin() + 1, g.end());
    std::vector<Poly> q;
    Poly nt = reduce_by(r, tail, others, gb.tracked ? &q : nullptr);
    Poly ng{g[0]};
    ng.insert(ng.end(), nt.begin(), nt.end());
    Rat factor(1);
    if (r.coeffs().is_field())
      factor = r.coeffs().inv(ng[0].c);
    else if (ng[0].c < 0)
      factor = Rat(-1);
    out.gens.push_back(r.scale(ng, factor));
    if (gb.tracked) {
      std::vector<Poly> cof = gb.cofactors[kept[a]];
      size_t o = 0;
      for (size_t b = 0; b < kept.size(); ++b) {
        if (b == a) continue;
        for (size_t t = 0; t < cof.size(); ++t) cof[t] = r.sub(cof[t], r.mul(q[o], gb.cofactors[kept[b]][t]));
        ++o;
      }
      for (auto& c : cof) c = r.scale(c, factor);
      out.cofactors.push_back(std::move(cof));
    }
  }
  return out;
}

GroebnerBasis groebner(RingPtr ring, const std::vector<Poly>& gens, const GBOptions& opts) {
  Engine eng(ring, gens.size(), opts);
  for (size_t i = 0; i < gens.size(); ++i)
    if (!gens[i].empty()) eng.add_input(gens[i], i);
  eng.run();
  GroebnerBasis gb = eng.result();
  if (opts.reduce) gb = reduce_basis(gb);
  return gb;
}

Poly s_polynomial(const PolyRing& r, const Poly& f, const Poly& g) {
  const int n = r.nvars();
  Mono l = mono_lcm(f[0].m, g[0].m, n);
  Rat a, b;
  if (r.coeffs().is_field()) {
    a = r.coeffs().inv(f[0].c);
    b = r.coeffs().inv(g[0].c);
  } else {
    Int lc;
    mpz_lcm(lc.get_mpz_t(), num(f[0].c).get_mpz_t(), num(g[0].c).get_mpz_t());
    a = Rat(Int(lc / num(f[0].c)));
    b = Rat(Int(lc / num(g[0].c)));
  }
  return r.sub(r.mul_term(f, mono_div(l, f[0].m, n), a), r.mul_term(g, mono_div(l, g[0].m, n), b));
}

Poly g_polynomial(const PolyRing& r, const Poly& f, const Poly& g) {
  const int n = r.nvars();
  Mono l = mono_lcm(f[0].m, g[0].m, n);
  Int d, u, v;
  mpz_gcdext(d.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), num(f[0].c).get_mpz_t(), num(g[0].c).get_mpz_t());
  return r.add(r.mul_term(f, mono_div(l, f[0].m, n), Rat(u)), r.mul_term(g, mono_div(l, g[0].m, n), Rat(v)));
}

bool satisfies_buchberger_criterion(const PolyRing& r, const std::vector<Poly>& G) {
  for (size_t i = 0; i < G.size(); ++i)
    for (size_t j = i + 1; j < G.size(); ++j) {
      if (!reduce_by(r, s_polynomial(r, G[i], G[j]), G).empty()) return false;
      if (!r.coeffs().is_field() && !reduce_by(r, g_polynomial(r, G[i], G[j]), G).empty()) return false;
    }
  return true;
}

RingPtr block_ring(const CoeffRing& k, const std::vector<std::vector<std::string>>& blocks) {
  std::vector<std::string> names;
  std::vector<std::pair<std::vector<int>, OrderRule::Kind>> bl;
  for (const auto& b : blocks) {
    std::vector<int> idx;
    for (const auto& s : b) {
      idx.push_back(int(names.size()));
      names.push_back(s);
    }
    if (!idx.empty()) bl.push_back({idx, OrderRule::GrevLex});
  }
  return PolyRing::make(k, names, MonomialOrder::blocks(int(names.size()), bl));
}

Ideal elimination_ideal(const RingPtr& ring, const std::vector<Poly>& gens, const std::vector<std::string>& keep) {
  const int n = ring->nvars();
  std::vector<bool> kept(n, false);
  std::vector<int> kidx, eidx;
  for (int i = 0; i < n; ++i) {
    bool k = std::find(keep.begin(), keep.end(), ring->names()[i]) != keep.end();
    kept[i] = k;
    (k ? kidx : eidx).push_back(i);
  }
  std::vector<std::pair<std::vector<int>, OrderRule::Kind>> bl;
  if (!eidx.empty()) bl.push_back({eidx, OrderRule::GrevLex});
  if (!kidx.empty()) bl.push_back({kidx, OrderRule::GrevLex});
  RingPtr er = ring->with_order(MonomialOrder::blocks(n, bl));
  std::vector<Poly> eg;
  for (const auto& g : gens) eg.push_back(er->resort(g));
  GroebnerBasis gb = groebner(er, eg);
  std::vector<std::string> knames;
  std::vector<int> map(n, -1);
  for (size_t a = 0; a < kidx.size(); ++a) {
    knames.push_back(ring->names()[kidx[a]]);
    map[kidx[a]] = int(a);
  }
  Ideal out;
  out.ring = PolyRing::make(ring->coeffs(), knames);
  for (const auto& g : gb.gens)
    if (er->uses_only(g, kept)) out.gens.push_back(er->transfer(g, *out.ring, map));
  return out;
}

std::vector<Poly> intersect_ideals(const RingPtr& ring, const std::vector<std::vector<Poly>>& ideals) {
  if (ideals.empty()) return {ring->constant(Rat(1))};
  const int n = ring->nvars();
  std::vector<std::string> names{fresh_name(ring->names(), "_t")};
  names.insert(names.end(), ring->names().begin(), ring->names().end());
  std::vector<OrderRule> rules{OrderRule{OrderRule::Lex, {0}, {}}};
  for (auto& r : ring->order().shifted_rules(1, n + 1)) rules.push_back(r);
  RingPtr tr = PolyRing::make(ring->coeffs(), names, MonomialOrder(n + 1, rules));
  std::vector<int> up(n), down(n + 1, -1);
  for (int i = 0; i < n; ++i) {
    up[i] = i + 1;
    down[i + 1] = i;
  }
  std::vector<bool> no_t(n + 1, true);
  no_t[0] = false;
  Poly t = tr->variable(0);
  Poly one_minus_t = tr->sub(tr->constant(Rat(1)), t);
  std::vector<Poly> cur = ideals[0];
  for (size_t k = 1; k < ideals.size(); ++k) {
    std::vector<Poly> gens;
    for (const auto& f : cur) gens.push_back(tr->mul(t, ring->transfer(f, *tr, up)));
    for (const auto& f : ideals[k]) gens.push_back(tr->mul(one_minus_t, ring->transfer(f, *tr, up)));
    GroebnerBasis gb = groebner(tr, gens);
    cur.clear();
    for (const auto& g : gb.gens)
      if (tr->uses_only(g, no_t)) cur.push_back(tr->transfer(g, *ring, down));
  }
  return groebner(ring, cur).gens;
}

Membership membership(const RingPtr& ring, const Poly& f, const std::vector<Poly>& gens, bool want_cofactors) {
  Membership m;
  GroebnerBasis gb = groebner(ring, gens, want_cofactors);
  std::vector<Poly> q;
  Poly rem = reduce_by(*ring, f, gb.gens, want_cofactors ? &q : nullptr);
  m.member = rem.empty();
  if (m.member && want_cofactors) {
    m.cofactors.assign(gens.size(), Poly{});
    for (size_t i = 0; i < gb.gens.size(); ++i)
      for (size_t j = 0; j < gens.size(); ++j)
        m.cofactors[j] = ring->add(m.cofactors[j], ring->mul(q[i], gb.cofactors[i][j]));
  }
  return m;
}

bool ideal_contains(const RingPtr& ring, const std::vector<Poly>& big, const std::vector<Poly>& small) {
  GroebnerBasis gb = groebner(ring, big);
  for (const auto& f : small)
    if (!normal_form(f, gb).empty()) return false;
  return true;
}

int krull_dimension(const RingPtr& ring, const std::vector<Poly>& gens) {
  RingPtr fr = ring->coeffs().is_field() ? ring : ring->with_coeffs(CoeffRing::QQ());
  GroebnerBasis gb = groebner(fr, gens);
  if (gb.is_unit_ideal()) return -1;
  const int n = fr->nvars();
  std::vector<uint64_t> supports;
  for (const auto& g : gb.gens) {
    uint64_t s = 0;
    for (int i = 0; i < n; ++i)
      if (g[0].m.e[i]) s |= uint64_t(1) << i;
    supports.push_back(s);
  }
  int best = 0;
  std::function<void(int, uint64_t, int)> search = [&](int i, uint64_t set, int size) {
    if (size + (n - i) <= best) return;
    if (i == n) {
      best = size;
      return;
    }
    uint64_t with = set | (uint64_t(1) << i);
    bool ok = true;
    for (uint64_t s : supports)
      if ((s & ~with) == 0) {
        ok = false;
        break;
      }
    if (ok) search(i + 1, with, size + 1);
    search(i + 1, set, size);
  };
  search(0, 0, 0);
  return best;
}

std::vector<std::vector<Poly>> module_kernel(const RingPtr& P, const std::vector<std::vector<Poly>>& mat) {
  const int rows = int(mat.size());
  if (rows == 0) throw InputError("module_kernel needs at least one row");
  const int cols = int(mat[0].size());
  const int np = P->nvars();
  const int total = rows + cols + np;
  std::vector<std::string> names;
  for (int i = 0; i < rows; ++i) names.push_back(fresh_name(P->names(), "_e" + std::to_string(i)));
  for (int j = 0; j < cols; ++j) names.push_back(fresh_name(P->names(), "_f" + std::to_string(j)));
  names.insert(names.end(), P->names().begin(), P->names().end());
  std::vector<int> evars(rows), fvars(cols);
  std::iota(evars.begin(), evars.end(), 0);
  std::iota(fvars.begin(), fvars.end(), rows);
  std::vector<OrderRule> rules{OrderRule{OrderRule::Lex, evars, {}}, OrderRule{OrderRule::Lex, fvars, {}}};
  if (cols == 0) rules.pop_back();
  for (auto& r : P->order().shifted_rules(rows + cols, total)) rules.push_back(r);
  RingPtr R = PolyRing::make(P->coeffs(), names, MonomialOrder(total, rules));
  std::vector<int> up(np);
  for (int i = 0; i < np; ++i) up[i] = rows + cols + i;
  std::vector<Poly> gens;
  for (int j = 0; j < cols; ++j) {
    Poly c = R->variable(rows + j);
    for (int i = 0; i < rows; ++i) {
      if (int(mat[i].size()) != cols) throw InputError("module_kernel: ragged matrix");
      c = R->add(c, R->mul(R->variable(i), P->transfer(mat[i][j], *R, up)));
    }
    gens.push_back(c);
  }
  for (int a = 0; a < rows + cols; ++a)
    for (int b = a; b < rows + cols; ++b) gens.push_back(R->mul(R->variable(a), R->variable(b)));
  GroebnerBasis gb = groebner(R, gens);
  std::vector<int> down(total, -1);
  for (int i = 0; i < np; ++i) down[rows + cols + i] = i;
  std::vector<std::vector<Poly>> out;
  for (const auto& g : gb.gens) {
    std::vector<std::vector<Term>> comp(cols);
    bool ok = true;
    for (const auto& t : g) {
      int fpos = -1, deg = 0;
      for (int v = 0; v < rows + cols; ++v) {
        deg += t.m.e[v];
        if (t.m.e[v]) fpos = v;
      }
      if (deg != 1 || fpos < rows) {
        ok = false;
        break;
      }
      Mono m;
      for (int i = 0; i < np; ++i) m.e[i] = t.m.e[rows + cols + i];
      comp[fpos - rows].push_back(Term{m, t.c});
    }
    if (!ok) continue;
    std::vector<Poly> v(cols);
    for (int j = 0; j < cols; ++j) v[j] = P->from_terms(comp[j]);
    out.push_back(std::move(v));
  }
  return out;
}

AlgebraMapKernel algebra_map_kernel(const RingPtr& xring, const std::vector<Poly>& I, const std::vector<Poly>& f,
                                    const std::vector<Poly>& h, const std::string& yprefix) {
  const int nx = xring->nvars();
  const int m = int(f.size());
  const int r = int(h.size());
  if (r == 0) throw InputError("algebra_map_kernel needs h_1 = 1");
  const int nz = r - 1;
  std::vector<std::string> names = xring->names();
  std::vector<std::string> ynames;
  for (int j = 0; j < nz; ++j) names.push_back(fresh_name(names, "_z" + std::to_string(j + 2)));
  for (int i = 0; i < m; ++i) {
    std::string y = fresh_name(names, yprefix + std::to_string(i + 1));
    names.push_back(y);
    ynames.push_back(y);
  }
  const int total = nx + nz + m;
  std::vector<OrderRule> rules;
  std::vector<int> xv(nx), zv, yv(m);
  std::iota(xv.begin(), xv.end(), 0);
  for (int j = nz - 1; j >= 0; --j) zv.push_back(nx + j);  // z_r > ... > z_2
  std::iota(yv.begin(), yv.end(), nx + nz);
  if (nx) rules.push_back(OrderRule{OrderRule::GrevLex, xv, {}});
  if (nz) {
    OrderRule w{OrderRule::Weight, {}, std::vector<long>(total, 0)};
    for (int j = 0; j < nz; ++j) w.weights[nx + j] = 1;
    rules.push_back(w);
    rules.push_back(OrderRule{OrderRule::Lex, zv, {}});
  }
  if (m) rules.push_back(OrderRule{OrderRule::GrevLex, yv, {}});
  RingPtr R = PolyRing::make(xring->coeffs(), names, MonomialOrder(total, rules));
  std::vector<int> up(nx);
  std::iota(up.begin(), up.end(), 0);
  std::vector<Poly> gens;
  for (const auto& g : I) gens.push_back(xring->transfer(g, *R, up));
  for (int i = 0; i < m; ++i) gens.push_back(R->sub(R->variable(nx + nz + i), xring->transfer(f[i], *R, up)));
  for (int j = 0; j < nz; ++j) gens.push_back(R->sub(R->variable(nx + j), xring->transfer(h[j + 1], *R, up)));
  GroebnerBasis gb = groebner(R, gens);

  AlgebraMapKernel out;
  out.P = PolyRing::make(xring->coeffs(), ynames);
  std::vector<int> down(total, -1);
  for (int i = 0; i < m; ++i) down[nx + nz + i] = i;
  // Split an element of K[y,z] of z-degree <= 1 into its component vector.
  auto split = [&](const Poly& g, std::vector<Poly>& v) -> bool {
    std::vector<std::vector<Term>> comp(r);
    for (const auto& t : g) {
      for (int i = 0; i < nx; ++i)
        if (t.m.e[i]) return false;
      int zpos = -1, zdeg = 0;
      for (int j = 0; j < nz; ++j)
        if (t.m.e[nx + j]) {
          zdeg += t.m.e[nx + j];
          zpos = j;
        }
      if (zdeg > 1) return false;
      Mono mm;
      for (int i = 0; i < m; ++i) mm.e[i] = t.m.e[nx + nz + i];
      comp[zpos < 0 ? 0 : zpos + 1].push_back(Term{mm, t.c});
    }
    v.assign(r, Poly{});
    for (int j = 0; j < r; ++j) v[j] = out.P->from_terms(comp[j]);
    return true;
  };
  for (const auto& g : gb.gens) {
    std::vector<Poly> v;
    if (!split(g, v)) continue;
    bool pure_y = true;
    for (int j = 1; j < r; ++j)
      if (!v[j].empty()) pure_y = false;
    out.kernel.push_back(v);
    if (pure_y) {
      for (int j = 1; j < r; ++j) {
        std::vector<Poly> w(r);
        w[j] = v[0];
        out.kernel.push_back(std::move(w));
      }
    }
    if (nz && !v[r - 1].empty() && out.P->is_constant(v[r - 1]) && xring->coeffs().is_unit(v[r - 1][0].c)) {
      bool lm_is_zr = true;
      for (int i = 0; i < total; ++i)
        if (g[0].m.e[i] != (i == nx + nz - 1 ? 1 : 0)) lm_is_zr = false;
      if (lm_is_zr && !out.unit_last) {
        Rat inv = xring->coeffs().inv(v[r - 1][0].c);
        for (auto& p : v) p = out.P->scale(p, inv);
        out.unit_last = v;
      }
    }
  }
  return out;
}

}  // namespace invk
