#include "invk/algebra.hpp"

#include "invk/parse.hpp"

namespace invk {

Poly PresentedAlgebra::parse(const std::string& s) const { return nf(parse_poly(s, *ring)); }

int PresentedAlgebra::weighted_degree(const Poly& f) const {
  int best = -1;
  for (const auto& t : f) {
    int d = 0;
    for (int i = 0; i < nvars(); ++i) d += t.m.e[i] * (grading.empty() ? 1 : grading[i]);
    best = std::max(best, d);
  }
  return best;
}

bool PresentedAlgebra::is_homogeneous(const Poly& f) const {
  int d = -1;
  for (const auto& t : f) {
    int e = 0;
    for (int i = 0; i < nvars(); ++i) e += t.m.e[i] * (grading.empty() ? 1 : grading[i]);
    if (d >= 0 && e != d) return false;
    d = e;
  }
  return true;
}

AlgebraPtr make_algebra(RingPtr ring, std::vector<Poly> relations, bool prime_claimed, std::vector<int> grading) {
  auto a = std::make_shared<PresentedAlgebra>();
  a->ring = ring;
  for (auto& r : relations)
    if (!r.empty()) a->relations.push_back(r);
  a->gb = groebner(ring, a->relations);
  a->prime_claimed = prime_claimed;
  if (!grading.empty() && int(grading.size()) != ring->nvars()) throw InputError("grading length does not match variables");
  a->grading = std::move(grading);
  return a;
}

AlgebraPtr laurent_algebra(const CoeffRing& k, const std::vector<std::string>& names) {
  std::vector<std::string> all = names;
  for (const auto& n : names) all.push_back(n + "inv");
  RingPtr r = PolyRing::make(k, all);
  const int n = int(names.size());
  std::vector<Poly> rel;
  for (int i = 0; i < n; ++i) rel.push_back(r->sub(r->mul(r->variable(i), r->variable(n + i)), r->constant(Rat(1))));
  auto a = std::const_pointer_cast<PresentedAlgebra>(make_algebra(r, rel, true));
  for (int i = 0; i < n; ++i) a->laurent_pairs.push_back({i, n + i});
  return a;
}

AlgebraPtr over_fraction_field(const AlgebraPtr& a) {
  if (a->coeffs().is_field()) return a;
  auto f = std::const_pointer_cast<PresentedAlgebra>(
      make_algebra(a->ring->with_coeffs(CoeffRing::QQ()), a->relations, a->prime_claimed, a->grading));
  f->laurent_pairs = a->laurent_pairs;
  return f;
}

FractionField::FractionField(AlgebraPtr base) : base_(std::move(base)), fa_(over_fraction_field(base_)) {
  laurent_ = !fa_->laurent_pairs.empty() && fa_->relations.size() == fa_->laurent_pairs.size();
}

Fraction FractionField::make(const Poly& num, const Poly& den) const {
  Poly d = fa_->nf(den);
  if (d.empty()) throw MathError("denominator lies in the presentation ideal");
  return simplify(Fraction{num, d});
}

Fraction FractionField::add(const Fraction& a, const Fraction& b) const {
  const PolyRing& r = ring();
  if (a.den == b.den) return simplify(Fraction{r.add(a.num, b.num), a.den});
  return simplify(Fraction{r.add(r.mul(a.num, b.den), r.mul(b.num, a.den)), r.mul(a.den, b.den)});
}

Fraction FractionField::sub(const Fraction& a, const Fraction& b) const { return add(a, neg(b)); }

Fraction FractionField::mul(const Fraction& a, const Fraction& b) const {
  const PolyRing& r = ring();
  return simplify(Fraction{r.mul(a.num, b.num), r.mul(a.den, b.den)});
}

Fraction FractionField::neg(const Fraction& a) const { return Fraction{ring().neg(a.num), a.den}; }

Fraction FractionField::inv(const Fraction& a) const {
  if (is_zero(a)) throw MathError("inverse of zero in the fraction field");
  return simplify(Fraction{a.den, a.num});
}

bool FractionField::equal(const Fraction& a, const Fraction& b) const {
  const PolyRing& r = ring();
  return fa_->is_zero(r.sub(r.mul(a.num, b.den), r.mul(b.num, a.den)));
}

bool FractionField::is_constant(const Fraction& a, Rat* value) const {
  Poly n = fa_->nf(a.num), d = fa_->nf(a.den);
  if (n.empty()) {
    if (value) *value = 0;
    return true;
  }
  if (n[0].m != d[0].m) return false;
  Rat c = ring().coeffs().div(n[0].c, d[0].c);
  if (!fa_->is_zero(ring().sub(n, ring().scale(d, c)))) return false;
  if (value) *value = c;
  return true;
}

std::optional<Poly> FractionField::try_polynomial(const Fraction& a) const {
  const PolyRing& r = ring();
  if (r.is_constant(a.den)) return fa_->nf(r.scale(a.num, r.coeffs().inv(a.den[0].c)));
  if (laurent_) {
    Fraction s = simplify(a);
    if (r.is_constant(s.den)) return r.scale(s.num, r.coeffs().inv(s.den[0].c));
    return std::nullopt;
  }
  if (fa_->is_free()) {
    auto q = divide_exact(r, a.num, a.den);
    if (q) return *q;
    return std::nullopt;
  }
  std::vector<Poly> gens{a.den};
  gens.insert(gens.end(), fa_->relations.begin(), fa_->relations.end());
  Membership m = membership(fa_->ring, a.num, gens, true);
  if (!m.member) return std::nullopt;
  return fa_->nf(m.cofactors[0]);
}

Fraction FractionField::simplify(const Fraction& a) const {
  const PolyRing& r = ring();
  Poly n = fa_->nf(a.num), d = fa_->nf(a.den);
  if (d.empty()) throw MathError("denominator lies in the presentation ideal");
  if (n.empty()) return Fraction{n, r.constant(Rat(1))};
  if (fa_->is_free() && !r.is_constant(d)) {
    Poly g = gcd_poly(r, n, d);
    if (!r.is_constant(g)) {
      n = *divide_exact(r, n, g);
      d = *divide_exact(r, d, g);
    }
  } else if (laurent_ && !r.is_constant(d)) {
    // Move to K[x] by a common monomial, cancel there, then push the
    // monomial part of the denominator back into the inverse variables.
    Mono shift;
    for (auto [i, j] : fa_->laurent_pairs) shift.e[i] = uint16_t(std::max(r.var_degree(n, j), r.var_degree(d, j)));
    n = fa_->nf(r.mul_term(n, shift, Rat(1)));
    d = fa_->nf(r.mul_term(d, shift, Rat(1)));
    Poly g = gcd_poly(r, n, d);
    if (!r.is_constant(g)) {
      n = *divide_exact(r, n, g);
      d = *divide_exact(r, d, g);
    }
    Mono dm = d[0].m, inv;
    for (const auto& t : d)
      for (int i = 0; i < r.nvars(); ++i) dm.e[i] = std::min(dm.e[i], t.m.e[i]);
    for (auto [i, j] : fa_->laurent_pairs) inv.e[j] = dm.e[i];
    std::vector<Term> dt;
    for (auto t : d) {
      for (int i = 0; i < r.nvars(); ++i) t.m.e[i] -= dm.e[i];
      dt.push_back(t);
    }
    d = r.from_terms(std::move(dt));
    n = fa_->nf(r.mul_term(n, inv, Rat(1)));
  }
  if (r.coeffs().kind() == CoeffKind::PrimeField) {
    Rat s = r.coeffs().inv(d[0].c);
    return Fraction{r.scale(n, s), r.scale(d, s)};
  }
  Poly D = r.make_primitive(d);
  Poly N = r.make_primitive(n);
  // n/d = (n0/d0) * N/D where n = n0*N, d = d0*D.
  Rat ratio = (n[0].c / N[0].c) / (d[0].c / D[0].c);
  if (r.is_constant(D)) return Fraction{r.scale(N, ratio), r.constant(Rat(1))};
  return Fraction{r.scale(N, Rat(ratio.get_num())), r.scale(D, Rat(ratio.get_den()))};
}

std::string FractionField::format(const Fraction& a) const {
  const PolyRing& r = ring();
  if (r.is_constant(a.den) && a.den[0].c == 1) return r.format(a.num);
  std::string n = r.format(a.num), d = r.format(a.den);
  if (a.num.size() > 1) n = "(" + n + ")";
  bool simple_den = a.den.size() == 1 && a.den[0].c == 1;
  if (!simple_den) d = "(" + d + ")";
  return n + "/" + d;
}

std::pair<int, Poly> clear_denominators(const FractionField& L, const Fraction& e, const Poly& a, int k_max) {
  const PolyRing& fr = L.ring();
  const AlgebraPtr& base = L.base();
  Poly ak = fr.constant(Rat(1));
  for (int k = 0; k <= k_max; ++k, ak = fr.mul(ak, a)) {
    Fraction t = L.mul(L.from_poly(ak), e);
    auto p = L.try_polynomial(t);
    if (!p) continue;
    if (base->coeffs().is_field()) return {k, base->nf(*p)};
    // Over ZZ: need an integral representative. t = (nu/delta) * N/D with
    // N, D primitive integral; look for r with nu*D*r = delta*N mod I.
    Poly N = fr.make_primitive(t.num), D = fr.make_primitive(t.den);
    Rat ratio = (t.num[0].c / N[0].c) / (t.den[0].c / D[0].c);
    const PolyRing& zr = *base->ring;
    Poly lhs = zr.scale(N, Rat(ratio.get_num()));
    std::vector<Poly> gens{zr.scale(D, Rat(ratio.get_den()))};
    gens.insert(gens.end(), base->relations.begin(), base->relations.end());
    Membership m = membership(base->ring, lhs, gens, true);
    if (m.member) return {k, base->nf(m.cofactors[0])};
  }
  throw MathError("no power of the localizer up to " + std::to_string(k_max) + " clears the denominator");
}

LinearSolution solve_linear(const CoeffRing& k, const std::vector<Rat>& a, const Rat& b) {
  const size_t r = a.size();
  if (r == 0) throw InputError("solve_linear needs at least one coefficient");
  LinearSolution out;
  auto unit = [&](size_t i, const Rat& v) {
    std::vector<Rat> e(r, Rat(0));
    e[i] = v;
    return e;
  };
  if (k.is_field()) {
    size_t piv = r;
    for (size_t i = 0; i < r && piv == r; ++i)
      if (a[i] != 0) piv = i;
    if (piv == r) {
      if (b == 0) out.particular = std::vector<Rat>(r, Rat(0));
      for (size_t i = 0; i < r; ++i) out.syzygies.push_back(unit(i, Rat(1)));
      return out;
    }
    out.particular = unit(piv, k.div(b, a[piv]));
    for (size_t j = 0; j < r; ++j) {
      if (j == piv) continue;
      auto v = unit(j, Rat(1));
      v[piv] = k.neg(k.div(a[j], a[piv]));
      out.syzygies.push_back(v);
    }
    return out;
  }
  // ZZ: columns of a unimodular U with a*U = (g, 0, ..., 0).
  std::vector<std::vector<Int>> U(r, std::vector<Int>(r, 0));
  for (size_t i = 0; i < r; ++i) U[i][i] = 1;
  Int g = a[0].get_num();
  std::vector<bool> zero_col(r, false);
  for (size_t j = 1; j < r; ++j) {
    Int aj = a[j].get_num();
    if (g == 0 && aj == 0) continue;
    Int d, u, v;
    mpz_gcdext(d.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t(), aj.get_mpz_t());
    Int p = aj / d, q = g / d;
    for (size_t i = 0; i < r; ++i) {
      Int c0 = U[i][0], cj = U[i][j];
      U[i][0] = u * c0 + v * cj;
      U[i][j] = p * c0 - q * cj;
    }
    g = d;
  }
  auto col = [&](size_t j, const Int& s) {
    std::vector<Rat> v(r);
    for (size_t i = 0; i < r; ++i) v[i] = Rat(Int(U[i][j] * s));
    return v;
  };
  Int bi = b.get_num();
  if (g == 0) {
    if (bi == 0) out.particular = std::vector<Rat>(r, Rat(0));
    out.syzygies.push_back(col(0, 1));
  } else if (mpz_divisible_p(bi.get_mpz_t(), g.get_mpz_t())) {
    out.particular = col(0, Int(bi / g));
  }
  for (size_t j = 1; j < r; ++j) out.syzygies.push_back(col(j, 1));
  return out;
}

namespace {

// v -= c * row
void axpy(const CoeffRing& k, SparseVec& v, const Rat& c, const SparseVec& row) {
  for (const auto& [j, x] : row) {
    Rat nv = k.sub(v[j], k.mul(c, x));
    if (nv == 0)
      v.erase(j);
    else
      v[j] = nv;
  }
}

SparseVec combine(const CoeffRing& k, const Rat& a, const SparseVec& u, const Rat& b, const SparseVec& w) {
  SparseVec out;
  for (const auto& [j, x] : u) out[j] = k.mul(a, x);
  axpy(k, out, b, w);
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

}  // namespace

// Over a field rows have pivot 1; over ZZ the rows span a lattice in
// echelon form with positive pivots.
SparseVec Echelon::reduce(SparseVec v) const {
  for (const auto& [p, row] : rows_) {
    auto it = v.find(p);
    if (it == v.end()) continue;
    Rat c = it->second;
    if (!k_.is_field()) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), c.get_num_mpz_t(), row.at(p).get_num_mpz_t());
      if (q == 0) continue;
      c = Rat(q);
    }
    axpy(k_, v, c, row);
  }
  return v;
}

bool Echelon::insert(SparseVec v) {
  if (k_.is_field()) {
    v = reduce(std::move(v));
    if (v.empty()) return false;
    Rat inv = k_.inv(v.begin()->second);
    for (auto& [j, x] : v) x = k_.mul(x, inv);
    rows_[v.begin()->first] = std::move(v);
    return true;
  }
  bool changed = false;
  while (!v.empty()) {
    int p = v.begin()->first;
    auto it = rows_.find(p);
    if (it == rows_.end()) {
      if (v.begin()->second < 0)
        for (auto& [j, x] : v) x = -x;
      rows_[p] = std::move(v);
      return true;
    }
    SparseVec& row = it->second;
    Int a = row.at(p).get_num(), b = v.at(p).get_num();
    if (mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) {
      axpy(k_, v, Rat(Int(b / a)), row);
      continue;
    }
    Int g, u, w;
    mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), w.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    SparseVec nrow = combine(k_, Rat(u), row, Rat(Int(-w)), v);
    SparseVec rest = combine(k_, Rat(Int(a / g)), v, Rat(Int(b / g)), row);
    if (nrow.begin()->second < 0)
      for (auto& [j, x] : nrow) x = -x;
    row = std::move(nrow);
    v = std::move(rest);
    changed = true;
  }
  return changed;
}

std::vector<std::vector<Rat>> nullspace(const CoeffRing& k, const std::vector<SparseVec>& rows, int ncols) {
  // Gauss-Jordan: R maps pivot column to a fully reduced row with pivot 1.
  std::map<int, SparseVec> R;
  std::vector<SparseVec> work;
  for (const auto& r : rows) {
    SparseVec v;
    for (const auto& [j, x] : r)
      if (k.normalize(x) != 0) v[j] = k.normalize(x);
    if (!v.empty()) work.push_back(v);
  }
  for (auto& v : work) {
    for (const auto& [p, row] : R) {
      auto it = v.find(p);
      if (it == v.end()) continue;
      Rat c = it->second;
      for (const auto& [j, x] : row) {
        Rat nv = k.sub(v[j], k.mul(c, x));
        if (nv == 0)
          v.erase(j);
        else
          v[j] = nv;
      }
    }
    if (v.empty()) continue;
    Rat inv = k.inv(v.begin()->second);
    for (auto& [j, x] : v) x = k.mul(x, inv);
    int p = v.begin()->first;
    for (auto& [q, row] : R) {
      auto it = row.find(p);
      if (it == row.end()) continue;
      Rat c = it->second;
      for (const auto& [j, x] : v) {
        Rat nv = k.sub(row[j], k.mul(c, x));
        if (nv == 0)
          row.erase(j);
        else
          row[j] = nv;
      }
    }
    R[p] = v;
  }
  std::vector<std::vector<Rat>> out;
  for (int f = 0; f < ncols; ++f) {
    if (R.count(f)) continue;
    std::vector<Rat> c(ncols, Rat(0));
    c[f] = 1;
    for (const auto& [p, row] : R) {
      auto it = row.find(f);
      if (it != row.end()) c[p] = k.neg(it->second);
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::optional<Poly> divide_exact(const PolyRing& r, const Poly& f, const Poly& g) {
  if (g.empty()) throw MathError("division by zero polynomial");
  std::vector<Poly> q;
  Poly rem = reduce_by(r, f, {g}, &q);
  if (!rem.empty()) return std::nullopt;
  return q[0];
}

namespace {

Int max_norm(const Poly& f) {
  Int m = 0;
  for (const auto& t : f) {
    Int a = abs(t.c.get_num());
    if (a > m) m = a;
  }
  return m;
}

Int symmetric_mod(const Int& c, const Int& m) {
  Int r = c % m;
  if (r < 0) r += m;
  if (2 * r > m) r -= m;
  return r;
}

// f with variable v set to the integer xi.
Poly eval_var(const PolyRing& r, const Poly& f, int v, const Int& xi) {
  std::vector<Term> ts;
  ts.reserve(f.size());
  for (const auto& t : f) {
    Term u = t;
    Int p;
    mpz_pow_ui(p.get_mpz_t(), xi.get_mpz_t(), t.m.e[v]);
    u.c *= Rat(p);
    u.m.e[v] = 0;
    ts.push_back(u);
  }
  return r.from_terms(std::move(ts));
}

// Inverse of eval_var for polynomials with small coefficients (xi-adic expansion).
Poly interpolate_var(const PolyRing& r, Poly h, int v, const Int& xi) {
  std::vector<Term> out;
  for (int e = 0; !h.empty(); ++e) {
    if (e > 0xffff) return {};
    std::vector<Term> rest;
    for (const auto& t : h) {
      Int c = t.c.get_num();
      Int g = symmetric_mod(c, xi);
      if (g != 0) {
        Term u = t;
        u.c = Rat(g);
        u.m.e[v] = uint16_t(e);
        out.push_back(u);
      }
      Int q = (c - g) / xi;
      if (q != 0) rest.push_back(Term{t.m, Rat(q)});
    }
    h = r.from_terms(std::move(rest));
  }
  return r.from_terms(std::move(out));
}

bool divides(const PolyRing& r, const Poly& g, const Poly& f) { return divide_exact(r, f, g).has_value(); }

std::optional<Poly> heu_gcd(const PolyRing& r, const Poly& f, const Poly& g, int depth);

Int int_content(const Poly& f) {
  Int c = 0;
  for (const auto& t : f) mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), t.c.get_num_mpz_t());
  return c;
}

// Full gcd including the integer content.
std::optional<Poly> heu_gcd_full(const PolyRing& r, const Poly& f, const Poly& g, int depth) {
  Int cf = int_content(f), cg = int_content(g), c;
  mpz_gcd(c.get_mpz_t(), cf.get_mpz_t(), cg.get_mpz_t());
  auto h = heu_gcd(r, r.scale(f, Rat(1) / Rat(cf)), r.scale(g, Rat(1) / Rat(cg)), depth);
  if (!h) return h;
  return r.scale(*h, Rat(c));
}

// Heuristic gcd of primitive integral polynomials, primitive with positive
// leading coefficient; nullopt on failure.
std::optional<Poly> heu_gcd(const PolyRing& r, const Poly& f, const Poly& g, int depth) {
  const int n = r.nvars();
  int v = -1;
  for (int i = n - 1; i >= 0 && v < 0; --i)
    if (r.var_degree(f, i) > 0 || r.var_degree(g, i) > 0) v = i;
  if (v < 0) {
    Int a = f.empty() ? Int(0) : Int(f[0].c.get_num()), b = g.empty() ? Int(0) : Int(g[0].c.get_num()), c;
    mpz_gcd(c.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r.constant(Rat(c));
  }
  if (depth > 64) return std::nullopt;
  Int xi = 2 * std::min(max_norm(f), max_norm(g)) + 29;
  for (int attempt = 0; attempt < 6; ++attempt) {
    Poly fe = eval_var(r, f, v, xi), ge = eval_var(r, g, v, xi);
    if (!fe.empty() && !ge.empty()) {
      auto h = heu_gcd_full(r, fe, ge, depth + 1);
      if (h) {
        Poly H = interpolate_var(r, *h, v, xi);
        if (!H.empty()) {
          H = r.make_primitive(H);
          if (divides(r, H, f) && divides(r, H, g)) return H;
        }
      }
    }
    xi = xi * 73794 / 27011 + 7;
  }
  return std::nullopt;
}

}  // namespace

Poly gcd_poly(const PolyRing& r, const Poly& f, const Poly& g) {
  if (!r.coeffs().is_field()) throw InputError("gcd_poly requires field coefficients");
  if (f.empty()) return r.normalize_lc(g);
  if (g.empty()) return r.normalize_lc(f);
  if (r.is_constant(f) || r.is_constant(g)) return r.constant(Rat(1));
  const int n = r.nvars();
  auto content_mono = [&](const Poly& p) {
    Mono m = p[0].m;
    for (const auto& t : p)
      for (int i = 0; i < n; ++i) m.e[i] = std::min(m.e[i], t.m.e[i]);
    return m;
  };
  if (f.size() == 1 || g.size() == 1) {
    Mono a = content_mono(f), b = content_mono(g), m;
    for (int i = 0; i < n; ++i) m.e[i] = std::min(a.e[i], b.e[i]);
    return r.monomial(m, Rat(1));
  }
  if (r.coeffs().characteristic() == 0) {
    auto h = heu_gcd(r, r.make_primitive(f), r.make_primitive(g), 0);
    if (h) return r.normalize_lc(*h);
  }
  RingPtr gr = PolyRing::make(r.coeffs(), r.names());
  auto l = intersect_ideals(gr, {{gr->resort(f)}, {gr->resort(g)}});
  if (l.size() != 1) throw MathError("intersection of principal ideals is not principal");
  auto q = divide_exact(r, r.mul(f, g), r.resort(l[0]));
  if (!q) throw MathError("gcd computation failed");
  return r.normalize_lc(*q);
}

Poly squarefree_part(const PolyRing& r, const Poly& f) {
  if (r.coeffs().characteristic() != 0) throw UnsupportedBranch("squarefree part is only supported in characteristic 0");
  RingPtr qr = r.coeffs().is_field() ? nullptr : r.with_coeffs(CoeffRing::QQ());
  const PolyRing& R = qr ? *qr : r;
  if (f.empty()) return f;
  if (R.is_constant(f)) return R.constant(Rat(1));
  Poly g = f;
  for (int i = 0; i < R.nvars() && !R.is_constant(g); ++i) {
    Poly d = R.derivative(f, i);
    if (!d.empty()) g = gcd_poly(R, g, d);
  }
  return R.normalize_lc(*divide_exact(R, f, g));
}

}  // namespace invk
