#include "invk/actions.hpp"

#include <deque>
#include <map>

#include "invk/parse.hpp"

namespace invk {

Poly apply(const PresentedAlgebra& A, const Automorphism& s, const Poly& f) {
  return A.nf(A.ring->substitute(f, *A.ring, s));
}

Automorphism compose(const PresentedAlgebra& A, const Automorphism& s, const Automorphism& t) {
  Automorphism out;
  out.reserve(t.size());
  for (const auto& img : t) out.push_back(apply(A, s, img));
  return out;
}

Automorphism identity_automorphism(const PresentedAlgebra& A) {
  Automorphism id;
  for (int i = 0; i < A.nvars(); ++i) id.push_back(A.nf(A.ring->variable(i)));
  return id;
}

FiniteGroupAction close_group(const AlgebraPtr& A, const std::vector<Automorphism>& gens, size_t cap) {
  const int n = A->nvars();
  std::vector<Automorphism> g;
  for (const auto& s : gens) {
    if (int(s.size()) != n) throw InputError("automorphism must give one image per variable");
    Automorphism t;
    for (const auto& p : s) t.push_back(A->nf(p));
    for (const auto& rel : A->relations)
      if (!apply(*A, t, rel).empty()) throw InputError("generator does not preserve the relation ideal");
    g.push_back(std::move(t));
  }
  FiniteGroupAction G;
  G.algebra = A;
  G.elements.push_back(identity_automorphism(*A));
  std::map<std::string, size_t> index;
  auto key = [&](const Automorphism& s) {
    std::string k;
    for (const auto& p : s) k += A->format(p) + ";";
    return k;
  };
  auto find = [&](const Automorphism& s) -> size_t {
    auto it = index.find(key(s));
    return it == index.end() ? G.elements.size() : it->second;
  };
  index[key(G.elements[0])] = 0;
  for (const auto& s : g) {
    size_t idx = find(s);
    if (idx == G.elements.size()) {
      index[key(s)] = idx;
      G.elements.push_back(s);
    }
    G.generators.push_back(idx);
  }
  std::deque<size_t> queue;
  for (size_t i = 0; i < G.elements.size(); ++i) queue.push_back(i);
  while (!queue.empty()) {
    size_t e = queue.front();
    queue.pop_front();
    for (size_t gi : G.generators) {
      Automorphism c;
      try {
        c = compose(*A, G.elements[gi], G.elements[e]);
      } catch (const MathError&) {
        throw InputError("generated group is not finite");
      }
      if (find(c) == G.elements.size()) {
        if (G.elements.size() >= cap) throw BudgetExhausted("group closure exceeded " + std::to_string(cap) + " elements");
        index[key(c)] = G.elements.size();
        G.elements.push_back(std::move(c));
        queue.push_back(G.elements.size() - 1);
      }
    }
  }
  // Every generator must have the identity among its powers.
  for (size_t gi : G.generators) {
    Automorphism p = G.elements[gi];
    size_t k = 1;
    while (p != G.elements[0] && k <= G.elements.size()) {
      p = compose(*A, G.elements[gi], p);
      ++k;
    }
    if (p != G.elements[0]) throw InputError("generator is not an automorphism of finite order");
  }
  return G;
}

namespace {

Int determinant(IntMatrix m) {
  const size_t n = m.size();
  std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) a[i][j] = Rat(m[i][j]);
  Rat det(1);
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return Int(0);
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (size_t i = c + 1; i < n; ++i) {
      Rat f = a[i][c] / a[c][c];
      for (size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return det.get_num();
}

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
  const size_t n = a.size();
  IntMatrix c(n, std::vector<long>(n, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k)
      for (size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

// A matrix of finite order in GL_n(ZZ) has order at most a bound depending on
// n only; entries of its powers stay small. Entry growth means infinite order.
void check_finite_order(const IntMatrix& m) {
  const size_t n = m.size();
  IntMatrix id(n, std::vector<long>(n, 0));
  for (size_t i = 0; i < n; ++i) id[i][i] = 1;
  IntMatrix p = m;
  for (int k = 0; k < 100000; ++k) {
    if (p == id) return;
    for (const auto& row : p)
      for (long v : row)
        if (std::labs(v) > 1000) throw InputError("matrix has infinite order");
    p = mat_mul(p, m);
  }
  throw InputError("matrix has infinite order");
}

Poly laurent_monomial(const PolyRing& r, int n, const std::vector<long>& exps) {
  Mono m;
  for (int i = 0; i < n; ++i) {
    long e = exps[i];
    if (std::labs(e) > 0xffff) throw InputError("exponent too large");
    if (e >= 0)
      m.e[i] = uint16_t(e);
    else
      m.e[n + i] = uint16_t(-e);
  }
  return r.monomial(m, Rat(1));
}

}  // namespace

FiniteGroupAction multiplicative_action(const CoeffRing& k, const std::vector<std::string>& names,
                                        const std::vector<IntMatrix>& matrices, size_t cap) {
  const int n = int(names.size());
  AlgebraPtr A = laurent_algebra(k, names);
  std::vector<Automorphism> gens;
  for (const auto& M : matrices) {
    if (int(M.size()) != n) throw InputError("matrix size does not match the rank");
    for (const auto& row : M)
      if (int(row.size()) != n) throw InputError("matrix must be square");
    if (abs(determinant(M)) != 1) throw InputError("matrix is not invertible over ZZ");
    check_finite_order(M);
    Automorphism s(2 * n);
    for (int i = 0; i < n; ++i) {
      std::vector<long> col(n), ncol(n);
      for (int j = 0; j < n; ++j) {
        col[j] = M[j][i];
        ncol[j] = -M[j][i];
      }
      s[i] = A->nf(laurent_monomial(*A->ring, n, col));
      s[n + i] = A->nf(laurent_monomial(*A->ring, n, ncol));
    }
    gens.push_back(std::move(s));
  }
  return close_group(A, gens, cap);
}

FiniteGroupAction linear_action(const AlgebraPtr& A, const std::vector<std::vector<std::vector<Rat>>>& matrices,
                                size_t cap) {
  const int n = A->nvars();
  const PolyRing& r = *A->ring;
  std::vector<Automorphism> gens;
  for (const auto& M : matrices) {
    if (int(M.size()) != n) throw InputError("matrix size does not match the number of variables");
    Automorphism s(n);
    for (int i = 0; i < n; ++i) {
      Poly img;
      for (int j = 0; j < n; ++j) {
        if (int(M[j].size()) != n) throw InputError("matrix must be square");
        img = r.add(img, r.scale(r.variable(j), r.coeffs().normalize(M[j][i])));
      }
      s[i] = img;
    }
    gens.push_back(std::move(s));
  }
  return close_group(A, gens, cap);
}

std::vector<Poly> orbit_polynomial(const FiniteGroupAction& G, const Poly& b) {
  const PresentedAlgebra& A = *G.algebra;
  const PolyRing& r = *A.ring;
  std::vector<Poly> c{r.constant(Rat(1))};
  for (const auto& s : G.elements) {
    Poly sb = apply(A, s, b);
    std::vector<Poly> next(c.size() + 1);
    for (size_t k = 0; k < c.size(); ++k) {
      next[k + 1] = r.add(next[k + 1], c[k]);
      next[k] = A.nf(r.sub(next[k], r.mul(c[k], sb)));
    }
    c = std::move(next);
  }
  return c;
}

bool is_invariant(const FiniteGroupAction& G, const Poly& f) {
  const PresentedAlgebra& A = *G.algebra;
  Poly nf = A.nf(f);
  for (size_t gi : G.generators)
    if (apply(A, G.elements[gi], f) != nf) return false;
  return true;
}

bool is_invariant(const FiniteGroupAction& G, const FractionField& L, const Fraction& f) {
  const PresentedAlgebra& F = *L.field_algebra();
  const PolyRing& r = *F.ring;
  for (size_t gi : G.generators) {
    const Automorphism& s = G.elements[gi];
    Poly sn = r.substitute(f.num, r, s), sd = r.substitute(f.den, r, s);
    if (!F.is_zero(r.sub(r.mul(sn, f.den), r.mul(f.num, sd)))) return false;
  }
  return true;
}

std::vector<Poly> AlgebraicGroupAction::base_ideal() const {
  std::vector<Poly> out;
  for (const auto& r : x_algebra->relations) out.push_back(embed_x(r));
  out.insert(out.end(), group_ideal.begin(), group_ideal.end());
  return out;
}

Poly AlgebraicGroupAction::embed_x(const Poly& f) const {
  std::vector<int> map(nx());
  for (int i = 0; i < nx(); ++i) map[i] = i;
  return x_algebra->ring->transfer(f, *xz_ring, map);
}

Poly AlgebraicGroupAction::act(const Poly& f) const { return x_algebra->ring->substitute(f, *xz_ring, action_polys); }

AlgebraicGroupAction make_algebraic_action(const AlgebraPtr& X, const std::vector<std::string>& z_vars,
                                           const std::vector<std::string>& group_ideal,
                                           const std::vector<std::string>& action_polys) {
  AlgebraicGroupAction G;
  G.x_algebra = X;
  G.z_vars = z_vars;
  std::vector<std::string> names = X->ring->names();
  for (const auto& z : z_vars) {
    if (std::find(names.begin(), names.end(), z) != names.end()) throw InputError("group variable '" + z + "' clashes");
    names.push_back(z);
  }
  G.xz_ring = PolyRing::make(X->coeffs(), names);
  for (const auto& s : group_ideal) G.group_ideal.push_back(parse_poly(s, *G.xz_ring));
  if (int(action_polys.size()) != X->nvars()) throw InputError("need one action polynomial per variable");
  for (const auto& s : action_polys) G.action_polys.push_back(parse_poly(s, *G.xz_ring));
  RingPtr fr = G.xz_ring->coeffs().is_field() ? G.xz_ring : G.xz_ring->with_coeffs(CoeffRing::QQ());
  G.base_gb = groebner(fr, G.base_ideal());
  return G;
}

bool is_invariant(const AlgebraicGroupAction& G, const Poly& f) {
  Poly d = G.xz_ring->sub(G.act(f), G.embed_x(f));
  return normal_form(d, G.base_gb).empty();
}

bool is_invariant(const AlgebraicGroupAction& G, const FractionField& L, const Fraction& f) {
  const PolyRing& xr = L.ring();
  const PolyRing& r = *G.base_gb.ring;
  std::vector<int> map(G.nx());
  for (int i = 0; i < G.nx(); ++i) map[i] = i;
  Poly n = xr.transfer(f.num, r, map), d = xr.transfer(f.den, r, map);
  Poly gn = xr.substitute(f.num, r, G.action_polys), gd = xr.substitute(f.den, r, G.action_polys);
  return normal_form(r.sub(r.mul(gn, d), r.mul(n, gd)), G.base_gb).empty();
}

bool identity_point_check(const AlgebraicGroupAction& G, const std::vector<Rat>& e) {
  if (int(e.size()) != G.nz()) throw InputError("identity point has the wrong length");
  const PolyRing& xr = *G.x_algebra->ring;
  std::vector<Poly> images;
  for (int i = 0; i < G.nx(); ++i) images.push_back(xr.variable(i));
  for (const auto& c : e) images.push_back(xr.constant(xr.coeffs().normalize(c)));
  for (const auto& z : G.group_ideal)
    if (!G.x_algebra->is_zero(G.xz_ring->substitute(z, xr, images))) return false;
  for (int i = 0; i < G.nx(); ++i)
    if (!G.x_algebra->equal(G.xz_ring->substitute(G.action_polys[i], xr, images), xr.variable(i))) return false;
  return true;
}

GaAction make_ga_action(const AlgebraPtr& X, const std::string& z, const std::vector<std::string>& action_polys) {
  GaAction A;
  A.base = make_algebraic_action(X, {z}, {}, action_polys);
  const int nx = X->nvars();
  const PolyRing& xr = *X->ring;
  for (const auto& g : A.base.action_polys) {
    int d = A.base.xz_ring->var_degree(g, nx);
    std::vector<std::vector<Term>> parts(d + 1);
    for (const auto& t : g) {
      Term u = t;
      int j = u.m.e[nx];
      u.m.e[nx] = 0;
      parts[j].push_back(u);
    }
    std::vector<Poly> cs;
    for (auto& p : parts) cs.push_back(xr.from_terms(p));
    A.degrees.push_back(d);
    A.coeffs.push_back(std::move(cs));
  }
  return A;
}

}  // namespace invk
