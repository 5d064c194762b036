#include <doctest.h>

#include <algorithm>
#include <functional>
#include <random>

#include "invk/invariants.hpp"
#include "invk/parse.hpp"

using namespace invk;

namespace {

Poly random_poly(const PolyRing& r, std::mt19937& rng, int max_deg, int terms, int height) {
  std::uniform_int_distribution<int> coef(-height, height), deg(0, max_deg);
  Poly out = r.zero();
  for (int i = 0; i < terms; ++i) {
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

struct Example {
  std::string name;
  std::function<FiniteGroupAction()> make;
};

FiniteGroupAction permute(const CoeffRing& k, const std::vector<std::string>& vars, const std::vector<std::string>& img,
                          const std::vector<std::string>& rels = {}) {
  RingPtr r = PolyRing::make(k, vars);
  std::vector<Poly> rp, s;
  for (const auto& x : rels) rp.push_back(parse_poly(x, *r));
  for (const auto& x : img) s.push_back(parse_poly(x, *r));
  return close_group(make_algebra(r, rp), {s});
}

// Every finite example used by the acceptance run, domains only.
std::vector<Example> finite_examples(const CoeffRing& k) {
  return {
      {"reflection", [k] { return permute(k, {"x"}, {"1 - x"}); }},
      {"laurent klein",
       [k] {
         AlgebraPtr A = laurent_algebra(k, {"x"});
         auto P = [&](const char* s) { return parse_poly(s, *A->ring); };
         return close_group(A, {{P("xinv"), P("x")}, {P("-x"), P("-xinv")}});
       }},
      {"swap", [k] { return permute(k, {"x1", "x2"}, {"x2", "x1"}); }},
      {"minus identity", [k] { return multiplicative_action(k, {"x", "y"}, {{{-1, 0}, {0, -1}}}); }},
      {"minus identity and swap",
       [k] { return multiplicative_action(k, {"x", "y"}, {{{-1, 0}, {0, -1}}, {{0, 1}, {1, 0}}}); }},
      {"dihedral", [k] { return multiplicative_action(k, {"x", "y"}, {{{-1, 0}, {0, 1}}, {{0, 1}, {1, 0}}}); }},
      {"block swap",
       [k] {
         return permute(k, {"x1", "x2", "x3", "y1", "y2", "y3"}, {"y1", "y2", "y3", "x1", "x2", "x3"});
       }},
  };
}

std::vector<Poly> random_ideal(const PolyRing& r, std::mt19937& rng) {
  std::vector<Poly> gens;
  for (int g = 0; g < 3; ++g) gens.push_back(random_poly(r, rng, 3, 3, 4));
  return gens;
}

}  // namespace

TEST_SUITE("properties") {

TEST_CASE("S- and G-polynomials of computed bases reduce to zero") {
  std::mt19937 rng(21);
  for (auto k : {CoeffRing::QQ(), CoeffRing::ZZ(), CoeffRing::GF(Int(7))}) {
    RingPtr r = PolyRing::make(k, {"a", "b", "c"});
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Poly> gens = random_ideal(*r, rng);
      GroebnerBasis gb = groebner(r, gens);
      CHECK(satisfies_buchberger_criterion(*r, gb.gens));
      for (const auto& f : gens) CHECK(normal_form(f, gb).empty());
    }
  }
  // bases computed inside the invariant ring algorithms
  for (const auto& ex : finite_examples(CoeffRing::ZZ())) {
    FiniteGroupAction G = ex.make();
    CHECK(satisfies_buchberger_criterion(*G.algebra->ring, G.algebra->gb.gens));
  }
}

TEST_CASE("reduced bases are canonical under shuffles") {
  std::mt19937 rng(22);
  for (auto k : {CoeffRing::QQ(), CoeffRing::ZZ()}) {
    RingPtr r = PolyRing::make(k, {"a", "b", "c"});
    for (int ideal = 0; ideal < 10; ++ideal) {
      std::vector<Poly> gens = random_ideal(*r, rng);
      GroebnerBasis ref = groebner(r, gens);
      for (int s = 0; s < 20; ++s) {
        std::vector<Poly> sh = gens;
        std::shuffle(sh.begin(), sh.end(), rng);
        if (s % 2) sh.push_back(r->mul(sh[0], sh[1]));
        CHECK(groebner(r, sh).gens == ref.gens);
      }
    }
  }
}

TEST_CASE("ideal membership agrees with a brute force search") {
  // f = c1*g1 + c2*g2 with cofactors of degree <= 1 and height <= 2; the
  // search enumerates all such cofactors.
  std::mt19937 rng(23);
  int instances = 0, members = 0;
  for (auto k : {CoeffRing::QQ(), CoeffRing::ZZ()}) {
    RingPtr r = PolyRing::make(k, {"x", "y"});
    std::vector<Poly> basis{r->constant(Rat(1)), r->variable(0), r->variable(1)};
    for (int it = 0; it < 25; ++it, ++instances) {
      std::vector<Poly> g{random_poly(*r, rng, 2, 2, 3), random_poly(*r, rng, 2, 2, 3)};
      Poly f;
      std::uniform_int_distribution<int> c(-2, 2);
      if (it % 2 == 0) {
        for (int i = 0; i < 2; ++i)
          for (const auto& b : basis) f = r->add(f, r->mul(r->scale(b, Rat(c(rng))), g[i]));
      } else {
        f = random_poly(*r, rng, 3, 3, 5);
      }
      bool brute = false;
      std::vector<int> e(6, -2);
      while (!brute) {
        Poly s;
        for (int i = 0; i < 6; ++i) s = r->add(s, r->mul(r->scale(basis[i % 3], Rat(e[i])), g[i / 3]));
        if (r->sub(s, f).empty()) brute = true;
        int p = 0;
        while (p < 6 && e[p] == 2) e[p++] = -2;
        if (p == 6) break;
        ++e[p];
      }
      Membership m = membership(r, f, g, true);
      if (brute) CHECK(m.member);
      if (m.member) {
        ++members;
        Poly s;
        for (int i = 0; i < 2; ++i) s = r->add(s, r->mul(m.cofactors[i], g[i]));
        CHECK(r->sub(s, f).empty());
      }
    }
  }
  CHECK(instances == 50);
  CHECK(members >= 25);
}

TEST_CASE("Derksen coefficients are invariant") {
  for (const auto& ex : finite_examples(CoeffRing::ZZ())) {
    CAPTURE(ex.name);
    FiniteGroupAction G = ex.make();
    ExtendedDerksenGB e = derksen_finite(G);
    for (const auto& g : e.basis)
      for (const auto& t : g) CHECK(is_invariant(G, *e.L, t.c));
  }
}

TEST_CASE("closed-form and intersection routes agree") {
  int compared = 0;
  for (const auto& ex : finite_examples(CoeffRing::ZZ())) {
    CAPTURE(ex.name);
    FiniteGroupAction G = ex.make();
    DerksenFiniteOptions p;
    p.route = DerksenRoute::ClosedForm;
    ExtendedDerksenGB a;
    try {
      a = derksen_finite(G, p);
    } catch (const InputError&) {
      continue;  // no generator with trivial stabilizer
    }
    DerksenFiniteOptions i;
    i.route = DerksenRoute::Intersection;
    i.order_y = a.y_ring->order();
    CHECK(derksen_finite(G, i).formatted() == a.formatted());
    ++compared;
  }
  CHECK(compared >= 6);
}

TEST_CASE("invariantization is linear and idempotent on samples") {
  std::mt19937 rng(24);
  for (const auto& ex : finite_examples(CoeffRing::QQ())) {
    CAPTURE(ex.name);
    FiniteGroupAction G = ex.make();
    InvariantizationMap m{derksen_finite(G)};
    const FractionField& L = *m.edg.L;
    const PolyRing& r = *G.algebra->ring;
    auto phi = [&](const Poly& f) { return invariantize(m, f); };
    int polynomial_values = 0;
    for (int i = 0; i < 100; ++i) {
      Poly f = random_poly(r, rng, 3, 3, 5), g = random_poly(r, rng, 3, 3, 5);
      Rat c(int(rng() % 9) - 4);
      CHECK(L.equal(phi(r.add(r.scale(f, c), g)), L.add(L.mul(L.constant(c), phi(f)), phi(g))));
      Fraction v = phi(f);
      CHECK(is_invariant(G, L, v));
      if (auto p = L.try_polynomial(v)) {
        ++polynomial_values;
        CHECK(L.equal(phi(L.ring().transfer_by_name(*p, r)), v));
      }
    }
    CHECK(polynomial_values > 0);
  }
}

}  // TEST_SUITE
