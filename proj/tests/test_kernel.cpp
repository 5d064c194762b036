#include <doctest.h>

#include <random>

#include "invk/parse.hpp"

using namespace invk;

TEST_CASE("coefficient rings") {
  CoeffRing q = CoeffRing::QQ();
  CHECK(q.div(Rat(1), Rat(3)) == Rat(1, 3));
  CoeffRing z = CoeffRing::ZZ();
  CHECK(z.divides(Rat(3), Rat(12)));
  CHECK_FALSE(z.divides(Rat(5), Rat(12)));
  CHECK_THROWS_AS(z.normalize(Rat(1, 2)), MathError);
  CoeffRing f7 = CoeffRing::GF(Int(7));
  CHECK(f7.normalize(Rat(-1)) == Rat(6));
  CHECK(f7.inv(Rat(3)) == Rat(5));
  CHECK(f7.normalize(Rat(1, 2)) == Rat(4));
  CHECK_THROWS_AS(CoeffRing::GF(Int(9)), InputError);
}

TEST_CASE("balanced division") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> dist(-1000, 1000);
  for (int it = 0; it < 2000; ++it) {
    Int a = dist(rng), b = dist(rng);
    if (b == 0) continue;
    Int q, r;
    CoeffRing::divmod_balanced(a, b, q, r);
    CHECK(a == q * b + r);
    Int ab = abs(b);
    CHECK(2 * r <= ab);
    CHECK(2 * r > -ab);
  }
}

TEST_CASE("parse and format round trip") {
  RingPtr r = PolyRing::make(CoeffRing::QQ(), {"x", "y", "z"});
  Poly f = parse_poly("(x + y)^2 - 2*x*y - y^2", *r);
  CHECK(r->format(f) == "x^2");
  Poly g = parse_poly("x^2/2 - 3*y*z + 7", *r);
  CHECK(r->format(g) == "1/2*x^2 - 3*y*z + 7");
  CHECK(r->format(parse_poly(r->format(g), *r)) == r->format(g));
  CHECK(r->format(r->zero()) == "0");
  CHECK_THROWS_AS(parse_poly("x y", *r), InputError);
  CHECK_THROWS_AS(parse_poly("x^-1", *r), InputError);
  CHECK_THROWS_AS(parse_poly("w + 1", *r), InputError);
  CHECK_THROWS_AS(parse_poly("", *r), InputError);
  RingPtr zr = PolyRing::make(CoeffRing::ZZ(), {"x"});
  CHECK_THROWS_AS(parse_poly("x/2", *zr), InputError);
  CHECK(zr->format(parse_poly("4*x/2", *zr)) == "2*x");
}

TEST_CASE("ring arithmetic laws on random polynomials") {
  RingPtr r = PolyRing::make(CoeffRing::QQ(), {"a", "b", "c"}, MonomialOrder::lex(3));
  std::mt19937 rng(11);
  auto rnd = [&]() {
    std::uniform_int_distribution<int> e(0, 3), c(-5, 5), len(0, 5);
    std::vector<Term> ts;
    int L = len(rng);
    for (int i = 0; i < L; ++i) {
      Term t;
      for (int v = 0; v < 3; ++v) t.m.e[v] = uint16_t(e(rng));
      t.c = Rat(c(rng));
      ts.push_back(t);
    }
    return r->from_terms(ts);
  };
  for (int it = 0; it < 100; ++it) {
    Poly f = rnd(), g = rnd(), h = rnd();
    CHECK(r->mul(f, r->add(g, h)) == r->add(r->mul(f, g), r->mul(f, h)));
    CHECK(r->mul(f, g) == r->mul(g, f));
    CHECK(r->mul(r->mul(f, g), h) == r->mul(f, r->mul(g, h)));
    CHECK(r->sub(f, f).empty());
    for (size_t i = 1; i < f.size(); ++i) CHECK(r->cmp(f[i - 1].m, f[i].m) > 0);
  }
}

TEST_CASE("block orders") {
  std::vector<std::string> names{"x", "y", "z"};
  MonomialOrder o = parse_order("lex(z);grevlex(x,y)", names);
  Mono z, x5;
  z.e[2] = 1;
  x5.e[0] = 5;
  CHECK(o.compare(z, x5) > 0);
  MonomialOrder g = MonomialOrder::grevlex(3);
  CHECK(g.compare(z, x5) < 0);
  Mono xz, yy;  // grevlex: x*z < y^2
  xz.e[0] = 1;
  xz.e[2] = 1;
  yy.e[1] = 2;
  CHECK(g.compare(xz, yy) < 0);
  CHECK_THROWS_AS(parse_order("lex(w)", names), InputError);
}

TEST_CASE("substitution is a ring map") {
  RingPtr r = PolyRing::make(CoeffRing::QQ(), {"x", "y"});
  RingPtr t = PolyRing::make(CoeffRing::QQ(), {"s", "u"});
  std::vector<Poly> im{parse_poly("s + u", *t), parse_poly("s*u - 1", *t)};
  Poly f = parse_poly("x^2 - y", *r), g = parse_poly("x*y + 3", *r);
  CHECK(r->substitute(r->mul(f, g), *t, im) == t->mul(r->substitute(f, *t, im), r->substitute(g, *t, im)));
  CHECK(t->format(r->substitute(f, *t, im)) == "s^2 + s*u + u^2 + 1");
}
