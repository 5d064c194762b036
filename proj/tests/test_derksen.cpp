#include <doctest.h>

#include "invk/derksen.hpp"
#include "invk/parse.hpp"

using namespace invk;

namespace {

FiniteGroupAction reflection_c2() {
  RingPtr r = PolyRing::make(CoeffRing::ZZ(), {"x"});
  return close_group(make_algebra(r, {}), {{parse_poly("1 - x", *r)}});
}

FiniteGroupAction laurent_klein() {
  AlgebraPtr A = laurent_algebra(CoeffRing::ZZ(), {"x"});
  auto P = [&](const char* s) { return parse_poly(s, *A->ring); };
  return close_group(A, {{P("xinv"), P("x")}, {P("-x"), P("-xinv")}});
}

FiniteGroupAction swap_s2() {
  RingPtr r = PolyRing::make(CoeffRing::QQ(), {"x1", "x2"});
  return close_group(make_algebra(r, {}), {{parse_poly("x2", *r), parse_poly("x1", *r)}});
}

AlgebraicGroupAction gm(const char* w1, const char* w2) {
  RingPtr r = PolyRing::make(CoeffRing::QQ(), {"x1", "x2"});
  return make_algebraic_action(make_algebra(r, {}), {"t", "s"}, {"t*s - 1"}, {w1, w2});
}

std::vector<std::string> formatted(const MixedIdeal& m) {
  std::vector<std::string> out;
  for (const auto& g : m.gens) out.push_back(m.yx_ring->format(g));
  return out;
}

// Each basis element vanishes at every orbit point.
void check_membership(const FiniteGroupAction& G, const ExtendedDerksenGB& e) {
  const FractionField& L = *e.L;
  for (const auto& s : G.elements) {
    std::vector<Fraction> pt;
    for (const auto& a : e.generators) pt.push_back(L.from_poly(apply(*G.algebra, s, a)));
    for (const auto& g : e.basis) CHECK(L.is_zero(e.evaluate(g, pt)));
  }
}

// Coefficients are fixed by the group.
void check_invariant_coefficients(const FiniteGroupAction& G, const ExtendedDerksenGB& e) {
  for (const auto& g : e.basis)
    for (const auto& t : g) CHECK(is_invariant(G, *e.L, t.c));
}

}  // namespace

TEST_CASE("Derksen ideal of the reflection x -> 1 - x") {
  FiniteGroupAction G = reflection_c2();
  ExtendedDerksenGB e = derksen_finite(G);
  CHECK(e.route == "closed-form");
  CHECK(e.formatted() == std::vector<std::string>{"y^2 - y - (x^2 - x)"});
  check_membership(G, e);
  DerksenFiniteOptions o;
  o.route = DerksenRoute::Intersection;
  CHECK(derksen_finite(G, o).formatted() == e.formatted());
}

TEST_CASE("Derksen ideal of the Laurent Klein four group") {
  FiniteGroupAction G = laurent_klein();
  CHECK(G.order() == 4);
  ExtendedDerksenGB e = derksen_finite(G);
  CHECK(e.route == "closed-form");
  CHECK(e.formatted() ==
        std::vector<std::string>{"y1^4 - (x^2 + xinv^2)*y1^2 + 1", "y2 + y1^3 - (x^2 + xinv^2)*y1"});
  check_membership(G, e);
  check_invariant_coefficients(G, e);
  DerksenFiniteOptions o;
  o.route = DerksenRoute::Intersection;
  o.order_y = e.y_ring->order();
  ExtendedDerksenGB i = derksen_finite(G, o);
  CHECK(i.route == "intersection");
  CHECK(i.formatted() == e.formatted());
}

TEST_CASE("Derksen ideal of S2 depends on the order") {
  FiniteGroupAction G = swap_s2();
  DerksenFiniteOptions o;
  o.order_y = MonomialOrder::lex(2);
  ExtendedDerksenGB e = derksen_finite(G, o);
  CHECK(e.route == "closed-form");
  CHECK(e.formatted() == std::vector<std::string>{"y2^2 - (x1 + x2)*y2 + x1*x2", "y1 + y2 - (x1 + x2)"});
  o.route = DerksenRoute::Intersection;
  CHECK(derksen_finite(G, o).formatted() == e.formatted());
  check_membership(G, e);
  // grevlex: y2 is still the smallest variable
  DerksenFiniteOptions g;
  g.order_y = MonomialOrder::grevlex(2);
  ExtendedDerksenGB eg = derksen_finite(G, g);
  CHECK(eg.route == "closed-form");
  check_membership(G, eg);
}

TEST_CASE("closed-form denominators divide the discriminant") {
  for (const auto& G : {reflection_c2(), laurent_klein(), swap_s2()}) {
    ExtendedDerksenGB e = derksen_finite(G);
    Poly a1;
    for (const auto& a : e.generators)
      if (has_trivial_stabilizer(G, a)) {
        a1 = a;
        break;
      }
    Poly disc = closed_form_discriminant(G, a1);
    CHECK(is_invariant(G, disc));
    const FractionField& L = *e.L;
    for (const auto& g : e.basis)
      for (const auto& t : g) CHECK(L.try_polynomial(L.mul(L.from_poly(disc), t.c)).has_value());
  }
}

TEST_CASE("trivial stabilizer search") {
  FiniteGroupAction G = swap_s2();
  const PolyRing& r = *G.algebra->ring;
  CHECK_FALSE(has_trivial_stabilizer(G, parse_poly("x1 + x2", r)));
  CHECK(has_trivial_stabilizer(G, parse_poly("x1", r)));
  auto a = trivial_stabilizer_generator(G, {parse_poly("x1 + x2", r), parse_poly("x1*x2", r), parse_poly("x1", r)}, 5, 2);
  REQUIRE(a);
  CHECK(r.format(*a) == "x1");
  AlgebraPtr L2 = laurent_algebra(CoeffRing::ZZ(), {"x", "y"});
  FiniteGroupAction D = multiplicative_action(CoeffRing::ZZ(), {"x", "y"}, {{{-1, 0}, {0, 1}}, {{0, 1}, {1, 0}}});
  std::vector<Poly> vars;
  for (int i = 0; i < 4; ++i) vars.push_back(D.algebra->ring->variable(i));
  for (const auto& v : vars) CHECK_FALSE(has_trivial_stabilizer(D, v));
  auto w = trivial_stabilizer_generator(D, vars, 50, 3);
  REQUIRE(w);
  CHECK(has_trivial_stabilizer(D, *w));
}

TEST_CASE("dihedral Derksen ideal via points") {
  FiniteGroupAction D = multiplicative_action(CoeffRing::ZZ(), {"x", "y"}, {{{-1, 0}, {0, 1}}, {{0, 1}, {1, 0}}});
  ExtendedDerksenGB e = derksen_finite(D);
  CHECK(e.route == "intersection");
  check_membership(D, e);
  check_invariant_coefficients(D, e);
}

TEST_CASE("Derksen ideals of algebraic actions by elimination") {
  CHECK(formatted(derksen_elimination(gm("t*x1", "t*x2"))) == std::vector<std::string>{"-y2*x1 + y1*x2"});
  CHECK(formatted(derksen_elimination(gm("t*x1", "s*x2"))) == std::vector<std::string>{"y1*y2 - x1*x2"});
  RingPtr r = PolyRing::make(CoeffRing::QQ(), {"x1", "x2"});
  AlgebraicGroupAction triv = make_algebraic_action(make_algebra(r, {}), {"z"}, {"z - 1"}, {"x1", "x2"});
  CHECK(formatted(derksen_elimination(triv)) == std::vector<std::string>{"y2 - x2", "y1 - x1"});
  CHECK(generic_orbit_dimension(gm("t*x1", "t*x2")) == 1);
  CHECK(generic_orbit_dimension(triv) == 0);
}

TEST_CASE("extended Derksen ideals and cross-sections") {
  AlgebraicGroupAction G = gm("t*x1", "t*x2");
  Extension tame = extend_with_constraints(G, {"y1 - 1"});
  CHECK(tame.tame);
  ExtendedDerksenGB e = derksen_algebraic(G, {"y1 - 1"});
  CHECK(e.tame);
  CHECK(e.formatted() == std::vector<std::string>{"y2 - x2/x1", "y1 - 1"});
  Extension wild = extend_with_constraints(G, {"y1", "y2"});
  CHECK_FALSE(wild.tame);
  ExtendedDerksenGB w = derksen_algebraic(G, {"y1", "y2"});
  CHECK(w.formatted() == std::vector<std::string>{"y2", "y1"});
  CHECK(derksen_algebraic(G, {}).tame);

  CrossSection cs = cross_section_search(G, 1);
  CHECK(cs.indices == std::vector<int>{0});
  CHECK(cs.values == std::vector<Rat>{Rat(1)});
  CHECK(cross_section_search(G, 0).indices.empty());
  CHECK(extend_with_constraints(G, {"y1 - 1"}).tame);

  // reduce_over_function_field on a hand-made mixed basis
  MixedIdeal m = derksen_elimination(G);
  m.gens.push_back(parse_poly("y1 - 1", *m.yx_ring));
  m.gens.push_back(parse_poly("x1*y1 - x1", *m.yx_ring));
  ExtendedDerksenGB red = reduce_over_function_field(m, G.x_algebra);
  CHECK(red.formatted() == std::vector<std::string>{"y2 - x2/x1", "y1 - 1"});
}

TEST_CASE("Daigle-Freudenburg orbit dimension") {
  RingPtr r = PolyRing::make(CoeffRing::QQ(), {"x1", "x2", "x3", "x4", "x5"});
  GaAction ga = make_ga_action(make_algebra(r, {}), "z",
                               {"x1", "x2 + z*x1^3", "x3 + z*x2 + z^2/2*x1^3", "x4 + z*x3 + z^2/2*x2 + z^3/6*x1^3",
                                "x5 + z*x1^2"});
  CHECK(generic_orbit_dimension(ga.base) == 1);
}
