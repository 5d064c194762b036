#pragma once

#include <optional>

#include "invk/actions.hpp"

namespace invk {

// Polynomials in y_1..y_n with coefficients in L = Quot(R).
struct YTerm {
  Mono m;
  Fraction c;
};
using YPoly = std::vector<YTerm>;  // sorted descending in the y order

struct CrossSection {
  std::vector<int> indices;  // 0-based, increasing
  std::vector<Rat> values;
};

struct ExtendedDerksenGB {
  AlgebraPtr base;                       // R = K[x]/I_X
  std::shared_ptr<const FractionField> L;
  RingPtr y_ring;                        // Quot(K)[y_1..y_n] with the y order
  std::vector<Poly> generators;          // a_1..a_n in R
  std::vector<YPoly> basis;              // reduced, monic, ascending leading monomials
  bool tame = true;
  std::optional<CrossSection> cross_section;
  std::vector<Poly> extension_polys;     // in y_ring
  std::string route;                     // "closed-form", "intersection", "elimination"

  int ny() const { return y_ring->nvars(); }
  std::string format(const YPoly& f) const;
  std::vector<std::string> formatted() const;
  // f(y) with y_i -> images[i] (elements of L).
  Fraction evaluate(const YPoly& f, const std::vector<Fraction>& images) const;
  // Normal form of f modulo the basis over L.
  YPoly normal_form(YPoly f) const;
  YPoly from_poly(const Poly& f) const;  // f in y_ring
};

// Arithmetic in L[y] for a fixed y ring.
YPoly yp_add(const FractionField& L, const PolyRing& yr, const YPoly& f, const YPoly& g);
YPoly yp_scale(const FractionField& L, const YPoly& f, const Fraction& c, const Mono& m);
YPoly yp_monic(const FractionField& L, const YPoly& f);
// Reduced Groebner basis over L of the given polynomials.
std::vector<YPoly> yp_reduced_groebner(const FractionField& L, const PolyRing& yr, std::vector<YPoly> gens);

// y variable names avoiding the names of R: "y" for one variable, else y1..yn.
std::vector<std::string> y_names(const std::vector<std::string>& taken, int n);

enum class DerksenRoute { Auto, ClosedForm, Intersection };

struct DerksenFiniteOptions {
  DerksenRoute route = DerksenRoute::Auto;
  std::optional<MonomialOrder> order_y;
  std::vector<Poly> generators;  // a_i; default the variables of R
};

bool has_trivial_stabilizer(const FiniteGroupAction& G, const Poly& f);
// First element among the generators, then seeded random integer combinations
// with |c_i| <= height, whose stabilizer is trivial.
std::optional<Poly> trivial_stabilizer_generator(const FiniteGroupAction& G, const std::vector<Poly>& gens, int trials,
                                                 int height, unsigned seed = 1);

ExtendedDerksenGB derksen_finite(const FiniteGroupAction& G, const DerksenFiniteOptions& opts = {});
// prod over sigma != tau of (sigma a_j - tau a_j) for the closed-form variable a_j.
Poly closed_form_discriminant(const FiniteGroupAction& G, const Poly& a);

// Ideals in K[y, x] (block order y over x) for algebraic actions.
struct MixedIdeal {
  RingPtr yx_ring;  // y_1..y_n then x_1..x_m, over Quot(K)
  RingPtr y_ring;   // the y variables with their order
  int ny = 0;
  std::vector<Poly> gens;  // reduced Groebner basis
};

MixedIdeal derksen_elimination(const AlgebraicGroupAction& G, const std::optional<MonomialOrder>& order_y = {});

struct Extension {
  MixedIdeal ideal;
  bool tame = false;
};
// f_list is parsed in the y variables (names as given by y_names).
Extension extend_with_constraints(const AlgebraicGroupAction& G, const std::vector<std::string>& f_list,
                                  const std::optional<MonomialOrder>& order_y = {});

// eta(k) = k in characteristic 0, the k-th field element in GF(p).
Rat eta(const CoeffRing& k, long i);
CrossSection cross_section_search(const AlgebraicGroupAction& G, int d, long budget = 2000);
int generic_orbit_dimension(const AlgebraicGroupAction& G);

// Groebner basis over L from a mixed basis; pure-x elements must lie in I_X
// (otherwise the basis over L is {1}).
ExtendedDerksenGB reduce_over_function_field(const MixedIdeal& mixed, const AlgebraPtr& X);

// Derksen or extended Derksen basis over L for an algebraic action.
ExtendedDerksenGB derksen_algebraic(const AlgebraicGroupAction& G, const std::vector<std::string>& f_list = {},
                                    const std::optional<MonomialOrder>& order_y = {});

}  // namespace invk
