#pragma once

#include "invk/algebra.hpp"

namespace invk {

// Images of the algebra variables, as normal forms.
using Automorphism = std::vector<Poly>;

Poly apply(const PresentedAlgebra& A, const Automorphism& s, const Poly& f);
// s∘t, i.e. x_i -> s(t(x_i)).
Automorphism compose(const PresentedAlgebra& A, const Automorphism& s, const Automorphism& t);
Automorphism identity_automorphism(const PresentedAlgebra& A);

struct FiniteGroupAction {
  AlgebraPtr algebra;
  std::vector<Automorphism> elements;  // elements[0] is the identity
  std::vector<size_t> generators;      // indices into elements
  size_t order() const { return elements.size(); }
};

constexpr size_t kDefaultClosureCap = 100000;

// Closes the generated group; checks that generators map I into I and are
// invertible.
FiniteGroupAction close_group(const AlgebraPtr& A, const std::vector<Automorphism>& gens,
                              size_t cap = kDefaultClosureCap);

using IntMatrix = std::vector<std::vector<long>>;
// Laurent algebra on `names` with x^v -> x^(M v) for each matrix M.
FiniteGroupAction multiplicative_action(const CoeffRing& k, const std::vector<std::string>& names,
                                        const std::vector<IntMatrix>& matrices, size_t cap = kDefaultClosureCap);
// Linear action x_i -> sum_j M[j][i] x_j on a polynomial algebra.
FiniteGroupAction linear_action(const AlgebraPtr& A, const std::vector<std::vector<std::vector<Rat>>>& matrices,
                                size_t cap = kDefaultClosureCap);

// Coefficients c_0..c_|G| of prod_sigma (y - sigma(b)), c_k the coefficient of y^k.
std::vector<Poly> orbit_polynomial(const FiniteGroupAction& G, const Poly& b);
bool is_invariant(const FiniteGroupAction& G, const Poly& f);
bool is_invariant(const FiniteGroupAction& G, const FractionField& L, const Fraction& f);

// sigma^{-1} . x_i = g_i(x, sigma) with sigma ranging over V(I_G).
struct AlgebraicGroupAction {
  AlgebraPtr x_algebra;
  RingPtr xz_ring;                  // x variables then z variables
  std::vector<std::string> z_vars;
  std::vector<Poly> group_ideal;    // I_G, in xz_ring
  std::vector<Poly> action_polys;   // g_1..g_n, in xz_ring
  GroebnerBasis base_gb;            // of I_X + I_G over the fraction field of K

  int nx() const { return x_algebra->nvars(); }
  int nz() const { return int(z_vars.size()); }
  // Generators of (I_X + I_G) in K[x, z].
  std::vector<Poly> base_ideal() const;
  Poly embed_x(const Poly& f) const;  // K[x] -> K[x,z]
  Poly act(const Poly& f) const;      // f(g_1..g_n) in K[x,z]
};

AlgebraicGroupAction make_algebraic_action(const AlgebraPtr& X, const std::vector<std::string>& z_vars,
                                           const std::vector<std::string>& group_ideal,
                                           const std::vector<std::string>& action_polys);
bool is_invariant(const AlgebraicGroupAction& G, const Poly& f);
bool is_invariant(const AlgebraicGroupAction& G, const FractionField& L, const Fraction& f);
// Checks g_i(x, e) = x_i mod I_X at the given identity point.
bool identity_point_check(const AlgebraicGroupAction& G, const std::vector<Rat>& e);

// Additive group: g_i in K[x][z] with a single group parameter z.
struct GaAction {
  AlgebraicGroupAction base;  // z_vars = {z}, I_G = 0
  std::vector<int> degrees;   // deg_z g_i
  // coeffs[i][j] = coefficient of z^j in g_i, in the x ring
  std::vector<std::vector<Poly>> coeffs;
};
GaAction make_ga_action(const AlgebraPtr& X, const std::string& z, const std::vector<std::string>& action_polys);

}  // namespace invk
