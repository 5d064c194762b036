#pragma once

#include <functional>

#include "invk/derksen.hpp"

namespace invk {

// ---------------------------------------------------------------------------
// Subalgebras K[f_1..f_m] of R = K[x]/I

class SubalgebraTest {
 public:
  SubalgebraTest(AlgebraPtr R, std::vector<Poly> gens, const std::string& tprefix = "t");

  // g0 in K[t] with g0(f) = f mod I, or nullopt.
  std::optional<Poly> express(const Poly& f) const;
  bool contains(const Poly& f) const { return express(f).has_value(); }
  const RingPtr& t_ring() const { return t_ring_; }
  const std::vector<Poly>& gens() const { return gens_; }
  // K[t] ∩ <I, t_i - f_i>: the relations between the generators.
  std::vector<Poly> relations() const;

 private:
  AlgebraPtr R_;
  std::vector<Poly> gens_;
  RingPtr big_, t_ring_;
  GroebnerBasis gb_;
};

bool algebra_contains(const AlgebraPtr& R, const std::vector<Poly>& big, const std::vector<Poly>& small);
bool algebras_equal(const AlgebraPtr& R, const std::vector<Poly>& a, const std::vector<Poly>& b);
// Drops constants, repeats and generators lying in the algebra of the rest
// (largest first).
std::vector<Poly> prune_generators(const AlgebraPtr& R, std::vector<Poly> gens);

// ---------------------------------------------------------------------------
// Localized invariant rings and invariantization

struct LocalizedInvariantRing {
  AlgebraPtr algebra;
  Poly a;                  // localizer
  std::vector<Poly> gens;  // b_1..b_k with R^G_a = K[a^-1, a, b]
  std::string source;
};

struct InvariantRingResult {
  AlgebraPtr algebra;
  std::vector<Poly> gens;
  RingPtr z_ring;                // K[z_1..z_m]
  std::vector<Poly> relations;   // relation ideal J
  std::optional<Poly> localizer;
  int rounds = 0;
  bool minimal = false;
};

// Coefficients of the basis, deduplicated, constants dropped.
std::vector<Fraction> coefficient_algebra(const ExtendedDerksenGB& e);
// Generators of L^G; requires a tame basis.
std::vector<Fraction> invariant_field(const ExtendedDerksenGB& e);

// a^k c in R for every coefficient c, with the given invariant a.
LocalizedInvariantRing localized_invariant_ring(const ExtendedDerksenGB& e, const Poly& a, int k_max = 64);
// Finite groups: a = 1 if possible, else the orbit product of a common
// denominator.
LocalizedInvariantRing localized_invariant_ring(const FiniteGroupAction& G, const ExtendedDerksenGB& e);

struct InvariantizationMap {
  ExtendedDerksenGB edg;
};
// phi(f) = NF(f(y))(0) for f in K[y].
Fraction invariantize_y(const InvariantizationMap& map, const YPoly& f);
// b in R, represented with y_i -> a_i when the generators are the variables.
Fraction invariantize(const InvariantizationMap& map, const Poly& b);

struct RewriteContext {
  ExtendedDerksenGB edg;
  std::vector<Fraction> images;  // psi(t_k)
  RingPtr yt_ring;               // y block over t block
  RingPtr t_ring;
  std::vector<Poly> basis_t;     // the basis with coefficients replaced by t_k
};
RewriteContext make_rewrite_context(const ExtendedDerksenGB& e);
struct Rewrite {
  bool invariant = false;
  Poly g0;                // in t_ring
  Fraction discrepancy;   // psi(g0) - b when not invariant
};
Rewrite rewrite_invariant(const RewriteContext& ctx, const Poly& b);
Fraction apply_psi(const RewriteContext& ctx, const Poly& g0);

// ---------------------------------------------------------------------------
// Unlocalization

constexpr int kDefaultUnlocalizeRounds = 64;

// R ∩ B_a for B = K[gens] and a in B.
InvariantRingResult unlocalize(const AlgebraPtr& R, std::vector<Poly> gens, const Poly& a,
                               int max_rounds = kDefaultUnlocalizeRounds);

struct FiniteInvariantOptions {
  DerksenRoute route = DerksenRoute::Auto;
  std::optional<MonomialOrder> order_y;
  bool prune = true;
  int max_rounds = kDefaultUnlocalizeRounds;
};
InvariantRingResult finite_invariant_ring(const FiniteGroupAction& G, const FiniteInvariantOptions& opts = {});

struct NoetherOptions {
  bool enlarge_with_cover = false;       // A from the invariants of a polynomial cover
  std::vector<Poly> module_generators;   // c_j; default products with exponents < |G|
};
InvariantRingResult noether_invariant_ring(const FiniteGroupAction& G, const NoetherOptions& opts = {});

// ---------------------------------------------------------------------------
// Algebraic groups

struct GaLocalized {
  LocalizedInvariantRing loc;
  int slice = -1;                 // index i of the chosen g_i
  Poly raw_a;                     // g_{i,0}
  std::vector<Fraction> images;   // phi(x_j) = a^{-d_j} b_j
  std::shared_ptr<const FractionField> L;
};
GaLocalized ga_localized(const GaAction& ga);
Fraction ga_invariantize(const GaLocalized& g, const Poly& f);

// f(images) in L.
Fraction evaluate_fractions(const FractionField& L, const PolyRing& r, const Poly& f,
                            const std::vector<Fraction>& images);

struct LocalizeOptions {
  bool use_cross_section = true;
  std::vector<std::string> user_I_Z;  // nontame extension, in the y variables
  int degree_cap = 12;
};
struct AlgebraicLocalization {
  ExtendedDerksenGB edg;
  std::vector<Fraction> field_gens;  // only meaningful when tame
  std::optional<LocalizedInvariantRing> loc;
};
// Invariant field generators, without the localizer search.
AlgebraicLocalization algebraic_field_generators(const AlgebraicGroupAction& G, const LocalizeOptions& opts = {});
AlgebraicLocalization localize_invariant_ring_algebraic(const AlgebraicGroupAction& G,
                                                        const LocalizeOptions& opts = {});

// ---------------------------------------------------------------------------
// Graded algebras

std::vector<Poly> homogeneous_invariants(const FiniteGroupAction& G, int d);
std::vector<Poly> homogeneous_invariants(const AlgebraicGroupAction& G, int d);
// Degree-d part of the subalgebra K[gens] of a graded polynomial ring.
std::vector<Poly> subalgebra_degree_basis(const AlgebraPtr& R, const std::vector<Poly>& gens, int d);
bool homogeneous_member(const AlgebraPtr& R, const std::vector<Poly>& gens, const Poly& f);

// Termination test of unlocalization: h(gens)/a lies in K[gens] for every
// relation h of gens modulo a.
bool saturation_test(const AlgebraPtr& R, const std::vector<Poly>& gens, const Poly& a);

constexpr int kDefaultGradedDegreeCap = 40;
// Invariants of degree d supplied by the caller.
using DegreeInvariants = std::function<std::vector<Poly>(int)>;
InvariantRingResult unlocalize_graded(const AlgebraPtr& R, const std::vector<Poly>& B, const Poly& a,
                                      const DegreeInvariants& invariants, bool minimal = true,
                                      int max_degree = kDefaultGradedDegreeCap);

struct MasterOptions {
  LocalizeOptions localize;
  bool minimal = true;
  int max_degree = kDefaultGradedDegreeCap;
};
InvariantRingResult master_reductive(const AlgebraicGroupAction& G, const MasterOptions& opts = {});

}  // namespace invk
