#pragma once

#include <optional>
#include <vector>

#include "invk/poly.hpp"

namespace invk {

struct GroebnerBasis {
  RingPtr ring;
  std::vector<Poly> gens;
  // gens[i] = sum_j cofactors[i][j] * inputs[j] when tracked.
  std::vector<std::vector<Poly>> cofactors;
  bool tracked = false;
  bool reduced = false;

  bool euclidean() const { return !ring->coeffs().is_field(); }
  bool is_unit_ideal() const;
};

struct GBOptions {
  bool track_cofactors = false;
  bool reduce = true;
  long max_pairs = -1;  // budget on processed critical pairs, -1 = unlimited
};

GroebnerBasis groebner(RingPtr ring, const std::vector<Poly>& gens, const GBOptions& opts = {});
inline GroebnerBasis groebner(RingPtr ring, const std::vector<Poly>& gens, bool track) {
  GBOptions o;
  o.track_cofactors = track;
  return groebner(std::move(ring), gens, o);
}

// Full reduction of f by the list G. Over ZZ this is strong reduction with
// balanced remainders. If quotients is non-null, f = sum q_i G_i + NF.
Poly reduce_by(const PolyRing& r, const Poly& f, const std::vector<Poly>& G, std::vector<Poly>* quotients = nullptr);
Poly normal_form(const Poly& f, const GroebnerBasis& gb);
GroebnerBasis reduce_basis(const GroebnerBasis& gb);

// Critical-pair polynomials (G-polynomial only meaningful over ZZ).
Poly s_polynomial(const PolyRing& r, const Poly& f, const Poly& g);
Poly g_polynomial(const PolyRing& r, const Poly& f, const Poly& g);
// All S-polynomials (and G-polynomials over ZZ) reduce to zero.
bool satisfies_buchberger_criterion(const PolyRing& r, const std::vector<Poly>& G);

struct Ideal {
  RingPtr ring;
  std::vector<Poly> gens;
};

// Build a ring on `names` whose order is a block order: blocks listed by
// name in precedence order, grevlex inside each block.
RingPtr block_ring(const CoeffRing& k, const std::vector<std::vector<std::string>>& blocks);

// K[keep] ∩ <gens>; result lives in a grevlex ring on the kept variables
// (in their original relative order) and is a reduced Groebner basis there.
Ideal elimination_ideal(const RingPtr& ring, const std::vector<Poly>& gens, const std::vector<std::string>& keep);
// Generators of the intersection (reduced GB in the ring's own order).
std::vector<Poly> intersect_ideals(const RingPtr& ring, const std::vector<std::vector<Poly>>& ideals);

struct Membership {
  bool member = false;
  std::vector<Poly> cofactors;  // f = sum cofactors[i] * gens[i]
};
Membership membership(const RingPtr& ring, const Poly& f, const std::vector<Poly>& gens, bool want_cofactors = false);
bool ideal_contains(const RingPtr& ring, const std::vector<Poly>& big, const std::vector<Poly>& small);

// Dimension of K[x]/<gens>; -1 for the unit ideal. Integer input is
// treated over QQ.
int krull_dimension(const RingPtr& ring, const std::vector<Poly>& gens);

// Kernel of a rows x cols matrix over P, as column vectors of length cols.
std::vector<std::vector<Poly>> module_kernel(const RingPtr& P, const std::vector<std::vector<Poly>>& mat);

struct AlgebraMapKernel {
  RingPtr P;  // K[y1..ym]
  std::vector<std::vector<Poly>> kernel;
  std::optional<std::vector<Poly>> unit_last;
};
// Kernel of (g_1..g_r) -> sum g_j(f) h_j + I, with h_1 = 1.
AlgebraMapKernel algebra_map_kernel(const RingPtr& xring, const std::vector<Poly>& I, const std::vector<Poly>& f,
                                    const std::vector<Poly>& h, const std::string& yprefix = "y");

}  // namespace invk
