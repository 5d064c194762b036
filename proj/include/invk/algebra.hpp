#pragma once

#include <map>
#include <optional>

#include "invk/groebner.hpp"

namespace invk {

// R = K[x]/I with a cached Groebner basis of I.
struct PresentedAlgebra {
  RingPtr ring;
  std::vector<Poly> relations;
  GroebnerBasis gb;
  bool prime_claimed = false;
  std::vector<int> grading;                        // per-variable degree, default 1
  std::vector<std::pair<int, int>> laurent_pairs;  // (x_i, x_i^{-1}) variable indices

  const CoeffRing& coeffs() const { return ring->coeffs(); }
  int nvars() const { return ring->nvars(); }
  Poly nf(const Poly& f) const { return gb.gens.empty() ? f : normal_form(f, gb); }
  bool is_zero(const Poly& f) const { return nf(f).empty(); }
  bool equal(const Poly& f, const Poly& g) const { return is_zero(ring->sub(f, g)); }
  bool is_free() const { return gb.gens.empty(); }
  Poly parse(const std::string& s) const;
  std::string format(const Poly& f) const { return ring->format(f); }
  int weighted_degree(const Poly& f) const;  // max over terms, using grading
  bool is_homogeneous(const Poly& f) const;
};
using AlgebraPtr = std::shared_ptr<const PresentedAlgebra>;

AlgebraPtr make_algebra(RingPtr ring, std::vector<Poly> relations, bool prime_claimed = true,
                        std::vector<int> grading = {});
// K[x_1..x_n, x_1^{-1}..x_n^{-1}] with inverse variables named "<x>inv".
AlgebraPtr laurent_algebra(const CoeffRing& k, const std::vector<std::string>& names);
// The same presentation over the fraction field of K (ZZ -> QQ).
AlgebraPtr over_fraction_field(const AlgebraPtr& a);

// Element num/den of L = Quot(R). Polynomials live in the ring of the
// algebra over the fraction field of K.
struct Fraction {
  Poly num, den;
};

class FractionField {
 public:
  explicit FractionField(AlgebraPtr base);

  const AlgebraPtr& base() const { return base_; }
  const AlgebraPtr& field_algebra() const { return fa_; }
  const PolyRing& ring() const { return *fa_->ring; }

  Fraction make(const Poly& num, const Poly& den) const;
  Fraction from_poly(const Poly& f) const { return make(f, ring().constant(Rat(1))); }
  Fraction constant(const Rat& c) const { return from_poly(ring().constant(c)); }

  Fraction add(const Fraction& a, const Fraction& b) const;
  Fraction sub(const Fraction& a, const Fraction& b) const;
  Fraction mul(const Fraction& a, const Fraction& b) const;
  Fraction neg(const Fraction& a) const;
  Fraction inv(const Fraction& a) const;
  Fraction div(const Fraction& a, const Fraction& b) const { return mul(a, inv(b)); }

  bool is_zero(const Fraction& a) const { return fa_->is_zero(a.num); }
  bool equal(const Fraction& a, const Fraction& b) const;
  bool is_constant(const Fraction& a, Rat* value = nullptr) const;
  // p with num = p*den mod I, if one exists (polynomial over the field).
  std::optional<Poly> try_polynomial(const Fraction& a) const;
  // Reduce mod I and, for a free algebra over a field, cancel the gcd.
  // Scales to a primitive integral presentation with positive denominator lc.
  Fraction simplify(const Fraction& a) const;
  std::string format(const Fraction& a) const;

 private:
  AlgebraPtr base_, fa_;
  bool laurent_ = false;  // relations are exactly x_i * x_i^{-1} - 1
};

// Smallest k <= k_max with a^k * e in R (over the base coefficient ring),
// returning that element. Throws MathError if none.
std::pair<int, Poly> clear_denominators(const FractionField& L, const Fraction& e, const Poly& a, int k_max);

// Linear equation sum a_i c_i = b over K.
struct LinearSolution {
  std::optional<std::vector<Rat>> particular;
  std::vector<std::vector<Rat>> syzygies;
};
LinearSolution solve_linear(const CoeffRing& k, const std::vector<Rat>& a, const Rat& b);

// Incremental row echelon form over a field, sparse rows keyed by column.
using SparseVec = std::map<int, Rat>;
class Echelon {
 public:
  explicit Echelon(CoeffRing k) : k_(std::move(k)) {}
  // Reduce v against the stored rows.
  SparseVec reduce(SparseVec v) const;
  // Insert v; returns false if v already lay in the span (over ZZ: the
  // lattice) of the rows.
  bool insert(SparseVec v);
  size_t rank() const { return rows_.size(); }

 private:
  CoeffRing k_;
  std::map<int, SparseVec> rows_;  // pivot column -> row
};
// Basis of {c : sum_j rows[i][j] c_j = 0 for all i} in ncols unknowns.
std::vector<std::vector<Rat>> nullspace(const CoeffRing& k, const std::vector<SparseVec>& rows, int ncols);

// Exact quotient f/g, or nullopt if g does not divide f.
std::optional<Poly> divide_exact(const PolyRing& r, const Poly& f, const Poly& g);
// Monic gcd over a field.
Poly gcd_poly(const PolyRing& r, const Poly& f, const Poly& g);
// Product of the distinct irreducible factors, normalized monic; char 0 only.
Poly squarefree_part(const PolyRing& r, const Poly& f);

}  // namespace invk
