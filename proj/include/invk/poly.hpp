#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "invk/coeff.hpp"

namespace invk {

constexpr int kMaxVars = 48;

struct Mono {
  std::array<uint16_t, kMaxVars> e{};

  int degree(int n) const {
    int d = 0;
    for (int i = 0; i < n; ++i) d += e[i];
    return d;
  }
  bool operator==(const Mono& o) const { return e == o.e; }
  bool operator!=(const Mono& o) const { return e != o.e; }
};

inline bool mono_divides(const Mono& a, const Mono& b, int n) {
  for (int i = 0; i < n; ++i)
    if (a.e[i] > b.e[i]) return false;
  return true;
}
inline Mono mono_mul(const Mono& a, const Mono& b, int n) {
  Mono r;
  for (int i = 0; i < n; ++i) {
    unsigned s = unsigned(a.e[i]) + b.e[i];
    if (s > 0xffff) throw MathError("exponent overflow");
    r.e[i] = uint16_t(s);
  }
  return r;
}
inline Mono mono_div(const Mono& a, const Mono& b, int n) {
  Mono r;
  for (int i = 0; i < n; ++i) r.e[i] = uint16_t(a.e[i] - b.e[i]);
  return r;
}
inline Mono mono_lcm(const Mono& a, const Mono& b, int n) {
  Mono r;
  for (int i = 0; i < n; ++i) r.e[i] = std::max(a.e[i], b.e[i]);
  return r;
}
inline bool mono_coprime(const Mono& a, const Mono& b, int n) {
  for (int i = 0; i < n; ++i)
    if (a.e[i] && b.e[i]) return false;
  return true;
}
inline bool mono_is_one(const Mono& a, int n) {
  for (int i = 0; i < n; ++i)
    if (a.e[i]) return false;
  return true;
}

// One rule of a monomial order. Block rules over disjoint variable sets
// compare only their own variables; weight rules compare a weighted degree.
struct OrderRule {
  enum Kind { Lex, GrevLex, GLex, Weight } kind = GrevLex;
  std::vector<int> vars;      // block variables, first listed is largest
  std::vector<long> weights;  // Weight rules: one entry per ring variable
};

class MonomialOrder {
 public:
  MonomialOrder() = default;
  explicit MonomialOrder(int n, std::vector<OrderRule> rules);

  static MonomialOrder grevlex(int n);
  static MonomialOrder lex(int n);
  static MonomialOrder glex(int n);
  // Blocks in order of precedence; each block is a variable list and a kind.
  static MonomialOrder blocks(int n, const std::vector<std::pair<std::vector<int>, OrderRule::Kind>>& bl);

  int nvars() const { return n_; }
  const std::vector<OrderRule>& rules() const { return rules_; }
  // -1, 0, 1 for s < t, s == t, s > t.
  int compare(const Mono& s, const Mono& t) const;
  // The same order with variables renumbered by shift (used when embedding
  // a ring as the trailing variables of a bigger one).
  std::vector<OrderRule> shifted_rules(int shift, int total) const;
  std::string describe(const std::vector<std::string>& names) const;

 private:
  int n_ = 0;
  std::vector<OrderRule> rules_;
  bool plain_grevlex_ = false;
};

struct Term {
  Mono m;
  Rat c;
};
inline bool operator==(const Term& a, const Term& b) { return a.m == b.m && a.c == b.c; }

// Terms are kept sorted strictly descending with respect to the order of the
// ring that owns the polynomial; zero coefficients are never stored.
using Poly = std::vector<Term>;

class PolyRing;
using RingPtr = std::shared_ptr<const PolyRing>;

class PolyRing {
 public:
  PolyRing(CoeffRing k, std::vector<std::string> names, MonomialOrder order);
  static RingPtr make(CoeffRing k, std::vector<std::string> names);
  static RingPtr make(CoeffRing k, std::vector<std::string> names, MonomialOrder order);

  const CoeffRing& coeffs() const { return k_; }
  int nvars() const { return int(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const MonomialOrder& order() const { return order_; }
  int index_of(const std::string& name) const;  // -1 if absent
  int cmp(const Mono& a, const Mono& b) const { return order_.compare(a, b); }

  RingPtr with_order(MonomialOrder o) const;
  RingPtr with_coeffs(CoeffRing k) const;

  Poly zero() const { return {}; }
  Poly constant(const Rat& c) const;
  Poly variable(int i) const;
  Poly monomial(const Mono& m, const Rat& c) const;
  Poly from_terms(std::vector<Term> terms) const;  // sort, merge, drop zeros
  Poly resort(Poly f) const;                        // reorder terms for this ring's order

  Poly add(const Poly& f, const Poly& g) const;
  Poly sub(const Poly& f, const Poly& g) const;
  Poly neg(const Poly& f) const;
  Poly scale(const Poly& f, const Rat& c) const;
  Poly mul_term(const Poly& f, const Mono& m, const Rat& c) const;
  Poly mul(const Poly& f, const Poly& g) const;
  Poly pow(const Poly& f, unsigned e) const;
  // f - c*m*g in one pass.
  Poly sub_mul_term(const Poly& f, const Rat& c, const Mono& m, const Poly& g) const;

  // Substitute images[i] (polynomials of `target`) for variable i.
  Poly substitute(const Poly& f, const PolyRing& target, const std::vector<Poly>& images) const;
  // Move f into `target`, mapping variable i to target variable map[i].
  Poly transfer(const Poly& f, const PolyRing& target, const std::vector<int>& map) const;
  // Same, mapping variables by name (every variable of f must exist in target).
  Poly transfer_by_name(const Poly& f, const PolyRing& target) const;

  int degree(const Poly& f) const;
  int var_degree(const Poly& f, int var) const;
  bool is_constant(const Poly& f) const { return f.empty() || (f.size() == 1 && mono_is_one(f[0].m, nvars())); }
  bool uses_only(const Poly& f, const std::vector<bool>& allowed) const;
  Rat constant_term(const Poly& f) const;
  // Positive leading coefficient over ZZ, monic over a field.
  Poly normalize_lc(const Poly& f) const;
  Poly make_primitive(const Poly& f) const;  // ZZ or QQ coefficients -> primitive integral, positive lc
  Poly derivative(const Poly& f, int var) const;

  // Canonical text: terms in grevlex-descending order, normalized signs.
  std::string format(const Poly& f) const;
  std::string format_mono(const Mono& m) const;

 private:
  CoeffRing k_;
  std::vector<std::string> names_;
  MonomialOrder order_;
};

std::string format_rat(const Rat& c);

}  // namespace invk
