#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace invk {

using Int = mpz_class;
using Rat = mpq_class;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnsupportedBranch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BudgetExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MathError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class CoeffKind { Rationals, Integers, PrimeField };

// Exact coefficient domain. Every coefficient is stored as an mpq_class;
// integers have denominator 1 and prime-field elements live in [0, p).
class CoeffRing {
 public:
  static CoeffRing QQ() { return CoeffRing(CoeffKind::Rationals, 0); }
  static CoeffRing ZZ() { return CoeffRing(CoeffKind::Integers, 0); }
  static CoeffRing GF(const Int& p);

  CoeffKind kind() const { return kind_; }
  const Int& prime() const { return p_; }
  bool is_field() const { return kind_ != CoeffKind::Integers; }
  Int characteristic() const { return kind_ == CoeffKind::PrimeField ? p_ : Int(0); }

  // The field of fractions (ZZ -> QQ, fields unchanged).
  CoeffRing fraction_field() const { return is_field() ? *this : QQ(); }

  Rat from_int(long v) const { return normalize(Rat(v)); }
  Rat normalize(const Rat& c) const;
  Rat add(const Rat& a, const Rat& b) const { return normalize(a + b); }
  Rat sub(const Rat& a, const Rat& b) const { return normalize(a - b); }
  Rat mul(const Rat& a, const Rat& b) const { return normalize(a * b); }
  Rat neg(const Rat& a) const { return normalize(-a); }
  Rat inv(const Rat& a) const;
  Rat div(const Rat& a, const Rat& b) const;  // exact; over ZZ requires b | a
  bool divides(const Rat& a, const Rat& b) const;  // a | b
  bool is_unit(const Rat& a) const;

  // Balanced division over ZZ: a = q*b + r with -|b|/2 < r <= |b|/2.
  static void divmod_balanced(const Int& a, const Int& b, Int& q, Int& r);

  std::string name() const;
  bool operator==(const CoeffRing& o) const { return kind_ == o.kind_ && p_ == o.p_; }
  bool operator!=(const CoeffRing& o) const { return !(*this == o); }

 private:
  CoeffRing(CoeffKind k, const Int& p) : kind_(k), p_(p) {}
  CoeffKind kind_;
  Int p_;
};

inline bool is_integral(const Rat& c) { return c.get_den() == 1; }

}  // namespace invk
