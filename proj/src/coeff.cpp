#include "invk/coeff.hpp"

namespace invk {

CoeffRing CoeffRing::GF(const Int& p) {
  if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0)
    throw InputError("GF(p) requires a prime p, got " + p.get_str());
  return CoeffRing(CoeffKind::PrimeField, p);
}

Rat CoeffRing::normalize(const Rat& c) const {
  switch (kind_) {
    case CoeffKind::Rationals:
      return c;
    case CoeffKind::Integers:
      if (!is_integral(c)) throw MathError("non-integral coefficient " + c.get_str() + " over ZZ");
      return c;
    case CoeffKind::PrimeField: {
      Int num = c.get_num() % p_;
      if (num < 0) num += p_;
      Int den = c.get_den() % p_;
      if (den == 0) throw MathError("denominator divisible by the characteristic");
      if (den != 1) {
        Int inv;
        mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p_.get_mpz_t());
        num = (num * inv) % p_;
      }
      return Rat(num);
    }
  }
  return c;
}

Rat CoeffRing::inv(const Rat& a) const {
  if (a == 0) throw MathError("inverse of zero");
  if (kind_ == CoeffKind::Integers) {
    if (a == 1 || a == -1) return a;
    throw MathError("non-unit inverse over ZZ");
  }
  if (kind_ == CoeffKind::PrimeField) {
    Int inv;
    Int num = a.get_num();
    mpz_invert(inv.get_mpz_t(), num.get_mpz_t(), p_.get_mpz_t());
    return Rat(inv);
  }
  return Rat(1) / a;
}

Rat CoeffRing::div(const Rat& a, const Rat& b) const {
  if (b == 0) throw MathError("division by zero");
  if (kind_ == CoeffKind::Integers) {
    Int q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_num_mpz_t(), b.get_num_mpz_t());
    if (r != 0) throw MathError("inexact integer division");
    return Rat(q);
  }
  return mul(a, inv(b));
}

bool CoeffRing::divides(const Rat& a, const Rat& b) const {
  if (a == 0) return b == 0;
  if (kind_ != CoeffKind::Integers) return true;
  return mpz_divisible_p(b.get_num_mpz_t(), a.get_num_mpz_t()) != 0;
}

bool CoeffRing::is_unit(const Rat& a) const {
  if (a == 0) return false;
  if (kind_ == CoeffKind::Integers) return a == 1 || a == -1;
  return true;
}

void CoeffRing::divmod_balanced(const Int& a, const Int& b, Int& q, Int& r) {
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  // r has the sign of b; move it into (-|b|/2, |b|/2].
  Int ab = abs(b);
  Int ar = abs(r);
  if (2 * ar > ab || (2 * ar == ab && r < 0)) {
    if (b > 0) {
      r -= b;
      q += 1;
    } else {
      r -= b;
      q += 1;
    }
  }
}

std::string CoeffRing::name() const {
  switch (kind_) {
    case CoeffKind::Rationals:
      return "QQ";
    case CoeffKind::Integers:
      return "ZZ";
    case CoeffKind::PrimeField:
      return "GF(" + p_.get_str() + ")";
  }
  return "?";
}

}  // namespace invk
