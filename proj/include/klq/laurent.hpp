// laurent.hpp -- sparse Laurent polynomials in t = q^(1/2) over BigInt.
//
// Terms are kept as a sorted (by exponent, ascending) vector of
// (exponent, coefficient) pairs with no zero coefficients; equality is
// term-list equality. Exponents are in t-units, so q = t^2 and
// half-integral powers of q never appear.

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "klq/bigint.hpp"

namespace klq {

class LaurentPoly {
public:
  using Term = std::pair<int, BigInt>;

  LaurentPoly() = default;
  explicit LaurentPoly(BigInt constant);
  static LaurentPoly monomial(BigInt coeff, int exp);
  // Terms must be exponent-ascending; zero coefficients are dropped.
  static LaurentPoly from_terms(std::vector<Term> terms);

  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }
  int min_exp() const;  // pre: !is_zero()
  int max_exp() const;  // pre: !is_zero()
  const BigInt& coeff(int exp) const;

  bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const LaurentPoly& o) const { return terms_ != o.terms_; }

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly operator-() const;
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) {
    a += b;
    return a;
  }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) {
    a -= b;
    return a;
  }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);

  // Multiplication by t^k.
  LaurentPoly shifted(int k) const;
  // Multiplication by t + t^-1.
  LaurentPoly times_t_plus_tinv() const;
  // The involution t -> t^-1.
  LaurentPoly bar() const;

  // f -= g*h without materialising g*h separately at the call site.
  void sub_mul(const LaurentPoly& g, const LaurentPoly& h);
  // f += g * t^k in one merge; the hot path of the C'_s action.
  void add_shifted(const LaurentPoly& g, int k);

  bool is_strictly_negative() const;  // all exponents < 0 (vacuous for 0)
  bool is_bar_symmetric() const;
  bool parity_ok(int parity) const;  // all exponents == parity (mod 2)

  // Coefficient of t^-1 (the mu-coefficient of a normalized entry).
  BigInt mu_coefficient() const { return coeff(-1); }

  // Interpret f * t^ldiff as a polynomial in q = t^2; returns coefficients
  // ascending by degree. Throws Errc::negative_exponent / odd_exponent when
  // the shifted exponents are not even and nonnegative (an engine bug, not
  // bad user input).
  std::vector<BigInt> to_q_polynomial(int ldiff) const;

  std::string to_string() const;  // e.g. "t^-3 + 2 + 5*t^2"

private:
  std::vector<Term> terms_;
  void normalize();  // drop zeros (terms_ assumed sorted)
};

// The bar-symmetric polynomial g with g = f on exponents >= 0; f - g then
// has strictly negative exponents only. This is the correction multiplier
// used by the engine.
LaurentPoly correction_poly(const LaurentPoly& f);

}  // namespace klq
