// affine.hpp -- the affine driver: type affine-A with the parabolic subset
// {1..n} of type A_n, the dot action on the weight lattice, conversion
// between dominant weights and coset representatives, and p-restriction.
//
// Weights are n-tuples of coefficients at the fundamental weights of A_n.
// Generators 1..n act by the dot-shifted reflections; generator 0 reflects
// in the highest root and then translates by -p times it. The orbit of
// -2*rho is regular once p >= n+1, and its dominant members correspond to
// the coset representatives via nu = w0 . (y . (-2 rho)) with w0 the
// longest element of the finite part.

#pragma once

#include <cstdint>
#include <vector>

#include "klq/engine.hpp"

namespace klq {

struct Weight {
  std::vector<std::int64_t> a;

  bool operator==(const Weight& o) const { return a == o.a; }
  bool operator!=(const Weight& o) const { return a != o.a; }
  int n() const { return static_cast<int>(a.size()); }
  std::string to_string() const;
};

Weight rho_weight(int n);
Weight minus_two_rho(int n);
bool is_dominant(const Weight& w);
bool is_p_restricted(const Weight& w, std::int64_t p);

// The dot action of generator i (0..n). Involutive for every i.
Weight dot_apply_gen(int n, std::int64_t p, int i, const Weight& lam);
// Applies a word right-to-left, i.e. the product acts as a group element.
Weight dot_apply_word(int n, std::int64_t p, const Word& w, const Weight& lam);
// The longest element of the finite part, acting via the dot action
// (coordinate reversal up to the rho shift); p plays no role.
Weight w0_dot(int n, const Weight& lam);

// The distinguished p-restricted weight (p-3, p-2, ..., p-2, p-3) with
// p = n+1: (p-2)*rho minus the highest root. The uniform description is
// only expected to be interesting for n not congruent to 2 mod 4.
Weight guess_weight(int n);
inline bool guess_weight_applicable(int n) { return n % 4 != 2; }

struct AffineTarget {
  int n = 0;
  std::int64_t p = 0;
  Weight nu;       // the dominant input weight
  Word y_word;     // reduced word of y in W^J (internal indices)
  std::uint32_t y_length = 0;
};

// Resolves a dominant weight in the dot-orbit of -2*rho to its coset
// representative y by peeling descents:
//   i >= 1 is a descent iff (lambda+rho)_i > 0,
//   i  = 0 is a descent iff sum(lambda+rho) < -p.
// The produced word is validated three ways (reducedness, coset
// membership, replay of the dot action). Throws Errc::not_dominant /
// not_in_orbit / invalid_input.
AffineTarget weight_to_y(int n, std::int64_t p, const Weight& nu);

// The affine system this driver computes in: rank n+1, J = {1..n}.
CoxeterSystem affine_system(int n);

struct AffineReport {
  AffineTarget target;
  KLResult result;
  BigInt mu_e;                // mu at the identity = top coefficient of P_e
  std::vector<BigInt> p_e;    // P^J at the identity, ascending q-degree
  bool negative_coefficient = false;  // diagnostic only, never an error
};

AffineReport run_case(int n, std::int64_t p, const Weight& nu,
                      const EngineOptions& opt = {},
                      bool allow_unrestricted = false);
AffineReport run_case(ElementPool& pool, int n, std::int64_t p, const Weight& nu,
                      const EngineOptions& opt = {},
                      bool allow_unrestricted = false);

}  // namespace klq
