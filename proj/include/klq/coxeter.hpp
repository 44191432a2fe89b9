// coxeter.hpp -- exact arithmetic in a Coxeter system (W, S) realized on
// the root lattice of a generalized Cartan matrix, with a fixed parabolic
// subset J and the distinguished (minimal-length) right coset
// representatives W^J of W_J.
//
// A group element is stored as the pair of integer matrices giving the
// images of the simple roots under w and under w^-1 (columns in the
// simple-root coordinate basis). Every such column is a positive or a
// negative root: its nonzero entries share one sign, which is what makes
// length and descent tests pure sign checks. Matrix entries live in a
// 64-bit lane and escalate to arbitrary precision if a coordinate ever
// outgrows it (possible in hyperbolic systems; never silently wrong).

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "klq/bigint.hpp"
#include "klq/errors.hpp"

namespace klq {

using Word = std::vector<std::uint8_t>;  // generator indices, 0-based

// Square integer matrix with a fast 64-bit lane and a BigInt fallback.
// The lane is canonical: the BigInt lane is active only while some entry
// does not fit 64 bits, so equal matrices always compare equal.
class Mat {
public:
  Mat() = default;
  static Mat identity(int n);

  int n() const { return n_; }
  bool big() const { return !b_.empty(); }

  bool operator==(const Mat& o) const;
  bool operator!=(const Mat& o) const { return !(*this == o); }

  // Sign (+1/-1) of column j, which must be a root vector; throws
  // Errc::internal_invariant on a mixed-sign or zero column.
  int col_sign(int j) const;
  // Whether column j equals the standard basis vector e_s.
  bool col_is_unit(int j, int s) const;

  // Stable byte key identifying the matrix (used for interning).
  std::string key() const;

  BigInt at(int i, int j) const;

private:
  int n_ = 0;
  std::vector<std::int64_t> s_;  // small lane, n*n row-major
  std::vector<BigInt> b_;        // big lane, n*n row-major

  void promote();
  void try_demote();
  friend struct MatOps;
};

struct CoxeterSystem {
  int rank = 0;
  std::vector<std::int64_t> cartan;  // rank*rank row-major, a(i,j) = <alpha_j, alpha_i^v>
  std::vector<int> bond;             // rank*rank Coxeter exponents m_ij; 0 encodes infinity
  std::uint64_t jmask = 0;           // parabolic subset J as a bit mask
  std::vector<int> J;                // same subset, sorted
  int label_base = 0;                // user-facing generator names are index + label_base
  std::string type_name = "custom";  // "A", "affine-A" or "custom"
  int type_n = 0;                    // n for the named types

  std::int64_t a(int i, int j) const { return cartan[static_cast<std::size_t>(i) * rank + j]; }
  int bond_order(int i, int j) const { return bond[static_cast<std::size_t>(i) * rank + j]; }
  bool in_J(int s) const { return (jmask >> s) & 1u; }

  // Hash of the Cartan matrix and J; identifies the system in checkpoints.
  std::uint64_t fingerprint() const;
};

// Validates the generalized-Cartan conditions (a_ii = 2, off-diagonal <= 0,
// symmetric zero pattern) and derives bond labels from the products
// a_ij*a_ji (0,1,2,3 -> m = 2,3,4,6; anything >= 4 -> infinity).
// Throws Errc::invalid_cartan.
CoxeterSystem build_system(const std::vector<std::vector<std::int64_t>>& cartan,
                           const std::vector<int>& J);

// Named constructors. type_a(n) uses 1-based generator names s_1..s_n;
// affine_a(n) has rank n+1 with 0-based names s_0..s_n and all successive
// bonds (including s_n s_0) of order 3.
CoxeterSystem type_a(int n, const std::vector<int>& J = {});
CoxeterSystem affine_a(int n, const std::vector<int>& J = {});

struct GroupElement {
  Mat fwd;  // images of simple roots under w
  Mat inv;  // images of simple roots under w^-1
  std::uint32_t length = 0;

  bool operator==(const GroupElement& o) const { return fwd == o.fwd; }
  bool operator!=(const GroupElement& o) const { return !(*this == o); }
};

GroupElement identity(const CoxeterSystem& sys);
GroupElement mul_gen_right(const CoxeterSystem& sys, const GroupElement& x, int s);
GroupElement mul_gen_left(const CoxeterSystem& sys, int s, const GroupElement& x);
GroupElement inverse(const GroupElement& x);

bool is_right_descent(const GroupElement& x, int s);
bool is_left_descent(const GroupElement& x, int s);
std::uint64_t right_descent_mask(const CoxeterSystem& sys, const GroupElement& x);
std::uint64_t left_descent_mask(const CoxeterSystem& sys, const GroupElement& x);

// x has no left descent in J, i.e. x is the shortest element of W_J x.
bool is_min_coset_rep(const CoxeterSystem& sys, const GroupElement& x);

// Lexicographically smallest reduced word of x: repeatedly emit the
// smallest left descent s and replace x by s*x.
Word canonical_word(const CoxeterSystem& sys, const GroupElement& x);

// Product of the word. When require_reduced, throws Errc::not_reduced
// unless the word length equals the length of the product.
GroupElement word_to_element(const CoxeterSystem& sys, const Word& word,
                             bool require_reduced = false);
bool word_is_reduced(const CoxeterSystem& sys, const Word& word);

enum class CosetCase : std::uint8_t {
  Down = 1,   // l(xs) < l(x); then xs is again in W^J
  UpIn = 2,   // l(xs) > l(x) and xs in W^J
  UpOut = 3,  // l(xs) > l(x) and xs not in W^J (xs = s_j x for some j in J)
};

// Case split for x in W^J and a generator s; returns the case and, for
// Down/UpIn, the element xs. Throws Errc::not_coset_rep if x is not in W^J.
std::pair<CosetCase, std::optional<GroupElement>> coset_case(
    const CoxeterSystem& sys, const GroupElement& x, int s);

// Bruhat--Chevalley order.
bool bruhat_leq(const CoxeterSystem& sys, const GroupElement& x,
                const GroupElement& y);

}  // namespace klq
