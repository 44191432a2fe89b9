// coxeter.cpp

#include "klq/coxeter.hpp"

#include <algorithm>
#include <cstring>
#include <limits>

namespace klq {

namespace {

using i128 = __int128;

constexpr std::int64_t kI64Min = std::numeric_limits<std::int64_t>::min();
constexpr std::int64_t kI64Max = std::numeric_limits<std::int64_t>::max();
// Cap on |cartan entry| so that int128 accumulation below cannot overflow.
constexpr std::int64_t kMaxCartanEntry = std::int64_t{1} << 31;
constexpr int kMaxRank = 64;

bool fits64(i128 v) { return v >= kI64Min && v <= kI64Max; }

}  // namespace

// ---------------------------------------------------------------------------
// Mat

Mat Mat::identity(int n) {
  Mat m;
  m.n_ = n;
  m.s_.assign(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) m.s_[static_cast<std::size_t>(i) * n + i] = 1;
  return m;
}

bool Mat::operator==(const Mat& o) const {
  // Lanes are canonical (see try_demote), so mixed-lane equality is false.
  return n_ == o.n_ && s_ == o.s_ && b_ == o.b_;
}

void Mat::promote() {
  if (big()) return;
  b_.reserve(s_.size());
  for (std::int64_t v : s_) b_.emplace_back(v);
  s_.clear();
}

void Mat::try_demote() {
  if (!big()) return;
  for (const BigInt& v : b_)
    if (!fits_int64(v)) return;
  s_.reserve(b_.size());
  for (const BigInt& v : b_) s_.push_back(static_cast<std::int64_t>(v));
  b_.clear();
}

int Mat::col_sign(int j) const {
  int sign = 0;
  for (int i = 0; i < n_; ++i) {
    int es;
    if (big()) {
      const BigInt& v = b_[static_cast<std::size_t>(i) * n_ + j];
      es = v == 0 ? 0 : (v > 0 ? 1 : -1);
    } else {
      const std::int64_t v = s_[static_cast<std::size_t>(i) * n_ + j];
      es = v == 0 ? 0 : (v > 0 ? 1 : -1);
    }
    if (es == 0) continue;
    if (sign == 0)
      sign = es;
    else if (sign != es)
      fail(Errc::internal_invariant,
           "root column with mixed signs (column " + std::to_string(j) + ")");
  }
  if (sign == 0)
    fail(Errc::internal_invariant,
         "zero root column (column " + std::to_string(j) + ")");
  return sign;
}

bool Mat::col_is_unit(int j, int s) const {
  for (int i = 0; i < n_; ++i) {
    const bool want_one = (i == s);
    if (big()) {
      const BigInt& v = b_[static_cast<std::size_t>(i) * n_ + j];
      if (v != (want_one ? 1 : 0)) return false;
    } else {
      if (s_[static_cast<std::size_t>(i) * n_ + j] != (want_one ? 1 : 0))
        return false;
    }
  }
  return true;
}

std::string Mat::key() const {
  std::string k;
  if (!big()) {
    k.resize(1 + s_.size() * sizeof(std::int64_t));
    k[0] = 'S';
    std::memcpy(k.data() + 1, s_.data(), s_.size() * sizeof(std::int64_t));
  } else {
    k.push_back('B');
    for (const BigInt& v : b_) {
      k += v.str();
      k.push_back(',');
    }
  }
  return k;
}

BigInt Mat::at(int i, int j) const {
  if (big()) return b_[static_cast<std::size_t>(i) * n_ + j];
  return BigInt(s_[static_cast<std::size_t>(i) * n_ + j]);
}

// Reflection kernels. right_reflect is multiplication by the matrix of s on
// the right (column operations), left_reflect on the left (one row changes).
struct MatOps {
  static bool right_reflect_small(const CoxeterSystem& sys,
                                  std::vector<std::int64_t>& w, int n, int s) {
    for (int j = 0; j < n; ++j) {
      if (j == s) continue;
      const std::int64_t c = sys.a(s, j);
      if (c == 0) continue;
      for (int i = 0; i < n; ++i) {
        const std::size_t ij = static_cast<std::size_t>(i) * n + j;
        const i128 v = static_cast<i128>(w[ij]) -
                       static_cast<i128>(c) * w[static_cast<std::size_t>(i) * n + s];
        if (!fits64(v)) return false;
        w[ij] = static_cast<std::int64_t>(v);
      }
    }
    for (int i = 0; i < n; ++i) {
      std::int64_t& v = w[static_cast<std::size_t>(i) * n + s];
      if (v == kI64Min) return false;
      v = -v;
    }
    return true;
  }

  static void right_reflect_big(const CoxeterSystem& sys, std::vector<BigInt>& w,
                                int n, int s) {
    for (int j = 0; j < n; ++j) {
      if (j == s) continue;
      const std::int64_t c = sys.a(s, j);
      if (c == 0) continue;
      for (int i = 0; i < n; ++i)
        w[static_cast<std::size_t>(i) * n + j] -=
            c * w[static_cast<std::size_t>(i) * n + s];
    }
    for (int i = 0; i < n; ++i) {
      BigInt& v = w[static_cast<std::size_t>(i) * n + s];
      v = -v;
    }
  }

  static bool left_reflect_small(const CoxeterSystem& sys,
                                 std::vector<std::int64_t>& w, int n, int s) {
    for (int j = 0; j < n; ++j) {
      i128 v = -static_cast<i128>(w[static_cast<std::size_t>(s) * n + j]);
      for (int k = 0; k < n; ++k) {
        if (k == s) continue;
        const std::int64_t c = sys.a(s, k);
        if (c == 0) continue;
        v -= static_cast<i128>(c) * w[static_cast<std::size_t>(k) * n + j];
      }
      if (!fits64(v)) return false;
      w[static_cast<std::size_t>(s) * n + j] = static_cast<std::int64_t>(v);
    }
    return true;
  }

  static void left_reflect_big(const CoxeterSystem& sys, std::vector<BigInt>& w,
                               int n, int s) {
    for (int j = 0; j < n; ++j) {
      BigInt v = -w[static_cast<std::size_t>(s) * n + j];
      for (int k = 0; k < n; ++k) {
        if (k == s) continue;
        const std::int64_t c = sys.a(s, k);
        if (c == 0) continue;
        v -= c * w[static_cast<std::size_t>(k) * n + j];
      }
      w[static_cast<std::size_t>(s) * n + j] = std::move(v);
    }
  }

  static void right_reflect(const CoxeterSystem& sys, Mat& m, int s) {
    if (!m.big()) {
      std::vector<std::int64_t> scratch = m.s_;
      if (right_reflect_small(sys, scratch, m.n_, s)) {
        m.s_ = std::move(scratch);
        return;
      }
      m.promote();  // escalate and redo exactly
    }
    right_reflect_big(sys, m.b_, m.n_, s);
    m.try_demote();
  }

  static void left_reflect(const CoxeterSystem& sys, Mat& m, int s) {
    if (!m.big()) {
      std::vector<std::int64_t> scratch = m.s_;
      if (left_reflect_small(sys, scratch, m.n_, s)) {
        m.s_ = std::move(scratch);
        return;
      }
      m.promote();
    }
    left_reflect_big(sys, m.b_, m.n_, s);
    m.try_demote();
  }
};

// ---------------------------------------------------------------------------
// CoxeterSystem

std::uint64_t CoxeterSystem::fingerprint() const {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  auto mix = [&h](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  mix(static_cast<std::uint64_t>(rank));
  for (std::int64_t c : cartan) mix(static_cast<std::uint64_t>(c));
  for (int j : J) mix(static_cast<std::uint64_t>(j));
  return h;
}

CoxeterSystem build_system(const std::vector<std::vector<std::int64_t>>& cartan,
                           const std::vector<int>& J) {
  const int rank = static_cast<int>(cartan.size());
  if (rank < 1 || rank > kMaxRank)
    fail(Errc::invalid_cartan,
         "rank must be between 1 and " + std::to_string(kMaxRank));
  CoxeterSystem sys;
  sys.rank = rank;
  sys.cartan.assign(static_cast<std::size_t>(rank) * rank, 0);
  for (int i = 0; i < rank; ++i) {
    if (static_cast<int>(cartan[i].size()) != rank)
      fail(Errc::invalid_cartan, "cartan matrix is not square");
    for (int j = 0; j < rank; ++j)
      sys.cartan[static_cast<std::size_t>(i) * rank + j] = cartan[i][j];
  }
  sys.bond.assign(static_cast<std::size_t>(rank) * rank, 1);
  for (int i = 0; i < rank; ++i) {
    if (sys.a(i, i) != 2)
      fail(Errc::invalid_cartan, "diagonal entry a(" + std::to_string(i) + "," +
                                     std::to_string(i) + ") must be 2");
    for (int j = 0; j < rank; ++j) {
      if (i == j) continue;
      const std::int64_t aij = sys.a(i, j);
      if (aij > 0)
        fail(Errc::invalid_cartan, "positive off-diagonal entry a(" +
                                       std::to_string(i) + "," +
                                       std::to_string(j) + ")");
      if (-aij > kMaxCartanEntry)
        fail(Errc::invalid_cartan, "cartan entry out of supported range");
      if ((aij == 0) != (sys.a(j, i) == 0))
        fail(Errc::invalid_cartan, "asymmetric zero pattern at (" +
                                       std::to_string(i) + "," +
                                       std::to_string(j) + ")");
      const std::int64_t prod = aij * sys.a(j, i);
      int m;
      switch (prod) {
        case 0: m = 2; break;
        case 1: m = 3; break;
        case 2: m = 4; break;
        case 3: m = 6; break;
        default: m = 0; break;  // infinite bond
      }
      sys.bond[static_cast<std::size_t>(i) * rank + j] = m;
    }
  }
  for (int s : J) {
    if (s < 0 || s >= rank)
      fail(Errc::invalid_cartan, "J index " + std::to_string(s) + " out of range");
    sys.jmask |= std::uint64_t{1} << s;
  }
  for (int s = 0; s < rank; ++s)
    if (sys.in_J(s)) sys.J.push_back(s);
  return sys;
}

CoxeterSystem type_a(int n, const std::vector<int>& J) {
  if (n < 1) fail(Errc::invalid_cartan, "type A requires n >= 1");
  std::vector<std::vector<std::int64_t>> c(
      static_cast<std::size_t>(n), std::vector<std::int64_t>(n, 0));
  for (int i = 0; i < n; ++i) {
    c[i][i] = 2;
    if (i + 1 < n) c[i][i + 1] = c[i + 1][i] = -1;
  }
  CoxeterSystem sys = build_system(c, J);
  sys.label_base = 1;
  sys.type_name = "A";
  sys.type_n = n;
  return sys;
}

CoxeterSystem affine_a(int n, const std::vector<int>& J) {
  if (n < 1) fail(Errc::invalid_cartan, "type affine-A requires n >= 1");
  const int rank = n + 1;
  std::vector<std::vector<std::int64_t>> c(
      static_cast<std::size_t>(rank), std::vector<std::int64_t>(rank, 0));
  for (int i = 0; i < rank; ++i) c[i][i] = 2;
  if (n == 1) {
    c[0][1] = c[1][0] = -2;
  } else {
    for (int i = 0; i < rank; ++i) {
      const int j = (i + 1) % rank;
      c[i][j] = c[j][i] = -1;
    }
  }
  CoxeterSystem sys = build_system(c, J);
  sys.label_base = 0;
  sys.type_name = "affine-A";
  sys.type_n = n;
  return sys;
}

// ---------------------------------------------------------------------------
// GroupElement operations

GroupElement identity(const CoxeterSystem& sys) {
  GroupElement e;
  e.fwd = Mat::identity(sys.rank);
  e.inv = Mat::identity(sys.rank);
  e.length = 0;
  return e;
}

static void check_gen(const CoxeterSystem& sys, int s) {
  if (s < 0 || s >= sys.rank)
    fail(Errc::invalid_input, "generator index " + std::to_string(s) +
                                  " out of range for rank " +
                                  std::to_string(sys.rank));
}

GroupElement mul_gen_right(const CoxeterSystem& sys, const GroupElement& x, int s) {
  check_gen(sys, s);
  const int sign = x.fwd.col_sign(s);
  GroupElement r = x;
  MatOps::right_reflect(sys, r.fwd, s);
  MatOps::left_reflect(sys, r.inv, s);
  r.length = x.length + (sign < 0 ? -1 : 1);
  return r;
}

GroupElement mul_gen_left(const CoxeterSystem& sys, int s, const GroupElement& x) {
  check_gen(sys, s);
  const int sign = x.inv.col_sign(s);
  GroupElement r = x;
  MatOps::left_reflect(sys, r.fwd, s);
  MatOps::right_reflect(sys, r.inv, s);
  r.length = x.length + (sign < 0 ? -1 : 1);
  return r;
}

GroupElement inverse(const GroupElement& x) {
  GroupElement r;
  r.fwd = x.inv;
  r.inv = x.fwd;
  r.length = x.length;
  return r;
}

bool is_right_descent(const GroupElement& x, int s) {
  return x.fwd.col_sign(s) < 0;
}

bool is_left_descent(const GroupElement& x, int s) {
  return x.inv.col_sign(s) < 0;
}

std::uint64_t right_descent_mask(const CoxeterSystem& sys, const GroupElement& x) {
  std::uint64_t m = 0;
  for (int s = 0; s < sys.rank; ++s)
    if (is_right_descent(x, s)) m |= std::uint64_t{1} << s;
  return m;
}

std::uint64_t left_descent_mask(const CoxeterSystem& sys, const GroupElement& x) {
  std::uint64_t m = 0;
  for (int s = 0; s < sys.rank; ++s)
    if (is_left_descent(x, s)) m |= std::uint64_t{1} << s;
  return m;
}

bool is_min_coset_rep(const CoxeterSystem& sys, const GroupElement& x) {
  for (int j : sys.J)
    if (x.inv.col_sign(j) < 0) return false;
  return true;
}

Word canonical_word(const CoxeterSystem& sys, const GroupElement& x) {
  Word w;
  w.reserve(x.length);
  GroupElement cur = x;
  while (cur.length > 0) {
    int s = -1;
    for (int i = 0; i < sys.rank; ++i) {
      if (cur.inv.col_sign(i) < 0) {
        s = i;
        break;
      }
    }
    if (s < 0)
      fail(Errc::internal_invariant, "element of positive length with no descent");
    w.push_back(static_cast<std::uint8_t>(s));
    cur = mul_gen_left(sys, s, cur);
  }
  return w;
}

GroupElement word_to_element(const CoxeterSystem& sys, const Word& word,
                             bool require_reduced) {
  GroupElement x = identity(sys);
  for (std::uint8_t s : word) x = mul_gen_right(sys, x, s);
  if (require_reduced && x.length != word.size())
    fail(Errc::not_reduced, "word of length " + std::to_string(word.size()) +
                                " multiplies to an element of length " +
                                std::to_string(x.length));
  return x;
}

bool word_is_reduced(const CoxeterSystem& sys, const Word& word) {
  return word_to_element(sys, word).length == word.size();
}

std::pair<CosetCase, std::optional<GroupElement>> coset_case(
    const CoxeterSystem& sys, const GroupElement& x, int s) {
  check_gen(sys, s);
  if (!is_min_coset_rep(sys, x))
    fail(Errc::not_coset_rep, "element is not a minimal coset representative");
  if (x.fwd.col_sign(s) < 0)
    return {CosetCase::Down, mul_gen_right(sys, x, s)};
  // xs leaves W^J exactly when x^-1(alpha_j) = alpha_s for some j in J,
  // i.e. column j of inv is the unit vector e_s.
  for (int j : sys.J)
    if (x.inv.col_is_unit(j, s)) return {CosetCase::UpOut, std::nullopt};
  return {CosetCase::UpIn, mul_gen_right(sys, x, s)};
}

bool bruhat_leq(const CoxeterSystem& sys, const GroupElement& x,
                const GroupElement& y) {
  if (x.length > y.length) return false;
  if (x == y) return true;
  if (y.length == 0) return false;  // x != e here
  int s = -1;
  for (int i = 0; i < sys.rank; ++i) {
    if (is_right_descent(y, i)) {
      s = i;
      break;
    }
  }
  const GroupElement ys = mul_gen_right(sys, y, s);
  if (is_right_descent(x, s))
    return bruhat_leq(sys, mul_gen_right(sys, x, s), ys);
  return bruhat_leq(sys, x, ys);
}

}  // namespace klq
