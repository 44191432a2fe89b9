// affine.cpp

#include "klq/affine.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace klq {

std::string Weight::to_string() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) os << ",";
    os << a[i];
  }
  os << ")";
  return os.str();
}

Weight rho_weight(int n) { return Weight{std::vector<std::int64_t>(n, 1)}; }

Weight minus_two_rho(int n) { return Weight{std::vector<std::int64_t>(n, -2)}; }

bool is_dominant(const Weight& w) {
  return std::all_of(w.a.begin(), w.a.end(),
                     [](std::int64_t v) { return v >= 0; });
}

bool is_p_restricted(const Weight& w, std::int64_t p) {
  return std::all_of(w.a.begin(), w.a.end(),
                     [p](std::int64_t v) { return v >= 0 && v <= p - 1; });
}

namespace {

void check_weight_rank(int n, const Weight& w) {
  if (w.n() != n)
    fail(Errc::invalid_input, "weight has " + std::to_string(w.n()) +
                                  " coordinates, expected " + std::to_string(n));
}

// Subtracts c * alpha_i from v, in fundamental-weight coordinates:
// alpha_i = -w_{i-1} + 2 w_i - w_{i+1} with boundary terms dropped.
void sub_simple_root(std::vector<std::int64_t>& v, int i, std::int64_t c) {
  const int n = static_cast<int>(v.size());
  if (i - 2 >= 0) v[i - 2] += c;
  v[i - 1] -= 2 * c;
  if (i < n) v[i] += c;
}

// Subtracts c * alpha_0 with alpha_0 = w_1 + w_n (the highest root).
void sub_highest_root(std::vector<std::int64_t>& v, std::int64_t c) {
  const int n = static_cast<int>(v.size());
  if (n == 1) {
    v[0] -= 2 * c;  // alpha_0 = 2 w_1 when n = 1
  } else {
    v[0] -= c;
    v[n - 1] -= c;
  }
}

std::int64_t level(const std::vector<std::int64_t>& v) {
  return std::accumulate(v.begin(), v.end(), std::int64_t{0});
}

}  // namespace

Weight dot_apply_gen(int n, std::int64_t p, int i, const Weight& lam) {
  check_weight_rank(n, lam);
  if (i < 0 || i > n)
    fail(Errc::invalid_input, "generator index out of range");
  std::vector<std::int64_t> v = lam.a;
  for (auto& c : v) c += 1;  // shift by rho
  if (i >= 1) {
    sub_simple_root(v, i, v[i - 1]);
  } else {
    sub_highest_root(v, level(v) + p);
  }
  for (auto& c : v) c -= 1;
  return Weight{std::move(v)};
}

Weight dot_apply_word(int n, std::int64_t p, const Word& w, const Weight& lam) {
  Weight cur = lam;
  for (auto it = w.rbegin(); it != w.rend(); ++it)
    cur = dot_apply_gen(n, p, *it, cur);
  return cur;
}

Weight w0_dot(int n, const Weight& lam) {
  check_weight_rank(n, lam);
  std::vector<std::int64_t> v = lam.a;
  for (auto& c : v) c += 1;
  std::reverse(v.begin(), v.end());
  for (auto& c : v) c = -c - 1;
  return Weight{std::move(v)};
}

Weight guess_weight(int n) {
  const std::int64_t p = n + 1;
  std::vector<std::int64_t> a(n, p - 2);
  if (n == 1) {
    a[0] = p - 4;
  } else {
    a[0] = p - 3;
    a[n - 1] = p - 3;
  }
  return Weight{std::move(a)};
}

CoxeterSystem affine_system(int n) {
  std::vector<int> J(n);
  std::iota(J.begin(), J.end(), 1);
  return affine_a(n, J);
}

AffineTarget weight_to_y(int n, std::int64_t p, const Weight& nu) {
  check_weight_rank(n, nu);
  if (p < n + 1)
    fail(Errc::invalid_input,
         "p must be at least n+1 (got p=" + std::to_string(p) + ", n=" +
             std::to_string(n) + ")");
  if (!is_dominant(nu))
    fail(Errc::not_dominant, "weight " + nu.to_string() + " is not dominant");

  AffineTarget out;
  out.n = n;
  out.p = p;
  out.nu = nu;

  const Weight base = minus_two_rho(n);
  Weight lam = w0_dot(n, nu);  // lam = y . (-2 rho)
  // Peel left descents; each step walks one wall toward the base alcove.
  while (lam != base) {
    std::vector<std::int64_t> v = lam.a;
    for (auto& c : v) c += 1;
    // The orbit of the base point is regular: a wall hit means bad input.
    for (int i = 1; i <= n; ++i)
      if (v[i - 1] == 0)
        fail(Errc::not_in_orbit,
             "weight lands on a reflecting hyperplane (i=" + std::to_string(i) +
                 ")");
    if (level(v) == -p)
      fail(Errc::not_in_orbit, "weight lands on the affine hyperplane");
    int desc = -1;
    if (level(v) < -p) {
      desc = 0;
    } else {
      for (int i = 1; i <= n; ++i) {
        if (v[i - 1] > 0) {
          desc = i;
          break;
        }
      }
    }
    if (desc < 0)
      fail(Errc::not_in_orbit,
           "weight " + nu.to_string() + " is not in the orbit of -2*rho");
    out.y_word.push_back(static_cast<std::uint8_t>(desc));
    lam = dot_apply_gen(n, p, desc, lam);
    if (out.y_word.size() > 1000000)
      fail(Errc::not_in_orbit, "descent peeling did not terminate");
  }

  // Validate the derivation: reduced word, coset representative, replay.
  const CoxeterSystem sys = affine_system(n);
  const GroupElement y = word_to_element(sys, out.y_word, /*require_reduced=*/true);
  if (!is_min_coset_rep(sys, y))
    fail(Errc::internal_invariant, "resolved element is not a coset representative");
  out.y_length = y.length;
  if (dot_apply_word(n, p, out.y_word, base) != w0_dot(n, nu) ||
      w0_dot(n, dot_apply_word(n, p, out.y_word, base)) != nu)
    fail(Errc::internal_invariant, "dot-action replay mismatch");
  return out;
}

AffineReport run_case(ElementPool& pool, int n, std::int64_t p, const Weight& nu,
                      const EngineOptions& opt, bool allow_unrestricted) {
  if (!is_p_restricted(nu, p) && !allow_unrestricted)
    fail(Errc::not_restricted,
         "weight " + nu.to_string() + " is not p-restricted for p=" +
             std::to_string(p));
  AffineReport rep;
  rep.target = weight_to_y(n, p, nu);
  rep.result = compute_target(pool, rep.target.y_word, opt);
  const Word empty_word;
  const KLEntry* e = rep.result.entry_for(empty_word);
  if (e == nullptr)
    fail(Errc::internal_invariant, "identity entry missing from the result");
  rep.mu_e = e->mu;
  rep.p_e = e->p;
  for (const KLEntry& entry : rep.result.entries)
    for (const BigInt& c : entry.p)
      if (c < 0) rep.negative_coefficient = true;
  return rep;
}

AffineReport run_case(int n, std::int64_t p, const Weight& nu,
                      const EngineOptions& opt, bool allow_unrestricted) {
  ElementPool pool(affine_system(n));
  return run_case(pool, n, p, nu, opt, allow_unrestricted);
}

}  // namespace klq
