// heckemod.hpp -- elements of the parabolic Hecke module in the normalized
// basis and the right action of the elements C'_s.
//
// A ModuleVector is a finitely supported map from coset representatives to
// Laurent coefficients; the coefficient of x is the coefficient of the
// normalized basis vector at x (the basis vector divided by t^l(x)). In
// this basis the action of C'_s reads, per coset case,
//
//   Down:  t*f at x   plus f at xs
//   UpIn:  f/t at x   plus f at xs
//   UpOut: (t + 1/t)*f at x
//
// and the "strictly negative exponents" condition the engine drives toward
// becomes a plain support check.

#pragma once

#include <atomic>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "klq/laurent.hpp"
#include "klq/pool.hpp"

namespace klq {

class ModuleVector {
public:
  ModuleVector() { count_ctor(); }
  ModuleVector(const ModuleVector& o) : m_(o.m_) { count_ctor(); }
  ModuleVector(ModuleVector&& o) noexcept : m_(std::move(o.m_)) { count_ctor(); }
  ModuleVector& operator=(const ModuleVector&) = default;
  ModuleVector& operator=(ModuleVector&&) = default;
  ~ModuleVector() { live_.fetch_sub(1, std::memory_order_relaxed); }

  bool empty() const { return m_.empty(); }
  std::size_t support_size() const { return m_.size(); }

  const LaurentPoly* find(ElemId x) const;
  const LaurentPoly& coefficient(ElemId x) const;  // zero if absent
  void set(ElemId x, LaurentPoly f);               // drops zero
  void clear() { m_.clear(); }
  void release() { std::unordered_map<ElemId, LaurentPoly>().swap(m_); }

  template <class F>
  void for_each(F&& f) const {
    for (const auto& [id, poly] : m_) f(id, poly);
  }

  // Support ids ordered by (length, canonical word).
  std::vector<ElemId> sorted_support(const ElementPool& pool) const;

  bool operator==(const ModuleVector& o) const { return m_ == o.m_; }

  // v -= g * w; ids whose coefficient changed are appended to *touched
  // (including ones that dropped to zero) when touched is non-null.
  void sub_scaled(const LaurentPoly& g, const ModuleVector& w,
                  std::vector<ElemId>* touched = nullptr);

  // Live-instance accounting backing the engine's memory contract checks.
  static long live_count() { return live_.load(std::memory_order_relaxed); }
  static long peak_live() { return peak_.load(std::memory_order_relaxed); }
  static void reset_peak() {
    peak_.store(live_.load(std::memory_order_relaxed),
                std::memory_order_relaxed);
  }

private:
  void count_ctor() {
    const long v = live_.fetch_add(1, std::memory_order_relaxed) + 1;
    long p = peak_.load(std::memory_order_relaxed);
    while (v > p &&
           !peak_.compare_exchange_weak(p, v, std::memory_order_relaxed)) {
    }
  }

  std::unordered_map<ElemId, LaurentPoly> m_;
  static std::atomic<long> live_;
  static std::atomic<long> peak_;

  friend void mul_cprime_inplace(ElementPool&, ModuleVector&, int);
};

// The unit vector: coefficient 1 at the identity.
ModuleVector unit_vector();

// v <- v * C'_s.
void mul_cprime_inplace(ElementPool& pool, ModuleVector& v, int s);

// unit * C'_{s_1} ... C'_{s_k} for a reduced word of an element of W^J,
// computed by plain left-to-right iteration (nothing else is stored).
// Throws Errc::not_reduced / not_coset_rep on invalid words. When top is
// non-null it receives the id of the word's product, whose coefficient in
// the result is exactly 1.
//
// Note: the product genuinely depends on the chosen reduced word (already
// C'_s C'_t C'_s differs from C'_t C'_s C'_t at a braid relation); only the
// corrected basis element the engine extracts from it is word-independent.
ModuleVector cprime_product(ElementPool& pool, const Word& word,
                            ElemId* top = nullptr);

// Same, written into an existing vector; the engine uses this form so the
// number of live vectors during a wave is exactly the working vector plus
// the in-flight corrections.
void cprime_product_into(ElementPool& pool, const Word& word, ModuleVector& out,
                         ElemId* top = nullptr);

}  // namespace klq
