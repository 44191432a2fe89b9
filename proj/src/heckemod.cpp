// heckemod.cpp

#include "klq/heckemod.hpp"

#include <algorithm>

namespace klq {

std::atomic<long> ModuleVector::live_{0};
std::atomic<long> ModuleVector::peak_{0};

namespace {
const LaurentPoly kZeroPoly;
}

const LaurentPoly* ModuleVector::find(ElemId x) const {
  auto it = m_.find(x);
  return it == m_.end() ? nullptr : &it->second;
}

const LaurentPoly& ModuleVector::coefficient(ElemId x) const {
  const LaurentPoly* p = find(x);
  return p ? *p : kZeroPoly;
}

void ModuleVector::set(ElemId x, LaurentPoly f) {
  if (f.is_zero())
    m_.erase(x);
  else
    m_[x] = std::move(f);
}

std::vector<ElemId> ModuleVector::sorted_support(const ElementPool& pool) const {
  std::vector<ElemId> ids;
  ids.reserve(m_.size());
  for (const auto& [id, poly] : m_) ids.push_back(id);
  std::sort(ids.begin(), ids.end(), [&pool](ElemId a, ElemId b) {
    const std::uint32_t la = pool.length(a), lb = pool.length(b);
    if (la != lb) return la < lb;
    return pool.word(a) < pool.word(b);
  });
  return ids;
}

void ModuleVector::sub_scaled(const LaurentPoly& g, const ModuleVector& w,
                              std::vector<ElemId>* touched) {
  for (const auto& [id, h] : w.m_) {
    LaurentPoly& f = m_[id];
    f.sub_mul(g, h);
    if (touched) touched->push_back(id);
    if (f.is_zero()) m_.erase(id);
  }
}

ModuleVector unit_vector() {
  ModuleVector v;
  v.set(0, LaurentPoly(1));
  return v;
}

void mul_cprime_inplace(ElementPool& pool, ModuleVector& v, int s) {
  std::unordered_map<ElemId, LaurentPoly> out;
  out.reserve(v.m_.size() * 2);
  for (const auto& [x, f] : v.m_) {
    const Transition tr = pool.transition(x, s);
    switch (tr.kind) {
      case CosetCase::Down:
        out[x].add_shifted(f, 1);
        out[tr.to].add_shifted(f, 0);
        break;
      case CosetCase::UpIn:
        out[x].add_shifted(f, -1);
        out[tr.to].add_shifted(f, 0);
        break;
      case CosetCase::UpOut:
        out[x].add_shifted(f, 1);
        out[x].add_shifted(f, -1);
        break;
    }
  }
  for (auto it = out.begin(); it != out.end();) {
    if (it->second.is_zero())
      it = out.erase(it);
    else
      ++it;
  }
  v.m_ = std::move(out);
}

void cprime_product_into(ElementPool& pool, const Word& word, ModuleVector& out,
                         ElemId* top) {
  out.clear();
  out.set(pool.identity_id(), LaurentPoly(1));
  ElemId cur = pool.identity_id();
  for (std::size_t k = 0; k < word.size(); ++k) {
    const int s = word[k];
    if (s < 0 || s >= pool.system().rank)
      fail(Errc::invalid_input, "generator index out of range in word");
    const Transition tr = pool.transition(cur, s);
    if (tr.kind == CosetCase::Down)
      fail(Errc::not_reduced,
           "word is not reduced (descent at position " + std::to_string(k) + ")");
    if (tr.kind == CosetCase::UpOut)
      fail(Errc::not_coset_rep,
           "word leaves the coset quotient at position " + std::to_string(k));
    cur = tr.to;
    mul_cprime_inplace(pool, out, s);
  }
  if (top) *top = cur;
}

ModuleVector cprime_product(ElementPool& pool, const Word& word, ElemId* top) {
  ModuleVector v;
  cprime_product_into(pool, word, v, top);
  return v;
}

}  // namespace klq
