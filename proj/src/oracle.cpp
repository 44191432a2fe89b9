// oracle.cpp

#include "klq/oracle.hpp"

#include <algorithm>
#include <sstream>

namespace klq {

std::vector<ElemId> enumerate_quotient(ElementPool& pool,
                                       std::uint32_t length_bound,
                                       std::size_t element_cap) {
  const bool whole = length_bound == 0;
  const std::uint32_t bound = whole ? UINT32_MAX : length_bound;
  std::vector<ElemId> order{pool.identity_id()};
  std::vector<char> seen(1, 1);  // indexed by id; pool ids are dense
  auto mark = [&seen](ElemId id) {
    if (seen.size() <= id) seen.resize(id + 1, 0);
    const bool fresh = !seen[id];
    seen[id] = 1;
    return fresh;
  };
  std::size_t head = 0;
  while (head < order.size()) {
    const ElemId x = order[head++];
    if (pool.length(x) >= bound) continue;
    for (int s = 0; s < pool.system().rank; ++s) {
      const Transition tr = pool.transition(x, s);
      if (tr.kind != CosetCase::UpIn) continue;
      if (mark(tr.to)) {
        order.push_back(tr.to);
        if (order.size() > element_cap) {
          if (whole)
            fail(Errc::invalid_input,
                 "quotient appears infinite; pass an explicit length bound");
          fail(Errc::invalid_input, "quotient enumeration exceeds element cap");
        }
      }
    }
  }
  std::sort(order.begin(), order.end(), [&pool](ElemId a, ElemId b) {
    const std::uint32_t la = pool.length(a), lb = pool.length(b);
    if (la != lb) return la < lb;
    return pool.word(a) < pool.word(b);
  });
  return order;
}

BasisTable build_table(ElementPool& pool, std::uint32_t length_bound) {
  BasisTable t;
  t.bound = length_bound;
  t.order = enumerate_quotient(pool, length_bound);
  for (ElemId w : t.order) {
    if (w == pool.identity_id()) {
      t.table.emplace(w, unit_vector());
      continue;
    }
    int s = -1;
    for (int i = 0; i < pool.system().rank; ++i) {
      if (is_right_descent(pool.element(w), i)) {
        s = i;
        break;
      }
    }
    if (s < 0) fail(Errc::internal_invariant, "no right descent");
    const ElemId u = pool.transition(w, s).to;
    ModuleVector v = t.table.at(u);
    mul_cprime_inplace(pool, v, s);
    // Correction sum over z with zs < z or zs outside the quotient.
    const ModuleVector& cu = t.table.at(u);
    for (ElemId z : cu.sorted_support(pool)) {
      const BigInt mu = cu.coefficient(z).mu_coefficient();
      if (mu == 0) continue;
      const CosetCase kind = pool.transition(z, s).kind;
      if (kind == CosetCase::UpIn) continue;
      v.sub_scaled(LaurentPoly(mu), t.table.at(z));
    }
    std::string why;
    if (!is_final_state(pool, v, w, &why))
      fail(Errc::internal_invariant, "recursion produced a bad vector: " + why);
    t.table.emplace(w, std::move(v));
  }
  return t;
}

KLResult oracle_result(const ElementPool& pool, const BasisTable& table, ElemId y) {
  auto it = table.table.find(y);
  if (it == table.table.end())
    fail(Errc::invalid_input, "target beyond the table bound");
  return extract_result(pool, it->second, y);
}

namespace {

std::string word_str(const Word& w) {
  std::string s = "[";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(static_cast<int>(w[i]));
  }
  return s + "]";
}

std::string describe_divergence(const KLResult& eng, const KLResult& ora) {
  std::ostringstream os;
  os << "y=" << word_str(eng.y_word) << ": ";
  if (eng.entries.size() != ora.entries.size()) {
    os << "support sizes differ (engine " << eng.entries.size() << ", oracle "
       << ora.entries.size() << ")";
    return os.str();
  }
  for (std::size_t i = 0; i < eng.entries.size(); ++i) {
    const KLEntry& a = eng.entries[i];
    const KLEntry& b = ora.entries[i];
    if (a == b) continue;
    os << "first divergence at x=" << word_str(a.x_word) << " vs "
       << word_str(b.x_word);
    return os.str();
  }
  os << "results differ in y metadata";
  return os.str();
}

}  // namespace

CompareReport compare_target(ElementPool& pool, const BasisTable& table,
                             ElemId y, const EngineOptions& opt) {
  CompareReport r;
  r.targets = 1;
  const KLResult eng = compute_target(pool, pool.word(y), opt);
  const KLResult ora = oracle_result(pool, table, y);
  r.equal = eng.same_values(ora);
  if (!r.equal) r.divergence = describe_divergence(eng, ora);
  return r;
}

CompareReport compare_system(const CoxeterSystem& sys, std::uint32_t length_bound,
                             const EngineOptions& opt, std::size_t element_cap) {
  ElementPool pool(sys);
  std::vector<ElemId> targets = enumerate_quotient(pool, length_bound, element_cap);
  const std::uint32_t bound =
      targets.empty() ? 0 : pool.length(targets.back());
  BasisTable table = build_table(pool, bound);
  CompareReport total;
  total.equal = true;
  for (ElemId y : targets) {
    CompareReport r = compare_target(pool, table, y, opt);
    ++total.targets;
    if (!r.equal) {
      total.equal = false;
      total.divergence = r.divergence;
      break;
    }
  }
  return total;
}

}  // namespace klq
