// oracle.hpp -- independent verification by the length-increasing recursion.
//
// Builds every canonical basis element of the quotient up to a length
// bound, in length order: for each new w pick its smallest right descent s
// (then u = ws is again a representative) and set
//
//   C_w = C_u * C'_s  -  sum over z with zs < z or zs outside the quotient
//                        of mu(z, u) * C_z,
//
// reading mu(z, u) off the stored coefficient of z in C_u. This stores the
// full table -- exactly the memory profile the engine exists to avoid --
// which is fine for the small systems cross-checks run on.

#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "klq/engine.hpp"

namespace klq {

struct BasisTable {
  std::uint32_t bound = 0;           // all of W^J up to this length
  std::vector<ElemId> order;         // BFS order, lengths ascending
  std::unordered_map<ElemId, ModuleVector> table;
};

// Enumerates W^J up to length_bound by BFS and fills the table. The
// quotient must have finitely many elements up to the bound (always true).
BasisTable build_table(ElementPool& pool, std::uint32_t length_bound);

// Reads the polynomials for a fixed y out of the table.
KLResult oracle_result(const ElementPool& pool, const BasisTable& table, ElemId y);

struct CompareReport {
  bool equal = false;
  std::uint64_t targets = 0;  // number of y checked
  std::string divergence;     // empty when equal
};

// Engine vs. oracle for one y (table must cover l(y)).
CompareReport compare_target(ElementPool& pool, const BasisTable& table,
                             ElemId y, const EngineOptions& opt = {});

// Engine vs. oracle for every y in W^J up to the bound. When length_bound
// is 0 and the quotient is finite (within element_cap), the whole quotient
// is checked; an infinite quotient requires an explicit bound.
CompareReport compare_system(const CoxeterSystem& sys, std::uint32_t length_bound = 0,
                             const EngineOptions& opt = {},
                             std::size_t element_cap = 200000);

// All of W^J up to the bound, lengths ascending (BFS through UpIn moves).
std::vector<ElemId> enumerate_quotient(ElementPool& pool,
                                       std::uint32_t length_bound,
                                       std::size_t element_cap = 200000);

}  // namespace klq
