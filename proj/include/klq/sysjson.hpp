// sysjson.hpp -- JSON (de)serialization of Coxeter systems.
//
// Accepted input forms:
//   {"cartan": [[2,-1],[-1,2]], "J": [1]}
//   {"type": "A" | "affine-A", "n": 3, "J": [1,2]}
// J entries use the system's user-facing generator names (1-based for
// type A, 0-based otherwise).

#pragma once

#include <nlohmann/json.hpp>

#include "klq/coxeter.hpp"

namespace klq {

using Json = nlohmann::ordered_json;

Json system_to_json(const CoxeterSystem& sys);
CoxeterSystem system_from_json(const Json& j);

// User-facing generator names <-> internal 0-based indices.
inline int gen_to_internal(const CoxeterSystem& sys, long long name) {
  const long long s = name - sys.label_base;
  if (s < 0 || s >= sys.rank)
    fail(Errc::invalid_input,
         "generator " + std::to_string(name) + " out of range");
  return static_cast<int>(s);
}
inline long long gen_to_user(const CoxeterSystem& sys, int s) {
  return s + sys.label_base;
}

Word word_from_user(const CoxeterSystem& sys, const std::vector<long long>& names);
std::vector<long long> word_to_user(const CoxeterSystem& sys, const Word& w);

}  // namespace klq
