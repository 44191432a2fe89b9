// bigint.hpp -- arbitrary-precision integer coefficients.
//
// Polynomial coefficients must stay exact at any size; a fixed 64-bit
// result is only correct modulo 2^64 once a computation gets large.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <string>

#include "klq/errors.hpp"

namespace klq {

using BigInt = boost::multiprecision::cpp_int;

inline std::string to_decimal(const BigInt& v) { return v.str(); }

inline BigInt bigint_from_decimal(const std::string& s) {
  try {
    return BigInt(s);
  } catch (const std::exception&) {
    fail(Errc::invalid_input, "not a decimal integer: \"" + s + "\"");
  }
}

inline bool fits_int64(const BigInt& v) {
  return v >= std::numeric_limits<std::int64_t>::min() &&
         v <= std::numeric_limits<std::int64_t>::max();
}

}  // namespace klq
