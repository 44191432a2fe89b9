// errors.hpp -- error codes and the exception type shared by all modules.

#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace klq {

enum class Errc {
  invalid_cartan,
  invalid_input,
  not_reduced,
  not_coset_rep,
  not_dominant,
  not_in_orbit,
  not_restricted,
  odd_exponent,
  negative_exponent,
  internal_invariant,
  corrupt_checkpoint,
  fingerprint_mismatch,
  version_mismatch,
  interrupted,
  io_error,
  usage
};

class Error : public std::runtime_error {
public:
  Error(Errc code, std::string msg)
      : std::runtime_error(std::move(msg)), code_(code) {}
  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) {
  throw Error(code, msg);
}

// Process exit code for an error class (0 ok, 2 usage, 3 invalid input,
// 4 checkpoint trouble, 5 internal invariant violation, 1 interrupted).
inline int exit_code_for(Errc code) noexcept {
  switch (code) {
    case Errc::usage:
      return 2;
    case Errc::invalid_cartan:
    case Errc::invalid_input:
    case Errc::not_reduced:
    case Errc::not_coset_rep:
    case Errc::not_dominant:
    case Errc::not_in_orbit:
    case Errc::not_restricted:
    case Errc::io_error:
      return 3;
    case Errc::corrupt_checkpoint:
    case Errc::fingerprint_mismatch:
    case Errc::version_mismatch:
      return 4;
    case Errc::odd_exponent:
    case Errc::negative_exponent:
    case Errc::internal_invariant:
      return 5;
    case Errc::interrupted:
      return 1;
  }
  return 1;
}

}  // namespace klq
