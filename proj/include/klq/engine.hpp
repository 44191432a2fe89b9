// engine.hpp -- non-recursive computation of one targeted canonical basis
// element of the parabolic Hecke module, and with it all polynomials
// P^J_{x,y} and mu-coefficients for the fixed target y.
//
// The working vector starts as the iterated C'_s product over a reduced
// word of y. Any support element x != y whose coefficient still has a term
// of nonnegative degree is an "offender"; offenders are fixed in waves:
// take all offenders of maximal length, and for each subtract g * D_x,
// where g is the bar-symmetric cover of the offending coefficient and D_x
// the iterated C'_s product over the canonical word of x. A correction at
// length L only touches elements of length <= L and leaves x itself with a
// strictly negative coefficient, so the maximal offending length strictly
// decreases and members of one wave are independent -- which is what the
// parallel path exploits. When no offenders remain, the working vector is
// the canonical basis element and the polynomials are read off.
//
// Nothing but the single working vector and the in-flight corrections of
// the current wave is ever retained; no table of basis elements exists.

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "klq/heckemod.hpp"

namespace klq {

struct EngineProgress {
  std::uint32_t wave_length = 0;
  std::uint64_t wave_size = 0;
  std::uint64_t wave_done = 0;
  std::uint64_t support = 0;
  std::uint64_t corrections = 0;
  double elapsed_s = 0.0;
};

struct WaveStat {
  std::uint32_t length = 0;
  std::uint64_t size = 0;
  std::uint64_t support_after = 0;
  long peak_live = 0;  // live ModuleVector peak while the wave ran
};

// Counters that survive a checkpoint/resume cycle. A "wave" counts one
// distinct maximal offending length, so interrupting mid-wave does not
// split the count.
struct EngineCounters {
  std::uint64_t waves = 0;
  std::uint64_t corrections = 0;
  std::uint64_t peak_support = 0;
  std::int64_t last_wave_length = -1;
};

struct EngineStats {
  EngineCounters counters;
  double elapsed_s = 0.0;
  std::vector<WaveStat> wave_log;
  std::size_t cache_entries = 0;  // d-product cache size at the end (0 when off)
};

struct KLEntry {
  Word x_word;  // canonical word, internal generator indices
  std::uint32_t length = 0;
  std::vector<BigInt> p;  // P^J_{x,y} in q, ascending degree
  BigInt mu;              // coefficient of q^((l(y)-l(x)-1)/2), 0 if absent

  bool operator==(const KLEntry& o) const {
    return x_word == o.x_word && length == o.length && p == o.p && mu == o.mu;
  }
};

struct KLResult {
  Word y_word;  // the validated input word for y
  std::uint32_t y_length = 0;
  std::vector<KLEntry> entries;  // ascending (length, canonical word); y included
  EngineStats stats;

  const KLEntry* entry_for(const Word& canonical_x) const;
  BigInt mu_of(const Word& canonical_x) const;
  bool same_values(const KLResult& o) const;  // ignores stats
};

struct EngineOptions {
  int threads = 0;  // 0 = all available; 1 = serial reference path
  bool use_cache = false;
  std::size_t cache_capacity = 256;
  std::string checkpoint_path;           // empty = no checkpoints
  double checkpoint_interval_s = 600.0;  // 0 = checkpoint at every opportunity
  // 0: cheap per-correction checks only; 1: full support verification while
  // the support is small; 2: full verification after every wave.
  int verify = 1;
  std::size_t full_verify_limit = 50000;
  // Called at wave starts and chunk boundaries; returning false checkpoints
  // (when a path is set) and aborts with Errc::interrupted.
  std::function<bool(const EngineProgress&)> progress;
  // Extra top-level entries carried along in checkpoint files (the CLI
  // stores its job description here so `resume` is self-contained).
  nlohmann::ordered_json checkpoint_extra;
};

// Checkpointable snapshot between corrections.
struct EngineState {
  std::uint64_t fingerprint = 0;
  Word y_word;
  ModuleVector work;
  std::uint32_t wave_floor = 0;  // offenders can only exist at lengths <= this
  EngineCounters counters;
};

KLResult compute_target(ElementPool& pool, const Word& y_word,
                        const EngineOptions& opt = {});
KLResult compute_target(const CoxeterSystem& sys, const Word& y_word,
                        const EngineOptions& opt = {});
KLResult resume_target(ElementPool& pool, EngineState state,
                       const EngineOptions& opt = {});

// All offenders of maximal length: ids x != y whose coefficient has a term
// of nonnegative degree, ordered by canonical word. Empty when the vector
// is finished.
std::vector<ElemId> find_offenders(const ElementPool& pool,
                                   const ModuleVector& v, ElemId y);

// Final-state predicate: coefficient 1 at y, strictly negative coefficients
// of the right parity below, which also enforces the degree bound.
bool is_final_state(const ElementPool& pool, const ModuleVector& v, ElemId y,
                    std::string* why = nullptr);

// Reads the polynomials out of a finished vector (throws
// Errc::internal_invariant if it is not finished). Stats are left empty.
KLResult extract_result(const ElementPool& pool, const ModuleVector& v, ElemId y);

// Rebuilds the normalized module vector a result describes.
ModuleVector result_to_vector(ElementPool& pool, const KLResult& r);

// Checkpoint files are JSON with a versioned header; writes are atomic.
// `extra` entries (e.g. the CLI's job block) are merged into the top level.
void checkpoint_save(const ElementPool& pool, const EngineState& state,
                     const std::string& path,
                     const nlohmann::ordered_json* extra = nullptr);
nlohmann::ordered_json checkpoint_read_raw(const std::string& path);
EngineState checkpoint_from_json(ElementPool& pool, const nlohmann::ordered_json& j);
EngineState checkpoint_resume(ElementPool& pool, const std::string& path);

}  // namespace klq
