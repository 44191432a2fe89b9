// engine.cpp

#include "klq/engine.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <list>
#include <map>
#include <optional>

#include "klq/ioutil.hpp"
#include "klq/sysjson.hpp"

namespace klq {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fingerprint_hex(std::uint64_t fp) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fp));
  return buf;
}

// Bounded LRU of iterated-C' products, keyed by element id. Off by default;
// the engine's point is that it does not need to store these.
class DCache {
public:
  explicit DCache(std::size_t cap) : cap_(cap) {}

  const ModuleVector* get(ElemId id) {
    auto it = pos_.find(id);
    if (it == pos_.end()) return nullptr;
    items_.splice(items_.begin(), items_, it->second);
    return &items_.front().second;
  }

  void put(ElemId id, ModuleVector v) {
    if (cap_ == 0) return;
    auto it = pos_.find(id);
    if (it != pos_.end()) {
      items_.splice(items_.begin(), items_, it->second);
      items_.front().second = std::move(v);
      return;
    }
    items_.emplace_front(id, std::move(v));
    pos_[id] = items_.begin();
    if (items_.size() > cap_) {
      pos_.erase(items_.back().first);
      items_.pop_back();
    }
  }

  std::size_t size() const { return items_.size(); }

private:
  std::size_t cap_;
  std::list<std::pair<ElemId, ModuleVector>> items_;
  std::unordered_map<ElemId, std::list<std::pair<ElemId, ModuleVector>>::iterator>
      pos_;
};

bool word_less(const ElementPool& pool, ElemId a, ElemId b) {
  return pool.word(a) < pool.word(b);
}

constexpr const char* kCheckpointFormat = "klq-checkpoint";
constexpr int kCheckpointVersion = 1;

Json state_to_json(const ElementPool& pool, const ModuleVector& work,
                   const Word& y_word, std::uint32_t wave_floor,
                   const EngineCounters& ctr) {
  Json j;
  j["format"] = kCheckpointFormat;
  j["version"] = kCheckpointVersion;
  j["fingerprint"] = fingerprint_hex(pool.system().fingerprint());
  j["system"] = system_to_json(pool.system());
  Json yw = Json::array();
  for (std::uint8_t s : y_word) yw.push_back(static_cast<int>(s));
  j["y_word"] = std::move(yw);
  j["wave_floor"] = wave_floor;
  Json c;
  c["waves"] = ctr.waves;
  c["corrections"] = ctr.corrections;
  c["peak_support"] = ctr.peak_support;
  c["last_wave_length"] = ctr.last_wave_length;
  j["counters"] = std::move(c);
  Json entries = Json::array();
  for (ElemId id : work.sorted_support(pool)) {
    Json e;
    Json w = Json::array();
    for (std::uint8_t s : pool.word(id)) w.push_back(static_cast<int>(s));
    e["w"] = std::move(w);
    Json terms = Json::array();
    for (const auto& [exp, coeff] : work.coefficient(id).terms())
      terms.push_back(Json::array({exp, to_decimal(coeff)}));
    e["c"] = std::move(terms);
    entries.push_back(std::move(e));
  }
  j["work"] = std::move(entries);
  return j;
}

// The run driver. One instance per compute/resume call; owns the working
// vector, the by-length offender index and the counters.
class TargetRun {
public:
  TargetRun(ElementPool& pool, EngineOptions opt)
      : pool_(pool), opt_(std::move(opt)),
        cache_(opt_.use_cache ? opt_.cache_capacity : 0) {}

  KLResult fresh(const Word& y_word) {
    t0_ = Clock::now();
    cprime_product_into(pool_, y_word, work_, &y_);
    y_word_ = y_word;
    y_len_ = pool_.length(y_);
    wave_floor_ = y_len_ == 0 ? 0 : y_len_ - 1;
    ctr_ = EngineCounters{};
    ctr_.peak_support = work_.support_size();
    init_buckets();
    return run();
  }

  KLResult resumed(EngineState st) {
    t0_ = Clock::now();
    if (st.fingerprint != pool_.system().fingerprint())
      fail(Errc::fingerprint_mismatch,
           "checkpoint fingerprint " + fingerprint_hex(st.fingerprint) +
               " does not match the requested system " +
               fingerprint_hex(pool_.system().fingerprint()));
    y_ = pool_.intern_word(st.y_word);
    y_word_ = std::move(st.y_word);
    y_len_ = pool_.length(y_);
    work_ = std::move(st.work);
    wave_floor_ = st.wave_floor;
    ctr_ = st.counters;
    if (work_.coefficient(y_) != LaurentPoly(1))
      fail(Errc::corrupt_checkpoint,
           "checkpoint does not carry coefficient 1 at the target");
    init_buckets();
    return run();
  }

private:
  void init_buckets() {
    buckets_.clear();
    work_.for_each([this](ElemId id, const LaurentPoly&) {
      if (id == y_) return;
      const std::uint32_t len = pool_.length(id);
      if (len <= wave_floor_) buckets_[len].push_back(id);
    });
  }

  int threads() const {
    const int t = opt_.threads > 0 ? opt_.threads : omp_get_max_threads();
    return std::max(1, t);
  }

  std::optional<std::pair<std::uint32_t, std::vector<ElemId>>> next_wave() {
    while (!buckets_.empty()) {
      auto it = std::prev(buckets_.end());
      const std::uint32_t len = it->first;
      std::vector<ElemId> cand = std::move(it->second);
      buckets_.erase(it);
      if (len > wave_floor_) continue;
      std::sort(cand.begin(), cand.end());
      cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
      std::vector<ElemId> off;
      for (ElemId id : cand) {
        const LaurentPoly* f = work_.find(id);
        if (f && !f->is_strictly_negative()) off.push_back(id);
      }
      if (off.empty()) continue;
      std::sort(off.begin(), off.end(),
                [this](ElemId a, ElemId b) { return word_less(pool_, a, b); });
      return std::make_pair(len, std::move(off));
    }
    return std::nullopt;
  }

  KLResult run() {
    last_ckpt_ = Clock::now();
    report_progress(y_len_, 0, 0);
    while (auto wv = next_wave()) {
      const std::uint32_t len = wv->first;
      std::vector<ElemId> wave = std::move(wv->second);
      if (ctr_.last_wave_length >= 0 &&
          static_cast<std::int64_t>(len) > ctr_.last_wave_length)
        fail(Errc::internal_invariant,
             "maximal offending length increased from " +
                 std::to_string(ctr_.last_wave_length) + " to " +
                 std::to_string(len));
      if (static_cast<std::int64_t>(len) != ctr_.last_wave_length) ++ctr_.waves;
      ctr_.last_wave_length = static_cast<std::int64_t>(len);
      wave_floor_ = len;
      process_wave(len, wave);
      wave_floor_ = len == 0 ? 0 : len - 1;
      verify_after_wave();
      maybe_checkpoint(false);
    }
    KLResult r = extract_result(pool_, work_, y_);
    r.y_word = y_word_;
    r.stats.counters = ctr_;
    r.stats.elapsed_s = seconds_since(t0_);
    r.stats.wave_log = std::move(wave_log_);
    r.stats.cache_entries = cache_.size();
    // A finished run invalidates its own checkpoint, including one it was
    // resumed from but never rewrote.
    if (!opt_.checkpoint_path.empty()) {
      std::error_code ec;
      std::filesystem::remove(opt_.checkpoint_path, ec);
    }
    return r;
  }

  void process_wave(std::uint32_t len, const std::vector<ElemId>& wave) {
    ModuleVector::reset_peak();
    // Correction multipliers are read before any merge; same-length
    // corrections cannot disturb each other's coefficients.
    std::vector<LaurentPoly> gs(wave.size());
    for (std::size_t i = 0; i < wave.size(); ++i) {
      gs[i] = correction_poly(work_.coefficient(wave[i]));
      if (gs[i].is_zero() || !gs[i].is_bar_symmetric())
        fail(Errc::internal_invariant, "bad correction multiplier");
    }
    report_progress(len, wave.size(), 0);
    const int nthreads = threads();
    const std::size_t chunk =
        nthreads <= 1 ? 1 : static_cast<std::size_t>(nthreads) * 2;
    for (std::size_t base = 0; base < wave.size(); base += chunk) {
      const std::size_t n = std::min(chunk, wave.size() - base);
      std::vector<ModuleVector> ds(n);
      std::vector<char> have(n, 0);
      if (opt_.use_cache) {
        for (std::size_t i = 0; i < n; ++i) {
          if (const ModuleVector* hit = cache_.get(wave[base + i])) {
            ds[i] = *hit;
            have[i] = 1;
          }
        }
      }
      if (nthreads <= 1) {
        // Serial reference path; kept distinct so it can be benchmarked
        // against the parallel kernel below.
        for (std::size_t i = 0; i < n; ++i)
          if (!have[i])
            cprime_product_into(pool_, pool_.word(wave[base + i]), ds[i]);
      } else {
        std::exception_ptr err;
#pragma omp parallel for num_threads(nthreads) schedule(dynamic)
        for (long i = 0; i < static_cast<long>(n); ++i) {
          if (have[static_cast<std::size_t>(i)]) continue;
          try {
            cprime_product_into(
                pool_, pool_.word(wave[base + static_cast<std::size_t>(i)]),
                ds[static_cast<std::size_t>(i)]);
          } catch (...) {
#pragma omp critical
            if (!err) err = std::current_exception();
          }
        }
        if (err) std::rethrow_exception(err);
      }
      // Deterministic merge: ascending canonical-key order within the wave.
      for (std::size_t i = 0; i < n; ++i) {
        merge_correction(len, wave[base + i], gs[base + i], ds[i]);
        if (opt_.use_cache)
          cache_.put(wave[base + i], std::move(ds[i]));
        else
          ds[i].release();
      }
      ctr_.peak_support = std::max<std::uint64_t>(ctr_.peak_support,
                                                  work_.support_size());
      maybe_checkpoint(false);
      report_progress(len, wave.size(), base + n);
    }
    wave_log_.push_back(WaveStat{len, wave.size(), work_.support_size(),
                                 ModuleVector::peak_live()});
  }

  void merge_correction(std::uint32_t len, ElemId x, const LaurentPoly& g,
                        const ModuleVector& d) {
    touched_.clear();
    work_.sub_scaled(g, d, &touched_);
    ++ctr_.corrections;
    for (ElemId id : touched_) {
      if (id == y_)
        fail(Errc::internal_invariant, "correction touched the target coefficient");
      const std::uint32_t l = pool_.length(id);
      const LaurentPoly& f = work_.coefficient(id);
      if (!f.parity_ok(static_cast<int>((y_len_ - l) & 1)))
        fail(Errc::internal_invariant,
             "parity violation at length " + std::to_string(l) + ": " +
                 f.to_string());
      if (id == x) {
        if (!f.is_strictly_negative())
          fail(Errc::internal_invariant,
               "corrected coefficient still has nonnegative terms: " +
                   f.to_string());
      } else if (l < len) {
        buckets_[l].push_back(id);
      }
    }
  }

  void verify_after_wave() {
    if (work_.coefficient(y_) != LaurentPoly(1))
      fail(Errc::internal_invariant, "target coefficient disturbed");
    const bool full =
        opt_.verify >= 2 ||
        (opt_.verify == 1 && work_.support_size() <= opt_.full_verify_limit);
    if (!full) return;
    work_.for_each([this](ElemId id, const LaurentPoly& f) {
      const std::uint32_t l = pool_.length(id);
      if (!f.parity_ok(static_cast<int>((y_len_ - l) & 1)))
        fail(Errc::internal_invariant,
             "parity violation at length " + std::to_string(l));
      if (id != y_ && l > wave_floor_ && !f.is_strictly_negative())
        fail(Errc::internal_invariant,
             "offending coefficient above the wave floor");
    });
  }

  void report_progress(std::uint32_t len, std::uint64_t wave_size,
                       std::uint64_t done) {
    if (!opt_.progress) return;
    EngineProgress p;
    p.wave_length = len;
    p.wave_size = wave_size;
    p.wave_done = done;
    p.support = work_.support_size();
    p.corrections = ctr_.corrections;
    p.elapsed_s = seconds_since(t0_);
    if (!opt_.progress(p)) {
      maybe_checkpoint(true);
      fail(Errc::interrupted, "interrupted");
    }
  }

  void maybe_checkpoint(bool force) {
    if (opt_.checkpoint_path.empty()) return;
    if (!force && opt_.checkpoint_interval_s > 0 &&
        seconds_since(last_ckpt_) < opt_.checkpoint_interval_s)
      return;
    Json j = state_to_json(pool_, work_, y_word_, wave_floor_, ctr_);
    if (!opt_.checkpoint_extra.empty())
      for (auto it = opt_.checkpoint_extra.begin();
           it != opt_.checkpoint_extra.end(); ++it)
        j[it.key()] = it.value();
    write_file_atomic(opt_.checkpoint_path, j.dump(1) + "\n");
    last_ckpt_ = Clock::now();
  }

  ElementPool& pool_;
  EngineOptions opt_;
  DCache cache_;
  ElemId y_ = 0;
  Word y_word_;
  std::uint32_t y_len_ = 0;
  ModuleVector work_;
  std::uint32_t wave_floor_ = 0;
  std::map<std::uint32_t, std::vector<ElemId>> buckets_;
  std::vector<ElemId> touched_;
  EngineCounters ctr_;
  std::vector<WaveStat> wave_log_;
  Clock::time_point t0_, last_ckpt_;
};

}  // namespace

// ---------------------------------------------------------------------------

const KLEntry* KLResult::entry_for(const Word& canonical_x) const {
  const auto key = std::make_pair(static_cast<std::uint32_t>(canonical_x.size()),
                                  canonical_x);
  auto it = std::lower_bound(
      entries.begin(), entries.end(), key,
      [](const KLEntry& e, const std::pair<std::uint32_t, Word>& k) {
        if (e.length != k.first) return e.length < k.first;
        return e.x_word < k.second;
      });
  if (it != entries.end() && it->length == key.first && it->x_word == canonical_x)
    return &*it;
  return nullptr;
}

BigInt KLResult::mu_of(const Word& canonical_x) const {
  const KLEntry* e = entry_for(canonical_x);
  return e ? e->mu : BigInt(0);
}

bool KLResult::same_values(const KLResult& o) const {
  return y_length == o.y_length && entries == o.entries;
}

KLResult compute_target(ElementPool& pool, const Word& y_word,
                        const EngineOptions& opt) {
  return TargetRun(pool, opt).fresh(y_word);
}

KLResult compute_target(const CoxeterSystem& sys, const Word& y_word,
                        const EngineOptions& opt) {
  ElementPool pool(sys);
  return compute_target(pool, y_word, opt);
}

KLResult resume_target(ElementPool& pool, EngineState state,
                       const EngineOptions& opt) {
  return TargetRun(pool, opt).resumed(std::move(state));
}

std::vector<ElemId> find_offenders(const ElementPool& pool,
                                   const ModuleVector& v, ElemId y) {
  std::uint32_t best = 0;
  bool found = false;
  v.for_each([&](ElemId id, const LaurentPoly& f) {
    if (id == y || f.is_strictly_negative()) return;
    const std::uint32_t len = pool.length(id);
    if (!found || len > best) {
      best = len;
      found = true;
    }
  });
  std::vector<ElemId> out;
  if (!found) return out;
  v.for_each([&](ElemId id, const LaurentPoly& f) {
    if (id == y || f.is_strictly_negative()) return;
    if (pool.length(id) == best) out.push_back(id);
  });
  std::sort(out.begin(), out.end(),
            [&pool](ElemId a, ElemId b) { return word_less(pool, a, b); });
  return out;
}

bool is_final_state(const ElementPool& pool, const ModuleVector& v, ElemId y,
                    std::string* why) {
  auto complain = [&why](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (v.coefficient(y) != LaurentPoly(1))
    return complain("coefficient at the target is not 1");
  const std::uint32_t ylen = pool.length(y);
  bool ok = true;
  std::string msg;
  v.for_each([&](ElemId id, const LaurentPoly& f) {
    if (!ok || id == y) return;
    const std::uint32_t l = pool.length(id);
    if (l >= ylen) {
      ok = false;
      msg = "support element at length >= l(y)";
      return;
    }
    if (!f.is_strictly_negative()) {
      ok = false;
      msg = "nonnegative term below the target: " + f.to_string();
      return;
    }
    if (!f.parity_ok(static_cast<int>((ylen - l) & 1))) {
      ok = false;
      msg = "parity violation: " + f.to_string();
    }
  });
  if (!ok) return complain(msg);
  return true;
}

KLResult extract_result(const ElementPool& pool, const ModuleVector& v, ElemId y) {
  std::string why;
  if (!is_final_state(pool, v, y, &why))
    fail(Errc::internal_invariant, "not a finished vector: " + why);
  KLResult r;
  r.y_word = pool.word(y);
  r.y_length = pool.length(y);
  for (ElemId id : v.sorted_support(pool)) {
    KLEntry e;
    e.x_word = pool.word(id);
    e.length = pool.length(id);
    if (id == y) {
      e.p = {BigInt(1)};
      e.mu = 0;
    } else {
      const LaurentPoly& f = v.coefficient(id);
      e.p = f.to_q_polynomial(static_cast<int>(r.y_length - e.length));
      e.mu = f.mu_coefficient();
    }
    r.entries.push_back(std::move(e));
  }
  return r;
}

ModuleVector result_to_vector(ElementPool& pool, const KLResult& r) {
  ModuleVector v;
  for (const KLEntry& e : r.entries) {
    const ElemId id = pool.intern_word(e.x_word);
    const int ldiff = static_cast<int>(r.y_length - e.length);
    std::vector<LaurentPoly::Term> terms;
    for (std::size_t j = 0; j < e.p.size(); ++j)
      if (e.p[j] != 0)
        terms.emplace_back(static_cast<int>(2 * j) - ldiff, e.p[j]);
    v.set(id, LaurentPoly::from_terms(std::move(terms)));
  }
  return v;
}

// ---------------------------------------------------------------------------
// Checkpoints

void checkpoint_save(const ElementPool& pool, const EngineState& state,
                     const std::string& path, const Json* extra) {
  Json j = state_to_json(pool, state.work, state.y_word, state.wave_floor,
                         state.counters);
  if (extra)
    for (auto it = extra->begin(); it != extra->end(); ++it)
      j[it.key()] = it.value();
  write_file_atomic(path, j.dump(1) + "\n");
}

Json checkpoint_read_raw(const std::string& path) {
  const std::string text = read_file(path);
  Json j = Json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded())
    fail(Errc::corrupt_checkpoint, path + " is not valid JSON");
  if (!j.is_object() || !j.contains("format") || !j["format"].is_string() ||
      j["format"].get<std::string>() != kCheckpointFormat)
    fail(Errc::corrupt_checkpoint, path + " is not a checkpoint file");
  if (!j.contains("version") || !j["version"].is_number_integer() ||
      j["version"].get<int>() != kCheckpointVersion)
    fail(Errc::version_mismatch,
         path + " uses an unsupported checkpoint version");
  return j;
}

EngineState checkpoint_from_json(ElementPool& pool, const Json& j) {
  EngineState st;
  try {
    st.fingerprint =
        std::stoull(j.at("fingerprint").get<std::string>(), nullptr, 16);
    for (const auto& v : j.at("y_word"))
      st.y_word.push_back(static_cast<std::uint8_t>(v.get<int>()));
    st.wave_floor = j.at("wave_floor").get<std::uint32_t>();
    const Json& c = j.at("counters");
    st.counters.waves = c.at("waves").get<std::uint64_t>();
    st.counters.corrections = c.at("corrections").get<std::uint64_t>();
    st.counters.peak_support = c.at("peak_support").get<std::uint64_t>();
    st.counters.last_wave_length = c.at("last_wave_length").get<std::int64_t>();
    for (const auto& e : j.at("work")) {
      Word w;
      for (const auto& v : e.at("w"))
        w.push_back(static_cast<std::uint8_t>(v.get<int>()));
      std::vector<LaurentPoly::Term> terms;
      for (const auto& t : e.at("c"))
        terms.emplace_back(t.at(0).get<int>(),
                           bigint_from_decimal(t.at(1).get<std::string>()));
      const ElemId id = pool.intern_word(w);
      st.work.set(id, LaurentPoly::from_terms(std::move(terms)));
    }
  } catch (const Error& e) {
    if (e.code() == Errc::fingerprint_mismatch || e.code() == Errc::version_mismatch)
      throw;
    fail(Errc::corrupt_checkpoint, std::string("bad checkpoint contents: ") + e.what());
  } catch (const std::exception& e) {
    fail(Errc::corrupt_checkpoint, std::string("bad checkpoint contents: ") + e.what());
  }
  return st;
}

EngineState checkpoint_resume(ElementPool& pool, const std::string& path) {
  const Json j = checkpoint_read_raw(path);
  EngineState st = checkpoint_from_json(pool, j);
  if (st.fingerprint != pool.system().fingerprint())
    fail(Errc::fingerprint_mismatch,
         "checkpoint fingerprint does not match the requested system");
  return st;
}

}  // namespace klq
