// pool.hpp -- interning pool for minimal coset representatives.
//
// Engine and oracle traffic touches the same elements over and over
// (every correction walks a Bruhat interval), so elements are stored once
// and addressed by a dense 32-bit id. Each element caches its coset-case
// transition per generator and, lazily, its canonical word.
//
// Concurrency: lookups of already-interned ids are lock-free (chunked
// stable storage, atomic transition slots); inserting a new element takes
// the pool mutex. All cached values are pure functions of the element, so
// racing fills are benign.

#pragma once

#include <atomic>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "klq/coxeter.hpp"

namespace klq {

using ElemId = std::uint32_t;

struct Transition {
  CosetCase kind;
  ElemId to;  // xs for Down/UpIn; unused for UpOut
};

class ElementPool {
public:
  explicit ElementPool(CoxeterSystem sys);
  ElementPool(const ElementPool&) = delete;
  ElementPool& operator=(const ElementPool&) = delete;

  const CoxeterSystem& system() const { return sys_; }

  ElemId identity_id() const { return 0; }
  // Interns a copy of g (which must be in W^J) and returns its id.
  ElemId intern(const GroupElement& g);
  ElemId intern_word(const Word& canonical);  // word must be reduced, in W^J

  const GroupElement& element(ElemId id) const { return node(id).g; }
  std::uint32_t length(ElemId id) const { return node(id).g.length; }
  // Canonical (lexicographically smallest reduced) word, cached.
  const Word& word(ElemId id) const;

  // Coset case of (x, s), cached; interns xs on first use.
  Transition transition(ElemId x, int s);

  std::size_t size() const { return count_.load(std::memory_order_acquire); }

private:
  struct Node {
    GroupElement g;
    std::unique_ptr<std::atomic<std::uint64_t>[]> trans;
    mutable std::once_flag word_once;
    Word word;
  };

  static constexpr unsigned kChunkBits = 10;
  static constexpr std::size_t kChunkSize = std::size_t{1} << kChunkBits;
  static constexpr std::size_t kMaxChunks = std::size_t{1} << 15;

  const Node& node(ElemId id) const {
    return chunks_[id >> kChunkBits].load(std::memory_order_acquire)
        [id & (kChunkSize - 1)];
  }
  Node& node(ElemId id) {
    return chunks_[id >> kChunkBits].load(std::memory_order_acquire)
        [id & (kChunkSize - 1)];
  }

  ElemId insert_locked(const GroupElement& g, const std::string& key);

  CoxeterSystem sys_;
  mutable std::shared_mutex mu_;
  std::unordered_map<std::string, ElemId> index_;
  std::vector<std::atomic<Node*>> chunks_;
  std::vector<std::unique_ptr<Node[]>> chunk_owner_;
  std::atomic<std::size_t> count_{0};
};

}  // namespace klq
