// pool.cpp

#include "klq/pool.hpp"

namespace klq {

namespace {
// Transition slots pack the case tag and the target id; 0 means unfilled.
constexpr std::uint64_t pack(CosetCase c, ElemId to) {
  return (static_cast<std::uint64_t>(c) << 32) | to;
}
constexpr Transition unpack(std::uint64_t v) {
  return Transition{static_cast<CosetCase>(v >> 32),
                    static_cast<ElemId>(v & 0xffffffffu)};
}
}  // namespace

ElementPool::ElementPool(CoxeterSystem sys)
    : sys_(std::move(sys)), chunks_(kMaxChunks) {
  for (auto& c : chunks_) c.store(nullptr, std::memory_order_relaxed);
  const GroupElement e = identity(sys_);
  std::unique_lock lock(mu_);
  insert_locked(e, e.fwd.key());
}

ElemId ElementPool::insert_locked(const GroupElement& g, const std::string& key) {
  const std::size_t id = count_.load(std::memory_order_relaxed);
  const std::size_t chunk = id >> kChunkBits;
  if (chunk >= kMaxChunks)
    fail(Errc::internal_invariant, "element pool capacity exceeded");
  if (chunks_[chunk].load(std::memory_order_relaxed) == nullptr) {
    chunk_owner_.push_back(std::make_unique<Node[]>(kChunkSize));
    chunks_[chunk].store(chunk_owner_.back().get(), std::memory_order_release);
  }
  Node& n = chunks_[chunk].load(std::memory_order_relaxed)[id & (kChunkSize - 1)];
  n.g = g;
  n.trans = std::make_unique<std::atomic<std::uint64_t>[]>(sys_.rank);
  for (int s = 0; s < sys_.rank; ++s)
    n.trans[s].store(0, std::memory_order_relaxed);
  index_.emplace(key, static_cast<ElemId>(id));
  count_.store(id + 1, std::memory_order_release);
  return static_cast<ElemId>(id);
}

ElemId ElementPool::intern(const GroupElement& g) {
  const std::string key = g.fwd.key();
  {
    std::shared_lock lock(mu_);
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
  }
  std::unique_lock lock(mu_);
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  if (!is_min_coset_rep(sys_, g))
    fail(Errc::not_coset_rep,
         "attempt to intern an element outside the coset quotient");
  return insert_locked(g, key);
}

ElemId ElementPool::intern_word(const Word& canonical) {
  return intern(word_to_element(sys_, canonical, /*require_reduced=*/true));
}

const Word& ElementPool::word(ElemId id) const {
  const Node& n = node(id);
  std::call_once(n.word_once, [&] {
    const_cast<Node&>(n).word = canonical_word(sys_, n.g);
  });
  return n.word;
}

Transition ElementPool::transition(ElemId x, int s) {
  Node& n = node(x);
  const std::uint64_t cached = n.trans[s].load(std::memory_order_acquire);
  if (cached != 0) return unpack(cached);
  auto [kind, xs] = coset_case(sys_, n.g, s);
  ElemId to = 0;
  if (xs.has_value()) to = intern(*xs);
  const std::uint64_t packed = pack(kind, to);
  n.trans[s].store(packed, std::memory_order_release);
  return unpack(packed);
}

}  // namespace klq
