#pragma once

#include "qdd/edge.hpp"

#include <cstddef>
#include <cstdint>
#include <deque>
#include <vector>

namespace qdd {

namespace detail {
inline std::uint64_t hashMix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}
} // namespace detail

/// Counters exposed to reports and to the structural acceptance checks.
struct DDStats {
  std::size_t currentNodes = 0;
  std::size_t peakNodes = 0;
  std::size_t uniqueTableLookups = 0;
  std::size_t uniqueTableHits = 0;
  std::size_t computeCacheHits = 0;
  std::size_t computeCacheMisses = 0;
  std::size_t addRecursions = 0;
  std::size_t multRecursions = 0;
  std::size_t noiseSweepCalls = 0;
  std::size_t noiseSweepNodeVisits = 0;
  std::size_t gcRuns = 0;
  std::size_t gcFreedNodes = 0;
  std::size_t complexEntries = 0;
};

/// Chunk-backed node pool with a free list. Freed slots are recycled but ids
/// are never reused, so caches keyed by id cannot alias across generations.
template <class Node> class NodePool {
public:
  Node* alloc() {
    Node* n;
    if (free_ != nullptr) {
      n = free_;
      free_ = n->next;
    } else {
      n = &storage_.emplace_back();
    }
    n->next = nullptr;
    n->ref = 0;
    n->id = ++nextId_;
    ++live_;
    if (live_ > peak_) {
      peak_ = live_;
    }
    return n;
  }

  void release(Node* n) {
    n->next = free_;
    free_ = n;
    --live_;
  }

  [[nodiscard]] std::size_t live() const { return live_; }
  [[nodiscard]] std::size_t peak() const { return peak_; }

private:
  std::deque<Node> storage_;
  Node* free_ = nullptr;
  std::uint64_t nextId_ = 0;
  std::size_t live_ = 0;
  std::size_t peak_ = 0;
};

/// Hash-consing store: at most one live node per (level, children) class.
/// Chained buckets; grows by rehashing, never rejects an insert.
template <class Node> class UniqueTable {
public:
  explicit UniqueTable(std::size_t initialBuckets = 1U << 12U)
      : buckets_(initialBuckets, nullptr) {}

  /// Return the canonical node for the candidate's (level, children) key.
  /// On a hit the candidate is returned to the pool.
  Node* lookupOrInsert(Node* cand, NodePool<Node>& pool) {
    ++lookups_;
    const auto h = hashNode(cand);
    auto& head = buckets_[h & (buckets_.size() - 1)];
    for (Node* p = head; p != nullptr; p = p->next) {
      if (p->level == cand->level && p->e == cand->e) {
        ++hits_;
        pool.release(cand);
        return p;
      }
    }
    cand->next = head;
    head = cand;
    ++count_;
    if (count_ > buckets_.size()) {
      grow();
    }
    return cand;
  }

  /// Remove dead nodes (ref == 0) and release them. Returns the freed count.
  std::size_t sweep(NodePool<Node>& pool) {
    std::size_t freed = 0;
    for (auto& head : buckets_) {
      Node** link = &head;
      while (*link != nullptr) {
        Node* p = *link;
        if (p->ref == 0) {
          *link = p->next;
          pool.release(p);
          ++freed;
        } else {
          link = &p->next;
        }
      }
    }
    count_ -= freed;
    return freed;
  }

  [[nodiscard]] std::size_t size() const { return count_; }
  [[nodiscard]] std::size_t lookups() const { return lookups_; }
  [[nodiscard]] std::size_t hits() const { return hits_; }

private:
  static std::uint64_t hashNode(const Node* n) {
    std::uint64_t h = detail::hashMix(static_cast<std::uint64_t>(n->level));
    for (const auto& c : n->e) {
      h = detail::hashMix(h ^ nodeId(c.node));
      h = detail::hashMix(h ^ c.w.id());
    }
    return h;
  }

  void grow() {
    std::vector<Node*> old;
    old.swap(buckets_);
    buckets_.assign(old.size() * 4, nullptr);
    for (Node* head : old) {
      while (head != nullptr) {
        Node* next = head->next;
        auto& slot = buckets_[hashNode(head) & (buckets_.size() - 1)];
        head->next = slot;
        slot = head;
        head = next;
      }
    }
  }

  std::vector<Node*> buckets_;
  std::size_t count_ = 0;
  std::size_t lookups_ = 0;
  std::size_t hits_ = 0;
};

struct CacheKey2 {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  friend bool operator==(const CacheKey2&, const CacheKey2&) = default;
};

struct CacheKey4 {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  std::uint64_t c = 0;
  std::uint64_t d = 0;
  friend bool operator==(const CacheKey4&, const CacheKey4&) = default;
};

inline std::uint64_t hashOf(const CacheKey2& k) {
  return detail::hashMix(k.a ^ detail::hashMix(k.b));
}
inline std::uint64_t hashOf(const CacheKey4& k) {
  return detail::hashMix(k.a ^ detail::hashMix(k.b ^ detail::hashMix(k.c ^ detail::hashMix(k.d))));
}

/// Fixed-capacity direct-mapped memo table; colliding inserts overwrite.
/// Correctness never depends on hits. Cleared wholesale on garbage collection
/// so cached node pointers cannot dangle.
template <class Key, class Value> class ComputeCache {
public:
  explicit ComputeCache(std::size_t slots = 1U << 16U) : slots_(slots) {}

  const Value* lookup(const Key& k) {
    const auto& s = slots_[hashOf(k) & (slots_.size() - 1)];
    if (s.occupied && s.key == k) {
      ++hits_;
      return &s.val;
    }
    ++misses_;
    return nullptr;
  }

  void insert(const Key& k, const Value& v) {
    auto& s = slots_[hashOf(k) & (slots_.size() - 1)];
    s.key = k;
    s.val = v;
    s.occupied = true;
  }

  void clear() {
    for (auto& s : slots_) {
      s.occupied = false;
    }
  }

  [[nodiscard]] std::size_t hits() const { return hits_; }
  [[nodiscard]] std::size_t misses() const { return misses_; }

private:
  struct Slot {
    Key key{};
    Value val{};
    bool occupied = false;
  };
  std::vector<Slot> slots_;
  std::size_t hits_ = 0;
  std::size_t misses_ = 0;
};

} // namespace qdd
