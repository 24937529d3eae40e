#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "termdag/identity.hpp"
#include "termdag/meter.hpp"
#include "termdag/term.hpp"

namespace termdag {

enum class EqStrategy {
  SlowEq,  // term_eq_pure
  FastEq,  // term_eq_rec
};

enum class HashStrategy {
  SlowHash,  // slow_hash, recomputed on every use
  FastHash,  // fast_hash
};

/// Bit mixing for bucket selection: (u ^ (u >> 32)) * 1099511628211 (mod 2^64).
constexpr std::uint64_t fold_word(std::uint64_t u) noexcept { return (u ^ (u >> 32)) * kFnvPrime; }

/// Open-hashing map from terms to values, with pluggable equality and hash.
/// Keys are compared with the selected equality strategy only; the stored hash is used for
/// bucket placement and rehashing.
class MemoCache {
 public:
  MemoCache(EqStrategy eq, HashStrategy hash, std::size_t initial_buckets = 16);

  std::optional<std::uint64_t> find(const TermRef& t, VisitMeter& meter) const;

  /// Inserts or overwrites the value for t.
  void insert(const TermRef& t, std::uint64_t value, VisitMeter& meter);

  /// Hit: stored value, compute is not called. Miss: value = compute(), then inserted.
  /// Hashes t once. compute must return f(t) for the function this cache memoizes.
  template <class Compute>
  std::uint64_t get_or_insert(const TermRef& t, Compute&& compute, VisitMeter& meter) {
    const HashCode h = hash_of(t, meter);
    if (auto hit = find_in_bucket(t, h, meter)) return *hit;
    const std::uint64_t value = compute();
    append(t, h, value);
    return value;
  }

  std::size_t size() const noexcept { return size_; }
  std::size_t bucket_count() const noexcept { return buckets_.size(); }
  EqStrategy eq_strategy() const noexcept { return eq_; }
  HashStrategy hash_strategy() const noexcept { return hash_; }

 private:
  struct Entry {
    TermRef key;
    HashCode hash;
    std::uint64_t value;
  };

  HashCode hash_of(const TermRef& t, VisitMeter& meter) const;
  bool keys_equal(const TermRef& a, const TermRef& b, VisitMeter& meter) const;
  std::size_t index_for(HashCode h) const noexcept { return fold_word(h) % buckets_.size(); }
  std::optional<std::uint64_t> find_in_bucket(const TermRef& t, HashCode h, VisitMeter& meter) const;
  void append(const TermRef& t, HashCode h, std::uint64_t value);
  void grow();

  EqStrategy eq_;
  HashStrategy hash_;
  std::vector<std::vector<Entry>> buckets_;
  std::size_t size_ = 0;
};

/// A cached input together with f(input).
struct CacheEntry {
  TermRef input;
  std::uint64_t value;
};

namespace detail {

// Entries are scanned newest first. Indices, not iterators: update may append to the
// same bucket while outer frames of the scan are still live.
template <class Compute, class Update>
std::uint64_t scan_bucket(const std::vector<CacheEntry>& entries, std::size_t remaining, const TermRef& x,
                          Compute& compute, Update& update) {
  if (remaining == 0) {
    const std::uint64_t value = compute();
    update(CacheEntry{x, value});
    return value;
  }
  const std::size_t i = remaining - 1;
  return with_id_eq_result(entries[i].input, x, [&](IdEqResult r) -> std::uint64_t {
    if (r.is_yes_equal()) return entries[i].value;
    return scan_bucket(entries, i, x, compute, update);
  });
}

}  // namespace detail

/// Imprecise association-list lookup: an entry matches only when the identity test says
/// YesEqual. On a miss, compute() supplies the value and update receives the new entry.
/// Never compares structure.
template <class Compute, class Update>
std::uint64_t id_bucket_lookup(const std::vector<CacheEntry>& entries, const TermRef& x, Compute&& compute,
                               Update&& update) {
  return detail::scan_bucket(entries, entries.size(), x, compute, update);
}

inline constexpr std::size_t kDefaultIdBuckets = 4096;

/// Fixed-size bucket array keyed by identity tokens. No resizing.
///
/// The bucket scan recurses once per entry it passes, so very long buckets
/// (bucket_count 1 with huge inputs) cost stack depth.
class IdCache {
 public:
  explicit IdCache(std::size_t bucket_count = kDefaultIdBuckets) : buckets_(bucket_count) {
    if (bucket_count == 0) throw std::invalid_argument("IdCache: bucket_count must be at least 1");
  }

  template <class Compute>
  std::uint64_t get_or_insert(const TermRef& x, Compute&& compute) {
    return with_id_token(x, [&](IdentityToken u) -> std::uint64_t {
      const std::size_t i = bucket_index(u);
      auto update = [this, i](CacheEntry e) {
        buckets_[i].push_back(std::move(e));
        ++size_;
      };
      return id_bucket_lookup(buckets_[i], x, compute, update);
    });
  }

  std::size_t bucket_index(IdentityToken u) const noexcept { return fold_word(u.value) % buckets_.size(); }
  std::size_t bucket_count() const noexcept { return buckets_.size(); }
  std::size_t size() const noexcept { return size_; }
  const std::vector<CacheEntry>& bucket(std::size_t i) const { return buckets_.at(i); }

 private:
  std::vector<std::vector<CacheEntry>> buckets_;
  std::size_t size_ = 0;
};

}  // namespace termdag
