#include "termdag/caching.hpp"

#include "termdag/fast_eq.hpp"

namespace termdag {

MemoCache::MemoCache(EqStrategy eq, HashStrategy hash, std::size_t initial_buckets)
    : eq_(eq), hash_(hash), buckets_(initial_buckets == 0 ? 1 : initial_buckets) {}

HashCode MemoCache::hash_of(const TermRef& t, VisitMeter& meter) const {
  return hash_ == HashStrategy::FastHash ? fast_hash(t) : slow_hash(t, meter);
}

bool MemoCache::keys_equal(const TermRef& a, const TermRef& b, VisitMeter& meter) const {
  return eq_ == EqStrategy::FastEq ? term_eq_rec(a, b, meter) : term_eq_pure(a, b, meter);
}

std::optional<std::uint64_t> MemoCache::find_in_bucket(const TermRef& t, HashCode h, VisitMeter& meter) const {
  for (const Entry& e : buckets_[index_for(h)]) {
    if (keys_equal(e.key, t, meter)) return e.value;
  }
  return std::nullopt;
}

std::optional<std::uint64_t> MemoCache::find(const TermRef& t, VisitMeter& meter) const {
  return find_in_bucket(t, hash_of(t, meter), meter);
}

void MemoCache::insert(const TermRef& t, std::uint64_t value, VisitMeter& meter) {
  const HashCode h = hash_of(t, meter);
  for (Entry& e : buckets_[index_for(h)]) {
    if (keys_equal(e.key, t, meter)) {
      e.value = value;
      return;
    }
  }
  append(t, h, value);
}

void MemoCache::append(const TermRef& t, HashCode h, std::uint64_t value) {
  if (size_ + 1 > buckets_.size()) grow();
  buckets_[index_for(h)].push_back(Entry{t, h, value});
  ++size_;
}

void MemoCache::grow() {
  std::vector<std::vector<Entry>> old = std::move(buckets_);
  buckets_.assign(old.size() * 2, {});
  for (auto& bucket : old) {
    for (Entry& e : bucket) buckets_[index_for(e.hash)].push_back(std::move(e));
  }
}

}  // namespace termdag
