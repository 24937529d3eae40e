#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "termdag/caching.hpp"
#include "termdag/meter.hpp"
#include "termdag/term.hpp"

namespace termdag {

/// The eight evaluation strategies, numbered 1 to 8.
enum class VariantId : int {
  NoCache = 1,
  CacheSlowEqSlowHash = 2,
  CacheSlowEqFastHash = 3,
  CacheFastEqSlowHash = 4,
  CacheFastEqFastHash = 5,
  CacheFastEqFastHashRobust = 6,  // share_common, then 5
  IdCache = 7,
  IdCacheRobust = 8,  // share_common, then 7
};

inline constexpr std::array<VariantId, 8> kAllVariants = {
    VariantId::NoCache,           VariantId::CacheSlowEqSlowHash,       VariantId::CacheSlowEqFastHash,
    VariantId::CacheFastEqSlowHash, VariantId::CacheFastEqFastHash, VariantId::CacheFastEqFastHashRobust,
    VariantId::IdCache,           VariantId::IdCacheRobust,
};

constexpr int variant_index(VariantId v) noexcept { return static_cast<int>(v); }
std::string_view variant_name(VariantId v) noexcept;
/// Accepts "1".."8" or a variant name.
std::optional<VariantId> parse_variant(std::string_view text) noexcept;

struct EvalOutcome {
  std::optional<std::uint64_t> value;  // wrapping 64-bit; empty when the budget ran out
  std::uint64_t visits = 0;
  std::uint64_t wall_nanos = 0;

  bool budget_exhausted() const noexcept { return !value.has_value(); }
};

/// Tree recursion without caching; one visit per tree node.
std::uint64_t eval_nat_naive(const TermRef& t, VisitMeter& meter);
EvalOutcome eval_nat_naive(const TermRef& t, std::optional<std::uint64_t> budget = std::nullopt);

/// Hash-map memoized evaluation. One leaves are answered directly and never inserted.
std::uint64_t eval_nat_memo(const TermRef& t, MemoCache& cache, VisitMeter& meter);

/// Every child value goes through the identity cache, with the evaluator itself as the
/// miss continuation. The cache may be retained across calls.
std::uint64_t eval_nat_id_cache(const TermRef& t, IdCache& cache, VisitMeter& meter);
std::uint64_t eval_nat_id_cache(const TermRef& t, IdCache& cache);

EvalOutcome run_variant(VariantId v, const TermRef& t, std::optional<std::uint64_t> budget,
                        std::size_t bucket_count = kDefaultIdBuckets);

}  // namespace termdag
