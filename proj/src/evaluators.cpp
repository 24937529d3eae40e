#include "termdag/evaluators.hpp"

#include <chrono>
#include <charconv>
#include <vector>

#include "termdag/identity.hpp"
#include "termdag/sharing.hpp"

namespace termdag {

namespace {

constexpr std::array<std::string_view, 8> kVariantNames = {
    "no_cache",
    "cache_slow_eq_slow_hash",
    "cache_slow_eq_fast_hash",
    "cache_fast_eq_slow_hash",
    "cache_fast_eq_fast_hash",
    "cache_fast_eq_fast_hash_robust",
    "id_cache",
    "id_cache_robust",
};

MemoCache memo_cache_for(VariantId v) {
  switch (v) {
    case VariantId::CacheSlowEqSlowHash:
      return MemoCache(EqStrategy::SlowEq, HashStrategy::SlowHash);
    case VariantId::CacheSlowEqFastHash:
      return MemoCache(EqStrategy::SlowEq, HashStrategy::FastHash);
    case VariantId::CacheFastEqSlowHash:
      return MemoCache(EqStrategy::FastEq, HashStrategy::SlowHash);
    default:
      return MemoCache(EqStrategy::FastEq, HashStrategy::FastHash);
  }
}

// Thrown by the miss continuation when the child's value has not been computed yet.
// The driver evaluates the child on its own stack frame and retries the lookup.
struct ChildValuePending {};

}  // namespace

std::string_view variant_name(VariantId v) noexcept { return kVariantNames[static_cast<std::size_t>(v) - 1]; }

std::optional<VariantId> parse_variant(std::string_view text) noexcept {
  int index = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), index);
  if (ec == std::errc{} && end == text.data() + text.size()) {
    if (index >= 1 && index <= 8) return static_cast<VariantId>(index);
    return std::nullopt;
  }
  for (std::size_t i = 0; i < kVariantNames.size(); ++i) {
    if (kVariantNames[i] == text) return static_cast<VariantId>(i + 1);
  }
  return std::nullopt;
}

std::uint64_t eval_nat_naive(const TermRef& t, VisitMeter& meter) {
  std::uint64_t sum = 0;
  std::vector<const TermRef*> stack{&t};
  while (!stack.empty()) {
    const TermRef* x = stack.back();
    stack.pop_back();
    meter.tick();
    if (x->is_one()) {
      sum += 1;
      continue;
    }
    stack.push_back(&x->right());
    stack.push_back(&x->left());
  }
  return sum;
}

EvalOutcome eval_nat_naive(const TermRef& t, std::optional<std::uint64_t> budget) {
  return run_variant(VariantId::NoCache, t, budget);
}

std::uint64_t eval_nat_memo(const TermRef& t, MemoCache& cache, VisitMeter& meter) {
  enum class Phase { Enter, Right, Combine };
  struct Frame {
    const TermRef* term;
    Phase phase;
  };
  std::vector<Frame> stack{{&t, Phase::Enter}};
  std::vector<std::uint64_t> values;

  while (!stack.empty()) {
    Frame& f = stack.back();
    const TermRef& x = *f.term;
    switch (f.phase) {
      case Phase::Enter:
        meter.tick();
        if (auto hit = cache.find(x, meter)) {
          values.push_back(*hit);
          stack.pop_back();
        } else if (x.is_one()) {
          values.push_back(1);
          stack.pop_back();
        } else {
          f.phase = Phase::Right;
          stack.push_back({&x.left(), Phase::Enter});
        }
        break;
      case Phase::Right:
        f.phase = Phase::Combine;
        stack.push_back({&x.right(), Phase::Enter});
        break;
      case Phase::Combine: {
        const std::uint64_t r = values.back();
        values.pop_back();
        const std::uint64_t n = values.back() + r;
        values.back() = n;
        stack.pop_back();
        cache.insert(x, n, meter);
        break;
      }
    }
  }
  return values.back();
}

std::uint64_t eval_nat_id_cache(const TermRef& t, IdCache& cache, VisitMeter& meter) {
  meter.tick();
  if (t.is_one()) return 1;

  struct Frame {
    const TermRef* term;
    bool right_side = false;  // which child is being looked up
    std::uint64_t left_value = 0;
    std::optional<std::uint64_t> child_value;  // set once the pending child has been evaluated
  };
  std::vector<Frame> stack;
  stack.push_back(Frame{&t, false, 0, std::nullopt});

  while (true) {
    const std::size_t depth = stack.size() - 1;
    const TermRef& child = stack[depth].right_side ? stack[depth].term->right() : stack[depth].term->left();

    std::uint64_t value = 0;
    try {
      meter.tick();
      value = cache.get_or_insert(child, [&]() -> std::uint64_t {
        if (child.is_one()) return 1;
        if (stack[depth].child_value) return *stack[depth].child_value;
        throw ChildValuePending{};
      });
    } catch (const ChildValuePending&) {
      meter.tick();
      stack.push_back(Frame{&child, false, 0, std::nullopt});
      continue;
    }

    Frame& f = stack.back();
    f.child_value.reset();
    if (!f.right_side) {
      f.left_value = value;
      f.right_side = true;
      continue;
    }
    const std::uint64_t total = f.left_value + value;
    stack.pop_back();
    if (stack.empty()) return total;
    stack.back().child_value = total;
  }
}

std::uint64_t eval_nat_id_cache(const TermRef& t, IdCache& cache) {
  VisitMeter meter;
  return eval_nat_id_cache(t, cache, meter);
}

EvalOutcome run_variant(VariantId v, const TermRef& t, std::optional<std::uint64_t> budget,
                        std::size_t bucket_count) {
  VisitMeter meter(budget);
  EvalOutcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    switch (v) {
      case VariantId::NoCache:
        out.value = eval_nat_naive(t, meter);
        break;
      case VariantId::CacheSlowEqSlowHash:
      case VariantId::CacheSlowEqFastHash:
      case VariantId::CacheFastEqSlowHash:
      case VariantId::CacheFastEqFastHash: {
        MemoCache cache = memo_cache_for(v);
        out.value = eval_nat_memo(t, cache, meter);
        break;
      }
      case VariantId::CacheFastEqFastHashRobust: {
        const TermRef shared = share_common(t, meter);
        MemoCache cache = memo_cache_for(v);
        out.value = eval_nat_memo(shared, cache, meter);
        break;
      }
      case VariantId::IdCache: {
        IdCache cache(bucket_count);
        out.value = eval_nat_id_cache(t, cache, meter);
        break;
      }
      case VariantId::IdCacheRobust: {
        const TermRef shared = share_common(t, meter);
        IdCache cache(bucket_count);
        out.value = eval_nat_id_cache(shared, cache, meter);
        break;
      }
    }
  } catch (const BudgetExhausted&) {
    out.value.reset();
  }
  out.wall_nanos = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start).count());
  out.visits = meter.visits();
  return out;
}

}  // namespace termdag
