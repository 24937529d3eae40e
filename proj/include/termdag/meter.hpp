#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

namespace termdag {

/// Thrown by VisitMeter::tick once the visit count exceeds the budget.
class BudgetExhausted : public std::runtime_error {
 public:
  explicit BudgetExhausted(std::uint64_t budget)
      : std::runtime_error("node-visit budget of " + std::to_string(budget) + " exhausted"),
        budget_(budget) {}

  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t budget_;
};

/// Deterministic step counter shared by every instrumented traversal.
/// One tick is one node (or node pair) visit.
class VisitMeter {
 public:
  VisitMeter() = default;
  explicit VisitMeter(std::optional<std::uint64_t> budget)
      : limit_(budget.value_or(std::numeric_limits<std::uint64_t>::max())), bounded_(budget.has_value()) {}

  void tick() {
    if (++visits_ > limit_) throw BudgetExhausted(limit_);
  }

  std::uint64_t visits() const noexcept { return visits_; }
  bool bounded() const noexcept { return bounded_; }
  std::uint64_t limit() const noexcept { return limit_; }

 private:
  std::uint64_t visits_ = 0;
  std::uint64_t limit_ = std::numeric_limits<std::uint64_t>::max();
  bool bounded_ = false;
};

}  // namespace termdag
