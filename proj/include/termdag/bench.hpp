#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "termdag/evaluators.hpp"
#include "termdag/term.hpp"

namespace termdag {

enum class Shape { Tower, TwinShared, TwinDisjoint };

std::string_view shape_name(Shape s) noexcept;
std::optional<Shape> parse_shape(std::string_view text) noexcept;

/// The benchmark term for a shape. twin-shared is evaluated as add(r1, r2) over the two roots.
TermRef build_shape(Shape s, std::uint64_t n);

struct ShapeSummary {
  std::string distinct;  // closed form, exact decimal
  std::string tree;      // closed form, exact decimal
  std::optional<bool> verified;  // traversal agreed with the closed forms (only for n <= 20)
};

inline constexpr std::uint64_t kVerifyByTraversalMaxN = 20;

ShapeSummary summarize_shape(Shape s, std::uint64_t n);

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

struct BenchRecord {
  std::string shape;
  std::uint64_t n = 0;
  std::string variant;
  std::optional<std::uint64_t> value_mod64;
  std::uint64_t visits = 0;
  std::uint64_t wall_nanos = 0;
  bool budget_exhausted = false;
};

inline constexpr std::string_view kCsvHeader = "shape,n,variant,value_mod64,visits,wall_nanos,budget_exhausted";

std::string to_csv_row(const BenchRecord& r);

BenchRecord run_record(VariantId v, Shape s, std::uint64_t n, std::optional<std::uint64_t> budget,
                       std::size_t bucket_count = kDefaultIdBuckets);

enum class ScalingVerdict { Linear, Superlinear };

std::string_view verdict_name(ScalingVerdict v) noexcept;

inline constexpr double kLinearRatioThreshold = 2.5;

struct ScalingFit {
  std::optional<ScalingVerdict> verdict;  // empty with fewer than two sizes
  double median_ratio = 0.0;              // visits growth per doubling of n; +inf once the budget is hit
  std::size_t pairs = 0;
};

/// Compares consecutive sizes of one variant. For sizes n < m the growth is normalized to a
/// doubling: (visits(m) / visits(n)) ^ (1 / log2(m / n)). A budget-exhausted larger run counts
/// as unbounded growth.
ScalingFit classify_scaling(std::span<const BenchRecord> runs);

/// Whether a variant is expected to blow up on a shape.
bool expected_exponential(VariantId v, Shape s) noexcept;

/// 8, 16, ..., 4096 for variants expected to be linear; 8, 12, ..., 40 otherwise.
std::vector<std::uint64_t> default_n_list(VariantId v, Shape s);

struct SweepResult {
  std::vector<BenchRecord> records;  // execution order
  std::vector<std::pair<VariantId, ScalingFit>> verdicts;
};

/// Runs every (variant, n) pair in order. An empty n_list runs nothing; a missing one uses
/// the per-variant defaults.
SweepResult run_sweep(std::span<const VariantId> variants, Shape s,
                      const std::optional<std::vector<std::uint64_t>>& n_list, std::optional<std::uint64_t> budget,
                      std::size_t bucket_count = kDefaultIdBuckets);

void write_csv(std::ostream& out, std::span<const BenchRecord> records);
void write_verdict_table(std::ostream& out, const SweepResult& result);

}  // namespace termdag
