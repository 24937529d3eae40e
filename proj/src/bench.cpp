#include "termdag/bench.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

namespace termdag {

namespace {

using boost::multiprecision::cpp_int;

cpp_int pow2(std::uint64_t e) { return cpp_int(1) << static_cast<unsigned>(e); }

}  // namespace

std::string_view shape_name(Shape s) noexcept {
  switch (s) {
    case Shape::Tower:
      return "tower";
    case Shape::TwinShared:
      return "twin-shared";
    case Shape::TwinDisjoint:
      return "twin-disjoint";
  }
  return "?";
}

std::optional<Shape> parse_shape(std::string_view text) noexcept {
  if (text == "tower") return Shape::Tower;
  if (text == "twin-shared") return Shape::TwinShared;
  if (text == "twin-disjoint") return Shape::TwinDisjoint;
  return std::nullopt;
}

TermRef build_shape(Shape s, std::uint64_t n) {
  switch (s) {
    case Shape::Tower:
      return tower(n);
    case Shape::TwinShared: {
      auto [a, b] = twin_shared(n);
      return mk_add(std::move(a), std::move(b));
    }
    case Shape::TwinDisjoint:
      return twin_disjoint(n);
  }
  return {};
}

ShapeSummary summarize_shape(Shape s, std::uint64_t n) {
  if (n > depth_limit()) throw DepthLimitExceeded(n, depth_limit());
  cpp_int distinct;
  cpp_int tree;
  switch (s) {
    case Shape::Tower:
      distinct = cpp_int(n) + 1;
      tree = pow2(n + 1) - 1;
      break;
    case Shape::TwinShared:  // add(add(t, t), add(t, t)), t = tower(n)
      distinct = cpp_int(n) + 4;
      tree = pow2(n + 3) - 1;
      break;
    case Shape::TwinDisjoint:
      distinct = 2 * cpp_int(n) + 3;
      tree = pow2(n + 2) - 1;
      break;
  }
  ShapeSummary out{distinct.str(), tree.str(), std::nullopt};
  if (n <= kVerifyByTraversalMaxN) {
    const TermRef t = build_shape(s, n);
    VisitMeter meter;
    const cpp_int counted_distinct = count_distinct_nodes(t);
    const cpp_int counted_tree = count_tree_nodes_by_unfolding(t, meter);
    out.verified = counted_distinct == distinct && counted_tree == tree;
  }
  return out;
}

std::string to_csv_row(const BenchRecord& r) {
  std::ostringstream os;
  os << r.shape << ',' << r.n << ',' << r.variant << ',';
  if (r.value_mod64) os << *r.value_mod64;
  os << ',' << r.visits << ',' << r.wall_nanos << ',' << (r.budget_exhausted ? "true" : "false");
  return os.str();
}

BenchRecord run_record(VariantId v, Shape s, std::uint64_t n, std::optional<std::uint64_t> budget,
                       std::size_t bucket_count) {
  const TermRef t = build_shape(s, n);
  const EvalOutcome out = run_variant(v, t, budget, bucket_count);
  return BenchRecord{std::string(shape_name(s)), n,          std::string(variant_name(v)), out.value,
                     out.visits,                 out.wall_nanos, out.budget_exhausted()};
}

std::string_view verdict_name(ScalingVerdict v) noexcept {
  return v == ScalingVerdict::Linear ? "Linear" : "Superlinear";
}

ScalingFit classify_scaling(std::span<const BenchRecord> runs) {
  std::map<std::uint64_t, const BenchRecord*> by_n;
  for (const BenchRecord& r : runs) by_n[r.n] = &r;

  std::vector<double> ratios;
  const BenchRecord* prev = nullptr;
  for (const auto& [n, rec] : by_n) {
    if (prev != nullptr && prev->n > 0) {
      double ratio = std::numeric_limits<double>::infinity();
      if (!rec->budget_exhausted && !prev->budget_exhausted) {
        const double growth = static_cast<double>(rec->visits) / static_cast<double>(std::max<std::uint64_t>(prev->visits, 1));
        const double doublings = std::log2(static_cast<double>(n) / static_cast<double>(prev->n));
        ratio = std::pow(growth, 1.0 / doublings);
      }
      ratios.push_back(ratio);
    }
    prev = rec;
  }

  ScalingFit fit;
  fit.pairs = ratios.size();
  if (ratios.empty()) return fit;
  std::sort(ratios.begin(), ratios.end());
  const std::size_t mid = ratios.size() / 2;
  fit.median_ratio = ratios.size() % 2 == 1 ? ratios[mid] : (ratios[mid - 1] + ratios[mid]) / 2.0;
  fit.verdict = fit.median_ratio <= kLinearRatioThreshold ? ScalingVerdict::Linear : ScalingVerdict::Superlinear;
  return fit;
}

bool expected_exponential(VariantId v, Shape s) noexcept {
  const int i = variant_index(v);
  return s == Shape::TwinDisjoint ? i <= 5 : i <= 4;
}

std::vector<std::uint64_t> default_n_list(VariantId v, Shape s) {
  std::vector<std::uint64_t> ns;
  if (expected_exponential(v, s)) {
    for (std::uint64_t n = 8; n <= 40; n += 4) ns.push_back(n);
  } else {
    for (std::uint64_t n = 8; n <= 4096; n *= 2) ns.push_back(n);
  }
  return ns;
}

SweepResult run_sweep(std::span<const VariantId> variants, Shape s,
                      const std::optional<std::vector<std::uint64_t>>& n_list, std::optional<std::uint64_t> budget,
                      std::size_t bucket_count) {
  SweepResult result;
  for (VariantId v : variants) {
    const std::vector<std::uint64_t> ns = n_list ? *n_list : default_n_list(v, s);
    const std::size_t first = result.records.size();
    for (std::uint64_t n : ns) result.records.push_back(run_record(v, s, n, budget, bucket_count));
    const std::span<const BenchRecord> mine(result.records.data() + first, result.records.size() - first);
    result.verdicts.emplace_back(v, classify_scaling(mine));
  }
  return result;
}

void write_csv(std::ostream& out, std::span<const BenchRecord> records) {
  out << kCsvHeader << '\n';
  for (const BenchRecord& r : records) out << to_csv_row(r) << '\n';
}

void write_verdict_table(std::ostream& out, const SweepResult& result) {
  out << std::left << std::setw(34) << "variant" << std::setw(14) << "verdict" << "median_doubling_ratio\n";
  for (const auto& [v, fit] : result.verdicts) {
    out << std::setw(34) << (std::to_string(variant_index(v)) + " " + std::string(variant_name(v)));
    if (fit.verdict) {
      out << std::setw(14) << verdict_name(*fit.verdict) << fit.median_ratio << '\n';
    } else {
      out << std::setw(14) << "n/a" << "-\n";
    }
  }
}

}  // namespace termdag
