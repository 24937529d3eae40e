#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "oracle.hpp"
#include "termdag/bench.hpp"

using namespace termdag;

namespace {

std::string drop_wall_time(const std::string& row) {
  // wall_nanos is the sixth field.
  std::vector<std::string> fields;
  std::stringstream ss(row);
  std::string f;
  while (std::getline(ss, f, ',')) fields.push_back(f);
  if (row.back() == ',') fields.emplace_back();
  fields.at(5) = "-";
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) out += (i ? "," : "") + fields[i];
  return out;
}

BenchRecord record(std::uint64_t n, std::uint64_t visits, bool exhausted = false) {
  BenchRecord r;
  r.n = n;
  r.visits = visits;
  r.budget_exhausted = exhausted;
  return r;
}

}  // namespace

TEST_CASE("shape names") {
  for (Shape s : {Shape::Tower, Shape::TwinShared, Shape::TwinDisjoint}) CHECK(parse_shape(shape_name(s)) == s);
  CHECK_FALSE(parse_shape("Tower"));
}

TEST_CASE("shape summaries") {
  for (std::uint64_t n = 0; n <= 20; ++n) {
    const ShapeSummary t = summarize_shape(Shape::Tower, n);
    CHECK(t.distinct == std::to_string(n + 1));
    CHECK(t.tree == std::to_string((std::uint64_t{1} << (n + 1)) - 1));
    CHECK(t.verified == true);
    CHECK(summarize_shape(Shape::TwinShared, n).verified == true);
    CHECK(summarize_shape(Shape::TwinDisjoint, n).verified == true);
  }
  const ShapeSummary small = summarize_shape(Shape::TwinShared, 3);
  const TermRef t = build_shape(Shape::TwinShared, 3);
  CHECK(small.distinct == std::to_string(oracle::distinct_nodes(t)));
  CHECK(small.tree == std::to_string(oracle::analyze(t).tree_size));

  const ShapeSummary big = summarize_shape(Shape::TwinDisjoint, 200);
  CHECK(big.distinct == "403");
  CHECK(big.tree == ((oracle::cpp_int(1) << 202) - 1).str());
  CHECK_FALSE(big.verified.has_value());
}

TEST_CASE("csv rows") {
  BenchRecord r{"tower", 10, "no_cache", 1024, 2047, 55, false};
  CHECK(to_csv_row(r) == "tower,10,no_cache,1024,2047,55,false");
  r.value_mod64.reset();
  r.budget_exhausted = true;
  CHECK(to_csv_row(r) == "tower,10,no_cache,,2047,55,true");
  CHECK(kCsvHeader == "shape,n,variant,value_mod64,visits,wall_nanos,budget_exhausted");
}

TEST_CASE("run_record") {
  const BenchRecord r = run_record(VariantId::IdCache, Shape::TwinShared, 10, kDefaultBudget);
  CHECK(r.shape == "twin-shared");
  CHECK(r.variant == "id_cache");
  CHECK(r.value_mod64 == 4096);
  CHECK_FALSE(r.budget_exhausted);
}

TEST_CASE("empty sweep writes only the header") {
  const std::vector<VariantId> variants(kAllVariants.begin(), kAllVariants.end());
  const SweepResult result = run_sweep(variants, Shape::Tower, std::vector<std::uint64_t>{}, kDefaultBudget);
  CHECK(result.records.empty());
  std::ostringstream os;
  write_csv(os, result.records);
  CHECK(os.str() == std::string(kCsvHeader) + "\n");
  for (const auto& [v, fit] : result.verdicts) CHECK_FALSE(fit.verdict.has_value());
}

TEST_CASE("sweep output is deterministic apart from wall time") {
  const std::vector<VariantId> variants{VariantId::NoCache, VariantId::CacheFastEqFastHash, VariantId::IdCacheRobust};
  const std::vector<std::uint64_t> ns{4, 8, 12};
  const SweepResult a = run_sweep(variants, Shape::TwinDisjoint, ns, 100'000);
  const SweepResult b = run_sweep(variants, Shape::TwinDisjoint, ns, 100'000);
  REQUIRE(a.records.size() == 9);
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(drop_wall_time(to_csv_row(a.records[i])) == drop_wall_time(to_csv_row(b.records[i])));
  }
  CHECK(a.records[0].variant == "no_cache");
  CHECK(a.records[0].n == 4);
  CHECK(a.records[8].variant == "id_cache_robust");
}

TEST_CASE("classify_scaling") {
  const std::vector<BenchRecord> linear{record(8, 80), record(16, 160), record(32, 330), record(64, 640)};
  const ScalingFit lf = classify_scaling(linear);
  CHECK(lf.verdict == ScalingVerdict::Linear);
  CHECK(lf.pairs == 3);
  CHECK(lf.median_ratio == doctest::Approx(2.0));

  const std::vector<BenchRecord> exp{record(8, 1 << 8), record(12, 1 << 12), record(16, 1 << 16)};
  const ScalingFit ef = classify_scaling(exp);
  CHECK(ef.verdict == ScalingVerdict::Superlinear);
  // Each step is normalized to a doubling, then the two are averaged.
  const double r1 = std::pow(16.0, 1.0 / std::log2(12.0 / 8.0));
  const double r2 = std::pow(16.0, 1.0 / std::log2(16.0 / 12.0));
  CHECK(ef.median_ratio == doctest::Approx((r1 + r2) / 2));

  const std::vector<BenchRecord> blown{record(8, 100), record(16, 200), record(32, 1000, true), record(64, 1000, true)};
  CHECK(classify_scaling(blown).verdict == ScalingVerdict::Superlinear);

  const std::vector<BenchRecord> single{record(8, 10)};
  CHECK_FALSE(classify_scaling(single).verdict.has_value());
}

TEST_CASE("expected exponential table") {
  for (VariantId v : kAllVariants) {
    const int i = variant_index(v);
    CHECK(expected_exponential(v, Shape::Tower) == (i <= 4));
    CHECK(expected_exponential(v, Shape::TwinDisjoint) == (i <= 5));
  }
  CHECK(default_n_list(VariantId::NoCache, Shape::Tower).front() == 8);
  CHECK(default_n_list(VariantId::NoCache, Shape::Tower).back() == 40);
  CHECK(default_n_list(VariantId::IdCache, Shape::Tower).back() == 4096);
}

TEST_CASE("default sweeps reproduce the expected verdicts") {
  for (Shape s : {Shape::Tower, Shape::TwinDisjoint}) {
    const std::vector<VariantId> variants(kAllVariants.begin(), kAllVariants.end());
    const SweepResult result = run_sweep(variants, s, std::nullopt, kDefaultBudget);
    for (const auto& [v, fit] : result.verdicts) {
      REQUIRE(fit.verdict.has_value());
      const ScalingVerdict expected = expected_exponential(v, s) ? ScalingVerdict::Superlinear : ScalingVerdict::Linear;
      CHECK_MESSAGE(*fit.verdict == expected, shape_name(s), " variant ", variant_index(v));
    }
  }
}
