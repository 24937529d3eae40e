// termbench: generate benchmark shapes, run evaluator variants, sweep sizes into CSV,
// and run the self-verification suite.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "termdag/bench.hpp"
#include "termdag/evaluators.hpp"
#include "termdag/verify.hpp"

namespace {

using namespace termdag;

constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct UsageError {
  std::string message;
};

Shape require_shape(const std::string& text) {
  if (auto s = parse_shape(text)) return *s;
  throw UsageError{"unknown shape '" + text + "' (expected tower, twin-shared or twin-disjoint)"};
}

std::uint64_t require_n(const std::optional<std::uint64_t>& n) {
  if (!n) throw UsageError{"--n is required"};
  if (*n > depth_limit()) throw UsageError{"n = " + std::to_string(*n) + " exceeds the depth limit"};
  return *n;
}

std::vector<VariantId> parse_variant_list(const std::string& text) {
  if (text.empty() || text == "all") return {kAllVariants.begin(), kAllVariants.end()};
  std::vector<VariantId> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto v = parse_variant(item);
    if (!v) throw UsageError{"unknown variant '" + item + "'"};
    out.push_back(*v);
  }
  return out;
}

std::vector<std::uint64_t> parse_n_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    std::uint64_t n = 0;
    try {
      n = std::stoull(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || item.front() == '-') throw UsageError{"bad entry '" + item + "' in --n-list"};
    if (n > depth_limit()) throw UsageError{"n = " + item + " exceeds the depth limit"};
    out.push_back(n);
  }
  return out;
}

std::optional<std::uint64_t> budget_or_default(const std::optional<std::uint64_t>& budget) {
  return budget ? budget : std::optional<std::uint64_t>(kDefaultBudget);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Term DAG traversal benchmark"};
  app.require_subcommand(1);

  std::string shape_text;
  std::string variant_text;
  std::optional<std::uint64_t> n;
  std::optional<std::uint64_t> budget;
  std::size_t buckets = kDefaultIdBuckets;
  std::optional<std::string> n_list_text;
  std::string out_path;
  std::uint64_t seed = 1;
  std::uint64_t iterations = 200;
  bool inject_fault = false;
  bool header = false;

  CLI::App* gen = app.add_subcommand("gen", "Print distinct and tree node counts of a shape");
  gen->add_option("shape,--shape", shape_text, "tower | twin-shared | twin-disjoint")->required();
  gen->add_option("n,--n", n, "height")->required();

  CLI::App* run = app.add_subcommand("run", "Run one variant on one shape and print a CSV row");
  run->add_option("variant,--variant", variant_text, "1-8 or variant name")->required();
  run->add_option("shape,--shape", shape_text)->required();
  run->add_option("n,--n", n)->required();
  run->add_option("--budget", budget, "node-visit budget (default 10^7)");
  run->add_option("--buckets", buckets, "identity cache buckets")->check(CLI::PositiveNumber);
  run->add_flag("--header", header, "print the CSV header first");

  CLI::App* sweep = app.add_subcommand("sweep", "Run variants over a list of sizes and classify scaling");
  sweep->add_option("variant,--variant", variant_text, "'all' or a comma-separated list")->required();
  sweep->add_option("shape,--shape", shape_text)->required();
  sweep->add_option("--n-list", n_list_text, "comma-separated sizes (default per variant)");
  sweep->add_option("--budget", budget);
  sweep->add_option("--buckets", buckets)->check(CLI::PositiveNumber);
  sweep->add_option("--out", out_path, "CSV output path (default stdout)");

  CLI::App* verify = app.add_subcommand("verify", "Run the self-verification suite");
  verify->add_option("--seed", seed);
  verify->add_option("--iterations", iterations);
  verify->add_flag("--inject-fault", inject_fault)->group("");  // test-only

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*gen) {
      const Shape s = require_shape(shape_text);
      const ShapeSummary summary = summarize_shape(s, require_n(n));
      std::cout << "shape=" << shape_name(s) << " n=" << *n << " distinct=" << summary.distinct
                << " tree=" << summary.tree;
      if (summary.verified) std::cout << " verified=" << (*summary.verified ? "true" : "false");
      std::cout << '\n';
      return summary.verified.value_or(true) ? 0 : kExitVerifyFailed;
    }

    if (*run) {
      const auto v = parse_variant(variant_text);
      if (!v) throw UsageError{"unknown variant '" + variant_text + "'"};
      const Shape s = require_shape(shape_text);
      const BenchRecord rec = run_record(*v, s, require_n(n), budget_or_default(budget), buckets);
      if (header) std::cout << kCsvHeader << '\n';
      std::cout << to_csv_row(rec) << '\n';
      return 0;
    }

    if (*sweep) {
      const std::vector<VariantId> variants = parse_variant_list(variant_text);
      const Shape s = require_shape(shape_text);
      std::optional<std::vector<std::uint64_t>> ns;
      if (n_list_text) ns = parse_n_list(*n_list_text);

      const SweepResult result = run_sweep(variants, s, ns, budget_or_default(budget), buckets);
      if (out_path.empty()) {
        write_csv(std::cout, result.records);
      } else {
        std::ofstream file(out_path);
        if (!file) {
          std::cerr << "termbench: cannot open " << out_path << " for writing\n";
          return kExitIo;
        }
        write_csv(file, result.records);
        file.flush();
        if (!file) {
          std::cerr << "termbench: write to " << out_path << " failed\n";
          return kExitIo;
        }
      }
      write_verdict_table(std::cerr, result);
      return 0;
    }

    if (*verify) {
      VerifyOptions options;
      options.seed = seed;
      options.iterations = iterations;
      options.inject_fault = inject_fault;
      const VerifyReport report = run_verify(options);
      print_report(std::cout, report);
      return report.ok() ? 0 : kExitVerifyFailed;
    }
  } catch (const UsageError& e) {
    std::cerr << "termbench: " << e.message << '\n';
    return kExitUsage;
  } catch (const DepthLimitExceeded& e) {
    std::cerr << "termbench: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
