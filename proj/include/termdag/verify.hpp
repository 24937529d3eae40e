#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "termdag/term.hpp"

namespace termdag {

struct VerifyOptions {
  std::uint64_t seed = 1;
  std::uint64_t iterations = 200;
  unsigned max_size_budget = 8;  // random terms keep tree size <= 2^max_size_budget
  bool inject_fault = false;     // test-only: break with_id_eq's fast path
};

struct Violation {
  std::string check;
  std::uint64_t iteration = 0;
  std::string detail;
  std::string counterexample;  // smallest failing input found for the check
};

struct VerifyReport {
  std::uint64_t checks = 0;
  std::uint64_t dual_checks = 0;  // primitive calls that ran both paths
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
};

/// Runs the self-verification suite: fast/slow hash agreement, equality routines against
/// term_eq_pure, all evaluator variants against the naive evaluator, maximal sharing and
/// structural preservation of share_common, the incremental no-op property, Reference-mode
/// equivalence, and every workload again under DualCheck.
VerifyReport run_verify(const VerifyOptions& options);

void print_report(std::ostream& out, const VerifyReport& report);

/// "1" for a leaf, "(l r)" for an Add node; elided past max_nodes tree nodes.
std::string describe_term(const TermRef& t, std::uint64_t max_nodes = 64);

/// Exhaustive check over distinct nodes: no two distinct nodes are structurally equal.
bool is_maximally_shared(const TermRef& t);

}  // namespace termdag
