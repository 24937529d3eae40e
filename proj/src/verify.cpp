#include "termdag/verify.hpp"

#include <array>
#include <functional>
#include <optional>
#include <unordered_set>
#include <utility>

#include "termdag/caching.hpp"
#include "termdag/evaluators.hpp"
#include "termdag/fast_eq.hpp"
#include "termdag/identity.hpp"
#include "termdag/sharing.hpp"

namespace termdag {

namespace {

constexpr std::array<double, 3> kReuseProbs = {0.0, 0.5, 0.9};

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct Case {
  std::uint64_t seed;
  unsigned size_budget;
  double reuse;
};

// A check returns an empty string on success, a description otherwise.
using Check = std::function<std::string(const Case&)>;

std::vector<TermRef> distinct_nodes(const TermRef& t) {
  std::vector<TermRef> out;
  std::unordered_set<IdentityToken, IdentityTokenHash> seen;
  std::vector<const TermRef*> stack{&t};
  while (!stack.empty()) {
    const TermRef* x = stack.back();
    stack.pop_back();
    if (!seen.insert(x->identity()).second) continue;
    out.push_back(*x);
    if (x->is_add()) {
      stack.push_back(&x->right());
      stack.push_back(&x->left());
    }
  }
  return out;
}

std::string check_hash(const Case& c) {
  const TermRef t = random_term(c.seed, c.size_budget, c.reuse);
  if (fast_hash(t) != slow_hash(t)) return "fast_hash differs from slow_hash";
  return {};
}

std::vector<std::pair<TermRef, TermRef>> equality_pairs(const Case& c) {
  const TermRef t = random_term(c.seed, c.size_budget, c.reuse);
  const TermRef copy = random_term(c.seed, c.size_budget, c.reuse);
  const TermRef other = random_term(splitmix(c.seed), c.size_budget, c.reuse);
  return {{t, t}, {t, copy}, {t, other}, {other, t}, {t, share_common(t)}, {mk_add(t, other), mk_add(copy, other)}};
}

std::string check_equality(const Case& c) {
  for (const auto& [a, b] : equality_pairs(c)) {
    const bool expected = term_eq_pure(a, b);
    if (term_eq_rec(a, b) != expected) return "term_eq_rec disagrees with term_eq_pure";
    if (term_eq_one_off(a, b) != expected) return "term_eq_one_off disagrees with term_eq_pure";
  }
  return {};
}

std::string check_variants(const Case& c) {
  const TermRef t = random_term(c.seed, c.size_budget, c.reuse);
  const std::uint64_t expected = *eval_nat_naive(t).value;
  for (VariantId v : kAllVariants) {
    const EvalOutcome out = run_variant(v, t, std::nullopt);
    if (out.value != expected) return "variant " + std::string(variant_name(v)) + " disagrees with the naive evaluator";
  }
  // Identity cache with a single bucket: every entry shares one list.
  IdCache single(1);
  if (eval_nat_id_cache(t, single) != expected) return "single-bucket id cache disagrees with the naive evaluator";
  return {};
}

std::string check_sharing(const Case& c) {
  const TermRef t = random_term(c.seed, c.size_budget, c.reuse);
  const TermRef s = share_common(t);
  if (!term_eq_pure(s, t)) return "share_common changed the term";
  if (!is_maximally_shared(s)) return "share_common result is not maximally shared";
  ShareState state;
  const TermRef x1 = with_share_common(t, state);
  const std::uint64_t inserted = state.interner_insertions();
  const TermRef x2 = with_share_common(x1, state);
  if (!same_node(x1, x2)) return "second with_share_common returned a different root";
  if (state.interner_insertions() != inserted) return "second with_share_common inserted into the interner";
  return {};
}

std::string check_reference_mode(const Case& c) {
  const TermRef t = random_term(c.seed, c.size_budget, c.reuse);
  const std::uint64_t expected = *eval_nat_naive(t).value;
  ScopedPurity reference(PurityMode::Reference);
  if (!same_node(share_common(t), t)) return "Reference share_common is not the identity";
  for (VariantId v : {VariantId::CacheFastEqFastHash, VariantId::IdCache, VariantId::IdCacheRobust}) {
    if (run_variant(v, t, std::nullopt).value != expected) {
      return "Reference-mode " + std::string(variant_name(v)) + " disagrees with the naive evaluator";
    }
  }
  for (const auto& [a, b] : equality_pairs(c)) {
    if (term_eq_rec(a, b) != term_eq_pure(a, b)) return "Reference-mode term_eq_rec disagrees with term_eq_pure";
  }
  return {};
}

std::string check_dual(const Case& c) {
  const TermRef t = random_term(c.seed, c.size_budget, c.reuse);
  const std::uint64_t expected = *eval_nat_naive(t).value;
  std::vector<std::pair<TermRef, TermRef>> pairs = equality_pairs(c);
  try {
    ScopedPurity dual(PurityMode::DualCheck);
    for (const auto& [a, b] : pairs) {
      const bool want = term_eq_pure(a, b);
      if (term_eq_rec(a, b) != want || term_eq_one_off(a, b) != want) return "DualCheck equality disagrees with term_eq_pure";
    }
    const TermRef s = share_common(t);
    if (!is_maximally_shared(s)) return "DualCheck share_common result is not maximally shared";
    for (VariantId v : {VariantId::CacheFastEqFastHash, VariantId::CacheFastEqFastHashRobust, VariantId::IdCache,
                        VariantId::IdCacheRobust}) {
      if (run_variant(v, t, std::nullopt).value != expected) {
        return "DualCheck " + std::string(variant_name(v)) + " disagrees with the naive evaluator";
      }
    }
    IdCache single(1);
    if (eval_nat_id_cache(t, single) != expected) return "DualCheck single-bucket id cache disagrees";
  } catch (const ContractViolation& e) {
    return std::string("divergence: ") + e.what();
  }
  return {};
}

}  // namespace

std::string describe_term(const TermRef& t, std::uint64_t max_nodes) {
  if (count_tree_nodes(t) > max_nodes) {
    return "<term with " + std::to_string(count_distinct_nodes(t)) + " distinct nodes, " +
           std::to_string(count_tree_nodes(t)) + " tree nodes>";
  }
  enum class Emit { Term, Space, Close };
  std::string out;
  std::vector<std::pair<Emit, const TermRef*>> stack{{Emit::Term, &t}};
  while (!stack.empty()) {
    const auto [what, x] = stack.back();
    stack.pop_back();
    if (what == Emit::Space) {
      out += ' ';
    } else if (what == Emit::Close) {
      out += ')';
    } else if (x->is_one()) {
      out += '1';
    } else {
      out += '(';
      stack.emplace_back(Emit::Close, nullptr);
      stack.emplace_back(Emit::Term, &x->right());
      stack.emplace_back(Emit::Space, nullptr);
      stack.emplace_back(Emit::Term, &x->left());
    }
  }
  return out;
}

bool is_maximally_shared(const TermRef& t) {
  const std::vector<TermRef> nodes = distinct_nodes(t);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      if (term_eq_pure(nodes[i], nodes[j])) return false;
    }
  }
  return true;
}

VerifyReport run_verify(const VerifyOptions& options) {
  const std::array<std::pair<const char*, Check>, 6> checks = {{
      {"hash_ok", check_hash},
      {"equality_oracle", check_equality},
      {"variant_oracle", check_variants},
      {"max_sharing", check_sharing},
      {"reference_mode", check_reference_mode},
      {"dual_check", check_dual},
  }};

  VerifyReport report;
  ScopedFaultInjection fault(options.inject_fault);
  const std::uint64_t dual_before = primitive_context().dual_checks;
  const unsigned max_budget = options.max_size_budget == 0 ? 1 : options.max_size_budget;

  for (std::uint64_t i = 0; i < options.iterations; ++i) {
    const Case c{splitmix(options.seed * 0x100000001b3ULL + i), 1 + static_cast<unsigned>(i % max_budget),
                 kReuseProbs[i % kReuseProbs.size()]};
    for (const auto& [name, check] : checks) {
      ++report.checks;
      std::string failure = check(c);
      if (failure.empty()) continue;

      // Shrink: smallest size budget for the same seed that still fails this check.
      Case smallest = c;
      for (unsigned b = 1; b < c.size_budget; ++b) {
        const Case smaller{c.seed, b, c.reuse};
        if (!check(smaller).empty()) {
          smallest = smaller;
          break;
        }
      }
      report.violations.push_back(Violation{
          name, i, std::move(failure),
          "random_term(seed=" + std::to_string(smallest.seed) + ", size_budget=" + std::to_string(smallest.size_budget) +
              ", reuse=" + std::to_string(smallest.reuse) +
              ") = " + describe_term(random_term(smallest.seed, smallest.size_budget, smallest.reuse))});
    }
  }
  report.dual_checks = primitive_context().dual_checks - dual_before;
  return report;
}

void print_report(std::ostream& out, const VerifyReport& report) {
  out << "checks: " << report.checks << '\n';
  out << "dual-path primitive checks: " << report.dual_checks << '\n';
  out << "violations: " << report.violations.size() << '\n';
  for (const Violation& v : report.violations) {
    out << "  [" << v.check << "] iteration " << v.iteration << ": " << v.detail << '\n';
    out << "    counterexample: " << v.counterexample << '\n';
  }
  out << (report.ok() ? "OK" : "FAILED") << '\n';
}

}  // namespace termdag
