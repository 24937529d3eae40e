#include "termdag/term.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <random>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace termdag {

namespace {

IdentityMode initial_identity_mode() {
  const char* env = std::getenv("TERMBENCH_DETERMINISTIC_IDS");
  return (env != nullptr && std::strcmp(env, "1") == 0) ? IdentityMode::Sequential : IdentityMode::Address;
}

std::atomic<IdentityMode>& identity_mode_slot() {
  static std::atomic<IdentityMode> mode{initial_identity_mode()};
  return mode;
}

std::atomic<std::uint64_t> g_next_sequential_id{1};
std::atomic<std::uint64_t> g_depth_limit{std::uint64_t{1} << 20};

thread_local std::uint64_t t_structural_eq_calls = 0;

void check_depth(std::uint64_t n) {
  const std::uint64_t limit = depth_limit();
  if (n > limit) throw DepthLimitExceeded(n, limit);
}

}  // namespace

void set_identity_mode(IdentityMode mode) { identity_mode_slot().store(mode); }
IdentityMode identity_mode() { return identity_mode_slot().load(); }

DepthLimitExceeded::DepthLimitExceeded(std::uint64_t requested, std::uint64_t limit)
    : std::out_of_range("height " + std::to_string(requested) + " exceeds depth limit " + std::to_string(limit)) {}

std::uint64_t depth_limit() { return g_depth_limit.load(); }
void set_depth_limit(std::uint64_t limit) { g_depth_limit.store(limit); }

TermNode::TermNode(TermKind kind, HashCode hash, TermRef left, TermRef right)
    : kind_(kind), hash_(hash), left_(std::move(left)), right_(std::move(right)) {
  if (identity_mode() == IdentityMode::Sequential) {
    identity_.value = g_next_sequential_id.fetch_add(1, std::memory_order_relaxed);
  } else {
    identity_.value = static_cast<std::uint64_t>(reinterpret_cast<std::uintptr_t>(this));
  }
}

// Releasing a tall chain through nested shared_ptr destructors would recurse once per
// level. Children are instead parked on a per-thread list and released by the outermost
// destructor on the thread.
TermNode::~TermNode() {
  thread_local std::vector<std::shared_ptr<TermNode>> pending;
  thread_local bool draining = false;

  if (left_.node_) pending.push_back(std::move(left_.node_));
  if (right_.node_) pending.push_back(std::move(right_.node_));
  if (draining) return;

  draining = true;
  while (!pending.empty()) {
    std::shared_ptr<TermNode> next = std::move(pending.back());
    pending.pop_back();
    next.reset();
  }
  draining = false;
}

TermRef mk_one() { return TermRef(std::make_shared<TermNode>(TermKind::One, kOneHash, TermRef{}, TermRef{})); }

TermRef mk_add(TermRef l, TermRef r) {
  const HashCode h = mix_hash(fast_hash(l), fast_hash(r));
  return TermRef(std::make_shared<TermNode>(TermKind::Add, h, std::move(l), std::move(r)));
}

HashCode slow_hash(const TermRef& t, VisitMeter& meter) {
  struct Frame {
    const TermRef* term;
    bool expanded;
  };
  std::vector<Frame> stack{{&t, false}};
  std::vector<HashCode> values;
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    if (f.expanded) {
      const HashCode r = values.back();
      values.pop_back();
      values.back() = mix_hash(values.back(), r);
      continue;
    }
    meter.tick();
    if (f.term->is_one()) {
      values.push_back(kOneHash);
      continue;
    }
    stack.push_back({f.term, true});
    stack.push_back({&f.term->right(), false});
    stack.push_back({&f.term->left(), false});
  }
  return values.back();
}

HashCode slow_hash(const TermRef& t) {
  VisitMeter meter;
  return slow_hash(t, meter);
}

std::uint64_t structural_eq_calls() noexcept { return t_structural_eq_calls; }
void note_structural_eq_call() noexcept { ++t_structural_eq_calls; }

bool term_eq_pure(const TermRef& a, const TermRef& b, VisitMeter& meter) {
  note_structural_eq_call();
  std::vector<std::pair<const TermRef*, const TermRef*>> stack{{&a, &b}};
  while (!stack.empty()) {
    const auto [x, y] = stack.back();
    stack.pop_back();
    meter.tick();
    if (x->kind() != y->kind()) return false;
    if (x->is_one()) continue;
    stack.emplace_back(&x->right(), &y->right());
    stack.emplace_back(&x->left(), &y->left());
  }
  return true;
}

bool term_eq_pure(const TermRef& a, const TermRef& b) {
  VisitMeter meter;
  return term_eq_pure(a, b, meter);
}

TermRef tower(std::uint64_t n) {
  check_depth(n);
  TermRef t = mk_one();
  for (std::uint64_t i = 0; i < n; ++i) t = mk_add(t, t);
  return t;
}

std::pair<TermRef, TermRef> twin_shared(std::uint64_t n) {
  check_depth(n);
  TermRef base = tower(n);
  return {mk_add(base, base), mk_add(base, base)};
}

TermRef twin_disjoint(std::uint64_t n) {
  check_depth(n);
  TermRef a = tower(n);
  TermRef b = tower(n);
  return mk_add(std::move(a), std::move(b));
}

TermRef random_term(std::uint64_t seed, unsigned size_budget, double reuse_prob) {
  if (size_budget < 1) throw std::invalid_argument("random_term: size_budget must be at least 1");

  std::mt19937_64 rng(seed);
  const auto coin = [&rng](double p) { return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p; };
  const auto below = [&rng](std::uint64_t n) { return rng() % n; };

  const unsigned cap = std::min(size_budget, 62u);
  // Log-uniform target so that small and large terms are both common.
  const std::uint64_t scale = std::uint64_t{1} << below(cap + 1);
  const std::uint64_t target = std::max<std::uint64_t>(1, std::min(scale, 1 + below(2 * scale)));

  struct Built {
    TermRef term;
    std::uint64_t tree;
  };
  std::vector<Built> pool;  // every node built so far, candidates for reuse

  // Largest node that fits in `room` among the newest one and a few sampled ones.
  const auto reuse_candidate = [&](std::uint64_t room) -> const Built* {
    if (pool.empty()) return nullptr;
    const Built* best = pool.back().tree <= room ? &pool.back() : nullptr;
    for (int i = 0; i < 4; ++i) {
      const Built& c = pool[below(pool.size())];
      if (c.tree <= room && (best == nullptr || c.tree > best->tree)) best = &c;
    }
    return best;
  };

  struct Frame {
    std::uint64_t room;  // tree-size allowance for this subterm
    bool may_reuse = false;  // right children only, so left spines stay fresh
    int stage = 0;           // 0: fresh, 1: left done, 2: both done
    std::uint64_t right_room = 0;
  };
  std::vector<Frame> stack{{target}};
  std::vector<Built> results;

  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.stage == 0) {
      if (f.may_reuse && coin(reuse_prob)) {
        if (const Built* c = reuse_candidate(f.room)) {
          results.push_back(*c);
          stack.pop_back();
          continue;
        }
      }
      if (f.room < 3) {
        results.push_back({mk_one(), 1});
        pool.push_back(results.back());
        stack.pop_back();
        continue;
      }
      const std::uint64_t left_room = 1 + below(f.room - 2);
      f.stage = 1;
      stack.push_back({left_room});
      continue;
    }
    if (f.stage == 1) {
      f.right_room = f.room - 1 - results.back().tree;  // the right side gets whatever the left left over
      f.stage = 2;
      stack.push_back({f.right_room, true});
      continue;
    }
    Built r = std::move(results.back());
    results.pop_back();
    Built l = std::move(results.back());
    results.pop_back();
    const std::uint64_t tree = l.tree + r.tree + 1;
    results.push_back({mk_add(std::move(l.term), std::move(r.term)), tree});
    pool.push_back(results.back());
    stack.pop_back();
  }
  return results.back().term;
}

std::uint64_t count_distinct_nodes(const TermRef& t) {
  std::unordered_set<IdentityToken, IdentityTokenHash> seen;
  std::vector<const TermRef*> stack{&t};
  while (!stack.empty()) {
    const TermRef* x = stack.back();
    stack.pop_back();
    if (!seen.insert(x->identity()).second) continue;
    if (x->is_add()) {
      stack.push_back(&x->right());
      stack.push_back(&x->left());
    }
  }
  return seen.size();
}

std::uint64_t count_tree_nodes(const TermRef& t) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  const auto sat_add = [](std::uint64_t a, std::uint64_t b) { return a > kMax - b ? kMax : a + b; };

  std::unordered_map<IdentityToken, std::uint64_t, IdentityTokenHash> sizes;
  std::vector<std::pair<const TermRef*, bool>> stack{{&t, false}};
  while (!stack.empty()) {
    const auto [x, expanded] = stack.back();
    stack.pop_back();
    if (sizes.count(x->identity()) != 0) continue;
    if (x->is_one()) {
      sizes.emplace(x->identity(), 1);
      continue;
    }
    if (!expanded) {
      stack.emplace_back(x, true);
      stack.emplace_back(&x->right(), false);
      stack.emplace_back(&x->left(), false);
      continue;
    }
    const std::uint64_t l = sizes.at(x->left().identity());
    const std::uint64_t r = sizes.at(x->right().identity());
    sizes.emplace(x->identity(), sat_add(sat_add(l, r), 1));
  }
  return sizes.at(t.identity());
}

std::uint64_t count_tree_nodes_by_unfolding(const TermRef& t, VisitMeter& meter) {
  std::uint64_t count = 0;
  std::vector<const TermRef*> stack{&t};
  while (!stack.empty()) {
    const TermRef* x = stack.back();
    stack.pop_back();
    meter.tick();
    ++count;
    if (x->is_add()) {
      stack.push_back(&x->right());
      stack.push_back(&x->left());
    }
  }
  return count;
}

}  // namespace termdag
