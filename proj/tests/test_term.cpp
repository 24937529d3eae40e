#include <set>
#include <thread>
#include <vector>

#include "doctest.h"
#include "oracle.hpp"
#include "termdag/term.hpp"

using namespace termdag;

TEST_CASE("mk_one") {
  const TermRef a = mk_one();
  const TermRef b = mk_one();
  CHECK(a.is_one());
  CHECK(fast_hash(a) == 7);
  CHECK(a.identity() != b.identity());
  CHECK(term_eq_pure(a, b));
  CHECK(a.identity().value != 0);
}

TEST_CASE("mix and stored hashes") {
  const std::uint64_t mixed_7_7 = oracle::mix(7, 7);
  CHECK(mixed_7_7 == 7696581397484ULL);
  CHECK(mix_hash(7, 7) == mixed_7_7);

  const TermRef one = mk_one();
  const TermRef add = mk_add(one, one);
  CHECK(add.stored_hash() == 7696581397484ULL);
  CHECK(fast_hash(add) == add.stored_hash());
  CHECK(slow_hash(add) == fast_hash(add));

  CHECK(fast_hash(tower(2)) == oracle::mix(oracle::mix(7, 7), oracle::mix(7, 7)));
  CHECK(slow_hash(tower(1)) == 7696581397484ULL);
  CHECK(slow_hash(mk_one()) == 7);
}

TEST_CASE("mix matches the modular oracle on arbitrary words") {
  std::uint64_t a = 0x9e3779b97f4a7c15ULL;
  std::uint64_t b = 12345;
  for (int i = 0; i < 1000; ++i) {
    CHECK(mix_hash(a, b) == oracle::mix(a, b));
    a = a * 6364136223846793005ULL + 1442695040888963407ULL;
    b ^= a >> 17;
  }
  CHECK(mix_hash(~0ULL, ~0ULL) == oracle::mix(~0ULL, ~0ULL));
}

TEST_CASE("multiply-add reduced mod 2^64 collapses tower hashes") {
  // This is why hashes are reduced modulo 2^61 - 1.
  std::uint64_t wrapped = 7;
  for (int k = 0; k < 32; ++k) wrapped = wrapped * kFnvPrime + wrapped;
  CHECK(wrapped == 0);

  std::set<HashCode> seen;
  HashCode h = 7;
  for (int k = 0; k < 4096; ++k) {
    CHECK(seen.insert(h).second);
    h = mix_hash(h, h);
  }
  CHECK(fast_hash(tower(40)) != fast_hash(tower(41)));
}

TEST_CASE("slow_hash visits every tree node") {
  for (std::uint64_t n = 0; n <= 12; ++n) {
    VisitMeter meter;
    const TermRef t = tower(n);
    CHECK(slow_hash(t, meter) == fast_hash(t));
    CHECK(meter.visits() == (std::uint64_t{1} << (n + 1)) - 1);
  }
}

TEST_CASE("slow_hash respects a budget") {
  VisitMeter meter(1000);
  CHECK_THROWS_AS(slow_hash(tower(40), meter), BudgetExhausted);
}

TEST_CASE("term_eq_pure examples") {
  CHECK(term_eq_pure(mk_one(), mk_one()));
  CHECK_FALSE(term_eq_pure(mk_one(), mk_add(mk_one(), mk_one())));
  CHECK_FALSE(term_eq_pure(mk_add(mk_one(), mk_one()), mk_one()));
  CHECK(term_eq_pure(tower(5), tower(5)));
  CHECK_FALSE(term_eq_pure(tower(3), tower(4)));

  const TermRef lhs = mk_add(mk_add(mk_one(), mk_one()), mk_one());
  const TermRef rhs = mk_add(mk_one(), mk_add(mk_one(), mk_one()));
  CHECK_FALSE(term_eq_pure(lhs, rhs));
}

TEST_CASE("term_eq_pure agrees with the string oracle on every small tree") {
  const std::vector<TermRef> trees = oracle::all_trees_up_to(5);
  REQUIRE(trees.size() == 1 + 1 + 2 + 5 + 14);
  for (const TermRef& a : trees) {
    for (const TermRef& b : trees) CHECK(term_eq_pure(a, b) == oracle::equal(a, b));
  }
}

TEST_CASE("tower shape counts") {
  CHECK(tower(0).is_one());
  for (std::uint64_t n = 0; n <= 20; ++n) {
    const TermRef t = tower(n);
    VisitMeter meter;
    CHECK(count_distinct_nodes(t) == n + 1);
    CHECK(count_tree_nodes(t) == (std::uint64_t{1} << (n + 1)) - 1);
    CHECK(count_tree_nodes_by_unfolding(t, meter) == (std::uint64_t{1} << (n + 1)) - 1);
  }
  const TermRef t4 = tower(4);
  CHECK(oracle::distinct_nodes(t4) == 5);
  CHECK(oracle::analyze(t4).tree_size == 31);
  CHECK(oracle::analyze(tower(3)).value == 8);
  CHECK(count_tree_nodes(tower(70)) == UINT64_MAX);
}

TEST_CASE("twin_shared") {
  const auto [a, b] = twin_shared(6);
  CHECK(a.identity() != b.identity());
  CHECK(same_node(a.left(), a.right()));
  CHECK(same_node(a.left(), b.left()));
  CHECK(same_node(b.left(), b.right()));
  CHECK(term_eq_pure(a, b));
}

TEST_CASE("twin_disjoint") {
  const TermRef t = twin_disjoint(3);
  CHECK(count_distinct_nodes(t) == 9);
  CHECK(oracle::distinct_nodes(t) == 9);
  CHECK(oracle::analyze(t).value == 16);

  std::set<std::uint64_t> left_ids;
  std::set<std::uint64_t> right_ids;
  oracle::collect_ids(t.left(), left_ids);
  oracle::collect_ids(t.right(), right_ids);
  for (std::uint64_t id : left_ids) CHECK(right_ids.count(id) == 0);
  CHECK(term_eq_pure(t.left(), t.right()));

  for (std::uint64_t n = 0; n <= 10; ++n) CHECK(count_distinct_nodes(twin_disjoint(n)) == 2 * n + 3);
}

TEST_CASE("depth limit") {
  const std::uint64_t saved = depth_limit();
  CHECK(saved == (std::uint64_t{1} << 20));
  set_depth_limit(10);
  CHECK_NOTHROW(tower(10));
  CHECK_THROWS_AS(tower(11), DepthLimitExceeded);
  CHECK_THROWS_AS(twin_shared(11), DepthLimitExceeded);
  CHECK_THROWS_AS(twin_disjoint(11), DepthLimitExceeded);
  set_depth_limit(saved);
}

TEST_CASE("tall terms build and release without recursion") {
  TermRef t = tower(std::uint64_t{1} << 20);
  CHECK(count_distinct_nodes(t) == (std::uint64_t{1} << 20) + 1);
  t = TermRef{};

  // A left spine of 2^20 nodes, each uniquely owned.
  TermRef spine = mk_one();
  for (int i = 0; i < (1 << 20); ++i) spine = mk_add(spine, mk_one());
  CHECK(fast_hash(spine) != 0);
  spine = TermRef{};
}

TEST_CASE("random_term") {
  SUBCASE("deterministic") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const TermRef a = random_term(seed, 10, 0.5);
      const TermRef b = random_term(seed, 10, 0.5);
      CHECK(term_eq_pure(a, b));
      CHECK(count_distinct_nodes(a) == count_distinct_nodes(b));
      CHECK(oracle::plain(a) == oracle::plain(b));
    }
  }
  SUBCASE("no reuse gives a tree") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const TermRef t = random_term(seed, 8, 0.0);
      CHECK(count_distinct_nodes(t) == count_tree_nodes(t));
    }
  }
  SUBCASE("budget bounds tree size") {
    for (unsigned budget = 1; budget <= 12; ++budget) {
      for (std::uint64_t seed = 0; seed < 40; ++seed) {
        for (double reuse : {0.0, 0.5, 0.9}) {
          const TermRef t = random_term(seed, budget, reuse);
          CHECK(count_tree_nodes(t) <= (std::uint64_t{1} << budget));
          CHECK(count_distinct_nodes(t) <= count_tree_nodes(t));
        }
      }
    }
  }
  SUBCASE("reuse creates sharing") {
    std::uint64_t shared = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const TermRef t = random_term(seed, 12, 0.9);
      if (count_distinct_nodes(t) < count_tree_nodes(t)) ++shared;
    }
    CHECK(shared > 25);
  }
  CHECK_THROWS_AS(random_term(1, 0, 0.5), std::invalid_argument);
}

TEST_CASE("hash and equality properties on random terms") {
  std::vector<TermRef> terms;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    terms.push_back(random_term(seed, 1 + seed % 10, (seed % 3) * 0.45));
  }
  for (const TermRef& t : terms) {
    CHECK(fast_hash(t) == slow_hash(t));
    CHECK(term_eq_pure(t, t));
    if (count_tree_nodes(t) <= 512) CHECK(fast_hash(t) == oracle::analyze(t).hash);
  }
  // Symmetry and transitivity, with many structurally equal pairs from small budgets.
  for (std::size_t i = 0; i < terms.size(); i += 3) {
    for (std::size_t j = 0; j < terms.size(); j += 5) {
      const bool ij = term_eq_pure(terms[i], terms[j]);
      CHECK(ij == term_eq_pure(terms[j], terms[i]));
      if (!ij) continue;
      for (std::size_t k = 0; k < terms.size(); k += 7) {
        if (term_eq_pure(terms[j], terms[k])) CHECK(term_eq_pure(terms[i], terms[k]));
      }
    }
  }
}

TEST_CASE("sequential identity mode") {
  const IdentityMode saved = identity_mode();
  set_identity_mode(IdentityMode::Sequential);
  const TermRef a = mk_one();
  const TermRef b = mk_one();
  CHECK(b.identity().value == a.identity().value + 1);
  set_identity_mode(saved);
}

TEST_CASE("concurrent construction yields distinct identities") {
  std::vector<std::vector<TermRef>> built(4);
  std::vector<std::thread> threads;
  for (auto& out : built) {
    threads.emplace_back([&out] {
      for (int i = 0; i < 2000; ++i) out.push_back(mk_add(mk_one(), mk_one()));
    });
  }
  for (auto& th : threads) th.join();
  std::set<std::uint64_t> ids;
  for (const auto& v : built) {
    for (const TermRef& t : v) CHECK(ids.insert(t.identity().value).second);
  }
}
