#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <utility>

#include "termdag/meter.hpp"

namespace termdag {

using HashCode = std::uint64_t;

/// Opaque machine-word identity of a live node. Equal tokens mean the same node.
/// Token 0 is never assigned to a node; it is the "null address".
struct IdentityToken {
  std::uint64_t value = 0;

  friend constexpr auto operator<=>(IdentityToken, IdentityToken) = default;
};

struct IdentityTokenHash {
  std::size_t operator()(IdentityToken t) const noexcept { return std::hash<std::uint64_t>{}(t.value); }
};

inline constexpr std::uint64_t kFnvPrime = 1099511628211ULL;
inline constexpr HashCode kOneHash = 7;
/// 2^61 - 1. Hash arithmetic is reduced modulo this prime.
inline constexpr std::uint64_t kHashModulus = (std::uint64_t{1} << 61) - 1;

/// mix(a, b) = (a * 1099511628211 + b) mod (2^61 - 1).
///
/// Reducing modulo 2^64 instead is unusable on towers: mix(h, h) = h * (P + 1) with P + 1
/// divisible by 4, so every tower above height 31 hashes to 0. Modulo a prime the map
/// h -> h * (P + 1) is a bijection.
constexpr HashCode mix_hash(HashCode a, HashCode b) noexcept {
  const unsigned __int128 wide = static_cast<unsigned __int128>(a) * kFnvPrime + b;
  return static_cast<HashCode>(wide % kHashModulus);
}

enum class TermKind : std::uint8_t { One, Add };

enum class IdentityMode {
  Address,     // token is the node's address
  Sequential,  // token is a process-wide counter, starting at 1
};

/// Selects how tokens are assigned to nodes built from now on. The initial mode is
/// Sequential when TERMBENCH_DETERMINISTIC_IDS=1 is set in the environment, Address otherwise.
void set_identity_mode(IdentityMode mode);
IdentityMode identity_mode();

class DepthLimitExceeded : public std::out_of_range {
 public:
  DepthLimitExceeded(std::uint64_t requested, std::uint64_t limit);
};

/// Height limit for the shape generators. Default 2^20.
std::uint64_t depth_limit();
void set_depth_limit(std::uint64_t limit);

class TermNode;

/// Shared, immutable handle to a term node.
class TermRef {
 public:
  TermRef() = default;

  bool valid() const noexcept { return node_ != nullptr; }
  explicit operator bool() const noexcept { return valid(); }

  TermKind kind() const noexcept;
  bool is_one() const noexcept { return kind() == TermKind::One; }
  bool is_add() const noexcept { return kind() == TermKind::Add; }

  /// Children of an Add node. Undefined for One.
  const TermRef& left() const noexcept;
  const TermRef& right() const noexcept;

  /// 7 for One, the intrusive hash for Add.
  HashCode stored_hash() const noexcept;
  IdentityToken identity() const noexcept;

  std::size_t use_count() const noexcept { return static_cast<std::size_t>(node_.use_count()); }

  friend bool same_node(const TermRef& a, const TermRef& b) noexcept { return a.node_ == b.node_; }

 private:
  friend TermRef mk_one();
  friend TermRef mk_add(TermRef l, TermRef r);
  friend class TermNode;

  explicit TermRef(std::shared_ptr<TermNode> node) : node_(std::move(node)) {}

  std::shared_ptr<TermNode> node_;
};

class TermNode {
 public:
  TermNode(TermKind kind, HashCode hash, TermRef left, TermRef right);
  TermNode(const TermNode&) = delete;
  TermNode& operator=(const TermNode&) = delete;
  ~TermNode();

 private:
  friend class TermRef;

  TermKind kind_;
  HashCode hash_;
  IdentityToken identity_;
  // Non-const: the destructor moves children out to release them iteratively.
  TermRef left_;
  TermRef right_;
};

inline TermKind TermRef::kind() const noexcept { return node_->kind_; }
inline const TermRef& TermRef::left() const noexcept { return node_->left_; }
inline const TermRef& TermRef::right() const noexcept { return node_->right_; }
inline HashCode TermRef::stored_hash() const noexcept { return node_->hash_; }
inline IdentityToken TermRef::identity() const noexcept { return node_->identity_; }

/// Fresh One node; every call allocates a new identity.
TermRef mk_one();
/// Add node with stored hash mix(fast_hash(l), fast_hash(r)).
TermRef mk_add(TermRef l, TermRef r);

/// O(1) hash read from the node.
inline HashCode fast_hash(const TermRef& t) noexcept { return t.stored_hash(); }

/// Structural hash recomputed over the unfolded tree, ignoring stored hashes.
/// Costs one visit per tree node.
HashCode slow_hash(const TermRef& t, VisitMeter& meter);
HashCode slow_hash(const TermRef& t);

/// Pure structural equality. No identity shortcuts; one visit per compared node pair.
bool term_eq_pure(const TermRef& a, const TermRef& b, VisitMeter& meter);
bool term_eq_pure(const TermRef& a, const TermRef& b);

/// Number of structural equality routines entered on this thread (term_eq_pure and
/// the accelerated variants). Used to assert that identity-only paths never compare structure.
std::uint64_t structural_eq_calls() noexcept;
void note_structural_eq_call() noexcept;

/// tower(0) = one, tower(n+1) = add(t, t) with t = tower(n) built once.
TermRef tower(std::uint64_t n);

/// Two distinct add(t, t) roots over one shared t = tower(n).
std::pair<TermRef, TermRef> twin_shared(std::uint64_t n);

/// add(a, b) where a and b are identity-disjoint towers of height n.
TermRef twin_disjoint(std::uint64_t n);

/// Seeded random DAG with tree size at most 2^size_budget (log-uniform target). Each
/// subterm splits its size allowance between two children; with probability reuse_prob it
/// is instead an already-built node that fits the allowance.
TermRef random_term(std::uint64_t seed, unsigned size_budget, double reuse_prob);

/// Distinct nodes by identity.
std::uint64_t count_distinct_nodes(const TermRef& t);

/// Unfolded tree size computed over the DAG (no unfolding). Saturates at UINT64_MAX.
std::uint64_t count_tree_nodes(const TermRef& t);

/// Unfolded tree size by walking every tree node. Exponential on shared terms.
std::uint64_t count_tree_nodes_by_unfolding(const TermRef& t, VisitMeter& meter);

}  // namespace termdag
