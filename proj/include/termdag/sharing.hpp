#pragma once

#include <cstddef>
#include <cstdint>
#include <unordered_map>

#include "termdag/meter.hpp"
#include "termdag/term.hpp"

namespace termdag {

/// Constructor tag plus the identities of the canonical children. Two nodes with equal
/// keys are structurally equal as long as the children are canonical.
struct StructuralKey {
  TermKind tag = TermKind::One;
  IdentityToken left;
  IdentityToken right;

  friend bool operator==(const StructuralKey&, const StructuralKey&) = default;
};

struct StructuralKeyHash {
  std::size_t operator()(const StructuralKey& k) const noexcept {
    std::uint64_t h = static_cast<std::uint64_t>(k.tag);
    h = mix_hash(h, k.left.value);
    h = mix_hash(h, k.right.value);
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

/// Incremental canonicalization state: after-the-fact hash-consing.
///
/// `memo` maps the identity of every node seen so far to its canonical representative and
/// keeps the source node alive, so its token cannot be reused while the state exists.
/// `interner` holds exactly one canonical node per structural equivalence class.
///
/// Single owner. Not safe for concurrent mutation.
class ShareState {
 public:
  ShareState() = default;
  ShareState(ShareState&&) noexcept = default;
  ShareState& operator=(ShareState&&) noexcept = default;
  ShareState(const ShareState&) = delete;
  ShareState& operator=(const ShareState&) = delete;

  /// Canonical form of t; every structurally equal pair of subterms of the result is
  /// identity-equal, across all terms canonicalized through this state.
  TermRef canonicalize(const TermRef& t, VisitMeter& meter);
  TermRef canonicalize(const TermRef& t);

  std::size_t memo_size() const noexcept { return memo_.size(); }
  std::size_t interner_size() const noexcept { return interner_.size(); }

  std::uint64_t interner_insertions() const noexcept { return interner_insertions_; }
  std::uint64_t memo_hits() const noexcept { return memo_hits_; }
  std::uint64_t nodes_built() const noexcept { return nodes_built_; }

 private:
  struct MemoEntry {
    TermRef source;
    TermRef canonical;
  };

  const TermRef* memo_lookup(const TermRef& t) const;
  void remember(const TermRef& source, const TermRef& canonical);

  std::unordered_map<IdentityToken, MemoEntry, IdentityTokenHash> memo_;
  std::unordered_map<StructuralKey, TermRef, StructuralKeyHash> interner_;
  std::uint64_t interner_insertions_ = 0;
  std::uint64_t memo_hits_ = 0;
  std::uint64_t nodes_built_ = 0;
};

inline ShareState share_state_empty() { return ShareState{}; }

}  // namespace termdag
