#include "termdag/sharing.hpp"

#include <vector>

namespace termdag {

const TermRef* ShareState::memo_lookup(const TermRef& t) const {
  const auto it = memo_.find(t.identity());
  return it == memo_.end() ? nullptr : &it->second.canonical;
}

void ShareState::remember(const TermRef& source, const TermRef& canonical) {
  memo_.try_emplace(source.identity(), MemoEntry{source, canonical});
}

TermRef ShareState::canonicalize(const TermRef& t, VisitMeter& meter) {
  struct Frame {
    const TermRef* term;
    bool built;  // false: first visit, true: children are done, build this node
  };
  std::vector<Frame> stack{{&t, false}};

  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    const TermRef& x = *f.term;

    if (!f.built) {
      meter.tick();
      if (memo_lookup(x) != nullptr) {
        ++memo_hits_;
        continue;
      }
      if (x.is_one()) {
        const auto [it, inserted] = interner_.try_emplace(StructuralKey{TermKind::One, {}, {}}, x);
        if (inserted) ++interner_insertions_;
        remember(x, it->second);
        continue;
      }
      stack.push_back({&x, true});
      stack.push_back({&x.right(), false});
      stack.push_back({&x.left(), false});
      continue;
    }

    if (memo_lookup(x) != nullptr) continue;
    const TermRef& left = *memo_lookup(x.left());
    const TermRef& right = *memo_lookup(x.right());
    const StructuralKey key{TermKind::Add, left.identity(), right.identity()};

    auto it = interner_.find(key);
    if (it == interner_.end()) {
      // Reuse x when its children are already canonical.
      TermRef canonical = (same_node(left, x.left()) && same_node(right, x.right())) ? x : mk_add(left, right);
      if (!same_node(canonical, x)) {
        ++nodes_built_;
        remember(canonical, canonical);
      }
      it = interner_.emplace(key, std::move(canonical)).first;
      ++interner_insertions_;
    }
    remember(x, it->second);
  }
  return *memo_lookup(t);
}

TermRef ShareState::canonicalize(const TermRef& t) {
  VisitMeter meter;
  return canonicalize(t, meter);
}

}  // namespace termdag
