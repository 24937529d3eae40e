#include "termdag/fast_eq.hpp"

#include <utility>
#include <vector>

#include "termdag/identity.hpp"

namespace termdag {

bool term_eq_one_off(const TermRef& a, const TermRef& b, VisitMeter& meter) {
  note_structural_eq_call();
  const auto rel = with_id_rel([&meter](const TermRef& x, const TermRef& y) { return term_eq_pure(x, y, meter); });
  return rel(a, b);
}

bool term_eq_one_off(const TermRef& a, const TermRef& b) {
  VisitMeter meter;
  return term_eq_one_off(a, b, meter);
}

EqDecision term_dec_eq(const TermRef& a, const TermRef& b, VisitMeter& meter) {
  note_structural_eq_call();
  std::vector<std::pair<const TermRef*, const TermRef*>> pending{{&a, &b}};

  // Compares one pair without looking below it; children still to be compared are queued.
  // Returns false on a constructor or hash mismatch.
  const auto compare_shallow = [&pending](const TermRef& x, const TermRef& y) {
    if (x.kind() != y.kind()) return false;
    if (x.is_one()) return true;
    if (fast_hash(x) != fast_hash(y)) return false;
    pending.emplace_back(&x.right(), &y.right());
    pending.emplace_back(&x.left(), &y.left());
    return true;
  };

  while (!pending.empty()) {
    const auto [x, y] = pending.back();
    pending.pop_back();
    meter.tick();
    if (!with_id_eq(*x, *y, [&] { return compare_shallow(*x, *y); })) return EqDecision::IsFalse;
  }
  return EqDecision::IsTrue;
}

EqDecision term_dec_eq(const TermRef& a, const TermRef& b) {
  VisitMeter meter;
  return term_dec_eq(a, b, meter);
}

bool term_eq_rec(const TermRef& a, const TermRef& b, VisitMeter& meter) { return to_bool(term_dec_eq(a, b, meter)); }

bool term_eq_rec(const TermRef& a, const TermRef& b) {
  VisitMeter meter;
  return term_eq_rec(a, b, meter);
}

}  // namespace termdag
