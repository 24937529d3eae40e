#pragma once

#include "termdag/meter.hpp"
#include "termdag/term.hpp"

namespace termdag {

/// Verdict of a decision procedure for structural equality; always agrees with term_eq_pure.
enum class EqDecision { IsTrue, IsFalse };

constexpr bool to_bool(EqDecision d) noexcept { return d == EqDecision::IsTrue; }

/// Identity check at the root only, then term_eq_pure.
bool term_eq_one_off(const TermRef& a, const TermRef& b, VisitMeter& meter);
bool term_eq_one_off(const TermRef& a, const TermRef& b);

/// Structural equality with an identity check on every compared pair, the root included.
/// For Add pairs the stored hashes are compared before the children. One visit per pair.
EqDecision term_dec_eq(const TermRef& a, const TermRef& b, VisitMeter& meter);
EqDecision term_dec_eq(const TermRef& a, const TermRef& b);

bool term_eq_rec(const TermRef& a, const TermRef& b, VisitMeter& meter);
bool term_eq_rec(const TermRef& a, const TermRef& b);

}  // namespace termdag
