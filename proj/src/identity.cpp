#include "termdag/identity.hpp"

#include "termdag/sharing.hpp"

namespace termdag {

PrimitiveContext& primitive_context() noexcept {
  thread_local PrimitiveContext ctx;
  return ctx;
}

TermRef with_share_common(const TermRef& x, ShareState& state, VisitMeter& meter) {
  PrimitiveContext& ctx = primitive_context();
  switch (ctx.mode) {
    case PurityMode::Reference:
      return x;
    case PurityMode::Accelerated:
      return state.canonicalize(x, meter);
    case PurityMode::DualCheck:
      break;
  }
  TermRef shared = state.canonicalize(x, meter);
  ++ctx.dual_checks;
  if (!term_eq_pure(shared, x)) throw ContractViolation("share_common: result is not structurally equal to its input");
  return shared;
}

TermRef with_share_common(const TermRef& x, ShareState& state) {
  VisitMeter meter;
  return with_share_common(x, state, meter);
}

TermRef share_common(const TermRef& x, VisitMeter& meter) {
  ShareState state;
  return with_share_common(x, state, meter);
}

TermRef share_common(const TermRef& x) {
  VisitMeter meter;
  return share_common(x, meter);
}

}  // namespace termdag
