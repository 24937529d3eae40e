#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include "termdag/term.hpp"

namespace termdag {

class ShareState;

/// How the sealed primitives execute.
///   Accelerated: consult identities.
///   Reference:   the pure definition, identities are never observed.
///   DualCheck:   run both and raise ContractViolation if they disagree.
enum class PurityMode { Accelerated, Reference, DualCheck };

class ContractViolation : public std::logic_error {
 public:
  explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

/// Per-thread settings and counters for the primitives.
struct PrimitiveContext {
  PurityMode mode = PurityMode::Accelerated;
  bool inject_fault = false;  // test-only: with_id_eq's fast path answers false
  std::uint64_t dual_checks = 0;
};

PrimitiveContext& primitive_context() noexcept;

inline PurityMode purity_mode() noexcept { return primitive_context().mode; }

/// Sets the purity mode for the current thread until destroyed.
class ScopedPurity {
 public:
  explicit ScopedPurity(PurityMode mode) : saved_(primitive_context().mode) { primitive_context().mode = mode; }
  ~ScopedPurity() { primitive_context().mode = saved_; }
  ScopedPurity(const ScopedPurity&) = delete;
  ScopedPurity& operator=(const ScopedPurity&) = delete;

 private:
  PurityMode saved_;
};

class ScopedFaultInjection {
 public:
  explicit ScopedFaultInjection(bool on = true) : saved_(primitive_context().inject_fault) {
    primitive_context().inject_fault = on;
  }
  ~ScopedFaultInjection() { primitive_context().inject_fault = saved_; }
  ScopedFaultInjection(const ScopedFaultInjection&) = delete;
  ScopedFaultInjection& operator=(const ScopedFaultInjection&) = delete;

 private:
  bool saved_;
};

inline bool identity_equal(const TermRef& x, const TermRef& y) noexcept { return x.identity() == y.identity(); }

/// Result of an imprecise identity test. YesEqual is only ever constructed by
/// with_id_eq_result, and only when both handles denote the same node.
class IdEqResult {
 public:
  static IdEqResult unknown() noexcept { return IdEqResult(false); }

  bool is_yes_equal() const noexcept { return yes_; }
  bool is_unknown() const noexcept { return !yes_; }

 private:
  template <class K>
  friend auto with_id_eq_result(const TermRef& x, const TermRef& y, K&& k);

  explicit IdEqResult(bool yes) noexcept : yes_(yes) {}
  bool yes_;
};

/// Returns k(), short-circuiting to true when x and y are the same node.
/// Contract: same node implies k() == true.
template <class K>
bool with_id_eq(const TermRef& x, const TermRef& y, K&& k) {
  PrimitiveContext& ctx = primitive_context();
  const auto fast_path = [&ctx] { return !ctx.inject_fault; };
  switch (ctx.mode) {
    case PurityMode::Reference:
      return k();
    case PurityMode::Accelerated:
      return identity_equal(x, y) ? fast_path() : k();
    case PurityMode::DualCheck:
      break;
  }
  const bool reference = k();
  if (!identity_equal(x, y)) return reference;
  ++ctx.dual_checks;
  const bool accelerated = fast_path();
  if (accelerated != reference) {
    throw ContractViolation("with_id_eq: accelerated path answered " + std::string(accelerated ? "true" : "false") +
                            ", reference answered " + std::string(reference ? "true" : "false"));
  }
  return accelerated;
}

/// Identity-accelerated version of a reflexive relation.
template <class Rel>
auto with_id_rel(Rel rel) {
  return [rel = std::move(rel)](const TermRef& x, const TermRef& y) -> bool {
    return with_id_eq(x, y, [&] { return rel(x, y); });
  };
}

/// Calls k(YesEqual) when x and y are the same node, k(Unknown) otherwise.
/// Contract: the result of k does not depend on which of the two it receives.
template <class K>
auto with_id_eq_result(const TermRef& x, const TermRef& y, K&& k) {
  PrimitiveContext& ctx = primitive_context();
  const bool same = identity_equal(x, y);
  switch (ctx.mode) {
    case PurityMode::Reference:
      return k(IdEqResult::unknown());
    case PurityMode::Accelerated:
      return k(IdEqResult(same));
    case PurityMode::DualCheck:
      break;
  }
  if (!same) return k(IdEqResult::unknown());
  ++ctx.dual_checks;
  auto accelerated = k(IdEqResult(true));
  auto reference = k(IdEqResult::unknown());
  if (!(accelerated == reference)) throw ContractViolation("with_id_eq_result: continuation depends on the identity test");
  return accelerated;
}

/// Calls k with x's identity token (Accelerated) or with token 0 (Reference).
/// Contract: the result of k does not depend on the token value.
template <class K>
auto with_id_token(const TermRef& x, K&& k) {
  PrimitiveContext& ctx = primitive_context();
  switch (ctx.mode) {
    case PurityMode::Reference:
      return k(IdentityToken{0});
    case PurityMode::Accelerated:
      return k(x.identity());
    case PurityMode::DualCheck:
      break;
  }
  ++ctx.dual_checks;
  auto reference = k(IdentityToken{0});
  auto accelerated = k(x.identity());
  if (!(accelerated == reference)) throw ContractViolation("with_id_token: continuation depends on the token value");
  return accelerated;
}

/// Maximally shared copy of x. As a pure function this is the identity.
TermRef share_common(const TermRef& x);
TermRef share_common(const TermRef& x, VisitMeter& meter);

/// share_common that starts from, and extends, an existing state. Reference mode
/// returns x and leaves the state untouched.
TermRef with_share_common(const TermRef& x, ShareState& state);
TermRef with_share_common(const TermRef& x, ShareState& state, VisitMeter& meter);

}  // namespace termdag
