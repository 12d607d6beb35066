#pragma once

#include <optional>
#include <vector>

#include "frob/diagonal.hpp"
#include "frob/grobner.hpp"

namespace frob {

/// Exact rational exponent t = num/den, reduced, den >= 1, num >= 0.
/// Real exponents enter the theory only through ceilings, and rationals
/// reach every ceiling value.
struct RationalExponent {
  int64_t num = 1;
  int64_t den = 1;

  RationalExponent() = default;
  RationalExponent(int64_t n, int64_t d);

  /// ceil(t * m) in exact integer arithmetic.
  int64_t ceil_times(int64_t m) const { return ceil_div(num * m, den); }
  RationalExponent times(int64_t m) const { return {num * m, den}; }
};

struct TestIdealResult {
  IdealHandle ideal;
  std::optional<int> stabilized_at_e;
  std::vector<IdealHandle> chain;  // chain[i] is level e = i+1
  bool denominator_warning = false;  // p divides den(t)
};

/// Ideal generated by Phi^e(F^e_*(x^alpha * g)) over generators g of J and
/// alpha in [0, q-1]^vars -- a complete spanning set for Phi^e(F^e_* J).
/// Monomial generators take the closed-form single-alpha shortcut.
IdealHandle trace_image_ideal(int e, const IdealHandle& J, uint64_t cap = 1000000);

/// Ascending-chain test ideal in a polynomial ring:
/// chain[e] = Phi^e(F^e_* a^{ceil(t p^e)}), stabilization declared on the
/// first equality of consecutive levels.
TestIdealResult test_ideal_bms(const IdealHandle& a, const RationalExponent& t, int e_max);

/// ceil(m t (q-1)) <= m ceil(t (q-1)) <= ceil(m t (q-1)) + m, exactly.
bool ceiling_identity_check(int64_t m, const RationalExponent& t, int64_t q);

enum class CheckOutcome { True, False, Inconclusive };

/// tau(a^{t n}) subset of tau(a^t)^n over a polynomial ring (where the
/// diagonal Cartier algebra is the full one). Inconclusive when either chain
/// fails to stabilize by e_max.
CheckOutcome subadditivity_check(const IdealHandle& a, const RationalExponent& t, int n,
                                 int e_max);

/// Briancon-Skoda: tau(q^h) subset of q for q generated by at most h
/// elements.
CheckOutcome briancon_skoda_check(const IdealHandle& q_ideal, int h, int e_max);

/// One fixed-e lower approximation of the diagonal test ideal: the ideal
/// generated by phi(F^e_*(x^c * u)) over a basis {phi} of the level-e
/// diagonally-liftable maps, generators u of a^{ceil(t(q-1))}, and spanning
/// multipliers c in [0, q-1]^vars. This is one ascending-chain level, not
/// the limit.
IdealHandle dn_truncated_test_ideal(const RingContext& base, int n, int e,
                                    const IdealHandle& a, const RationalExponent& t,
                                    uint64_t cap = 1000000);

}  // namespace frob
