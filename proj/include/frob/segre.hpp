#pragma once

#include <optional>
#include <string>
#include <vector>

#include "frob/cartier.hpp"

namespace frob {

/// Parameters of the Segre product K[x_0..x_r] # K[y_0..y_s] realized inside
/// the ambient polynomial ring S = K[x_0..x_r, y_0..y_s], together with a
/// fixed Frobenius level e and q = p^e.
struct SegreContext {
  uint32_t p = 2;
  int e = 1;
  int r = 1;
  int s = 1;

  int64_t q() const { return checked_pow(p, e); }
  RingContext ambient() const {
    return {p, uint16_t(r + 1), uint16_t(s + 1), 1};
  }
  RingContext tensor(int n) const {
    return {p, uint16_t(r + 1), uint16_t(s + 1), uint16_t(n)};
  }
  /// The module-generator enumeration assumes q > max{r+1, s+1}.
  bool generators_precondition() const { return q() > std::max(r + 1, s + 1); }
};

/// True iff every monomial of f has equal total X- and Y-degree. f must live
/// in a single-factor ring.
bool segre_membership(const Polynomial& f);

/// Per-factor balance in a tensor ring: every monomial has equal X- and
/// Y-degree within each tensor factor separately.
bool tensor_segre_membership(const Polynomial& f);

/// The splitting candidate phi_e = Phi^e . x_0^{q-2} x_1^{q-1} ... y_s^{q-1}.
/// Always satisfies phi_e(F^e_* x_0 y_0) = 1. The multiplier monomial is
/// balanced exactly when r == s; for r != s it is an ambient element whose
/// induced map still restricts (see canonical_multiplier_balanced).
CartierMap canonical_splitting(const SegreContext& ctx);

bool canonical_multiplier_balanced(const SegreContext& ctx);

struct TraceRestrictionReport {
  bool pass = true;
  uint64_t checked = 0;
  std::optional<ExpVec> counterexample;
};

/// Checks Phi^e(F^e_* m) lands back in the Segre subring (zero or balanced)
/// for every balanced monomial m of total degree <= degree_bound.
TraceRestrictionReport trace_restriction_check(const SegreContext& ctx, int degree_bound);

enum class SurplusSide { Balanced, XSurplus, YSurplus };

/// One R-module generator descriptor for F^e_* R inside F^e_* S:
/// rho * F^e_*(x^alpha y^beta) with all inner exponents in [0, q-1].
/// XSurplus: rho is a monomial in the x-block with deg(rho)*q = beta - alpha;
/// YSurplus symmetrically with alpha - beta; Balanced: rho empty, alpha = beta
/// as aggregate degrees.
struct SegreGenerator {
  SurplusSide side = SurplusSide::Balanced;
  ExpVec rho;                 // outer monomial (x's or y's), possibly empty
  std::vector<int64_t> alpha; // inner x-exponents, indexed 0..r
  std::vector<int64_t> beta;  // inner y-exponents, indexed 0..s

  /// The plain monomial rho^q * x^alpha y^beta underlying the generator.
  ExpVec underlying_monomial(const SegreContext& ctx) const;
};

/// Enumerates all generator descriptors with outer monomial degree
/// <= degree_bound. Requires q > max{r+1, s+1}.
std::vector<SegreGenerator> segre_module_generators(const SegreContext& ctx, int degree_bound);

/// Same enumeration without the q guard. The descriptor bounds
/// |beta - alpha| <= max(r, s) * q hold for every q >= 2 (any multiple of q
/// below (s+1)q is at most sq), which is what the lifting verification
/// sweeps rely on at q = 2.
std::vector<SegreGenerator> segre_module_generators_unchecked(const SegreContext& ctx,
                                                              int degree_bound);

/// All balanced monomials (X-deg == Y-deg) of total degree <= bound.
std::vector<ExpVec> balanced_monomials(const SegreContext& ctx, int64_t bound);

}  // namespace frob
