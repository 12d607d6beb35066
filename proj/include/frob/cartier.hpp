#pragma once

#include <cstdint>
#include <optional>

#include "frob/grobner.hpp"
#include "frob/poly.hpp"

namespace frob {

/// Euclidean split of an exponent vector at scale q = p^e:
/// a = mu*q + alpha with every alpha entry in [0, q-1].
struct FrobDecomp {
  ExpVec mu;
  ExpVec alpha;
  int e = 1;
};

FrobDecomp frob_decompose(const ExpVec& a, uint32_t p, int e);

/// A p^{-e}-linear map on a polynomial ring, in the normal form
/// F^e_* f |-> Phi^e(F^e_*(g * f)). Every element of Hom_S(F^e_* S, S)
/// has this shape for a unique g, so the pair (e, g) is a complete
/// representation. g must be nonzero.
class CartierMap {
 public:
  CartierMap(int e, Polynomial g);

  int level() const { return e_; }
  const Polynomial& multiplier() const { return g_; }
  const RingContext& ctx() const { return g_.ctx(); }
  int64_t q() const;

  bool operator==(const CartierMap& o) const { return e_ == o.e_ && g_ == o.g_; }

 private:
  int e_;
  Polynomial g_;
};

/// The Frobenius trace Phi^e: projects each monomial c*x^a to c*x^mu when
/// every variable of the ring has residue alpha_v = q-1, and to 0 otherwise.
/// Variables absent from a monomial count with exponent 0.
Polynomial frobenius_trace(const Polynomial& f, int e);

/// m applied to F^e_* f, i.e. Phi^e(F^e_*(g * f)).
Polynomial cartier_apply(const CartierMap& m, const Polynomial& f);

/// Twisted composition phi . psi = phi o F^e_* psi; the multiplier is
/// phi.g^(p^psi.e) * psi.g at level phi.e + psi.e.
CartierMap cartier_compose(const CartierMap& phi, const CartierMap& psi);

/// Right action (m . r)(-) = m(F^e_* r . -); requires r != 0.
CartierMap right_multiply(const CartierMap& m, const Polynomial& r);

/// Whether m(F^e_* I) is contained in I, decided on the complete spanning set
/// { x^alpha * g : g generator, alpha in [0,q-1]^vars }. Throws when the
/// spanning set would exceed `cap` elements.
bool ideal_compatible(const CartierMap& m, const IdealHandle& I,
                      uint64_t cap = 1000000);

struct CompatibilityWitness {
  Polynomial element;  // spanning element of F^e_* I
  Polynomial image;    // its image under m, outside I
};

/// First spanning element whose image escapes I, or nullopt when compatible.
std::optional<CompatibilityWitness> ideal_compatibility_counterexample(
    const CartierMap& m, const IdealHandle& I, uint64_t cap = 1000000);

/// Iterates all exponent boxes [0, bound]^vars of a ring context.
class BoxIterator {
 public:
  BoxIterator(const RingContext& ctx, int64_t bound);
  uint64_t count() const { return count_; }
  ExpVec at(uint64_t index) const;  // mixed-radix decode

 private:
  std::vector<VarId> vars_;
  int64_t bound_;
  uint64_t count_;
};

}  // namespace frob
