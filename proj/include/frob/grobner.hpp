#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "frob/poly.hpp"

namespace frob {

enum class OrderKind { Lex, GRevLex };

/// Total monomial order: lex or graded reverse lex over an explicit variable
/// priority list. An optional elimination prefix (compared first by total
/// degree on those variables) supports the internal intersection trick; it
/// never appears on user-facing ideals.
class MonomialOrder {
 public:
  static MonomialOrder grevlex(const RingContext& ctx);
  static MonomialOrder lex(const RingContext& ctx);
  static MonomialOrder lex(std::vector<VarId> priority);
  static MonomialOrder grevlex(std::vector<VarId> priority);

  /// Same order preceded by an elimination block of auxiliary variables.
  MonomialOrder with_elimination_prefix(std::vector<VarId> aux) const;

  OrderKind kind() const { return kind_; }
  const std::vector<VarId>& priority() const { return priority_; }

  /// <0, 0, >0 as a < b, a == b, a > b.
  int compare(const ExpVec& a, const ExpVec& b) const;
  bool less(const ExpVec& a, const ExpVec& b) const { return compare(a, b) < 0; }
  bool greater(const ExpVec& a, const ExpVec& b) const { return compare(a, b) > 0; }

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

 private:
  OrderKind kind_ = OrderKind::GRevLex;
  std::vector<VarId> priority_;
  std::vector<VarId> elim_;  // compared first, by total degree then grevlex
};

/// Ideal as a generator list with a lazily computed, cached reduced Groebner
/// basis for a fixed monomial order. The cache is single-writer: do not
/// mutate a handle shared across threads.
class IdealHandle {
 public:
  IdealHandle(RingContext ctx, std::vector<Polynomial> gens);
  IdealHandle(RingContext ctx, std::vector<Polynomial> gens, MonomialOrder order);

  const RingContext& ctx() const { return ctx_; }
  const std::vector<Polynomial>& generators() const { return gens_; }
  const MonomialOrder& order() const { return order_; }

  /// Reduced Groebner basis (monic, auto-reduced). Computed once via
  /// Buchberger with the sugar strategy; every emitted basis is re-checked
  /// post hoc (all S-polynomials reduce to zero) before caching.
  const std::vector<Polynomial>& groebner_basis() const;

  bool is_zero_ideal() const { return groebner_basis().empty(); }
  bool is_unit_ideal() const;

 private:
  RingContext ctx_;
  std::vector<Polynomial> gens_;
  MonomialOrder order_;
  mutable std::shared_ptr<const std::vector<Polynomial>> basis_;
};

/// Remainder of f on division by the reduced basis of I.
Polynomial normal_form(const Polynomial& f, const IdealHandle& I);

bool ideal_membership(const Polynomial& f, const IdealHandle& I);

/// All m-fold products of the generators, deduplicated.
IdealHandle ideal_power(const IdealHandle& I, int m);

/// Ideal quotient (I : f), computed by intersecting I with (f) via an
/// elimination variable and dividing the result by f.
IdealHandle ideal_colon(const IdealHandle& I, const Polynomial& f);

/// Saturation (I : f^infinity) by iterated colon; the reported fixed point
/// is certified by one extra iteration.
IdealHandle colon_saturation(const IdealHandle& I, const Polynomial& f);

bool ideal_containment(const IdealHandle& I, const IdealHandle& J);
bool ideal_equal(const IdealHandle& I, const IdealHandle& J);

IdealHandle ideal_sum(const IdealHandle& I, const IdealHandle& J);

}  // namespace frob
