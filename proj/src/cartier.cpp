#include "frob/cartier.hpp"

#include <stdexcept>

namespace frob {

FrobDecomp frob_decompose(const ExpVec& a, uint32_t p, int e) {
  if (e < 1) throw std::invalid_argument("frob_decompose: e must be >= 1");
  int64_t q = checked_pow(p, e);
  FrobDecomp d;
  d.e = e;
  for (auto& [v, exp] : a.entries()) {
    int64_t mu = exp / q;
    int64_t alpha = exp - mu * q;
    if (mu) d.mu.set(v, mu);
    if (alpha) d.alpha.set(v, alpha);
  }
  return d;
}

CartierMap::CartierMap(int e, Polynomial g) : e_(e), g_(std::move(g)) {
  if (e_ < 1) throw std::invalid_argument("CartierMap: level e must be >= 1");
  if (g_.is_zero()) throw std::invalid_argument("CartierMap: multiplier must be nonzero");
}

int64_t CartierMap::q() const { return checked_pow(g_.ctx().p, e_); }

Polynomial frobenius_trace(const Polynomial& f, int e) {
  if (e < 1) throw std::invalid_argument("frobenius_trace: e must be >= 1");
  const RingContext& ctx = f.ctx();
  int64_t q = checked_pow(ctx.p, e);
  const size_t nvars = ctx.var_count();
  Polynomial out(ctx);
  for (auto& [ev, c] : f.terms()) {
    // Each of the ring's variables must carry residue q-1; a monomial whose
    // support misses any variable contributes nothing (residue 0 != q-1).
    if (ev.support_size() < nvars) continue;
    ExpVec mu;
    bool hit = true;
    for (auto& [v, exp] : ev.entries()) {
      if (v.block == Block::Aux) throw std::invalid_argument("frobenius_trace: aux variable");
      int64_t m = exp / q;
      if (exp - m * q != q - 1) {
        hit = false;
        break;
      }
      if (m) mu.set(v, m);
    }
    if (hit) out.add_term(mu, c);
  }
  return out;
}

Polynomial cartier_apply(const CartierMap& m, const Polynomial& f) {
  if (!(m.ctx() == f.ctx())) throw std::invalid_argument("cartier_apply: ring context mismatch");
  return frobenius_trace(m.multiplier() * f, m.level());
}

CartierMap cartier_compose(const CartierMap& phi, const CartierMap& psi) {
  if (!(phi.ctx() == psi.ctx()))
    throw std::invalid_argument("cartier_compose: ring context mismatch");
  Polynomial g = frobenius_power(phi.multiplier(), psi.level()) * psi.multiplier();
  return CartierMap(phi.level() + psi.level(), std::move(g));
}

CartierMap right_multiply(const CartierMap& m, const Polynomial& r) {
  if (r.is_zero()) throw std::invalid_argument("right_multiply: r must be nonzero");
  return CartierMap(m.level(), m.multiplier() * r);
}

BoxIterator::BoxIterator(const RingContext& ctx, int64_t bound)
    : vars_(ctx.variables()), bound_(bound) {
  if (bound < 0) throw std::invalid_argument("BoxIterator: negative bound");
  uint64_t c = 1;
  for (size_t i = 0; i < vars_.size(); ++i) {
    if (c > UINT64_MAX / uint64_t(bound + 1)) throw std::overflow_error("BoxIterator: overflow");
    c *= uint64_t(bound + 1);
  }
  count_ = c;
}

ExpVec BoxIterator::at(uint64_t index) const {
  ExpVec e;
  uint64_t radix = uint64_t(bound_) + 1;
  for (auto& v : vars_) {
    int64_t digit = int64_t(index % radix);
    index /= radix;
    if (digit) e.set(v, digit);
  }
  return e;
}

std::optional<CompatibilityWitness> ideal_compatibility_counterexample(
    const CartierMap& m, const IdealHandle& I, uint64_t cap) {
  if (!(m.ctx() == I.ctx())) throw std::invalid_argument("ideal_compatible: context mismatch");
  int64_t q = m.q();
  BoxIterator box(m.ctx(), q - 1);
  uint64_t total = box.count() * std::max<uint64_t>(1, I.generators().size());
  if (box.count() > cap || total > cap)
    throw std::runtime_error("ideal_compatible: spanning set exceeds cap");
  for (auto& g : I.generators()) {
    for (uint64_t i = 0; i < box.count(); ++i) {
      Polynomial span = Polynomial::monomial(m.ctx(), box.at(i)) * g;
      Polynomial image = cartier_apply(m, span);
      if (!ideal_membership(image, I)) return CompatibilityWitness{span, image};
    }
  }
  return std::nullopt;
}

bool ideal_compatible(const CartierMap& m, const IdealHandle& I, uint64_t cap) {
  return !ideal_compatibility_counterexample(m, I, cap).has_value();
}

}  // namespace frob
