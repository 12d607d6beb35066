#include "frob/testideal.hpp"

#include <numeric>
#include <stdexcept>

#include "frob/cartier.hpp"

namespace frob {

RationalExponent::RationalExponent(int64_t n, int64_t d) : num(n), den(d) {
  if (den == 0) throw std::invalid_argument("RationalExponent: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (num < 0) throw std::invalid_argument("RationalExponent: negative exponent");
  int64_t g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (num == 0) den = 1;
}

IdealHandle trace_image_ideal(int e, const IdealHandle& J, uint64_t cap) {
  if (e < 1) throw std::invalid_argument("trace_image_ideal: e must be >= 1");
  const RingContext& ctx = J.ctx();
  const int64_t q = checked_pow(ctx.p, e);
  std::vector<Polynomial> images;

  auto add_image = [&](const Polynomial& img) {
    if (img.is_zero()) return;
    for (auto& g : images)
      if (g == img) return;
    images.push_back(img);
  };

  std::vector<Polynomial> general;
  for (auto& g : J.generators()) {
    if (g.is_zero()) continue;
    if (g.term_count() == 1) {
      // Single monomial: exactly one alpha gives a nonzero trace, with image
      // exponents floor(c_v / q).
      const ExpVec& c = g.terms().begin()->first;
      ExpVec img;
      for (auto& [v, exp] : c.entries()) {
        int64_t m = exp / q;
        if (m) img.set(v, m);
      }
      add_image(Polynomial::monomial(ctx, img, g.terms().begin()->second.value()));
    } else {
      general.push_back(g);
    }
  }
  if (!general.empty()) {
    BoxIterator box(ctx, q - 1);
    if (box.count() * general.size() > cap)
      throw std::runtime_error("trace_image_ideal: spanning set exceeds cap");
    for (auto& g : general)
      for (uint64_t i = 0; i < box.count(); ++i)
        add_image(frobenius_trace(Polynomial::monomial(ctx, box.at(i)) * g, e));
  }
  if (images.empty()) images.push_back(Polynomial::zero(ctx));
  return IdealHandle(ctx, std::move(images), J.order());
}

TestIdealResult test_ideal_bms(const IdealHandle& a, const RationalExponent& t, int e_max) {
  if (e_max < 1) throw std::invalid_argument("test_ideal_bms: e_max must be >= 1");
  bool nonzero = false;
  for (auto& g : a.generators()) nonzero |= !g.is_zero();
  if (!nonzero) throw std::invalid_argument("test_ideal_bms: ideal must contain a nonzero element");

  TestIdealResult out{a, std::nullopt, {}, t.den % int64_t(a.ctx().p) == 0};
  for (int e = 1; e <= e_max; ++e) {
    int64_t q = checked_pow(a.ctx().p, e);
    int64_t power = t.ceil_times(q);
    IdealHandle level = power == 0 ? IdealHandle(a.ctx(), {Polynomial::constant(a.ctx(), 1)})
                                   : trace_image_ideal(e, ideal_power(a, int(power)));
    if (!out.chain.empty() && !out.denominator_warning) {
      // The standard chain ascends; a drop means a bug, not a result.
      if (!ideal_containment(out.chain.back(), level))
        throw std::logic_error("test_ideal_bms: chain failed to ascend");
    }
    if (!out.chain.empty() && ideal_equal(out.chain.back(), level)) {
      out.stabilized_at_e = e - 1;
      out.chain.push_back(level);
      out.ideal = out.chain[size_t(e - 2)];
      return out;
    }
    out.chain.push_back(level);
  }
  out.ideal = out.chain.back();
  return out;  // unstabilized: stabilized_at_e empty
}

bool ceiling_identity_check(int64_t m, const RationalExponent& t, int64_t q) {
  if (m < 1 || q < 2) throw std::invalid_argument("ceiling_identity_check: m >= 1, q >= 2");
  int64_t lhs = ceil_div(m * t.num * (q - 1), t.den);   // ceil(m t (q-1))
  int64_t mid = m * ceil_div(t.num * (q - 1), t.den);   // m ceil(t (q-1))
  return lhs <= mid && mid <= lhs + m;
}

CheckOutcome subadditivity_check(const IdealHandle& a, const RationalExponent& t, int n,
                                 int e_max) {
  if (n < 1) throw std::invalid_argument("subadditivity_check: n must be >= 1");
  TestIdealResult lhs = test_ideal_bms(a, t.times(n), e_max);
  TestIdealResult rhs = test_ideal_bms(a, t, e_max);
  if (!lhs.stabilized_at_e || !rhs.stabilized_at_e) return CheckOutcome::Inconclusive;
  IdealHandle rhs_power = n == 1 ? rhs.ideal : ideal_power(rhs.ideal, n);
  return ideal_containment(lhs.ideal, rhs_power) ? CheckOutcome::True : CheckOutcome::False;
}

CheckOutcome briancon_skoda_check(const IdealHandle& q_ideal, int h, int e_max) {
  if (int(q_ideal.generators().size()) > h)
    throw std::invalid_argument("briancon_skoda_check: ideal needs <= h generators");
  TestIdealResult tau = test_ideal_bms(q_ideal, RationalExponent(h, 1), e_max);
  if (!tau.stabilized_at_e) return CheckOutcome::Inconclusive;
  return ideal_containment(tau.ideal, q_ideal) ? CheckOutcome::True : CheckOutcome::False;
}

IdealHandle dn_truncated_test_ideal(const RingContext& base, int n, int e,
                                    const IdealHandle& a, const RationalExponent& t,
                                    uint64_t cap) {
  if (!(a.ctx() == base)) throw std::invalid_argument("dn_truncated_test_ideal: context mismatch");
  const int64_t q = checked_pow(base.p, e);
  std::vector<CartierMap> maps = dn_level_basis(base, n, e, q - 1);

  int64_t power = t.ceil_times(q - 1);
  std::vector<Polynomial> ugens;
  if (power == 0) {
    ugens.push_back(Polynomial::constant(base, 1));
  } else {
    IdealHandle ap = ideal_power(a, int(power));
    ugens = ap.generators();
  }

  BoxIterator box(base, q - 1);
  if (box.count() * maps.size() * ugens.size() > cap)
    throw std::runtime_error("dn_truncated_test_ideal: spanning set exceeds cap");

  std::vector<Polynomial> images;
  for (auto& phi : maps) {
    for (auto& u : ugens) {
      for (uint64_t i = 0; i < box.count(); ++i) {
        Polynomial img = cartier_apply(phi, Polynomial::monomial(base, box.at(i)) * u);
        if (img.is_zero()) continue;
        bool dup = false;
        for (auto& g : images)
          if (g == img) {
            dup = true;
            break;
          }
        if (!dup) images.push_back(img);
      }
    }
  }
  if (images.empty()) images.push_back(Polynomial::zero(base));
  return IdealHandle(base, std::move(images), a.order());
}

}  // namespace frob
