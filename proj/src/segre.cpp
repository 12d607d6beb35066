#include "frob/segre.hpp"

#include <functional>
#include <stdexcept>

namespace frob {

bool segre_membership(const Polynomial& f) {
  if (f.ctx().factors != 1)
    throw std::invalid_argument("segre_membership: expected a single-factor ring");
  for (auto& [e, c] : f.terms())
    if (e.degree_block(Block::X) != e.degree_block(Block::Y)) return false;
  return true;
}

bool tensor_segre_membership(const Polynomial& f) {
  for (auto& [e, c] : f.terms())
    for (uint16_t k = 1; k <= f.ctx().factors; ++k)
      if (e.degree_block_factor(Block::X, k) != e.degree_block_factor(Block::Y, k))
        return false;
  return true;
}

static ExpVec canonical_multiplier(const SegreContext& ctx) {
  int64_t q = ctx.q();
  ExpVec m;
  m.set(xvar(0), q - 2);
  for (int i = 1; i <= ctx.r; ++i) m.set(xvar(uint16_t(i)), q - 1);
  m.set(yvar(0), q - 2);
  for (int j = 1; j <= ctx.s; ++j) m.set(yvar(uint16_t(j)), q - 1);
  return m;
}

CartierMap canonical_splitting(const SegreContext& ctx) {
  if (ctx.q() < 2) throw std::invalid_argument("canonical_splitting: q must be >= 2");
  return CartierMap(ctx.e, Polynomial::monomial(ctx.ambient(), canonical_multiplier(ctx)));
}

bool canonical_multiplier_balanced(const SegreContext& ctx) {
  ExpVec m = canonical_multiplier(ctx);
  return m.degree_block(Block::X) == m.degree_block(Block::Y);
}

std::vector<ExpVec> balanced_monomials(const SegreContext& ctx, int64_t bound) {
  std::vector<ExpVec> out;
  int64_t half = bound / 2;  // X-deg = Y-deg = d needs total 2d <= bound
  // Enumerate x-side compositions of d into r+1 parts, then y-side into s+1.
  for (int64_t d = 0; d <= half; ++d) {
    std::vector<std::vector<int64_t>> xs, ys;
    std::function<void(int, int64_t, std::vector<int64_t>&, int, std::vector<std::vector<int64_t>>&)>
        rec = [&](int pos, int64_t left, std::vector<int64_t>& acc, int parts,
                  std::vector<std::vector<int64_t>>& sink) {
          if (pos == parts - 1) {
            acc.push_back(left);
            sink.push_back(acc);
            acc.pop_back();
            return;
          }
          for (int64_t v = 0; v <= left; ++v) {
            acc.push_back(v);
            rec(pos + 1, left - v, acc, parts, sink);
            acc.pop_back();
          }
        };
    std::vector<int64_t> acc;
    rec(0, d, acc, ctx.r + 1, xs);
    acc.clear();
    rec(0, d, acc, ctx.s + 1, ys);
    for (auto& a : xs) {
      for (auto& b : ys) {
        ExpVec e;
        for (int i = 0; i <= ctx.r; ++i)
          if (a[i]) e.set(xvar(uint16_t(i)), a[i]);
        for (int j = 0; j <= ctx.s; ++j)
          if (b[j]) e.set(yvar(uint16_t(j)), b[j]);
        out.push_back(std::move(e));
      }
    }
  }
  return out;
}

TraceRestrictionReport trace_restriction_check(const SegreContext& ctx, int degree_bound) {
  TraceRestrictionReport rep;
  if (degree_bound < 1) return rep;  // vacuous pass
  RingContext ring = ctx.ambient();
  for (auto& e : balanced_monomials(ctx, degree_bound)) {
    ++rep.checked;
    Polynomial tr = frobenius_trace(Polynomial::monomial(ring, e), ctx.e);
    if (!tr.is_zero() && !segre_membership(tr)) {
      rep.pass = false;
      rep.counterexample = e;
      return rep;
    }
  }
  return rep;
}

ExpVec SegreGenerator::underlying_monomial(const SegreContext& ctx) const {
  ExpVec m = rho.scaled(ctx.q());
  for (int i = 0; i <= ctx.r; ++i)
    if (alpha[size_t(i)]) m.bump(xvar(uint16_t(i)), alpha[size_t(i)]);
  for (int j = 0; j <= ctx.s; ++j)
    if (beta[size_t(j)]) m.bump(yvar(uint16_t(j)), beta[size_t(j)]);
  return m;
}

namespace {

// All exponent tuples (parts entries) with each entry in [0, q-1].
void enumerate_grids(int parts, int64_t q, std::vector<std::vector<int64_t>>& sink) {
  std::vector<int64_t> acc(size_t(parts), 0);
  std::function<void(int)> rec = [&](int pos) {
    if (pos == parts) {
      sink.push_back(acc);
      return;
    }
    for (int64_t v = 0; v < q; ++v) {
      acc[size_t(pos)] = v;
      rec(pos + 1);
    }
  };
  rec(0);
}

// All monomials of the given degree in the given variables.
void monomials_of_degree(const std::vector<VarId>& vars, int64_t deg,
                         std::vector<ExpVec>& sink) {
  ExpVec acc;
  std::function<void(size_t, int64_t)> rec = [&](size_t pos, int64_t left) {
    if (pos + 1 == vars.size()) {
      ExpVec e = acc;
      if (left) e.set(vars[pos], left);
      sink.push_back(std::move(e));
      return;
    }
    for (int64_t v = 0; v <= left; ++v) {
      if (v) acc.set(vars[pos], v);
      rec(pos + 1, left - v);
      if (v) acc.set(vars[pos], 0);
    }
  };
  rec(0, deg);
}

}  // namespace

std::vector<SegreGenerator> segre_module_generators(const SegreContext& ctx, int degree_bound) {
  if (!ctx.generators_precondition())
    throw std::invalid_argument("segre_module_generators: requires q > max{r+1, s+1}");
  return segre_module_generators_unchecked(ctx, degree_bound);
}

std::vector<SegreGenerator> segre_module_generators_unchecked(const SegreContext& ctx,
                                                              int degree_bound) {
  const int64_t q = ctx.q();
  std::vector<std::vector<int64_t>> alphas, betas;
  enumerate_grids(ctx.r + 1, q, alphas);
  enumerate_grids(ctx.s + 1, q, betas);

  std::vector<VarId> xv, yv;
  for (int i = 0; i <= ctx.r; ++i) xv.push_back(xvar(uint16_t(i)));
  for (int j = 0; j <= ctx.s; ++j) yv.push_back(yvar(uint16_t(j)));

  std::vector<SegreGenerator> out;
  for (auto& a : alphas) {
    int64_t asum = 0;
    for (int64_t v : a) asum += v;
    for (auto& b : betas) {
      int64_t bsum = 0;
      for (int64_t v : b) bsum += v;
      int64_t diff = bsum - asum;
      if (diff == 0) {
        out.push_back({SurplusSide::Balanced, ExpVec{}, a, b});
        continue;
      }
      if (diff % q != 0) continue;
      if (diff > 0) {
        int64_t mu = diff / q;  // outer x-monomial degree, capped at s
        if (mu > ctx.s || mu > degree_bound) continue;
        std::vector<ExpVec> rhos;
        monomials_of_degree(xv, mu, rhos);
        for (auto& rho : rhos) out.push_back({SurplusSide::XSurplus, rho, a, b});
      } else {
        int64_t nu = -diff / q;
        if (nu > ctx.r || nu > degree_bound) continue;
        std::vector<ExpVec> rhos;
        monomials_of_degree(yv, nu, rhos);
        for (auto& rho : rhos) out.push_back({SurplusSide::YSurplus, rho, a, b});
      }
    }
  }
  return out;
}

}  // namespace frob
