#include "frob/diagonal.hpp"

#include <atomic>
#include <functional>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "frob/util.hpp"

namespace frob {

uint64_t DiagonalContext::basis_count() const {
  uint64_t q = uint64_t(base.q());
  uint64_t vars = uint64_t(base.r + base.s + 2) * uint64_t(n);
  uint64_t c = 1;
  for (uint64_t i = 0; i < vars; ++i) {
    if (c > (uint64_t(1) << 62) / q) throw std::overflow_error("basis_count: overflow");
    c *= q;
  }
  return c;
}

BasisExponent::BasisExponent(DiagonalContext ctx, std::vector<int64_t> a,
                             std::vector<int64_t> b)
    : ctx_(ctx), a_(std::move(a)), b_(std::move(b)) {
  const int64_t q = ctx_.base.q();
  if (a_.size() != size_t(ctx_.base.r + 1) * ctx_.n ||
      b_.size() != size_t(ctx_.base.s + 1) * ctx_.n)
    throw std::invalid_argument("BasisExponent: grid shape mismatch");
  for (int64_t v : a_)
    if (v < 0 || v >= q) throw std::invalid_argument("BasisExponent: entry outside [0,q-1]");
  for (int64_t v : b_)
    if (v < 0 || v >= q) throw std::invalid_argument("BasisExponent: entry outside [0,q-1]");
}

BasisExponent BasisExponent::from_monomial(const DiagonalContext& ctx, const ExpVec& m) {
  std::vector<int64_t> a(size_t(ctx.base.r + 1) * ctx.n, 0);
  std::vector<int64_t> b(size_t(ctx.base.s + 1) * ctx.n, 0);
  for (auto& [v, e] : m.entries()) {
    if (v.block == Block::X)
      a[size_t(v.factor - 1) * (ctx.base.r + 1) + v.index] = e;
    else if (v.block == Block::Y)
      b[size_t(v.factor - 1) * (ctx.base.s + 1) + v.index] = e;
    else
      throw std::invalid_argument("BasisExponent: aux variable");
  }
  return BasisExponent(ctx, std::move(a), std::move(b));
}

int64_t BasisExponent::col_sum_a(int i) const {
  int64_t s = 0;
  for (int k = 1; k <= ctx_.n; ++k) s += a(i, k);
  return s;
}

int64_t BasisExponent::col_sum_b(int j) const {
  int64_t s = 0;
  for (int k = 1; k <= ctx_.n; ++k) s += b(j, k);
  return s;
}

int64_t BasisExponent::row_sum_a(int k) const {
  int64_t s = 0;
  for (int i = 0; i <= ctx_.base.r; ++i) s += a(i, k);
  return s;
}

int64_t BasisExponent::row_sum_b(int k) const {
  int64_t s = 0;
  for (int j = 0; j <= ctx_.base.s; ++j) s += b(j, k);
  return s;
}

ExpVec BasisExponent::monomial() const {
  ExpVec m;
  for (int k = 1; k <= ctx_.n; ++k) {
    for (int i = 0; i <= ctx_.base.r; ++i)
      if (a(i, k)) m.set(xvar(uint16_t(i), uint16_t(k)), a(i, k));
    for (int j = 0; j <= ctx_.base.s; ++j)
      if (b(j, k)) m.set(yvar(uint16_t(j), uint16_t(k)), b(j, k));
  }
  return m;
}

IdealHandle diagonal_ideal(const RingContext& base, int n) {
  if (n < 2) throw std::invalid_argument("diagonal_ideal: n must be >= 2");
  if (base.factors != 1) throw std::invalid_argument("diagonal_ideal: base ring expected");
  RingContext t = base.tensor_ring(uint16_t(n));
  std::vector<Polynomial> gens;
  for (auto& v : base.variables()) {
    for (uint16_t k = 2; k <= n; ++k) {
      VarId v1 = v, vk = v;
      v1.factor = 1;
      vk.factor = k;
      gens.push_back(Polynomial::variable(t, v1) - Polynomial::variable(t, vk));
    }
  }
  return IdealHandle(t, std::move(gens));
}

Polynomial delta_eval(const Polynomial& f) {
  RingContext base = f.ctx().base_ring();
  Polynomial out(base);
  for (auto& [e, c] : f.terms()) {
    ExpVec collapsed;
    for (auto& [v, exp] : e.entries()) {
      if (v.block == Block::Aux) throw std::invalid_argument("delta_eval: aux variable");
      VarId w = v;
      w.factor = 1;
      collapsed.bump(w, exp);
    }
    out.add_term(collapsed, c);
  }
  return out;
}

bool lala_check(const BasisExponent& b) {
  const int64_t q = b.ctx().base.q();
  if (pos_mod(b.col_sum_a(0), q) != 1) return false;
  if (pos_mod(b.col_sum_b(0), q) != 1) return false;
  for (int i = 1; i <= b.ctx().base.r; ++i)
    if (pos_mod(b.col_sum_a(i), q) != 0) return false;
  for (int j = 1; j <= b.ctx().base.s; ++j)
    if (pos_mod(b.col_sum_b(j), q) != 0) return false;
  return true;
}

Polynomial psi_eval(const BasisExponent& b) {
  const SegreContext& sc = b.ctx().base;
  RingContext base = sc.ambient();
  if (!lala_check(b)) return Polynomial::zero(base);
  const int64_t q = sc.q();
  ExpVec m;
  for (int i = 0; i <= sc.r; ++i) {
    int64_t u = floor_div(b.col_sum_a(i), q);
    if (u) m.set(xvar(uint16_t(i)), u);
  }
  for (int j = 0; j <= sc.s; ++j) {
    int64_t u = floor_div(b.col_sum_b(j), q);
    if (u) m.set(yvar(uint16_t(j)), u);
  }
  return Polynomial::monomial(base, m);
}

namespace {

// Sends a base-ring monomial into tensor factor k.
ExpVec embed_in_factor(const ExpVec& m, uint16_t k) {
  ExpVec out;
  for (auto& [v, e] : m.entries()) {
    VarId w = v;
    w.factor = k;
    out.set(w, e);
  }
  return out;
}

// Removes `amount` from the pool, lowest variable index first, and returns
// the extracted monomial (variables of the given block, base ring).
ExpVec extract_lowest(std::vector<int64_t>& pool, int64_t amount, Block blk) {
  ExpVec got;
  for (size_t i = 0; i < pool.size() && amount > 0; ++i) {
    int64_t take = std::min(pool[i], amount);
    if (take) {
      got.set({blk, uint16_t(i), 1}, take);
      pool[i] -= take;
      amount -= take;
    }
  }
  if (amount > 0) throw std::logic_error("lift_basis_image: extraction infeasible");
  return got;
}

}  // namespace

LiftImage lift_basis_image(const BasisExponent& b) {
  const DiagonalContext& ctx = b.ctx();
  const SegreContext& sc = ctx.base;
  const int64_t q = sc.q();
  RingContext tensor = ctx.tensor();

  LiftImage out{Polynomial::zero(tensor), LiftCase::LalaFail, {}, {}, ExpVec{}};

  bool imbalanced = false;
  for (int k = 1; k <= ctx.n; ++k)
    if (pos_mod(b.row_sum_b(k) - b.row_sum_a(k), q) != 0) imbalanced = true;

  if (imbalanced) {
    // psi placed whole into factor 1; the basis element meets no multiple
    // of F^e_* R^{otimes n}, so only the diagram identity matters here.
    out.kase = LiftCase::FactorImbalance;
    Polynomial psi = psi_eval(b);  // zero when the column condition fails
    if (!psi.is_zero())
      out.value = Polynomial::monomial(tensor, embed_in_factor(psi.terms().begin()->first, 1));
    return out;
  }
  if (!lala_check(b)) return out;

  out.kase = LiftCase::MainCase;
  std::vector<int64_t> xpool(size_t(sc.r + 1), 0), ypool(size_t(sc.s + 1), 0);
  for (int i = 0; i <= sc.r; ++i) xpool[size_t(i)] = floor_div(b.col_sum_a(i), q);
  for (int j = 0; j <= sc.s; ++j) ypool[size_t(j)] = floor_div(b.col_sum_b(j), q);

  ExpVec total;  // accumulated tensor monomial
  out.f_factors.assign(size_t(ctx.n), ExpVec{});
  out.g_factors.assign(size_t(ctx.n), ExpVec{});
  for (int k = 1; k <= ctx.n; ++k) {
    int64_t diff = b.row_sum_b(k) - b.row_sum_a(k);
    if (diff >= 0) {
      ExpVec gk = extract_lowest(ypool, diff / q, Block::Y);
      out.g_factors[size_t(k - 1)] = gk;
      total = total.times(embed_in_factor(gk, uint16_t(k)));
    } else {
      ExpVec fk = extract_lowest(xpool, (-diff) / q, Block::X);
      out.f_factors[size_t(k - 1)] = fk;
      total = total.times(embed_in_factor(fk, uint16_t(k)));
    }
  }
  ExpVec residual;
  for (size_t i = 0; i < xpool.size(); ++i)
    if (xpool[i]) residual.set(xvar(uint16_t(i)), xpool[i]);
  for (size_t j = 0; j < ypool.size(); ++j)
    if (ypool[j]) residual.set(yvar(uint16_t(j)), ypool[j]);
  out.residual = residual;
  total = total.times(embed_in_factor(residual, uint16_t(ctx.n)));
  out.value = Polynomial::monomial(tensor, total);
  return out;
}

bool balance_identity_check(const BasisExponent& b) {
  const int64_t q = b.ctx().base.q();
  if (!lala_check(b))
    throw std::invalid_argument("balance_identity_check: column condition fails");
  for (int k = 1; k <= b.ctx().n; ++k)
    if (pos_mod(b.row_sum_b(k) - b.row_sum_a(k), q) != 0)
      throw std::invalid_argument("balance_identity_check: factor unbalanced mod q");

  int64_t lhs = 0, mu_plus = 0, nu_plus = 0;
  for (int k = 1; k <= b.ctx().n; ++k) {
    int64_t diff = b.row_sum_b(k) - b.row_sum_a(k);
    lhs += diff;
    if (diff >= 0)
      mu_plus += diff / q;
    else
      nu_plus += (-diff) / q;
  }
  int64_t ux = 0, uy = 0;
  for (int i = 0; i <= b.ctx().base.r; ++i) ux += floor_div(b.col_sum_a(i), q);
  for (int j = 0; j <= b.ctx().base.s; ++j) uy += floor_div(b.col_sum_b(j), q);

  bool balanced = lhs == q * (uy - ux);
  bool enough = (uy >= mu_plus) && (ux >= nu_plus);
  return balanced && enough;
}

LiftVerifyReport verify_lift(const DiagonalContext& ctx, int degree_bound, uint64_t cap,
                             int threads) {
  LiftVerifyReport rep;
  const uint64_t count = ctx.basis_count();
  if (count > cap) throw std::runtime_error("verify_lift: basis count exceeds cap");
  const int64_t q = ctx.base.q();
  BoxIterator box(ctx.tensor(), q - 1);

  std::atomic<uint64_t> first_bad{UINT64_MAX};
  parallel_for(count, threads, [&](uint64_t idx) {
    BasisExponent be = BasisExponent::from_monomial(ctx, box.at(idx));
    LiftImage img = lift_basis_image(be);
    bool ok = delta_eval(img.value) == psi_eval(be);
    if (ok && img.kase == LiftCase::MainCase && !img.value.is_zero()) {
      const ExpVec& mono = img.value.terms().begin()->first;
      for (int k = 1; k <= ctx.n && ok; ++k) {
        int64_t want = (be.row_sum_b(k) - be.row_sum_a(k)) / q;
        int64_t have = mono.degree_block_factor(Block::Y, uint16_t(k)) -
                       mono.degree_block_factor(Block::X, uint16_t(k));
        ok = want == have;
      }
    }
    if (!ok) {
      uint64_t prev = first_bad.load();
      while (idx < prev && !first_bad.compare_exchange_weak(prev, idx)) {
      }
    }
  });
  rep.basis_checked = count;
  if (first_bad.load() != UINT64_MAX) {
    rep.pass = false;
    std::ostringstream os;
    os << "diagram identity fails on basis monomial "
       << Polynomial::monomial(ctx.tensor(), box.at(first_bad.load())).to_string();
    rep.counterexample = os.str();
    return rep;
  }

  // Part 2: images of generator tensor products stay per-factor balanced.
  auto gens = segre_module_generators_unchecked(ctx.base, degree_bound);
  uint64_t tuples = 1;
  for (int k = 0; k < ctx.n; ++k) {
    if (gens.size() && tuples > cap / gens.size())
      throw std::runtime_error("verify_lift: generator tuple count exceeds cap");
    tuples *= gens.size();
  }
  std::atomic<uint64_t> bad_tuple{UINT64_MAX};
  parallel_for(tuples, threads, [&](uint64_t t) {
    std::vector<int64_t> a(size_t(ctx.base.r + 1) * ctx.n, 0);
    std::vector<int64_t> b(size_t(ctx.base.s + 1) * ctx.n, 0);
    ExpVec outer;
    uint64_t rest = t;
    for (int k = 1; k <= ctx.n; ++k) {
      const SegreGenerator& g = gens[size_t(rest % gens.size())];
      rest /= gens.size();
      for (int i = 0; i <= ctx.base.r; ++i)
        a[size_t(k - 1) * (ctx.base.r + 1) + i] = g.alpha[size_t(i)];
      for (int j = 0; j <= ctx.base.s; ++j)
        b[size_t(k - 1) * (ctx.base.s + 1) + j] = g.beta[size_t(j)];
      outer = outer.times(embed_in_factor(g.rho, uint16_t(k)));
    }
    BasisExponent be(ctx, std::move(a), std::move(b));
    Polynomial img =
        Polynomial::monomial(ctx.tensor(), outer) * lift_basis_image(be).value;
    if (!tensor_segre_membership(img)) {
      uint64_t prev = bad_tuple.load();
      while (t < prev && !bad_tuple.compare_exchange_weak(prev, t)) {
      }
    }
  });
  rep.products_checked = tuples;
  if (bad_tuple.load() != UINT64_MAX) {
    rep.pass = false;
    rep.counterexample = "generator product image leaves the Segre tensor ring (tuple #" +
                         std::to_string(bad_tuple.load()) + ")";
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Linear systems for D^(n) membership and witnesses.

namespace {

struct SparseRow {
  std::vector<std::pair<size_t, uint32_t>> entries;  // sorted by column
  uint32_t rhs = 0;

  size_t hash(uint32_t p) const {
    size_t h = 1469598103934665603ULL ^ p;
    for (auto& [c, v] : entries) {
      hash_combine(h, c);
      hash_combine(h, v);
    }
    hash_combine(h, rhs);
    return h;
  }
};

// Accumulates condition polynomials whose coefficients are linear forms in
// the unknown columns; one SparseRow per distinct base-ring monomial.
class ConditionBuilder {
 public:
  explicit ConditionBuilder(uint32_t p) : p_(p) {}

  void add(const ExpVec& monomial, size_t col, int64_t coef) {
    auto& m = groups_[monomial];
    m[col] = uint32_t(pos_mod(m.count(col) ? int64_t(m[col]) + coef : coef, p_));
  }

  void add_rhs(const ExpVec& monomial, uint32_t coef) {
    rhs_[monomial] = uint32_t((rhs_.count(monomial) ? rhs_[monomial] + uint64_t(coef) : coef) % p_);
  }

  // Emits one row per monomial into `sink` and clears the builder.
  template <typename Sink>
  void flush(Sink&& sink) {
    for (auto& [mono, cols] : groups_) {
      SparseRow row;
      for (auto& [c, v] : cols)
        if (v % p_) row.entries.push_back({c, uint32_t(v % p_)});
      auto it = rhs_.find(mono);
      row.rhs = it == rhs_.end() ? 0 : it->second;
      rhs_.erase(mono);
      if (!row.entries.empty() || row.rhs) sink(std::move(row));
    }
    for (auto& [mono, v] : rhs_) {
      if (v % p_) {
        SparseRow row;
        row.rhs = v % p_;
        sink(std::move(row));  // 0 = nonzero constant: inconsistent row
      }
    }
    groups_.clear();
    rhs_.clear();
  }

 private:
  uint32_t p_;
  std::map<ExpVec, std::map<size_t, uint32_t>> groups_;
  std::map<ExpVec, uint32_t> rhs_;
};

// Mixed-radix column indexing for monomial boxes [0, bound]^vars.
struct MonomialBox {
  std::vector<VarId> vars;
  int64_t bound;

  uint64_t count() const {
    uint64_t c = 1;
    for (size_t i = 0; i < vars.size(); ++i) {
      if (c > (uint64_t(1) << 62) / uint64_t(bound + 1))
        throw std::overflow_error("MonomialBox: overflow");
      c *= uint64_t(bound + 1);
    }
    return c;
  }

  ExpVec decode(uint64_t index) const {
    ExpVec e;
    for (auto& v : vars) {
      int64_t d = int64_t(index % uint64_t(bound + 1));
      index /= uint64_t(bound + 1);
      if (d) e.set(v, d);
    }
    return e;
  }
};

// For a fixed product target a (exponents of x^a on the ring of `box.vars`),
// enumerates every unknown monomial v in the box with v + a = q-1 mod q
// per variable, reporting (column, trace quotient exponent vector).
void enumerate_trace_hits(const MonomialBox& box, const ExpVec& a, int64_t q,
                          const std::function<void(uint64_t, const ExpVec&)>& emit) {
  struct Frame {
    uint64_t col = 0;
    ExpVec quotient;
  };
  std::vector<Frame> frames{Frame{}};
  uint64_t radix = 1;
  for (auto& v : box.vars) {
    int64_t av = a.get(v);
    int64_t residue = pos_mod(q - 1 - av, q);
    std::vector<Frame> next;
    for (int64_t ve = residue; ve <= box.bound; ve += q) {
      int64_t mu = (ve + av - (q - 1)) / q;
      for (auto& fr : frames) {
        Frame nf = fr;
        nf.col += radix * uint64_t(ve);
        if (mu) nf.quotient.bump(v, mu);
        next.push_back(std::move(nf));
      }
    }
    frames = std::move(next);
    radix *= uint64_t(box.bound + 1);
    if (frames.empty()) return;
  }
  for (auto& fr : frames) emit(fr.col, fr.quotient);
}

ExpVec collapse(const ExpVec& e) {
  ExpVec out;
  for (auto& [v, exp] : e.entries()) {
    VarId w = v;
    w.factor = 1;
    out.bump(w, exp);
  }
  return out;
}

}  // namespace

int64_t default_lifting_degree_cap(const CartierMap& m, int n) {
  int64_t maxdeg = 0;
  for (auto& v : m.ctx().variables()) maxdeg = std::max(maxdeg, m.multiplier().degree_of_var(v));
  return maxdeg + int64_t(n - 1) * (m.q() - 1);
}

std::optional<Polynomial> dn_membership(const CartierMap& m, int n, int64_t degree_cap,
                                        uint64_t max_unknowns) {
  const RingContext base = m.ctx();
  if (base.factors != 1) throw std::invalid_argument("dn_membership: base-ring map expected");
  if (n < 1) throw std::invalid_argument("dn_membership: n must be >= 1");
  if (degree_cap < 0) degree_cap = default_lifting_degree_cap(m, n);
  int64_t maxdeg = 0;
  for (auto& v : base.variables()) maxdeg = std::max(maxdeg, m.multiplier().degree_of_var(v));
  if (degree_cap < maxdeg)
    throw std::invalid_argument("dn_membership: degree cap below multiplier degree");

  const RingContext tensor = base.tensor_ring(uint16_t(n));
  const int64_t q = m.q();
  const uint32_t p = base.p;
  MonomialBox gbox{tensor.variables(), degree_cap};
  const uint64_t cols = gbox.count();
  if (cols > max_unknowns) throw std::runtime_error("dn_membership: system size exceeds cap");

  RowAccumulator acc(p, cols);
  std::unordered_set<size_t> seen;
  auto sink = [&](SparseRow&& row) {
    if (!seen.insert(row.hash(p)).second) return;
    acc.add_row(row.entries, row.rhs);
  };

  BoxIterator basis_box(tensor, q - 1);
  ConditionBuilder cond(p);
  // Diagram rows: Delta(Phi(G*u)) = m(F_* Delta(u)) for every basis u.
  for (uint64_t bi = 0; bi < basis_box.count(); ++bi) {
    ExpVec u = basis_box.at(bi);
    enumerate_trace_hits(gbox, u, q, [&](uint64_t col, const ExpVec& quot) {
      cond.add(collapse(quot), size_t(col), 1);
    });
    Polynomial rhs = cartier_apply(m, delta_eval(Polynomial::monomial(tensor, u)));
    for (auto& [e, c] : rhs.terms()) cond.add_rhs(e, c.value());
    cond.flush(sink);
  }

  // Compatibility rows: Delta(Phi(G * x^alpha * d)) = 0 for each difference
  // generator d and every alpha in the basis box.
  for (auto& v : base.variables()) {
    for (uint16_t k = 2; k <= n; ++k) {
      for (uint64_t ai = 0; ai < basis_box.count(); ++ai) {
        ExpVec alpha = basis_box.at(ai);
        for (int sign = 0; sign < 2; ++sign) {
          VarId w = v;
          w.factor = sign == 0 ? 1 : k;
          ExpVec target = alpha;
          target.bump(w, 1);
          enumerate_trace_hits(gbox, target, q, [&](uint64_t col, const ExpVec& quot) {
            cond.add(collapse(quot), size_t(col), sign == 0 ? 1 : -1);
          });
        }
        cond.flush(sink);
      }
    }
  }

  auto sol = acc.solve();
  if (!sol) return std::nullopt;
  Polynomial G(tensor);
  for (uint64_t c = 0; c < cols; ++c)
    if ((*sol)[c]) G.add_term(gbox.decode(c), Fp((*sol)[c], p));

  // Re-verify the witness from scratch before reporting it.
  for (uint64_t bi = 0; bi < basis_box.count(); ++bi) {
    ExpVec u = basis_box.at(bi);
    Polynomial lhs = delta_eval(frobenius_trace(G * Polynomial::monomial(tensor, u), m.level()));
    Polynomial rhs = cartier_apply(m, delta_eval(Polynomial::monomial(tensor, u)));
    if (!(lhs == rhs)) throw std::logic_error("dn_membership: witness fails diagram identity");
  }
  for (auto& v : base.variables()) {
    for (uint16_t k = 2; k <= n; ++k) {
      VarId v1 = v, vk = v;
      v1.factor = 1;
      vk.factor = k;
      Polynomial d = Polynomial::variable(tensor, v1) - Polynomial::variable(tensor, vk);
      for (uint64_t ai = 0; ai < basis_box.count(); ++ai) {
        Polynomial span = Polynomial::monomial(tensor, basis_box.at(ai)) * d;
        if (!delta_eval(frobenius_trace(G * span, m.level())).is_zero())
          throw std::logic_error("dn_membership: witness fails compatibility");
      }
    }
  }
  return G;
}

namespace {

// Shared assembly of the g-space conditions: rows expressing that Phi^e . g
// admits a diagonal-compatible lifting. Linear in the coefficients of g
// because the lifting's values are pinned on the diagonal (see dn_membership).
void assemble_lift_existence_rows(const RingContext& base, int n, int e,
                                  const MonomialBox& gbox, ConditionBuilder& cond,
                                  const std::function<void(SparseRow&&)>& sink) {
  const int64_t q = checked_pow(base.p, e);
  const RingContext tensor = base.tensor_ring(uint16_t(n));
  BoxIterator basis_box(tensor, q - 1);
  for (auto& v : base.variables()) {
    for (uint16_t k = 2; k <= n; ++k) {
      for (uint64_t ai = 0; ai < basis_box.count(); ++ai) {
        ExpVec alpha = basis_box.at(ai);
        for (int sign = 0; sign < 2; ++sign) {
          VarId w = v;
          w.factor = sign == 0 ? 1 : k;
          ExpVec target = alpha;
          target.bump(w, 1);
          // target = residue + q*carry componentwise; the row contribution is
          // Delta(carry) * Phi_S(g * Delta(residue)).
          ExpVec residue, carry;
          for (auto& [tv, te] : target.entries()) {
            int64_t c = te / q, rem = te % q;
            if (c) carry.set(tv, c);
            if (rem) residue.set(tv, rem);
          }
          ExpVec dcarry = collapse(carry);
          ExpVec dres = collapse(residue);
          enumerate_trace_hits(gbox, dres, q, [&](uint64_t col, const ExpVec& quot) {
            cond.add(dcarry.times(quot), size_t(col), sign == 0 ? 1 : -1);
          });
        }
        cond.flush(sink);
      }
    }
  }
}

}  // namespace

std::vector<CartierMap> dn_level_basis(const RingContext& base, int n, int e,
                                       int64_t gbox_bound, uint64_t max_unknowns) {
  if (base.factors != 1) throw std::invalid_argument("dn_level_basis: base ring expected");
  if (e < 1 || n < 1) throw std::invalid_argument("dn_level_basis: e, n must be >= 1");
  MonomialBox gbox{base.variables(), gbox_bound};
  const uint64_t cols = gbox.count();
  if (cols > max_unknowns) throw std::runtime_error("dn_level_basis: system size exceeds cap");

  RowAccumulator acc(base.p, cols);
  std::unordered_set<size_t> seen;
  auto sink = [&](SparseRow&& row) {
    if (!seen.insert(row.hash(base.p)).second) return;
    acc.add_row(row.entries, row.rhs);
  };
  ConditionBuilder cond(base.p);
  assemble_lift_existence_rows(base, n, e, gbox, cond, sink);

  std::vector<CartierMap> out;
  for (auto& vec : acc.nullspace()) {
    Polynomial g(base);
    for (uint64_t c = 0; c < cols; ++c)
      if (vec[c]) g.add_term(gbox.decode(c), Fp(vec[c], base.p));
    if (!g.is_zero()) out.emplace_back(e, std::move(g));
  }
  return out;
}

namespace {

// Verifies, from first principles, that the value table
// u |-> preimage(psi_phi(u)) defines a diagonal-compatible lifting of phi.
// Works on the table directly so large q stay affordable.
bool verify_value_table_lifting(const CartierMap& phi, int n) {
  const RingContext base = phi.ctx();
  const RingContext tensor = base.tensor_ring(uint16_t(n));
  const int64_t q = phi.q();
  BoxIterator basis_box(tensor, q - 1);
  const uint64_t count = basis_box.count();

  std::vector<Polynomial> table;  // Delta(h_u) for every basis u
  table.reserve(count);
  for (uint64_t i = 0; i < count; ++i) {
    ExpVec u = basis_box.at(i);
    table.push_back(cartier_apply(phi, delta_eval(Polynomial::monomial(tensor, u))));
  }

  // Compatibility on the spanning set { x^alpha (v_1 - v_k) }: the collapsed
  // image Sum Delta(s_u) Delta(h_u) must vanish.
  for (auto& v : base.variables()) {
    for (uint16_t k = 2; k <= n; ++k) {
      for (uint64_t ai = 0; ai < count; ++ai) {
        ExpVec alpha = basis_box.at(ai);
        Polynomial image(base);
        for (int sign = 0; sign < 2; ++sign) {
          VarId w = v;
          w.factor = sign == 0 ? 1 : k;
          ExpVec target = alpha;
          target.bump(w, 1);
          ExpVec carry;
          uint64_t uindex = 0;
          uint64_t radix = 1;
          for (auto& tv : tensor.variables()) {
            int64_t te = target.get(tv);
            int64_t c = te / q, rem = te % q;
            if (c) carry.set(tv, c);
            uindex += radix * uint64_t(rem);
            radix *= uint64_t(q);
          }
          Polynomial contrib =
              Polynomial::monomial(base, collapse(carry)) * table[uindex];
          image = sign == 0 ? image + contrib : image - contrib;
        }
        if (!image.is_zero()) return false;
      }
    }
  }
  return true;
}

}  // namespace

std::optional<RegularityWitness> dn_regularity_witness(const Polynomial& f, int n,
                                                       int e_max, uint64_t max_unknowns) {
  if (f.is_zero()) throw std::invalid_argument("dn_regularity_witness: f must be nonzero");
  const RingContext base = f.ctx();
  if (base.factors != 1)
    throw std::invalid_argument("dn_regularity_witness: base-ring element expected");
  // On a two-block (Segre) ambient ring, f must lie in the Segre subring.
  if (base.num_y > 0 && !segre_membership(f))
    throw std::invalid_argument("dn_regularity_witness: f must be balanced");

  for (int e = 1; e <= e_max; ++e) {
    const int64_t q = checked_pow(base.p, e);
    MonomialBox gbox{base.variables(), q - 1};
    const uint64_t cols = gbox.count();
    if (cols > max_unknowns) throw std::runtime_error("dn_regularity_witness: cap exceeded");

    RowAccumulator acc(base.p, cols);
    std::unordered_set<size_t> seen;
    auto sink = [&](SparseRow&& row) {
      if (!seen.insert(row.hash(base.p)).second) return;
      acc.add_row(row.entries, row.rhs);
    };
    ConditionBuilder cond(base.p);
    assemble_lift_existence_rows(base, n, e, gbox, cond, sink);

    // Affine constraint Phi^e(g * f) = 1.
    for (auto& term : f.terms()) {
      const ExpVec& fe = term.first;
      const int64_t fc = term.second.value();
      enumerate_trace_hits(gbox, fe, q, [&](uint64_t col, const ExpVec& quot) {
        cond.add(quot, size_t(col), fc);
      });
    }
    cond.add_rhs(ExpVec{}, 1);
    cond.flush(sink);

    auto sol = acc.solve();
    if (!sol) continue;
    Polynomial g(base);
    for (uint64_t c = 0; c < cols; ++c)
      if ((*sol)[c]) g.add_term(gbox.decode(c), Fp((*sol)[c], base.p));
    if (g.is_zero()) continue;
    CartierMap phi(e, g);

    // Re-verify from scratch: the splitting value and the lifting.
    if (!(cartier_apply(phi, f) == Polynomial::constant(base, 1))) continue;
    if (!verify_value_table_lifting(phi, n)) continue;

    // Materialize a concrete lifting multiplier G from the value table,
    // placing each diagonal value into factor 1.
    const RingContext tensor = base.tensor_ring(uint16_t(n));
    BoxIterator basis_box(tensor, q - 1);
    Polynomial G(tensor);
    ExpVec qminus1;
    for (auto& tv : tensor.variables()) qminus1.set(tv, q - 1);
    for (uint64_t i = 0; i < basis_box.count(); ++i) {
      ExpVec u = basis_box.at(i);
      Polynomial value = cartier_apply(phi, delta_eval(Polynomial::monomial(tensor, u)));
      for (auto& [ve, vc] : value.terms()) {
        ExpVec hu = embed_in_factor(ve, 1);  // Delta-preimage of the value
        G.add_term(hu.scaled(q).times(u.quotient_into(qminus1)), vc);
      }
    }
    return RegularityWitness{e, phi, G};
  }
  return std::nullopt;
}

}  // namespace frob
