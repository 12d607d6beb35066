#include "frob/grobner.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

namespace frob {

MonomialOrder MonomialOrder::grevlex(const RingContext& ctx) {
  MonomialOrder o;
  o.kind_ = OrderKind::GRevLex;
  o.priority_ = ctx.variables();
  return o;
}

MonomialOrder MonomialOrder::lex(const RingContext& ctx) {
  MonomialOrder o;
  o.kind_ = OrderKind::Lex;
  o.priority_ = ctx.variables();
  return o;
}

MonomialOrder MonomialOrder::lex(std::vector<VarId> priority) {
  MonomialOrder o;
  o.kind_ = OrderKind::Lex;
  o.priority_ = std::move(priority);
  return o;
}

MonomialOrder MonomialOrder::grevlex(std::vector<VarId> priority) {
  MonomialOrder o;
  o.kind_ = OrderKind::GRevLex;
  o.priority_ = std::move(priority);
  return o;
}

MonomialOrder MonomialOrder::with_elimination_prefix(std::vector<VarId> aux) const {
  MonomialOrder o = *this;
  o.elim_ = std::move(aux);
  return o;
}

namespace {

int cmp_grevlex(const ExpVec& a, const ExpVec& b, const std::vector<VarId>& vars) {
  int64_t da = 0, db = 0;
  for (auto& v : vars) {
    da += a.get(v);
    db += b.get(v);
  }
  if (da != db) return da < db ? -1 : 1;
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
    int64_t ea = a.get(*it), eb = b.get(*it);
    if (ea != eb) return ea > eb ? -1 : 1;  // reverse: larger trailing exp is smaller
  }
  return 0;
}

int cmp_lex(const ExpVec& a, const ExpVec& b, const std::vector<VarId>& vars) {
  for (auto& v : vars) {
    int64_t ea = a.get(v), eb = b.get(v);
    if (ea != eb) return ea < eb ? -1 : 1;
  }
  return 0;
}

}  // namespace

int MonomialOrder::compare(const ExpVec& a, const ExpVec& b) const {
  if (!elim_.empty()) {
    int c = cmp_grevlex(a, b, elim_);
    if (c != 0) return c;
  }
  return kind_ == OrderKind::Lex ? cmp_lex(a, b, priority_) : cmp_grevlex(a, b, priority_);
}

// ---------------------------------------------------------------------------
// Working representation: term list sorted descending in the active order.

namespace {

struct OrderedPoly {
  std::vector<std::pair<ExpVec, Fp>> terms;  // descending
  int64_t sugar = 0;                         // total degree bookkeeping

  bool is_zero() const { return terms.empty(); }
  const ExpVec& lt() const { return terms.front().first; }
  const Fp& lc() const { return terms.front().second; }
};

OrderedPoly to_ordered(const Polynomial& f, const MonomialOrder& ord) {
  OrderedPoly g;
  g.terms.reserve(f.term_count());
  for (auto& [e, c] : f.terms()) g.terms.push_back({e, c});
  std::sort(g.terms.begin(), g.terms.end(),
            [&](const auto& a, const auto& b) { return ord.greater(a.first, b.first); });
  g.sugar = f.total_degree();
  return g;
}

Polynomial from_ordered(const OrderedPoly& g, const RingContext& ctx) {
  Polynomial f(ctx);
  for (auto& [e, c] : g.terms) f.add_term(e, c);
  return f;
}

void make_monic(OrderedPoly& f) {
  if (f.is_zero() || f.lc().is_one()) return;
  Fp inv = f.lc().inverse();
  for (auto& [e, c] : f.terms) c = c * inv;
}

// f -= coef * x^shift * g, keeping descending order (merge).
void submul(OrderedPoly& f, const Fp& coef, const ExpVec& shift, const OrderedPoly& g,
            const MonomialOrder& ord) {
  std::vector<std::pair<ExpVec, Fp>> out;
  out.reserve(f.terms.size() + g.terms.size());
  size_t i = 0, j = 0;
  while (i < f.terms.size() || j < g.terms.size()) {
    if (j == g.terms.size()) {
      out.push_back(f.terms[i++]);
      continue;
    }
    ExpVec ge = g.terms[j].first.times(shift);
    if (i == f.terms.size()) {
      Fp c = -(coef * g.terms[j].second);
      if (!c.is_zero()) out.push_back({std::move(ge), c});
      ++j;
      continue;
    }
    int cmp = ord.compare(f.terms[i].first, ge);
    if (cmp > 0) {
      out.push_back(f.terms[i++]);
    } else if (cmp < 0) {
      Fp c = -(coef * g.terms[j].second);
      if (!c.is_zero()) out.push_back({std::move(ge), c});
      ++j;
    } else {
      Fp c = f.terms[i].second - coef * g.terms[j].second;
      if (!c.is_zero()) out.push_back({f.terms[i].first, c});
      ++i;
      ++j;
    }
  }
  f.terms = std::move(out);
}

// Full normal form of f modulo basis (every term reduced).
OrderedPoly reduce_full(OrderedPoly f, const std::vector<OrderedPoly>& basis,
                        const MonomialOrder& ord) {
  OrderedPoly rem;
  rem.sugar = f.sugar;
  while (!f.is_zero()) {
    bool reduced = false;
    for (const auto& g : basis) {
      if (g.is_zero()) continue;
      if (g.lt().divides(f.lt())) {
        ExpVec shift = g.lt().quotient_into(f.lt());
        Fp coef = f.lc() * g.lc().inverse();
        f.sugar = std::max(f.sugar, shift.degree() + g.sugar);
        submul(f, coef, shift, g, ord);
        reduced = true;
        break;
      }
    }
    if (!reduced) {
      rem.terms.push_back(f.terms.front());
      f.terms.erase(f.terms.begin());
    }
  }
  rem.sugar = std::max(rem.sugar, f.sugar);
  return rem;
}

OrderedPoly s_polynomial(const OrderedPoly& f, const OrderedPoly& g, const MonomialOrder& ord) {
  ExpVec l = ExpVec::lcm(f.lt(), g.lt());
  ExpVec sf = f.lt().quotient_into(l);
  ExpVec sg = g.lt().quotient_into(l);
  OrderedPoly s;
  s.terms.reserve(f.terms.size());
  for (auto& [e, c] : f.terms) s.terms.push_back({e.times(sf), c * f.lc().inverse()});
  s.sugar = std::max(f.sugar + sf.degree(), g.sugar + sg.degree());
  submul(s, g.lc().inverse(), sg, g, ord);
  return s;
}

struct Pair {
  size_t i, j;
  int64_t sugar;
  ExpVec lcm;
};

std::vector<OrderedPoly> buchberger(std::vector<OrderedPoly> basis, const MonomialOrder& ord) {
  auto pair_less = [&](const Pair& a, const Pair& b) {
    if (a.sugar != b.sugar) return a.sugar < b.sugar;
    return ord.less(a.lcm, b.lcm);
  };

  std::vector<Pair> pairs;
  auto push_pairs_for = [&](size_t j) {
    for (size_t i = 0; i < j; ++i) {
      if (basis[i].is_zero()) continue;
      ExpVec l = ExpVec::lcm(basis[i].lt(), basis[j].lt());
      // Buchberger's first criterion: coprime leading terms reduce to zero.
      if (l == basis[i].lt().times(basis[j].lt())) continue;
      ExpVec si = basis[i].lt().quotient_into(l);
      ExpVec sj = basis[j].lt().quotient_into(l);
      int64_t sugar = std::max(basis[i].sugar + si.degree(), basis[j].sugar + sj.degree());
      pairs.push_back({i, j, sugar, std::move(l)});
    }
  };
  for (size_t j = 0; j < basis.size(); ++j)
    if (!basis[j].is_zero()) push_pairs_for(j);

  while (!pairs.empty()) {
    auto it = std::min_element(pairs.begin(), pairs.end(), pair_less);
    Pair pr = *it;
    pairs.erase(it);
    OrderedPoly s = s_polynomial(basis[pr.i], basis[pr.j], ord);
    OrderedPoly r = reduce_full(std::move(s), basis, ord);
    if (!r.is_zero()) {
      make_monic(r);
      basis.push_back(std::move(r));
      push_pairs_for(basis.size() - 1);
    }
  }
  return basis;
}

// Minimalize and tail-reduce into the unique reduced basis.
std::vector<OrderedPoly> interreduce(std::vector<OrderedPoly> basis, const MonomialOrder& ord) {
  std::vector<OrderedPoly> minimal;
  for (size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].is_zero()) continue;
    bool redundant = false;
    for (size_t j = 0; j < basis.size(); ++j) {
      if (i == j || basis[j].is_zero()) continue;
      if (basis[j].lt().divides(basis[i].lt()) &&
          !(basis[i].lt() == basis[j].lt() && j > i)) {
        redundant = true;
        break;
      }
    }
    if (!redundant) minimal.push_back(basis[i]);
  }
  std::vector<OrderedPoly> reduced;
  for (size_t i = 0; i < minimal.size(); ++i) {
    std::vector<OrderedPoly> others;
    for (size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    OrderedPoly r = reduce_full(minimal[i], others, ord);
    if (!r.is_zero()) {
      make_monic(r);
      reduced.push_back(std::move(r));
    }
  }
  std::sort(reduced.begin(), reduced.end(),
            [&](const OrderedPoly& a, const OrderedPoly& b) { return ord.less(a.lt(), b.lt()); });
  return reduced;
}

void post_check(const std::vector<OrderedPoly>& basis, const MonomialOrder& ord) {
  for (size_t i = 0; i < basis.size(); ++i) {
    for (size_t j = i + 1; j < basis.size(); ++j) {
      OrderedPoly s = s_polynomial(basis[i], basis[j], ord);
      OrderedPoly r = reduce_full(std::move(s), basis, ord);
      if (!r.is_zero())
        throw std::logic_error("groebner_basis: post-hoc Buchberger check failed");
    }
  }
}

}  // namespace

IdealHandle::IdealHandle(RingContext ctx, std::vector<Polynomial> gens)
    : IdealHandle(ctx, std::move(gens), MonomialOrder::grevlex(ctx)) {}

IdealHandle::IdealHandle(RingContext ctx, std::vector<Polynomial> gens, MonomialOrder order)
    : ctx_(ctx), gens_(std::move(gens)), order_(std::move(order)) {
  for (auto& g : gens_)
    if (!(g.ctx() == ctx_)) throw std::invalid_argument("IdealHandle: generator context mismatch");
}

const std::vector<Polynomial>& IdealHandle::groebner_basis() const {
  if (basis_) return *basis_;
  std::vector<OrderedPoly> work;
  for (auto& g : gens_) {
    if (g.is_zero()) continue;
    OrderedPoly o = to_ordered(g, order_);
    make_monic(o);
    work.push_back(std::move(o));
  }
  work = buchberger(std::move(work), order_);
  work = interreduce(std::move(work), order_);
  post_check(work, order_);
  auto out = std::make_shared<std::vector<Polynomial>>();
  out->reserve(work.size());
  for (auto& o : work) out->push_back(from_ordered(o, ctx_));
  basis_ = out;
  return *basis_;
}

bool IdealHandle::is_unit_ideal() const {
  const auto& b = groebner_basis();
  return b.size() == 1 && b.front().is_constant() && !b.front().is_zero();
}

Polynomial normal_form(const Polynomial& f, const IdealHandle& I) {
  if (!(f.ctx() == I.ctx())) throw std::invalid_argument("normal_form: ring context mismatch");
  const auto& basis = I.groebner_basis();
  std::vector<OrderedPoly> ob;
  ob.reserve(basis.size());
  for (auto& g : basis) ob.push_back(to_ordered(g, I.order()));
  OrderedPoly r = reduce_full(to_ordered(f, I.order()), ob, I.order());
  return from_ordered(r, I.ctx());
}

bool ideal_membership(const Polynomial& f, const IdealHandle& I) {
  return normal_form(f, I).is_zero();
}

IdealHandle ideal_power(const IdealHandle& I, int m) {
  if (m < 1) throw std::invalid_argument("ideal_power: m must be >= 1");
  const auto& gens = I.generators();
  auto dedup = [](std::vector<Polynomial> v) {
    std::vector<Polynomial> out;
    std::set<std::string> seen;
    for (auto& f : v)
      if (seen.insert(f.to_string()).second) out.push_back(std::move(f));
    return out;
  };
  std::vector<Polynomial> cur = dedup(gens);
  for (int step = 1; step < m; ++step) {
    std::vector<Polynomial> next;
    for (auto& a : cur)
      for (auto& g : gens) next.push_back(a * g);
    cur = dedup(std::move(next));
  }
  return IdealHandle(I.ctx(), std::move(cur), I.order());
}

IdealHandle ideal_sum(const IdealHandle& I, const IdealHandle& J) {
  if (!(I.ctx() == J.ctx())) throw std::invalid_argument("ideal_sum: ring context mismatch");
  std::vector<Polynomial> gens = I.generators();
  for (auto& g : J.generators()) gens.push_back(g);
  return IdealHandle(I.ctx(), std::move(gens), I.order());
}

IdealHandle ideal_colon(const IdealHandle& I, const Polynomial& f) {
  if (f.is_zero()) throw std::invalid_argument("ideal_colon: zero divisor polynomial");
  if (!(f.ctx() == I.ctx())) throw std::invalid_argument("ideal_colon: ring context mismatch");
  const RingContext ctx = I.ctx();

  // Intersection with (f): eliminate t from t*I + (1-t)*(f). The auxiliary
  // variable never escapes this function.
  VarId t{Block::Aux, 0, 1};
  Polynomial tp = Polynomial::variable(ctx, t);
  Polynomial one = Polynomial::constant(ctx, 1);
  std::vector<Polynomial> gens;
  for (auto& g : I.generators())
    if (!g.is_zero()) gens.push_back(tp * g);
  gens.push_back((one - tp) * f);
  MonomialOrder elim = I.order().with_elimination_prefix({t});
  IdealHandle K(ctx, std::move(gens), elim);

  std::vector<Polynomial> quotient_gens;
  Polynomial rem(ctx);
  for (auto& g : K.groebner_basis()) {
    if (g.degree_of_var(t) > 0) continue;  // not in the elimination ideal
    // g lies in I cap (f); divide exactly by f.
    MonomialOrder base = I.order();
    std::vector<OrderedPoly> divisor{to_ordered(f, base)};
    OrderedPoly q;
    OrderedPoly r = to_ordered(g, base);
    // single-divisor division with quotient tracking
    OrderedPoly quo;
    while (!r.is_zero()) {
      if (!divisor[0].lt().divides(r.lt()))
        throw std::logic_error("ideal_colon: intersection element not divisible by f");
      ExpVec shift = divisor[0].lt().quotient_into(r.lt());
      Fp coef = r.lc() * divisor[0].lc().inverse();
      quo.terms.push_back({shift, coef});
      submul(r, coef, shift, divisor[0], base);
    }
    std::sort(quo.terms.begin(), quo.terms.end(),
              [&](const auto& a, const auto& b) { return base.greater(a.first, b.first); });
    quotient_gens.push_back(from_ordered(quo, ctx));
  }
  if (quotient_gens.empty()) quotient_gens.push_back(Polynomial::zero(ctx));
  return IdealHandle(ctx, std::move(quotient_gens), I.order());
}

IdealHandle colon_saturation(const IdealHandle& I, const Polynomial& f) {
  if (f.is_zero()) throw std::invalid_argument("colon_saturation: f must be nonzero");
  IdealHandle cur = I;
  for (;;) {
    IdealHandle next = ideal_colon(cur, f);
    if (ideal_equal(next, cur)) {
      // One extra iteration certifies the fixed point.
      IdealHandle again = ideal_colon(next, f);
      if (!ideal_equal(again, next))
        throw std::logic_error("colon_saturation: fixed point failed certification");
      return next;
    }
    cur = std::move(next);
  }
}

bool ideal_containment(const IdealHandle& I, const IdealHandle& J) {
  if (!(I.ctx() == J.ctx())) throw std::invalid_argument("ideal_containment: context mismatch");
  for (auto& g : I.generators())
    if (!ideal_membership(g, J)) return false;
  return true;
}

bool ideal_equal(const IdealHandle& I, const IdealHandle& J) {
  // Reduced bases are canonical for a fixed order.
  if (I.order() == J.order()) {
    const auto& a = I.groebner_basis();
    const auto& b = J.groebner_basis();
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
      if (!(a[i] == b[i])) return false;
    return true;
  }
  return ideal_containment(I, J) && ideal_containment(J, I);
}

}  // namespace frob
