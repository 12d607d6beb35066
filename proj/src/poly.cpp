#include "frob/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace frob {

bool RingContext::contains(const VarId& v) const {
  if (v.block == Block::Aux) return true;  // internal, always admissible
  if (v.factor < 1 || v.factor > factors) return false;
  if (v.block == Block::X) return v.index < num_x;
  return v.index < num_y;
}

std::vector<VarId> RingContext::variables() const {
  std::vector<VarId> out;
  out.reserve(var_count());
  for (uint16_t k = 1; k <= factors; ++k) {
    for (uint16_t i = 0; i < num_x; ++i) out.push_back(xvar(i, k));
    for (uint16_t j = 0; j < num_y; ++j) out.push_back(yvar(j, k));
  }
  return out;
}

int64_t ExpVec::get(const VarId& v) const {
  auto it = std::lower_bound(e_.begin(), e_.end(), v,
                             [](const auto& a, const VarId& b) { return a.first < b; });
  if (it != e_.end() && it->first == v) return it->second;
  return 0;
}

void ExpVec::set(const VarId& v, int64_t e) {
  if (e < 0) throw std::invalid_argument("ExpVec: negative exponent");
  auto it = std::lower_bound(e_.begin(), e_.end(), v,
                             [](const auto& a, const VarId& b) { return a.first < b; });
  if (it != e_.end() && it->first == v) {
    if (e == 0)
      e_.erase(it);
    else
      it->second = e;
  } else if (e != 0) {
    e_.insert(it, {v, e});
  }
}

void ExpVec::bump(const VarId& v, int64_t delta) { set(v, get(v) + delta); }

int64_t ExpVec::degree() const {
  int64_t d = 0;
  for (auto& [v, e] : e_) d += e;
  return d;
}

int64_t ExpVec::degree_block(Block b) const {
  int64_t d = 0;
  for (auto& [v, e] : e_)
    if (v.block == b) d += e;
  return d;
}

int64_t ExpVec::degree_factor(uint16_t k) const {
  int64_t d = 0;
  for (auto& [v, e] : e_)
    if (v.factor == k) d += e;
  return d;
}

int64_t ExpVec::degree_block_factor(Block b, uint16_t k) const {
  int64_t d = 0;
  for (auto& [v, e] : e_)
    if (v.block == b && v.factor == k) d += e;
  return d;
}

ExpVec ExpVec::times(const ExpVec& o) const {
  ExpVec out;
  out.e_.reserve(e_.size() + o.e_.size());
  auto a = e_.begin(), b = o.e_.begin();
  while (a != e_.end() || b != o.e_.end()) {
    if (b == o.e_.end() || (a != e_.end() && a->first < b->first)) {
      out.e_.push_back(*a++);
    } else if (a == e_.end() || b->first < a->first) {
      out.e_.push_back(*b++);
    } else {
      out.e_.push_back({a->first, a->second + b->second});
      ++a;
      ++b;
    }
  }
  return out;
}

bool ExpVec::divides(const ExpVec& o) const {
  for (auto& [v, e] : e_)
    if (o.get(v) < e) return false;
  return true;
}

ExpVec ExpVec::quotient_into(const ExpVec& o) const {
  ExpVec out;
  for (auto& [v, e] : o.e_) {
    int64_t d = e - get(v);
    if (d < 0) throw std::invalid_argument("ExpVec: not divisible");
    if (d > 0) out.e_.push_back({v, d});
  }
  // Any variable present here but absent in o would make division fail.
  for (auto& [v, e] : e_)
    if (o.get(v) < e) throw std::invalid_argument("ExpVec: not divisible");
  return out;
}

ExpVec ExpVec::scaled(int64_t m) const {
  if (m < 0) throw std::invalid_argument("ExpVec: negative scale");
  ExpVec out;
  if (m == 0) return out;
  out.e_ = e_;
  for (auto& [v, e] : out.e_) e *= m;
  return out;
}

ExpVec ExpVec::lcm(const ExpVec& a, const ExpVec& b) {
  ExpVec out;
  auto i = a.e_.begin();
  auto j = b.e_.begin();
  while (i != a.e_.end() || j != b.e_.end()) {
    if (j == b.e_.end() || (i != a.e_.end() && i->first < j->first)) {
      out.e_.push_back(*i++);
    } else if (i == a.e_.end() || j->first < i->first) {
      out.e_.push_back(*j++);
    } else {
      out.e_.push_back({i->first, std::max(i->second, j->second)});
      ++i;
      ++j;
    }
  }
  return out;
}

size_t ExpVec::hash() const {
  size_t h = 0x345678;
  for (auto& [v, e] : e_) {
    hash_combine(h, (size_t(v.factor) << 20) ^ (size_t(v.block) << 17) ^ v.index);
    hash_combine(h, size_t(e));
  }
  return h;
}

Polynomial Polynomial::constant(RingContext ctx, int64_t c) {
  Polynomial f(ctx);
  f.add_term(ExpVec{}, Fp(c, ctx.p));
  return f;
}

Polynomial Polynomial::monomial(RingContext ctx, const ExpVec& e, int64_t c) {
  for (auto& [v, exp] : e.entries())
    if (!ctx.contains(v)) throw std::invalid_argument("Polynomial: variable outside ring");
  Polynomial f(ctx);
  f.add_term(e, Fp(c, ctx.p));
  return f;
}

Polynomial Polynomial::variable(RingContext ctx, const VarId& v) {
  ExpVec e;
  e.set(v, 1);
  return monomial(ctx, e, 1);
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Fp Polynomial::coeff(const ExpVec& e) const {
  auto it = terms_.find(e);
  if (it == terms_.end()) return Fp(0, ctx_.p);
  return it->second;
}

void Polynomial::add_term(const ExpVec& e, const Fp& c) {
  if (c.modulus() != ctx_.p) throw std::invalid_argument("Polynomial: coefficient modulus mismatch");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    Fp s = it->second + c;
    if (s.is_zero())
      terms_.erase(it);
    else
      it->second = s;
  }
}

static void check_ctx(const Polynomial& a, const Polynomial& b) {
  if (!(a.ctx() == b.ctx())) throw std::invalid_argument("Polynomial: ring context mismatch");
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  check_ctx(*this, o);
  Polynomial out = *this;
  for (auto& [e, c] : o.terms_) out.add_term(e, c);
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  check_ctx(*this, o);
  Polynomial out = *this;
  for (auto& [e, c] : o.terms_) out.add_term(e, -c);
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out(ctx_);
  for (auto& [e, c] : terms_) out.terms_.emplace(e, -c);
  return out;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  check_ctx(*this, o);
  Polynomial out(ctx_);
  for (auto& [e1, c1] : terms_)
    for (auto& [e2, c2] : o.terms_) out.add_term(e1.times(e2), c1 * c2);
  return out;
}

Polynomial Polynomial::operator*(const Fp& c) const {
  Polynomial out(ctx_);
  if (c.is_zero()) return out;
  for (auto& [e, k] : terms_) out.add_term(e, k * c);
  return out;
}

int64_t Polynomial::total_degree() const {
  int64_t d = -1;
  for (auto& [e, c] : terms_) d = std::max(d, e.degree());
  return d;
}

int64_t Polynomial::degree_of_var(const VarId& v) const {
  int64_t d = 0;
  for (auto& [e, c] : terms_) d = std::max(d, e.get(v));
  return d;
}

Polynomial frobenius_power(const Polynomial& f, int e) {
  if (e < 0) throw std::invalid_argument("frobenius_power: e must be >= 0");
  if (e == 0) return f;
  int64_t q = checked_pow(f.ctx().p, e);
  Polynomial out(f.ctx());
  for (auto& [ev, c] : f.terms()) out.add_term(ev.scaled(q), c);  // c^q = c in F_p
  return out;
}

Polynomial poly_pow(const Polynomial& f, int64_t m) {
  if (m < 0) throw std::invalid_argument("poly_pow: negative power");
  Polynomial acc = Polynomial::constant(f.ctx(), 1);
  for (int64_t i = 0; i < m; ++i) acc = acc * f;
  return acc;
}

std::string var_name(const VarId& v, const RingContext& ctx) {
  std::ostringstream os;
  if (v.block == Block::Aux) {
    os << "t" << v.index;
    return os.str();
  }
  os << (v.block == Block::X ? "x" : "y") << v.index;
  if (ctx.factors > 1) os << "_" << v.factor;
  return os.str();
}

namespace {

// grevlex with the canonical variable sequence; ties by structural order so
// printing is a strict total order.
bool print_before(const ExpVec& a, const ExpVec& b, const RingContext& ctx) {
  int64_t da = a.degree(), db = b.degree();
  if (da != db) return da > db;
  auto vars = ctx.variables();
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
    int64_t ea = a.get(*it), eb = b.get(*it);
    if (ea != eb) return ea < eb;
  }
  return a < b;
}

}  // namespace

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<const std::pair<const ExpVec, Fp>*> ts;
  ts.reserve(terms_.size());
  for (auto& t : terms_) ts.push_back(&t);
  std::sort(ts.begin(), ts.end(), [&](auto* a, auto* b) {
    return print_before(a->first, b->first, ctx_);
  });
  std::ostringstream os;
  bool first = true;
  for (auto* t : ts) {
    if (!first) os << " + ";
    first = false;
    const auto& [e, c] = *t;
    bool wrote = false;
    if (!c.is_one() || e.empty()) {
      os << c.value();
      wrote = true;
    }
    for (auto& [v, exp] : e.entries()) {
      if (wrote) os << "*";
      os << var_name(v, ctx_);
      if (exp > 1) os << "^" << exp;
      wrote = true;
    }
  }
  return os.str();
}

}  // namespace frob
