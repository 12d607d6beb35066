#include "frob/ustp.hpp"

#include <chrono>
#include <functional>
#include <stdexcept>

namespace frob {

QuotientRingSpec::QuotientRingSpec(RingContext c, IdealHandle q)
    : ctx(c), quotient(std::move(q)) {
  if (!(quotient.ctx() == ctx)) throw std::invalid_argument("QuotientRingSpec: context mismatch");
  if (quotient.is_unit_ideal()) throw std::invalid_argument("QuotientRingSpec: quotient is (1)");
}

PrimeSpec::PrimeSpec(std::vector<Polynomial> gens, int h, Polynomial s, std::string n)
    : generators(std::move(gens)), height(h), saturating(std::move(s)), notes(std::move(n)) {
  if (generators.empty()) throw std::invalid_argument("PrimeSpec: no generators");
  if (saturating.is_zero()) throw std::invalid_argument("PrimeSpec: zero saturating element");
}

static IdealHandle prime_plus_quotient(const PrimeSpec& P, const QuotientRingSpec& ring) {
  std::vector<Polynomial> gens = P.generators;
  for (auto& g : ring.quotient.generators()) gens.push_back(g);
  return IdealHandle(ring.ctx, std::move(gens));
}

IdealHandle prime_power_plus_quotient(const PrimeSpec& P, int m, const QuotientRingSpec& ring) {
  IdealHandle pm = ideal_power(IdealHandle(ring.ctx, P.generators), m);
  std::vector<Polynomial> gens = pm.generators();
  for (auto& g : ring.quotient.generators()) gens.push_back(g);
  return IdealHandle(ring.ctx, std::move(gens));
}

IdealHandle symbolic_power(const PrimeSpec& P, int m, const QuotientRingSpec& ring) {
  if (m < 1) throw std::invalid_argument("symbolic_power: m must be >= 1");
  IdealHandle prime = prime_plus_quotient(P, ring);
  if (ideal_membership(P.saturating, prime))
    throw std::invalid_argument("symbolic_power: saturating element lies in P");
  if (prime.is_unit_ideal())
    throw std::invalid_argument("symbolic_power: P is the unit ideal");
  // P = I names the zero prime of the quotient; rejected as degenerate.
  if (ideal_equal(prime, ring.quotient))
    throw std::invalid_argument("symbolic_power: P equals the quotient ideal");
  return colon_saturation(prime_power_plus_quotient(P, m, ring), P.saturating);
}

OracleAnswer symbolic_membership_oracle(const Polynomial& f, const PrimeSpec& P, int m,
                                        const QuotientRingSpec& ring, int witness_degree,
                                        uint64_t cap) {
  IdealHandle prime = prime_plus_quotient(P, ring);
  IdealHandle target = prime_power_plus_quotient(P, m, ring);

  // Candidate witnesses: all monomials of total degree <= witness_degree.
  std::vector<ExpVec> candidates;
  candidates.push_back(ExpVec{});
  auto vars = ring.ctx.variables();
  std::function<void(size_t, int, ExpVec&)> rec = [&](size_t pos, int left, ExpVec& acc) {
    if (candidates.size() > cap) throw std::runtime_error("symbolic_membership_oracle: cap");
    if (pos == vars.size() || left == 0) return;
    rec(pos + 1, left, acc);
    for (int d = 1; d <= left; ++d) {
      acc.set(vars[pos], d);
      candidates.push_back(acc);
      rec(pos + 1, left - d, acc);
    }
    acc.set(vars[pos], 0);
  };
  ExpVec acc;
  rec(0, witness_degree, acc);

  for (auto& w : candidates) {
    Polynomial wp = Polynomial::monomial(ring.ctx, w);
    if (ideal_membership(wp, prime)) continue;  // need w outside P
    if (ideal_membership(wp * f, target)) return OracleAnswer::True;
  }
  return OracleAnswer::Inconclusive;
}

UstpReport ustp_containment_report(const QuotientRingSpec& ring, const PrimeSpec& P, int h,
                                   int n_max, int oracle_degree) {
  UstpReport rep;
  rep.caveat =
      "symbolic powers are computed as (P^m + I : s^infty); equality with the true "
      "symbolic power rests on the caller's certificate that s avoids P and lies in "
      "every other associated prime of P^m; primality of P is a caller certificate";
  for (int n = 1; n <= n_max; ++n) {
    auto start = std::chrono::steady_clock::now();
    UstpEntry entry;
    entry.n = n;
    IdealHandle sym = symbolic_power(P, h * n, ring);
    IdealHandle target = prime_power_plus_quotient(P, n, ring);
    entry.holds = ideal_containment(sym, target);
    entry.symbolic_generators = sym.generators().size();
    if (oracle_degree >= 0) {
      entry.oracle_confirmed = true;
      for (auto& g : sym.generators()) {
        if (g.is_zero()) continue;
        if (symbolic_membership_oracle(g, P, h * n, ring, oracle_degree) !=
            OracleAnswer::True) {
          entry.oracle_confirmed = false;
          break;
        }
      }
    }
    entry.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rep.all_hold = rep.all_hold && entry.holds;
    rep.entries.push_back(entry);
  }
  return rep;
}

}  // namespace frob
