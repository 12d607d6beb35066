#pragma once

#include <optional>
#include <string>
#include <vector>

#include "frob/grobner.hpp"

namespace frob {

/// Quotient ring R = ambient / quotient_ideal; the zero ideal gives the
/// polynomial ring itself. All computations happen in the ambient ring with
/// the quotient generators adjoined.
struct QuotientRingSpec {
  RingContext ctx;
  IdealHandle quotient;

  QuotientRingSpec(RingContext c, IdealHandle q);
};

/// A named prime of the quotient ring: ambient generators (the quotient
/// ideal is implicitly contained), its height, and a saturating element s
/// not in P. Primality and the associated-prime property of s are caller
/// certificates, echoed in reports, not verified here.
struct PrimeSpec {
  std::vector<Polynomial> generators;
  int height = 1;
  Polynomial saturating;
  std::string notes;

  PrimeSpec(std::vector<Polynomial> gens, int h, Polynomial s, std::string n = "");
};

/// P^m as an ambient ideal: ideal_power of the generators plus the quotient.
IdealHandle prime_power_plus_quotient(const PrimeSpec& P, int m, const QuotientRingSpec& ring);

/// The m-th symbolic power computed as the saturation (P^m + I : s^infty).
/// Sound lower bound always (s not in P); equality rests on the caller's
/// certificate that s lies in every other associated prime of P^m.
/// Throws when s is in P or m < 1.
IdealHandle symbolic_power(const PrimeSpec& P, int m, const QuotientRingSpec& ring);

enum class OracleAnswer { True, Inconclusive };

/// Independent cross-check: looks for a monomial w of degree <= witness_degree
/// with w not in P and w*f in P^m + I. Never asserts non-membership.
OracleAnswer symbolic_membership_oracle(const Polynomial& f, const PrimeSpec& P, int m,
                                        const QuotientRingSpec& ring, int witness_degree,
                                        uint64_t cap = 1000000);

struct UstpEntry {
  int n = 0;
  bool holds = false;
  size_t symbolic_generators = 0;
  bool oracle_confirmed = false;  // every symbolic generator re-confirmed
  double seconds = 0.0;
};

struct UstpReport {
  std::vector<UstpEntry> entries;
  bool all_hold = true;
  std::string caveat;
};

/// Verifies p^(h n) subset of p^n for n = 1..n_max, each n independently.
/// oracle_degree < 0 skips the per-generator cross-check.
UstpReport ustp_containment_report(const QuotientRingSpec& ring, const PrimeSpec& P, int h,
                                   int n_max, int oracle_degree = -1);

}  // namespace frob
