#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "frob/fp.hpp"

namespace frob {

/// Variable blocks. X and Y are the two Segre blocks; generic rings use the
/// X block only. Aux is reserved for internal elimination variables (ideal
/// intersection) and never appears in public inputs or outputs.
enum class Block : uint8_t { X = 0, Y = 1, Aux = 2 };

/// Block-structured variable id: x_{index,factor} or y_{index,factor}.
/// factor is the tensor-power slot, 1 for the base ring.
struct VarId {
  Block block = Block::X;
  uint16_t index = 0;
  uint16_t factor = 1;

  friend std::strong_ordering operator<=>(const VarId& a, const VarId& b) {
    if (a.factor != b.factor) return a.factor <=> b.factor;
    if (a.block != b.block) return a.block <=> b.block;
    return a.index <=> b.index;
  }
  friend bool operator==(const VarId&, const VarId&) = default;
};

inline VarId xvar(uint16_t i, uint16_t k = 1) { return {Block::X, i, k}; }
inline VarId yvar(uint16_t j, uint16_t k = 1) { return {Block::Y, j, k}; }

/// Ring context (p, #x-vars, #y-vars, tensor factors). Every polynomial
/// carries one; mixed-context arithmetic throws.
struct RingContext {
  uint32_t p = 2;
  uint16_t num_x = 1;
  uint16_t num_y = 0;
  uint16_t factors = 1;

  friend bool operator==(const RingContext&, const RingContext&) = default;

  size_t var_count() const { return size_t(num_x + num_y) * factors; }
  bool contains(const VarId& v) const;
  std::vector<VarId> variables() const;  // canonical order, Aux excluded
  RingContext base_ring() const { return {p, num_x, num_y, 1}; }
  RingContext tensor_ring(uint16_t n) const { return {p, num_x, num_y, n}; }
};

/// Exponent vector: sparse map VarId -> positive exponent. Absent means 0.
class ExpVec {
 public:
  ExpVec() = default;

  int64_t get(const VarId& v) const;
  void set(const VarId& v, int64_t e);  // e == 0 erases
  void bump(const VarId& v, int64_t delta);

  bool empty() const { return e_.empty(); }
  size_t support_size() const { return e_.size(); }
  int64_t degree() const;
  int64_t degree_block(Block b) const;
  int64_t degree_factor(uint16_t k) const;
  int64_t degree_block_factor(Block b, uint16_t k) const;

  ExpVec times(const ExpVec& o) const;
  bool divides(const ExpVec& o) const;      // this | o componentwise
  ExpVec quotient_into(const ExpVec& o) const;  // o / this, requires divides
  ExpVec scaled(int64_t m) const;
  static ExpVec lcm(const ExpVec& a, const ExpVec& b);

  const std::vector<std::pair<VarId, int64_t>>& entries() const { return e_; }

  friend std::strong_ordering operator<=>(const ExpVec& a, const ExpVec& b) {
    return a.e_ <=> b.e_;  // structural order, used only for storage
  }
  friend bool operator==(const ExpVec&, const ExpVec&) = default;

  size_t hash() const;

 private:
  std::vector<std::pair<VarId, int64_t>> e_;  // sorted by VarId, values > 0
};

/// Sparse multivariate polynomial over F_p, exact arithmetic, no zero terms.
class Polynomial {
 public:
  explicit Polynomial(RingContext ctx) : ctx_(ctx) {}

  static Polynomial zero(RingContext ctx) { return Polynomial(ctx); }
  static Polynomial constant(RingContext ctx, int64_t c);
  static Polynomial monomial(RingContext ctx, const ExpVec& e, int64_t c = 1);
  static Polynomial variable(RingContext ctx, const VarId& v);

  const RingContext& ctx() const { return ctx_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  size_t term_count() const { return terms_.size(); }
  const std::map<ExpVec, Fp>& terms() const { return terms_; }

  Fp coeff(const ExpVec& e) const;
  void add_term(const ExpVec& e, const Fp& c);

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const Fp& c) const;
  Polynomial operator-() const;
  bool operator==(const Polynomial& o) const {
    return ctx_ == o.ctx_ && terms_ == o.terms_;
  }

  int64_t total_degree() const;  // -1 for the zero polynomial
  int64_t degree_of_var(const VarId& v) const;

  /// Canonical printing: terms sorted grevlex-descending, then variable id.
  std::string to_string() const;

 private:
  RingContext ctx_;
  std::map<ExpVec, Fp> terms_;
};

/// f^(p^e) by exponent scaling; F_p coefficients are Frobenius-fixed.
Polynomial frobenius_power(const Polynomial& f, int e);

/// Power by repeated multiplication (exact).
Polynomial poly_pow(const Polynomial& f, int64_t m);

std::string var_name(const VarId& v, const RingContext& ctx);

}  // namespace frob
