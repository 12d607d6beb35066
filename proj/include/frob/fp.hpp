#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "frob/util.hpp"

namespace frob {

/// Element of the prime field F_p, value kept reduced into [0, p).
/// Coefficients in this toolkit are always prime-field scalars; larger
/// finite fields are out of scope.
class Fp {
 public:
  Fp(int64_t value, uint32_t p);

  uint32_t value() const { return v_; }
  uint32_t modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  Fp operator+(const Fp& o) const;
  Fp operator-(const Fp& o) const;
  Fp operator*(const Fp& o) const;
  Fp operator-() const;
  Fp inverse() const;
  Fp pow(uint64_t e) const;

  bool operator==(const Fp& o) const { return v_ == o.v_ && p_ == o.p_; }

 private:
  uint32_t v_;
  uint32_t p_;
};

/// Dense matrix over F_p. Entries are stored reduced; the modulus is shared
/// by the whole grid.
class FpMatrix {
 public:
  FpMatrix(size_t rows, size_t cols, uint32_t p);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  uint32_t modulus() const { return p_; }

  uint32_t at(size_t i, size_t j) const { return a_[i * cols_ + j]; }
  void set(size_t i, size_t j, int64_t v) { a_[i * cols_ + j] = uint32_t(pos_mod(v, p_)); }

  static FpMatrix identity(size_t n, uint32_t p);

 private:
  size_t rows_, cols_;
  uint32_t p_;
  std::vector<uint32_t> a_;
};

struct LinearSolution {
  bool consistent = false;
  std::vector<uint32_t> particular;             // one solution, size cols
  std::vector<std::vector<uint32_t>> nullspace; // basis, one vector per free column
};

/// Exact Gaussian elimination over F_p. Returns one particular solution and
/// a nullspace basis, or consistent=false. Throws on dimension mismatch.
LinearSolution solve_linear(const FpMatrix& A, const std::vector<uint32_t>& b);

/// Incremental row-echelon accumulator over F_p for systems assembled row by
/// row (augmented rows: cols unknowns plus one right-hand-side entry).
/// Only pivot rows are stored, so very tall sparse systems stay affordable.
class RowAccumulator {
 public:
  RowAccumulator(uint32_t p, size_t cols);

  /// Adds one augmented row (length cols+1). Returns false and marks the
  /// system inconsistent when the row reduces to (0 ... 0 | c), c != 0.
  bool add_row(std::vector<uint32_t> row);

  /// Sparse convenience form: (column, coefficient) pairs plus rhs.
  bool add_row(const std::vector<std::pair<size_t, uint32_t>>& entries, uint32_t rhs);

  bool consistent() const { return consistent_; }
  size_t rank() const { return pivot_of_col_.size(); }

  /// Particular solution with all free variables set to zero.
  std::optional<std::vector<uint32_t>> solve() const;

  /// Nullspace basis vectors (free column = 1 convention). Cost grows with
  /// the number of free columns; call only at desk scale.
  std::vector<std::vector<uint32_t>> nullspace() const;

 private:
  uint32_t p_;
  size_t cols_;
  bool consistent_ = true;
  std::vector<std::vector<uint32_t>> rows_;     // echelon rows, augmented
  std::vector<size_t> lead_;                    // leading column per row
  std::vector<std::pair<size_t, size_t>> pivot_of_col_;  // (col, row) sorted by col

  std::vector<uint32_t> back_substitute(const std::vector<uint32_t>& free_values) const;
  const std::vector<uint32_t>* row_for_col(size_t col) const;
};

}  // namespace frob
