#include "frob/fp.hpp"

#include <algorithm>
#include <stdexcept>

namespace frob {

Fp::Fp(int64_t value, uint32_t p) : p_(p) {
  if (p < 2 || !is_prime(p)) throw std::invalid_argument("Fp: modulus must be prime >= 2");
  v_ = uint32_t(pos_mod(value, p));
}

static void check_same(const Fp& a, const Fp& b) {
  if (a.modulus() != b.modulus()) throw std::invalid_argument("Fp: modulus mismatch");
}

Fp Fp::operator+(const Fp& o) const {
  check_same(*this, o);
  uint64_t s = uint64_t(v_) + o.v_;
  return Fp(int64_t(s % p_), p_);
}

Fp Fp::operator-(const Fp& o) const {
  check_same(*this, o);
  return Fp(int64_t(v_) - int64_t(o.v_), p_);
}

Fp Fp::operator*(const Fp& o) const {
  check_same(*this, o);
  return Fp(int64_t((uint64_t(v_) * o.v_) % p_), p_);
}

Fp Fp::operator-() const { return Fp(-int64_t(v_), p_); }

Fp Fp::pow(uint64_t e) const {
  Fp base = *this;
  Fp acc(1, p_);
  while (e) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

Fp Fp::inverse() const {
  if (v_ == 0) throw std::domain_error("Fp: inverse of zero");
  return pow(p_ - 2);
}

FpMatrix::FpMatrix(size_t rows, size_t cols, uint32_t p)
    : rows_(rows), cols_(cols), p_(p), a_(rows * cols, 0) {
  if (p < 2 || !is_prime(p)) throw std::invalid_argument("FpMatrix: modulus must be prime");
}

FpMatrix FpMatrix::identity(size_t n, uint32_t p) {
  FpMatrix m(n, n, p);
  for (size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

namespace {

uint32_t inv_mod(uint32_t a, uint32_t p) { return Fp(a, p).inverse().value(); }

}  // namespace

LinearSolution solve_linear(const FpMatrix& A, const std::vector<uint32_t>& b) {
  if (b.size() != A.rows()) throw std::invalid_argument("solve_linear: dimension mismatch");
  const uint32_t p = A.modulus();
  const size_t m = A.rows(), n = A.cols();

  // Augmented working copy.
  std::vector<std::vector<uint32_t>> w(m, std::vector<uint32_t>(n + 1, 0));
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < n; ++j) w[i][j] = A.at(i, j) % p;
    w[i][n] = b[i] % p;
  }

  std::vector<size_t> pivot_col;
  size_t row = 0;
  for (size_t col = 0; col < n && row < m; ++col) {
    size_t sel = row;
    while (sel < m && w[sel][col] == 0) ++sel;
    if (sel == m) continue;
    std::swap(w[sel], w[row]);
    uint32_t inv = inv_mod(w[row][col], p);
    for (size_t j = col; j <= n; ++j)
      w[row][j] = uint32_t((uint64_t(w[row][j]) * inv) % p);
    for (size_t i = 0; i < m; ++i) {
      if (i == row || w[i][col] == 0) continue;
      uint64_t f = w[i][col];
      for (size_t j = col; j <= n; ++j)
        w[i][j] = uint32_t(pos_mod(int64_t(w[i][j]) - int64_t((f * w[row][j]) % p), p));
    }
    pivot_col.push_back(col);
    ++row;
  }

  LinearSolution out;
  for (size_t i = row; i < m; ++i)
    if (w[i][n] != 0) return out;  // inconsistent
  out.consistent = true;

  std::vector<bool> is_pivot(n, false);
  for (size_t c : pivot_col) is_pivot[c] = true;

  out.particular.assign(n, 0);
  for (size_t r = 0; r < pivot_col.size(); ++r)
    out.particular[pivot_col[r]] = w[r][n];

  for (size_t free_col = 0; free_col < n; ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<uint32_t> v(n, 0);
    v[free_col] = 1;
    for (size_t r = 0; r < pivot_col.size(); ++r)
      v[pivot_col[r]] = uint32_t(pos_mod(-int64_t(w[r][free_col]), p));
    out.nullspace.push_back(std::move(v));
  }
  return out;
}

RowAccumulator::RowAccumulator(uint32_t p, size_t cols) : p_(p), cols_(cols) {
  if (p < 2 || !is_prime(p)) throw std::invalid_argument("RowAccumulator: modulus must be prime");
}

const std::vector<uint32_t>* RowAccumulator::row_for_col(size_t col) const {
  auto it = std::lower_bound(pivot_of_col_.begin(), pivot_of_col_.end(),
                             std::make_pair(col, size_t(0)));
  if (it == pivot_of_col_.end() || it->first != col) return nullptr;
  return &rows_[it->second];
}

bool RowAccumulator::add_row(std::vector<uint32_t> row) {
  if (row.size() != cols_ + 1) throw std::invalid_argument("RowAccumulator: bad row length");
  size_t lead = 0;
  while (lead < cols_) {
    while (lead < cols_ && row[lead] == 0) ++lead;
    if (lead == cols_) break;
    const std::vector<uint32_t>* piv = row_for_col(lead);
    if (!piv) break;
    uint64_t f = row[lead];  // pivot rows are monic
    for (size_t j = lead; j <= cols_; ++j) {
      if ((*piv)[j])
        row[j] = uint32_t(pos_mod(int64_t(row[j]) - int64_t((f * (*piv)[j]) % p_), p_));
    }
  }
  if (lead == cols_) {
    if (row[cols_] != 0) consistent_ = false;
    return false;
  }
  uint32_t inv = inv_mod(row[lead], p_);
  for (size_t j = lead; j <= cols_; ++j)
    row[j] = uint32_t((uint64_t(row[j]) * inv) % p_);
  rows_.push_back(std::move(row));
  lead_.push_back(lead);
  pivot_of_col_.insert(
      std::lower_bound(pivot_of_col_.begin(), pivot_of_col_.end(),
                       std::make_pair(lead, size_t(0))),
      {lead, rows_.size() - 1});
  return true;
}

bool RowAccumulator::add_row(const std::vector<std::pair<size_t, uint32_t>>& entries,
                             uint32_t rhs) {
  std::vector<uint32_t> row(cols_ + 1, 0);
  for (auto& [c, v] : entries)
    row[c] = uint32_t((row[c] + uint64_t(v)) % p_);
  row[cols_] = rhs % p_;
  return add_row(std::move(row));
}

std::vector<uint32_t> RowAccumulator::back_substitute(
    const std::vector<uint32_t>& x0) const {
  std::vector<uint32_t> x = x0;
  // pivot_of_col_ is sorted by column; walk pivots from right to left.
  for (auto it = pivot_of_col_.rbegin(); it != pivot_of_col_.rend(); ++it) {
    const auto& row = rows_[it->second];
    size_t c = it->first;
    int64_t acc = row[cols_];
    for (size_t j = c + 1; j < cols_; ++j)
      if (row[j] && x[j]) acc -= int64_t((uint64_t(row[j]) * x[j]) % p_);
    x[c] = uint32_t(pos_mod(acc, p_));
  }
  return x;
}

std::optional<std::vector<uint32_t>> RowAccumulator::solve() const {
  if (!consistent_) return std::nullopt;
  std::vector<uint32_t> zero(cols_, 0);
  return back_substitute(zero);
}

std::vector<std::vector<uint32_t>> RowAccumulator::nullspace() const {
  std::vector<bool> is_pivot(cols_, false);
  for (auto& [c, r] : pivot_of_col_) is_pivot[c] = true;
  std::vector<std::vector<uint32_t>> basis;
  for (size_t free_col = 0; free_col < cols_; ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<uint32_t> x(cols_, 0);
    x[free_col] = 1;
    // Homogeneous back-substitution: rhs column ignored.
    for (auto it = pivot_of_col_.rbegin(); it != pivot_of_col_.rend(); ++it) {
      const auto& row = rows_[it->second];
      size_t c = it->first;
      int64_t acc = 0;
      for (size_t j = c + 1; j < cols_; ++j)
        if (row[j] && x[j]) acc -= int64_t((uint64_t(row[j]) * x[j]) % p_);
      x[c] = uint32_t(pos_mod(acc, p_));
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

}  // namespace frob
