// Copyright 2026 the cpir authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cpir/linalg.hpp"

#include <algorithm>

namespace cpir {

Matrix::Matrix(RingCtx ctx, size_t rows, size_t cols)
    : ctx_(std::move(ctx)), rows_(rows), cols_(cols), width_(ctx_.width()), data_(rows * cols * width_, 0) {}

Element Matrix::at(size_t r, size_t c) const {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("Matrix::at");
  const uint64_t* p = entry(r, c);
  return Element(p, p + width_);
}

void Matrix::set(size_t r, size_t c, const Element& x) {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("Matrix::set");
  if (!ctx_.is_valid(x)) throw std::invalid_argument("Matrix::set: element does not match the ring context");
  std::copy(x.begin(), x.end(), entry(r, c));
}

void Matrix::set_row(size_t r, const Vec& row) {
  if (row.size() != cols_) throw std::invalid_argument("Matrix::set_row: length mismatch");
  for (size_t c = 0; c < cols_; ++c) set(r, c, row[c]);
}

Vec Matrix::row(size_t r) const {
  Vec out(cols_);
  for (size_t c = 0; c < cols_; ++c) out[c] = at(r, c);
  return out;
}

Matrix Matrix::identity(const RingCtx& ctx, size_t dim) {
  Matrix m(ctx, dim, dim);
  const Element one = ctx.one();
  for (size_t i = 0; i < dim; ++i) m.set(i, i, one);
  return m;
}

Matrix Matrix::from_rows(const RingCtx& ctx, const std::vector<Vec>& rows) {
  const size_t cols = rows.empty() ? 0 : rows[0].size();
  Matrix m(ctx, rows.size(), cols);
  for (size_t r = 0; r < rows.size(); ++r) m.set_row(r, rows[r]);
  return m;
}

Matrix Matrix::without_row(size_t r) const {
  if (r >= rows_) throw std::out_of_range("Matrix::without_row");
  Matrix out(ctx_, rows_ - 1, cols_);
  const size_t stride = cols_ * width_;
  for (size_t i = 0, o = 0; i < rows_; ++i) {
    if (i == r) continue;
    std::copy(data_.begin() + i * stride, data_.begin() + (i + 1) * stride, out.data_.begin() + o * stride);
    ++o;
  }
  return out;
}

Matrix Matrix::select_columns(const std::vector<size_t>& cols) const {
  Matrix out(ctx_, rows_, cols.size());
  for (size_t r = 0; r < rows_; ++r) {
    for (size_t j = 0; j < cols.size(); ++j) {
      if (cols[j] >= cols_) throw std::out_of_range("Matrix::select_columns");
      std::copy(entry(r, cols[j]), entry(r, cols[j]) + width_, out.entry(r, j));
    }
  }
  return out;
}

bool Matrix::equals(const Matrix& other) const {
  return ctx_.same_as(other.ctx_) && rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

namespace {

void require_field(const RingCtx& ctx, const char* op) {
  if (!ctx.is_field()) throw std::invalid_argument(std::string(op) + ": requires a field context");
}

void swap_rows(Matrix& m, size_t a, size_t b) {
  if (a == b) return;
  for (size_t c = 0; c < m.cols(); ++c) {
    std::swap_ranges(m.entry(a, c), m.entry(a, c) + m.ctx().width(), m.entry(b, c));
  }
}

// In-place Gauss-Jordan over a field; pivots normalized to 1. Returns the
// pivot columns in order. With reduced=false only the rows below each pivot
// are cleared (enough for rank).
std::vector<size_t> echelonize(Matrix& m, bool reduced) {
  const RingCtx& ctx = m.ctx();
  const size_t width = ctx.width();
  std::vector<uint64_t> prod(width);
  std::vector<size_t> pivots;
  size_t prow = 0;
  for (size_t col = 0; col < m.cols() && prow < m.rows(); ++col) {
    size_t found = prow;
    while (found < m.rows() && entry_is_zero(ctx, m.entry(found, col))) ++found;
    if (found == m.rows()) continue;
    swap_rows(m, prow, found);
    const Element pivot_inv = invert(ctx, m.at(prow, col));
    for (size_t c = col; c < m.cols(); ++c) {
      entry_mul(ctx, m.entry(prow, c), pivot_inv.data(), prod.data());
      std::copy(prod.begin(), prod.end(), m.entry(prow, c));
    }
    const size_t first = reduced ? 0 : prow + 1;
    for (size_t r = first; r < m.rows(); ++r) {
      if (r == prow || entry_is_zero(ctx, m.entry(r, col))) continue;
      const Element factor = m.at(r, col);
      for (size_t c = col; c < m.cols(); ++c) {
        entry_mul(ctx, factor.data(), m.entry(prow, c), prod.data());
        entry_sub(ctx, m.entry(r, c), prod.data(), m.entry(r, c));
      }
    }
    pivots.push_back(col);
    ++prow;
  }
  return pivots;
}

}  // namespace

size_t rank(const Matrix& m) {
  require_field(m.ctx(), "rank");
  Matrix work = m;
  return echelonize(work, /*reduced=*/false).size();
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (!a.ctx().same_as(b.ctx())) throw std::invalid_argument("matmul: context mismatch");
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul: shape mismatch");
  const RingCtx& ctx = a.ctx();
  const size_t width = ctx.width();
  Matrix out(ctx, a.rows(), b.cols());
  std::vector<uint64_t> prod(width);
  for (size_t r = 0; r < a.rows(); ++r) {
    for (size_t k = 0; k < a.cols(); ++k) {
      if (entry_is_zero(ctx, a.entry(r, k))) continue;
      for (size_t c = 0; c < b.cols(); ++c) {
        entry_mul(ctx, a.entry(r, k), b.entry(k, c), prod.data());
        entry_add(ctx, out.entry(r, c), prod.data(), out.entry(r, c));
      }
    }
  }
  return out;
}

std::optional<Vec> solve_membership(const Matrix& m, const Vec& target) {
  require_field(m.ctx(), "solve_membership");
  if (target.size() != m.rows()) throw std::invalid_argument("solve_membership: target length mismatch");
  const RingCtx& ctx = m.ctx();
  Matrix aug(ctx, m.rows(), m.cols() + 1);
  for (size_t r = 0; r < m.rows(); ++r) {
    for (size_t c = 0; c < m.cols(); ++c) aug.set(r, c, m.at(r, c));
    aug.set(r, m.cols(), target[r]);
  }
  const std::vector<size_t> pivots = echelonize(aug, /*reduced=*/true);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;  // pivot in the target column
  Vec x(m.cols(), ctx.zero());
  for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug.at(i, m.cols());
  return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
  require_field(m.ctx(), "inverse");
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix is not square");
  const size_t n = m.rows();
  const RingCtx& ctx = m.ctx();
  Matrix aug(ctx, n, 2 * n);
  const Element one = ctx.one();
  for (size_t r = 0; r < n; ++r) {
    for (size_t c = 0; c < n; ++c) aug.set(r, c, m.at(r, c));
    aug.set(r, n + r, one);
  }
  const std::vector<size_t> pivots = echelonize(aug, /*reduced=*/true);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  Matrix out(ctx, n, n);
  for (size_t r = 0; r < n; ++r) {
    for (size_t c = 0; c < n; ++c) out.set(r, c, aug.at(r, n + c));
  }
  return out;
}

Matrix rref(const Matrix& m, std::vector<size_t>* pivots) {
  require_field(m.ctx(), "rref");
  Matrix work = m;
  std::vector<size_t> p = echelonize(work, /*reduced=*/true);
  if (pivots) *pivots = std::move(p);
  return work;
}

Matrix expand_to_base(const Matrix& m) {
  const RingCtx& ctx = m.ctx();
  if (ctx.kind() == RingKind::PrimeField) return m;  // already over the base field
  if (ctx.kind() != RingKind::ExtField) throw std::invalid_argument("expand_to_base: requires an extension field");
  const uint32_t deg = ctx.degree();
  const RingCtx base = RingCtx::prime_field(ctx.modulus());
  Matrix out(base, m.rows(), m.cols() * deg);
  for (size_t r = 0; r < m.rows(); ++r) {
    for (size_t c = 0; c < m.cols(); ++c) {
      const uint64_t* e = m.entry(r, c);
      for (uint32_t i = 0; i < deg; ++i) out.set(r, c * deg + i, Element{e[i]});
    }
  }
  return out;
}

Vec vec_add(const RingCtx& ctx, const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vec_add: length mismatch");
  Vec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = add(ctx, a[i], b[i]);
  return out;
}

Vec vec_scale(const RingCtx& ctx, const Element& scalar, const Vec& v) {
  Vec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = mul(ctx, scalar, v[i]);
  return out;
}

}  // namespace cpir
