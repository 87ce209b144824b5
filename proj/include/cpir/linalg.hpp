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

#ifndef CPIR_LINALG_HPP_
#define CPIR_LINALG_HPP_

#include <optional>
#include <vector>

#include "cpir/ring.hpp"

namespace cpir {

// A vector of ring elements.
using Vec = std::vector<Element>;

// Dense row-major matrix over a ring context. Entries live in one flat
// residue buffer with a stride of ctx.width() residues per entry, so
// elimination can work in place without per-entry allocation.
class Matrix {
 public:
  Matrix(RingCtx ctx, size_t rows, size_t cols);

  const RingCtx& ctx() const { return ctx_; }
  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  Element at(size_t r, size_t c) const;
  void set(size_t r, size_t c, const Element& x);

  uint64_t* entry(size_t r, size_t c) { return data_.data() + (r * cols_ + c) * width_; }
  const uint64_t* entry(size_t r, size_t c) const { return data_.data() + (r * cols_ + c) * width_; }

  // Rows as Vecs, for building matrices from query vectors.
  void set_row(size_t r, const Vec& row);
  Vec row(size_t r) const;

  static Matrix identity(const RingCtx& ctx, size_t dim);
  static Matrix from_rows(const RingCtx& ctx, const std::vector<Vec>& rows);
  // Copy of this matrix with one row removed.
  Matrix without_row(size_t r) const;
  // Column selection, in the order given.
  Matrix select_columns(const std::vector<size_t>& cols) const;
  bool equals(const Matrix& other) const;

 private:
  RingCtx ctx_;
  size_t rows_, cols_, width_;
  std::vector<uint64_t> data_;
};

// Row-echelon pivot count over a field context (prime or extension field);
// 0 for empty or all-zero input. Rejects non-field contexts.
size_t rank(const Matrix& m);

// a * b over the shared context.
Matrix matmul(const Matrix& a, const Matrix& b);

// Some(x) with m * x = target (free variables set to zero), or nullopt when
// target is outside the column span. Field contexts only.
std::optional<Vec> solve_membership(const Matrix& m, const Vec& target);

// Inverse of a square matrix over a field context; nullopt when singular.
std::optional<Matrix> inverse(const Matrix& m);

// Reduced row echelon form over a field context, pivots normalized to 1.
// Pivot column indices are written to *pivots when given.
Matrix rref(const Matrix& m, std::vector<size_t>* pivots = nullptr);

// Expand a matrix over F_{q^m} to the base field: entry (r, c) becomes m
// consecutive columns holding its coordinates, so the result is rows x m*cols
// over F_q. Base-field rank of the result is the F_q-rank of the input.
Matrix expand_to_base(const Matrix& m);

// v1 + v2 and scalar combination helpers used by the protocol engine.
Vec vec_add(const RingCtx& ctx, const Vec& a, const Vec& b);
Vec vec_scale(const RingCtx& ctx, const Element& scalar, const Vec& v);

}  // namespace cpir

#endif  // CPIR_LINALG_HPP_
