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

#ifndef CPIR_LATTICE_HPP_
#define CPIR_LATTICE_HPP_

#include <cstdint>
#include <optional>
#include <vector>

namespace cpir {

using IntVec = std::vector<int64_t>;

// Row basis of an integer lattice. Entries are 64-bit; inner products are
// taken in 128-bit, which is ample for the desk-scale attacks here.
struct LatticeBasis {
  std::vector<IntVec> rows;

  size_t dim() const { return rows.size(); }
  size_t ambient() const { return rows.empty() ? 0 : rows[0].size(); }
};

// Squared Euclidean norm; throws if it cannot be represented in 64 bits.
uint64_t norm_sq(const IntVec& v);

struct LllResult {
  LatticeBasis basis;
  // Unimodular change of basis: basis.rows = transform * input rows.
  std::vector<IntVec> transform;
};

// Textbook LLL with floating-point Gram-Schmidt. Requires linearly
// independent rows, 1/4 < delta < 1, and dimension <= 32 (fp error is not an
// issue at these sizes; the brute-force oracle below guards the tests).
LllResult lll(const LatticeBasis& basis, double delta = 0.75);

// Determinant of a square integer matrix (fraction-free elimination), for
// checking that an LLL transform is unimodular.
__int128 int_det(const std::vector<IntVec>& m);

// Exhaustive shortest nonzero vector over integer combinations with
// coefficients in [-coeff_bound, coeff_bound]. Dimension <= 6.
IntVec shortest_vector_bruteforce(const LatticeBasis& basis, int64_t coeff_bound);

struct CvpResult {
  IntVec closest;   // lattice vector near the target
  IntVec residual;  // target - closest
  uint64_t dist_sq = 0;
};

// Closest-vector candidate via the embedding trick: reduce the basis
// [[B, 0], [target, gamma]] and read the short vector whose last coordinate
// is +-gamma. nullopt when no reduced vector has that form (caller may retry
// with a different gamma).
std::optional<CvpResult> cvp_embed(const LatticeBasis& basis, const IntVec& target, int64_t gamma = 1);

}  // namespace cpir

#endif  // CPIR_LATTICE_HPP_
