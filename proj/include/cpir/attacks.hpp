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

#ifndef CPIR_ATTACKS_HPP_
#define CPIR_ATTACKS_HPP_

#include <optional>
#include <string>
#include <vector>

#include "cpir/framework.hpp"
#include "cpir/lattice.hpp"
#include "cpir/linalg.hpp"

namespace cpir {

// The N query vectors assembled as matrix rows, the server's view of a
// retrieval. Attacks only ever read this.
struct QueryMatrix {
  RingCtx ctx;
  Matrix A;

  size_t db_size() const { return A.rows(); }
};

// Rows exactly as transmitted: one column per code coordinate in
// SystematicErrors mode, the (a_i, a_i*s + e_i) pair in
// ExplicitCoefficients mode.
QueryMatrix query_matrix(const Query& query);

// Unrolls polynomial entries into their coefficients: an N x c matrix over a
// polynomial ring becomes N x (c*deg) over the integer residue ring.
QueryMatrix coefficient_rows(const QueryMatrix& qm);

// Views an integer residue matrix as a prime-field matrix (requires the
// modulus to be prime), unlocking the field-only attacks.
QueryMatrix reinterpret_prime(const QueryMatrix& qm);

// Outcome of one distinguishing attack. Indices are 1-based to match the
// client's file indexing. When a phase ends in a tie, guess stays empty and
// candidates carries every tied index.
struct AttackReport {
  std::string strategy;
  std::vector<uint64_t> stats;        // per-index statistic (membership flag, rank, or block norm)
  std::optional<size_t> guess;        // in [1, db_size] when present
  std::vector<size_t> candidates;     // indices compatible with the statistic
  double wall_ms = 0;
  bool degraded = false;              // too few rows for the rank statistic to separate
  bool no_gap_expected = false;       // strategy known not to bite this scheme; set by callers
  uint64_t candidate_bound = 0;       // cap on how many indices can ever be flagged (unit-vector search)

  // Lattice attack phases.
  std::vector<uint64_t> block_stats;        // shortest reduced norm per block
  std::vector<size_t> block_candidates;     // 1-based blocks attaining the max statistic
  std::optional<size_t> guessed_block;      // set when the argmax is unique
  std::vector<uint64_t> position_stats;     // CVP residual norm per position inside the guessed block
};

// Tests membership of every unit vector u_b in the column span of A. The
// planted index is always flagged when errors vanish at the probe coordinate
// for all other rows; at most A.cols() unit vectors can ever fit in the
// span. Field contexts only.
AttackReport unit_vector_attack(const QueryMatrix& qm);

// Deletes one row at a time, expands to the base field, and ranks the rest;
// the row blind to the probe coordinate leaves a lower rank behind, so the
// guess is the argmin. Prime-field input is treated as extension degree 1.
// Sets `degraded` when fewer than (extension degree * cols) rows remain.
AttackReport rank_drop_attack(const QueryMatrix& qm);

// Integer lattice spanned by the columns of a residue block together with
// p times the identity, echelon-reduced to an independent row basis.
LatticeBasis pary_block_basis(const Matrix& block, uint64_t p);

// Two-phase lattice attack on centered-residue queries over F_p. Phase 1
// partitions rows into blocks of block_size, reduces each block's p-ary
// column lattice, and takes the block whose shortest reduced vector is
// largest (the planted t entry spoils the short all-+-1 combination). Phase 2
// solves a CVP instance per position in that block with target t*u_j via the
// embedding trick and takes the argmin residual. Requires
// 1 <= block_size <= db_size and block_size <= 12.
AttackReport amg_lattice_attack(const QueryMatrix& qm, uint64_t t, size_t block_size);

// Turns a report into a definite 1-based index for experiments: the guess if
// present, otherwise uniform among the candidates, otherwise uniform over
// the whole database. Keeps uninformative attacks at chance level.
size_t resolve_guess(const AttackReport& report, size_t db_size, Rng& rng);

// Same resolution at block granularity for the lattice attack's first phase.
size_t resolve_block_guess(const AttackReport& report, Rng& rng);

}  // namespace cpir

#endif  // CPIR_ATTACKS_HPP_
