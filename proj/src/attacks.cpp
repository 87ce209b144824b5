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

#include "cpir/attacks.hpp"

#include <algorithm>
#include <chrono>

namespace cpir {

namespace {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void require_field_matrix(const QueryMatrix& qm, const char* op) {
  if (!qm.ctx.is_field())
    throw std::invalid_argument(std::string(op) + ": requires a field context; expand or reinterpret the rows first");
}

// Fills guess/candidates from an extremal statistic. better(a, b) returns
// true when a beats b.
template <typename Better>
void pick_extremal(const std::vector<uint64_t>& stats, Better better, std::optional<size_t>* guess,
                   std::vector<size_t>* candidates) {
  uint64_t best = stats[0];
  for (uint64_t s : stats) {
    if (better(s, best)) best = s;
  }
  candidates->clear();
  for (size_t i = 0; i < stats.size(); ++i) {
    if (stats[i] == best) candidates->push_back(i + 1);
  }
  if (candidates->size() == 1) *guess = (*candidates)[0];
}

}  // namespace

QueryMatrix query_matrix(const Query& query) {
  const RingCtx ctx = ctx_for(query.params);
  return QueryMatrix{ctx, Matrix::from_rows(ctx, query.rows)};
}

QueryMatrix coefficient_rows(const QueryMatrix& qm) {
  if (qm.ctx.kind() != RingKind::PolyRing)
    throw std::invalid_argument("coefficient_rows: input must be over a polynomial ring");
  const uint32_t deg = qm.ctx.degree();
  const RingCtx flat = RingCtx::mod_ring(qm.ctx.modulus());
  Matrix out(flat, qm.A.rows(), qm.A.cols() * deg);
  for (size_t r = 0; r < qm.A.rows(); ++r) {
    for (size_t c = 0; c < qm.A.cols(); ++c) {
      const uint64_t* e = qm.A.entry(r, c);
      for (uint32_t i = 0; i < deg; ++i) out.set(r, c * deg + i, Element{e[i]});
    }
  }
  return QueryMatrix{flat, std::move(out)};
}

QueryMatrix reinterpret_prime(const QueryMatrix& qm) {
  if (qm.ctx.kind() != RingKind::ModRing)
    throw std::invalid_argument("reinterpret_prime: input must be over an integer residue ring");
  if (!is_prime(qm.ctx.modulus()))
    throw std::invalid_argument("reinterpret_prime: modulus is not prime");
  const RingCtx field = RingCtx::prime_field(qm.ctx.modulus());
  Matrix out(field, qm.A.rows(), qm.A.cols());
  for (size_t r = 0; r < qm.A.rows(); ++r) {
    for (size_t c = 0; c < qm.A.cols(); ++c) out.set(r, c, qm.A.at(r, c));
  }
  return QueryMatrix{field, std::move(out)};
}

AttackReport unit_vector_attack(const QueryMatrix& qm) {
  require_field_matrix(qm, "unit_vector_attack");
  Stopwatch timer;
  const size_t n = qm.db_size();
  AttackReport report;
  report.strategy = "unitvec";
  report.stats.assign(n, 0);
  report.candidate_bound = qm.A.cols();
  for (size_t b = 1; b <= n; ++b) {
    Vec target(n, qm.ctx.zero());
    target[b - 1] = qm.ctx.one();
    if (solve_membership(qm.A, target)) {
      report.stats[b - 1] = 1;
      report.candidates.push_back(b);
    }
  }
  if (!report.candidates.empty()) report.guess = report.candidates.front();
  report.wall_ms = timer.ms();
  return report;
}

AttackReport rank_drop_attack(const QueryMatrix& qm) {
  if (qm.ctx.kind() != RingKind::PrimeField && qm.ctx.kind() != RingKind::ExtField)
    throw std::invalid_argument("rank_drop_attack: requires a prime or extension field context");
  Stopwatch timer;
  const size_t n = qm.db_size();
  if (n < 2) throw std::invalid_argument("rank_drop_attack: need at least two rows");
  const size_t full_cols = qm.A.cols() * (qm.ctx.kind() == RingKind::ExtField ? qm.ctx.degree() : 1);
  AttackReport report;
  report.strategy = "rank";
  report.degraded = n < full_cols;  // deleting a row can no longer leave a full-rank matrix
  report.stats.resize(n);
  for (size_t i = 0; i < n; ++i) {
    report.stats[i] = rank(expand_to_base(qm.A.without_row(i)));
  }
  pick_extremal(report.stats, [](uint64_t a, uint64_t b) { return a < b; }, &report.guess, &report.candidates);
  report.wall_ms = timer.ms();
  return report;
}

LatticeBasis pary_block_basis(const Matrix& block, uint64_t p) {
  if (block.ctx().kind() != RingKind::PrimeField || block.ctx().modulus() != p)
    throw std::invalid_argument("pary_block_basis: block must be over F_p");
  const size_t rows = block.rows();
  // Column space of the block = row space of its transpose; echelon-reduce
  // that, then pad with p*e_j at the non-pivot coordinates.
  Matrix transposed(block.ctx(), block.cols(), rows);
  for (size_t r = 0; r < rows; ++r) {
    for (size_t c = 0; c < block.cols(); ++c) transposed.set(c, r, block.at(r, c));
  }
  std::vector<size_t> pivots;
  const Matrix echelon = rref(transposed, &pivots);
  LatticeBasis basis;
  basis.rows.reserve(rows);
  for (size_t r = 0; r < pivots.size(); ++r) {
    IntVec v(rows);
    for (size_t c = 0; c < rows; ++c) v[c] = signed_lift(p, echelon.at(r, c)[0]);
    basis.rows.push_back(std::move(v));
  }
  std::vector<bool> is_pivot(rows, false);
  for (size_t c : pivots) is_pivot[c] = true;
  for (size_t c = 0; c < rows; ++c) {
    if (is_pivot[c]) continue;
    IntVec v(rows, 0);
    v[c] = static_cast<int64_t>(p);
    basis.rows.push_back(std::move(v));
  }
  return basis;
}

AttackReport amg_lattice_attack(const QueryMatrix& qm, uint64_t t, size_t block_size) {
  if (qm.ctx.kind() != RingKind::PrimeField)
    throw std::invalid_argument("amg_lattice_attack: requires rows over a prime field");
  if (t < 2) throw std::invalid_argument("amg_lattice_attack: t must be >= 2");
  const size_t n = qm.db_size();
  if (block_size < 1 || block_size > n)
    throw std::invalid_argument("amg_lattice_attack: need 1 <= block_size <= db_size");
  if (block_size > 12) throw std::invalid_argument("amg_lattice_attack: block size above desk-scale bound");
  Stopwatch timer;
  const uint64_t p = qm.ctx.modulus();
  const size_t num_blocks = (n + block_size - 1) / block_size;

  AttackReport report;
  report.strategy = "lattice";
  report.stats.assign(n, 0);
  report.block_stats.assign(num_blocks, 0);

  for (size_t blk = 0; blk < num_blocks; ++blk) {
    const size_t lo = blk * block_size;
    const size_t hi = std::min(lo + block_size, n);
    Matrix block(qm.ctx, hi - lo, qm.A.cols());
    for (size_t r = lo; r < hi; ++r) {
      for (size_t c = 0; c < qm.A.cols(); ++c) block.set(r - lo, c, qm.A.at(r, c));
    }
    const LllResult reduced = lll(pary_block_basis(block, p));
    uint64_t shortest = UINT64_MAX;
    for (const IntVec& row : reduced.basis.rows) shortest = std::min(shortest, norm_sq(row));
    report.block_stats[blk] = shortest;
    for (size_t r = lo; r < hi; ++r) report.stats[r] = shortest;
  }

  std::optional<size_t> block_guess;
  pick_extremal(report.block_stats, [](uint64_t a, uint64_t b) { return a > b; }, &block_guess,
                &report.block_candidates);
  report.guessed_block = block_guess;
  if (!block_guess) {
    // Ambiguous first phase: every index in a tied block stays a candidate.
    for (size_t blk : report.block_candidates) {
      const size_t lo = (blk - 1) * block_size;
      const size_t hi = std::min(lo + block_size, n);
      for (size_t r = lo; r < hi; ++r) report.candidates.push_back(r + 1);
    }
    report.wall_ms = timer.ms();
    return report;
  }

  const size_t lo = (*block_guess - 1) * block_size;
  const size_t hi = std::min(lo + block_size, n);
  const size_t rows = hi - lo;
  Matrix block(qm.ctx, rows, qm.A.cols());
  for (size_t r = lo; r < hi; ++r) {
    for (size_t c = 0; c < qm.A.cols(); ++c) block.set(r - lo, c, qm.A.at(r, c));
  }
  const LatticeBasis basis = pary_block_basis(block, p);
  report.position_stats.assign(rows, UINT64_MAX);
  for (size_t j = 0; j < rows; ++j) {
    IntVec target(rows, 0);
    target[j] = static_cast<int64_t>(t);
    for (int64_t gamma = 1; gamma <= static_cast<int64_t>(t / 2); gamma = gamma == 1 ? 2 : gamma * 2) {
      if (auto res = cvp_embed(basis, target, gamma)) {
        report.position_stats[j] = res->dist_sq;
        break;
      }
    }
  }
  std::optional<size_t> pos_guess;
  std::vector<size_t> pos_candidates;
  pick_extremal(report.position_stats, [](uint64_t a, uint64_t b) { return a < b; }, &pos_guess, &pos_candidates);
  for (size_t pos : pos_candidates) report.candidates.push_back(lo + pos);
  if (pos_guess) report.guess = lo + *pos_guess;
  report.wall_ms = timer.ms();
  return report;
}

size_t resolve_guess(const AttackReport& report, size_t db_size, Rng& rng) {
  if (report.guess) return *report.guess;
  if (!report.candidates.empty()) return report.candidates[rng.below(report.candidates.size())];
  return 1 + static_cast<size_t>(rng.below(db_size));
}

size_t resolve_block_guess(const AttackReport& report, Rng& rng) {
  if (report.guessed_block) return *report.guessed_block;
  if (report.block_candidates.empty()) throw std::invalid_argument("resolve_block_guess: report has no block phase");
  return report.block_candidates[rng.below(report.block_candidates.size())];
}

}  // namespace cpir
