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

#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "cpir/lattice.hpp"
#include "cpir/rng.hpp"

using namespace cpir;

namespace {

// Cofactor-expansion determinant, independent of the elimination in int_det.
long double oracle_det(const std::vector<IntVec>& m) {
  const size_t n = m.size();
  if (n == 1) return static_cast<long double>(m[0][0]);
  long double acc = 0;
  for (size_t c = 0; c < n; ++c) {
    std::vector<IntVec> minor;
    for (size_t r = 1; r < n; ++r) {
      IntVec row;
      for (size_t cc = 0; cc < n; ++cc) {
        if (cc != c) row.push_back(m[r][cc]);
      }
      minor.push_back(std::move(row));
    }
    const long double term = static_cast<long double>(m[0][c]) * oracle_det(minor);
    acc += (c % 2 == 0) ? term : -term;
  }
  return acc;
}

// Gram-Schmidt recomputed from scratch so the LLL invariants are checked
// against an independent orthogonalization, not the one inside lll().
struct Gso {
  std::vector<std::vector<double>> star;
  std::vector<std::vector<double>> mu;
};

Gso gram_schmidt(const LatticeBasis& basis) {
  const size_t d = basis.dim();
  const size_t n = basis.ambient();
  Gso g;
  g.star.assign(d, std::vector<double>(n, 0.0));
  g.mu.assign(d, std::vector<double>(d, 0.0));
  for (size_t i = 0; i < d; ++i) {
    for (size_t c = 0; c < n; ++c) g.star[i][c] = static_cast<double>(basis.rows[i][c]);
    for (size_t j = 0; j < i; ++j) {
      double num = 0, den = 0;
      for (size_t c = 0; c < n; ++c) {
        num += static_cast<double>(basis.rows[i][c]) * g.star[j][c];
        den += g.star[j][c] * g.star[j][c];
      }
      g.mu[i][j] = num / den;
      for (size_t c = 0; c < n; ++c) g.star[i][c] -= g.mu[i][j] * g.star[j][c];
    }
  }
  return g;
}

double star_norm_sq(const Gso& g, size_t i) {
  double acc = 0;
  for (double c : g.star[i]) acc += c * c;
  return acc;
}

LatticeBasis random_basis(size_t d, int64_t lo, int64_t hi, Rng& rng) {
  for (;;) {
    LatticeBasis b;
    for (size_t i = 0; i < d; ++i) {
      IntVec row(d);
      for (auto& v : row) v = lo + static_cast<int64_t>(rng.below(static_cast<uint64_t>(hi - lo + 1)));
      b.rows.push_back(std::move(row));
    }
    if (int_det(b.rows) != 0) return b;
  }
}

IntVec mat_vec_row(const std::vector<IntVec>& rows, const IntVec& coeffs) {
  IntVec out(rows[0].size(), 0);
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t c = 0; c < out.size(); ++c) out[c] += coeffs[i] * rows[i][c];
  }
  return out;
}

}  // namespace

TEST_CASE("integer determinant matches cofactor expansion") {
  CHECK(int_det({{3, 1}, {4, 2}}) == 2);
  CHECK(int_det({{2, 0, 1}, {1, 3, 2}, {0, 1, 4}}) == 21);
  CHECK(int_det({{1, 2}, {2, 4}}) == 0);
  Rng rng(601);
  for (int trial = 0; trial < 30; ++trial) {
    const size_t d = 1 + rng.below(4);
    std::vector<IntVec> m(d, IntVec(d));
    for (auto& row : m) {
      for (auto& v : row) v = static_cast<int64_t>(rng.below(21)) - 10;
    }
    const long double want = oracle_det(m);
    CHECK(static_cast<long double>(int_det(m)) == want);
  }
}

TEST_CASE("reduction outputs a unimodular transform of the input") {
  Rng rng(602);
  for (int trial = 0; trial < 25; ++trial) {
    const size_t d = 2 + rng.below(4);
    const LatticeBasis input = random_basis(d, -50, 50, rng);
    const LllResult res = lll(input);
    REQUIRE(res.basis.dim() == d);
    REQUIRE(res.transform.size() == d);

    const __int128 tdet = int_det(res.transform);
    CHECK((tdet == 1 || tdet == -1));

    // basis rows must be exactly transform * input rows
    for (size_t i = 0; i < d; ++i) {
      CHECK(res.basis.rows[i] == mat_vec_row(input.rows, res.transform[i]));
    }

    // same lattice, so the determinant magnitude is preserved
    const __int128 din = int_det(input.rows);
    const __int128 dout = int_det(res.basis.rows);
    CHECK((dout == din || dout == -din));
  }
}

TEST_CASE("reduced bases satisfy the size and exchange conditions") {
  Rng rng(603);
  const double delta = 0.75;
  for (int trial = 0; trial < 25; ++trial) {
    const size_t d = 2 + rng.below(4);
    const LatticeBasis input = random_basis(d, -40, 40, rng);
    const LllResult res = lll(input, delta);
    const Gso g = gram_schmidt(res.basis);
    for (size_t i = 0; i < d; ++i) {
      for (size_t j = 0; j < i; ++j) {
        CHECK(std::abs(g.mu[i][j]) <= 0.5 + 1e-6);  // size reduction
      }
      if (i + 1 < d) {
        const double lhs = star_norm_sq(g, i + 1) + g.mu[i + 1][i] * g.mu[i + 1][i] * star_norm_sq(g, i);
        CHECK(lhs >= (delta - 1e-9) * star_norm_sq(g, i));  // exchange condition
      }
    }
  }
}

TEST_CASE("first reduced vector approximates the shortest vector") {
  Rng rng(604);
  for (int trial = 0; trial < 15; ++trial) {
    const size_t d = 2 + rng.below(3);  // 2..4 keeps the brute force honest and fast
    const LatticeBasis input = random_basis(d, -30, 30, rng);
    const LllResult res = lll(input);
    const IntVec shortest = shortest_vector_bruteforce(input, 6);
    const double bound = std::pow(2.0, static_cast<double>(d - 1) / 2.0);
    CHECK(static_cast<double>(norm_sq(res.basis.rows[0])) <=
          bound * bound * static_cast<double>(norm_sq(shortest)) + 1e-6);
  }
}

TEST_CASE("brute-force shortest vector on a frozen diagonal basis") {
  LatticeBasis b;
  b.rows = {{2, 0}, {0, 3}};
  CHECK(norm_sq(shortest_vector_bruteforce(b, 4)) == 4);
  LatticeBasis skew;
  skew.rows = {{1, 1}, {0, 5}};
  CHECK(norm_sq(shortest_vector_bruteforce(skew, 6)) == 2);  // (1,1)
}

TEST_CASE("embedding recovers the closest vector on a scaled integer lattice") {
  LatticeBasis b;
  b.rows = {{100, 0}, {0, 100}};
  const auto res = cvp_embed(b, IntVec{103, -97});
  REQUIRE(res.has_value());
  CHECK(res->closest == IntVec{100, -100});
  CHECK(res->residual == IntVec{3, 3});
  CHECK(res->dist_sq == 18);
}

TEST_CASE("embedding finds planted near-lattice targets") {
  Rng rng(605);
  for (int trial = 0; trial < 20; ++trial) {
    const size_t d = 2 + rng.below(3);
    LatticeBasis b;
    // Columns scaled up so the planted offset is far below the packing radius.
    for (size_t i = 0; i < d; ++i) {
      IntVec row(d, 0);
      row[i] = 500 + static_cast<int64_t>(rng.below(100));
      for (size_t c = 0; c < d; ++c) {
        if (c != i) row[c] = static_cast<int64_t>(rng.below(40));
      }
      b.rows.push_back(std::move(row));
    }
    IntVec coeffs(d);
    for (auto& v : coeffs) v = static_cast<int64_t>(rng.below(9)) - 4;
    IntVec target = mat_vec_row(b.rows, coeffs);
    IntVec offset(d);
    for (size_t c = 0; c < d; ++c) {
      offset[c] = static_cast<int64_t>(rng.below(5)) - 2;
      target[c] += offset[c];
    }
    const auto res = cvp_embed(b, target, 1);
    REQUIRE(res.has_value());
    CHECK(res->residual == offset);
  }
}

TEST_CASE("norm computation guards against 64-bit overflow") {
  CHECK(norm_sq(IntVec{3, 4}) == 25);
  CHECK(norm_sq(IntVec{}) == 0);
  const int64_t big = int64_t{1} << 32;
  CHECK_THROWS_AS(norm_sq(IntVec{big, big}), std::overflow_error);
}

TEST_CASE("reduction input validation") {
  LatticeBasis dependent;
  dependent.rows = {{1, 2}, {2, 4}};
  CHECK_THROWS_AS(lll(dependent), std::invalid_argument);
  LatticeBasis ok;
  ok.rows = {{1, 0}, {0, 1}};
  CHECK_THROWS_AS(lll(ok, 0.2), std::invalid_argument);
  CHECK_THROWS_AS(lll(ok, 1.0), std::invalid_argument);
}
