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

#include "cpir/lattice.hpp"

#include <cmath>
#include <stdexcept>

namespace cpir {

namespace {

constexpr size_t kMaxLllDim = 32;

void check_shape(const LatticeBasis& basis) {
  if (basis.rows.empty()) throw std::invalid_argument("lattice: empty basis");
  const size_t amb = basis.rows[0].size();
  if (amb == 0) throw std::invalid_argument("lattice: zero-width basis");
  for (const IntVec& r : basis.rows) {
    if (r.size() != amb) throw std::invalid_argument("lattice: ragged basis rows");
  }
}

double fdot(const IntVec& a, const std::vector<double>& b) {
  double acc = 0;
  for (size_t i = 0; i < a.size(); ++i) acc += static_cast<double>(a[i]) * b[i];
  return acc;
}

// Gram-Schmidt over the rationals in double precision. star[i] is b_i
// orthogonalized; mu[i][j] the projection coefficients; norms[i] = |star_i|^2.
void gram_schmidt(const std::vector<IntVec>& rows, std::vector<std::vector<double>>* star,
                  std::vector<std::vector<double>>* mu, std::vector<double>* norms) {
  const size_t d = rows.size();
  const size_t amb = rows[0].size();
  star->assign(d, std::vector<double>(amb, 0.0));
  mu->assign(d, std::vector<double>(d, 0.0));
  norms->assign(d, 0.0);
  for (size_t i = 0; i < d; ++i) {
    std::vector<double>& s = (*star)[i];
    for (size_t c = 0; c < amb; ++c) s[c] = static_cast<double>(rows[i][c]);
    for (size_t j = 0; j < i; ++j) {
      const double denom = (*norms)[j];
      const double m = denom > 0 ? fdot(rows[i], (*star)[j]) / denom : 0.0;
      (*mu)[i][j] = m;
      for (size_t c = 0; c < amb; ++c) s[c] -= m * (*star)[j][c];
    }
    double n = 0;
    for (double c : s) n += c * c;
    (*norms)[i] = n;
  }
}

void row_axpy(IntVec* target, int64_t factor, const IntVec& src) {
  for (size_t c = 0; c < target->size(); ++c) (*target)[c] -= factor * src[c];
}

}  // namespace

uint64_t norm_sq(const IntVec& v) {
  unsigned __int128 acc = 0;
  for (int64_t c : v) acc += static_cast<unsigned __int128>(static_cast<__int128>(c) * c);
  if (acc > UINT64_MAX) throw std::overflow_error("norm_sq: squared norm exceeds 64 bits");
  return static_cast<uint64_t>(acc);
}

LllResult lll(const LatticeBasis& basis, double delta) {
  check_shape(basis);
  if (basis.dim() > kMaxLllDim) throw std::invalid_argument("lll: dimension above desk-scale bound");
  if (!(delta > 0.25 && delta < 1.0)) throw std::invalid_argument("lll: delta must lie in (1/4, 1)");

  const size_t d = basis.dim();
  std::vector<IntVec> b = basis.rows;
  std::vector<IntVec> u(d, IntVec(d, 0));
  for (size_t i = 0; i < d; ++i) u[i][i] = 1;

  std::vector<std::vector<double>> star, mu;
  std::vector<double> norms;
  gram_schmidt(b, &star, &mu, &norms);
  for (size_t i = 0; i < d; ++i) {
    // A dependent row orthogonalizes to pure rounding noise, far below the
    // row's own scale.
    double row_norm = 0;
    for (int64_t c : b[i]) row_norm += static_cast<double>(c) * static_cast<double>(c);
    if (!(norms[i] > 1e-12 * (1.0 + row_norm)))
      throw std::invalid_argument("lll: input rows are linearly dependent");
  }

  size_t k = 1;
  while (k < d) {
    for (size_t j = k; j-- > 0;) {
      const double m = mu[k][j];
      if (std::fabs(m) > 0.5) {
        const int64_t r = std::llround(m);
        row_axpy(&b[k], r, b[j]);
        row_axpy(&u[k], r, u[j]);
        gram_schmidt(b, &star, &mu, &norms);
      }
    }
    if (norms[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * norms[k - 1]) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      std::swap(u[k], u[k - 1]);
      gram_schmidt(b, &star, &mu, &norms);
      k = k > 1 ? k - 1 : 1;
    }
  }
  return LllResult{LatticeBasis{std::move(b)}, std::move(u)};
}

__int128 int_det(const std::vector<IntVec>& m) {
  const size_t d = m.size();
  for (const IntVec& r : m) {
    if (r.size() != d) throw std::invalid_argument("int_det: matrix is not square");
  }
  // Bareiss fraction-free elimination; every division is exact.
  std::vector<std::vector<__int128>> a(d, std::vector<__int128>(d));
  for (size_t i = 0; i < d; ++i) {
    for (size_t j = 0; j < d; ++j) a[i][j] = m[i][j];
  }
  __int128 sign = 1, prev = 1;
  for (size_t col = 0; col < d; ++col) {
    size_t piv = col;
    while (piv < d && a[piv][col] == 0) ++piv;
    if (piv == d) return 0;
    if (piv != col) {
      std::swap(a[piv], a[col]);
      sign = -sign;
    }
    for (size_t r = col + 1; r < d; ++r) {
      for (size_t c = col + 1; c < d; ++c) {
        a[r][c] = (a[r][c] * a[col][col] - a[r][col] * a[col][c]) / prev;
      }
      a[r][col] = 0;
    }
    prev = a[col][col];
  }
  return sign * a[d - 1][d - 1];
}

IntVec shortest_vector_bruteforce(const LatticeBasis& basis, int64_t coeff_bound) {
  check_shape(basis);
  if (basis.dim() > 6) throw std::invalid_argument("shortest_vector_bruteforce: dimension above enumeration bound");
  if (coeff_bound < 1) throw std::invalid_argument("shortest_vector_bruteforce: need a positive coefficient bound");
  const size_t d = basis.dim();
  const size_t amb = basis.ambient();
  IntVec best;
  unsigned __int128 best_norm = 0;
  std::vector<int64_t> coef(d, -coeff_bound);
  for (;;) {
    IntVec v(amb, 0);
    bool all_zero = true;
    for (size_t i = 0; i < d; ++i) {
      if (coef[i] != 0) all_zero = false;
      for (size_t c = 0; c < amb; ++c) v[c] += coef[i] * basis.rows[i][c];
    }
    if (!all_zero) {
      unsigned __int128 n = 0;
      for (int64_t c : v) n += static_cast<unsigned __int128>(static_cast<__int128>(c) * c);
      if (best.empty() || n < best_norm) {
        best = v;
        best_norm = n;
      }
    }
    size_t pos = 0;
    while (pos < d && coef[pos] == coeff_bound) coef[pos++] = -coeff_bound;
    if (pos == d) break;
    ++coef[pos];
  }
  return best;
}

std::optional<CvpResult> cvp_embed(const LatticeBasis& basis, const IntVec& target, int64_t gamma) {
  check_shape(basis);
  if (target.size() != basis.ambient()) throw std::invalid_argument("cvp_embed: target length mismatch");
  if (gamma < 1) throw std::invalid_argument("cvp_embed: gamma must be positive");
  const size_t d = basis.dim();
  const size_t amb = basis.ambient();
  LatticeBasis embedded;
  embedded.rows.reserve(d + 1);
  for (const IntVec& r : basis.rows) {
    IntVec row = r;
    row.push_back(0);
    embedded.rows.push_back(std::move(row));
  }
  IntVec last = target;
  last.push_back(gamma);
  embedded.rows.push_back(std::move(last));

  const LllResult reduced = lll(embedded);
  const IntVec* pick = nullptr;
  uint64_t pick_norm = 0;
  for (const IntVec& r : reduced.basis.rows) {
    if (r.back() != gamma && r.back() != -gamma) continue;
    const uint64_t n = norm_sq(r);
    if (!pick || n < pick_norm) {
      pick = &r;
      pick_norm = n;
    }
  }
  if (!pick) return std::nullopt;

  // pick = +-[(target - closest), gamma]; orient so it matches the + case.
  CvpResult out;
  out.residual.resize(amb);
  out.closest.resize(amb);
  const int64_t sign = pick->back() == gamma ? 1 : -1;
  for (size_t c = 0; c < amb; ++c) {
    out.residual[c] = sign * (*pick)[c];
    out.closest[c] = target[c] - out.residual[c];
  }
  out.dist_sq = norm_sq(out.residual);
  return out;
}

}  // namespace cpir
