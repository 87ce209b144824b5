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

#include "cpir/scheme_params.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace cpir {

SchemeId scheme_id_of(const SchemeParams& params) {
  return std::visit(
      [](const auto& p) -> SchemeId {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, BasicParams>) return SchemeId::Basic;
        if constexpr (std::is_same_v<T, HhwzParams>) return SchemeId::Hhwz;
        if constexpr (std::is_same_v<T, AmgParams>) return SchemeId::Amg;
        if constexpr (std::is_same_v<T, RlweParams>) return SchemeId::Rlwe;
      },
      params);
}

AmgParams derive_amg(uint64_t db_size, size_t n, size_t k) {
  if (db_size < 1) throw std::invalid_argument("amg: database size must be >= 1");
  if (k == 0 || k >= n) throw std::invalid_argument("amg: need 0 < k < n");
  // Bounded so a hostile db_size near 2^64 cannot push the shift count past 63.
  uint32_t ceil_log2 = 0;
  while (ceil_log2 < 64 && (uint64_t(1) << ceil_log2) < db_size) ++ceil_log2;
  AmgParams out;
  out.db_size = db_size;
  out.n = n;
  out.k = k;
  out.ell = ceil_log2 + 1;
  if (out.ell > 20) throw std::invalid_argument("amg: database too large for 64-bit arithmetic headroom");
  out.t = uint64_t(1) << (2 * out.ell);
  out.p = next_prime_above(uint64_t(1) << (3 * out.ell + 1));
  return out;
}

namespace {

void validate_amg(const AmgParams& p) {
  if (p.k == 0 || p.k >= p.n) throw std::invalid_argument("amg: need 0 < k < n");
  const AmgParams derived = derive_amg(p.db_size, p.n, p.k);
  if (p.ell != derived.ell) throw std::invalid_argument("amg: ell does not match ceil(log2(db_size)) + 1");
  if (p.t != derived.t) throw std::invalid_argument("amg: t does not match 2^(2*ell)");
  if (!is_prime(p.p)) throw std::invalid_argument("amg: p is not prime");
  if (p.p <= (uint64_t(1) << (3 * p.ell + 1))) throw std::invalid_argument("amg: p must exceed 2^(3*ell+1)");
}

void validate_rlwe(const RlweParams& p) {
  if (std::gcd(p.t, p.q) != 1) throw std::invalid_argument("rlwe: gcd(t, q) must be 1");
  if (p.t >= p.q) throw std::invalid_argument("rlwe: t must be smaller than q");
  if (p.sigma < 0) throw std::invalid_argument("rlwe: sigma must be >= 0");
  if (p.db_size < 1) throw std::invalid_argument("rlwe: database size must be >= 1");
  const double lhs = static_cast<double>(p.db_size) * static_cast<double>(p.t) * static_cast<double>(p.t) *
                     p.sigma * std::sqrt(static_cast<double>(p.deg));
  const double rhs = static_cast<double>(p.q) / 2.0;
  if (!(lhs < rhs)) {
    std::ostringstream msg;
    msg << "rlwe: correctness gate failed: db_size*t^2*sigma*sqrt(deg) = " << lhs << " is not below q/2 = " << rhs;
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

SchemeParams normalize(const SchemeParams& params) {
  SchemeParams out = params;
  std::visit(
      [](auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, BasicParams>) {
          if (p.k == 0 || p.k >= p.n) throw std::invalid_argument("basic: need 0 < k < n");
          if (!is_prime(p.q)) throw std::invalid_argument("basic: q must be prime");
        } else if constexpr (std::is_same_v<T, HhwzParams>) {
          if (p.k == 0 || p.k >= p.n) throw std::invalid_argument("hhwz: need 0 < k < n");
          if (p.s < 1 || p.s >= p.m) throw std::invalid_argument("hhwz: need 1 <= s < m");
          if (p.modulus.empty()) p.modulus = find_irreducible(p.q, p.m);
          (void)RingCtx::ext_field(p.q, p.m, p.modulus);  // full validation
        } else if constexpr (std::is_same_v<T, AmgParams>) {
          if (p.ell == 0 && p.t == 0 && p.p == 0) p = derive_amg(p.db_size, p.n, p.k);
          validate_amg(p);
        } else if constexpr (std::is_same_v<T, RlweParams>) {
          (void)RingCtx::poly_ring(p.q, p.deg);  // power-of-two and modulus checks
          validate_rlwe(p);
        }
      },
      out);
  return out;
}

RingCtx ctx_for(const SchemeParams& params) {
  const SchemeParams norm = normalize(params);
  return std::visit(
      [](const auto& p) -> RingCtx {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, BasicParams>) return RingCtx::prime_field(p.q);
        if constexpr (std::is_same_v<T, HhwzParams>) return RingCtx::ext_field(p.q, p.m, p.modulus);
        if constexpr (std::is_same_v<T, AmgParams>) return RingCtx::prime_field(p.p);
        if constexpr (std::is_same_v<T, RlweParams>) return RingCtx::poly_ring(p.q, p.deg);
      },
      norm);
}

size_t file_width(const SchemeParams& params) {
  return std::visit(
      [](const auto& p) -> size_t {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, BasicParams>) return 1;
        if constexpr (std::is_same_v<T, HhwzParams>) return p.m;
        if constexpr (std::is_same_v<T, AmgParams>) return 1;
        if constexpr (std::is_same_v<T, RlweParams>) return p.deg;
      },
      params);
}

BasicParams default_basic() { return BasicParams{}; }

HhwzParams default_hhwz() {
  HhwzParams p;
  p.modulus = find_irreducible(p.q, p.m);
  return p;
}

AmgParams default_amg() { return derive_amg(8, 4, 2); }

RlweParams default_rlwe() { return RlweParams{}; }

}  // namespace cpir
