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

#include "cpir/codes.hpp"

#include <algorithm>
#include <numeric>

namespace cpir {

std::vector<size_t> LinearCode::complement() const {
  std::vector<size_t> out;
  out.reserve(n - k);
  size_t next = 0;
  for (size_t j = 0; j < n; ++j) {
    if (next < I.size() && I[next] == j) {
      ++next;
    } else {
      out.push_back(j);
    }
  }
  return out;
}

namespace {

std::vector<size_t> random_subset(size_t n, size_t k, Rng& rng) {
  std::vector<size_t> idx(n);
  std::iota(idx.begin(), idx.end(), size_t{0});
  for (size_t i = 0; i < k; ++i) {
    const size_t j = i + static_cast<size_t>(rng.below(n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace

LinearCode sample_code(const RingCtx& ctx, size_t n, size_t k, Rng& rng) {
  if (!ctx.is_field()) throw std::invalid_argument("sample_code: requires a field context");
  if (k == 0 || k >= n) throw std::invalid_argument("sample_code: need 0 < k < n");
  for (;;) {
    Matrix G(ctx, k, n);
    for (size_t r = 0; r < k; ++r) {
      for (size_t c = 0; c < n; ++c) G.set(r, c, ctx.uniform(rng));
    }
    if (rank(G) < k) continue;
    for (int attempt = 0; attempt < 64; ++attempt) {
      std::vector<size_t> I = random_subset(n, k, rng);
      auto inv = inverse(G.select_columns(I));
      if (inv) return LinearCode(ctx, n, k, std::move(G), std::move(I), std::move(*inv));
    }
  }
}

Vec encode(const LinearCode& code, const Vec& a) {
  if (a.size() != code.k) throw std::invalid_argument("encode: message length mismatch");
  const RingCtx& ctx = code.ctx;
  Vec out(code.n, ctx.zero());
  std::vector<uint64_t> prod(ctx.width());
  for (size_t i = 0; i < code.k; ++i) {
    if (!ctx.is_valid(a[i])) throw std::invalid_argument("encode: message element does not match the ring context");
    if (ctx.is_zero(a[i])) continue;
    for (size_t c = 0; c < code.n; ++c) {
      entry_mul(ctx, a[i].data(), code.G.entry(i, c), prod.data());
      entry_add(ctx, out[c].data(), prod.data(), out[c].data());
    }
  }
  return out;
}

Vec erase_decode(const LinearCode& code, const Vec& r) {
  if (r.size() != code.n) throw std::invalid_argument("erase_decode: vector length mismatch");
  const RingCtx& ctx = code.ctx;
  // a = r_I * G_I_inv, then r - a*G.
  Vec rI(code.k);
  for (size_t i = 0; i < code.k; ++i) rI[i] = r[code.I[i]];
  Vec a(code.k, ctx.zero());
  std::vector<uint64_t> prod(ctx.width());
  for (size_t i = 0; i < code.k; ++i) {
    for (size_t j = 0; j < code.k; ++j) {
      entry_mul(ctx, rI[i].data(), code.G_I_inv.entry(i, j), prod.data());
      entry_add(ctx, a[j].data(), prod.data(), a[j].data());
    }
  }
  Vec c = encode(code, a);
  Vec out(code.n);
  for (size_t j = 0; j < code.n; ++j) out[j] = sub(ctx, r[j], c[j]);
  return out;
}

Element cc_encode(const ConstacyclicCode& code, const Element& a) { return mul(code.ctx, a, code.s); }

Element cc_decode(const ConstacyclicCode& code, const Element& r1, const Element& r2) {
  return sub(code.ctx, r2, mul(code.ctx, code.s, r1));
}

}  // namespace cpir
