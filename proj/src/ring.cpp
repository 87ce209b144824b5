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

#include "cpir/ring.hpp"

#include <algorithm>

#include "cpir/rng.hpp"

namespace cpir {

namespace {

constexpr uint32_t kMaxExtDegree = 16;
constexpr uint32_t kMaxPolyDegree = 4096;

// Polynomials over F_q as coefficient vectors, constant term first, trailing
// zeros trimmed. Used for extension-field reduction, inversion, and the
// irreducibility search.
using Poly = std::vector<uint64_t>;

Poly trim(Poly v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
  return v;
}

int poly_deg(const Poly& v) { return static_cast<int>(v.size()) - 1; }  // -1 for zero

Poly poly_mul(uint64_t q, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      out[i + j] = addmod(out[i + j], mulmod(a[i], b[j], q), q);
    }
  }
  return trim(std::move(out));
}

// num = quot * den + rem with deg(rem) < deg(den). den nonzero.
void poly_divmod(uint64_t q, Poly num, const Poly& den, Poly* quot, Poly* rem) {
  const int dd = poly_deg(den);
  Poly qout(num.size() > den.size() ? num.size() - den.size() + 1 : 1, 0);
  const uint64_t lead_inv = invmod(den.back(), q);
  while (poly_deg(num) >= dd) {
    const int shift = poly_deg(num) - dd;
    const uint64_t coef = mulmod(num.back(), lead_inv, q);
    qout[shift] = coef;
    for (int i = 0; i <= dd; ++i) {
      num[shift + i] = submod(num[shift + i], mulmod(coef, den[i], q), q);
    }
    num = trim(std::move(num));
  }
  if (quot) *quot = trim(std::move(qout));
  if (rem) *rem = std::move(num);
}

// Inverse of a modulo modpoly in F_q[x]; NonUnitError when gcd is not a
// nonzero constant.
Poly poly_inverse(uint64_t q, Poly a, const Poly& modpoly) {
  Poly r0 = modpoly, r1 = trim(std::move(a));
  Poly t0 = {}, t1 = {1};
  while (!r1.empty()) {
    Poly quot, rem;
    poly_divmod(q, r0, r1, &quot, &rem);
    r0 = std::move(r1);
    r1 = std::move(rem);
    // (t0, t1) <- (t1, t0 - quot*t1)
    Poly qt = poly_mul(q, quot, t1);
    Poly next(std::max(t0.size(), qt.size()), 0);
    for (size_t i = 0; i < next.size(); ++i) {
      const uint64_t lhs = i < t0.size() ? t0[i] : 0;
      const uint64_t rhs = i < qt.size() ? qt[i] : 0;
      next[i] = submod(lhs, rhs, q);
    }
    t0 = std::move(t1);
    t1 = trim(std::move(next));
  }
  if (poly_deg(r0) != 0) throw NonUnitError("invert: element shares a factor with the modulus");
  const uint64_t scale = invmod(r0[0], q);
  Poly out = t0;
  for (auto& c : out) c = mulmod(c, scale, q);
  Poly rem;
  poly_divmod(q, std::move(out), modpoly, nullptr, &rem);
  return rem;
}

bool poly_irreducible(uint64_t q, const Poly& candidate) {
  const int m = poly_deg(candidate);
  if (m < 1) return false;
  if (m == 1) return true;
  // Trial division by every monic polynomial of degree 1..m/2.
  for (int d = 1; d <= m / 2; ++d) {
    uint64_t count = 1;
    for (int i = 0; i < d; ++i) {
      if (count > (uint64_t(1) << 22) / q) throw std::invalid_argument("irreducibility check: search space too large");
      count *= q;
    }
    for (uint64_t v = 0; v < count; ++v) {
      Poly div(d + 1, 0);
      uint64_t rest = v;
      for (int i = 0; i < d; ++i) {
        div[i] = rest % q;
        rest /= q;
      }
      div[d] = 1;
      Poly rem;
      poly_divmod(q, candidate, div, nullptr, &rem);
      if (rem.empty()) return false;
    }
  }
  return true;
}

void ext_reduce(const RingCtx& ctx, uint64_t* buf, size_t len, uint64_t* out) {
  // buf holds len coefficients of a product; fold degrees >= m down using the
  // monic field polynomial, then copy the low m coefficients.
  const uint64_t q = ctx.modulus();
  const uint32_t m = ctx.degree();
  const auto& mod = ctx.field_poly();
  for (size_t d = len; d-- > m;) {
    const uint64_t coef = buf[d];
    if (coef == 0) continue;
    buf[d] = 0;
    for (uint32_t i = 0; i < m; ++i) {
      buf[d - m + i] = submod(buf[d - m + i], mulmod(coef, mod[i], q), q);
    }
  }
  std::copy(buf, buf + m, out);
}

}  // namespace

bool is_prime(uint64_t x) {
  if (x < 2) return false;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (x % p == 0) return x == p;
  }
  uint64_t d = x - 1;
  int r = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++r;
  }
  // This base set decides primality for every 64-bit integer.
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    uint64_t v = powmod(a % x, d, x);
    if (v == 1 || v == x - 1) continue;
    bool witness = true;
    for (int i = 1; i < r; ++i) {
      v = mulmod(v, v, x);
      if (v == x - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

uint64_t next_prime_above(uint64_t x) {
  if (x >= UINT64_MAX - 1) throw std::overflow_error("next_prime_above: no prime before 64-bit wraparound");
  for (uint64_t c = x + 1; c >= x + 1; ++c) {
    if (is_prime(c)) return c;
  }
  throw std::overflow_error("next_prime_above: no prime before 64-bit wraparound");
}

std::vector<uint64_t> find_irreducible(uint64_t q, uint32_t m) {
  if (!is_prime(q)) throw std::invalid_argument("find_irreducible: q must be prime");
  if (m < 1 || m > kMaxExtDegree) throw std::invalid_argument("find_irreducible: degree out of range");
  uint64_t count = 1;
  for (uint32_t i = 0; i < m; ++i) {
    if (count > (uint64_t(1) << 24) / q) throw std::invalid_argument("find_irreducible: search space too large");
    count *= q;
  }
  for (uint64_t v = 0; v < count; ++v) {
    Poly cand(m + 1, 0);
    uint64_t rest = v;
    for (uint32_t i = 0; i < m; ++i) {
      cand[i] = rest % q;
      rest /= q;
    }
    cand[m] = 1;
    if (poly_irreducible(q, cand)) return cand;
  }
  throw std::logic_error("find_irreducible: exhausted candidates");  // unreachable: irreducibles exist for every q, m
}

RingCtx RingCtx::prime_field(uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("prime_field: modulus is not prime");
  RingCtx ctx;
  ctx.kind_ = RingKind::PrimeField;
  ctx.modulus_ = p;
  ctx.degree_ = 1;
  return ctx;
}

RingCtx RingCtx::ext_field(uint64_t q, uint32_t m, std::vector<uint64_t> modulus) {
  if (!is_prime(q)) throw std::invalid_argument("ext_field: base modulus is not prime");
  if (m < 1 || m > kMaxExtDegree) throw std::invalid_argument("ext_field: extension degree out of range");
  if (modulus.empty()) modulus = find_irreducible(q, m);
  if (modulus.size() != size_t(m) + 1 || modulus.back() != 1)
    throw std::invalid_argument("ext_field: modulus must be monic of degree m");
  for (uint64_t c : modulus) {
    if (c >= q) throw std::invalid_argument("ext_field: modulus coefficient out of range");
  }
  if (!poly_irreducible(q, modulus)) throw std::invalid_argument("ext_field: modulus is reducible");
  RingCtx ctx;
  ctx.kind_ = RingKind::ExtField;
  ctx.modulus_ = q;
  ctx.degree_ = m;
  ctx.field_poly_ = std::move(modulus);
  return ctx;
}

RingCtx RingCtx::mod_ring(uint64_t q) {
  if (q < 2) throw std::invalid_argument("mod_ring: modulus must be >= 2");
  RingCtx ctx;
  ctx.kind_ = RingKind::ModRing;
  ctx.modulus_ = q;
  ctx.degree_ = 1;
  return ctx;
}

RingCtx RingCtx::poly_ring(uint64_t q, uint32_t n) {
  if (q < 2) throw std::invalid_argument("poly_ring: modulus must be >= 2");
  if (n < 1 || n > kMaxPolyDegree || (n & (n - 1)) != 0)
    throw std::invalid_argument("poly_ring: degree must be a power of two");
  RingCtx ctx;
  ctx.kind_ = RingKind::PolyRing;
  ctx.modulus_ = q;
  ctx.degree_ = n;
  return ctx;
}

bool RingCtx::same_as(const RingCtx& other) const {
  return kind_ == other.kind_ && modulus_ == other.modulus_ && degree_ == other.degree_ &&
         field_poly_ == other.field_poly_;
}

Element RingCtx::one() const { return from_scalar(1); }

Element RingCtx::from_scalar(uint64_t residue) const {
  if (residue >= modulus_) throw std::invalid_argument("from_scalar: residue out of range");
  Element x(width(), 0);
  x[0] = residue;
  return x;
}

bool RingCtx::is_valid(const Element& x) const {
  if (x.size() != width()) return false;
  for (uint64_t r : x) {
    if (r >= modulus_) return false;
  }
  return true;
}

bool RingCtx::is_zero(const Element& x) const {
  for (uint64_t r : x) {
    if (r != 0) return false;
  }
  return true;
}

Element RingCtx::uniform(Rng& rng) const {
  Element x(width());
  for (auto& r : x) r = rng.below(modulus_);
  return x;
}

uint64_t addmod(uint64_t a, uint64_t b, uint64_t q) {
  unsigned __int128 s = static_cast<unsigned __int128>(a) + b;
  return static_cast<uint64_t>(s >= q ? s - q : s);
}

uint64_t submod(uint64_t a, uint64_t b, uint64_t q) { return a >= b ? a - b : a + (q - b); }

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t q) {
  return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % q);
}

uint64_t powmod(uint64_t base, uint64_t exp, uint64_t q) {
  uint64_t acc = 1 % q;
  base %= q;
  while (exp > 0) {
    if (exp & 1) acc = mulmod(acc, base, q);
    base = mulmod(base, base, q);
    exp >>= 1;
  }
  return acc;
}

uint64_t invmod(uint64_t a, uint64_t q) {
  // Extended Euclid with signed Bezout coefficient for a only.
  int64_t t0 = 0, t1 = 1;
  uint64_t r0 = q, r1 = a % q;
  while (r1 != 0) {
    const uint64_t quot = r0 / r1;
    const uint64_t r2 = r0 - quot * r1;
    const int64_t t2 = t0 - static_cast<int64_t>(quot) * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (r0 != 1) throw NonUnitError("invmod: argument shares a factor with the modulus");
  return t0 < 0 ? static_cast<uint64_t>(t0 + static_cast<int64_t>(q)) : static_cast<uint64_t>(t0);
}

void entry_add(const RingCtx& ctx, const uint64_t* a, const uint64_t* b, uint64_t* out) {
  const uint64_t q = ctx.modulus();
  for (size_t i = 0; i < ctx.width(); ++i) out[i] = addmod(a[i], b[i], q);
}

void entry_sub(const RingCtx& ctx, const uint64_t* a, const uint64_t* b, uint64_t* out) {
  const uint64_t q = ctx.modulus();
  for (size_t i = 0; i < ctx.width(); ++i) out[i] = submod(a[i], b[i], q);
}

void entry_neg(const RingCtx& ctx, const uint64_t* a, uint64_t* out) {
  const uint64_t q = ctx.modulus();
  for (size_t i = 0; i < ctx.width(); ++i) out[i] = a[i] == 0 ? 0 : q - a[i];
}

bool entry_is_zero(const RingCtx& ctx, const uint64_t* a) {
  for (size_t i = 0; i < ctx.width(); ++i) {
    if (a[i] != 0) return false;
  }
  return true;
}

void entry_mul(const RingCtx& ctx, const uint64_t* a, const uint64_t* b, uint64_t* out) {
  const uint64_t q = ctx.modulus();
  switch (ctx.kind()) {
    case RingKind::PrimeField:
    case RingKind::ModRing:
      out[0] = mulmod(a[0], b[0], q);
      return;
    case RingKind::ExtField: {
      const uint32_t m = ctx.degree();
      uint64_t buf[2 * kMaxExtDegree - 1] = {0};
      for (uint32_t i = 0; i < m; ++i) {
        if (a[i] == 0) continue;
        for (uint32_t j = 0; j < m; ++j) {
          buf[i + j] = addmod(buf[i + j], mulmod(a[i], b[j], q), q);
        }
      }
      ext_reduce(ctx, buf, 2 * size_t(m) - 1, out);
      return;
    }
    case RingKind::PolyRing: {
      const uint32_t n = ctx.degree();
      for (uint32_t k = 0; k < n; ++k) {
        unsigned __int128 acc = 0;
        for (uint32_t i = 0; i <= k; ++i) acc += mulmod(a[i], b[k - i], q);
        // wrapped terms pick up the x^n = -1 sign
        for (uint32_t i = k + 1; i < n; ++i) acc += q - mulmod(a[i], b[k + n - i], q);
        out[k] = static_cast<uint64_t>(acc % q);
      }
      return;
    }
  }
  throw std::logic_error("entry_mul: unknown ring kind");
}

namespace {

void check_operand(const RingCtx& ctx, const Element& x) {
  if (!ctx.is_valid(x)) throw std::invalid_argument("ring op: element does not match the ring context");
}

}  // namespace

Element add(const RingCtx& ctx, const Element& x, const Element& y) {
  check_operand(ctx, x);
  check_operand(ctx, y);
  Element out(ctx.width());
  entry_add(ctx, x.data(), y.data(), out.data());
  return out;
}

Element sub(const RingCtx& ctx, const Element& x, const Element& y) {
  check_operand(ctx, x);
  check_operand(ctx, y);
  Element out(ctx.width());
  entry_sub(ctx, x.data(), y.data(), out.data());
  return out;
}

Element mul(const RingCtx& ctx, const Element& x, const Element& y) {
  check_operand(ctx, x);
  check_operand(ctx, y);
  Element out(ctx.width());
  entry_mul(ctx, x.data(), y.data(), out.data());
  return out;
}

Element neg(const RingCtx& ctx, const Element& x) {
  check_operand(ctx, x);
  Element out(ctx.width());
  entry_neg(ctx, x.data(), out.data());
  return out;
}

Element arith(const RingCtx& ctx, ArithOp op, const Element& x, const Element& y) {
  switch (op) {
    case ArithOp::Add:
      return add(ctx, x, y);
    case ArithOp::Sub:
      return sub(ctx, x, y);
    case ArithOp::Mul:
      return mul(ctx, x, y);
    case ArithOp::Neg:
      return neg(ctx, x);
  }
  throw std::invalid_argument("arith: unknown op");
}

Element invert(const RingCtx& ctx, const Element& x) {
  check_operand(ctx, x);
  switch (ctx.kind()) {
    case RingKind::PrimeField:
    case RingKind::ModRing: {
      if (x[0] == 0) throw NonUnitError("invert: zero has no inverse");
      return Element{invmod(x[0], ctx.modulus())};
    }
    case RingKind::ExtField: {
      if (ctx.is_zero(x)) throw NonUnitError("invert: zero has no inverse");
      Poly inv = poly_inverse(ctx.modulus(), Poly(x.begin(), x.end()), ctx.field_poly());
      Element out(ctx.width(), 0);
      std::copy(inv.begin(), inv.end(), out.begin());
      return out;
    }
    case RingKind::PolyRing: {
      if (!is_prime(ctx.modulus()))
        throw std::invalid_argument("invert: polynomial ring inversion needs a prime coefficient modulus");
      if (ctx.is_zero(x)) throw NonUnitError("invert: zero has no inverse");
      Poly modpoly(ctx.degree() + 1, 0);
      modpoly[0] = 1;
      modpoly[ctx.degree()] = 1;  // x^n + 1
      Poly inv = poly_inverse(ctx.modulus(), Poly(x.begin(), x.end()), modpoly);
      Element out(ctx.width(), 0);
      std::copy(inv.begin(), inv.end(), out.begin());
      return out;
    }
  }
  throw std::logic_error("invert: unknown ring kind");
}

int64_t signed_lift(uint64_t p, uint64_t x) {
  if (x >= p) throw std::invalid_argument("signed_lift: residue out of range");
  if (x <= p / 2) return static_cast<int64_t>(x);
  return -static_cast<int64_t>(p - x);
}

int64_t centered_residue(uint64_t t, int64_t w) {
  if (t < 2) throw std::invalid_argument("centered_residue: t must be >= 2");
  const __int128 tt = static_cast<__int128>(t);
  __int128 r = static_cast<__int128>(w) % tt;
  if (r < 0) r += tt;
  if (2 * r > tt) r -= tt;
  return static_cast<int64_t>(r);
}

uint64_t reduce_signed(uint64_t q, int64_t w) {
  const __int128 qq = static_cast<__int128>(q);
  __int128 r = static_cast<__int128>(w) % qq;
  if (r < 0) r += qq;
  return static_cast<uint64_t>(r);
}

}  // namespace cpir
