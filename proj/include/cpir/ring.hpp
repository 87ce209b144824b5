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

#ifndef CPIR_RING_HPP_
#define CPIR_RING_HPP_

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cpir {

class Rng;

// One ring element is a fixed-length vector of canonical residues, each
// strictly below the context modulus. The length is RingCtx::width():
//   prime field / modular ring : 1
//   extension field            : m coordinates over the polynomial basis
//   polynomial ring            : n coefficients, constant term first
using Element = std::vector<uint64_t>;

enum class RingKind : uint8_t {
  PrimeField,  // F_p, p prime
  ExtField,    // F_{q^m} = F_q[x]/(modulus), modulus irreducible of degree m
  ModRing,     // Z/qZ, q arbitrary
  PolyRing,    // (Z/qZ)[x]/(x^n + 1), n a power of two (negacyclic)
};

// Thrown when an inversion argument has no inverse in its ring.
class NonUnitError : public std::domain_error {
 public:
  explicit NonUnitError(const std::string& what) : std::domain_error(what) {}
};

// Deterministic Miller-Rabin over the full 64-bit range.
bool is_prime(uint64_t x);

// Smallest prime strictly greater than x. Throws on 64-bit overflow.
uint64_t next_prime_above(uint64_t x);

// Lexicographically first monic irreducible polynomial of degree m over F_q,
// ordered by the radix-q value of its lower coefficients. Returned as m+1
// coefficients, constant term first, leading coefficient 1.
std::vector<uint64_t> find_irreducible(uint64_t q, uint32_t m);

// Description of the ambient algebra. Validated on construction; immutable
// afterwards, so shared read access is safe.
class RingCtx {
 public:
  static RingCtx prime_field(uint64_t p);
  // modulus: m+1 coefficients over F_q, constant first, monic. An empty
  // vector selects find_irreducible(q, m).
  static RingCtx ext_field(uint64_t q, uint32_t m, std::vector<uint64_t> modulus = {});
  static RingCtx mod_ring(uint64_t q);
  static RingCtx poly_ring(uint64_t q, uint32_t n);

  RingKind kind() const { return kind_; }
  uint64_t modulus() const { return modulus_; }   // p, q, or the coefficient modulus
  uint32_t degree() const { return degree_; }     // m or n; 1 for scalar rings
  const std::vector<uint64_t>& field_poly() const { return field_poly_; }

  // Residues per element.
  size_t width() const { return kind_ == RingKind::PrimeField || kind_ == RingKind::ModRing ? 1 : degree_; }
  bool is_field() const { return kind_ == RingKind::PrimeField || kind_ == RingKind::ExtField; }
  bool same_as(const RingCtx& other) const;

  Element zero() const { return Element(width(), 0); }
  Element one() const;
  // Scalar embedded as an element (constant polynomial / first coordinate).
  Element from_scalar(uint64_t residue) const;
  bool is_valid(const Element& x) const;
  bool is_zero(const Element& x) const;
  Element uniform(Rng& rng) const;

 private:
  RingCtx() = default;
  RingKind kind_ = RingKind::PrimeField;
  uint64_t modulus_ = 2;
  uint32_t degree_ = 1;
  std::vector<uint64_t> field_poly_;  // ExtField only
};

enum class ArithOp { Add, Sub, Mul, Neg };

Element add(const RingCtx& ctx, const Element& x, const Element& y);
Element sub(const RingCtx& ctx, const Element& x, const Element& y);
Element mul(const RingCtx& ctx, const Element& x, const Element& y);
Element neg(const RingCtx& ctx, const Element& x);
// Dispatcher form; Neg ignores y.
Element arith(const RingCtx& ctx, ArithOp op, const Element& x, const Element& y);

// Multiplicative inverse. Throws NonUnitError when x is not a unit. For
// PolyRing the coefficient modulus must be prime (Euclid over F_q[x]).
Element invert(const RingCtx& ctx, const Element& x);

// Unique w with w = x (mod p) and -floor(p/2) <= w <= floor(p/2).
int64_t signed_lift(uint64_t p, uint64_t x);

// Unique integer in (-t/2, t/2] congruent to w mod t. Requires t >= 2.
int64_t centered_residue(uint64_t t, int64_t w);

// Residue in [0, q) of a signed integer.
uint64_t reduce_signed(uint64_t q, int64_t w);

// Low-level entry kernels operating on width()-sized residue spans inside
// flat storage. out must not alias the inputs for entry_mul. These exist so
// matrix elimination can run without per-entry allocation.
void entry_add(const RingCtx& ctx, const uint64_t* a, const uint64_t* b, uint64_t* out);
void entry_sub(const RingCtx& ctx, const uint64_t* a, const uint64_t* b, uint64_t* out);
void entry_mul(const RingCtx& ctx, const uint64_t* a, const uint64_t* b, uint64_t* out);
void entry_neg(const RingCtx& ctx, const uint64_t* a, uint64_t* out);
bool entry_is_zero(const RingCtx& ctx, const uint64_t* a);

// 64-bit modular scalar helpers (128-bit intermediates).
uint64_t addmod(uint64_t a, uint64_t b, uint64_t q);
uint64_t submod(uint64_t a, uint64_t b, uint64_t q);
uint64_t mulmod(uint64_t a, uint64_t b, uint64_t q);
uint64_t powmod(uint64_t base, uint64_t exp, uint64_t q);
// Inverse of a mod q via extended Euclid; throws NonUnitError if gcd != 1.
uint64_t invmod(uint64_t a, uint64_t q);

}  // namespace cpir

#endif  // CPIR_RING_HPP_
