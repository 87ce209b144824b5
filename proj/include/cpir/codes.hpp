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

#ifndef CPIR_CODES_HPP_
#define CPIR_CODES_HPP_

#include <vector>

#include "cpir/linalg.hpp"
#include "cpir/ring.hpp"
#include "cpir/rng.hpp"

namespace cpir {

// Random [n, k] linear code over a field, together with an information set I
// and the inverse of the k x k column restriction G_I. Immutable after
// construction.
struct LinearCode {
  RingCtx ctx;
  size_t n = 0, k = 0;
  Matrix G;                 // k x n generator
  std::vector<size_t> I;    // k sorted column indices with G_I invertible
  Matrix G_I_inv;           // inverse of the column restriction G_I

  LinearCode(RingCtx c, size_t n_, size_t k_, Matrix g, std::vector<size_t> info, Matrix inv)
      : ctx(std::move(c)), n(n_), k(k_), G(std::move(g)), I(std::move(info)), G_I_inv(std::move(inv)) {}

  // Complement of I in {0..n-1}, sorted.
  std::vector<size_t> complement() const;
};

// Uniformly random rank-k generator with a random information set. A k-subset
// is retried up to 64 times per generator draw before G itself is resampled;
// over a field a random k x k minor is invertible often enough that this
// terminates almost surely on the first generator.
LinearCode sample_code(const RingCtx& ctx, size_t n, size_t k, Rng& rng);

// a * G for a length-k message vector.
Vec encode(const LinearCode& code, const Vec& a);

// r - r_I * G_I_inv * G. Equals the error vector whenever r = c + e with e
// supported outside I; coordinates indexed by I are always zero. Total: no
// precondition is checked.
Vec erase_decode(const LinearCode& code, const Vec& r);

// Ideal code of the negacyclic polynomial ring, generated by one element.
struct ConstacyclicCode {
  RingCtx ctx;  // PolyRing
  Element s;    // nonzero generator
};

// a * s (negacyclic product).
Element cc_encode(const ConstacyclicCode& code, const Element& a);

// r2 - s * r1; removes the code part of an (r1, r2) pair.
Element cc_decode(const ConstacyclicCode& code, const Element& r1, const Element& r2);

}  // namespace cpir

#endif  // CPIR_CODES_HPP_
