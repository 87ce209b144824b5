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

#ifndef CPIR_SCHEME_PARAMS_HPP_
#define CPIR_SCHEME_PARAMS_HPP_

#include <cstdint>
#include <variant>
#include <vector>

#include "cpir/ring.hpp"

namespace cpir {

enum class SchemeId : uint8_t {
  Basic = 1,  // identity retrieval over a prime field
  Hhwz = 2,   // subspace projection over an extension field
  Amg = 3,    // centered-residue retrieval over a large prime field
  Rlwe = 4,   // coefficientwise residue retrieval over a negacyclic ring
};

// Identity retrieval over F_q with an [n, k] code.
struct BasicParams {
  uint64_t q = 13;
  size_t n = 10, k = 5;
};

// Projection onto the first s coordinates of F_{q^m}, code shape [n, k].
// An empty modulus selects find_irreducible(q, m).
struct HhwzParams {
  uint64_t q = 2;
  uint32_t m = 4;
  uint32_t s = 2;
  size_t n = 6, k = 3;
  std::vector<uint64_t> modulus;
};

// Centered-residue retrieval. ell, t, p are deterministic functions of the
// database size: ell = ceil(log2(N)) + 1 file bits, t = 2^(2*ell), and p the
// smallest prime above 2^(3*ell+1). The extra doubling over 2^(3*ell) keeps
// the signed lift from wrapping for maximal file values.
struct AmgParams {
  uint64_t db_size = 8;
  size_t n = 4, k = 2;
  uint32_t ell = 0;  // derived
  uint64_t t = 0;    // derived
  uint64_t p = 0;    // derived
};

// Coefficientwise residue retrieval over (Z/qZ)[x]/(x^deg + 1). The database
// size bound comes from the correctness gate db_size * t^2 * sigma * sqrt(deg)
// < q / 2.
struct RlweParams {
  uint32_t deg = 64;
  uint64_t q = 12289;
  uint64_t t = 4;
  double sigma = 2.0;
  uint64_t db_size = 16;
};

using SchemeParams = std::variant<BasicParams, HhwzParams, AmgParams, RlweParams>;

SchemeId scheme_id_of(const SchemeParams& params);

// Ambient algebra for a parameter set; validates and normalizes (fills in a
// derived extension modulus or AMG constants when absent). Throws on any
// invariant violation, reporting the failing constraint.
RingCtx ctx_for(const SchemeParams& params);

// Same normalization as ctx_for but returning the filled-in parameter set.
SchemeParams normalize(const SchemeParams& params);

// Fills ell, t, p from db_size; validates 0 < k < n.
AmgParams derive_amg(uint64_t db_size, size_t n, size_t k);

// Residues per database file element under each parameter set.
size_t file_width(const SchemeParams& params);

BasicParams default_basic();
HhwzParams default_hhwz();
AmgParams default_amg();
RlweParams default_rlwe();

}  // namespace cpir

#endif  // CPIR_SCHEME_PARAMS_HPP_
