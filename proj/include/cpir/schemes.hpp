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

#ifndef CPIR_SCHEMES_HPP_
#define CPIR_SCHEMES_HPP_

#include "cpir/framework.hpp"
#include "cpir/scheme_params.hpp"

namespace cpir {

// Identity retrieval over F_q. X = F_q, Y = {0}, Z = F_q \ {0}; any database
// size satisfies the kernel property since every Y term is zero.
SchemeInstance make_basic(const BasicParams& params);

// Projection onto V = span of the first s coordinates of F_{q^m}. X = F_q
// embedded as constants, Y = complement subspace W, Z = V \ {0}. W is stable
// under base-field scaling, so any database size works.
SchemeInstance make_hhwz(const HhwzParams& params);

// Centered-residue retrieval over F_p: f(x) = w - cmod_t(w) for w the signed
// lift of x. X = {0..2^ell - 1}, Y = {-1, +1}, Z = {t}; recovery divides by
// t. Database size is capped at params.db_size, which certifies
// |sum x_i y_i| <= db_size*(2^ell - 1) < t/2.
SchemeInstance make_amg(const AmgParams& params);
SchemeInstance make_amg(uint64_t db_size, size_t n, size_t k);

// Coefficientwise residue retrieval over (Z/qZ)[x]/(x^deg + 1). X =
// polynomials with coefficients below t, Y = t*(Gaussian poly), Z = Y + 1;
// f(z) = 1 so recovery is the identity. Database size is capped by the
// correctness gate validated at construction.
SchemeInstance make_rlwe(const RlweParams& params);

// Dispatch on a parameter variant (normalizes first).
SchemeInstance make_scheme(const SchemeParams& params);

}  // namespace cpir

#endif  // CPIR_SCHEMES_HPP_
