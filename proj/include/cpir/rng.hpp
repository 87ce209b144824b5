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

#ifndef CPIR_RNG_HPP_
#define CPIR_RNG_HPP_

#include <cstdint>
#include <random>

namespace cpir {

// Deterministic random source. Every random choice in the library flows
// through an explicit Rng parameter; there is no global generator state.
//
// std::mt19937_64 output is fully specified by the C++ standard, and the
// draws below avoid std::uniform_int_distribution / std::normal_distribution
// (whose algorithms are implementation-defined), so a given seed reproduces
// the same stream on every platform with IEEE-754 doubles.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  // Raw 64-bit draw.
  uint64_t next() { return gen_(); }

  // Uniform draw from [0, bound) by rejection sampling; bound > 0.
  uint64_t below(uint64_t bound);

  // Continuous N(0, sigma^2) sample via Box-Muller on explicit 53-bit
  // uniforms. sigma >= 0.
  double normal(double sigma);

 private:
  std::mt19937_64 gen_;
};

// Discrete Gaussian with standard deviation sigma: rounds a continuous
// normal sample and rejects anything beyond ceil(6*sigma). sigma = 0
// degenerates to the constant 0.
int64_t gaussian_sample(double sigma, Rng& rng);

}  // namespace cpir

#endif  // CPIR_RNG_HPP_
