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

#include "cpir/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace cpir {

uint64_t Rng::below(uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below: bound must be > 0");
  // Largest multiple of bound that fits in 64 bits; rejecting draws at or
  // above it removes the modulo bias.
  const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  uint64_t draw;
  do {
    draw = next();
  } while (draw >= limit);
  return draw % bound;
}

double Rng::normal(double sigma) {
  if (sigma < 0) throw std::invalid_argument("Rng::normal: sigma must be >= 0");
  if (sigma == 0) return 0.0;
  // Box-Muller; u1 is shifted away from 0 so the log is finite.
  const double u1 = static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
  const double u2 = static_cast<double>(next() >> 11) * 0x1.0p-53;
  const double radius = std::sqrt(-2.0 * std::log(u1));
  return sigma * radius * std::cos(2.0 * M_PI * u2);
}

int64_t gaussian_sample(double sigma, Rng& rng) {
  if (sigma < 0) throw std::invalid_argument("gaussian_sample: sigma must be >= 0");
  if (sigma == 0) return 0;
  const int64_t cutoff = static_cast<int64_t>(std::ceil(6.0 * sigma));
  for (;;) {
    const int64_t sample = std::llround(rng.normal(sigma));
    if (sample >= -cutoff && sample <= cutoff) return sample;
  }
}

}  // namespace cpir
