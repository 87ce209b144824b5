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

#include "cpir/schemes.hpp"

namespace cpir {

SchemeInstance make_basic(const BasicParams& raw) {
  const auto params = std::get<BasicParams>(normalize(SchemeParams{raw}));
  SchemeInstance inst{SchemeParams{params}, RingCtx::prime_field(params.q)};
  inst.mode = HidingMode::SystematicErrors;
  inst.max_db_size = UINT64_MAX;
  inst.code_n = params.n;
  inst.code_k = params.k;
  inst.x_value_cap = params.q;
  const RingCtx ctx = inst.ctx;
  const uint64_t q = params.q;
  inst.f = [](const Element& x) { return x; };
  inst.sample_x = [ctx](Rng& rng) { return ctx.uniform(rng); };
  inst.sample_y = [ctx](Rng&) { return ctx.zero(); };
  inst.sample_z = [q](Rng& rng) { return Element{1 + rng.below(q - 1)}; };
  inst.lift_x = [q](uint64_t u) {
    if (u >= q) throw std::invalid_argument("basic lift: value out of range");
    return Element{u};
  };
  inst.unlift_x = [](const Element& x) { return x[0]; };
  inst.in_x = [ctx](const Element& x) { return ctx.is_valid(x); };
  inst.recover = [ctx](const Element& value, const Element& fz) { return mul(ctx, value, invert(ctx, fz)); };
  return inst;
}

SchemeInstance make_hhwz(const HhwzParams& raw) {
  const auto params = std::get<HhwzParams>(normalize(SchemeParams{raw}));
  SchemeInstance inst{SchemeParams{params}, RingCtx::ext_field(params.q, params.m, params.modulus)};
  inst.mode = HidingMode::SystematicErrors;
  inst.max_db_size = UINT64_MAX;
  inst.code_n = params.n;
  inst.code_k = params.k;
  inst.x_value_cap = params.q;
  const RingCtx ctx = inst.ctx;
  const uint64_t q = params.q;
  const uint32_t m = params.m;
  const uint32_t s = params.s;
  inst.f = [m, s](const Element& x) {
    Element out = x;
    for (uint32_t i = s; i < m; ++i) out[i] = 0;
    return out;
  };
  inst.sample_x = [ctx, q](Rng& rng) { return ctx.from_scalar(rng.below(q)); };
  inst.sample_y = [ctx, q, m, s](Rng& rng) {
    Element y = ctx.zero();
    for (uint32_t i = s; i < m; ++i) y[i] = rng.below(q);
    return y;
  };
  inst.sample_z = [ctx, q, s](Rng& rng) {
    for (;;) {
      Element z = ctx.zero();
      bool nonzero = false;
      for (uint32_t i = 0; i < s; ++i) {
        z[i] = rng.below(q);
        nonzero = nonzero || z[i] != 0;
      }
      if (nonzero) return z;
    }
  };
  inst.lift_x = [ctx, q](uint64_t u) {
    if (u >= q) throw std::invalid_argument("hhwz lift: value out of range");
    return ctx.from_scalar(u);
  };
  inst.unlift_x = [](const Element& x) { return x[0]; };
  inst.in_x = [ctx, m](const Element& x) {
    if (!ctx.is_valid(x)) return false;
    for (uint32_t i = 1; i < m; ++i) {
      if (x[i] != 0) return false;
    }
    return true;
  };
  inst.recover = [ctx](const Element& value, const Element& fz) { return mul(ctx, value, invert(ctx, fz)); };
  return inst;
}

SchemeInstance make_amg(const AmgParams& raw) {
  const auto params = std::get<AmgParams>(normalize(SchemeParams{raw}));
  SchemeInstance inst{SchemeParams{params}, RingCtx::prime_field(params.p)};
  inst.mode = HidingMode::SystematicErrors;
  inst.max_db_size = params.db_size;
  inst.code_n = params.n;
  inst.code_k = params.k;
  const uint64_t cap = uint64_t(1) << params.ell;
  inst.x_value_cap = cap;
  const RingCtx ctx = inst.ctx;
  const uint64_t p = params.p;
  const uint64_t t = params.t;
  inst.f = [p, t](const Element& x) {
    const int64_t w = signed_lift(p, x[0]);
    return Element{reduce_signed(p, w - centered_residue(t, w))};
  };
  inst.sample_x = [cap](Rng& rng) { return Element{rng.below(cap)}; };
  inst.sample_y = [p](Rng& rng) { return Element{rng.below(2) == 0 ? p - 1 : 1}; };
  inst.sample_z = [t](Rng&) { return Element{t}; };
  inst.lift_x = [cap](uint64_t u) {
    if (u >= cap) throw std::invalid_argument("amg lift: value out of range");
    return Element{u};
  };
  inst.unlift_x = [](const Element& x) { return x[0]; };
  inst.in_x = [cap](const Element& x) { return x.size() == 1 && x[0] < cap; };
  inst.recover = [ctx](const Element& value, const Element& fz) { return mul(ctx, value, invert(ctx, fz)); };
  return inst;
}

SchemeInstance make_amg(uint64_t db_size, size_t n, size_t k) { return make_amg(derive_amg(db_size, n, k)); }

SchemeInstance make_rlwe(const RlweParams& raw) {
  const auto params = std::get<RlweParams>(normalize(SchemeParams{raw}));
  SchemeInstance inst{SchemeParams{params}, RingCtx::poly_ring(params.q, params.deg)};
  inst.mode = HidingMode::ExplicitCoefficients;
  inst.max_db_size = params.db_size;
  const RingCtx ctx = inst.ctx;
  const uint64_t q = params.q;
  const uint64_t t = params.t;
  const uint32_t deg = params.deg;
  const double sigma = params.sigma;
  // Number of distinct 64-bit inputs lift_x can represent; saturates when
  // t^deg covers the whole input range.
  uint64_t cap = 1;
  for (uint32_t i = 0; i < deg; ++i) {
    if (cap > UINT64_MAX / t) {
      cap = UINT64_MAX;
      break;
    }
    cap *= t;
  }
  inst.x_value_cap = cap;
  inst.f = [q, t, deg](const Element& x) {
    Element out(deg);
    for (uint32_t i = 0; i < deg; ++i) {
      const int64_t w = signed_lift(q, x[i]);
      out[i] = reduce_signed(t, w);  // residue below t, canonical under q too
    }
    return out;
  };
  inst.sample_x = [t, deg](Rng& rng) {
    Element x(deg);
    for (auto& c : x) c = rng.below(t);
    return x;
  };
  const auto gaussian_times_t = [q, t, deg, sigma](Rng& rng) {
    Element y(deg);
    for (auto& c : y) c = reduce_signed(q, static_cast<int64_t>(t) * gaussian_sample(sigma, rng));
    return y;
  };
  inst.sample_y = gaussian_times_t;
  inst.sample_z = [q, gaussian_times_t](Rng& rng) {
    Element z = gaussian_times_t(rng);
    z[0] = addmod(z[0], 1, q);
    return z;
  };
  inst.lift_x = [t, deg, cap](uint64_t u) {
    if (cap != UINT64_MAX && u >= cap) throw std::invalid_argument("rlwe lift: value out of range");
    Element x(deg, 0);
    uint64_t rest = u;
    for (uint32_t i = 0; i < deg && rest > 0; ++i) {
      x[i] = rest % t;
      rest /= t;
    }
    return x;
  };
  inst.unlift_x = [t, deg](const Element& x) {
    unsigned __int128 acc = 0;
    unsigned __int128 pw = 1;
    for (uint32_t i = 0; i < deg; ++i) {
      acc += pw * x[i];
      if (pw > static_cast<unsigned __int128>(UINT64_MAX) / t) break;
      pw *= t;
    }
    return acc > UINT64_MAX ? UINT64_MAX : static_cast<uint64_t>(acc);
  };
  inst.in_x = [t, deg](const Element& x) {
    if (x.size() != deg) return false;
    for (uint64_t c : x) {
      if (c >= t) return false;
    }
    return true;
  };
  inst.recover = [](const Element& value, const Element&) { return value; };
  return inst;
}

SchemeInstance make_scheme(const SchemeParams& params) {
  return std::visit(
      [](const auto& p) -> SchemeInstance {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, BasicParams>) return make_basic(p);
        if constexpr (std::is_same_v<T, HhwzParams>) return make_hhwz(p);
        if constexpr (std::is_same_v<T, AmgParams>) return make_amg(p);
        if constexpr (std::is_same_v<T, RlweParams>) return make_rlwe(p);
      },
      params);
}

}  // namespace cpir
