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

// Acceptance suite: one line per criterion, [PASS] or [FAIL], with the
// measured numbers behind each verdict. Exit status is the failure count, so
// the harness stays red while any criterion is unmet.

#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <iterator>
#include <set>
#include <string>
#include <vector>

#include "cpir/attacks.hpp"
#include "cpir/net.hpp"
#include "cpir/schemes.hpp"
#include "cpir/wire.hpp"

using namespace cpir;

namespace {

struct Outcome {
  bool pass = false;
  std::vector<std::string> notes;
};

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return std::string(buf);
}

SchemeInstance scheme_by_index(size_t idx) {
  switch (idx) {
    case 0: return make_basic(default_basic());
    case 1: return make_hhwz(default_hhwz());
    case 2: return make_amg(default_amg());
    default: return make_rlwe(default_rlwe());
  }
}

const size_t kDeskSizes[4] = {50, 30, 8, 16};

double now_ms() {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

// --- criterion 1: 400/400 seeded round trips under 10 seconds -------------

Outcome criterion_round_trips() {
  Outcome out;
  const double t0 = now_ms();
  size_t ok = 0, total = 0;
  for (size_t s = 0; s < 4; ++s) {
    const SchemeInstance scheme = scheme_by_index(s);
    for (uint64_t seed = 1; seed <= 100; ++seed) {
      Rng rng(1000 * (s + 1) + seed);
      Vec files;
      for (size_t i = 0; i < kDeskSizes[s]; ++i) files.push_back(scheme.sample_x(rng));
      const Database db = make_database(scheme, files);
      const size_t b = 1 + rng.below(kDeskSizes[s]);
      auto [query, secret] = gen_query(scheme, kDeskSizes[s], b, rng);
      ++total;
      if (extract(scheme, secret, gen_reply(query, db)) == files[b - 1]) ++ok;
    }
  }
  const double elapsed = (now_ms() - t0) / 1000.0;
  out.pass = ok == 400 && total == 400 && elapsed < 10.0;
  out.notes.push_back(fmt("retrievals %zu/400 exact, %.2f s (budget 10 s)", ok, elapsed));
  return out;
}

// --- criterion 2: retrieval-function axioms, 1000 checks each -------------

Outcome criterion_axioms() {
  Outcome out;
  size_t cond2_bad = 0, cond3_bad = 0;
  for (size_t s = 0; s < 4; ++s) {
    const SchemeInstance inst = scheme_by_index(s);
    Rng rng(2000 + s);
    for (int trial = 0; trial < 1000; ++trial) {
      // condition 2: an X-weighted combination of Y values maps to zero
      const size_t terms = 1 + rng.below(kDeskSizes[s]);
      Element combo = inst.ctx.zero();
      for (size_t i = 0; i < terms; ++i) {
        combo = add(inst.ctx, combo, mul(inst.ctx, inst.sample_x(rng), inst.sample_y(rng)));
      }
      if (!inst.ctx.is_zero(inst.f(combo))) ++cond2_bad;

      // condition 3: f(y + x z) = x f(z), with f(z) invertible
      const Element x = inst.sample_x(rng);
      const Element y = inst.sample_y(rng);
      const Element z = inst.sample_z(rng);
      const Element fz = inst.f(z);
      bool unit = true;
      try {
        (void)invert(inst.ctx, fz);
      } catch (const NonUnitError&) {
        unit = false;
      }
      const Element lhs = inst.f(add(inst.ctx, y, mul(inst.ctx, x, z)));
      if (!unit || lhs != mul(inst.ctx, x, fz)) ++cond3_bad;
    }
  }
  out.pass = cond2_bad == 0 && cond3_bad == 0;
  out.notes.push_back(fmt("condition 2 violations %zu/4000, condition 3 violations %zu/4000", cond2_bad, cond3_bad));
  return out;
}

// --- criterion 3: unit-vector break of the basic scheme -------------------

Outcome criterion_basic_break() {
  Outcome out;
  const SchemeInstance scheme = make_basic(default_basic());
  size_t hits = 0;
  bool bound_ok = true;
  for (uint64_t seed = 1; seed <= 100; ++seed) {
    Rng rng(3000 + seed);
    const size_t b = 1 + rng.below(50);
    auto [query, secret] = gen_query(scheme, 50, b, rng);
    const AttackReport report = unit_vector_attack(query_matrix(query));
    if (report.guess && *report.guess == b) ++hits;
    if (report.candidates.size() > 10) bound_ok = false;
  }
  out.pass = hits >= 99 && bound_ok;
  out.notes.push_back(fmt("planted index recovered %zu/100 (need >= 99)", hits));
  out.notes.push_back(fmt("candidate set stayed within n=10 unit vectors: %s", bound_ok ? "yes" : "no"));
  return out;
}

// --- criterion 4: rank break of the projection scheme ---------------------

Outcome criterion_hhwz_break() {
  Outcome out;
  const SchemeInstance scheme = make_hhwz(default_hhwz());
  size_t qualifying = 0, qualifying_with_guess = 0, additivity = 0;
  std::set<uint64_t> other_ranks;
  for (uint64_t seed = 1; seed <= 100; ++seed) {
    Rng rng(4000 + seed);
    const size_t b = 1 + rng.below(30);
    QueryTrace trace;
    auto [query, secret] = gen_query_traced(scheme, 30, b, rng, &trace);
    const QueryMatrix qm = query_matrix(query);
    const AttackReport report = rank_drop_attack(qm);

    bool all_others_full = true;
    for (size_t i = 0; i < 30; ++i) {
      if (i == b - 1) continue;
      other_ranks.insert(report.stats[i]);
      if (report.stats[i] != 24) all_others_full = false;
    }
    if (report.stats[b - 1] == 22 && all_others_full) {
      ++qualifying;
      if (report.guess && *report.guess == b) ++qualifying_with_guess;
    }

    // rank additivity: rank(A) = rank(C) + rank(E) over the base field
    const Matrix a_base = expand_to_base(qm.A);
    const Matrix c_base = expand_to_base(Matrix::from_rows(scheme.ctx, trace.codewords));
    const Matrix e_base = expand_to_base(Matrix::from_rows(scheme.ctx, trace.errors));
    if (rank(a_base) == rank(c_base) + rank(e_base)) ++additivity;
  }
  const bool strict = qualifying >= 95 && qualifying_with_guess == qualifying;
  out.pass = strict && additivity >= 99;
  out.notes.push_back(fmt("seeds with rank(A_b)=22 and rank(A_i)=24 for every other i: %zu/100 (need >= 95)",
                          qualifying));
  std::string seen = "ranks seen after deleting a non-planted row:";
  for (uint64_t r : other_ranks) seen += fmt(" %" PRIu64, r);
  out.notes.push_back(seen + " (the full 24 never occurs; ceiling is m*n - s + 1 = 23)");
  out.notes.push_back(fmt("rank additivity rank(A) = rank(C) + rank(E): %zu/100 (need >= 99)", additivity));
  return out;
}

// --- criterion 5: lattice break of the centered-residue scheme ------------

Outcome criterion_amg_break() {
  Outcome out;
  const SchemeInstance scheme = make_amg(default_amg());
  const double t0 = now_ms();
  size_t hits = 0, no_guess = 0;
  for (uint64_t seed = 1; seed <= 50; ++seed) {
    Rng rng(5000 + seed);
    const size_t b = 1 + rng.below(8);
    auto [query, secret] = gen_query(scheme, 8, b, rng);
    const AttackReport report = amg_lattice_attack(query_matrix(query), 256, 4);
    if (report.guess && *report.guess == b) ++hits;
    if (!report.guess) ++no_guess;
  }
  const double elapsed = (now_ms() - t0) / 1000.0;

  // Monte Carlo control: structureless matrices must sit at chance level,
  // one success in `block count` (here 2), within +-0.2.
  const RingCtx f = RingCtx::prime_field(8209);
  size_t control_hits = 0;
  for (uint64_t seed = 1; seed <= 50; ++seed) {
    Rng rng(5100 + seed);
    Matrix random_rows(f, 8, 4);
    for (size_t r = 0; r < 8; ++r) {
      for (size_t c = 0; c < 4; ++c) random_rows.set(r, c, f.uniform(rng));
    }
    const size_t planted_block = 1 + rng.below(2);
    const AttackReport report = amg_lattice_attack(QueryMatrix{f, std::move(random_rows)}, 256, 4);
    if (resolve_block_guess(report, rng) == planted_block) ++control_hits;
  }
  const double control_rate = control_hits / 50.0;

  out.pass = hits >= 45 && elapsed < 60.0 && control_rate >= 0.3 && control_rate <= 0.7;
  out.notes.push_back(fmt("planted index recovered %zu/50 at block size 4 (need >= 45), %.2f s", hits, elapsed));
  out.notes.push_back(
      fmt("phase 1 ended in a cross-block tie (no guess) in %zu/50 runs; at block size = code length 4 every "
          "block's column lattice is the full integer lattice, so the shortest-vector statistic cannot separate",
          no_guess));
  out.notes.push_back(fmt("structureless control at chance: %.2f (want 0.50 +- 0.2)", control_rate));
  return out;
}

// --- criterion 6: no distinguishing power against the ring scheme ---------

// Equal-tail 99% binomial acceptance interval, computed exactly so the
// frozen bounds below are checked rather than trusted.
std::pair<size_t, size_t> binomial_99(size_t n, double p) {
  std::vector<long double> probs(n + 1);
  long double cur = std::pow(static_cast<long double>(1.0 - p), static_cast<long double>(n));
  for (size_t k = 0; k <= n; ++k) {
    probs[k] = cur;
    cur = cur * static_cast<long double>(n - k) / static_cast<long double>(k + 1) *
          static_cast<long double>(p / (1.0 - p));
  }
  const long double tail = 0.005L;
  long double acc = 0;
  size_t lo = 0;
  for (size_t k = 0; k <= n; ++k) {
    if (acc + probs[k] <= tail) {
      acc += probs[k];
      lo = k + 1;
    } else {
      break;
    }
  }
  acc = 0;
  size_t hi = n;
  for (size_t k = n + 1; k-- > 0;) {
    if (acc + probs[k] <= tail) {
      acc += probs[k];
      hi = k - 1;
    } else {
      break;
    }
  }
  return {lo, hi};
}

Outcome criterion_rlwe_controls() {
  Outcome out;
  const auto [lo, hi] = binomial_99(200, 1.0 / 16.0);
  const bool interval_frozen = lo == 5 && hi == 22;

  const SchemeInstance scheme = make_rlwe(default_rlwe());
  size_t unit_hits = 0, rank_hits = 0;
  for (uint64_t seed = 1; seed <= 200; ++seed) {
    Rng rng(6000 + seed);
    const size_t b = 1 + rng.below(16);
    auto [query, secret] = gen_query(scheme, 16, b, rng);
    const QueryMatrix field = reinterpret_prime(coefficient_rows(query_matrix(query)));

    AttackReport unit = unit_vector_attack(field);
    unit.no_gap_expected = true;
    if (resolve_guess(unit, 16, rng) == b) ++unit_hits;

    AttackReport rk = rank_drop_attack(field);
    rk.no_gap_expected = true;
    if (resolve_guess(rk, 16, rng) == b) ++rank_hits;
  }
  const bool unit_ok = unit_hits >= lo && unit_hits <= hi;
  const bool rank_ok = rank_hits >= lo && rank_hits <= hi;
  out.pass = interval_frozen && unit_ok && rank_ok;
  out.notes.push_back(fmt("99%% interval for 200 trials at 1/16: [%zu, %zu] (frozen [5, 22] %s)", lo, hi,
                          interval_frozen ? "confirmed" : "MISMATCH"));
  out.notes.push_back(fmt("unit-vector style hits %zu/200 -> %s", unit_hits, unit_ok ? "chance" : "OUTSIDE"));
  out.notes.push_back(fmt("rank style hits %zu/200 -> %s", rank_hits, rank_ok ? "chance" : "OUTSIDE"));
  return out;
}

// --- criterion 7: exact byte accounting ------------------------------------

Outcome criterion_comm_accounting() {
  Outcome out;
  const SchemeInstance basic = make_basic(default_basic());
  const uint64_t row_bytes = 10 * 8;  // one encoded element: n residues of 8 bytes
  bool matrix_ok = true, measured_ok = true, iter_ok = true;
  for (uint64_t n : {16u, 64u, 256u}) {
    const uint64_t root = n == 16 ? 4 : n == 64 ? 8 : 16;
    const CommCost matrix = comm_cost(basic, n, Setup::matrix_sqrt());
    if (matrix.uplink_element_bytes + matrix.downlink_element_bytes != 2 * root * row_bytes) matrix_ok = false;

    // Measure a real exchange: a query of sqrt(N) rows and one reply frame
    // carrying sqrt(N) units, framing subtracted out.
    Rng rng(7000 + n);
    Vec files;
    for (uint64_t i = 0; i < n; ++i) files.push_back(basic.sample_x(rng));
    auto [query, secret] = gen_query(basic, root, 1 + rng.below(root), rng);
    const uint64_t query_payload = encode_query(query).size() - kFrameHeaderBytes - params_block_bytes(basic.params) - 8;
    std::vector<Reply> replies;
    for (uint64_t r = 0; r < root; ++r) {
      Database slice;
      slice.files = Vec(files.begin() + r * root, files.begin() + (r + 1) * root);
      replies.push_back(gen_reply(query, slice));
    }
    const uint64_t reply_payload =
        encode_reply_frame(SchemeId::Basic, replies).size() - kFrameHeaderBytes - 8;
    if (query_payload + reply_payload != 2 * root * row_bytes) measured_ok = false;

    // Iterative with L=4 against a flat layout holding the same bytes in
    // 4t files: uplink shrinks by exactly 4, downlink grows by exactly 4.
    const CommCost iter = comm_cost(basic, n, Setup::iterative(4));
    const CommCost flat = comm_cost(basic, n * 4, Setup::flat());
    if (iter.uplink_element_bytes * 4 != flat.uplink_element_bytes) iter_ok = false;
    if (iter.downlink_element_bytes != flat.downlink_element_bytes * 4) iter_ok = false;
  }
  out.pass = matrix_ok && measured_ok && iter_ok;
  out.notes.push_back(fmt("matrix layout bytes = 2*sqrt(N)*%" PRIu64 " exactly for N in {16, 64, 256}: %s",
                          row_bytes, matrix_ok ? "yes" : "no"));
  out.notes.push_back(fmt("measured frames match the accounting with headers separated: %s",
                          measured_ok ? "yes" : "no"));
  out.notes.push_back(fmt("iterative L=4: uplink /4 and downlink x4 against the flat equivalent: %s",
                          iter_ok ? "yes" : "no"));
  return out;
}

// --- criterion 8: lattice toolkit guarantees -------------------------------

Outcome criterion_lattice_toolkit() {
  Outcome out;
  Rng rng(8000);
  size_t unimodular = 0, approx = 0, approx_cases = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const size_t d = 2 + rng.below(7);  // dimensions 2..8
    LatticeBasis basis;
    for (;;) {
      basis.rows.clear();
      for (size_t i = 0; i < d; ++i) {
        IntVec row(d);
        for (auto& v : row) v = static_cast<int64_t>(rng.below(101)) - 50;
        basis.rows.push_back(std::move(row));
      }
      if (int_det(basis.rows) != 0) break;
    }
    const LllResult res = lll(basis);
    __int128 din = int_det(basis.rows);
    __int128 dout = int_det(res.basis.rows);
    const __int128 tdet = int_det(res.transform);
    bool rows_match = true;
    for (size_t i = 0; i < d && rows_match; ++i) {
      IntVec want(d, 0);
      for (size_t j = 0; j < d; ++j) {
        for (size_t c = 0; c < d; ++c) want[c] += res.transform[i][j] * basis.rows[j][c];
      }
      rows_match = want == res.basis.rows[i];
    }
    if ((dout == din || dout == -din) && (tdet == 1 || tdet == -1) && rows_match) ++unimodular;

    if (d <= 4) {
      ++approx_cases;
      const IntVec shortest = shortest_vector_bruteforce(basis, 6);
      // norm factor 2^((d-1)/2) means squared-norm factor 2^(d-1)
      const unsigned __int128 lhs = norm_sq(res.basis.rows[0]);
      const unsigned __int128 rhs =
          static_cast<unsigned __int128>(norm_sq(shortest)) << (d - 1);
      if (lhs <= rhs) ++approx;
    }
  }
  out.pass = unimodular == 100 && approx == approx_cases;
  out.notes.push_back(fmt("unimodular equivalence with exact determinants: %zu/100", unimodular));
  out.notes.push_back(fmt("first vector within 2^((d-1)/2) of brute-force shortest: %zu/%zu (dims <= 4)", approx,
                          approx_cases));
  return out;
}

// --- criterion 9: wire fuzzing and loopback --------------------------------

Outcome criterion_wire_and_loopback() {
  Outcome out;
  Rng rng(9000);
  size_t exact = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    WireMessage msg;
    msg.kind = static_cast<MsgKind>(1 + rng.below(3));
    msg.scheme_id = msg.kind == MsgKind::Error ? static_cast<uint8_t>(rng.below(5))
                                               : static_cast<uint8_t>(1 + rng.below(4));
    msg.body.resize(rng.below(300));
    for (auto& b : msg.body) b = static_cast<uint8_t>(rng.below(256));
    const std::vector<uint8_t> bytes = encode_message(msg);
    const WireMessage back = decode_message(bytes);
    if (back == msg && encode_message(back) == bytes) ++exact;
  }

  size_t loopback_ok = 0;
  for (size_t s = 0; s < 4; ++s) {
    const SchemeInstance scheme = scheme_by_index(s);
    Rng srng(9100 + s);
    Vec files;
    for (size_t i = 0; i < kDeskSizes[s]; ++i) files.push_back(scheme.sample_x(srng));
    const std::string path = "acceptance_loopback.db";
    save_db_file(path, scheme_id_of(scheme.params), files);
    const LoadedDb db = load_db_file(path);
    std::remove(path.c_str());
    Server server(db, Server::Options{});
    server.start();
    const size_t b = 1 + srng.below(kDeskSizes[s]);
    const FetchOutcome fetched = fetch_file("127.0.0.1", server.port(), scheme, kDeskSizes[s], b, srng);
    server.stop();
    if (fetched.ok && fetched.file == files[b - 1]) ++loopback_ok;
  }

  out.pass = exact == 1000 && loopback_ok == 4;
  out.notes.push_back(fmt("fuzzed frames decoded and re-encoded bit-exactly: %zu/1000", exact));
  out.notes.push_back(fmt("loopback retrieval of db[b]: %zu/4 schemes", loopback_ok));
  return out;
}

}  // namespace

int main() {
  struct Entry {
    const char* label;
    Outcome (*run)();
  };
  const Entry entries[] = {
      {"round-trip correctness, 400 seeded retrievals across the four schemes", criterion_round_trips},
      {"retrieval-function axioms, 1000 sampled checks per scheme", criterion_axioms},
      {"unit-vector break of the basic scheme", criterion_basic_break},
      {"rank break of the projection scheme", criterion_hhwz_break},
      {"two-phase lattice break of the centered-residue scheme at block size 4", criterion_amg_break},
      {"ring scheme yields no distinguishing power to either attack style", criterion_rlwe_controls},
      {"communication accounting is exact for matrix and iterative layouts", criterion_comm_accounting},
      {"lattice toolkit: unimodular reduction with bounded first vector", criterion_lattice_toolkit},
      {"wire fuzzing round trips and loopback retrieval", criterion_wire_and_loopback},
  };

  int failures = 0;
  for (size_t i = 0; i < std::size(entries); ++i) {
    const Outcome res = entries[i].run();
    printf("[%s] criterion %zu: %s\n", res.pass ? "PASS" : "FAIL", i + 1, entries[i].label);
    for (const std::string& note : res.notes) printf("         %s\n", note.c_str());
    if (!res.pass) ++failures;
  }
  printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
