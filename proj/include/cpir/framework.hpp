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

#ifndef CPIR_FRAMEWORK_HPP_
#define CPIR_FRAMEWORK_HPP_

#include <functional>
#include <optional>
#include <utility>

#include "cpir/codes.hpp"
#include "cpir/linalg.hpp"
#include "cpir/ring.hpp"
#include "cpir/rng.hpp"
#include "cpir/scheme_params.hpp"

namespace cpir {

// How query vectors hide the code part.
enum class HidingMode : uint8_t {
  // Field codes: no errors on the information-set coordinates, so the client
  // can strip the code part by erasure decoding. Query rows live in ctx^n.
  SystematicErrors,
  // Ring codes: each row transmits the code coefficient alongside the noisy
  // codeword, as the pair (a_i, a_i*s + e_i).
  ExplicitCoefficients,
};

// A retrieval scheme: the function f together with samplers for the three
// value sets and the plaintext encoding. The defining properties are
//   1. f is not identically zero;
//   2. f(sum of up to max_db_size terms x_i*y_i) = 0 for x_i from X, y_i
//      from Y;
//   3. f(y + x*z) = x*f(z) with f(z) a unit, for y in ker(f), x in X, z in Z.
// Property tests in the suite sample all three.
struct SchemeInstance {
  SchemeInstance(SchemeParams p, RingCtx c) : params(std::move(p)), ctx(std::move(c)) {}

  SchemeParams params;
  RingCtx ctx;
  HidingMode mode = HidingMode::SystematicErrors;

  // Largest database size for which property 2 holds; UINT64_MAX when any
  // size works.
  uint64_t max_db_size = UINT64_MAX;

  // Code shape for SystematicErrors mode; unused otherwise.
  size_t code_n = 0, code_k = 0;

  // Number of distinct plaintext values lift_x can encode from a 64-bit
  // input; UINT64_MAX when the full input range is usable.
  uint64_t x_value_cap = 0;

  std::function<Element(const Element&)> f;
  std::function<Element(Rng&)> sample_x;
  std::function<Element(Rng&)> sample_y;
  std::function<Element(Rng&)> sample_z;
  std::function<Element(uint64_t)> lift_x;
  std::function<uint64_t(const Element&)> unlift_x;
  std::function<bool(const Element&)> in_x;
  // Recovers the file from f(decoded value) given the retained unit f(z).
  std::function<Element(const Element& value, const Element& fz)> recover;
};

// The N query vectors, plus what the server needs to interpret them. Rows
// are q_i = c_i + e_i in SystematicErrors mode (one Element per code
// coordinate) and (a_i, a_i*s + e_i) pairs in ExplicitCoefficients mode.
struct Query {
  SchemeId scheme = SchemeId::Basic;
  SchemeParams params;
  HidingMode mode = HidingMode::SystematicErrors;
  std::vector<Vec> rows;

  size_t db_size() const { return rows.size(); }
};

// Everything the client must keep secret to extract the file: the sampled
// code, the probe coordinate v (SystematicErrors), the wanted index b
// (1-based), and the unit f(e_b[v]) needed for recovery.
struct ClientSecret {
  SchemeId scheme = SchemeId::Basic;
  std::optional<LinearCode> code;
  std::optional<ConstacyclicCode> ring_code;
  size_t v = 0;
  size_t b = 1;
  Element fz;
};

// One reply unit: the vector sum_i m_i q_i. SystematicErrors mode: code_n
// Elements; ExplicitCoefficients mode: the pair (r1, r2).
struct Reply {
  HidingMode mode = HidingMode::SystematicErrors;
  Vec r;
};

// N plaintext files, each an Element of X; optionally viewed as an
// s_rows x t_cols grid (row-major) for the matrix layout.
struct Database {
  Vec files;
  std::optional<std::pair<size_t, size_t>> shape;  // (s_rows, t_cols)

  size_t size() const { return files.size(); }
};

// Thrown by extract when the reply is inconsistent with an honest server
// (the recovered value falls outside the plaintext domain).
class RecoveryError : public std::runtime_error {
 public:
  explicit RecoveryError(const std::string& what) : std::runtime_error(what) {}
};

// Validating constructor: rejects any file outside the plaintext domain X.
Database make_database(const SchemeInstance& scheme, Vec files,
                       std::optional<std::pair<size_t, size_t>> shape = std::nullopt);

// White-box record of query generation, for tests that need the sampled
// codewords and error vectors. Production paths never read this.
struct QueryTrace {
  std::vector<Vec> codewords;  // SystematicErrors: c_i; ExplicitCoefficients: a_i*s
  std::vector<Vec> errors;     // e_i as full rows (error part only)
};

// Builds the query hiding index b (1-based, 1 <= b <= db_size). Requires
// db_size <= scheme.max_db_size; larger databases would break property 2.
std::pair<Query, ClientSecret> gen_query(const SchemeInstance& scheme, size_t db_size, size_t b, Rng& rng);
std::pair<Query, ClientSecret> gen_query_traced(const SchemeInstance& scheme, size_t db_size, size_t b, Rng& rng,
                                                QueryTrace* trace);

// The single server-side operation: the linear combination sum_i m_i q_i.
// Takes only the query and the database, so it cannot depend on any client
// secret by construction.
Reply gen_reply(const Query& query, const Database& db);

// Recovers m_b from an honest reply. Throws RecoveryError when the decoded
// value leaves the plaintext domain (tampered or mismatched reply).
Element extract(const SchemeInstance& scheme, const ClientSecret& secret, const Reply& reply);

// One retrieval against a database shaped s_rows x t_cols: a single query of
// t_cols vectors aimed at target_col, one reply per row, extraction from the
// target row. target_row/target_col are 1-based. Returns that cell's file.
Element matrix_round(const SchemeInstance& scheme, const Database& db, size_t target_row, size_t target_col,
                     Rng& rng);

// One retrieval of file b when every file is split into layers.size() chunks
// (layers[l] holds chunk l of every file). A single query is reused across
// all layers; returns the extracted chunks in layer order.
Vec iterative_round(const SchemeInstance& scheme, const std::vector<Vec>& layers, size_t b, Rng& rng);

// Database layout for communication accounting.
enum class SetupKind : uint8_t { Flat, MatrixSqrt, Iterative };

struct Setup {
  SetupKind kind = SetupKind::Flat;
  uint64_t chunks = 1;  // Iterative only

  static Setup flat() { return {SetupKind::Flat, 1}; }
  static Setup matrix_sqrt() { return {SetupKind::MatrixSqrt, 1}; }
  static Setup iterative(uint64_t chunks) { return {SetupKind::Iterative, chunks}; }
};

// Exact byte accounting under the wire encoding, with element payload and
// framing overhead kept separate. For the matrix layout,
// uplink_element_bytes + downlink_element_bytes = 2*sqrt(N) * element size.
struct CommCost {
  uint64_t uplink_element_bytes = 0;
  uint64_t uplink_framing_bytes = 0;
  uint64_t downlink_element_bytes = 0;
  uint64_t downlink_framing_bytes = 0;

  uint64_t uplink_total() const { return uplink_element_bytes + uplink_framing_bytes; }
  uint64_t downlink_total() const { return downlink_element_bytes + downlink_framing_bytes; }
};

// Defined with the wire codec, which owns the encoding sizes.
CommCost comm_cost(const SchemeInstance& scheme, uint64_t db_size, const Setup& setup);

}  // namespace cpir

#endif  // CPIR_FRAMEWORK_HPP_
