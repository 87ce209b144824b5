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

#ifndef CPIR_WIRE_HPP_
#define CPIR_WIRE_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "cpir/framework.hpp"

namespace cpir {

// Frame layout, all integers little-endian:
//   magic   4 bytes  "CPIR"
//   version 1 byte   0x01
//   kind    1 byte   1=Query 2=Reply 3=Error
//   scheme  1 byte   1=basic 2=hhwz 3=amg 4=rlwe; 0 only on Error frames
//                    sent before any scheme context exists
//   length  8 bytes  body byte count
//   body    `length` bytes
//
// Query body: params block, u64 database size, then the query rows row-major
// with every residue as 8 little-endian bytes (extension-field elements as m
// consecutive residues, polynomials as deg consecutive residues).
// Params blocks by scheme:
//   basic  q, n, k
//   hhwz   q, m, s, n, k, then the m+1 modulus coefficients
//   amg    db_size, n, k              (ell, t, p are re-derived)
//   rlwe   q, deg, t, sigma (IEEE-754 bits), db_size
// Reply body: u64 unit count, then that many reply units (same element
// grammar; one unit is code_n elements, or the (r1, r2) pair).
// Error body: UTF-8 message, possibly empty.

enum class MsgKind : uint8_t { Query = 1, Reply = 2, Error = 3 };

constexpr size_t kFrameHeaderBytes = 15;
constexpr uint8_t kWireVersion = 1;

enum class WireErrorCode : uint8_t {
  BadMagic,
  BadVersion,
  BadKind,
  BadScheme,
  Truncated,
  TrailingBytes,
  BadBody,
};

class WireError : public std::runtime_error {
 public:
  WireError(WireErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  WireErrorCode code() const { return code_; }

 private:
  WireErrorCode code_;
};

struct WireMessage {
  MsgKind kind = MsgKind::Error;
  uint8_t scheme_id = 0;
  std::vector<uint8_t> body;

  bool operator==(const WireMessage& other) const = default;
};

std::vector<uint8_t> encode_message(const WireMessage& msg);
// Strict inverse: throws WireError on bad magic, version, kind, scheme,
// truncation, or trailing bytes.
WireMessage decode_message(const std::vector<uint8_t>& bytes);

size_t params_block_bytes(const SchemeParams& params);
void append_params(const SchemeParams& params, std::vector<uint8_t>* out);

// Full query frame; also the transcript file format.
std::vector<uint8_t> encode_query(const Query& query);
Query decode_query(const WireMessage& msg);

// One frame carrying `replies.size()` reply units (1 for the flat protocol).
std::vector<uint8_t> encode_reply_frame(SchemeId scheme, const std::vector<Reply>& replies);
std::vector<Reply> decode_reply_frame(const WireMessage& msg, const SchemeParams& params);

std::vector<uint8_t> encode_error_frame(uint8_t scheme_id, const std::string& message);

// Database file: magic "CPDB", version byte, scheme byte, u64 count, then
// the elements in the element grammar. Residue ranges are checked against
// the scheme parameters only when the elements are materialized.
void save_db_file(const std::string& path, SchemeId scheme, const Vec& files);

struct LoadedDb {
  uint8_t scheme_id = 0;
  uint64_t count = 0;
  size_t width = 0;  // residues per element, inferred from the payload size
  std::vector<uint64_t> residues;
};

LoadedDb load_db_file(const std::string& path);

// Splits a loaded payload into Elements, checking the expected width.
Vec db_elements(const LoadedDb& db, size_t expect_width);

// Whole-file helpers for transcripts and stored elements.
void write_file_bytes(const std::string& path, const std::vector<uint8_t>& bytes);
std::vector<uint8_t> read_file_bytes(const std::string& path);

}  // namespace cpir

#endif  // CPIR_WIRE_HPP_
