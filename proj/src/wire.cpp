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

#include "cpir/wire.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "cpir/scheme_params.hpp"

namespace cpir {
namespace {

constexpr char kFrameMagic[4] = {'C', 'P', 'I', 'R'};
constexpr char kDbMagic[4] = {'C', 'P', 'D', 'B'};

// Caps keep a hostile frame from driving huge allocations before the exact
// length check runs.
constexpr uint64_t kMaxWireDbSize = uint64_t{1} << 20;
constexpr uint64_t kMaxWireBody = uint64_t{1} << 30;

void put_u64(uint64_t v, std::vector<uint8_t>* out) {
  for (int i = 0; i < 8; ++i) out->push_back(static_cast<uint8_t>(v >> (8 * i)));
}

class Reader {
 public:
  explicit Reader(const std::vector<uint8_t>& bytes) : bytes_(bytes) {}

  uint64_t u64(const char* what) {
    if (bytes_.size() - pos_ < 8) {
      throw WireError(WireErrorCode::Truncated, std::string("body ends inside ") + what);
    }
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= uint64_t{bytes_[pos_ + i]} << (8 * i);
    pos_ += 8;
    return v;
  }

  size_t remaining() const { return bytes_.size() - pos_; }

 private:
  const std::vector<uint8_t>& bytes_;
  size_t pos_ = 0;
};

void append_element(const Element& e, std::vector<uint8_t>* out) {
  for (uint64_t r : e) put_u64(r, out);
}

Element read_element(Reader* in, const RingCtx& ctx, const char* what) {
  Element e(ctx.width());
  for (size_t i = 0; i < e.size(); ++i) e[i] = in->u64(what);
  if (!ctx.is_valid(e)) {
    throw WireError(WireErrorCode::BadBody, std::string(what) + ": residue out of range");
  }
  return e;
}

size_t row_elements(const SchemeParams& params) {
  if (scheme_id_of(params) == SchemeId::Rlwe) return 2;
  return std::visit([](const auto& p) -> size_t {
    using T = std::decay_t<decltype(p)>;
    if constexpr (std::is_same_v<T, RlweParams>) {
      return 2;
    } else {
      return p.n;
    }
  }, params);
}

SchemeParams read_params(Reader* in, uint8_t scheme_id) {
  switch (static_cast<SchemeId>(scheme_id)) {
    case SchemeId::Basic: {
      BasicParams p;
      p.q = in->u64("basic params");
      p.n = in->u64("basic params");
      p.k = in->u64("basic params");
      return p;
    }
    case SchemeId::Hhwz: {
      HhwzParams p;
      p.q = in->u64("hhwz params");
      p.m = in->u64("hhwz params");
      p.s = in->u64("hhwz params");
      p.n = in->u64("hhwz params");
      p.k = in->u64("hhwz params");
      if (p.m > 64) throw WireError(WireErrorCode::BadBody, "hhwz params: extension degree too large");
      p.modulus.resize(p.m + 1);
      for (auto& c : p.modulus) c = in->u64("hhwz modulus");
      return p;
    }
    case SchemeId::Amg: {
      AmgParams p;
      p.db_size = in->u64("amg params");
      p.n = in->u64("amg params");
      p.k = in->u64("amg params");
      return p;
    }
    case SchemeId::Rlwe: {
      RlweParams p;
      p.q = in->u64("rlwe params");
      p.deg = in->u64("rlwe params");
      p.t = in->u64("rlwe params");
      p.sigma = std::bit_cast<double>(in->u64("rlwe params"));
      p.db_size = in->u64("rlwe params");
      if (!std::isfinite(p.sigma)) {
        throw WireError(WireErrorCode::BadBody, "rlwe params: sigma is not finite");
      }
      return p;
    }
    default:
      throw WireError(WireErrorCode::BadScheme, "unknown scheme id");
  }
}

}  // namespace

std::vector<uint8_t> encode_message(const WireMessage& msg) {
  std::vector<uint8_t> out;
  out.reserve(kFrameHeaderBytes + msg.body.size());
  out.insert(out.end(), kFrameMagic, kFrameMagic + 4);
  out.push_back(kWireVersion);
  out.push_back(static_cast<uint8_t>(msg.kind));
  out.push_back(msg.scheme_id);
  put_u64(msg.body.size(), &out);
  out.insert(out.end(), msg.body.begin(), msg.body.end());
  return out;
}

WireMessage decode_message(const std::vector<uint8_t>& bytes) {
  if (bytes.size() < kFrameHeaderBytes) {
    throw WireError(WireErrorCode::Truncated, "frame shorter than the 15-byte header");
  }
  if (std::memcmp(bytes.data(), kFrameMagic, 4) != 0) {
    throw WireError(WireErrorCode::BadMagic, "bad frame magic");
  }
  if (bytes[4] != kWireVersion) {
    throw WireError(WireErrorCode::BadVersion, "unsupported frame version");
  }
  const uint8_t kind = bytes[5];
  if (kind < 1 || kind > 3) {
    throw WireError(WireErrorCode::BadKind, "unknown message kind");
  }
  const uint8_t scheme = bytes[6];
  const bool scheme_ok = (scheme >= 1 && scheme <= 4) ||
                         (scheme == 0 && kind == static_cast<uint8_t>(MsgKind::Error));
  if (!scheme_ok) {
    throw WireError(WireErrorCode::BadScheme, "unknown scheme id");
  }
  uint64_t body_len = 0;
  for (int i = 0; i < 8; ++i) body_len |= uint64_t{bytes[7 + i]} << (8 * i);
  if (body_len > kMaxWireBody) {
    throw WireError(WireErrorCode::BadBody, "declared body length exceeds the frame cap");
  }
  const uint64_t have = bytes.size() - kFrameHeaderBytes;
  if (have < body_len) {
    throw WireError(WireErrorCode::Truncated, "frame shorter than its declared body length");
  }
  if (have > body_len) {
    throw WireError(WireErrorCode::TrailingBytes, "bytes after the declared body");
  }
  WireMessage msg;
  msg.kind = static_cast<MsgKind>(kind);
  msg.scheme_id = scheme;
  msg.body.assign(bytes.begin() + kFrameHeaderBytes, bytes.end());
  return msg;
}

size_t params_block_bytes(const SchemeParams& params) {
  return std::visit([](const auto& p) -> size_t {
    using T = std::decay_t<decltype(p)>;
    if constexpr (std::is_same_v<T, BasicParams>) {
      return 3 * 8;
    } else if constexpr (std::is_same_v<T, HhwzParams>) {
      return (5 + p.m + 1) * 8;
    } else if constexpr (std::is_same_v<T, AmgParams>) {
      return 3 * 8;
    } else {
      return 5 * 8;
    }
  }, params);
}

void append_params(const SchemeParams& params, std::vector<uint8_t>* out) {
  std::visit([out](const auto& p) {
    using T = std::decay_t<decltype(p)>;
    if constexpr (std::is_same_v<T, BasicParams>) {
      put_u64(p.q, out);
      put_u64(p.n, out);
      put_u64(p.k, out);
    } else if constexpr (std::is_same_v<T, HhwzParams>) {
      put_u64(p.q, out);
      put_u64(p.m, out);
      put_u64(p.s, out);
      put_u64(p.n, out);
      put_u64(p.k, out);
      for (uint64_t c : p.modulus) put_u64(c, out);
    } else if constexpr (std::is_same_v<T, AmgParams>) {
      put_u64(p.db_size, out);
      put_u64(p.n, out);
      put_u64(p.k, out);
    } else {
      put_u64(p.q, out);
      put_u64(p.deg, out);
      put_u64(p.t, out);
      put_u64(std::bit_cast<uint64_t>(p.sigma), out);
      put_u64(p.db_size, out);
    }
  }, params);
}

std::vector<uint8_t> encode_query(const Query& query) {
  const SchemeParams params = normalize(query.params);
  WireMessage msg;
  msg.kind = MsgKind::Query;
  msg.scheme_id = static_cast<uint8_t>(query.scheme);
  append_params(params, &msg.body);
  put_u64(query.rows.size(), &msg.body);
  for (const Vec& row : query.rows) {
    for (const Element& e : row) append_element(e, &msg.body);
  }
  return encode_message(msg);
}

Query decode_query(const WireMessage& msg) {
  if (msg.kind != MsgKind::Query) {
    throw WireError(WireErrorCode::BadKind, "expected a query frame");
  }
  Reader in(msg.body);
  SchemeParams params = read_params(&in, msg.scheme_id);
  try {
    params = normalize(params);
  } catch (const std::exception& e) {
    throw WireError(WireErrorCode::BadBody, std::string("invalid parameters: ") + e.what());
  }
  const RingCtx ctx = ctx_for(params);
  const uint64_t db_size = in.u64("database size");
  if (db_size == 0 || db_size > kMaxWireDbSize) {
    throw WireError(WireErrorCode::BadBody, "database size out of range");
  }
  const size_t cols = row_elements(params);
  const uint64_t row_bytes = uint64_t{cols} * ctx.width() * 8;
  if (in.remaining() != db_size * row_bytes) {
    throw WireError(in.remaining() < db_size * row_bytes ? WireErrorCode::Truncated
                                                         : WireErrorCode::TrailingBytes,
                    "query body size does not match the row count");
  }
  Query query;
  query.scheme = scheme_id_of(params);
  query.params = params;
  query.mode = query.scheme == SchemeId::Rlwe ? HidingMode::ExplicitCoefficients
                                              : HidingMode::SystematicErrors;
  query.rows.reserve(db_size);
  for (uint64_t i = 0; i < db_size; ++i) {
    Vec row;
    row.reserve(cols);
    for (size_t j = 0; j < cols; ++j) row.push_back(read_element(&in, ctx, "query row"));
    query.rows.push_back(std::move(row));
  }
  return query;
}

std::vector<uint8_t> encode_reply_frame(SchemeId scheme, const std::vector<Reply>& replies) {
  WireMessage msg;
  msg.kind = MsgKind::Reply;
  msg.scheme_id = static_cast<uint8_t>(scheme);
  put_u64(replies.size(), &msg.body);
  for (const Reply& reply : replies) {
    for (const Element& e : reply.r) append_element(e, &msg.body);
  }
  return encode_message(msg);
}

std::vector<Reply> decode_reply_frame(const WireMessage& msg, const SchemeParams& params) {
  if (msg.kind != MsgKind::Reply) {
    throw WireError(WireErrorCode::BadKind, "expected a reply frame");
  }
  if (msg.scheme_id != static_cast<uint8_t>(scheme_id_of(params))) {
    throw WireError(WireErrorCode::BadScheme, "reply scheme does not match the query");
  }
  const RingCtx ctx = ctx_for(params);
  Reader in(msg.body);
  const uint64_t count = in.u64("reply count");
  const size_t cols = row_elements(params);
  const uint64_t unit_bytes = uint64_t{cols} * ctx.width() * 8;
  if (count > kMaxWireDbSize || in.remaining() != count * unit_bytes) {
    throw WireError(WireErrorCode::BadBody, "reply body size does not match the unit count");
  }
  const HidingMode mode = scheme_id_of(params) == SchemeId::Rlwe
                              ? HidingMode::ExplicitCoefficients
                              : HidingMode::SystematicErrors;
  std::vector<Reply> replies;
  replies.reserve(count);
  for (uint64_t i = 0; i < count; ++i) {
    Reply reply;
    reply.mode = mode;
    reply.r.reserve(cols);
    for (size_t j = 0; j < cols; ++j) reply.r.push_back(read_element(&in, ctx, "reply unit"));
    replies.push_back(std::move(reply));
  }
  return replies;
}

std::vector<uint8_t> encode_error_frame(uint8_t scheme_id, const std::string& message) {
  WireMessage msg;
  msg.kind = MsgKind::Error;
  msg.scheme_id = scheme_id;
  msg.body.assign(message.begin(), message.end());
  return encode_message(msg);
}

void save_db_file(const std::string& path, SchemeId scheme, const Vec& files) {
  std::vector<uint8_t> out;
  out.insert(out.end(), kDbMagic, kDbMagic + 4);
  out.push_back(kWireVersion);
  out.push_back(static_cast<uint8_t>(scheme));
  put_u64(files.size(), &out);
  for (const Element& e : files) append_element(e, &out);
  write_file_bytes(path, out);
}

LoadedDb load_db_file(const std::string& path) {
  const std::vector<uint8_t> bytes = read_file_bytes(path);
  if (bytes.size() < 14) {
    throw WireError(WireErrorCode::Truncated, "database file shorter than its header");
  }
  if (std::memcmp(bytes.data(), kDbMagic, 4) != 0) {
    throw WireError(WireErrorCode::BadMagic, "bad database magic");
  }
  if (bytes[4] != kWireVersion) {
    throw WireError(WireErrorCode::BadVersion, "unsupported database version");
  }
  LoadedDb db;
  db.scheme_id = bytes[5];
  if (db.scheme_id < 1 || db.scheme_id > 4) {
    throw WireError(WireErrorCode::BadScheme, "unknown scheme id in database file");
  }
  uint64_t count = 0;
  for (int i = 0; i < 8; ++i) count |= uint64_t{bytes[6 + i]} << (8 * i);
  db.count = count;
  const uint64_t payload = bytes.size() - 14;
  if (payload % 8 != 0) {
    throw WireError(WireErrorCode::BadBody, "database payload is not a whole number of residues");
  }
  const uint64_t residues = payload / 8;
  if (count == 0) {
    if (residues != 0) {
      throw WireError(WireErrorCode::TrailingBytes, "empty database with a nonempty payload");
    }
    return db;
  }
  if (count > kMaxWireDbSize || residues % count != 0) {
    throw WireError(WireErrorCode::BadBody, "database payload does not split into equal elements");
  }
  db.width = residues / count;
  db.residues.reserve(residues);
  for (uint64_t i = 0; i < residues; ++i) {
    uint64_t v = 0;
    for (int j = 0; j < 8; ++j) v |= uint64_t{bytes[14 + 8 * i + j]} << (8 * j);
    db.residues.push_back(v);
  }
  return db;
}

Vec db_elements(const LoadedDb& db, size_t expect_width) {
  if (db.count != 0 && db.width != expect_width) {
    std::ostringstream oss;
    oss << "database elements have " << db.width << " residues, scheme expects " << expect_width;
    throw WireError(WireErrorCode::BadBody, oss.str());
  }
  Vec files;
  files.reserve(db.count);
  for (uint64_t i = 0; i < db.count; ++i) {
    files.emplace_back(db.residues.begin() + i * db.width, db.residues.begin() + (i + 1) * db.width);
  }
  return files;
}

void write_file_bytes(const std::string& path, const std::vector<uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<uint8_t> read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw std::runtime_error("read failed: " + path);
  return bytes;
}

// Defined here rather than in framework.cpp because the framing overhead is a
// wire-format fact.
CommCost comm_cost(const SchemeInstance& scheme, uint64_t db_size, const Setup& setup) {
  if (db_size == 0) throw std::invalid_argument("comm_cost: empty database");
  const size_t cols = scheme.mode == HidingMode::ExplicitCoefficients ? 2 : scheme.code_n;
  const uint64_t row_bytes = uint64_t{cols} * scheme.ctx.width() * 8;
  const uint64_t query_overhead = kFrameHeaderBytes + params_block_bytes(scheme.params) + 8;
  const uint64_t reply_overhead = kFrameHeaderBytes + 8;

  CommCost cost;
  cost.uplink_framing_bytes = query_overhead;
  cost.downlink_framing_bytes = reply_overhead;
  switch (setup.kind) {
    case SetupKind::Flat:
      cost.uplink_element_bytes = db_size * row_bytes;
      cost.downlink_element_bytes = row_bytes;
      break;
    case SetupKind::MatrixSqrt: {
      uint64_t r = static_cast<uint64_t>(std::llround(std::sqrt(static_cast<double>(db_size))));
      while (r * r > db_size) --r;
      while ((r + 1) * (r + 1) <= db_size) ++r;
      if (r * r != db_size) {
        throw std::invalid_argument("comm_cost: matrix layout needs a square database size");
      }
      cost.uplink_element_bytes = r * row_bytes;
      cost.downlink_element_bytes = r * row_bytes;
      break;
    }
    case SetupKind::Iterative:
      if (setup.chunks == 0) throw std::invalid_argument("comm_cost: chunk count must be positive");
      cost.uplink_element_bytes = db_size * row_bytes;
      cost.downlink_element_bytes = setup.chunks * row_bytes;
      break;
  }
  return cost;
}

}  // namespace cpir
