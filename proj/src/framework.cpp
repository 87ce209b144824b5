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

#include "cpir/framework.hpp"

namespace cpir {

namespace {

std::pair<Query, ClientSecret> gen_query_systematic(const SchemeInstance& scheme, size_t db_size, size_t b, Rng& rng,
                                                    QueryTrace* trace) {
  const RingCtx& ctx = scheme.ctx;
  LinearCode code = sample_code(ctx, scheme.code_n, scheme.code_k, rng);
  const std::vector<size_t> outside = code.complement();
  const size_t v = outside[rng.below(outside.size())];

  Query query;
  query.scheme = scheme_id_of(scheme.params);
  query.params = scheme.params;
  query.mode = HidingMode::SystematicErrors;
  query.rows.reserve(db_size);

  ClientSecret secret;
  secret.scheme = query.scheme;
  secret.v = v;
  secret.b = b;

  for (size_t i = 1; i <= db_size; ++i) {
    Vec a(scheme.code_k);
    for (auto& coord : a) coord = ctx.uniform(rng);
    Vec c = encode(code, a);
    Vec e(scheme.code_n, ctx.zero());
    for (size_t j : outside) {
      if (j == v) continue;
      e[j] = ctx.uniform(rng);
    }
    e[v] = i == b ? scheme.sample_z(rng) : scheme.sample_y(rng);
    if (i == b) secret.fz = scheme.f(e[v]);
    Vec q(scheme.code_n);
    for (size_t j = 0; j < scheme.code_n; ++j) q[j] = add(ctx, c[j], e[j]);
    if (trace) {
      trace->codewords.push_back(c);
      trace->errors.push_back(e);
    }
    query.rows.push_back(std::move(q));
  }
  secret.code = std::move(code);
  return {std::move(query), std::move(secret)};
}

std::pair<Query, ClientSecret> gen_query_explicit(const SchemeInstance& scheme, size_t db_size, size_t b, Rng& rng,
                                                  QueryTrace* trace) {
  const RingCtx& ctx = scheme.ctx;
  Element s = ctx.uniform(rng);
  while (ctx.is_zero(s)) s = ctx.uniform(rng);
  ConstacyclicCode code{ctx, std::move(s)};

  Query query;
  query.scheme = scheme_id_of(scheme.params);
  query.params = scheme.params;
  query.mode = HidingMode::ExplicitCoefficients;
  query.rows.reserve(db_size);

  ClientSecret secret;
  secret.scheme = query.scheme;
  secret.b = b;

  for (size_t i = 1; i <= db_size; ++i) {
    Element a = ctx.uniform(rng);
    Element e = i == b ? scheme.sample_z(rng) : scheme.sample_y(rng);
    if (i == b) secret.fz = scheme.f(e);
    Element noisy = add(ctx, cc_encode(code, a), e);
    if (trace) {
      trace->codewords.push_back(Vec{cc_encode(code, a)});
      trace->errors.push_back(Vec{e});
    }
    query.rows.push_back(Vec{std::move(a), std::move(noisy)});
  }
  secret.ring_code = std::move(code);
  return {std::move(query), std::move(secret)};
}

}  // namespace

Database make_database(const SchemeInstance& scheme, Vec files, std::optional<std::pair<size_t, size_t>> shape) {
  for (size_t i = 0; i < files.size(); ++i) {
    if (!scheme.ctx.is_valid(files[i]) || !scheme.in_x(files[i])) {
      throw std::invalid_argument("make_database: file " + std::to_string(i + 1) +
                                  " is outside the plaintext domain");
    }
  }
  if (shape && shape->first * shape->second != files.size()) {
    throw std::invalid_argument("make_database: shape does not cover the database");
  }
  Database db;
  db.files = std::move(files);
  db.shape = shape;
  return db;
}

std::pair<Query, ClientSecret> gen_query(const SchemeInstance& scheme, size_t db_size, size_t b, Rng& rng) {
  return gen_query_traced(scheme, db_size, b, rng, nullptr);
}

std::pair<Query, ClientSecret> gen_query_traced(const SchemeInstance& scheme, size_t db_size, size_t b, Rng& rng,
                                                QueryTrace* trace) {
  if (b < 1 || b > db_size) throw std::invalid_argument("gen_query: index must satisfy 1 <= b <= db_size");
  if (db_size > scheme.max_db_size)
    throw std::invalid_argument("gen_query: database size exceeds the scheme's correctness bound");
  if (scheme.mode == HidingMode::SystematicErrors) return gen_query_systematic(scheme, db_size, b, rng, trace);
  return gen_query_explicit(scheme, db_size, b, rng, trace);
}

Reply gen_reply(const Query& query, const Database& db) {
  if (db.size() != query.db_size()) throw std::invalid_argument("gen_reply: database and query sizes differ");
  if (query.rows.empty()) throw std::invalid_argument("gen_reply: empty query");
  const RingCtx ctx = ctx_for(query.params);
  const size_t row_len = query.rows[0].size();
  Reply reply;
  reply.mode = query.mode;
  reply.r.assign(row_len, ctx.zero());
  std::vector<uint64_t> prod(ctx.width());
  for (size_t i = 0; i < db.size(); ++i) {
    const Element& m = db.files[i];
    if (!ctx.is_valid(m)) throw std::invalid_argument("gen_reply: database element does not match the ring context");
    if (ctx.is_zero(m)) continue;
    const Vec& row = query.rows[i];
    if (row.size() != row_len) throw std::invalid_argument("gen_reply: ragged query rows");
    for (size_t j = 0; j < row_len; ++j) {
      entry_mul(ctx, m.data(), row[j].data(), prod.data());
      entry_add(ctx, reply.r[j].data(), prod.data(), reply.r[j].data());
    }
  }
  return reply;
}

Element extract(const SchemeInstance& scheme, const ClientSecret& secret, const Reply& reply) {
  if (reply.mode != scheme.mode) throw std::invalid_argument("extract: reply mode does not match the scheme");
  Element file;
  if (scheme.mode == HidingMode::SystematicErrors) {
    if (!secret.code) throw std::invalid_argument("extract: secret lacks the linear code");
    if (reply.r.size() != scheme.code_n) throw std::invalid_argument("extract: reply length mismatch");
    const Vec e = erase_decode(*secret.code, reply.r);
    file = scheme.recover(scheme.f(e[secret.v]), secret.fz);
  } else {
    if (!secret.ring_code) throw std::invalid_argument("extract: secret lacks the ring code");
    if (reply.r.size() != 2) throw std::invalid_argument("extract: reply must carry the (r1, r2) pair");
    const Element d = cc_decode(*secret.ring_code, reply.r[0], reply.r[1]);
    file = scheme.recover(scheme.f(d), secret.fz);
  }
  if (!scheme.in_x(file)) throw RecoveryError("extract: recovered value is outside the plaintext domain");
  return file;
}

Element matrix_round(const SchemeInstance& scheme, const Database& db, size_t target_row, size_t target_col,
                     Rng& rng) {
  if (!db.shape) throw std::invalid_argument("matrix_round: database has no matrix shape");
  const auto [s_rows, t_cols] = *db.shape;
  if (s_rows * t_cols != db.size()) throw std::invalid_argument("matrix_round: shape does not cover the database");
  if (target_row < 1 || target_row > s_rows || target_col < 1 || target_col > t_cols)
    throw std::invalid_argument("matrix_round: target outside the grid");
  auto [query, secret] = gen_query(scheme, t_cols, target_col, rng);
  Reply wanted;
  for (size_t row = 0; row < s_rows; ++row) {
    Database slice;
    slice.files.assign(db.files.begin() + row * t_cols, db.files.begin() + (row + 1) * t_cols);
    Reply reply = gen_reply(query, slice);
    if (row + 1 == target_row) wanted = std::move(reply);
  }
  return extract(scheme, secret, wanted);
}

Vec iterative_round(const SchemeInstance& scheme, const std::vector<Vec>& layers, size_t b, Rng& rng) {
  if (layers.empty()) throw std::invalid_argument("iterative_round: no layers");
  const size_t db_size = layers[0].size();
  for (const Vec& layer : layers) {
    if (layer.size() != db_size) throw std::invalid_argument("iterative_round: ragged layers");
  }
  auto [query, secret] = gen_query(scheme, db_size, b, rng);
  Vec chunks;
  chunks.reserve(layers.size());
  for (const Vec& layer : layers) {
    Database slice;
    slice.files = layer;
    chunks.push_back(extract(scheme, secret, gen_reply(query, slice)));
  }
  return chunks;
}

}  // namespace cpir
