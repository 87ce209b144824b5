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

#include <doctest.h>

#include <cstdio>
#include <set>
#include <thread>

#include "cpir/net.hpp"
#include "cpir/schemes.hpp"

using namespace cpir;

namespace {

LoadedDb db_for(const SchemeInstance& scheme, size_t count, Rng& rng, Vec* files_out = nullptr) {
  Vec files;
  for (size_t i = 0; i < count; ++i) files.push_back(scheme.sample_x(rng));
  if (files_out) *files_out = files;
  const std::string path = "net_test_tmp.db";
  save_db_file(path, scheme_id_of(scheme.params), files);
  LoadedDb db = load_db_file(path);
  std::remove(path.c_str());
  return db;
}

std::string error_text(const std::vector<uint8_t>& frame) {
  const WireMessage msg = decode_message(frame);
  REQUIRE(msg.kind == MsgKind::Error);
  return std::string(msg.body.begin(), msg.body.end());
}

}  // namespace

TEST_CASE("request handler answers honest queries with the right reply") {
  const SchemeInstance scheme = make_basic(default_basic());
  Rng rng(1001);
  Vec files;
  const LoadedDb db = db_for(scheme, 50, rng, &files);
  auto [query, secret] = gen_query(scheme, 50, 13, rng);
  const std::vector<uint8_t> response = serve_one(db, encode_query(query));
  const WireMessage msg = decode_message(response);
  REQUIRE(msg.kind == MsgKind::Reply);
  const std::vector<Reply> replies = decode_reply_frame(msg, scheme.params);
  REQUIRE(replies.size() == 1);
  CHECK(extract(scheme, secret, replies[0]) == files[12]);
}

TEST_CASE("request handler turns every failure into an error frame") {
  const SchemeInstance scheme = make_basic(default_basic());
  Rng rng(1002);
  const LoadedDb db = db_for(scheme, 50, rng);

  // A reply frame is not a request.
  auto [query, secret] = gen_query(scheme, 50, 1, rng);
  const Reply reply{HidingMode::SystematicErrors, Vec(10, Element{0})};
  CHECK(error_text(serve_one(db, encode_reply_frame(SchemeId::Basic, {reply}))) == "expected a query frame");

  // Scheme mismatch between the query and the stored database.
  const SchemeInstance amg = make_amg(default_amg());
  auto [amg_query, amg_secret] = gen_query(amg, 8, 1, rng);
  CHECK(error_text(serve_one(db, encode_query(amg_query))) == "query scheme does not match the database");

  // Database size mismatch.
  auto [short_query, short_secret] = gen_query(scheme, 20, 1, rng);
  CHECK(error_text(serve_one(db, encode_query(short_query))) == "database holds 50 files, query covers 20");

  // Garbage bytes.
  CHECK(error_text(serve_one(db, {1, 2, 3})).size() > 0);

  // Database content outside the scheme's plaintext domain.
  LoadedDb tainted = db;
  tainted.residues[7] = 13;
  const std::string taint_error = error_text(serve_one(tainted, encode_query(query)));
  CHECK(taint_error.find("outside the plaintext domain") != std::string::npos);
}

TEST_CASE("loopback retrieval succeeds for all four schemes") {
  uint64_t seed = 1003;
  for (const char* name : {"basic", "hhwz", "amg", "rlwe"}) {
    CAPTURE(name);
    SchemeInstance scheme = [&] {
      if (std::string(name) == "basic") return make_basic(default_basic());
      if (std::string(name) == "hhwz") return make_hhwz(default_hhwz());
      if (std::string(name) == "amg") return make_amg(default_amg());
      return make_rlwe(default_rlwe());
    }();
    const size_t db_size = scheme.max_db_size == UINT64_MAX ? 24 : scheme.max_db_size;
    Rng rng(seed++);
    Vec files;
    const LoadedDb db = db_for(scheme, db_size, rng, &files);
    Server server(db, Server::Options{});
    server.start();
    const size_t b = 1 + rng.below(db_size);
    const FetchOutcome out = fetch_file("127.0.0.1", server.port(), scheme, db_size, b, rng);
    REQUIRE(out.ok);
    CHECK(out.file == files[b - 1]);
    CHECK_FALSE(out.query_frame.empty());
    server.stop();
    CHECK(server.served() == 1);
  }
}

TEST_CASE("client surfaces server-side errors") {
  const SchemeInstance scheme = make_basic(default_basic());
  Rng rng(1004);
  const LoadedDb db = db_for(scheme, 50, rng);
  Server server(db, Server::Options{});
  server.start();
  const FetchOutcome out = fetch_file("127.0.0.1", server.port(), scheme, 30, 3, rng);
  CHECK_FALSE(out.ok);
  CHECK(out.error == "database holds 50 files, query covers 30");
  server.stop();
}

TEST_CASE("every fetch sends a fresh query") {
  const SchemeInstance scheme = make_basic(default_basic());
  Rng rng(1005);
  const LoadedDb db = db_for(scheme, 50, rng);
  Server server(db, Server::Options{});
  server.start();
  std::set<std::vector<uint8_t>> transcripts;
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    Rng client(seed);
    const FetchOutcome out = fetch_file("127.0.0.1", server.port(), scheme, 50, 9, client);
    REQUIRE(out.ok);
    transcripts.insert(out.query_frame);
  }
  CHECK(transcripts.size() == 10);
  server.stop();
  CHECK(server.served() == 10);
}

TEST_CASE("parallel server answers concurrent clients") {
  const SchemeInstance scheme = make_basic(default_basic());
  Rng rng(1006);
  Vec files;
  const LoadedDb db = db_for(scheme, 50, rng, &files);
  Server::Options opts;
  opts.parallel = true;
  Server server(db, opts);
  server.start();
  std::vector<std::thread> clients;
  std::vector<int> ok(8, 0);
  for (int i = 0; i < 8; ++i) {
    clients.emplace_back([&, i] {
      const SchemeInstance local = make_basic(default_basic());
      Rng crng(2000 + i);
      const size_t b = 1 + crng.below(50);
      const FetchOutcome out = fetch_file("127.0.0.1", server.port(), local, 50, b, crng);
      ok[i] = out.ok && out.file == files[b - 1];
    });
  }
  for (auto& t : clients) t.join();
  for (int i = 0; i < 8; ++i) CHECK(ok[i] == 1);
  server.stop();
  CHECK(server.served() == 8);
}

TEST_CASE("request budget stops the accept loop") {
  const SchemeInstance scheme = make_basic(default_basic());
  Rng rng(1007);
  const LoadedDb db = db_for(scheme, 50, rng);
  Server::Options opts;
  opts.max_requests = 3;
  Server server(db, opts);
  server.start();
  for (int i = 0; i < 3; ++i) {
    const FetchOutcome out = fetch_file("127.0.0.1", server.port(), scheme, 50, 1 + i, rng);
    CHECK(out.ok);
  }
  server.wait();
  CHECK(server.served() == 3);
  server.stop();
}
