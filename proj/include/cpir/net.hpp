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

#ifndef CPIR_NET_HPP_
#define CPIR_NET_HPP_

#include <atomic>
#include <cstdint>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "cpir/wire.hpp"

namespace cpir {

// Maps one request frame to one response frame. Any malformed or mismatched
// request yields an Error frame instead of an exception; only a Query frame
// matching the database produces a Reply. Pure, so it is testable without
// sockets.
std::vector<uint8_t> serve_one(const LoadedDb& db, const std::vector<uint8_t>& request);

// TCP server speaking one request/response exchange per connection.
class Server {
 public:
  struct Options {
    std::string host = "127.0.0.1";
    uint16_t port = 0;  // 0 picks an ephemeral port
    bool parallel = false;
    // Stop after this many responses; 0 means run until stop(). A request
    // budget forces sequential handling so the count is exact.
    uint64_t max_requests = 0;
  };

  Server(LoadedDb db, Options opts);
  ~Server();

  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Binds and starts the accept loop. Throws on socket errors. port() is
  // valid once start() returns.
  void start();
  uint16_t port() const { return port_; }
  uint64_t served() const { return served_.load(); }

  // Blocks until the accept loop exits (request budget reached or stop()).
  void wait();
  // Shuts the listener down and joins all threads. Idempotent.
  void stop();

 private:
  void accept_loop();
  void handle_connection(int fd);

  LoadedDb db_;
  Options opts_;
  int listen_fd_ = -1;
  uint16_t port_ = 0;
  std::atomic<bool> stopping_{false};
  std::atomic<uint64_t> served_{0};
  std::thread accept_thread_;
  std::mutex workers_mu_;
  std::vector<std::thread> workers_;
};

// Client side: sends one frame and reads the single response frame.
// Throws std::runtime_error on connection or framing failures.
std::vector<uint8_t> exchange_frame(const std::string& host, uint16_t port,
                                    const std::vector<uint8_t>& frame);

struct FetchOutcome {
  bool ok = false;
  Element file;                       // set when ok
  std::string error;                  // server or protocol error when !ok
  std::vector<uint8_t> query_frame;   // the transcript bytes
};

// Full client round: build a query for index b, exchange frames, extract.
FetchOutcome fetch_file(const std::string& host, uint16_t port, const SchemeInstance& scheme,
                        size_t db_size, size_t b, Rng& rng);

}  // namespace cpir

#endif  // CPIR_NET_HPP_
