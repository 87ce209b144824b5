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

#include "cpir/net.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <sstream>

#include "cpir/schemes.hpp"

namespace cpir {
namespace {

constexpr uint64_t kMaxFrameBody = uint64_t{1} << 30;

void set_timeouts(int fd) {
  timeval tv{};
  tv.tv_sec = 10;
  setsockopt(fd, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof(tv));
  setsockopt(fd, SOL_SOCKET, SO_SNDTIMEO, &tv, sizeof(tv));
}

bool send_all(int fd, const uint8_t* data, size_t len) {
  size_t sent = 0;
  while (sent < len) {
    const ssize_t n = ::send(fd, data + sent, len - sent, MSG_NOSIGNAL);
    if (n <= 0) {
      if (n < 0 && errno == EINTR) continue;
      return false;
    }
    sent += static_cast<size_t>(n);
  }
  return true;
}

bool recv_all(int fd, uint8_t* data, size_t len) {
  size_t got = 0;
  while (got < len) {
    const ssize_t n = ::recv(fd, data + got, len - got, 0);
    if (n <= 0) {
      if (n < 0 && errno == EINTR) continue;
      return false;
    }
    got += static_cast<size_t>(n);
  }
  return true;
}

// Reads one frame: the fixed header, then exactly the declared body.
bool recv_frame(int fd, std::vector<uint8_t>* frame, std::string* err) {
  frame->assign(kFrameHeaderBytes, 0);
  if (!recv_all(fd, frame->data(), kFrameHeaderBytes)) {
    *err = "connection closed before a full header arrived";
    return false;
  }
  uint64_t body_len = 0;
  for (int i = 0; i < 8; ++i) body_len |= uint64_t{(*frame)[7 + i]} << (8 * i);
  if (body_len > kMaxFrameBody) {
    *err = "declared body length exceeds the frame cap";
    return false;
  }
  frame->resize(kFrameHeaderBytes + body_len);
  if (body_len > 0 && !recv_all(fd, frame->data() + kFrameHeaderBytes, body_len)) {
    *err = "connection closed before the full body arrived";
    return false;
  }
  return true;
}

int connect_to(const std::string& host, uint16_t port) {
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  if (inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
    throw std::runtime_error("bad IPv4 address: " + host);
  }
  const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd < 0) throw std::runtime_error(std::string("socket: ") + std::strerror(errno));
  set_timeouts(fd);
  if (::connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
    const int saved = errno;
    ::close(fd);
    std::ostringstream oss;
    oss << "connect to " << host << ":" << port << ": " << std::strerror(saved);
    throw std::runtime_error(oss.str());
  }
  return fd;
}

}  // namespace

std::vector<uint8_t> serve_one(const LoadedDb& db, const std::vector<uint8_t>& request) {
  uint8_t scheme_for_error = 0;
  try {
    const WireMessage msg = decode_message(request);
    scheme_for_error = msg.scheme_id;
    if (msg.kind != MsgKind::Query) {
      return encode_error_frame(scheme_for_error, "expected a query frame");
    }
    const Query query = decode_query(msg);
    if (static_cast<uint8_t>(query.scheme) != db.scheme_id) {
      return encode_error_frame(scheme_for_error, "query scheme does not match the database");
    }
    if (query.db_size() != db.count) {
      std::ostringstream oss;
      oss << "database holds " << db.count << " files, query covers " << query.db_size();
      return encode_error_frame(scheme_for_error, oss.str());
    }
    const SchemeInstance scheme = make_scheme(query.params);
    const Database database = make_database(scheme, db_elements(db, scheme.ctx.width()));
    const Reply reply = gen_reply(query, database);
    return encode_reply_frame(query.scheme, {reply});
  } catch (const std::exception& e) {
    return encode_error_frame(scheme_for_error, e.what());
  }
}

Server::Server(LoadedDb db, Options opts) : db_(std::move(db)), opts_(std::move(opts)) {}

Server::~Server() { stop(); }

void Server::start() {
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) throw std::runtime_error(std::string("socket: ") + std::strerror(errno));
  const int one = 1;
  setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(opts_.port);
  if (inet_pton(AF_INET, opts_.host.c_str(), &addr.sin_addr) != 1) {
    throw std::runtime_error("bad IPv4 address: " + opts_.host);
  }
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
    throw std::runtime_error(std::string("bind: ") + std::strerror(errno));
  }
  if (::listen(listen_fd_, 16) != 0) {
    throw std::runtime_error(std::string("listen: ") + std::strerror(errno));
  }
  sockaddr_in bound{};
  socklen_t len = sizeof(bound);
  if (::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&bound), &len) != 0) {
    throw std::runtime_error(std::string("getsockname: ") + std::strerror(errno));
  }
  port_ = ntohs(bound.sin_port);
  accept_thread_ = std::thread([this] { accept_loop(); });
}

void Server::accept_loop() {
  const bool parallel = opts_.parallel && opts_.max_requests == 0;
  while (!stopping_.load()) {
    const int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) {
      if (errno == EINTR) continue;
      break;  // listener closed by stop()
    }
    if (parallel) {
      std::lock_guard<std::mutex> lock(workers_mu_);
      workers_.emplace_back([this, fd] { handle_connection(fd); });
    } else {
      handle_connection(fd);
      if (opts_.max_requests > 0 && served_.load() >= opts_.max_requests) break;
    }
  }
}

void Server::handle_connection(int fd) {
  set_timeouts(fd);
  std::vector<uint8_t> request;
  std::string err;
  std::vector<uint8_t> response;
  if (recv_frame(fd, &request, &err)) {
    response = serve_one(db_, request);
  } else {
    response = encode_error_frame(0, err);
  }
  send_all(fd, response.data(), response.size());
  ::close(fd);
  served_.fetch_add(1);
}

void Server::wait() {
  if (accept_thread_.joinable()) accept_thread_.join();
  std::lock_guard<std::mutex> lock(workers_mu_);
  for (std::thread& t : workers_) {
    if (t.joinable()) t.join();
  }
  workers_.clear();
}

void Server::stop() {
  stopping_.store(true);
  if (listen_fd_ >= 0) {
    ::shutdown(listen_fd_, SHUT_RDWR);
    ::close(listen_fd_);
    listen_fd_ = -1;
  }
  wait();
}

std::vector<uint8_t> exchange_frame(const std::string& host, uint16_t port,
                                    const std::vector<uint8_t>& frame) {
  const int fd = connect_to(host, port);
  if (!send_all(fd, frame.data(), frame.size())) {
    ::close(fd);
    throw std::runtime_error("send failed");
  }
  std::vector<uint8_t> response;
  std::string err;
  const bool ok = recv_frame(fd, &response, &err);
  ::close(fd);
  if (!ok) throw std::runtime_error("receiving the response: " + err);
  return response;
}

FetchOutcome fetch_file(const std::string& host, uint16_t port, const SchemeInstance& scheme,
                        size_t db_size, size_t b, Rng& rng) {
  FetchOutcome outcome;
  auto [query, secret] = gen_query(scheme, db_size, b, rng);
  outcome.query_frame = encode_query(query);
  const std::vector<uint8_t> response = exchange_frame(host, port, outcome.query_frame);
  try {
    const WireMessage msg = decode_message(response);
    if (msg.kind == MsgKind::Error) {
      outcome.error = std::string(msg.body.begin(), msg.body.end());
      if (outcome.error.empty()) outcome.error = "server reported an unspecified error";
      return outcome;
    }
    const std::vector<Reply> replies = decode_reply_frame(msg, scheme.params);
    if (replies.size() != 1) {
      outcome.error = "expected exactly one reply unit";
      return outcome;
    }
    outcome.file = extract(scheme, secret, replies[0]);
    outcome.ok = true;
  } catch (const std::exception& e) {
    outcome.error = e.what();
  }
  return outcome;
}

}  // namespace cpir
