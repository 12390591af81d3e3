// Copyright 2026 The twinfm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "api.hpp"

namespace twin {

// One live-reading subscriber. The queue is bounded; a subscriber that falls
// behind is closed rather than allowed to slow down commits.
class StreamSubscriber {
 public:
  StreamSubscriber(std::optional<std::string> equipment, std::size_t capacity)
      : equipment_(std::move(equipment)), capacity_(capacity) {}

  const std::optional<std::string>& equipment() const { return equipment_; }

  // Non-blocking; closes the subscriber when the queue is full.
  void push(std::string message);
  // Waits up to `timeout` for a message. Empty when timed out or closed.
  std::optional<std::string> pop(std::chrono::milliseconds timeout);
  void close();
  bool closed() const;
  bool overflowed() const;

 private:
  std::optional<std::string> equipment_;
  std::size_t capacity_;
  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::deque<std::string> queue_;
  bool closed_ = false;
  bool overflowed_ = false;
};

// Fans committed readings out to subscribers in commit order.
class StreamHub {
 public:
  explicit StreamHub(TwinGraph& graph, std::size_t capacity = 1024);
  ~StreamHub();

  StreamHub(const StreamHub&) = delete;
  StreamHub& operator=(const StreamHub&) = delete;

  // Throws BadFilter for unknown equipment.
  std::shared_ptr<StreamSubscriber> subscribe(std::optional<std::string> equipment);
  void unsubscribe(const std::shared_ptr<StreamSubscriber>& sub);
  void close_all();
  std::size_t subscriber_count() const;

  // {"seq","sensor_id","equipment","kind","at","value","source"}
  static json reading_message(const TwinEvent& event, const TwinState& state);

 private:
  void publish(const std::vector<TwinEvent>& events, const TwinState& state);

  TwinGraph& graph_;
  std::size_t capacity_;
  int listener_id_ = 0;
  mutable std::mutex mu_;
  std::vector<std::shared_ptr<StreamSubscriber>> subs_;
};

struct ServerOptions {
  std::string host = "127.0.0.1";
  int port = 8080;       // 0 picks a free port
  int line_port = -1;    // plain-TCP reading ingest; -1 disables, 0 picks a free port
  std::string cors_allowed_origin = "*";
  int keepalive_ms = 15000;
  std::size_t stream_queue = 1024;
};

// HTTP front end (REST plus SSE at /stream) and the line-oriented ingest
// listener. Stopping closes every stream and waits for in-flight requests.
class HttpService {
 public:
  HttpService(const ApiRouter& router, ServerOptions options);
  ~HttpService();

  HttpService(const HttpService&) = delete;
  HttpService& operator=(const HttpService&) = delete;

  // Binds and starts serving in background threads. Throws PortInUse.
  void start();
  void stop();

  int port() const { return port_; }
  int line_port() const { return line_port_; }
  StreamHub& hub() { return hub_; }

 private:
  struct Impl;

  void line_loop();
  void serve_line_client(int fd);

  const ApiRouter& router_;
  ServerOptions options_;
  StreamHub hub_;
  std::unique_ptr<Impl> impl_;
  std::thread http_thread_;
  std::thread line_thread_;
  std::vector<std::thread> line_clients_;
  std::mutex line_mu_;
  std::vector<int> line_fds_;
  int line_listen_fd_ = -1;
  std::atomic<bool> running_{false};
  int port_ = 0;
  int line_port_ = -1;
};

// Handles one "<topic> <json>" line; returns "ok <sensor_id>" or
// "error <Code> <message>".
std::string handle_ingest_line(TwinGraph& graph, const std::string& building_id, std::string_view line);

}  // namespace twin
