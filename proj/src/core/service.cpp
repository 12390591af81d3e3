// Copyright 2026 The twinfm Authors
// SPDX-License-Identifier: Apache-2.0

#include "service.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>

#include <httplib.h>

namespace twin {

void StreamSubscriber::push(std::string message) {
  {
    std::lock_guard lock(mu_);
    if (closed_) return;
    if (queue_.size() >= capacity_) {
      overflowed_ = true;
      closed_ = true;
      queue_.clear();
    } else {
      queue_.push_back(std::move(message));
    }
  }
  cv_.notify_all();
}

std::optional<std::string> StreamSubscriber::pop(std::chrono::milliseconds timeout) {
  std::unique_lock lock(mu_);
  cv_.wait_for(lock, timeout, [&] { return closed_ || !queue_.empty(); });
  if (closed_ || queue_.empty()) return std::nullopt;
  std::string out = std::move(queue_.front());
  queue_.pop_front();
  return out;
}

void StreamSubscriber::close() {
  {
    std::lock_guard lock(mu_);
    closed_ = true;
  }
  cv_.notify_all();
}

bool StreamSubscriber::closed() const {
  std::lock_guard lock(mu_);
  return closed_;
}

bool StreamSubscriber::overflowed() const {
  std::lock_guard lock(mu_);
  return overflowed_;
}

StreamHub::StreamHub(TwinGraph& graph, std::size_t capacity) : graph_(graph), capacity_(capacity) {
  listener_id_ = graph_.add_listener(
      [this](const std::vector<TwinEvent>& events, const TwinState& state) { publish(events, state); });
}

StreamHub::~StreamHub() {
  graph_.remove_listener(listener_id_);
  close_all();
}

std::shared_ptr<StreamSubscriber> StreamHub::subscribe(std::optional<std::string> equipment) {
  if (equipment && !graph_.read([&](const TwinState& s) { return s.find_equipment(*equipment) != nullptr; })) {
    fail(Errc::bad_filter, "unknown equipment '" + *equipment + "'");
  }
  auto sub = std::make_shared<StreamSubscriber>(std::move(equipment), capacity_);
  std::lock_guard lock(mu_);
  subs_.push_back(sub);
  return sub;
}

void StreamHub::unsubscribe(const std::shared_ptr<StreamSubscriber>& sub) {
  sub->close();
  std::lock_guard lock(mu_);
  subs_.erase(std::remove(subs_.begin(), subs_.end(), sub), subs_.end());
}

void StreamHub::close_all() {
  std::lock_guard lock(mu_);
  for (auto& s : subs_) s->close();
  subs_.clear();
}

std::size_t StreamHub::subscriber_count() const {
  std::lock_guard lock(mu_);
  return subs_.size();
}

json StreamHub::reading_message(const TwinEvent& e, const TwinState& state) {
  const std::string sensor_id = e.payload.value("sensor_id", std::string());
  const SensorSpec* spec = state.find_sensor(sensor_id);
  json msg = e.payload;
  msg["seq"] = e.seq;
  msg["equipment"] = spec ? spec->bound_equipment : std::string();
  msg["kind"] = spec ? std::string(to_string(spec->kind)) : std::string();
  return msg;
}

void StreamHub::publish(const std::vector<TwinEvent>& events, const TwinState& state) {
  std::lock_guard lock(mu_);
  if (subs_.empty()) return;
  for (const auto& e : events) {
    if (e.kind != EventKind::reading_ingested) continue;
    const json msg = reading_message(e, state);
    const std::string equipment = msg["equipment"].get<std::string>();
    const std::string frame = "id: " + std::to_string(e.seq) + "\nevent: reading\ndata: " + msg.dump() + "\n\n";
    for (auto& s : subs_) {
      if (!s->equipment() || *s->equipment() == equipment) s->push(frame);
    }
  }
  subs_.erase(std::remove_if(subs_.begin(), subs_.end(), [](const auto& s) { return s->closed(); }), subs_.end());
}

std::string handle_ingest_line(TwinGraph& graph, const std::string& building_id, std::string_view line) {
  while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.remove_suffix(1);
  const auto space = line.find(' ');
  try {
    if (space == std::string_view::npos) fail(Errc::malformed_payload, "expected '<topic> <json>'");
    const SensorReading r = ingest(graph, building_id, line.substr(0, space), line.substr(space + 1));
    return "ok " + r.sensor_id;
  } catch (const Error& e) {
    return "error " + std::string(errc_name(e.code())) + " " + e.what();
  }
}

struct HttpService::Impl {
  httplib::Server server;
};

HttpService::HttpService(const ApiRouter& router, ServerOptions options)
    : router_(router), options_(std::move(options)), hub_(router.graph(), options_.stream_queue),
      impl_(std::make_unique<Impl>()) {}

HttpService::~HttpService() { stop(); }

void HttpService::start() {
  if (running_) return;
  auto& srv = impl_->server;
  // SO_REUSEADDR only: a second server on the same port must fail to bind.
  srv.set_socket_options([](int sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof yes);
  });
  const std::string cors = options_.cors_allowed_origin;
  auto to_api = [this, cors](const httplib::Request& req, httplib::Response& res) {
    ApiRequest r;
    r.method = req.method;
    r.path = req.path;
    for (const auto& [k, v] : req.params) r.query[k] = v;
    r.body = req.body;
    const ApiResponse out = router_.handle(r);
    res.status = out.status;
    if (!cors.empty()) res.set_header("Access-Control-Allow-Origin", cors);
    res.set_content(out.body, out.content_type);
  };

  srv.Get("/stream", [this, cors](const httplib::Request& req, httplib::Response& res) {
    std::optional<std::string> equipment;
    if (req.has_param("equipment") && !req.get_param_value("equipment").empty()) {
      equipment = req.get_param_value("equipment");
    }
    std::shared_ptr<StreamSubscriber> sub;
    try {
      sub = hub_.subscribe(equipment);
    } catch (const Error& e) {
      const ApiResponse err = error_response(e.code(), e.what());
      res.status = err.status;
      res.set_content(err.body, err.content_type);
      return;
    }
    if (!cors.empty()) res.set_header("Access-Control-Allow-Origin", cors);
    res.set_header("Cache-Control", "no-cache");
    const auto keepalive = std::chrono::milliseconds(options_.keepalive_ms);
    res.set_chunked_content_provider(
        "text/event-stream",
        [sub, keepalive](std::size_t, httplib::DataSink& sink) {
          if (sub->closed()) return false;
          auto msg = sub->pop(keepalive);
          if (sub->closed()) return false;
          const std::string frame = msg ? *msg : std::string(": keepalive\n\n");
          return sink.write(frame.data(), frame.size());
        },
        [this, sub](bool) { hub_.unsubscribe(sub); });
  });
  srv.Get(R"(/.*)", to_api);
  srv.Post(R"(/.*)", to_api);
  srv.Options(R"(/.*)", [cors](const httplib::Request&, httplib::Response& res) {
    if (!cors.empty()) res.set_header("Access-Control-Allow-Origin", cors);
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });

  if (options_.port == 0) {
    port_ = srv.bind_to_any_port(options_.host);
    if (port_ < 0) fail(Errc::port_in_use, "cannot bind any port on " + options_.host);
  } else {
    if (options_.port < 1 || options_.port > 65535) fail(Errc::invalid_argument, "port must be in [1, 65535]");
    if (!srv.bind_to_port(options_.host, options_.port)) {
      fail(Errc::port_in_use, "port " + std::to_string(options_.port) + " is in use on " + options_.host);
    }
    port_ = options_.port;
  }

  if (options_.line_port >= 0) {
    line_listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    int yes = 1;
    setsockopt(line_listen_fd_, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof yes);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(static_cast<std::uint16_t>(options_.line_port));
    inet_pton(AF_INET, options_.host.c_str(), &addr.sin_addr);
    if (::bind(line_listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0 ||
        ::listen(line_listen_fd_, 16) != 0) {
      ::close(line_listen_fd_);
      line_listen_fd_ = -1;
      srv.stop();
      fail(Errc::port_in_use, "line port " + std::to_string(options_.line_port) + ": " + std::strerror(errno));
    }
    socklen_t len = sizeof addr;
    getsockname(line_listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
    line_port_ = ntohs(addr.sin_port);
  }

  running_ = true;
  http_thread_ = std::thread([&srv] { srv.listen_after_bind(); });
  srv.wait_until_ready();
  if (line_listen_fd_ >= 0) line_thread_ = std::thread([this] { line_loop(); });
}

void HttpService::stop() {
  if (!running_.exchange(false)) return;
  hub_.close_all();
  impl_->server.stop();
  if (http_thread_.joinable()) http_thread_.join();
  if (line_thread_.joinable()) line_thread_.join();
  {
    std::lock_guard lock(line_mu_);
    for (int fd : line_fds_) ::shutdown(fd, SHUT_RDWR);
  }
  for (auto& t : line_clients_) {
    if (t.joinable()) t.join();
  }
  line_clients_.clear();
  if (line_listen_fd_ >= 0) ::close(line_listen_fd_);
  line_listen_fd_ = -1;
}

void HttpService::line_loop() {
  while (running_) {
    pollfd p{line_listen_fd_, POLLIN, 0};
    if (::poll(&p, 1, 100) <= 0) continue;
    const int fd = ::accept(line_listen_fd_, nullptr, nullptr);
    if (fd < 0) continue;
    std::lock_guard lock(line_mu_);
    line_fds_.push_back(fd);
    line_clients_.emplace_back([this, fd] { serve_line_client(fd); });
  }
}

void HttpService::serve_line_client(int fd) {
  std::string buffer;
  char chunk[4096];
  while (running_) {
    pollfd p{fd, POLLIN, 0};
    const int ready = ::poll(&p, 1, 100);
    if (ready == 0) continue;
    if (ready < 0) break;
    const ssize_t n = ::recv(fd, chunk, sizeof chunk, 0);
    if (n <= 0) break;
    buffer.append(chunk, static_cast<std::size_t>(n));
    std::size_t nl;
    while ((nl = buffer.find('\n')) != std::string::npos) {
      const std::string line = buffer.substr(0, nl);
      buffer.erase(0, nl + 1);
      if (line.empty() || line == "\r") continue;
      const std::string reply = handle_ingest_line(router_.graph(), router_.settings().building_id, line) + "\n";
      ::send(fd, reply.data(), reply.size(), MSG_NOSIGNAL);
    }
  }
  std::lock_guard lock(line_mu_);
  line_fds_.erase(std::remove(line_fds_.begin(), line_fds_.end(), fd), line_fds_.end());
  ::close(fd);
}

}  // namespace twin
