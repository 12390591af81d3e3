// Copyright 2026 The twinfm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "event_log.hpp"
#include "twin_state.hpp"

namespace twin {

struct GraphOptions {
  // No path keeps the log in memory only.
  std::optional<std::filesystem::path> log_path;
  Clock clock = system_now;
  // Write `<log>.snapshot.json` every N committed events; 0 disables.
  std::uint64_t snapshot_every = 5000;
};

// Events collected by a write transaction. Nothing reaches the state or the
// log until the transaction body returns without throwing.
class Batch {
 public:
  void add(EventKind kind, Timestamp at, json payload) {
    events_.push_back(PendingEvent{kind, at, std::move(payload)});
  }
  bool empty() const { return events_.empty(); }
  std::size_t size() const { return events_.size(); }
  const std::vector<PendingEvent>& events() const { return events_; }

 private:
  std::vector<PendingEvent> events_;
};

// The twin's single source of truth: an append-only event log and the state
// it materializes. All mutations go through `write`, which holds the one
// writer lock; readers take a shared lock or copy a snapshot.
class TwinGraph {
 public:
  // Called after each commit with the writer lock held; `state` already
  // reflects the events. Listeners must not call back into the graph.
  using Listener = std::function<void(const std::vector<TwinEvent>& events, const TwinState& state)>;

  // Replays the log (snapshot plus tail when a snapshot exists).
  // Throws CorruptLog / GapInSequence / UnknownEventKind.
  explicit TwinGraph(GraphOptions options = {});

  TwinGraph(const TwinGraph&) = delete;
  TwinGraph& operator=(const TwinGraph&) = delete;

  template <class F>
  auto read(F&& f) const {
    std::shared_lock lock(mu_);
    return f(state_);
  }

  // f(const TwinState&, Batch&) -> R. Events added to the batch are sequenced,
  // applied, logged and announced atomically after f returns.
  template <class F>
  auto write(F&& f) {
    std::unique_lock lock(mu_);
    Batch batch;
    if constexpr (std::is_void_v<decltype(f(std::as_const(state_), batch))>) {
      f(std::as_const(state_), batch);
      commit_locked(batch);
    } else {
      auto result = f(std::as_const(state_), batch);
      commit_locked(batch);
      return result;
    }
  }

  std::shared_ptr<const TwinState> snapshot() const;
  std::uint64_t last_seq() const;
  Timestamp now() const { return options_.clock(); }

  // Committed events in memory since open (or all, for in-memory graphs).
  std::vector<TwinEvent> events_since(std::uint64_t seq) const;

  int add_listener(Listener listener);
  void remove_listener(int id);

  void write_snapshot() const;
  std::optional<std::filesystem::path> snapshot_path() const;

 private:
  void commit_locked(const Batch& batch);
  void write_snapshot_locked() const;

  GraphOptions options_;
  mutable std::shared_mutex mu_;
  TwinState state_;
  std::unique_ptr<EventLogWriter> writer_;
  std::vector<TwinEvent> recent_;
  std::map<int, Listener> listeners_;
  std::mutex listeners_mu_;
  int next_listener_ = 1;
};

}  // namespace twin
