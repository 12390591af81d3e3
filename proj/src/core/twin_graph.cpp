// Copyright 2026 The twinfm Authors
// SPDX-License-Identifier: Apache-2.0

#include "twin_graph.hpp"

#include <fstream>

#include "csv.hpp"

namespace twin {

namespace {

std::filesystem::path snapshot_file_for(const std::filesystem::path& log) {
  auto p = log;
  p += ".snapshot.json";
  return p;
}

}  // namespace

TwinGraph::TwinGraph(GraphOptions options) : options_(std::move(options)) {
  if (!options_.log_path) return;
  const auto& log = *options_.log_path;
  auto events = read_event_log(log);
  check_sequence(events, 1);

  const auto snap = snapshot_file_for(log);
  bool restored = false;
  if (std::filesystem::exists(snap)) {
    try {
      TwinState from_snapshot = TwinState::from_json(json::parse(read_text_file(snap)));
      if (from_snapshot.last_seq <= events.size()) {
        std::vector<TwinEvent> tail(events.begin() + static_cast<std::ptrdiff_t>(from_snapshot.last_seq),
                                    events.end());
        state_ = replay(std::move(from_snapshot), tail);
        restored = true;
      }
    } catch (const json::exception&) {
      // Unreadable snapshot: fall back to a full replay.
    } catch (const Error& e) {
      if (e.code() != Errc::corrupt_log) throw;
    }
  }
  if (!restored) state_ = replay(events);
  writer_ = std::make_unique<EventLogWriter>(log);
}

std::shared_ptr<const TwinState> TwinGraph::snapshot() const {
  std::shared_lock lock(mu_);
  return std::make_shared<const TwinState>(state_);
}

std::uint64_t TwinGraph::last_seq() const {
  std::shared_lock lock(mu_);
  return state_.last_seq;
}

std::vector<TwinEvent> TwinGraph::events_since(std::uint64_t seq) const {
  std::shared_lock lock(mu_);
  std::vector<TwinEvent> out;
  for (const auto& e : recent_) {
    if (e.seq > seq) out.push_back(e);
  }
  return out;
}

int TwinGraph::add_listener(Listener listener) {
  std::lock_guard lock(listeners_mu_);
  const int id = next_listener_++;
  listeners_[id] = std::move(listener);
  return id;
}

void TwinGraph::remove_listener(int id) {
  std::lock_guard lock(listeners_mu_);
  listeners_.erase(id);
}

void TwinGraph::commit_locked(const Batch& batch) {
  if (batch.empty()) return;
  std::vector<TwinEvent> events;
  events.reserve(batch.size());
  std::uint64_t seq = state_.last_seq;
  for (const auto& p : batch.events()) events.push_back(TwinEvent{++seq, p.at, p.kind, p.payload});

  // Operations validate before adding events, so apply failing here means a
  // bug; restore the pre-commit state rather than leave a partial batch.
  if (events.size() == 1) {
    state_.apply(events.front());
  } else {
    TwinState backup = state_;
    try {
      for (const auto& e : events) state_.apply(e);
    } catch (...) {
      state_ = std::move(backup);
      throw;
    }
  }

  if (writer_) writer_->append(events);
  if (!options_.log_path) recent_.insert(recent_.end(), events.begin(), events.end());

  {
    std::lock_guard lock(listeners_mu_);
    for (const auto& [id, listener] : listeners_) listener(events, state_);
  }

  if (writer_ && options_.snapshot_every > 0) {
    const auto before = events.front().seq - 1;
    if (before / options_.snapshot_every != state_.last_seq / options_.snapshot_every) write_snapshot_locked();
  }
}

std::optional<std::filesystem::path> TwinGraph::snapshot_path() const {
  if (!options_.log_path) return std::nullopt;
  return snapshot_file_for(*options_.log_path);
}

void TwinGraph::write_snapshot() const {
  std::shared_lock lock(mu_);
  write_snapshot_locked();
}

void TwinGraph::write_snapshot_locked() const {
  if (!options_.log_path) return;
  const auto target = snapshot_file_for(*options_.log_path);
  auto tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(Errc::io, "cannot write snapshot " + tmp.string());
    out << state_.serialize();
  }
  std::filesystem::rename(tmp, target);
}

}  // namespace twin
