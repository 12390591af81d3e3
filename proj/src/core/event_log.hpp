// Copyright 2026 The twinfm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "model.hpp"

namespace twin {

inline constexpr int kSchemaVersion = 1;

enum class EventKind {
  space_upserted,
  equipment_upserted,
  doc_attached,
  sensor_bound,
  reading_ingested,
  alarm_raised,
  alarm_acked,
  alarm_cleared,
  policy_created,
  job_created,
  job_transitioned,
  comment_added,
};

template <>
struct EnumNames<EventKind> {
  static constexpr auto values = std::to_array<std::pair<EventKind, std::string_view>>({
      {EventKind::space_upserted, "space_upserted"},
      {EventKind::equipment_upserted, "equipment_upserted"},
      {EventKind::doc_attached, "doc_attached"},
      {EventKind::sensor_bound, "sensor_bound"},
      {EventKind::reading_ingested, "reading_ingested"},
      {EventKind::alarm_raised, "alarm_raised"},
      {EventKind::alarm_acked, "alarm_acked"},
      {EventKind::alarm_cleared, "alarm_cleared"},
      {EventKind::policy_created, "policy_created"},
      {EventKind::job_created, "job_created"},
      {EventKind::job_transitioned, "job_transitioned"},
      {EventKind::comment_added, "comment_added"},
  });
};

struct TwinEvent {
  std::uint64_t seq = 0;
  Timestamp at{};
  EventKind kind = EventKind::space_upserted;
  json payload = json::object();
};

// An event that has not been sequenced yet.
struct PendingEvent {
  EventKind kind;
  Timestamp at;
  json payload;
};

// One line, no trailing newline: {"seq":N,"at":"...","kind":"...","payload":{...}}
std::string serialize_event(const TwinEvent& event);

// Throws UnknownEventKind or CorruptLog.
TwinEvent parse_event(std::string_view line);

// Reads a whole log. Blank lines are ignored. A final line without a newline
// that fails to parse is treated as a torn write and dropped.
std::vector<TwinEvent> read_event_log(const std::filesystem::path& path);

// Throws GapInSequence unless seqs run first, first+1, ...
void check_sequence(const std::vector<TwinEvent>& events, std::uint64_t first);

// Append-only writer. Each append is flushed before returning.
class EventLogWriter {
 public:
  explicit EventLogWriter(std::filesystem::path path);

  void append(const std::vector<TwinEvent>& events);
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

}  // namespace twin
