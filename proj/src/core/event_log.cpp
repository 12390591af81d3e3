// Copyright 2026 The twinfm Authors
// SPDX-License-Identifier: Apache-2.0

#include "event_log.hpp"

#include <sstream>

#include "csv.hpp"

namespace twin {

std::string serialize_event(const TwinEvent& event) {
  std::string line = "{\"seq\":" + std::to_string(event.seq) + ",\"at\":\"" + format_rfc3339(event.at) +
                     "\",\"kind\":\"" + std::string(to_string(event.kind)) + "\",\"payload\":";
  line += event.payload.dump();
  line += "}";
  return line;
}

TwinEvent parse_event(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    fail(Errc::corrupt_log, std::string("unparseable event line: ") + e.what());
  }
  if (!j.is_object() || !j.contains("seq") || !j.contains("at") || !j.contains("kind") || !j.contains("payload")) {
    fail(Errc::corrupt_log, "event line lacks seq/at/kind/payload");
  }
  TwinEvent event;
  if (!j["seq"].is_number_unsigned()) fail(Errc::corrupt_log, "event seq must be a positive integer");
  event.seq = j["seq"].get<std::uint64_t>();
  try {
    event.at = timestamp_from_json(j["at"]);
  } catch (const Error& e) {
    fail(Errc::corrupt_log, e.what());
  }
  const auto kind_text = j["kind"].is_string() ? j["kind"].get<std::string>() : j["kind"].dump();
  auto kind = enum_from_string<EventKind>(kind_text);
  if (!kind) fail(Errc::unknown_event_kind, "unknown event kind '" + kind_text + "'");
  event.kind = *kind;
  event.payload = std::move(j["payload"]);
  return event;
}

std::vector<TwinEvent> read_event_log(const std::filesystem::path& path) {
  std::vector<TwinEvent> events;
  if (!std::filesystem::exists(path)) return events;
  const std::string text = read_text_file(path);
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    const bool terminated = end != std::string::npos;
    if (!terminated) end = text.size();
    std::string_view line(text.data() + pos, end - pos);
    pos = end + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      events.push_back(parse_event(line));
    } catch (const Error& e) {
      if (!terminated && e.code() == Errc::corrupt_log) break;
      throw;
    }
  }
  return events;
}

void check_sequence(const std::vector<TwinEvent>& events, std::uint64_t first) {
  std::uint64_t expected = first;
  for (const auto& e : events) {
    if (e.seq != expected) {
      fail(Errc::gap_in_sequence,
           "expected event seq " + std::to_string(expected) + ", found " + std::to_string(e.seq));
    }
    ++expected;
  }
}

EventLogWriter::EventLogWriter(std::filesystem::path path) : path_(std::move(path)) {
  if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
  // Drop a torn final line; readers ignore it too.
  if (std::filesystem::exists(path_) && std::filesystem::file_size(path_) > 0) {
    const std::string text = read_text_file(path_);
    if (text.back() != '\n') {
      const auto cut = text.rfind('\n');
      std::filesystem::resize_file(path_, cut == std::string::npos ? 0 : cut + 1);
    }
  }
  out_.open(path_, std::ios::binary | std::ios::app);
  if (!out_) fail(Errc::io, "cannot open event log " + path_.string());
}

void EventLogWriter::append(const std::vector<TwinEvent>& events) {
  std::string buf;
  for (const auto& e : events) {
    buf += serialize_event(e);
    buf.push_back('\n');
  }
  out_.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  out_.flush();
  if (!out_) fail(Errc::io, "write to event log " + path_.string() + " failed");
}

}  // namespace twin
