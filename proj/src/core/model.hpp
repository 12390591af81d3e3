// Copyright 2026 The twinfm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "error.hpp"
#include "time.hpp"

namespace twin {

using json = nlohmann::json;

enum class Discipline { mechanical, electrical, plumbing, conveying, communication };
enum class DocumentKind { cut_sheet, operation_manual, warranty, product_specification, other };
enum class SensorKind {
  temperature, humidity, co, co2, occupancy, pressure, flow_rate,
  power, voltage, amperage, runtime, fuel_level, load
};
enum class ReadingSource { simulated, live };
enum class AlarmState { raised, acknowledged, cleared };
enum class JobStatus { open, ongoing, completed, verified };
enum class AssigneeRole { technician, custodian };
enum class JobOrigin { preventive, reactive };
enum class TargetKind { equipment, space };
enum class PolicyTarget { equipment_type, room };

template <class E>
struct EnumNames;

#define TWIN_ENUM_NAMES(E, ...)                                             \
  template <>                                                               \
  struct EnumNames<E> {                                                     \
    static constexpr auto values = std::to_array<std::pair<E, std::string_view>>({__VA_ARGS__}); \
  }

TWIN_ENUM_NAMES(Discipline, {Discipline::mechanical, "mechanical"}, {Discipline::electrical, "electrical"},
                {Discipline::plumbing, "plumbing"}, {Discipline::conveying, "conveying"},
                {Discipline::communication, "communication"});
TWIN_ENUM_NAMES(DocumentKind, {DocumentKind::cut_sheet, "cut_sheet"},
                {DocumentKind::operation_manual, "operation_manual"}, {DocumentKind::warranty, "warranty"},
                {DocumentKind::product_specification, "product_specification"}, {DocumentKind::other, "other"});
TWIN_ENUM_NAMES(SensorKind, {SensorKind::temperature, "temperature"}, {SensorKind::humidity, "humidity"},
                {SensorKind::co, "co"}, {SensorKind::co2, "co2"}, {SensorKind::occupancy, "occupancy"},
                {SensorKind::pressure, "pressure"}, {SensorKind::flow_rate, "flow_rate"},
                {SensorKind::power, "power"}, {SensorKind::voltage, "voltage"}, {SensorKind::amperage, "amperage"},
                {SensorKind::runtime, "runtime"}, {SensorKind::fuel_level, "fuel_level"},
                {SensorKind::load, "load"});
TWIN_ENUM_NAMES(ReadingSource, {ReadingSource::simulated, "simulated"}, {ReadingSource::live, "live"});
TWIN_ENUM_NAMES(AlarmState, {AlarmState::raised, "raised"}, {AlarmState::acknowledged, "acknowledged"},
                {AlarmState::cleared, "cleared"});
TWIN_ENUM_NAMES(JobStatus, {JobStatus::open, "open"}, {JobStatus::ongoing, "ongoing"},
                {JobStatus::completed, "completed"}, {JobStatus::verified, "verified"});
TWIN_ENUM_NAMES(AssigneeRole, {AssigneeRole::technician, "technician"}, {AssigneeRole::custodian, "custodian"});
TWIN_ENUM_NAMES(JobOrigin, {JobOrigin::preventive, "preventive"}, {JobOrigin::reactive, "reactive"});
TWIN_ENUM_NAMES(TargetKind, {TargetKind::equipment, "equipment"}, {TargetKind::space, "space"});
TWIN_ENUM_NAMES(PolicyTarget, {PolicyTarget::equipment_type, "equipment_type"}, {PolicyTarget::room, "room"});

#undef TWIN_ENUM_NAMES

template <class E>
concept NamedEnum = requires { EnumNames<E>::values; };

template <NamedEnum E>
std::string_view to_string(E value) {
  for (const auto& [v, name] : EnumNames<E>::values) {
    if (v == value) return name;
  }
  return "?";
}

template <NamedEnum E>
std::optional<E> enum_from_string(std::string_view text) {
  for (const auto& [v, name] : EnumNames<E>::values) {
    if (name == text) return v;
  }
  return std::nullopt;
}

template <NamedEnum E>
E parse_enum(std::string_view text, Errc on_error = Errc::malformed_payload) {
  if (auto v = enum_from_string<E>(text)) return *v;
  fail(on_error, "unknown value '" + std::string(text) + "'");
}

template <NamedEnum E>
void to_json(json& j, const E& value) {
  j = std::string(to_string(value));
}

template <NamedEnum E>
void from_json(const json& j, E& value) {
  if (!j.is_string()) fail(Errc::malformed_payload, "expected enum string, got " + j.dump());
  value = parse_enum<E>(j.get<std::string>());
}

struct SpaceRecord {
  std::string room_category;
  std::string room_name;
  std::string room_tag;
  std::string room_augment_id;
  std::string floor_level;

  bool operator==(const SpaceRecord&) const = default;
};

struct EquipmentItem {
  std::string omniclass_system;
  std::string omniclass_type;
  std::string augment_id_type;
  std::string augment_id_instance;
  std::string space_instance;
  Discipline discipline = Discipline::mechanical;
  // name -> scalar or {"value": scalar, "unit": text}
  json om_properties = json::object();
  std::vector<std::string> document_ids;
  // Present only so a dashboard has data; not part of the modeled inventory count.
  bool dashboard_support = false;

  bool operator==(const EquipmentItem&) const = default;
};

struct DocumentMeta {
  std::string doc_id;
  DocumentKind kind = DocumentKind::other;
  std::string title;
  std::string uri_or_path;
  Timestamp uploaded_at{};

  bool operator==(const DocumentMeta&) const = default;
};

struct SimProfile {
  double baseline = 0.0;
  double diurnal_amplitude = 0.0;
  double noise_sigma = 0.0;
  // Occupancy sensors: probability of reporting 1 inside/outside [from, to) hours UTC.
  int occupied_from_hour = 8;
  int occupied_to_hour = 20;
  double p_occupied = 0.7;
  double p_unoccupied = 0.05;

  bool operator==(const SimProfile&) const = default;
};

struct SensorSpec {
  std::string sensor_id;
  std::string bound_equipment;
  SensorKind kind = SensorKind::temperature;
  std::string unit;
  int interval_s = 300;
  double low = 0.0;
  double high = 0.0;
  SimProfile sim_profile;
  bool dashboard_support = false;
  bool live_capable = false;

  bool operator==(const SensorSpec&) const = default;
};

inline constexpr int kMinIntervalSeconds = 60;
inline constexpr int kMaxIntervalSeconds = 300;

struct SensorReading {
  std::string sensor_id;
  Timestamp at{};
  double value = 0.0;
  ReadingSource source = ReadingSource::simulated;

  bool operator==(const SensorReading&) const = default;
};

struct AlarmRule {
  std::string sensor_id;
  double low = 0.0;
  double high = 0.0;
  int raise_debounce = 1;
  int clear_debounce = 3;

  bool in_range(double v) const { return v >= low && v <= high; }
  bool operator==(const AlarmRule&) const = default;
};

struct AlarmRecord {
  std::string alarm_id;
  std::string sensor_id;
  AlarmState state = AlarmState::raised;
  Timestamp raised_at{};
  std::optional<Timestamp> acked_at;
  std::optional<Timestamp> cleared_at;
  double trigger_value = 0.0;
  std::optional<std::string> actor;

  bool active() const { return state != AlarmState::cleared; }
  bool operator==(const AlarmRecord&) const = default;
};

struct Resource {
  std::string name;
  double quantity = 1.0;

  bool operator==(const Resource&) const = default;
};

struct MaintenancePolicy {
  std::string policy_id;
  PolicyTarget target_kind = PolicyTarget::equipment_type;
  std::string target;  // omniclass_type code, or room_tag
  std::vector<std::string> tasks;
  int frequency_days = 1;
  Date start_date{};
  std::vector<Resource> resources;

  bool operator==(const MaintenancePolicy&) const = default;
};

struct JobComment {
  Timestamp at{};
  std::string actor;
  std::string text;

  bool operator==(const JobComment&) const = default;
};

struct JobTransitionEntry {
  Timestamp at{};
  JobStatus from = JobStatus::open;
  JobStatus to = JobStatus::open;
  std::string actor;
  std::optional<std::string> comment;

  bool operator==(const JobTransitionEntry&) const = default;
};

struct MaintenanceJob {
  std::string job_id;
  JobOrigin origin = JobOrigin::reactive;
  std::optional<std::string> policy_id;
  std::optional<Date> occurrence_date;
  TargetKind target_kind = TargetKind::equipment;
  std::string target;
  std::string description;
  AssigneeRole assignee_role = AssigneeRole::technician;
  std::optional<std::string> assignee;
  JobStatus status = JobStatus::open;
  std::optional<Date> due_date;
  std::vector<Resource> resources;
  std::vector<JobComment> comments;
  std::vector<JobTransitionEntry> history;
  Timestamp created_at{};

  bool operator==(const MaintenanceJob&) const = default;
};

inline AssigneeRole role_for(TargetKind kind) {
  return kind == TargetKind::equipment ? AssigneeRole::technician : AssigneeRole::custodian;
}

void to_json(json& j, const SpaceRecord& v);
void from_json(const json& j, SpaceRecord& v);
void to_json(json& j, const EquipmentItem& v);
void from_json(const json& j, EquipmentItem& v);
void to_json(json& j, const DocumentMeta& v);
void from_json(const json& j, DocumentMeta& v);
void to_json(json& j, const SimProfile& v);
void from_json(const json& j, SimProfile& v);
void to_json(json& j, const SensorSpec& v);
void from_json(const json& j, SensorSpec& v);
void to_json(json& j, const SensorReading& v);
void from_json(const json& j, SensorReading& v);
void to_json(json& j, const AlarmRule& v);
void from_json(const json& j, AlarmRule& v);
void to_json(json& j, const AlarmRecord& v);
void from_json(const json& j, AlarmRecord& v);
void to_json(json& j, const Resource& v);
void from_json(const json& j, Resource& v);
void to_json(json& j, const MaintenancePolicy& v);
void from_json(const json& j, MaintenancePolicy& v);
void to_json(json& j, const JobComment& v);
void from_json(const json& j, JobComment& v);
void to_json(json& j, const JobTransitionEntry& v);
void from_json(const json& j, JobTransitionEntry& v);
void to_json(json& j, const MaintenanceJob& v);
void from_json(const json& j, MaintenanceJob& v);

Timestamp timestamp_from_json(const json& j);
Date date_from_json(const json& j);

// Equipment payload without document links; used for idempotence checks
// and the equipment_upserted event.
json equipment_core_json(const EquipmentItem& item);

// Checked field access for payloads arriving from outside; throws MalformedPayload.
const json& require_field(const json& obj, std::string_view name);
std::string require_string(const json& obj, std::string_view name);
double require_number(const json& obj, std::string_view name);

}  // namespace twin
