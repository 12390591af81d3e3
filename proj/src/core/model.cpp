// Copyright 2026 The twinfm Authors
// SPDX-License-Identifier: Apache-2.0

#include "model.hpp"

namespace twin {

namespace {

json ts(Timestamp t) { return format_rfc3339(t); }
json date(Date d) { return format_date(d); }

template <class T>
void put_optional(json& j, const char* key, const std::optional<T>& v) {
  if (!v) return;
  if constexpr (std::is_same_v<T, Timestamp>) {
    j[key] = ts(*v);
  } else if constexpr (std::is_same_v<T, Date>) {
    j[key] = date(*v);
  } else {
    j[key] = *v;
  }
}

std::optional<Timestamp> optional_ts(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return timestamp_from_json(j.at(key));
}

std::optional<Date> optional_date(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return date_from_json(j.at(key));
}

std::optional<std::string> optional_string(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<std::string>();
}

template <class T>
T value_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  return j.at(key).get<T>();
}

}  // namespace

const json& require_field(const json& obj, std::string_view name) {
  if (!obj.is_object()) fail(Errc::malformed_payload, "expected a JSON object");
  auto it = obj.find(std::string(name));
  if (it == obj.end()) fail(Errc::malformed_payload, "missing field '" + std::string(name) + "'");
  return *it;
}

std::string require_string(const json& obj, std::string_view name) {
  const json& v = require_field(obj, name);
  if (!v.is_string()) fail(Errc::malformed_payload, "field '" + std::string(name) + "' must be a string");
  return v.get<std::string>();
}

double require_number(const json& obj, std::string_view name) {
  const json& v = require_field(obj, name);
  if (!v.is_number()) fail(Errc::malformed_payload, "field '" + std::string(name) + "' must be a number");
  return v.get<double>();
}

Timestamp timestamp_from_json(const json& j) {
  if (!j.is_string()) fail(Errc::malformed_payload, "timestamp must be an RFC 3339 string");
  try {
    return parse_rfc3339(j.get<std::string>());
  } catch (const Error& e) {
    fail(Errc::malformed_payload, e.what());
  }
}

Date date_from_json(const json& j) {
  if (!j.is_string()) fail(Errc::malformed_payload, "date must be a YYYY-MM-DD string");
  try {
    return parse_date(j.get<std::string>());
  } catch (const Error& e) {
    fail(Errc::malformed_payload, e.what());
  }
}

void to_json(json& j, const SpaceRecord& v) {
  j = json{{"room_category", v.room_category},
           {"room_name", v.room_name},
           {"room_tag", v.room_tag},
           {"room_augment_id", v.room_augment_id},
           {"floor_level", v.floor_level}};
}

void from_json(const json& j, SpaceRecord& v) {
  v.room_category = require_string(j, "room_category");
  v.room_name = value_or<std::string>(j, "room_name", "");
  v.room_tag = require_string(j, "room_tag");
  v.room_augment_id = value_or<std::string>(j, "room_augment_id", "");
  v.floor_level = value_or<std::string>(j, "floor_level", "");
}

json equipment_core_json(const EquipmentItem& v) {
  return json{{"omniclass_system", v.omniclass_system},
              {"omniclass_type", v.omniclass_type},
              {"augment_id_type", v.augment_id_type},
              {"augment_id_instance", v.augment_id_instance},
              {"space_instance", v.space_instance},
              {"discipline", v.discipline},
              {"om_properties", v.om_properties},
              {"dashboard_support", v.dashboard_support}};
}

void to_json(json& j, const EquipmentItem& v) {
  j = equipment_core_json(v);
  j["document_ids"] = v.document_ids;
}

void from_json(const json& j, EquipmentItem& v) {
  v.omniclass_system = require_string(j, "omniclass_system");
  v.omniclass_type = require_string(j, "omniclass_type");
  v.augment_id_type = value_or<std::string>(j, "augment_id_type", "");
  v.augment_id_instance = value_or<std::string>(j, "augment_id_instance", "");
  v.space_instance = require_string(j, "space_instance");
  v.discipline = require_field(j, "discipline").get<Discipline>();
  v.om_properties = j.contains("om_properties") && !j.at("om_properties").is_null() ? j.at("om_properties")
                                                                                     : json::object();
  if (!v.om_properties.is_object()) fail(Errc::malformed_payload, "om_properties must be an object");
  v.document_ids = value_or<std::vector<std::string>>(j, "document_ids", {});
  v.dashboard_support = value_or<bool>(j, "dashboard_support", false);
}

void to_json(json& j, const DocumentMeta& v) {
  j = json{{"doc_id", v.doc_id},
           {"kind", v.kind},
           {"title", v.title},
           {"uri_or_path", v.uri_or_path},
           {"uploaded_at", ts(v.uploaded_at)}};
}

void from_json(const json& j, DocumentMeta& v) {
  v.doc_id = value_or<std::string>(j, "doc_id", "");
  v.kind = require_field(j, "kind").get<DocumentKind>();
  v.title = require_string(j, "title");
  v.uri_or_path = value_or<std::string>(j, "uri_or_path", "");
  v.uploaded_at = optional_ts(j, "uploaded_at").value_or(Timestamp{});
}

void to_json(json& j, const SimProfile& v) {
  j = json{{"baseline", v.baseline},
           {"diurnal_amplitude", v.diurnal_amplitude},
           {"noise_sigma", v.noise_sigma},
           {"occupied_from_hour", v.occupied_from_hour},
           {"occupied_to_hour", v.occupied_to_hour},
           {"p_occupied", v.p_occupied},
           {"p_unoccupied", v.p_unoccupied}};
}

void from_json(const json& j, SimProfile& v) {
  SimProfile d;
  v.baseline = value_or<double>(j, "baseline", d.baseline);
  v.diurnal_amplitude = value_or<double>(j, "diurnal_amplitude", d.diurnal_amplitude);
  v.noise_sigma = value_or<double>(j, "noise_sigma", d.noise_sigma);
  v.occupied_from_hour = value_or<int>(j, "occupied_from_hour", d.occupied_from_hour);
  v.occupied_to_hour = value_or<int>(j, "occupied_to_hour", d.occupied_to_hour);
  v.p_occupied = value_or<double>(j, "p_occupied", d.p_occupied);
  v.p_unoccupied = value_or<double>(j, "p_unoccupied", d.p_unoccupied);
}

void to_json(json& j, const SensorSpec& v) {
  j = json{{"sensor_id", v.sensor_id},
           {"bound_equipment", v.bound_equipment},
           {"kind", v.kind},
           {"unit", v.unit},
           {"interval_s", v.interval_s},
           {"normal_range", json::array({v.low, v.high})},
           {"sim_profile", v.sim_profile},
           {"dashboard_support", v.dashboard_support},
           {"live_capable", v.live_capable}};
}

void from_json(const json& j, SensorSpec& v) {
  v.sensor_id = value_or<std::string>(j, "sensor_id", "");
  v.bound_equipment = value_or<std::string>(j, "bound_equipment", "");
  v.kind = require_field(j, "kind").get<SensorKind>();
  v.unit = require_string(j, "unit");
  const json& interval = require_field(j, "interval_s");
  if (!interval.is_number_integer()) fail(Errc::malformed_payload, "interval_s must be an integer");
  v.interval_s = interval.get<int>();
  const json& range = require_field(j, "normal_range");
  if (!range.is_array() || range.size() != 2 || !range[0].is_number() || !range[1].is_number()) {
    fail(Errc::malformed_payload, "normal_range must be [low, high]");
  }
  v.low = range[0].get<double>();
  v.high = range[1].get<double>();
  v.sim_profile = j.contains("sim_profile") ? j.at("sim_profile").get<SimProfile>() : SimProfile{};
  v.dashboard_support = value_or<bool>(j, "dashboard_support", false);
  v.live_capable = value_or<bool>(j, "live_capable", false);
}

void to_json(json& j, const SensorReading& v) {
  j = json{{"sensor_id", v.sensor_id}, {"at", ts(v.at)}, {"value", v.value}, {"source", v.source}};
}

void from_json(const json& j, SensorReading& v) {
  v.sensor_id = require_string(j, "sensor_id");
  v.at = timestamp_from_json(require_field(j, "at"));
  v.value = require_number(j, "value");
  v.source = require_field(j, "source").get<ReadingSource>();
}

void to_json(json& j, const AlarmRule& v) {
  j = json{{"sensor_id", v.sensor_id},
           {"low", v.low},
           {"high", v.high},
           {"raise_debounce", v.raise_debounce},
           {"clear_debounce", v.clear_debounce}};
}

void from_json(const json& j, AlarmRule& v) {
  v.sensor_id = value_or<std::string>(j, "sensor_id", "");
  v.low = require_number(j, "low");
  v.high = require_number(j, "high");
  v.raise_debounce = value_or<int>(j, "raise_debounce", 1);
  v.clear_debounce = value_or<int>(j, "clear_debounce", 3);
}

void to_json(json& j, const AlarmRecord& v) {
  j = json{{"alarm_id", v.alarm_id},
           {"sensor_id", v.sensor_id},
           {"state", v.state},
           {"raised_at", ts(v.raised_at)},
           {"trigger_value", v.trigger_value}};
  put_optional(j, "acked_at", v.acked_at);
  put_optional(j, "cleared_at", v.cleared_at);
  put_optional(j, "actor", v.actor);
}

void from_json(const json& j, AlarmRecord& v) {
  v.alarm_id = require_string(j, "alarm_id");
  v.sensor_id = require_string(j, "sensor_id");
  v.state = require_field(j, "state").get<AlarmState>();
  v.raised_at = timestamp_from_json(require_field(j, "raised_at"));
  v.trigger_value = require_number(j, "trigger_value");
  v.acked_at = optional_ts(j, "acked_at");
  v.cleared_at = optional_ts(j, "cleared_at");
  v.actor = optional_string(j, "actor");
}

void to_json(json& j, const Resource& v) { j = json{{"name", v.name}, {"quantity", v.quantity}}; }

void from_json(const json& j, Resource& v) {
  v.name = require_string(j, "name");
  v.quantity = value_or<double>(j, "quantity", 1.0);
}

void to_json(json& j, const MaintenancePolicy& v) {
  j = json{{"policy_id", v.policy_id},
           {"target_kind", v.target_kind},
           {"target", v.target},
           {"tasks", v.tasks},
           {"frequency_days", v.frequency_days},
           {"start_date", date(v.start_date)},
           {"resources", v.resources}};
}

void from_json(const json& j, MaintenancePolicy& v) {
  v.policy_id = value_or<std::string>(j, "policy_id", "");
  v.target_kind = require_field(j, "target_kind").get<PolicyTarget>();
  v.target = require_string(j, "target");
  v.tasks = value_or<std::vector<std::string>>(j, "tasks", {});
  const json& freq = require_field(j, "frequency_days");
  if (!freq.is_number_integer()) fail(Errc::malformed_payload, "frequency_days must be an integer");
  v.frequency_days = freq.get<int>();
  v.start_date = date_from_json(require_field(j, "start_date"));
  v.resources = value_or<std::vector<Resource>>(j, "resources", {});
}

void to_json(json& j, const JobComment& v) {
  j = json{{"at", ts(v.at)}, {"actor", v.actor}, {"text", v.text}};
}

void from_json(const json& j, JobComment& v) {
  v.at = timestamp_from_json(require_field(j, "at"));
  v.actor = require_string(j, "actor");
  v.text = require_string(j, "text");
}

void to_json(json& j, const JobTransitionEntry& v) {
  j = json{{"at", ts(v.at)}, {"from", v.from}, {"to", v.to}, {"actor", v.actor}};
  put_optional(j, "comment", v.comment);
}

void from_json(const json& j, JobTransitionEntry& v) {
  v.at = timestamp_from_json(require_field(j, "at"));
  v.from = require_field(j, "from").get<JobStatus>();
  v.to = require_field(j, "to").get<JobStatus>();
  v.actor = require_string(j, "actor");
  v.comment = optional_string(j, "comment");
}

void to_json(json& j, const MaintenanceJob& v) {
  j = json{{"job_id", v.job_id},
           {"origin", v.origin},
           {"target_kind", v.target_kind},
           {"target", v.target},
           {"description", v.description},
           {"assignee_role", v.assignee_role},
           {"status", v.status},
           {"resources", v.resources},
           {"comments", v.comments},
           {"history", v.history},
           {"created_at", ts(v.created_at)}};
  put_optional(j, "policy_id", v.policy_id);
  put_optional(j, "occurrence_date", v.occurrence_date);
  put_optional(j, "assignee", v.assignee);
  put_optional(j, "due_date", v.due_date);
}

void from_json(const json& j, MaintenanceJob& v) {
  v.job_id = require_string(j, "job_id");
  v.origin = require_field(j, "origin").get<JobOrigin>();
  v.policy_id = optional_string(j, "policy_id");
  v.occurrence_date = optional_date(j, "occurrence_date");
  v.target_kind = require_field(j, "target_kind").get<TargetKind>();
  v.target = require_string(j, "target");
  v.description = require_string(j, "description");
  v.assignee_role = require_field(j, "assignee_role").get<AssigneeRole>();
  v.assignee = optional_string(j, "assignee");
  v.status = require_field(j, "status").get<JobStatus>();
  v.due_date = optional_date(j, "due_date");
  v.resources = value_or<std::vector<Resource>>(j, "resources", {});
  v.comments = value_or<std::vector<JobComment>>(j, "comments", {});
  v.history = value_or<std::vector<JobTransitionEntry>>(j, "history", {});
  v.created_at = timestamp_from_json(require_field(j, "created_at"));
}

}  // namespace twin
