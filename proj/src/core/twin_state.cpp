// Copyright 2026 The twinfm Authors
// SPDX-License-Identifier: Apache-2.0

#include "twin_state.hpp"

#include <cstdio>

#include "omniclass.hpp"

namespace twin {

namespace {

[[noreturn]] void corrupt(const TwinEvent& e, const std::string& why) {
  fail(Errc::corrupt_log, "event " + std::to_string(e.seq) + " (" + std::string(to_string(e.kind)) + "): " + why);
}

std::string numbered(const char* prefix, std::size_t n, int width) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s-%0*zu", prefix, width, n);
  return buf;
}

template <class T>
T decode(const TwinEvent& e, const json& j) {
  try {
    return j.get<T>();
  } catch (const Error& err) {
    corrupt(e, err.what());
  } catch (const json::exception& err) {
    corrupt(e, err.what());
  }
}

}  // namespace

bool transition_allowed(JobStatus from, JobStatus to) {
  using S = JobStatus;
  return (from == S::open && to == S::ongoing) || (from == S::ongoing && to == S::completed) ||
         (from == S::completed && to == S::verified) || (from == S::ongoing && to == S::open) ||
         (from == S::completed && to == S::ongoing);
}

const EquipmentItem* TwinState::find_equipment(const std::string& id) const {
  auto it = equipment.find(id);
  return it == equipment.end() ? nullptr : &it->second;
}

const SpaceRecord* TwinState::find_space(const std::string& tag) const {
  auto it = spaces.find(tag);
  return it == spaces.end() ? nullptr : &it->second;
}

const SensorSpec* TwinState::find_sensor(const std::string& id) const {
  auto it = sensors.find(id);
  return it == sensors.end() ? nullptr : &it->second;
}

std::vector<const SensorSpec*> TwinState::sensors_of(const std::string& equipment_id) const {
  std::vector<const SensorSpec*> out;
  auto it = sensors_by_equipment_.find(equipment_id);
  if (it == sensors_by_equipment_.end()) return out;
  for (const auto& id : it->second) out.push_back(&sensors.at(id));
  return out;
}

std::optional<std::string> TwinState::sensor_for(const std::string& equipment_id, SensorKind kind) const {
  auto it = sensor_by_binding_.find({equipment_id, kind});
  if (it == sensor_by_binding_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> TwinState::active_alarm_for(const std::string& sensor_id) const {
  auto it = active_alarm_by_sensor_.find(sensor_id);
  if (it == active_alarm_by_sensor_.end()) return std::nullopt;
  return it->second;
}

std::vector<const EquipmentItem*> TwinState::equipment_of_type(const std::string& omniclass_type) const {
  std::vector<const EquipmentItem*> out;
  for (const auto& [id, item] : equipment) {
    if (same_omniclass_code(item.omniclass_type, omniclass_type)) out.push_back(&item);
  }
  return out;
}

bool TwinState::has_preventive_job(const std::string& policy_id, Date occurrence, const std::string& target) const {
  return preventive_keys_.count({policy_id, occurrence, target}) > 0;
}

std::string TwinState::next_alarm_id() const { return numbered("AL", alarms.size() + 1, 6); }
std::string TwinState::next_job_id() const { return numbered("JOB", jobs.size() + 1, 6); }

std::string TwinState::next_document_id() const {
  std::size_t n = documents.size() + 1;
  std::string id = numbered("DOC", n, 5);
  while (documents.count(id)) id = numbered("DOC", ++n, 5);
  return id;
}

void TwinState::apply(const TwinEvent& e) {
  if (e.seq != last_seq + 1) {
    fail(Errc::gap_in_sequence, "expected event seq " + std::to_string(last_seq + 1) + ", found " +
                                    std::to_string(e.seq));
  }
  const json& p = e.payload;
  if (!p.is_object()) corrupt(e, "payload must be an object");
  switch (e.kind) {
    case EventKind::space_upserted: {
      auto rec = decode<SpaceRecord>(e, p);
      if (rec.room_tag.empty()) corrupt(e, "empty room_tag");
      try {
        parse_space_category(rec.room_category);
      } catch (const Error& err) {
        corrupt(e, err.what());
      }
      if (!rec.room_augment_id.empty()) {
        for (const auto& [tag, s] : spaces) {
          if (tag != rec.room_tag && s.room_augment_id == rec.room_augment_id) {
            corrupt(e, "duplicate room_augment_id " + rec.room_augment_id);
          }
        }
      }
      spaces[rec.room_tag] = std::move(rec);
      break;
    }
    case EventKind::equipment_upserted: {
      auto item = decode<EquipmentItem>(e, p);
      if (item.augment_id_instance.empty()) corrupt(e, "equipment without augment_id_instance");
      try {
        parse_equipment_code(item.omniclass_system);
        parse_equipment_code(item.omniclass_type);
      } catch (const Error& err) {
        corrupt(e, err.what());
      }
      if (!spaces.count(item.space_instance)) corrupt(e, "unknown space " + item.space_instance);
      auto it = equipment.find(item.augment_id_instance);
      if (it != equipment.end()) item.document_ids = it->second.document_ids;
      equipment[item.augment_id_instance] = std::move(item);
      break;
    }
    case EventKind::doc_attached: {
      const std::string eq = decode<std::string>(e, p.value("equipment", json()));
      auto doc = decode<DocumentMeta>(e, p.value("document", json::object()));
      auto it = equipment.find(eq);
      if (it == equipment.end()) corrupt(e, "unknown equipment " + eq);
      if (doc.doc_id.empty() || documents.count(doc.doc_id)) corrupt(e, "duplicate or empty doc_id");
      it->second.document_ids.push_back(doc.doc_id);
      documents[doc.doc_id] = std::move(doc);
      break;
    }
    case EventKind::sensor_bound: {
      auto spec = decode<SensorSpec>(e, p.value("sensor", json::object()));
      auto rule = decode<AlarmRule>(e, p.value("rule", json::object()));
      if (spec.sensor_id.empty() || rule.sensor_id != spec.sensor_id) corrupt(e, "sensor/rule id mismatch");
      if (!equipment.count(spec.bound_equipment)) corrupt(e, "unknown equipment " + spec.bound_equipment);
      if (spec.interval_s < kMinIntervalSeconds || spec.interval_s > kMaxIntervalSeconds) {
        corrupt(e, "interval outside [60, 300] s");
      }
      if (!(spec.low < spec.high)) corrupt(e, "normal range needs low < high");
      auto bound = sensor_by_binding_.find({spec.bound_equipment, spec.kind});
      if (bound != sensor_by_binding_.end() && bound->second != spec.sensor_id) {
        corrupt(e, "equipment already has a " + std::string(to_string(spec.kind)) + " sensor");
      }
      auto old = sensors.find(spec.sensor_id);
      if (old != sensors.end()) {
        sensors_by_equipment_[old->second.bound_equipment].erase(spec.sensor_id);
        sensor_by_binding_.erase({old->second.bound_equipment, old->second.kind});
      }
      sensors_by_equipment_[spec.bound_equipment].insert(spec.sensor_id);
      sensor_by_binding_[{spec.bound_equipment, spec.kind}] = spec.sensor_id;
      rule_states.try_emplace(spec.sensor_id);
      rules[spec.sensor_id] = std::move(rule);
      sensors[spec.sensor_id] = std::move(spec);
      break;
    }
    case EventKind::reading_ingested: {
      auto reading = decode<SensorReading>(e, p);
      auto sensor = sensors.find(reading.sensor_id);
      if (sensor == sensors.end()) corrupt(e, "unknown sensor " + reading.sensor_id);
      if (sensor->second.kind == SensorKind::occupancy && reading.value != 0.0 && reading.value != 1.0) {
        corrupt(e, "occupancy reading must be 0 or 1");
      }
      auto& state = rule_states[reading.sensor_id];
      state = evaluate(rules.at(reading.sensor_id), state, reading).next;
      readings[reading.sensor_id].push_back(std::move(reading));
      ++reading_count_;
      break;
    }
    case EventKind::alarm_raised: {
      AlarmRecord rec;
      rec.alarm_id = decode<std::string>(e, p.value("alarm_id", json()));
      rec.sensor_id = decode<std::string>(e, p.value("sensor_id", json()));
      rec.trigger_value = decode<double>(e, p.value("trigger_value", json()));
      rec.raised_at = e.at;
      if (!sensors.count(rec.sensor_id)) corrupt(e, "unknown sensor " + rec.sensor_id);
      if (alarms.count(rec.alarm_id)) corrupt(e, "duplicate alarm id " + rec.alarm_id);
      if (active_alarm_by_sensor_.count(rec.sensor_id)) corrupt(e, "sensor already has an active alarm");
      active_alarm_by_sensor_[rec.sensor_id] = rec.alarm_id;
      alarms[rec.alarm_id] = std::move(rec);
      break;
    }
    case EventKind::alarm_acked: {
      const auto id = decode<std::string>(e, p.value("alarm_id", json()));
      auto it = alarms.find(id);
      if (it == alarms.end()) corrupt(e, "unknown alarm " + id);
      if (it->second.state != AlarmState::raised) corrupt(e, "alarm not in raised state");
      it->second.state = AlarmState::acknowledged;
      it->second.acked_at = e.at;
      it->second.actor = decode<std::string>(e, p.value("actor", json()));
      break;
    }
    case EventKind::alarm_cleared: {
      const auto id = decode<std::string>(e, p.value("alarm_id", json()));
      auto it = alarms.find(id);
      if (it == alarms.end()) corrupt(e, "unknown alarm " + id);
      if (!it->second.active()) corrupt(e, "alarm already cleared");
      it->second.state = AlarmState::cleared;
      it->second.cleared_at = e.at;
      active_alarm_by_sensor_.erase(it->second.sensor_id);
      break;
    }
    case EventKind::policy_created: {
      auto policy = decode<MaintenancePolicy>(e, p);
      if (policy.policy_id.empty()) corrupt(e, "empty policy_id");
      if (policy.frequency_days < 1) corrupt(e, "frequency_days < 1");
      if (policy.target_kind == PolicyTarget::room ? !spaces.count(policy.target)
                                                   : equipment_of_type(policy.target).empty()) {
        corrupt(e, "unresolved policy target " + policy.target);
      }
      policies[policy.policy_id] = std::move(policy);
      break;
    }
    case EventKind::job_created: {
      auto job = decode<MaintenanceJob>(e, p);
      if (jobs.count(job.job_id)) corrupt(e, "duplicate job id " + job.job_id);
      const bool resolves = job.target_kind == TargetKind::equipment ? equipment.count(job.target) > 0
                                                                      : spaces.count(job.target) > 0;
      if (!resolves) corrupt(e, "unresolved job target " + job.target);
      if (job.assignee_role != role_for(job.target_kind)) corrupt(e, "assignee role contradicts target kind");
      if (job.origin == JobOrigin::preventive) {
        if (!job.policy_id || !job.occurrence_date || !policies.count(*job.policy_id)) {
          corrupt(e, "preventive job without a known policy occurrence");
        }
        preventive_keys_.insert({*job.policy_id, *job.occurrence_date, job.target});
      }
      jobs[job.job_id] = std::move(job);
      break;
    }
    case EventKind::job_transitioned: {
      const auto id = decode<std::string>(e, p.value("job_id", json()));
      auto it = jobs.find(id);
      if (it == jobs.end()) corrupt(e, "unknown job " + id);
      JobTransitionEntry entry;
      entry.at = e.at;
      entry.from = decode<JobStatus>(e, p.value("from", json()));
      entry.to = decode<JobStatus>(e, p.value("to", json()));
      entry.actor = decode<std::string>(e, p.value("actor", json()));
      if (p.contains("comment") && !p["comment"].is_null()) entry.comment = decode<std::string>(e, p["comment"]);
      if (entry.from != it->second.status || !transition_allowed(entry.from, entry.to)) {
        corrupt(e, "illegal transition for job " + id);
      }
      it->second.status = entry.to;
      it->second.assignee = entry.actor;
      it->second.history.push_back(std::move(entry));
      break;
    }
    case EventKind::comment_added: {
      const auto id = decode<std::string>(e, p.value("job_id", json()));
      auto it = jobs.find(id);
      if (it == jobs.end()) corrupt(e, "unknown job " + id);
      JobComment c{e.at, decode<std::string>(e, p.value("actor", json())),
                   decode<std::string>(e, p.value("text", json()))};
      if (c.text.empty()) corrupt(e, "empty comment");
      it->second.comments.push_back(std::move(c));
      break;
    }
  }
  last_seq = e.seq;
}

json TwinState::to_json() const {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["last_seq"] = last_seq;
  j["spaces"] = spaces;
  j["equipment"] = equipment;
  j["documents"] = documents;
  j["sensors"] = sensors;
  j["rules"] = rules;
  j["rule_states"] = rule_states;
  j["readings"] = readings;
  j["alarms"] = alarms;
  j["policies"] = policies;
  j["jobs"] = jobs;
  return j;
}

TwinState TwinState::from_json(const json& j) {
  TwinState s;
  try {
    if (j.at("schema_version").get<int>() != kSchemaVersion) {
      fail(Errc::corrupt_log, "unsupported snapshot schema version");
    }
    s.last_seq = j.at("last_seq").get<std::uint64_t>();
    s.spaces = j.at("spaces").get<decltype(s.spaces)>();
    s.equipment = j.at("equipment").get<decltype(s.equipment)>();
    s.documents = j.at("documents").get<decltype(s.documents)>();
    s.sensors = j.at("sensors").get<decltype(s.sensors)>();
    s.rules = j.at("rules").get<decltype(s.rules)>();
    s.rule_states = j.at("rule_states").get<decltype(s.rule_states)>();
    s.readings = j.at("readings").get<decltype(s.readings)>();
    s.alarms = j.at("alarms").get<decltype(s.alarms)>();
    s.policies = j.at("policies").get<decltype(s.policies)>();
    s.jobs = j.at("jobs").get<decltype(s.jobs)>();
  } catch (const json::exception& e) {
    fail(Errc::corrupt_log, std::string("malformed snapshot: ") + e.what());
  } catch (const Error& e) {
    fail(Errc::corrupt_log, std::string("malformed snapshot: ") + e.what());
  }
  s.rebuild_indexes();
  return s;
}

void TwinState::rebuild_indexes() {
  sensors_by_equipment_.clear();
  sensor_by_binding_.clear();
  active_alarm_by_sensor_.clear();
  preventive_keys_.clear();
  reading_count_ = 0;
  for (const auto& [id, s] : sensors) {
    sensors_by_equipment_[s.bound_equipment].insert(id);
    sensor_by_binding_[{s.bound_equipment, s.kind}] = id;
  }
  for (const auto& [id, a] : alarms) {
    if (a.active()) active_alarm_by_sensor_[a.sensor_id] = id;
  }
  for (const auto& [id, job] : jobs) {
    if (job.origin == JobOrigin::preventive && job.policy_id && job.occurrence_date) {
      preventive_keys_.insert({*job.policy_id, *job.occurrence_date, job.target});
    }
  }
  for (const auto& [id, list] : readings) reading_count_ += list.size();
}

std::vector<std::string> TwinState::integrity_violations() const {
  std::vector<std::string> out;
  std::set<std::string> room_ids;
  for (const auto& [tag, s] : spaces) {
    if (tag != s.room_tag) out.push_back("space key mismatch " + tag);
    if (!s.room_augment_id.empty() && !room_ids.insert(s.room_augment_id).second) {
      out.push_back("duplicate room_augment_id " + s.room_augment_id);
    }
  }
  for (const auto& [id, item] : equipment) {
    if (id != item.augment_id_instance) out.push_back("equipment key mismatch " + id);
    if (!spaces.count(item.space_instance)) out.push_back(id + " -> missing space " + item.space_instance);
    for (const auto& doc : item.document_ids) {
      if (!documents.count(doc)) out.push_back(id + " -> missing document " + doc);
    }
  }
  for (const auto& [id, s] : sensors) {
    if (!equipment.count(s.bound_equipment)) out.push_back(id + " -> missing equipment " + s.bound_equipment);
    if (!rules.count(id)) out.push_back(id + " has no alarm rule");
  }
  for (const auto& [id, list] : readings) {
    if (!sensors.count(id)) out.push_back("readings for unknown sensor " + id);
  }
  std::set<std::string> active_sensors;
  for (const auto& [id, a] : alarms) {
    if (!sensors.count(a.sensor_id)) out.push_back(id + " -> missing sensor " + a.sensor_id);
    if (a.active() && !active_sensors.insert(a.sensor_id).second) {
      out.push_back("more than one active alarm on " + a.sensor_id);
    }
  }
  for (const auto& [id, job] : jobs) {
    const bool ok = job.target_kind == TargetKind::equipment ? equipment.count(job.target) > 0
                                                              : spaces.count(job.target) > 0;
    if (!ok) out.push_back(id + " -> missing target " + job.target);
    if (job.assignee_role != role_for(job.target_kind)) out.push_back(id + " has wrong assignee role");
    if (job.policy_id && !policies.count(*job.policy_id)) out.push_back(id + " -> missing policy");
  }
  return out;
}

TwinState replay(const std::vector<TwinEvent>& events) {
  return replay(TwinState{}, events);
}

TwinState replay(TwinState snapshot, const std::vector<TwinEvent>& tail) {
  check_sequence(tail, snapshot.last_seq + 1);
  for (const auto& e : tail) snapshot.apply(e);
  return snapshot;
}

}  // namespace twin
