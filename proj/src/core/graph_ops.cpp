// Copyright 2026 The twinfm Authors
// SPDX-License-Identifier: Apache-2.0

#include "graph_ops.hpp"

#include <algorithm>
#include <cstdio>

#include "omniclass.hpp"

namespace twin {

namespace {

// Largest N among ids of the form PREFIX-N.
std::size_t max_numbered(const std::vector<std::string>& ids, std::string_view prefix) {
  std::size_t best = 0;
  for (const auto& id : ids) {
    if (id.size() <= prefix.size() + 1 || id.compare(0, prefix.size(), prefix) != 0 || id[prefix.size()] != '-') {
      continue;
    }
    const auto digits = std::string_view(id).substr(prefix.size() + 1);
    if (!std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) continue;
    best = std::max<std::size_t>(best, std::stoull(std::string(digits)));
  }
  return best;
}

std::string make_id(const char* prefix, std::size_t n, int width) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s-%0*zu", prefix, width, n);
  return buf;
}

}  // namespace

std::vector<std::string> discipline_warnings(const EquipmentItem& item) {
  std::vector<std::string> out;
  if (auto implied = discipline_of_system(item.omniclass_system); implied && *implied != item.discipline) {
    out.push_back("DisciplineMismatch: system '" + item.omniclass_system + "' implies " +
                  std::string(to_string(*implied)) + ", declared " + std::string(to_string(item.discipline)));
  }
  return out;
}

UpsertResult stage_space(const TwinState& state, Batch& batch, Timestamp at, SpaceRecord record, bool overwrite) {
  parse_space_category(record.room_category);
  record.room_category = normalize_omniclass_text(record.room_category);
  if (record.room_tag.empty()) fail(Errc::invalid_argument, "room_tag must not be empty");

  UpsertResult result{record.room_tag, false, {}};
  if (const SpaceRecord* existing = state.find_space(record.room_tag)) {
    if (!overwrite && (existing->room_name != record.room_name || existing->room_category != record.room_category)) {
      fail(Errc::duplicate_tag_conflict, "room tag '" + record.room_tag + "' already holds a different room");
    }
    if (record.room_augment_id.empty()) record.room_augment_id = existing->room_augment_id;
    if (*existing == record) return result;
  } else if (record.room_augment_id.empty()) {
    std::vector<std::string> ids;
    for (const auto& [tag, s] : state.spaces) ids.push_back(s.room_augment_id);
    record.room_augment_id = make_id("SP", max_numbered(ids, "SP") + 1, 3);
  }
  for (const auto& [tag, s] : state.spaces) {
    if (tag != record.room_tag && s.room_augment_id == record.room_augment_id) {
      fail(Errc::id_collision, "room_augment_id " + record.room_augment_id + " already used by " + tag);
    }
  }
  result.changed = true;
  batch.add(EventKind::space_upserted, at, record);
  return result;
}

UpsertResult stage_equipment(const TwinState& state, Batch& batch, Timestamp at, EquipmentItem item) {
  parse_equipment_code(item.omniclass_system);
  parse_equipment_code(item.omniclass_type);
  item.omniclass_system = normalize_omniclass_text(item.omniclass_system);
  item.omniclass_type = normalize_omniclass_text(item.omniclass_type);
  if (!state.find_space(item.space_instance)) {
    fail(Errc::unknown_space, "space '" + item.space_instance + "' does not exist");
  }
  if (!item.om_properties.is_object()) fail(Errc::malformed_payload, "om_properties must be an object");

  std::vector<std::string> instance_ids;
  std::vector<std::string> type_ids;
  for (const auto& [id, e] : state.equipment) {
    instance_ids.push_back(id);
    type_ids.push_back(e.augment_id_type);
  }
  const EquipmentItem* existing = item.augment_id_instance.empty() ? nullptr
                                                                   : state.find_equipment(item.augment_id_instance);
  if (item.augment_id_instance.empty()) {
    item.augment_id_instance = make_id("EQ", max_numbered(instance_ids, "EQ") + 1, 5);
  }
  if (item.augment_id_type.empty() && existing && same_omniclass_code(existing->omniclass_type, item.omniclass_type)) {
    item.augment_id_type = existing->augment_id_type;
  }
  if (item.augment_id_type.empty()) {
    for (const auto& [id, e] : state.equipment) {
      if (same_omniclass_code(e.omniclass_type, item.omniclass_type) && !e.augment_id_type.empty()) {
        item.augment_id_type = e.augment_id_type;
        break;
      }
    }
  }
  if (item.augment_id_type.empty()) item.augment_id_type = make_id("TY", max_numbered(type_ids, "TY") + 1, 3);

  UpsertResult result{item.augment_id_instance, false, discipline_warnings(item)};
  if (existing && equipment_core_json(*existing) == equipment_core_json(item)) return result;
  result.changed = true;
  batch.add(EventKind::equipment_upserted, at, equipment_core_json(item));
  return result;
}

std::string stage_document(const TwinState& state, Batch& batch, Timestamp at, const std::string& equipment_id,
                           DocumentMeta meta) {
  if (!state.find_equipment(equipment_id)) {
    fail(Errc::unknown_equipment, "equipment '" + equipment_id + "' does not exist");
  }
  if (meta.title.empty()) fail(Errc::invalid_argument, "document title must not be empty");
  if (meta.doc_id.empty()) meta.doc_id = state.next_document_id();
  if (state.documents.count(meta.doc_id)) fail(Errc::invalid_argument, "document id " + meta.doc_id + " exists");
  if (meta.uploaded_at == Timestamp{}) meta.uploaded_at = at;
  batch.add(EventKind::doc_attached, at, json{{"equipment", equipment_id}, {"document", meta}});
  return meta.doc_id;
}

UpsertResult upsert_space(TwinGraph& graph, SpaceRecord record, bool overwrite) {
  const Timestamp at = graph.now();
  return graph.write([&](const TwinState& s, Batch& b) { return stage_space(s, b, at, std::move(record), overwrite); });
}

UpsertResult upsert_equipment(TwinGraph& graph, EquipmentItem item) {
  const Timestamp at = graph.now();
  return graph.write([&](const TwinState& s, Batch& b) { return stage_equipment(s, b, at, std::move(item)); });
}

std::string attach_document(TwinGraph& graph, const std::string& equipment_id, DocumentMeta meta) {
  const Timestamp at = graph.now();
  return graph.write(
      [&](const TwinState& s, Batch& b) { return stage_document(s, b, at, equipment_id, std::move(meta)); });
}

std::vector<EquipmentItem> query(const TwinState& state, const Selector& selector) {
  std::vector<EquipmentItem> out;
  std::optional<Discipline> discipline;
  if (selector.by == Selector::By::discipline) {
    discipline = enum_from_string<Discipline>(selector.value);
    if (!discipline) return out;
  }
  const std::string prefix = normalize_omniclass_text(selector.value);
  for (const auto& [id, item] : state.equipment) {
    bool match = false;
    switch (selector.by) {
      case Selector::By::room_tag: match = item.space_instance == selector.value; break;
      case Selector::By::discipline: match = item.discipline == *discipline; break;
      case Selector::By::augment_id: match = id == selector.value || item.augment_id_type == selector.value; break;
      case Selector::By::omniclass_prefix:
        match = item.omniclass_type.rfind(prefix, 0) == 0 || item.omniclass_system.rfind(prefix, 0) == 0;
        break;
    }
    if (match) out.push_back(item);
  }
  std::stable_sort(out.begin(), out.end(), [](const EquipmentItem& a, const EquipmentItem& b) {
    return std::tie(a.augment_id_instance, a.space_instance) < std::tie(b.augment_id_instance, b.space_instance);
  });
  return out;
}

}  // namespace twin
