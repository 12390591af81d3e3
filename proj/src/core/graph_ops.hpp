// Copyright 2026 The twinfm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "twin_graph.hpp"

namespace twin {

struct UpsertResult {
  std::string key;  // room_tag or augment_id_instance
  bool changed = false;
  std::vector<std::string> warnings;
};

// Idempotent: an unchanged record appends no event. An empty room_augment_id
// keeps the stored one (or receives the next free SP-nnn for a new space).
// Throws MalformedCategory, InvalidArgument (empty tag), DuplicateTagConflict.
UpsertResult upsert_space(TwinGraph& graph, SpaceRecord record, bool overwrite = false);

// Throws MalformedCode, UnknownSpace. A system code whose discipline
// contradicts the declared one is reported as a warning, not an error.
// Items without an augment_id_instance get the next free EQ-nnnnn.
UpsertResult upsert_equipment(TwinGraph& graph, EquipmentItem item);

// Throws UnknownEquipment.
std::string attach_document(TwinGraph& graph, const std::string& equipment_id, DocumentMeta meta);

// Staging forms for composing larger transactions; validate against `state`
// and add at most one event to `batch`.
UpsertResult stage_space(const TwinState& state, Batch& batch, Timestamp at, SpaceRecord record, bool overwrite);
UpsertResult stage_equipment(const TwinState& state, Batch& batch, Timestamp at, EquipmentItem item);
std::string stage_document(const TwinState& state, Batch& batch, Timestamp at, const std::string& equipment_id,
                           DocumentMeta meta);

std::vector<std::string> discipline_warnings(const EquipmentItem& item);

struct Selector {
  enum class By { room_tag, discipline, omniclass_prefix, augment_id };
  By by = By::omniclass_prefix;
  std::string value;
};

// Read-only; sorted by augment_id_instance then room_tag.
std::vector<EquipmentItem> query(const TwinState& state, const Selector& selector);

}  // namespace twin
