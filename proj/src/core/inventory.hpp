// Copyright 2026 The twinfm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "csv.hpp"
#include "twin_graph.hpp"

namespace twin {

inline const std::vector<std::string> kSpaceHeader = {"Room-Category", "Room-Name", "Room-Tag", "Room-AugmentID",
                                                      "Floor-Level"};
inline const std::vector<std::string> kEquipmentHeader = {"OMNICLASS_SYSTEM",   "OMNICLASS_TYPE", "AugmentID_Type",
                                                          "AugmentID_Instance", "Space_Instance", "Discipline",
                                                          "OM_Properties"};
inline constexpr const char* kDashboardSupportColumn = "Dashboard_Support";

struct Violation {
  std::string file;  // "spaces" or "equipment"
  int row = 0;       // spreadsheet row number; the header is row 1
  std::string rule;  // required-field, malformed-code, dangling-space, ...
  std::string message;
  bool rejects_row = true;
};

struct IngestReport {
  int spaces_loaded = 0;
  int equipment_loaded = 0;
  int equipment_rows = 0;
  int assigned_ids = 0;
  bool committed = false;
  std::vector<Violation> violations;

  int rejected_rows() const;
};

void to_json(json& j, const Violation& v);
void to_json(json& j, const IngestReport& r);

// Raw equipment row keyed by header name.
using EquipmentRow = std::map<std::string, std::string>;

// Empty iff the row satisfies the equipment schema. Warning-level findings
// (discipline-mismatch) carry rejects_row = false.
std::vector<Violation> validate_equipment(const EquipmentRow& row,
                                          const std::function<bool(const std::string&)>& space_exists,
                                          int row_number = 0);

// Builds the item for a row that validated cleanly.
EquipmentItem equipment_from_row(const EquipmentRow& row);

struct Inventory {
  std::vector<SpaceRecord> spaces;      // ingest order
  std::vector<EquipmentItem> equipment;  // ingest order
};

struct AssignResult {
  Inventory inventory;
  int assigned = 0;
};

// Pure and idempotent. Empty instance ids become EQ-00001.. in (canonical
// omniclass_type, ingest order) order; each distinct type without an id gets
// TY-001..; spaces without an id get SP-001.. by room_tag. Preset ids are
// kept and never consume a number. Throws IdCollision.
AssignResult assign_augment_ids(Inventory inventory);

struct PreparedInventory {
  Inventory inventory;  // valid rows with ids assigned
  IngestReport report;
};

// Parses and validates without committing. Throws FileUnreadable, HeaderMismatch.
PreparedInventory prepare_inventory(const TwinState& state, const std::vector<CsvRow>& space_rows,
                                    const std::vector<CsvRow>& equipment_rows);

// Commits spaces then equipment; unchanged records append nothing.
void commit_inventory(TwinGraph& graph, const PreparedInventory& prepared);

// Loads both files. In strict mode nothing is committed when any row is rejected.
IngestReport load_inventory(TwinGraph& graph, const std::filesystem::path& space_file,
                            const std::filesystem::path& equipment_file, bool strict = false);

}  // namespace twin
