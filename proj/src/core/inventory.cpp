// Copyright 2026 The twinfm Authors
// SPDX-License-Identifier: Apache-2.0

#include "inventory.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <numeric>
#include <set>

#include "graph_ops.hpp"
#include "omniclass.hpp"

namespace twin {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string make_id(const char* prefix, int n, int width) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s-%0*d", prefix, width, n);
  return buf;
}

std::string field(const EquipmentRow& row, const std::string& name) {
  auto it = row.find(name);
  return it == row.end() ? std::string() : trim(it->second);
}

std::optional<bool> parse_flag(const std::string& text) {
  if (text.empty() || text == "false" || text == "0" || text == "no") return false;
  if (text == "true" || text == "1" || text == "yes") return true;
  return std::nullopt;
}

bool valid_om_value(const json& v) {
  if (v.is_string() || v.is_number() || v.is_boolean()) return true;
  if (v.is_object()) {
    if (!v.contains("value") || !v.contains("unit") || !v.at("unit").is_string()) return false;
    const auto& inner = v.at("value");
    return inner.is_string() || inner.is_number() || inner.is_boolean();
  }
  return false;
}

std::optional<std::string> om_properties_problem(const std::string& text, json* out) {
  if (text.empty()) {
    if (out) *out = json::object();
    return std::nullopt;
  }
  json parsed;
  try {
    parsed = json::parse(text);
  } catch (const json::exception& e) {
    return std::string("OM_Properties is not valid JSON: ") + e.what();
  }
  if (!parsed.is_object()) return "OM_Properties must be a JSON object";
  for (const auto& [name, value] : parsed.items()) {
    if (!valid_om_value(value)) {
      return "OM property '" + name + "' must be a scalar or {\"value\", \"unit\"}";
    }
  }
  if (out) *out = std::move(parsed);
  return std::nullopt;
}

std::vector<std::string> trimmed(const CsvRow& row) {
  std::vector<std::string> out;
  out.reserve(row.size());
  for (const auto& f : row) out.push_back(trim(f));
  return out;
}

}  // namespace

int IngestReport::rejected_rows() const {
  return static_cast<int>(std::count_if(violations.begin(), violations.end(), [](const Violation& v) {
    return v.rejects_row && v.file == "equipment";
  }));
}

void to_json(json& j, const Violation& v) {
  j = json{{"file", v.file}, {"row", v.row}, {"rule", v.rule}, {"message", v.message}, {"rejects_row", v.rejects_row}};
}

void to_json(json& j, const IngestReport& r) {
  j = json{{"spaces_loaded", r.spaces_loaded},
           {"equipment_loaded", r.equipment_loaded},
           {"equipment_rows", r.equipment_rows},
           {"rejected_rows", r.rejected_rows()},
           {"assigned_ids", r.assigned_ids},
           {"committed", r.committed},
           {"violations", r.violations}};
}

std::vector<Violation> validate_equipment(const EquipmentRow& row,
                                          const std::function<bool(const std::string&)>& space_exists,
                                          int row_number) {
  std::vector<Violation> out;
  bool rejected = false;
  auto reject = [&](std::string rule, std::string message) {
    out.push_back(Violation{"equipment", row_number, std::move(rule), std::move(message), !rejected});
    rejected = true;
  };

  const std::string system = field(row, "OMNICLASS_SYSTEM");
  const std::string type = field(row, "OMNICLASS_TYPE");
  const std::string space = field(row, "Space_Instance");
  for (const auto& [name, value] : {std::pair{"OMNICLASS_SYSTEM", system}, std::pair{"OMNICLASS_TYPE", type},
                                    std::pair{"Space_Instance", space}}) {
    if (value.empty()) reject("required-field", std::string(name) + " is required");
  }
  for (const auto& [name, value] : {std::pair{"OMNICLASS_SYSTEM", system}, std::pair{"OMNICLASS_TYPE", type}}) {
    if (value.empty()) continue;
    try {
      parse_equipment_code(value);
    } catch (const Error& e) {
      reject("malformed-code", std::string(name) + ": " + e.what());
    }
  }
  if (!space.empty() && !space_exists(space)) {
    reject("dangling-space", "Space_Instance '" + space + "' does not match any room tag");
  }

  const std::string discipline_text = field(row, "Discipline");
  std::optional<Discipline> discipline;
  if (discipline_text.empty()) {
    discipline = discipline_of_system(system);
    if (!discipline && !system.empty()) reject("required-field", "Discipline is required when the system code does not imply one");
  } else {
    discipline = enum_from_string<Discipline>(discipline_text);
    if (!discipline) reject("unknown-discipline", "unknown discipline '" + discipline_text + "'");
  }

  if (auto problem = om_properties_problem(field(row, "OM_Properties"), nullptr)) {
    reject("malformed-properties", *problem);
  }
  if (!parse_flag(field(row, kDashboardSupportColumn))) {
    reject("malformed-flag", std::string(kDashboardSupportColumn) + " must be true or false");
  }

  if (discipline) {
    if (auto implied = discipline_of_system(system); implied && *implied != *discipline) {
      out.push_back(Violation{"equipment", row_number, "discipline-mismatch",
                              "system code implies " + std::string(to_string(*implied)) + ", row declares " +
                                  std::string(to_string(*discipline)),
                              false});
    }
  }
  return out;
}

EquipmentItem equipment_from_row(const EquipmentRow& row) {
  EquipmentItem item;
  item.omniclass_system = normalize_omniclass_text(field(row, "OMNICLASS_SYSTEM"));
  item.omniclass_type = normalize_omniclass_text(field(row, "OMNICLASS_TYPE"));
  item.augment_id_type = field(row, "AugmentID_Type");
  item.augment_id_instance = field(row, "AugmentID_Instance");
  item.space_instance = field(row, "Space_Instance");
  const std::string discipline_text = field(row, "Discipline");
  if (discipline_text.empty()) {
    item.discipline = discipline_of_system(item.omniclass_system).value();
  } else {
    item.discipline = parse_enum<Discipline>(discipline_text, Errc::invalid_argument);
  }
  om_properties_problem(field(row, "OM_Properties"), &item.om_properties);
  item.dashboard_support = parse_flag(field(row, kDashboardSupportColumn)).value_or(false);
  return item;
}

AssignResult assign_augment_ids(Inventory inv) {
  AssignResult result;

  // Spaces, by room_tag.
  {
    std::set<std::string> preset;
    for (const auto& s : inv.spaces) {
      if (!s.room_augment_id.empty() && !preset.insert(s.room_augment_id).second) {
        fail(Errc::id_collision, "room augment id " + s.room_augment_id + " preset twice");
      }
    }
    std::vector<std::size_t> order(inv.spaces.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return inv.spaces[a].room_tag < inv.spaces[b].room_tag; });
    int next = 0;
    for (auto i : order) {
      auto& s = inv.spaces[i];
      if (!s.room_augment_id.empty()) continue;
      s.room_augment_id = make_id("SP", ++next, 3);
      if (preset.count(s.room_augment_id)) fail(Errc::id_collision, "generated " + s.room_augment_id + " is preset");
      ++result.assigned;
    }
  }

  auto canonical_type = [](const EquipmentItem& e) {
    try {
      return parse_omniclass(e.omniclass_type).code();
    } catch (const Error&) {
      return normalize_omniclass_text(e.omniclass_type);
    }
  };
  std::vector<std::size_t> order(inv.equipment.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::string> keys;
  keys.reserve(inv.equipment.size());
  for (const auto& e : inv.equipment) keys.push_back(canonical_type(e));
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });

  // Type ids: one per distinct canonical type.
  {
    std::map<std::string, std::string> type_id;  // canonical type -> id
    std::set<std::string> preset;
    for (auto i : order) {
      const auto& e = inv.equipment[i];
      if (e.augment_id_type.empty()) continue;
      preset.insert(e.augment_id_type);
      type_id.try_emplace(keys[i], e.augment_id_type);
    }
    int next = 0;
    for (auto i : order) {
      auto& e = inv.equipment[i];
      if (!e.augment_id_type.empty()) continue;
      auto it = type_id.find(keys[i]);
      if (it == type_id.end()) {
        std::string id = make_id("TY", ++next, 3);
        if (preset.count(id)) fail(Errc::id_collision, "generated " + id + " is preset on another type");
        it = type_id.emplace(keys[i], std::move(id)).first;
        ++result.assigned;
      }
      e.augment_id_type = it->second;
    }
  }

  // Instance ids.
  {
    std::set<std::string> preset;
    for (const auto& e : inv.equipment) {
      if (!e.augment_id_instance.empty() && !preset.insert(e.augment_id_instance).second) {
        fail(Errc::id_collision, "augment id " + e.augment_id_instance + " preset twice");
      }
    }
    int next = 0;
    for (auto i : order) {
      auto& e = inv.equipment[i];
      if (!e.augment_id_instance.empty()) continue;
      e.augment_id_instance = make_id("EQ", ++next, 5);
      if (preset.count(e.augment_id_instance)) {
        fail(Errc::id_collision, "generated " + e.augment_id_instance + " is preset");
      }
      ++result.assigned;
    }
  }

  result.inventory = std::move(inv);
  return result;
}

PreparedInventory prepare_inventory(const TwinState& state, const std::vector<CsvRow>& space_rows,
                                    const std::vector<CsvRow>& equipment_rows) {
  if (space_rows.empty() || trimmed(space_rows[0]) != kSpaceHeader) {
    fail(Errc::header_mismatch, "space file header must be: Room-Category,Room-Name,Room-Tag,Room-AugmentID,Floor-Level");
  }
  if (equipment_rows.empty()) fail(Errc::header_mismatch, "equipment file has no header");
  auto eq_header = trimmed(equipment_rows[0]);
  const bool has_flag = eq_header.size() == kEquipmentHeader.size() + 1 && eq_header.back() == kDashboardSupportColumn;
  if (has_flag) eq_header.pop_back();
  if (eq_header != kEquipmentHeader) {
    fail(Errc::header_mismatch,
         "equipment file header must be: OMNICLASS_SYSTEM,OMNICLASS_TYPE,AugmentID_Type,AugmentID_Instance,"
         "Space_Instance,Discipline,OM_Properties[,Dashboard_Support]");
  }

  PreparedInventory out;
  IngestReport& report = out.report;
  Inventory inv;

  std::set<std::string> file_tags;
  for (std::size_t r = 1; r < space_rows.size(); ++r) {
    const int row_number = static_cast<int>(r) + 1;
    const auto cells = trimmed(space_rows[r]);
    auto violation = [&](std::string rule, std::string message) {
      report.violations.push_back(Violation{"spaces", row_number, std::move(rule), std::move(message), true});
    };
    if (cells.size() != kSpaceHeader.size()) {
      violation("column-count", "expected " + std::to_string(kSpaceHeader.size()) + " columns");
      continue;
    }
    SpaceRecord rec{normalize_omniclass_text(cells[0]), cells[1], cells[2], cells[3], cells[4]};
    if (rec.room_tag.empty()) {
      violation("required-field", "Room-Tag is required");
      continue;
    }
    try {
      parse_space_category(rec.room_category);
    } catch (const Error& e) {
      violation("malformed-category", e.what());
      continue;
    }
    if (!file_tags.insert(rec.room_tag).second) {
      violation("duplicate-tag", "Room-Tag '" + rec.room_tag + "' appears more than once");
      continue;
    }
    if (const SpaceRecord* existing = state.find_space(rec.room_tag);
        existing && (existing->room_name != rec.room_name || existing->room_category != rec.room_category)) {
      violation("duplicate-tag-conflict", "Room-Tag '" + rec.room_tag + "' already holds a different room");
      file_tags.erase(rec.room_tag);
      continue;
    }
    if (rec.room_augment_id.empty()) {
      if (const SpaceRecord* existing = state.find_space(rec.room_tag)) rec.room_augment_id = existing->room_augment_id;
    }
    inv.spaces.push_back(std::move(rec));
  }

  auto space_exists = [&](const std::string& tag) { return file_tags.count(tag) > 0 || state.find_space(tag); };
  const auto& header = equipment_rows[0];
  for (std::size_t r = 1; r < equipment_rows.size(); ++r) {
    const int row_number = static_cast<int>(r) + 1;
    ++report.equipment_rows;
    const auto& cells = equipment_rows[r];
    if (cells.size() != header.size()) {
      report.violations.push_back(Violation{"equipment", row_number, "column-count",
                                            "expected " + std::to_string(header.size()) + " columns", true});
      continue;
    }
    EquipmentRow row;
    for (std::size_t c = 0; c < cells.size(); ++c) row[trim(header[c])] = cells[c];
    auto found = validate_equipment(row, space_exists, row_number);
    const bool rejected = std::any_of(found.begin(), found.end(), [](const Violation& v) { return v.rejects_row; });
    report.violations.insert(report.violations.end(), found.begin(), found.end());
    if (!rejected) inv.equipment.push_back(equipment_from_row(row));
  }

  auto assigned = assign_augment_ids(std::move(inv));
  out.inventory = std::move(assigned.inventory);
  report.assigned_ids = assigned.assigned;
  report.spaces_loaded = static_cast<int>(out.inventory.spaces.size());
  report.equipment_loaded = static_cast<int>(out.inventory.equipment.size());
  return out;
}

void commit_inventory(TwinGraph& graph, const PreparedInventory& prepared) {
  const Timestamp at = graph.now();
  graph.write([&](const TwinState& state, Batch& batch) {
    for (const auto& s : prepared.inventory.spaces) stage_space(state, batch, at, s, false);
  });
  graph.write([&](const TwinState& state, Batch& batch) {
    for (const auto& e : prepared.inventory.equipment) stage_equipment(state, batch, at, e);
  });
}

IngestReport load_inventory(TwinGraph& graph, const std::filesystem::path& space_file,
                            const std::filesystem::path& equipment_file, bool strict) {
  const auto space_rows = read_csv_file(space_file);
  const auto equipment_rows = read_csv_file(equipment_file);
  auto prepared = graph.read(
      [&](const TwinState& state) { return prepare_inventory(state, space_rows, equipment_rows); });
  const bool any_rejected = std::any_of(prepared.report.violations.begin(), prepared.report.violations.end(),
                                        [](const Violation& v) { return v.rejects_row; });
  if (strict && any_rejected) return prepared.report;
  commit_inventory(graph, prepared);
  prepared.report.committed = true;
  return prepared.report;
}

}  // namespace twin
