// Copyright 2026 The twinfm Authors
// SPDX-License-Identifier: Apache-2.0

#include "seed.hpp"

#include <algorithm>

#include "graph_ops.hpp"
#include "maintenance.hpp"
#include "omniclass.hpp"

namespace twin {

namespace {

using Table = std::vector<std::map<std::string, std::string>>;

Table read_table(const std::filesystem::path& file, const std::vector<std::string>& required) {
  const auto rows = read_csv_file(file);
  if (rows.empty()) fail(Errc::header_mismatch, file.filename().string() + " has no header");
  const CsvRow& header = rows.front();
  for (const auto& col : required) {
    if (std::find(header.begin(), header.end(), col) == header.end()) {
      fail(Errc::header_mismatch, file.filename().string() + " lacks column " + col);
    }
  }
  Table out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != header.size()) {
      fail(Errc::header_mismatch, file.filename().string() + " row " + std::to_string(r + 1) + " has " +
                                      std::to_string(rows[r].size()) + " fields, expected " +
                                      std::to_string(header.size()));
    }
    std::map<std::string, std::string> row;
    for (std::size_t c = 0; c < header.size(); ++c) row[header[c]] = rows[r][c];
    out.push_back(std::move(row));
  }
  return out;
}

double to_number(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    fail(Errc::invalid_argument, what + ": not a number '" + text + "'");
  }
}

int to_int(const std::string& text, const std::string& what) {
  const double v = to_number(text, what);
  if (v != static_cast<int>(v)) fail(Errc::invalid_argument, what + ": not an integer '" + text + "'");
  return static_cast<int>(v);
}

bool to_flag(const std::string& text) { return text == "true" || text == "1" || text == "yes"; }

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string::npos ? pos : pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

Errc code_for_rule(const std::string& rule) {
  if (rule == "malformed-code") return Errc::malformed_code;
  if (rule == "malformed-category") return Errc::malformed_category;
  if (rule == "dangling-space") return Errc::unknown_space;
  if (rule == "duplicate-tag-conflict") return Errc::duplicate_tag_conflict;
  return Errc::invalid_argument;
}

// Items of a type, by augment id.
std::vector<const EquipmentItem*> items_of_type(const std::vector<EquipmentItem>& items, const std::string& type) {
  std::vector<const EquipmentItem*> out;
  for (const auto& item : items) {
    if (same_omniclass_code(item.omniclass_type, type)) out.push_back(&item);
  }
  std::sort(out.begin(), out.end(), [](const EquipmentItem* a, const EquipmentItem* b) {
    return a->augment_id_instance < b->augment_id_instance;
  });
  return out;
}

struct PlannedBinding {
  SensorSpec spec;
  AlarmRule rule;
};

}  // namespace

int SeedManifest::itemized_total() const {
  int total = 0;
  for (const auto& [name, c] : equipment_counts) total += c.count;
  return total;
}

SeedManifest manifest_from_json(const json& j) {
  SeedManifest m;
  try {
    m.version = j.at("version").get<int>();
    m.space_count = j.at("space_count").get<int>();
    for (const auto& [name, c] : j.at("equipment_counts").items()) {
      m.equipment_counts[name] = SeedCategory{c.at("omniclass_type").get<std::string>(), c.at("count").get<int>()};
    }
    m.sensor_binding_count = j.at("sensor_binding_count").get<int>();
    m.policy_count = j.at("policy_count").get<int>();
    m.headline_total = j.value("headline_total", 0);
  } catch (const json::exception& e) {
    fail(Errc::manifest_mismatch, std::string("manifest.json: ") + e.what());
  }
  return m;
}

SeedReport load_seed(TwinGraph& graph, const std::filesystem::path& dir, const TelemetryConfig& telemetry) {
  SeedReport report;
  const std::uint64_t seq_before = graph.last_seq();
  try {
    report.manifest = manifest_from_json(json::parse(read_text_file(dir / "manifest.json")));
  } catch (const json::parse_error& e) {
    fail(Errc::manifest_mismatch, std::string("manifest.json: ") + e.what());
  }
  const SeedManifest& manifest = report.manifest;

  const auto space_rows = read_csv_file(dir / "spaces.csv");
  const auto equipment_rows = read_csv_file(dir / "equipment.csv");
  auto prepared =
      graph.read([&](const TwinState& state) { return prepare_inventory(state, space_rows, equipment_rows); });
  for (const auto& v : prepared.report.violations) {
    if (v.rejects_row) {
      fail(code_for_rule(v.rule), v.file + ".csv row " + std::to_string(v.row) + " (" + v.rule + "): " + v.message);
    }
  }
  const auto& items = prepared.inventory.equipment;

  // Manifest: counts of modeled (non dashboard-support) items per category.
  if (static_cast<int>(prepared.inventory.spaces.size()) != manifest.space_count) {
    fail(Errc::manifest_mismatch, "manifest lists " + std::to_string(manifest.space_count) + " spaces, fixtures have " +
                                      std::to_string(prepared.inventory.spaces.size()));
  }
  std::size_t categorized = 0;
  for (const auto& [name, category] : manifest.equipment_counts) {
    int n = 0;
    for (const EquipmentItem* item : items_of_type(items, category.omniclass_type)) n += item->dashboard_support ? 0 : 1;
    if (n != category.count) {
      fail(Errc::manifest_mismatch, "category " + name + ": manifest " + std::to_string(category.count) +
                                        ", fixtures " + std::to_string(n));
    }
    categorized += static_cast<std::size_t>(n);
  }
  const auto modeled = static_cast<std::size_t>(
      std::count_if(items.begin(), items.end(), [](const EquipmentItem& e) { return !e.dashboard_support; }));
  if (modeled != categorized) {
    fail(Errc::manifest_mismatch, std::to_string(modeled - categorized) + " modeled items fall in no manifest category");
  }

  // Sensor bindings planned from the prepared inventory.
  std::vector<PlannedBinding> bindings;
  for (const auto& row : read_table(dir / "sensors.csv", {"omniclass_type", "kind", "dashboard_support", "max_items"})) {
    const SensorKind kind = parse_enum<SensorKind>(row.at("kind"), Errc::invalid_sensor_spec);
    auto targets = items_of_type(items, row.at("omniclass_type"));
    if (targets.empty()) fail(Errc::unknown_equipment, "sensors.csv: no equipment of type " + row.at("omniclass_type"));
    if (!row.at("max_items").empty()) {
      targets.resize(std::min(targets.size(), static_cast<std::size_t>(to_int(row.at("max_items"), "max_items"))));
    }
    for (const EquipmentItem* item : targets) {
      SensorSpec spec = telemetry.default_spec(item->augment_id_instance, kind);
      auto opt = [&](const char* col) -> const std::string* {
        auto it = row.find(col);
        return it == row.end() || it->second.empty() ? nullptr : &it->second;
      };
      if (auto v = opt("unit")) spec.unit = *v;
      if (auto v = opt("interval_s")) spec.interval_s = to_int(*v, "interval_s");
      if (auto v = opt("low")) spec.low = to_number(*v, "low");
      if (auto v = opt("high")) spec.high = to_number(*v, "high");
      if (auto v = opt("baseline")) spec.sim_profile.baseline = to_number(*v, "baseline");
      if (auto v = opt("diurnal_amplitude")) spec.sim_profile.diurnal_amplitude = to_number(*v, "diurnal_amplitude");
      if (auto v = opt("noise_sigma")) spec.sim_profile.noise_sigma = to_number(*v, "noise_sigma");
      spec.dashboard_support = to_flag(row.at("dashboard_support"));
      validate_sensor_spec(spec);
      bindings.push_back({spec, default_rule(spec, telemetry.alarms)});
    }
  }
  for (const auto& row : read_table(dir / "rules.csv", {"omniclass_type", "kind", "low", "high", "raise_debounce",
                                                        "clear_debounce"})) {
    const SensorKind kind = parse_enum<SensorKind>(row.at("kind"), Errc::invalid_sensor_spec);
    bool matched = false;
    for (auto& b : bindings) {
      const EquipmentItem* item = nullptr;
      for (const auto& e : items) {
        if (e.augment_id_instance == b.spec.bound_equipment) item = &e;
      }
      if (b.spec.kind != kind || !item || !same_omniclass_code(item->omniclass_type, row.at("omniclass_type"))) continue;
      b.rule.low = to_number(row.at("low"), "low");
      b.rule.high = to_number(row.at("high"), "high");
      b.rule.raise_debounce = to_int(row.at("raise_debounce"), "raise_debounce");
      b.rule.clear_debounce = to_int(row.at("clear_debounce"), "clear_debounce");
      validate_rule(b.rule);
      matched = true;
    }
    if (!matched) fail(Errc::unknown_equipment, "rules.csv: no sensor matches " + row.at("omniclass_type"));
  }
  const auto counted_sensors =
      std::count_if(bindings.begin(), bindings.end(), [](const PlannedBinding& b) { return !b.spec.dashboard_support; });
  if (counted_sensors != manifest.sensor_binding_count) {
    fail(Errc::manifest_mismatch, "manifest lists " + std::to_string(manifest.sensor_binding_count) +
                                      " sensor bindings, fixtures define " + std::to_string(counted_sensors));
  }

  std::vector<MaintenancePolicy> policies;
  for (const auto& row : read_table(dir / "policies.csv", {"policy_id", "target_kind", "target", "tasks",
                                                           "frequency_days", "start_date", "resources"})) {
    MaintenancePolicy p;
    p.policy_id = row.at("policy_id");
    p.target_kind = parse_enum<PolicyTarget>(row.at("target_kind"), Errc::invalid_argument);
    p.target = p.target_kind == PolicyTarget::equipment_type ? normalize_omniclass_text(row.at("target"))
                                                             : row.at("target");
    p.tasks = split(row.at("tasks"), '|');
    p.frequency_days = to_int(row.at("frequency_days"), "frequency_days");
    p.start_date = parse_date(row.at("start_date"));
    for (const auto& r : split(row.at("resources"), '|')) {
      const auto colon = r.rfind(':');
      p.resources.push_back(colon == std::string::npos
                                ? Resource{r, 1.0}
                                : Resource{r.substr(0, colon), to_number(r.substr(colon + 1), "resource quantity")});
    }
    if (p.frequency_days < 1) fail(Errc::bad_frequency, "policy " + p.policy_id + " has frequency < 1");
    policies.push_back(std::move(p));
  }
  if (static_cast<int>(policies.size()) != manifest.policy_count) {
    fail(Errc::manifest_mismatch, "manifest lists " + std::to_string(manifest.policy_count) + " policies, fixtures have " +
                                      std::to_string(policies.size()));
  }

  struct PlannedDocument {
    std::string equipment;
    DocumentMeta meta;
  };
  std::vector<PlannedDocument> documents;
  const auto doc_file = dir / "documents.csv";
  if (std::filesystem::exists(doc_file)) {
    for (const auto& row : read_table(doc_file, {"doc_id", "omniclass_type", "kind", "title", "uri", "uploaded_at"})) {
      const auto targets = items_of_type(items, row.at("omniclass_type"));
      if (targets.empty()) fail(Errc::unknown_equipment, "documents.csv: no equipment of type " + row.at("omniclass_type"));
      DocumentMeta meta{row.at("doc_id"), parse_enum<DocumentKind>(row.at("kind"), Errc::invalid_argument),
                        row.at("title"), row.at("uri"), parse_rfc3339(row.at("uploaded_at"))};
      documents.push_back({targets.front()->augment_id_instance, std::move(meta)});
    }
  }

  // Everything validated; commit.
  commit_inventory(graph, prepared);
  const Timestamp at = graph.now();
  graph.write([&](const TwinState& state, Batch& batch) {
    for (const auto& b : bindings) stage_binding(state, batch, at, b.spec, b.rule, telemetry.alarms);
  });
  for (const auto& p : policies) create_policy(graph, p);
  graph.write([&](const TwinState& state, Batch& batch) {
    for (const auto& d : documents) {
      if (auto it = state.documents.find(d.meta.doc_id); it != state.documents.end()) {
        const EquipmentItem* owner = state.find_equipment(d.equipment);
        const bool attached = owner && std::find(owner->document_ids.begin(), owner->document_ids.end(),
                                                 d.meta.doc_id) != owner->document_ids.end();
        if (it->second == d.meta && attached) continue;
        fail(Errc::invalid_argument, "document " + d.meta.doc_id + " already exists with different content");
      }
      stage_document(state, batch, at, d.equipment, d.meta);
    }
  });

  report.inventory = prepared.report;
  report.inventory.committed = true;
  report.sensors = bindings.size();
  report.policies = policies.size();
  report.documents = documents.size();
  report.events_appended = graph.last_seq() - seq_before;
  return report;
}

json to_json(const SeedReport& r) {
  json counts = json::object();
  for (const auto& [name, c] : r.manifest.equipment_counts) counts[name] = c.count;
  return json{{"inventory", r.inventory},
              {"equipment_counts", counts},
              {"itemized_total", r.manifest.itemized_total()},
              {"headline_total", r.manifest.headline_total},
              {"sensors", r.sensors},
              {"policies", r.policies},
              {"documents", r.documents},
              {"events_appended", r.events_appended}};
}

}  // namespace twin
