// Copyright 2026 The twinfm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "inventory.hpp"
#include "telemetry.hpp"

namespace twin {

struct SeedCategory {
  std::string omniclass_type;
  int count = 0;
};

// manifest.json. Category counts cover only items without dashboard_support.
struct SeedManifest {
  int version = 1;
  int space_count = 0;
  std::map<std::string, SeedCategory> equipment_counts;  // category -> type and count
  int sensor_binding_count = 0;                           // sensors without dashboard_support
  int policy_count = 0;
  int headline_total = 0;                                 // the published total, kept for comparison

  int itemized_total() const;
};

SeedManifest manifest_from_json(const json& j);

struct SeedReport {
  IngestReport inventory;
  SeedManifest manifest;
  std::size_t sensors = 0;  // bindings in the fixture set, including dashboard support
  std::size_t policies = 0;
  std::size_t documents = 0;
  std::uint64_t events_appended = 0;
};

// Loads spaces.csv, equipment.csv, sensors.csv, rules.csv, policies.csv,
// documents.csv and manifest.json from `dir`. Everything is validated and
// checked against the manifest before the first commit. Reloading the same
// fixtures appends nothing. Throws ManifestMismatch, HeaderMismatch,
// FileUnreadable, or the ingest error of the first rejected row.
SeedReport load_seed(TwinGraph& graph, const std::filesystem::path& dir, const TelemetryConfig& telemetry);

json to_json(const SeedReport& report);

}  // namespace twin
