// Copyright 2026 The twinfm Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end. Talks to the twin only through the C interface.

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "twin/twin.h"

#ifndef TWINCTL_DEFAULT_CONFIG_DIR
#define TWINCTL_DEFAULT_CONFIG_DIR "config"
#endif
#ifndef TWINCTL_DEFAULT_SEED_DIR
#define TWINCTL_DEFAULT_SEED_DIR "seed"
#endif

namespace {

using json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitStructural = 1;
constexpr int kExitValidation = 2;

std::atomic<bool> stop_requested{false};

void on_signal(int) { stop_requested = true; }

int exit_code_for(twin_status s) {
  switch (s) {
    case TWIN_OK:
      return kExitOk;
    case TWIN_IO:
    case TWIN_INTERNAL:
    case TWIN_CORRUPT_LOG:
    case TWIN_GAP_IN_SEQUENCE:
    case TWIN_UNKNOWN_EVENT_KIND:
    case TWIN_FILE_UNREADABLE:
    case TWIN_HEADER_MISMATCH:
    case TWIN_PORT_IN_USE:
      return kExitStructural;
    default:
      return kExitValidation;
  }
}

int report_failure(twin_status s) {
  std::cerr << "twinctl: " << twin_status_name(s) << ": " << twin_last_error() << "\n";
  return exit_code_for(s);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// Prints and frees a library string.
void emit(char* text) {
  if (!text) return;
  std::cout << text;
  if (*text && text[std::strlen(text) - 1] != '\n') std::cout << "\n";
  twin_string_free(text);
}

struct Globals {
  std::string log = "twin-events.jsonl";
  std::string config_dir = TWINCTL_DEFAULT_CONFIG_DIR;
  std::string building = "pgb";
};

class Twin {
 public:
  explicit Twin(const Globals& g) {
    const json opts{{"event_log", g.log}, {"config_dir", g.config_dir}, {"building_id", g.building}};
    status_ = twin_open(opts.dump().c_str(), &h_);
  }
  ~Twin() { twin_close(h_); }
  Twin(const Twin&) = delete;
  Twin& operator=(const Twin&) = delete;

  twin_status status() const { return status_; }
  twin_handle* get() const { return h_; }

 private:
  twin_handle* h_ = nullptr;
  twin_status status_ = TWIN_OK;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"twinctl: facility digital twin tools"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--log", g.log, "Event log (JSONL)")->capture_default_str();
  app.add_option("--config", g.config_dir, "Directory with telemetry.json and metrics.json")->capture_default_str();
  app.add_option("--building", g.building, "Building id used in ingest topics")->capture_default_str();

  std::string seed_dir = TWINCTL_DEFAULT_SEED_DIR;
  auto* seed = app.add_subcommand("seed", "Load the fixture set into the twin");
  seed->add_option("--dir", seed_dir, "Fixture directory")->capture_default_str();

  std::string spaces_csv, equipment_csv;
  bool strict = false;
  auto* ingest = app.add_subcommand("ingest", "Ingest a space list and an equipment inventory");
  ingest->add_option("--spaces", spaces_csv, "spaces.csv")->required()->check(CLI::ExistingFile);
  ingest->add_option("--equipment", equipment_csv, "equipment.csv")->required()->check(CLI::ExistingFile);
  ingest->add_flag("--strict", strict, "Commit nothing if any row is rejected");

  std::string floor_file, plan_file;
  double min_coverage = 0.95;
  double grid_step = 1.0;
  auto* scanplan = app.add_subcommand("scanplan", "Validate a laser-scan plan against a floor outline");
  scanplan->add_option("--floor", floor_file, "Floor outline (GeoJSON Polygon)")->required()->check(CLI::ExistingFile);
  scanplan->add_option("--plan", plan_file, "Scan plan JSON")->required()->check(CLI::ExistingFile);
  scanplan->add_option("--min-coverage", min_coverage, "Required covered fraction")->capture_default_str();
  scanplan->add_option("--grid-step", grid_step, "Evaluation grid cell size (ft)")->capture_default_str();

  std::uint64_t sim_seed = 0;
  double hours = 1.0;
  double speedup = 0.0;
  std::string start;
  auto* simulate = app.add_subcommand("simulate", "Simulate the bound sensor fleet");
  simulate->add_option("--seed", sim_seed, "Generator seed")->required();
  simulate->add_option("--hours", hours, "Simulated window length")->capture_default_str();
  simulate->add_option("--speedup", speedup, "Simulated seconds per wall second; 0 = as fast as possible")
      ->capture_default_str();
  simulate->add_option("--start", start, "Window start (default: 2024-03-01T00:00:00Z or after the last reading)");

  std::string from, to;
  auto* jobs = app.add_subcommand("jobs", "Maintenance jobs");
  jobs->require_subcommand(1);
  auto* generate = jobs->add_subcommand("generate", "Expand every policy over a date horizon");
  generate->add_option("--from", from, "First date (YYYY-MM-DD)")->required();
  generate->add_option("--to", to, "Last date (YYYY-MM-DD)")->required();

  std::string format = "json";
  std::string report_from, report_to;
  auto* report = app.add_subcommand("report", "Maintenance, health and staff reports");
  report->add_option("--from", report_from, "Window start")->required();
  report->add_option("--to", report_to, "Window end (exclusive)")->required();
  report->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

  std::string host = "127.0.0.1";
  int port = 8080;
  int line_port = -1;
  std::string cors = "*";
  auto* serve = app.add_subcommand("serve", "Serve the REST/SSE API");
  serve->add_option("--host", host)->capture_default_str();
  serve->add_option("--port", port, "HTTP port; 0 picks a free one")->capture_default_str();
  serve->add_option("--line-port", line_port, "Plain-TCP ingest port; -1 disables, 0 picks a free one")
      ->capture_default_str();
  serve->add_option("--cors-origin", cors)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitStructural;
  }

  if (*scanplan) {
    std::string floor_text, plan_text;
    try {
      floor_text = slurp(floor_file);
      plan_text = slurp(plan_file);
    } catch (const std::exception& e) {
      std::cerr << "twinctl: " << e.what() << "\n";
      return kExitStructural;
    }
    char* out = nullptr;
    const twin_status s = twin_scanplan_validate(floor_text.c_str(), plan_text.c_str(), min_coverage, grid_step, &out);
    if (s != TWIN_OK) return report_failure(s);
    const bool passed = json::parse(out).value("passed", false);
    emit(out);
    return passed ? kExitOk : kExitValidation;
  }

  Twin twin(g);
  if (twin.status() != TWIN_OK) return report_failure(twin.status());
  char* out = nullptr;
  twin_status s = TWIN_OK;

  if (*seed) {
    s = twin_load_seed(twin.get(), seed_dir.c_str(), &out);
  } else if (*ingest) {
    s = twin_ingest_inventory(twin.get(), spaces_csv.c_str(), equipment_csv.c_str(), strict ? 1 : 0, &out);
    if (s == TWIN_OK) {
      const json r = json::parse(out);
      emit(out);
      return r.value("rejected_rows", 0) > 0 ? kExitValidation : kExitOk;
    }
  } else if (*simulate) {
    s = twin_simulate(twin.get(), sim_seed, start.empty() ? nullptr : start.c_str(), hours, speedup, &out);
  } else if (*generate) {
    s = twin_jobs_generate(twin.get(), from.c_str(), to.c_str(), &out);
    if (s == TWIN_OK) {
      const json r = json::parse(out);
      twin_string_free(out);
      out = nullptr;
      std::cout << json{{"created", r["created"]}, {"jobs_in_horizon", r["jobs"].size()}}.dump() << "\n";
    }
  } else if (*report) {
    s = twin_report(twin.get(), report_from.c_str(), report_to.c_str(), format.c_str(), &out);
  } else if (*serve) {
    const json opts{{"host", host}, {"port", port}, {"line_port", line_port}, {"cors_allowed_origin", cors}};
    twin_server* server = nullptr;
    s = twin_server_start(twin.get(), opts.dump().c_str(), &server);
    if (s == TWIN_OK) {
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cout << "listening http://" << host << ":" << twin_server_port(server);
      if (twin_server_line_port(server) >= 0) std::cout << " line " << twin_server_line_port(server);
      std::cout << std::endl;
      while (!stop_requested) std::this_thread::sleep_for(std::chrono::milliseconds(100));
      twin_server_stop(server);
    }
  }
  if (s != TWIN_OK) return report_failure(s);
  emit(out);
  return kExitOk;
}
