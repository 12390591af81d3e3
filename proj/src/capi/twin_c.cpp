// Copyright 2026 The twinfm Authors
// SPDX-License-Identifier: Apache-2.0

#include "twin/twin.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include "api.hpp"
#include "inventory.hpp"
#include "maintenance.hpp"
#include "reporting.hpp"
#include "scan_plan.hpp"
#include "seed.hpp"
#include "service.hpp"
#include "telemetry.hpp"

struct twin_handle {
  std::unique_ptr<twin::TwinGraph> graph;
  std::unique_ptr<twin::ApiRouter> router;
};

struct twin_server {
  std::unique_ptr<twin::HttpService> service;
};

namespace {

thread_local std::string last_error;

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <class F>
twin_status guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return TWIN_OK;
  } catch (const twin::Error& e) {
    last_error = e.what();
    return static_cast<twin_status>(e.code());
  } catch (const twin::json::exception& e) {
    last_error = e.what();
    return TWIN_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return TWIN_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return TWIN_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) twin::fail(twin::Errc::invalid_argument, std::string(what) + " must not be NULL");
}

twin::json parse_options(const char* text) {
  if (!text || !*text) return twin::json::object();
  try {
    auto j = twin::json::parse(text);
    if (!j.is_object()) twin::fail(twin::Errc::invalid_argument, "options must be a JSON object");
    return j;
  } catch (const twin::json::parse_error& e) {
    twin::fail(twin::Errc::invalid_argument, std::string("options are not JSON: ") + e.what());
  }
}

void put(char** out, const std::string& s) {
  if (out) *out = dup(s);
}

}  // namespace

extern "C" {

const char* twin_last_error(void) { return last_error.c_str(); }

const char* twin_status_name(int status) {
  const auto name = twin::errc_name(static_cast<twin::Errc>(status));
  return name.data();
}

void twin_string_free(char* s) { std::free(s); }

twin_status twin_open(const char* options_json, twin_handle** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    const auto opts = parse_options(options_json);
    const std::string config_dir = opts.value("config_dir", std::string());
    auto path_of = [&](const char* key, const char* file) {
      if (opts.contains(key) && opts[key].is_string()) return std::filesystem::path(opts[key].get<std::string>());
      if (config_dir.empty()) {
        twin::fail(twin::Errc::invalid_argument, std::string("need \"config_dir\" or \"") + key + "\"");
      }
      return std::filesystem::path(config_dir) / file;
    };
    twin::ApiSettings settings;
    settings.building_id = opts.value("building_id", std::string("pgb"));
    settings.telemetry = twin::load_telemetry_config(path_of("telemetry", "telemetry.json"));
    settings.metrics = twin::load_metric_registry(path_of("metrics", "metrics.json"));

    twin::GraphOptions g;
    if (opts.contains("event_log") && opts["event_log"].is_string()) g.log_path = opts["event_log"].get<std::string>();
    g.snapshot_every = opts.value("snapshot_every", std::uint64_t{5000});
    if (opts.contains("clock_start")) {
      auto clock = std::make_shared<twin::SteppingClock>(twin::parse_time_arg(opts["clock_start"].get<std::string>()),
                                                         std::chrono::seconds(opts.value("clock_step_s", 0)));
      g.clock = [clock] { return (*clock)(); };
    }
    auto h = std::make_unique<twin_handle>();
    try {
      h->graph = std::make_unique<twin::TwinGraph>(std::move(g));
    } catch (const twin::Error& e) {
      // A log that cannot be replayed is corrupt, whatever the first symptom.
      if (e.code() == twin::Errc::gap_in_sequence || e.code() == twin::Errc::unknown_event_kind) {
        twin::fail(twin::Errc::corrupt_log, std::string(twin::errc_name(e.code())) + ": " + e.what());
      }
      throw;
    }
    h->router = std::make_unique<twin::ApiRouter>(*h->graph, std::move(settings));
    *out = h.release();
  });
}

void twin_close(twin_handle* h) { delete h; }

twin_status twin_load_seed(twin_handle* h, const char* seed_dir, char** report_json) {
  return guarded([&] {
    require(h, "handle");
    require(seed_dir, "seed_dir");
    const auto report = twin::load_seed(*h->graph, seed_dir, h->router->settings().telemetry);
    put(report_json, twin::to_json(report).dump());
  });
}

twin_status twin_ingest_inventory(twin_handle* h, const char* spaces_csv, const char* equipment_csv, int strict,
                                  char** report_json) {
  return guarded([&] {
    require(h, "handle");
    require(spaces_csv, "spaces_csv");
    require(equipment_csv, "equipment_csv");
    const auto report = twin::load_inventory(*h->graph, spaces_csv, equipment_csv, strict != 0);
    put(report_json, twin::json(report).dump());
  });
}

twin_status twin_scanplan_validate(const char* floor_geojson, const char* plan_json, double min_coverage,
                                   double grid_step, char** report_json) {
  return guarded([&] {
    require(floor_geojson, "floor_geojson");
    require(plan_json, "plan_json");
    twin::json floor_j;
    twin::json plan_j;
    try {
      floor_j = twin::json::parse(floor_geojson);
    } catch (const twin::json::parse_error& e) {
      twin::fail(twin::Errc::invalid_floor, std::string("floor is not JSON: ") + e.what());
    }
    try {
      plan_j = twin::json::parse(plan_json);
    } catch (const twin::json::parse_error& e) {
      twin::fail(twin::Errc::invalid_plan, std::string("plan is not JSON: ") + e.what());
    }
    const auto report = twin::scan::validate_plan(twin::scan::floor_from_geojson(floor_j),
                                                  twin::scan::plan_from_json(plan_j), min_coverage, grid_step);
    put(report_json, twin::scan::report_to_json(report).dump());
  });
}

twin_status twin_simulate(twin_handle* h, uint64_t seed, const char* start, double hours, double speedup,
                          char** result_json) {
  return guarded([&] {
    require(h, "handle");
    if (!(hours > 0)) twin::fail(twin::Errc::invalid_argument, "hours must be positive");
    twin::SimulationOptions o;
    o.seed = seed;
    o.start = start && *start ? twin::parse_time_arg(start)
                              : h->graph->read([](const twin::TwinState& s) { return twin::default_simulation_start(s); });
    o.window_s = static_cast<std::int64_t>(hours * 3600.0 + 0.5);
    o.speedup = speedup;
    const auto r = twin::run_simulation(*h->graph, o);
    put(result_json, twin::json{{"start", twin::format_rfc3339(o.start)},
                                {"window_s", o.window_s},
                                {"readings", r.readings},
                                {"alarms_raised", r.alarms_raised},
                                {"alarms_cleared", r.alarms_cleared},
                                {"first_seq", r.first_seq},
                                {"last_seq", r.last_seq}}
                         .dump());
  });
}

twin_status twin_jobs_generate(twin_handle* h, const char* from, const char* to, char** result_json) {
  return guarded([&] {
    require(h, "handle");
    require(from, "from");
    require(to, "to");
    const auto r = twin::generate_all_jobs(*h->graph, twin::parse_date(from), twin::parse_date(to));
    put(result_json, twin::json{{"created", r.created}, {"jobs", r.jobs}}.dump());
  });
}

twin_status twin_report(twin_handle* h, const char* from, const char* to, const char* format, char** out) {
  return guarded([&] {
    require(h, "handle");
    require(from, "from");
    require(to, "to");
    const std::string fmt = format ? format : "json";
    if (fmt != "json" && fmt != "csv") twin::fail(twin::Errc::invalid_argument, "format must be json or csv");
    const twin::ReportWindow w{twin::parse_time_arg(from), twin::parse_time_arg(to), 3600};
    const auto state = h->graph->snapshot();
    put(out, fmt == "json" ? twin::full_report(*state, w).dump(2) : twin::full_report_csv(*state, w));
  });
}

twin_status twin_ingest_message(twin_handle* h, const char* topic, const char* payload, char** reading_json) {
  return guarded([&] {
    require(h, "handle");
    require(topic, "topic");
    require(payload, "payload");
    const auto r = twin::ingest(*h->graph, h->router->settings().building_id, topic, payload);
    put(reading_json, twin::json(r).dump());
  });
}

twin_status twin_request(twin_handle* h, const char* method, const char* target, const char* body, int* http_status,
                         char** response_body) {
  return guarded([&] {
    require(h, "handle");
    require(method, "method");
    require(target, "target");
    const auto res = h->router->handle(twin::make_request(method, target, body ? body : ""));
    if (http_status) *http_status = res.status;
    put(response_body, res.body);
  });
}

twin_status twin_server_start(twin_handle* h, const char* options_json, twin_server** out) {
  return guarded([&] {
    require(h, "handle");
    require(out, "out");
    *out = nullptr;
    const auto opts = parse_options(options_json);
    twin::ServerOptions o;
    o.host = opts.value("host", o.host);
    o.port = opts.value("port", o.port);
    o.line_port = opts.value("line_port", o.line_port);
    o.cors_allowed_origin = opts.value("cors_allowed_origin", o.cors_allowed_origin);
    o.keepalive_ms = opts.value("keepalive_ms", o.keepalive_ms);
    o.stream_queue = opts.value("stream_queue", o.stream_queue);
    auto s = std::make_unique<twin_server>();
    s->service = std::make_unique<twin::HttpService>(*h->router, o);
    s->service->start();
    *out = s.release();
  });
}

int twin_server_port(const twin_server* s) { return s ? s->service->port() : -1; }
int twin_server_line_port(const twin_server* s) { return s ? s->service->line_port() : -1; }

void twin_server_stop(twin_server* s) {
  if (!s) return;
  s->service->stop();
  delete s;
}

}  // extern "C"
