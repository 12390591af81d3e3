/*
 * Copyright 2026 The twinfm Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the twinfm facility digital twin.
 *
 * Conventions:
 *  - Every function returning twin_status reports failure through the status
 *    value; twin_last_error() then holds a message for the calling thread.
 *  - Strings returned through char** out-parameters are UTF-8 JSON (or CSV
 *    where stated), allocated by the library, and must be released with
 *    twin_string_free(). They are only written on success.
 *  - Handles are opaque. A twin_handle may be shared between threads.
 */
#ifndef TWIN_TWIN_H
#define TWIN_TWIN_H

#include <stdint.h>

#if defined(_WIN32)
#define TWIN_API __declspec(dllexport)
#else
#define TWIN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Stable numeric codes; new codes are only ever appended. */
typedef enum twin_status {
  TWIN_OK = 0,
  TWIN_INVALID_ARGUMENT = 1,
  TWIN_IO = 2,
  TWIN_INTERNAL = 3,
  TWIN_MALFORMED_CATEGORY = 10,
  TWIN_DUPLICATE_TAG_CONFLICT = 11,
  TWIN_UNKNOWN_SPACE = 12,
  TWIN_UNKNOWN_EQUIPMENT = 13,
  TWIN_GAP_IN_SEQUENCE = 14,
  TWIN_UNKNOWN_EVENT_KIND = 15,
  TWIN_CORRUPT_LOG = 16,
  TWIN_MALFORMED_CODE = 20,
  TWIN_ID_COLLISION = 21,
  TWIN_FILE_UNREADABLE = 22,
  TWIN_HEADER_MISMATCH = 23,
  TWIN_MANIFEST_MISMATCH = 24,
  TWIN_DEGENERATE_FLOOR = 30,
  TWIN_INVALID_FLOOR = 31,
  TWIN_INVALID_PLAN = 32,
  TWIN_INTERVAL_OUT_OF_RANGE = 40,
  TWIN_INVALID_SENSOR_SPEC = 41,
  TWIN_OFF_GRID_TIMESTAMP = 42,
  TWIN_NO_SENSORS = 43,
  TWIN_UNBOUND_SENSOR = 44,
  TWIN_MALFORMED_PAYLOAD = 45,
  TWIN_UNIT_MISMATCH = 46,
  TWIN_DUPLICATE_BINDING = 47,
  TWIN_MALFORMED_TOPIC = 48,
  TWIN_SENSOR_MISMATCH = 50,
  TWIN_UNKNOWN_ALARM = 51,
  TWIN_ILLEGAL_STATE = 52,
  TWIN_UNRESOLVED_TARGET = 60,
  TWIN_BAD_FREQUENCY = 61,
  TWIN_INVERTED_HORIZON = 62,
  TWIN_EMPTY_DESCRIPTION = 63,
  TWIN_ILLEGAL_TRANSITION = 64,
  TWIN_UNKNOWN_JOB = 65,
  TWIN_EMPTY_COMMENT = 66,
  TWIN_POLICY_CONFLICT = 67,
  TWIN_INVERTED_WINDOW = 70,
  TWIN_UNKNOWN_SYSTEM = 71,
  TWIN_UNKNOWN_METRIC = 72,
  TWIN_PORT_IN_USE = 80,
  TWIN_BAD_FILTER = 81,
  TWIN_NOT_FOUND = 82
} twin_status;

typedef struct twin_handle twin_handle;
typedef struct twin_server twin_server;

/* Last error message on this thread; empty after a success. Never NULL. */
TWIN_API const char* twin_last_error(void);
/* "CorruptLog", "IllegalTransition", ...; "Unknown" for other values. */
TWIN_API const char* twin_status_name(int status);
TWIN_API void twin_string_free(char* s);

/*
 * options_json keys:
 *   "event_log"       path of the JSONL event log; omitted or null keeps the twin in memory
 *   "config_dir"      directory holding telemetry.json and metrics.json
 *   "telemetry"       explicit telemetry.json path (overrides config_dir)
 *   "metrics"         explicit metrics.json path (overrides config_dir)
 *   "building_id"     topic segment for live ingest (default "pgb")
 *   "snapshot_every"  events between snapshots (default 5000, 0 disables)
 *   "clock_start", "clock_step_s"  fixed stepping clock for scripted runs
 * Replays the log on open; fails with TWIN_CORRUPT_LOG or TWIN_GAP_IN_SEQUENCE.
 */
TWIN_API twin_status twin_open(const char* options_json, twin_handle** out);
TWIN_API void twin_close(twin_handle* h);

/* Loads the fixture directory; report as JSON. */
TWIN_API twin_status twin_load_seed(twin_handle* h, const char* seed_dir, char** report_json);

/* Ingest report as JSON; rejected rows are reported, not failures. */
TWIN_API twin_status twin_ingest_inventory(twin_handle* h, const char* spaces_csv, const char* equipment_csv,
                                           int strict, char** report_json);

/* Stateless. min_coverage in (0, 1]; grid_step in feet. */
TWIN_API twin_status twin_scanplan_validate(const char* floor_geojson, const char* plan_json, double min_coverage,
                                            double grid_step, char** report_json);

/* start: RFC 3339 or date, or NULL for the default start. speedup 0 = unpaced. */
TWIN_API twin_status twin_simulate(twin_handle* h, uint64_t seed, const char* start, double hours, double speedup,
                                   char** result_json);

/* Dates as YYYY-MM-DD, closed horizon, all policies. */
TWIN_API twin_status twin_jobs_generate(twin_handle* h, const char* from, const char* to, char** result_json);

/* format: "json" or "csv"; window [from, to). */
TWIN_API twin_status twin_report(twin_handle* h, const char* from, const char* to, const char* format, char** out);

/* One pub/sub message: topic twin/<building>/<augment_id>/<kind>. */
TWIN_API twin_status twin_ingest_message(twin_handle* h, const char* topic, const char* payload, char** reading_json);

/* In-process REST call. target is path plus optional query. Application
 * errors arrive as HTTP statuses with an error body and return TWIN_OK. */
TWIN_API twin_status twin_request(twin_handle* h, const char* method, const char* target, const char* body,
                                  int* http_status, char** response_body);

/*
 * options_json keys: "host" (default 127.0.0.1), "port" (0 = any free port),
 * "line_port" (-1 disables the TCP line listener, 0 = any free port),
 * "cors_allowed_origin", "keepalive_ms", "stream_queue".
 * The server must be stopped before its twin is closed.
 */
TWIN_API twin_status twin_server_start(twin_handle* h, const char* options_json, twin_server** out);
TWIN_API int twin_server_port(const twin_server* s);
TWIN_API int twin_server_line_port(const twin_server* s);
TWIN_API void twin_server_stop(twin_server* s);

#ifdef __cplusplus
}
#endif

#endif /* TWIN_TWIN_H */
