// Copyright 2026 The twinfm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>
#include <string_view>

#include "reporting.hpp"
#include "telemetry.hpp"

namespace twin {

struct ApiRequest {
  std::string method;  // GET, POST
  std::string path;    // without query string
  std::map<std::string, std::string> query;
  std::string body;
};

struct ApiResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

// "/jobs?status=open&role=technician" -> path and decoded query.
ApiRequest make_request(std::string method, std::string_view target, std::string body = {});

int http_status(Errc code);

// {"error": "<CodeName>", "message": "..."}
ApiResponse error_response(Errc code, const std::string& message);

struct ApiSettings {
  std::string building_id = "pgb";
  TelemetryConfig telemetry;
  MetricRegistry metrics;
};

// Transport-free REST surface. GET handlers are pure projections of one
// state snapshot; every successful POST maps to one operation. A 4xx
// response has appended no events.
class ApiRouter {
 public:
  ApiRouter(TwinGraph& graph, ApiSettings settings);

  ApiResponse handle(const ApiRequest& request) const;

  const ApiSettings& settings() const { return settings_; }
  TwinGraph& graph() const { return graph_; }

 private:
  ApiResponse route(const ApiRequest& request) const;

  TwinGraph& graph_;
  ApiSettings settings_;
};

}  // namespace twin
