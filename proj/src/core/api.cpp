// Copyright 2026 The twinfm Authors
// SPDX-License-Identifier: Apache-2.0

#include "api.hpp"

#include <charconv>
#include <vector>

#include "alarms.hpp"
#include "graph_ops.hpp"
#include "maintenance.hpp"

namespace twin {

namespace {

std::string url_decode(std::string_view in) {
  std::string out;
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (in[i] == '+') {
      out += ' ';
    } else if (in[i] == '%' && i + 2 < in.size()) {
      int v = 0;
      auto [p, ec] = std::from_chars(in.data() + i + 1, in.data() + i + 3, v, 16);
      if (ec == std::errc() && p == in.data() + i + 3) {
        out += static_cast<char>(v);
        i += 2;
      } else {
        out += in[i];
      }
    } else {
      out += in[i];
    }
  }
  return out;
}

std::vector<std::string> segments(std::string_view path) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < path.size()) {
    while (i < path.size() && path[i] == '/') ++i;
    const std::size_t start = i;
    while (i < path.size() && path[i] != '/') ++i;
    if (i > start) out.push_back(url_decode(path.substr(start, i - start)));
  }
  return out;
}

ApiResponse ok(const json& body, int status = 200) { return ApiResponse{status, body.dump(), "application/json"}; }

json parse_body(const std::string& body) {
  try {
    json j = json::parse(body.empty() ? std::string("{}") : body);
    if (!j.is_object()) fail(Errc::malformed_payload, "request body must be a JSON object");
    return j;
  } catch (const json::parse_error& e) {
    fail(Errc::malformed_payload, std::string("request body is not JSON: ") + e.what());
  }
}

std::optional<std::string> param(const ApiRequest& r, const std::string& name) {
  auto it = r.query.find(name);
  if (it == r.query.end() || it->second.empty()) return std::nullopt;
  return it->second;
}

Timestamp required_time(const ApiRequest& r, const std::string& name) {
  auto v = param(r, name);
  if (!v) fail(Errc::bad_filter, "query parameter '" + name + "' is required");
  try {
    return parse_time_arg(*v);
  } catch (const Error& e) {
    fail(Errc::bad_filter, name + ": " + e.what());
  }
}

ReportWindow window_of(const ApiRequest& r) {
  ReportWindow w{required_time(r, "from"), required_time(r, "to"), 3600};
  if (auto b = param(r, "bucket")) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(b->data(), b->data() + b->size(), v);
    if (ec != std::errc() || p != b->data() + b->size()) fail(Errc::bad_filter, "bucket must be an integer (seconds)");
    w.bucket_s = v;
  }
  return w;
}

template <NamedEnum E>
std::optional<E> enum_param(const ApiRequest& r, const std::string& name) {
  auto v = param(r, name);
  if (!v) return std::nullopt;
  auto e = enum_from_string<E>(*v);
  if (!e) fail(Errc::bad_filter, "unknown " + name + " '" + *v + "'");
  return e;
}

json equipment_view(const TwinState& state, const EquipmentItem& item) {
  json j = item;
  json sensors = json::array();
  for (const SensorSpec* s : state.sensors_of(item.augment_id_instance)) sensors.push_back(s->sensor_id);
  j["sensors"] = sensors;
  json latest_readings = json::object();
  for (const auto& [kind, reading] : latest(state, item.augment_id_instance)) {
    latest_readings[std::string(to_string(kind))] = reading;
  }
  j["latest"] = latest_readings;
  return j;
}

json sensor_view(const TwinState& state, const SensorSpec& spec) {
  json j = spec;
  j["rule"] = state.rules.at(spec.sensor_id);
  return j;
}

struct NotRouted {};

}  // namespace

ApiRequest make_request(std::string method, std::string_view target, std::string body) {
  ApiRequest r;
  r.method = std::move(method);
  r.body = std::move(body);
  const auto q = target.find('?');
  r.path = std::string(target.substr(0, q));
  if (q != std::string_view::npos) {
    std::string_view rest = target.substr(q + 1);
    while (!rest.empty()) {
      const auto amp = rest.find('&');
      const std::string_view pair = rest.substr(0, amp);
      const auto eq = pair.find('=');
      if (!pair.empty()) {
        r.query[url_decode(pair.substr(0, eq))] =
            eq == std::string_view::npos ? std::string() : url_decode(pair.substr(eq + 1));
      }
      if (amp == std::string_view::npos) break;
      rest = rest.substr(amp + 1);
    }
  }
  return r;
}

int http_status(Errc code) {
  switch (code) {
    case Errc::not_found:
    case Errc::unknown_space:
    case Errc::unknown_equipment:
    case Errc::unknown_alarm:
    case Errc::unknown_job:
    case Errc::unknown_system:
    case Errc::unknown_metric:
      return 404;
    case Errc::duplicate_tag_conflict:
    case Errc::id_collision:
    case Errc::duplicate_binding:
    case Errc::illegal_state:
    case Errc::illegal_transition:
    case Errc::policy_conflict:
      return 409;
    case Errc::io:
    case Errc::internal:
    case Errc::corrupt_log:
    case Errc::gap_in_sequence:
    case Errc::unknown_event_kind:
    case Errc::port_in_use:
      return 500;
    default:
      return 400;
  }
}

ApiResponse error_response(Errc code, const std::string& message) {
  return ApiResponse{http_status(code), json{{"error", errc_name(code)}, {"message", message}}.dump(),
                     "application/json"};
}

ApiRouter::ApiRouter(TwinGraph& graph, ApiSettings settings) : graph_(graph), settings_(std::move(settings)) {}

ApiResponse ApiRouter::handle(const ApiRequest& request) const {
  try {
    return route(request);
  } catch (const NotRouted&) {
    return error_response(Errc::not_found, "no route for " + request.method + " " + request.path);
  } catch (const Error& e) {
    return error_response(e.code(), e.what());
  } catch (const json::exception& e) {
    return error_response(Errc::malformed_payload, e.what());
  } catch (const std::exception& e) {
    return error_response(Errc::internal, e.what());
  }
}

ApiResponse ApiRouter::route(const ApiRequest& r) const {
  const auto seg = segments(r.path);
  const bool get = r.method == "GET";
  const bool post = r.method == "POST";
  if (!get && !post) return error_response(Errc::invalid_argument, "method " + r.method + " not supported");
  auto is = [&](std::initializer_list<const char*> pattern) {
    if (seg.size() != pattern.size()) return false;
    std::size_t i = 0;
    for (const char* p : pattern) {
      if (p != nullptr && seg[i] != p) return false;
      ++i;
    }
    return true;
  };
  constexpr const char* any = nullptr;

  if (seg.empty() || is({"health"})) {
    if (!get) throw NotRouted{};
    return ok(json{{"status", "ok"}, {"last_seq", graph_.last_seq()}, {"building_id", settings_.building_id}});
  }

  // Spaces.
  if (is({"spaces"})) {
    if (get) {
      return graph_.read([&](const TwinState& s) {
        json out = json::array();
        for (const auto& [tag, rec] : s.spaces) out.push_back(rec);
        return ok(out);
      });
    }
    const json body = parse_body(r.body);
    SpaceRecord rec = body.get<SpaceRecord>();
    const auto res = upsert_space(graph_, rec, param(r, "overwrite") == "true");
    return graph_.read([&](const TwinState& s) { return ok(*s.find_space(res.key), res.changed ? 201 : 200); });
  }

  // Equipment.
  if (is({"equipment"})) {
    if (get) {
      std::optional<Selector> selector;
      if (auto v = param(r, "discipline")) selector = Selector{Selector::By::discipline, *v};
      if (auto v = param(r, "room")) selector = Selector{Selector::By::room_tag, *v};
      if (auto v = param(r, "type")) selector = Selector{Selector::By::omniclass_prefix, *v};
      if (selector && selector->by == Selector::By::discipline && !enum_from_string<Discipline>(selector->value)) {
        fail(Errc::bad_filter, "unknown discipline '" + selector->value + "'");
      }
      const auto support = param(r, "dashboard_support");
      return graph_.read([&](const TwinState& s) {
        json out = json::array();
        auto keep = [&](const EquipmentItem& e) {
          return !support || (*support == "true") == e.dashboard_support;
        };
        if (selector) {
          for (const auto& e : query(s, *selector)) {
            if (keep(e)) out.push_back(e);
          }
        } else {
          for (const auto& [id, e] : s.equipment) {
            if (keep(e)) out.push_back(e);
          }
        }
        return ok(out);
      });
    }
    EquipmentItem item = parse_body(r.body).get<EquipmentItem>();
    const auto res = upsert_equipment(graph_, item);
    return graph_.read([&](const TwinState& s) {
      json out = *s.find_equipment(res.key);
      if (!res.warnings.empty()) out["warnings"] = res.warnings;
      return ok(out, res.changed ? 201 : 200);
    });
  }
  if (is({"equipment", any})) {
    if (!get) throw NotRouted{};
    return graph_.read([&](const TwinState& s) {
      const EquipmentItem* item = s.find_equipment(seg[1]);
      if (!item) fail(Errc::unknown_equipment, "unknown equipment " + seg[1]);
      return ok(equipment_view(s, *item));
    });
  }
  if (is({"equipment", any, "documents"})) {
    if (get) {
      return graph_.read([&](const TwinState& s) {
        const EquipmentItem* item = s.find_equipment(seg[1]);
        if (!item) fail(Errc::unknown_equipment, "unknown equipment " + seg[1]);
        json out = json::array();
        for (const auto& id : item->document_ids) out.push_back(s.documents.at(id));
        return ok(out);
      });
    }
    const json body = parse_body(r.body);
    DocumentMeta meta;
    meta.kind = body.contains("kind") ? body["kind"].get<DocumentKind>() : DocumentKind::other;
    meta.title = require_string(body, "title");
    meta.uri_or_path = body.value("uri_or_path", std::string());
    if (body.contains("uploaded_at")) meta.uploaded_at = timestamp_from_json(body["uploaded_at"]);
    const std::string id = attach_document(graph_, seg[1], meta);
    return graph_.read([&](const TwinState& s) { return ok(s.documents.at(id), 201); });
  }

  // Sensors.
  if (is({"sensors"})) {
    if (get) {
      const auto equipment = param(r, "equipment");
      return graph_.read([&](const TwinState& s) {
        json out = json::array();
        for (const auto& [id, spec] : s.sensors) {
          if (!equipment || spec.bound_equipment == *equipment) out.push_back(sensor_view(s, spec));
        }
        return ok(out);
      });
    }
    const json body = parse_body(r.body);
    const std::string equipment = require_string(body, "equipment");
    const SensorKind kind = require_field(body, "kind").get<SensorKind>();
    SensorSpec spec = settings_.telemetry.default_spec(equipment, kind);
    if (body.contains("sensor_id")) spec.sensor_id = require_string(body, "sensor_id");
    if (body.contains("unit")) spec.unit = require_string(body, "unit");
    if (body.contains("interval_s")) spec.interval_s = require_field(body, "interval_s").get<int>();
    if (body.contains("normal_range")) {
      const json& range = body["normal_range"];
      if (!range.is_array() || range.size() != 2) fail(Errc::malformed_payload, "normal_range must be [low, high]");
      spec.low = range[0].get<double>();
      spec.high = range[1].get<double>();
    }
    if (body.contains("sim_profile")) spec.sim_profile = body["sim_profile"].get<SimProfile>();
    if (body.contains("dashboard_support")) spec.dashboard_support = body["dashboard_support"].get<bool>();
    if (body.contains("live_capable")) spec.live_capable = body["live_capable"].get<bool>();
    std::optional<AlarmRule> rule;
    if (body.contains("rule")) rule = body["rule"].get<AlarmRule>();
    const std::string id = bind_sensor(graph_, equipment, spec, rule, settings_.telemetry.alarms);
    return graph_.read([&](const TwinState& s) { return ok(sensor_view(s, s.sensors.at(id)), 201); });
  }

  // Alarms.
  if (is({"alarms"})) {
    if (!get) throw NotRouted{};
    AlarmFilter filter;
    if (auto v = param(r, "equipment")) filter = {AlarmFilter::By::equipment, *v};
    if (auto v = param(r, "discipline")) filter = {AlarmFilter::By::discipline, *v};
    const bool all = param(r, "state") == "all";
    return graph_.read([&](const TwinState& s) {
      json out = json::array();
      if (all) {
        for (const auto& [id, a] : s.alarms) out.push_back(a);
      } else {
        for (const auto& a : active_alarms(s, filter)) out.push_back(a);
      }
      return ok(out);
    });
  }
  if (is({"alarms", any, "ack"})) {
    if (!post) throw NotRouted{};
    const json body = parse_body(r.body);
    return ok(acknowledge(graph_, seg[1], require_string(body, "actor")));
  }

  // Policies and jobs.
  if (is({"policies"})) {
    if (get) {
      return graph_.read([&](const TwinState& s) {
        json out = json::array();
        for (const auto& [id, p] : s.policies) out.push_back(p);
        return ok(out);
      });
    }
    const auto id = create_policy(graph_, parse_body(r.body).get<MaintenancePolicy>());
    return graph_.read([&](const TwinState& s) { return ok(s.policies.at(id), 201); });
  }
  if (is({"jobs"})) {
    if (get) {
      JobQuery q{enum_param<JobStatus>(r, "status"), enum_param<AssigneeRole>(r, "role"), param(r, "target")};
      return graph_.read([&](const TwinState& s) { return ok(json(list_jobs(s, q))); });
    }
    const json body = parse_body(r.body);
    std::vector<Resource> resources;
    if (body.contains("resources")) resources = body["resources"].get<std::vector<Resource>>();
    return ok(create_reactive_job(graph_, require_string(body, "target"), require_string(body, "description"),
                                  std::move(resources)),
              201);
  }
  if (is({"jobs", "generate"})) {
    if (!post) throw NotRouted{};
    const json body = parse_body(r.body);
    const Date from = date_from_json(require_field(body, "from"));
    const Date to = date_from_json(require_field(body, "to"));
    const GenerateResult res = body.contains("policy_id")
                                   ? generate_jobs(graph_, require_string(body, "policy_id"), from, to)
                                   : generate_all_jobs(graph_, from, to);
    return ok(json{{"created", res.created}, {"jobs", res.jobs}}, res.created > 0 ? 201 : 200);
  }
  if (is({"jobs", any})) {
    if (!get) throw NotRouted{};
    return graph_.read([&](const TwinState& s) {
      auto it = s.jobs.find(seg[1]);
      if (it == s.jobs.end()) fail(Errc::unknown_job, "unknown job " + seg[1]);
      return ok(it->second);
    });
  }
  if (is({"jobs", any, "transition"})) {
    if (!post) throw NotRouted{};
    const json body = parse_body(r.body);
    const JobStatus to = require_field(body, "to").get<JobStatus>();
    std::optional<std::string> comment;
    if (body.contains("comment") && !body["comment"].is_null()) comment = require_string(body, "comment");
    return ok(transition(graph_, seg[1], to, require_string(body, "actor"), comment));
  }
  if (is({"jobs", any, "comments"})) {
    if (!post) throw NotRouted{};
    const json body = parse_body(r.body);
    return ok(add_comment(graph_, seg[1], require_string(body, "actor"), require_string(body, "text")), 201);
  }

  // Reports.
  if (is({"reports", any})) {
    if (!get) throw NotRouted{};
    const ReportWindow w = window_of(r);
    return graph_.read([&](const TwinState& s) {
      if (seg[1] == "maintenance") return ok(to_json(maintenance_summary(s, w)));
      if (seg[1] == "health") return ok(to_json(equipment_health(s, w)));
      if (seg[1] == "staff") return ok(to_json(staff_activity(s, w)));
      if (seg[1] == "full") return ok(full_report(s, w));
      throw NotRouted{};
    });
  }

  // Dashboards.
  if (is({"dashboards"})) {
    if (!get) throw NotRouted{};
    json out = json::array();
    for (const auto& sys : settings_.metrics.systems) {
      json metrics = json::array();
      for (const auto& m : sys.metrics) {
        metrics.push_back(json{{"name", m.name}, {"kind", m.kind}, {"aggregation", m.aggregation}, {"unit", m.unit}});
      }
      out.push_back(json{{"system", sys.name}, {"title", sys.title}, {"metrics", metrics}});
    }
    return ok(out);
  }
  if (is({"dashboards", any})) {
    if (!get) throw NotRouted{};
    const SystemDef& sys = settings_.metrics.system(seg[1]);
    const ReportWindow w = window_of(r);
    return graph_.read([&](const TwinState& s) {
      if (auto metric = param(r, "metric")) return ok(to_json(dashboard_series(s, settings_.metrics, sys.name, *metric, w)));
      json series = json::array();
      for (const auto& m : sys.metrics) series.push_back(to_json(dashboard_series(s, settings_.metrics, sys.name, m.name, w)));
      return ok(json{{"system", sys.name}, {"title", sys.title}, {"series", series}});
    });
  }

  throw NotRouted{};
}

}  // namespace twin
