// Copyright 2026 The twinfm Authors
// SPDX-License-Identifier: Apache-2.0

#include "maintenance.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>

namespace twin {

namespace {

std::string numbered(const char* prefix, std::size_t n, int width) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s-%0*zu", prefix, width, n);
  return buf;
}

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

std::string describe(const MaintenancePolicy& policy) {
  std::string out = "Preventive (" + policy.policy_id + ")";
  for (std::size_t i = 0; i < policy.tasks.size(); ++i) out += (i == 0 ? ": " : "; ") + policy.tasks[i];
  return out;
}

// Adds the missing jobs of one policy; `next_job` tracks ids staged so far.
void stage_policy_jobs(const TwinState& state, Batch& batch, Timestamp at, const MaintenancePolicy& policy,
                       Date from, Date to, std::size_t& next_job, GenerateResult& result) {
  const auto targets = policy_targets(state, policy);
  const TargetKind kind = policy.target_kind == PolicyTarget::room ? TargetKind::space : TargetKind::equipment;
  for (Date d : occurrence_dates(policy.start_date, policy.frequency_days, from, to)) {
    for (const auto& target : targets) {
      if (state.has_preventive_job(policy.policy_id, d, target)) {
        for (const auto& [id, job] : state.jobs) {
          if (job.origin == JobOrigin::preventive && job.policy_id == policy.policy_id && job.occurrence_date == d &&
              job.target == target) {
            result.jobs.push_back(job);
          }
        }
        continue;
      }
      MaintenanceJob job;
      job.job_id = numbered("JOB", next_job++, 6);
      job.origin = JobOrigin::preventive;
      job.policy_id = policy.policy_id;
      job.occurrence_date = d;
      job.target_kind = kind;
      job.target = target;
      job.description = describe(policy);
      job.assignee_role = role_for(kind);
      job.due_date = d;
      job.resources = policy.resources;
      job.created_at = at;
      batch.add(EventKind::job_created, at, job);
      result.jobs.push_back(std::move(job));
      ++result.created;
    }
  }
}

}  // namespace

std::vector<std::string> policy_targets(const TwinState& state, const MaintenancePolicy& policy) {
  if (policy.target_kind == PolicyTarget::room) {
    if (!state.find_space(policy.target)) fail(Errc::unresolved_target, "no room '" + policy.target + "'");
    return {policy.target};
  }
  std::vector<std::string> out;
  for (const EquipmentItem* item : state.equipment_of_type(policy.target)) out.push_back(item->augment_id_instance);
  if (out.empty()) fail(Errc::unresolved_target, "no equipment of type '" + policy.target + "'");
  return out;
}

void validate_policy(const TwinState& state, const MaintenancePolicy& policy) {
  if (policy.frequency_days < 1) {
    fail(Errc::bad_frequency, "frequency_days must be >= 1, got " + std::to_string(policy.frequency_days));
  }
  if (policy.tasks.empty() || std::any_of(policy.tasks.begin(), policy.tasks.end(), blank)) {
    fail(Errc::invalid_argument, "policy needs at least one non-empty task");
  }
  policy_targets(state, policy);
}

std::string create_policy(TwinGraph& graph, MaintenancePolicy policy) {
  return graph.write([&](const TwinState& state, Batch& batch) {
    if (policy.policy_id.empty()) {
      std::size_t n = state.policies.size() + 1;
      do policy.policy_id = numbered("PM", n++, 3);
      while (state.policies.count(policy.policy_id));
    }
    validate_policy(state, policy);
    if (auto it = state.policies.find(policy.policy_id); it != state.policies.end()) {
      if (it->second == policy) return policy.policy_id;
      fail(Errc::policy_conflict, "policy " + policy.policy_id + " already exists with different content");
    }
    batch.add(EventKind::policy_created, graph.now(), policy);
    return policy.policy_id;
  });
}

std::vector<Date> occurrence_dates(Date start, int frequency_days, Date from, Date to) {
  if (frequency_days < 1) fail(Errc::bad_frequency, "frequency_days must be >= 1");
  if (from > to) fail(Errc::inverted_horizon, "horizon from " + format_date(from) + " is after to " + format_date(to));
  std::vector<Date> out;
  const std::chrono::days step{frequency_days};
  Date d = start;
  if (from > start) {
    const auto gap = (from - start).count();
    d = start + std::chrono::days{(gap + frequency_days - 1) / frequency_days * frequency_days};
  }
  for (; d <= to; d += step) out.push_back(d);
  return out;
}

GenerateResult generate_jobs(TwinGraph& graph, const std::string& policy_id, Date from, Date to) {
  if (from > to) fail(Errc::inverted_horizon, "horizon from " + format_date(from) + " is after to " + format_date(to));
  return graph.write([&](const TwinState& state, Batch& batch) {
    auto it = state.policies.find(policy_id);
    if (it == state.policies.end()) fail(Errc::not_found, "unknown policy " + policy_id);
    GenerateResult result;
    std::size_t next_job = state.jobs.size() + 1;
    stage_policy_jobs(state, batch, graph.now(), it->second, from, to, next_job, result);
    return result;
  });
}

GenerateResult generate_all_jobs(TwinGraph& graph, Date from, Date to) {
  if (from > to) fail(Errc::inverted_horizon, "horizon from " + format_date(from) + " is after to " + format_date(to));
  return graph.write([&](const TwinState& state, Batch& batch) {
    GenerateResult result;
    std::size_t next_job = state.jobs.size() + 1;
    const Timestamp at = graph.now();
    for (const auto& [id, policy] : state.policies) stage_policy_jobs(state, batch, at, policy, from, to, next_job, result);
    return result;
  });
}

MaintenanceJob create_reactive_job(TwinGraph& graph, const std::string& target, const std::string& description,
                                   std::vector<Resource> resources) {
  if (blank(description)) fail(Errc::empty_description, "job description must not be empty");
  return graph.write([&](const TwinState& state, Batch& batch) {
    MaintenanceJob job;
    if (state.find_equipment(target)) {
      job.target_kind = TargetKind::equipment;
    } else if (state.find_space(target)) {
      job.target_kind = TargetKind::space;
    } else {
      fail(Errc::unresolved_target, "'" + target + "' is neither equipment nor a room");
    }
    job.job_id = state.next_job_id();
    job.origin = JobOrigin::reactive;
    job.target = target;
    job.description = description;
    job.assignee_role = role_for(job.target_kind);
    job.resources = std::move(resources);
    job.created_at = graph.now();
    batch.add(EventKind::job_created, job.created_at, job);
    return job;
  });
}

MaintenanceJob transition(TwinGraph& graph, const std::string& job_id, JobStatus to, const std::string& actor,
                          std::optional<std::string> comment) {
  if (blank(actor)) fail(Errc::invalid_argument, "actor must not be empty");
  if (comment && blank(*comment)) comment.reset();
  graph.write([&](const TwinState& state, Batch& batch) {
    auto it = state.jobs.find(job_id);
    if (it == state.jobs.end()) fail(Errc::unknown_job, "unknown job " + job_id);
    const JobStatus from = it->second.status;
    if (!transition_allowed(from, to)) {
      fail(Errc::illegal_transition, std::string(to_string(from)) + " -> " + std::string(to_string(to)) +
                                         " is not allowed for " + job_id);
    }
    json payload{{"job_id", job_id}, {"from", from}, {"to", to}, {"actor", actor}};
    if (comment) payload["comment"] = *comment;
    batch.add(EventKind::job_transitioned, graph.now(), std::move(payload));
  });
  return graph.read([&](const TwinState& state) { return state.jobs.at(job_id); });
}

MaintenanceJob add_comment(TwinGraph& graph, const std::string& job_id, const std::string& actor,
                           const std::string& text) {
  if (blank(actor)) fail(Errc::invalid_argument, "actor must not be empty");
  graph.write([&](const TwinState& state, Batch& batch) {
    if (!state.jobs.count(job_id)) fail(Errc::unknown_job, "unknown job " + job_id);
    if (blank(text)) fail(Errc::empty_comment, "comment text must not be empty");
    batch.add(EventKind::comment_added, graph.now(), json{{"job_id", job_id}, {"actor", actor}, {"text", text}});
  });
  return graph.read([&](const TwinState& state) { return state.jobs.at(job_id); });
}

std::vector<MaintenanceJob> list_jobs(const TwinState& state, const JobQuery& query) {
  std::vector<MaintenanceJob> out;
  for (const auto& [id, job] : state.jobs) {
    if (query.status && job.status != *query.status) continue;
    if (query.role && job.assignee_role != *query.role) continue;
    if (query.target && job.target != *query.target) continue;
    out.push_back(job);
  }
  return out;
}

}  // namespace twin
