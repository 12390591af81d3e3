// Copyright 2026 The twinfm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twin_graph.hpp"

namespace twin {

// Equipment ids of the policy's type (sorted), or the single room tag.
// Throws UnresolvedTarget when nothing matches.
std::vector<std::string> policy_targets(const TwinState& state, const MaintenancePolicy& policy);

// Throws BadFrequency, UnresolvedTarget, InvalidArgument (no tasks).
void validate_policy(const TwinState& state, const MaintenancePolicy& policy);

// An empty policy_id receives the next free PM-nnn. Re-creating an identical
// policy is a no-op; a different policy under an existing id throws
// PolicyConflict.
std::string create_policy(TwinGraph& graph, MaintenancePolicy policy);

// Every start + k * frequency_days (k >= 0) inside the closed horizon.
// Throws BadFrequency, InvertedHorizon.
std::vector<Date> occurrence_dates(Date start, int frequency_days, Date from, Date to);

struct GenerateResult {
  std::vector<MaintenanceJob> jobs;  // every preventive job of the horizon, existing or new
  std::size_t created = 0;
};

// One job per (occurrence, target); keyed by (policy_id, occurrence, target)
// so overlapping horizons never duplicate. Throws InvertedHorizon, NotFound
// (unknown policy).
GenerateResult generate_jobs(TwinGraph& graph, const std::string& policy_id, Date from, Date to);

// All policies in policy_id order, one transaction.
GenerateResult generate_all_jobs(TwinGraph& graph, Date from, Date to);

// Target is an augment_id_instance or a room_tag. Throws UnresolvedTarget,
// EmptyDescription.
MaintenanceJob create_reactive_job(TwinGraph& graph, const std::string& target, const std::string& description,
                                   std::vector<Resource> resources = {});

// Throws UnknownJob, IllegalTransition, InvalidArgument (empty actor).
MaintenanceJob transition(TwinGraph& graph, const std::string& job_id, JobStatus to, const std::string& actor,
                          std::optional<std::string> comment = std::nullopt);

// Throws UnknownJob, EmptyComment, InvalidArgument (empty actor).
MaintenanceJob add_comment(TwinGraph& graph, const std::string& job_id, const std::string& actor,
                           const std::string& text);

struct JobQuery {
  std::optional<JobStatus> status;
  std::optional<AssigneeRole> role;
  std::optional<std::string> target;
};

// Sorted by job_id.
std::vector<MaintenanceJob> list_jobs(const TwinState& state, const JobQuery& query = {});

}  // namespace twin
