// Copyright 2026 The twinfm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>

#include "model.hpp"

namespace twin {

// Streak counters for one sensor's threshold rule.
struct RuleState {
  int out_streak = 0;
  int in_streak = 0;
  bool active = false;

  bool operator==(const RuleState&) const = default;
};

enum class AlarmTransition { raise, clear };

struct Evaluation {
  std::optional<AlarmTransition> transition;
  RuleState next;
};

// Pure. A value outside the closed interval [low, high] extends the
// out-of-range streak; the alarm raises when that streak first reaches
// raise_debounce with no alarm active, and clears when the in-range streak
// reaches clear_debounce. Throws SensorMismatch.
Evaluation evaluate(const AlarmRule& rule, const RuleState& state, const SensorReading& reading);

// Throws InvalidSensorSpec for low >= high or debounces < 1.
void validate_rule(const AlarmRule& rule);

void to_json(json& j, const RuleState& v);
void from_json(const json& j, RuleState& v);

}  // namespace twin
