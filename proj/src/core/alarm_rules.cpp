// Copyright 2026 The twinfm Authors
// SPDX-License-Identifier: Apache-2.0

#include "alarm_rules.hpp"

namespace twin {

Evaluation evaluate(const AlarmRule& rule, const RuleState& state, const SensorReading& reading) {
  if (reading.sensor_id != rule.sensor_id) {
    fail(Errc::sensor_mismatch, "reading from " + reading.sensor_id + " evaluated against rule for " + rule.sensor_id);
  }
  Evaluation out{std::nullopt, state};
  RuleState& next = out.next;
  if (rule.in_range(reading.value)) {
    next.out_streak = 0;
    ++next.in_streak;
    if (next.active && next.in_streak == rule.clear_debounce) {
      next.active = false;
      out.transition = AlarmTransition::clear;
    }
  } else {
    next.in_streak = 0;
    ++next.out_streak;
    if (!next.active && next.out_streak == rule.raise_debounce) {
      next.active = true;
      out.transition = AlarmTransition::raise;
    }
  }
  return out;
}

void validate_rule(const AlarmRule& rule) {
  if (!(rule.low < rule.high)) fail(Errc::invalid_sensor_spec, "alarm rule needs low < high");
  if (rule.raise_debounce < 1 || rule.clear_debounce < 1) {
    fail(Errc::invalid_sensor_spec, "alarm debounce counts must be >= 1");
  }
}

void to_json(json& j, const RuleState& v) {
  j = json{{"out_streak", v.out_streak}, {"in_streak", v.in_streak}, {"active", v.active}};
}

void from_json(const json& j, RuleState& v) {
  v.out_streak = j.at("out_streak").get<int>();
  v.in_streak = j.at("in_streak").get<int>();
  v.active = j.at("active").get<bool>();
}

}  // namespace twin
