// Copyright 2026 The twinfm Authors
// SPDX-License-Identifier: Apache-2.0

#include "error.hpp"

namespace twin {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::ok: return "Ok";
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::io: return "Io";
    case Errc::internal: return "Internal";
    case Errc::malformed_category: return "MalformedCategory";
    case Errc::duplicate_tag_conflict: return "DuplicateTagConflict";
    case Errc::unknown_space: return "UnknownSpace";
    case Errc::unknown_equipment: return "UnknownEquipment";
    case Errc::gap_in_sequence: return "GapInSequence";
    case Errc::unknown_event_kind: return "UnknownEventKind";
    case Errc::corrupt_log: return "CorruptLog";
    case Errc::malformed_code: return "MalformedCode";
    case Errc::id_collision: return "IdCollision";
    case Errc::file_unreadable: return "FileUnreadable";
    case Errc::header_mismatch: return "HeaderMismatch";
    case Errc::manifest_mismatch: return "ManifestMismatch";
    case Errc::degenerate_floor: return "DegenerateFloor";
    case Errc::invalid_floor: return "InvalidFloor";
    case Errc::invalid_plan: return "InvalidPlan";
    case Errc::interval_out_of_range: return "IntervalOutOfRange";
    case Errc::invalid_sensor_spec: return "InvalidSensorSpec";
    case Errc::off_grid_timestamp: return "OffGridTimestamp";
    case Errc::no_sensors: return "NoSensors";
    case Errc::unbound_sensor: return "UnboundSensor";
    case Errc::malformed_payload: return "MalformedPayload";
    case Errc::unit_mismatch: return "UnitMismatch";
    case Errc::duplicate_binding: return "DuplicateBinding";
    case Errc::malformed_topic: return "MalformedTopic";
    case Errc::sensor_mismatch: return "SensorMismatch";
    case Errc::unknown_alarm: return "UnknownAlarm";
    case Errc::illegal_state: return "IllegalState";
    case Errc::unresolved_target: return "UnresolvedTarget";
    case Errc::bad_frequency: return "BadFrequency";
    case Errc::inverted_horizon: return "InvertedHorizon";
    case Errc::empty_description: return "EmptyDescription";
    case Errc::illegal_transition: return "IllegalTransition";
    case Errc::unknown_job: return "UnknownJob";
    case Errc::empty_comment: return "EmptyComment";
    case Errc::policy_conflict: return "PolicyConflict";
    case Errc::inverted_window: return "InvertedWindow";
    case Errc::unknown_system: return "UnknownSystem";
    case Errc::unknown_metric: return "UnknownMetric";
    case Errc::port_in_use: return "PortInUse";
    case Errc::bad_filter: return "BadFilter";
    case Errc::not_found: return "NotFound";
  }
  return "Unknown";
}

}  // namespace twin
