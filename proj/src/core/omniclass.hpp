// Copyright 2026 The twinfm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace twin {

// An Omniclass classification such as "13-55 11 00 Office Spaces".
// Table 13 codes classify spaces by function, table 23 codes classify
// products and equipment. Level groups are kept verbatim, including
// trailing "00" groups; titles are stored as given.
struct OmniclassCode {
  int table = 0;
  std::vector<std::string> levels;  // each exactly two decimal digits
  std::string title;

  // "T-g1 g2 ... Title"
  std::string render() const;
  // "T-g1 g2 ..." without the title; used for matching.
  std::string code() const;

  bool operator==(const OmniclassCode&) const = default;
};

// Throws Error{MalformedCode}.
OmniclassCode parse_omniclass(std::string_view text);

// Trims and collapses runs of whitespace to one space.
std::string normalize_omniclass_text(std::string_view text);

// Table-number-checked variants used by the inventory schema.
OmniclassCode parse_space_category(std::string_view text);   // table 13, MalformedCategory
OmniclassCode parse_equipment_code(std::string_view text);   // table 23, MalformedCode

// Same code (table + levels), ignoring titles. False if either side fails to parse.
bool same_omniclass_code(std::string_view a, std::string_view b);

}  // namespace twin

#include <optional>

namespace twin {

enum class Discipline;

// Discipline implied by a table-23 system code, where the code family is
// known (23-33 HVAC, 23-35 and 23-04 50 electrical, 23-41 plumbing,
// 23-23 conveying, 23-37 communication).
std::optional<Discipline> discipline_of_system(std::string_view omniclass_system);

}  // namespace twin
