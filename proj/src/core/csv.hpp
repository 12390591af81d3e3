// Copyright 2026 The twinfm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace twin {

using CsvRow = std::vector<std::string>;

// RFC 4180 reader: quoted fields may contain separators, doubled quotes and
// line breaks. Blank lines are skipped. A UTF-8 BOM is stripped.
std::vector<CsvRow> parse_csv(std::string_view text);

// Throws FileUnreadable.
std::vector<CsvRow> read_csv_file(const std::filesystem::path& path);

std::string csv_escape(std::string_view field);
std::string csv_line(const CsvRow& row);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace twin
