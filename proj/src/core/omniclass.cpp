// Copyright 2026 The twinfm Authors
// SPDX-License-Identifier: Apache-2.0

#include "omniclass.hpp"

#include <cctype>

#include "error.hpp"

namespace twin {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

std::vector<std::string_view> split_words(std::string_view text) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    const std::size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    if (i > start) words.push_back(text.substr(start, i - start));
  }
  return words;
}

bool is_group(std::string_view w) { return w.size() == 2 && is_digit(w[0]) && is_digit(w[1]); }

}  // namespace

std::string OmniclassCode::code() const {
  std::string out = std::to_string(table) + "-";
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (i) out.push_back(' ');
    out += levels[i];
  }
  return out;
}

std::string OmniclassCode::render() const {
  std::string out = code();
  if (!title.empty()) out += " " + title;
  return out;
}

std::string normalize_omniclass_text(std::string_view text) {
  std::string out;
  for (auto w : split_words(text)) {
    if (!out.empty()) out.push_back(' ');
    out.append(w);
  }
  return out;
}

OmniclassCode parse_omniclass(std::string_view text) {
  const auto words = split_words(text);
  const std::string shown = "'" + std::string(text) + "'";
  if (words.empty()) fail(Errc::malformed_code, "empty Omniclass code");

  const std::string_view head = words[0];
  const auto dash = head.find('-');
  if (dash == std::string_view::npos) fail(Errc::malformed_code, "missing table separator in " + shown);
  const std::string_view table_text = head.substr(0, dash);
  if (table_text != "13" && table_text != "23") {
    fail(Errc::malformed_code, "table must be 13 or 23 in " + shown);
  }

  OmniclassCode out;
  out.table = table_text == "13" ? 13 : 23;
  const std::string_view first_group = head.substr(dash + 1);
  if (!is_group(first_group)) fail(Errc::malformed_code, "level groups must be two digits in " + shown);
  out.levels.emplace_back(first_group);

  std::size_t w = 1;
  while (w < words.size() && is_group(words[w])) {
    if (out.levels.size() == 4) fail(Errc::malformed_code, "more than four level groups in " + shown);
    out.levels.emplace_back(words[w]);
    ++w;
  }
  // A purely numeric word after the groups is a malformed group, not a title.
  if (w < words.size()) {
    const auto word = words[w];
    bool all_digits = true;
    for (char c : word) all_digits = all_digits && is_digit(c);
    if (all_digits) fail(Errc::malformed_code, "level groups must be two digits in " + shown);
  }
  for (; w < words.size(); ++w) {
    if (!out.title.empty()) out.title.push_back(' ');
    out.title.append(words[w]);
  }
  return out;
}

OmniclassCode parse_space_category(std::string_view text) {
  OmniclassCode code;
  try {
    code = parse_omniclass(text);
  } catch (const Error& e) {
    fail(Errc::malformed_category, e.what());
  }
  if (code.table != 13) {
    fail(Errc::malformed_category, "room category must be an Omniclass table 13 code: '" + std::string(text) + "'");
  }
  return code;
}

OmniclassCode parse_equipment_code(std::string_view text) {
  OmniclassCode code = parse_omniclass(text);
  if (code.table != 23) {
    fail(Errc::malformed_code, "equipment code must be an Omniclass table 23 code: '" + std::string(text) + "'");
  }
  return code;
}

bool same_omniclass_code(std::string_view a, std::string_view b) {
  try {
    const auto x = parse_omniclass(a);
    const auto y = parse_omniclass(b);
    return x.table == y.table && x.levels == y.levels;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace twin

#include "model.hpp"

namespace twin {

std::optional<Discipline> discipline_of_system(std::string_view omniclass_system) {
  OmniclassCode code;
  try {
    code = parse_omniclass(omniclass_system);
  } catch (const Error&) {
    return std::nullopt;
  }
  if (code.table != 23 || code.levels.empty()) return std::nullopt;
  const auto& top = code.levels[0];
  if (top == "33") return Discipline::mechanical;
  if (top == "35") return Discipline::electrical;
  if (top == "04" && code.levels.size() >= 2 && code.levels[1] == "50") return Discipline::electrical;
  if (top == "41") return Discipline::plumbing;
  if (top == "23") return Discipline::conveying;
  if (top == "37") return Discipline::communication;
  return std::nullopt;
}

}  // namespace twin
