// Copyright 2026 The Temporalex Authors
// SPDX-License-Identifier: Apache-2.0

#include "temporalex/date.hpp"

#include <chrono>
#include <cstdio>

namespace temporalex {
namespace {

namespace chr = std::chrono;

chr::year_month_day to_ymd(std::int32_t serial) {
  return chr::year_month_day{chr::sys_days{chr::days{serial}}};
}

bool parse_fixed_digits(std::string_view s, int& out) {
  if (s.empty()) return false;
  int value = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
    value = value * 10 + (c - '0');
  }
  out = value;
  return true;
}

}  // namespace

std::optional<Date> Date::from_ymd(int year, unsigned month, unsigned day) {
  const chr::year_month_day ymd{chr::year{year}, chr::month{month},
                                chr::day{day}};
  if (!ymd.ok()) return std::nullopt;
  return from_serial(static_cast<std::int32_t>(
      chr::sys_days{ymd}.time_since_epoch().count()));
}

std::optional<Date> Date::parse(std::string_view iso) {
  if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-') return std::nullopt;
  int y = 0, m = 0, d = 0;
  if (!parse_fixed_digits(iso.substr(0, 4), y) ||
      !parse_fixed_digits(iso.substr(5, 2), m) ||
      !parse_fixed_digits(iso.substr(8, 2), d)) {
    return std::nullopt;
  }
  return from_ymd(y, static_cast<unsigned>(m), static_cast<unsigned>(d));
}

int Date::year() const { return static_cast<int>(to_ymd(serial_).year()); }

unsigned Date::month() const {
  return static_cast<unsigned>(to_ymd(serial_).month());
}

unsigned Date::day() const {
  return static_cast<unsigned>(to_ymd(serial_).day());
}

std::string Date::to_string() const {
  const auto ymd = to_ymd(serial_);
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()));
  return buf;
}

Date last_day_of_month(int year, unsigned month) {
  const chr::year_month_day_last last{chr::year{year},
                                      chr::month_day_last{chr::month{month}}};
  return Date::from_serial(static_cast<std::int32_t>(
      chr::sys_days{last}.time_since_epoch().count()));
}

bool TemporalWindow::overlaps(const TemporalWindow& other) const {
  const bool this_starts_before_other_ends = !other.to || from <= *other.to;
  const bool other_starts_before_this_ends = !to || other.from <= *to;
  return this_starts_before_other_ends && other_starts_before_this_ends;
}

std::string TemporalWindow::describe() const {
  return from.to_string() + " to " + (to ? to->to_string() : "present");
}

}  // namespace temporalex
