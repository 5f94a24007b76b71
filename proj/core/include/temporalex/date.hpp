// Copyright 2026 The Temporalex Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace temporalex {

/// Proleptic Gregorian calendar date at day resolution.
///
/// Stored as a day count relative to 1970-01-01 so that ordering and
/// interval arithmetic are plain integer operations.
class Date {
 public:
  constexpr Date() = default;

  /// Returns nullopt when (year, month, day) is not a real calendar day.
  static std::optional<Date> from_ymd(int year, unsigned month, unsigned day);

  /// Strict "YYYY-MM-DD".
  static std::optional<Date> parse(std::string_view iso);

  static constexpr Date from_serial(std::int32_t days) {
    Date d;
    d.serial_ = days;
    return d;
  }

  int year() const;
  unsigned month() const;
  unsigned day() const;

  std::int32_t serial() const { return serial_; }
  Date next_day() const { return from_serial(serial_ + 1); }
  Date previous_day() const { return from_serial(serial_ - 1); }

  std::string to_string() const;

  friend constexpr auto operator<=>(Date, Date) = default;

 private:
  std::int32_t serial_ = 0;
};

/// Last calendar day of the given month; month must be 1..12.
Date last_day_of_month(int year, unsigned month);

/// Inclusive date interval [start, end].
struct DateInterval {
  Date start;
  Date end;

  bool contains(Date d) const { return start <= d && d <= end; }
  bool overlaps(const DateInterval& other) const {
    return start <= other.end && other.start <= end;
  }
  bool well_formed() const { return start <= end; }

  friend bool operator==(const DateInterval&, const DateInterval&) = default;
};

/// Validity window of one provision version. Both bounds inclusive; an
/// absent upper bound means the version is still in force.
struct TemporalWindow {
  Date from;
  std::optional<Date> to;

  bool contains(Date d) const { return from <= d && (!to || d <= *to); }
  bool overlaps(const DateInterval& interval) const {
    return from <= interval.end && (!to || interval.start <= *to);
  }
  bool overlaps(const TemporalWindow& other) const;
  bool well_formed() const { return !to || from <= *to; }

  /// "2009-02-28 to 2011-04-30" or "2023-01-01 to present".
  std::string describe() const;

  friend bool operator==(const TemporalWindow&, const TemporalWindow&) = default;
};

}  // namespace temporalex
