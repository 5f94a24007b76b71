// Copyright 2026 The Temporalex Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "support/generators.hpp"
#include "temporalex/date.hpp"

namespace temporalex {
namespace {

bool oracle_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

unsigned oracle_days_in_month(int y, unsigned m) {
  static const unsigned kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  return m == 2 && oracle_leap(y) ? 29 : kDays[m - 1];
}

TEST(DateTest, WalksCalendarDayByDay) {
  auto prev = Date::from_ymd(1899, 12, 31);
  ASSERT_TRUE(prev);
  for (int y = 1900; y <= 2100; ++y) {
    for (unsigned m = 1; m <= 12; ++m) {
      for (unsigned d = 1; d <= oracle_days_in_month(y, m); ++d) {
        const auto date = Date::from_ymd(y, m, d);
        ASSERT_TRUE(date) << y << "-" << m << "-" << d;
        ASSERT_EQ(date->serial(), prev->serial() + 1);
        ASSERT_EQ(date->year(), y);
        ASSERT_EQ(date->month(), m);
        ASSERT_EQ(date->day(), d);
        ASSERT_EQ(prev->next_day(), *date);
        prev = date;
      }
    }
  }
}

TEST(DateTest, EpochIsSerialZero) {
  EXPECT_EQ(Date::from_ymd(1970, 1, 1)->serial(), 0);
  EXPECT_EQ(Date::from_ymd(1969, 12, 31)->serial(), -1);
}

TEST(DateTest, RejectsImpossibleDays) {
  EXPECT_FALSE(Date::from_ymd(2023, 2, 29));
  EXPECT_TRUE(Date::from_ymd(2024, 2, 29));
  EXPECT_FALSE(Date::from_ymd(1900, 2, 29));
  EXPECT_TRUE(Date::from_ymd(2000, 2, 29));
  EXPECT_FALSE(Date::from_ymd(2024, 4, 31));
  EXPECT_FALSE(Date::from_ymd(2024, 13, 1));
  EXPECT_FALSE(Date::from_ymd(2024, 0, 1));
  EXPECT_FALSE(Date::from_ymd(2024, 1, 0));
}

TEST(DateTest, ParseIsStrictIso) {
  EXPECT_EQ(Date::parse("2011-04-30"), Date::from_ymd(2011, 4, 30));
  EXPECT_FALSE(Date::parse("2011-4-30"));
  EXPECT_FALSE(Date::parse("2011/04/30"));
  EXPECT_FALSE(Date::parse("2011-04-31"));
  EXPECT_FALSE(Date::parse("2011-04-30 "));
  EXPECT_FALSE(Date::parse(""));
}

TEST(DateTest, RoundTripsThroughText) {
  testing::Rng rng(7);
  for (int i = 0; i < 2000; ++i) {
    const Date d = testing::random_date(rng, 1900, 2099);
    EXPECT_EQ(Date::parse(d.to_string()), d);
  }
  EXPECT_EQ(Date::from_ymd(905, 3, 7)->to_string(), "0905-03-07");
}

TEST(DateTest, LastDayOfMonth) {
  EXPECT_EQ(last_day_of_month(2024, 2), *Date::from_ymd(2024, 2, 29));
  EXPECT_EQ(last_day_of_month(2023, 2), *Date::from_ymd(2023, 2, 28));
  EXPECT_EQ(last_day_of_month(2023, 12), *Date::from_ymd(2023, 12, 31));
  EXPECT_EQ(last_day_of_month(2023, 9), *Date::from_ymd(2023, 9, 30));
}

TEST(TemporalWindowTest, InclusiveBounds) {
  TemporalWindow w{*Date::parse("2009-02-28"), *Date::parse("2011-04-30")};
  EXPECT_TRUE(w.contains(*Date::parse("2009-02-28")));
  EXPECT_TRUE(w.contains(*Date::parse("2011-04-30")));
  EXPECT_FALSE(w.contains(*Date::parse("2011-05-01")));
  EXPECT_TRUE(w.overlaps(testing::interval("2010-01-01", "2010-12-31")));
  EXPECT_TRUE(w.overlaps(testing::interval("2011-04-30", "2011-12-31")));
  EXPECT_FALSE(w.overlaps(testing::interval("2011-05-01", "2011-12-31")));
  EXPECT_EQ(w.describe(), "2009-02-28 to 2011-04-30");
}

TEST(TemporalWindowTest, OpenEndedWindow) {
  TemporalWindow w{*Date::parse("2023-03-01"), std::nullopt};
  EXPECT_TRUE(w.contains(*Date::parse("2099-01-01")));
  EXPECT_FALSE(w.contains(*Date::parse("2023-02-28")));
  EXPECT_TRUE(w.overlaps(testing::interval("2024-01-01", "2024-12-31")));
  EXPECT_EQ(w.describe(), "2023-03-01 to present");
  EXPECT_TRUE(w.well_formed());
}

TEST(TemporalWindowTest, OverlapAgreesWithDayScan) {
  testing::Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    TemporalWindow w{testing::random_date(rng, 2000, 2003), std::nullopt};
    if (rng.coin()) w.to = Date::from_serial(w.from.serial() + rng.uniform(0, 300));
    DateInterval q{testing::random_date(rng, 2000, 2003), {}};
    q.end = Date::from_serial(q.start.serial() + rng.uniform(0, 300));
    bool any = false;
    for (Date d = q.start; d <= q.end; d = d.next_day()) any = any || w.contains(d);
    EXPECT_EQ(w.overlaps(q), any);
  }
}

}  // namespace
}  // namespace temporalex
