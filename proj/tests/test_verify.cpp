#include "fcedge/verify.hpp"

#include <gtest/gtest.h>

#include <chrono>

using namespace fcedge;

TEST(Verify, QuickProfilePassesQuickly) {
  const auto start = std::chrono::steady_clock::now();
  const auto report = run_verify({VerifyProfile::quick, std::nullopt});
  const auto elapsed = std::chrono::steady_clock::now() - start;
  EXPECT_TRUE(report.pass());
  EXPECT_LT(elapsed, std::chrono::seconds(60));
  ASSERT_EQ(report.suites.size(), 5u);
  for (const auto& s : report.suites) {
    EXPECT_GT(s.checks, 0u) << s.name;
    EXPECT_EQ(s.failures, 0u) << s.name;
  }
}

TEST(Verify, FullProfilePasses) {
  const auto report = run_verify({VerifyProfile::full, std::nullopt});
  for (const auto& f : report.failures) ADD_FAILURE() << f.suite << ": " << f.check << " " << f.detail;
  EXPECT_TRUE(report.pass());
}

TEST(Verify, CorruptedStirlingEntryIsReported) {
  const auto report = run_verify({VerifyProfile::quick, StirlingFault{12, 5}});
  ASSERT_FALSE(report.pass());
  bool found = false;
  for (const auto& f : report.failures) {
    EXPECT_EQ(f.suite, "stirling");
    if (f.check == "alternating sum equals recurrence") {
      ASSERT_TRUE(f.n && f.k);
      EXPECT_EQ(*f.n, 12u);
      EXPECT_EQ(*f.k, 5u);
      found = true;
    }
  }
  EXPECT_TRUE(found);
}

TEST(Verify, ParseProfile) {
  EXPECT_EQ(parse_profile("quick"), VerifyProfile::quick);
  EXPECT_EQ(parse_profile("full"), VerifyProfile::full);
  EXPECT_THROW(parse_profile("medium"), std::invalid_argument);
}
