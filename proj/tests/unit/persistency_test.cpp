#include <gtest/gtest.h>

#include "wnl/bellfamily.hpp"
#include "wnl/persistency.hpp"

using namespace wnl;

namespace {

PCritEntry lp_entry(double p, bool verified = true) {
  PCritEntry e;
  e.p = p;
  e.source = Provenance::LP;
  e.verified = verified;
  return e;
}

// Two-setting table: family entries plus odd-n LP thresholds.
PCritTable two_setting_table() {
  PCritTable t = family_table(14);
  t.offer(2, lp_entry(0.2));
  t.offer(3, lp_entry(0.258));
  t.offer(5, lp_entry(0.3024));
  t.offer(7, lp_entry(0.3229));
  t.offer(9, lp_entry(0.3354));
  return t;
}

}  // namespace

TEST(Persistency, UpperBounds) {
  EXPECT_EQ(upper_bound(20, 2), 10);
  EXPECT_EQ(upper_bound(9, 3), 6);
  EXPECT_EQ(upper_bound(7, 2), 4);
  for (int N = 2; N <= 50; N += 2) EXPECT_EQ(upper_bound(N, 2), N / 2);
  EXPECT_THROW(upper_bound(2, 3), ContractViolation);
}

TEST(Persistency, TableKeepsLargerVerifiedThreshold) {
  PCritTable t = family_table(12);
  EXPECT_FALSE(t.offer(12, lp_entry(0.30)));
  EXPECT_TRUE(t.offer(12, lp_entry(0.3473)));
  EXPECT_EQ(t.find(12)->source, Provenance::LP);
  EXPECT_FALSE(t.offer(7, lp_entry(0.9, false)));
  EXPECT_EQ(t.find(7), nullptr);
}

TEST(Persistency, TwoSettingColumn) {
  const PCritTable t = two_setting_table();
  const int expected[] = {1, 1, 2, 2, 2, 3, 3, 3, 4, 4, 4, 5, 5};
  for (int N = 2; N <= 14; ++N) EXPECT_EQ(lower_bound(N, t).lower, expected[N - 2]) << "N=" << N;
  const PersistencyBound b = lower_bound(7, t);
  EXPECT_EQ(b.witness_n, 5);
  EXPECT_EQ(b.upper, 4);
}

TEST(Persistency, GapsAreReported) {
  const PCritTable t = family_table(20);
  EXPECT_THROW(lower_bound(7, t, GapPolicy::Strict), GapError);
  try {
    lower_bound(7, t, GapPolicy::Strict);
  } catch (const GapError& e) {
    EXPECT_EQ(e.missing(), (std::vector<int>{3, 5}));
  }
  const PersistencyBound b = lower_bound(7, t, GapPolicy::Partial);
  EXPECT_TRUE(b.partial);
  EXPECT_EQ(b.lower, 2);
}

TEST(Persistency, ThresholdSourceIsConsultedOnDemand) {
  PCritTable t = family_table(10);
  std::vector<int> asked;
  const ThresholdSource source = [&](int n, PCritTable& table) {
    asked.push_back(n);
    if (n % 2) table.offer(n, lp_entry(n == 3 ? 0.258 : n == 5 ? 0.3024 : 0.3229));
  };
  EXPECT_EQ(lower_bound(7, t, source).lower, 3);
  EXPECT_EQ(asked, (std::vector<int>{2, 3, 4, 5}));
  EXPECT_EQ(lower_bound(10, t, source).lower, 4);
  EXPECT_EQ(asked, (std::vector<int>{2, 3, 4, 5, 6, 7}));
}

TEST(Persistency, Asymptotics) {
  const PCritTable t = family_table(1000);
  const PersistencyBound b = lower_bound(1000, t, GapPolicy::Partial);
  EXPECT_GE(b.lower, 390);
  EXPECT_LE(b.lower, 400);
  EXPECT_EQ(b.upper, 500);
  const auto family_only = asymptotic_report(20);
  ASSERT_EQ(family_only.size(), 10u);
  EXPECT_EQ(family_only[1].N, 4);
  EXPECT_EQ(family_only[1].lower, 1);
  EXPECT_TRUE(family_only[1].partial);
  const auto report = asymptotic_report(20, two_setting_table());
  EXPECT_EQ(report[1].lower, 2);
  EXPECT_EQ(report[1].upper, 2);
  EXPECT_EQ(report[4].N, 10);
  EXPECT_EQ(report[4].lower, 4);
}

TEST(Persistency, TwoPartiesNeedAPositiveThreshold) {
  PCritTable t(2);
  t.offer(2, lp_entry(0.2));
  EXPECT_EQ(lower_bound(2, t).lower, 1);
  PCritTable z = family_table(2);
  EXPECT_EQ(lower_bound(2, z).lower, 0);
}
