#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "wnl/errors.hpp"
#include "wnl/permanent.hpp"

using namespace wnl;

TEST(Permanent, AllOnesIsFactorial) {
  std::vector<int> ones(36, 1);
  EXPECT_EQ(permanent_pm1(ones, 6), 720);
}

TEST(Permanent, RyserMatchesBruteForce) {
  std::mt19937 rng(7);
  for (int n = 1; n <= 8; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<int> a(static_cast<std::size_t>(n * n));
      for (int& x : a) x = static_cast<int>(rng() % 3) - 1;
      EXPECT_EQ(permanent_pm1(a, n), permanent_bruteforce(a, n)) << "n=" << n;
    }
  }
}

TEST(Permanent, SignedIdentity) {
  // diag(-1, 1, 1): a single surviving permutation
  const std::vector<int> a{-1, 0, 0, 0, 1, 0, 0, 0, 1};
  EXPECT_EQ(permanent_pm1(a, 3), -1);
}

TEST(Permanent, RejectsOversizedMatrix) {
  const int n = kMaxPermanentOrder + 1;
  std::vector<int> a(static_cast<std::size_t>(n * n), 1);
  EXPECT_THROW(permanent_pm1(a, n), CapacityError);
}
