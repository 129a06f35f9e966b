#pragma once

#include <cstdint>
#include <span>

namespace wnl {

inline constexpr int kMaxPermanentOrder = 14;

/// Permanent of an n x n row-major matrix with entries in {-1, 0, +1}, by
/// Ryser's inclusion-exclusion formula over a Gray-code walk of column
/// subsets. Exact; O(2^n n). Requires n <= kMaxPermanentOrder.
std::int64_t permanent_pm1(std::span<const int> matrix, int n);

/// Sum over all permutations, O(n! n). Reference for small n only.
std::int64_t permanent_bruteforce(std::span<const int> matrix, int n);

}  // namespace wnl
