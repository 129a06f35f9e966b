#include "wnl/permanent.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <vector>

#include "wnl/errors.hpp"

namespace wnl {

std::int64_t permanent_pm1(std::span<const int> matrix, int n) {
  if (n < 0 || matrix.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
    throw ContractViolation("permanent: matrix is not n x n");
  }
  if (n > kMaxPermanentOrder) throw CapacityError("permanent: order above 14");
  if (n == 0) return 1;
  for (int a : matrix) {
    if (a < -1 || a > 1) throw ContractViolation("permanent: entries must lie in {-1, 0, 1}");
  }

  // Row sums over the current column subset, updated one column per Gray step.
  std::vector<std::int64_t> row_sum(static_cast<std::size_t>(n), 0);
  __int128 total = 0;
  const std::uint64_t subsets = std::uint64_t{1} << n;
  std::uint64_t gray = 0;
  for (std::uint64_t k = 1; k < subsets; ++k) {
    const int col = std::countr_zero(k);
    const std::uint64_t bit = std::uint64_t{1} << col;
    const int delta = (gray & bit) ? -1 : 1;
    gray ^= bit;
    __int128 prod = 1;
    for (int i = 0; i < n; ++i) {
      row_sum[i] += delta * matrix[static_cast<std::size_t>(i) * n + col];
      prod *= row_sum[i];
    }
    const int size = std::popcount(gray);
    total += ((size % 2) == (n % 2)) ? prod : -prod;
  }
  return static_cast<std::int64_t>(total);
}

std::int64_t permanent_bruteforce(std::span<const int> matrix, int n) {
  if (n > 10) throw CapacityError("permanent_bruteforce: order above 10");
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::int64_t total = 0;
  do {
    std::int64_t prod = 1;
    for (int i = 0; i < n; ++i) prod *= matrix[static_cast<std::size_t>(i) * n + perm[i]];
    total += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

}  // namespace wnl
