#pragma once

// Persistency of nonlocality bounds for W_N: lower bounds from critical
// noise thresholds of the reduced states rho(N, k), upper bounds from the
// two-setting locality of reduced W states.

#include <functional>
#include <map>
#include <set>
#include <optional>
#include <vector>

#include "wnl/numeric.hpp"

namespace wnl {

enum class Provenance { Family, LP };

const char* to_string(Provenance source);

struct PCritEntry {
  double p = 0;
  /// Exact threshold when known (family entries).
  std::optional<Rational> exact;
  Provenance source = Provenance::LP;
  bool verified = false;
  std::vector<double> angles;
};

class PCritTable;

/// Computes the threshold for one party count on demand and offers it to the
/// table, or leaves the gap.
using ThresholdSource = std::function<void(int n, PCritTable& table)>;

class PCritTable {
 public:
  explicit PCritTable(int m) : m_(m) {}

  int settings() const { return m_; }
  /// Keeps the larger threshold per n. Unverified LP entries are refused
  /// (returns false) so they can never feed a bound.
  bool offer(int n, PCritEntry entry);
  const PCritEntry* find(int n) const;
  const std::map<int, PCritEntry>& entries() const { return entries_; }
  /// Runs `source` for n unless it already ran for n on this table.
  void consult(int n, const ThresholdSource& source);

 private:
  int m_;
  std::map<int, PCritEntry> entries_;
  std::set<int> consulted_;
};

/// Exact family thresholds (2n-4)/(5n-2) for even n in [2, n_max].
PCritTable family_table(int n_max);

enum class GapPolicy {
  /// Any missing threshold that the scan reaches raises GapError.
  Strict,
  /// Missing thresholds are skipped and the bound is flagged partial.
  Partial,
};

struct PersistencyBound {
  int N = 0;
  int m = 0;
  int lower = 0;
  int upper = 0;
  /// Some thresholds that could have raised the lower bound were missing.
  bool partial = false;
  std::vector<int> missing;
  /// Party count n = N - k and threshold that set the lower bound.
  std::optional<int> witness_n;
  std::optional<double> witness_p;
  std::optional<Provenance> witness_source;
};

/// N - floor(N / m); once that many parties are lost the remaining state
/// admits an m-setting local model. Requires N >= m >= 2.
int upper_bound(int N, int m);

/// lower = k + 1 for the largest k with p_crit(N - k) > k / N, or 0 if no
/// threshold exceeds its level.
PersistencyBound lower_bound(int N, const PCritTable& table, GapPolicy policy = GapPolicy::Strict);

/// As above, consulting `source` for each n the scan reaches, in increasing
/// n, and stopping at the first threshold that settles the bound.
PersistencyBound lower_bound(int N, PCritTable& table, const ThresholdSource& source,
                             GapPolicy policy = GapPolicy::Strict);

/// Bounds for even N in [2, N_max] from family thresholds, m = 2.
std::vector<PersistencyBound> asymptotic_report(int N_max);
/// The same with family thresholds merged into `table` (e.g. odd-n LP entries).
std::vector<PersistencyBound> asymptotic_report(int N_max, PCritTable table);

}  // namespace wnl
