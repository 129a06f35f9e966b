#include "wnl/persistency.hpp"

#include "wnl/bellfamily.hpp"
#include "wnl/errors.hpp"

namespace wnl {

namespace {

// Margin for floating LP thresholds against the exact level k / N.
constexpr double kLevelMargin = 1e-9;

bool exceeds(const PCritEntry& e, int k, int N) {
  if (e.exact) return *e.exact > make_rational(k, N);
  return e.p > static_cast<double>(k) / N + kLevelMargin;
}

}  // namespace

const char* to_string(Provenance source) { return source == Provenance::Family ? "family" : "LP"; }

bool PCritTable::offer(int n, PCritEntry entry) {
  if (n < 1) throw ContractViolation("PCritTable: party count must be positive");
  if (entry.source == Provenance::LP && !entry.verified) return false;
  auto it = entries_.find(n);
  if (it == entries_.end()) {
    entries_.emplace(n, std::move(entry));
    return true;
  }
  const PCritEntry& old = it->second;
  const bool better = (entry.exact && old.exact) ? *entry.exact > *old.exact : entry.p > old.p + kLevelMargin;
  if (better) it->second = std::move(entry);
  return better;
}

const PCritEntry* PCritTable::find(int n) const {
  auto it = entries_.find(n);
  return it == entries_.end() ? nullptr : &it->second;
}

void PCritTable::consult(int n, const ThresholdSource& source) {
  if (consulted_.insert(n).second) source(n, *this);
}

PCritTable family_table(int n_max) {
  PCritTable table(2);
  for (int n = 2; n <= n_max; n += 2) {
    PCritEntry e;
    e.exact = pcrit_family_formula(n);
    e.p = e.exact->get_d();
    e.source = Provenance::Family;
    e.verified = true;
    e.angles = {0.0, 1.5707963267948966};
    table.offer(n, std::move(e));
  }
  return table;
}

int upper_bound(int N, int m) {
  if (m < 2) throw ContractViolation("upper_bound: need m >= 2");
  if (N < m) throw ContractViolation("upper_bound: undefined for N < m");
  return N - N / m;
}

PersistencyBound lower_bound(int N, const PCritTable& table, GapPolicy policy) {
  if (N < 2) throw ContractViolation("lower_bound: need N >= 2");
  PersistencyBound b;
  b.N = N;
  b.m = table.settings();
  b.upper = N >= b.m && b.m >= 2 ? upper_bound(N, b.m) : N - 1;

  for (int k = N - 2; k >= 0; --k) {
    const int n = N - k;
    const PCritEntry* e = table.find(n);
    if (!e) {
      b.missing.push_back(n);
      continue;
    }
    if (exceeds(*e, k, N)) {
      b.lower = k + 1;
      b.witness_n = n;
      b.witness_p = e->p;
      b.witness_source = e->source;
      break;
    }
  }
  if (!b.missing.empty()) {
    if (policy == GapPolicy::Strict) {
      std::string list;
      for (int n : b.missing) list += (list.empty() ? "" : ", ") + std::to_string(n);
      throw GapError("lower_bound: N = " + std::to_string(N) + " needs thresholds for n = " + list, b.missing);
    }
    b.partial = true;
  }
  return b;
}

PersistencyBound lower_bound(int N, PCritTable& table, const ThresholdSource& source, GapPolicy policy) {
  if (N < 2) throw ContractViolation("lower_bound: need N >= 2");
  for (int n = 2; n <= N; ++n) {
    table.consult(n, source);
    const PCritEntry* e = table.find(n);
    if (e && exceeds(*e, N - n, N)) break;
  }
  return lower_bound(N, table, policy);
}

std::vector<PersistencyBound> asymptotic_report(int N_max) { return asymptotic_report(N_max, PCritTable(2)); }

std::vector<PersistencyBound> asymptotic_report(int N_max, PCritTable table) {
  if (table.settings() != 2) throw ContractViolation("asymptotic_report: family thresholds need m = 2");
  const PCritTable family = family_table(N_max);
  for (const auto& [n, e] : family.entries()) table.offer(n, e);
  std::vector<PersistencyBound> out;
  for (int N = 2; N <= N_max; N += 2) out.push_back(lower_bound(N, table, GapPolicy::Partial));
  return out;
}

}  // namespace wnl
