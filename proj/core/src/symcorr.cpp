#include "wnl/symcorr.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

#include "wnl/permanent.hpp"

namespace wnl {

int SettingProfile::order() const { return std::accumulate(counts.begin(), counts.end(), 0); }

std::string profile_label(const SettingProfile& profile) {
  std::ostringstream out;
  if (profile.settings() == 2) {
    out << "S^" << profile.order() << "_" << profile.counts[0];
    return out.str();
  }
  out << "S[";
  for (int j = 0; j < profile.settings(); ++j) out << (j ? "," : "") << profile.counts[j];
  out << "]";
  return out.str();
}

namespace {

// Compositions of `total` into `parts` non-negative parts, first part
// descending, appended to `out` as flat rows.
void append_compositions(int total, int parts, std::vector<int>& prefix, std::vector<std::vector<int>>& out) {
  if (parts == 1) {
    prefix.push_back(total);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int first = total; first >= 0; --first) {
    prefix.push_back(first);
    append_compositions(total - first, parts - 1, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

ProfileIndex::ProfileIndex(int n, int m) : n_(n), m_(m) {
  if (n < 1 || m < 1) throw ContractViolation("ProfileIndex: need n >= 1 and m >= 1");
  if (n > 255) throw CapacityError("ProfileIndex: party count above 255 is not supported");
  long double keyspace = 1;
  for (int j = 0; j < m; ++j) keyspace *= (n + 1);
  if (keyspace > static_cast<long double>(std::numeric_limits<std::uint64_t>::max() / 2)) {
    throw CapacityError("ProfileIndex: (n+1)^m exceeds the profile key space");
  }

  std::vector<std::vector<int>> rows;
  std::vector<int> prefix;
  for (int o = 0; o <= n; ++o) append_compositions(o, m, prefix, rows);

  monomials_ = rows.size();
  counts_.reserve(monomials_ * m);
  orders_.reserve(monomials_);
  for (std::size_t i = 0; i < monomials_; ++i) {
    int order = 0;
    for (int c : rows[i]) {
      counts_.push_back(static_cast<std::uint8_t>(c));
      order += c;
    }
    orders_.push_back(order);
    lookup_.emplace(key(rows[i]), i);
  }

  lower_.assign(monomials_ * m, -1);
  for (std::size_t i = 0; i < monomials_; ++i) {
    std::vector<int> c = rows[i];
    for (int j = 0; j < m; ++j) {
      if (c[j] == 0) continue;
      --c[j];
      lower_[i * m + j] = static_cast<std::int32_t>(lookup_.at(key(c)));
      ++c[j];
    }
  }

  if (n <= 20) {
    weights_.reserve(monomials_);
    for (std::size_t i = 0; i < monomials_; ++i) {
      std::int64_t w = factorial_i64(static_cast<unsigned>(n - orders_[i]));
      for (int c : rows[i]) w *= factorial_i64(static_cast<unsigned>(c));
      weights_.push_back(w);
    }
  }
}

std::shared_ptr<const ProfileIndex> ProfileIndex::make(int n, int m) {
  return std::shared_ptr<const ProfileIndex>(new ProfileIndex(n, m));
}

std::uint64_t ProfileIndex::key(std::span<const int> counts) const {
  std::uint64_t k = 0;
  for (int c : counts) k = k * static_cast<std::uint64_t>(n_ + 1) + static_cast<std::uint64_t>(c);
  return k;
}

SettingProfile ProfileIndex::profile(std::size_t i) const {
  SettingProfile p;
  p.parties = n_;
  const auto c = counts(i);
  p.counts.assign(c.begin(), c.end());
  return p;
}

std::int64_t ProfileIndex::arrangement_weight(std::size_t mono) const {
  if (weights_.empty()) throw CapacityError("ProfileIndex: arrangement weights need n <= 20");
  return weights_[mono];
}

std::size_t ProfileIndex::find(std::span<const int> counts) const {
  if (static_cast<int>(counts.size()) != m_) throw ContractViolation("ProfileIndex::find: wrong setting count");
  int order = 0;
  for (int c : counts) {
    if (c < 0) throw ContractViolation("ProfileIndex::find: negative count");
    order += c;
  }
  if (order < 1 || order > n_) throw ContractViolation("ProfileIndex::find: order outside 1..n");
  return lookup_.at(key(counts)) - 1;
}

std::vector<SettingProfile> enumerate_profiles(int n, int m) {
  const auto index = ProfileIndex::make(n, m);
  std::vector<SettingProfile> out;
  out.reserve(index->size());
  for (std::size_t i = 0; i < index->size(); ++i) out.push_back(index->profile(i));
  return out;
}

RealSymVector to_real(const ExactSymVector& exact) {
  std::vector<double> values;
  values.reserve(exact.size());
  for (const auto& v : exact.values()) values.push_back(v.get_d());
  return RealSymVector(exact.index_ptr(), std::move(values));
}

// ---------------------------------------------------------------------------

StrategyCounts::StrategyCounts(int m, std::vector<int> counts) : m_(m), n_(0), counts_(std::move(counts)) {
  if (m < 1 || m > 8) throw ContractViolation("StrategyCounts: settings count must be in 1..8");
  if (counts_.size() != (std::size_t{1} << m)) {
    throw ContractViolation("StrategyCounts: expected 2^m multiplicities");
  }
  for (int c : counts_) {
    if (c < 0) throw ContractViolation("StrategyCounts: negative multiplicity");
    n_ += c;
  }
}

StrategyCounts StrategyCounts::from_tuple(int a, int b, int c, int d) {
  return StrategyCounts(2, {a, b, c, d});
}

std::string to_string(const StrategyCounts& strategy) {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < strategy.type_count(); ++i) out << (i ? "," : "") << strategy.counts()[i];
  out << ")";
  return out.str();
}

CorrelatorPolynomial::CorrelatorPolynomial(const ProfileIndex& index)
    : index_(&index), coeffs_(index.monomial_count(), 0) {
  coeffs_[0] = 1;
}

void CorrelatorPolynomial::reset() {
  std::fill(coeffs_.begin(), coeffs_.end(), 0);
  coeffs_[0] = 1;
}

void CorrelatorPolynomial::assign(std::span<const std::int64_t> coeffs) {
  std::copy(coeffs.begin(), coeffs.end(), coeffs_.begin());
}

void CorrelatorPolynomial::multiply_in_place(const ProfileIndex& index, unsigned code,
                                             std::span<std::int64_t> coeffs) {
  const int m = index.settings();
  int signs[8];
  for (int j = 0; j < m; ++j) signs[j] = StrategyCounts::sign(code, j, m);
  // Descending monomial index visits higher orders first, so every lower
  // neighbour still holds its old value when read.
  for (std::size_t mono = coeffs.size(); mono-- > 1;) {
    std::int64_t acc = coeffs[mono];
    for (int j = 0; j < m; ++j) {
      const std::int32_t low = index.lower(mono, j);
      if (low >= 0) acc += signs[j] * coeffs[static_cast<std::size_t>(low)];
    }
    coeffs[mono] = acc;
  }
}

std::vector<std::int64_t> scaled_vertex_image(const StrategyCounts& strategy, const ProfileIndex& index) {
  if (strategy.parties() != index.parties() || strategy.settings() != index.settings()) {
    throw ContractViolation("vertex_image: strategy does not match (n, m)");
  }
  if (index.parties() > 20) throw CapacityError("vertex_image: exact images need n <= 20");
  CorrelatorPolynomial poly(index);
  for (unsigned code = 0; code < strategy.type_count(); ++code) {
    for (int t = 0; t < strategy.count(code); ++t) poly.multiply_type(code);
  }
  const auto coeffs = poly.coefficients();
  std::vector<std::int64_t> out(index.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = coeffs[i + 1] * index.arrangement_weight(i + 1);
  return out;
}

ExactSymVector vertex_image(const StrategyCounts& strategy, ProfileIndexPtr index) {
  const auto scaled = scaled_vertex_image(strategy, *index);
  const Integer nfact = factorial(static_cast<unsigned>(index->parties()));
  std::vector<Rational> values;
  values.reserve(scaled.size());
  for (std::int64_t v : scaled) {
    Rational q(Integer(static_cast<long>(v)), nfact);
    q.canonicalize();
    values.push_back(std::move(q));
  }
  return ExactSymVector(std::move(index), std::move(values));
}

ExactSymVector vertex_image(const StrategyCounts& strategy) {
  return vertex_image(strategy, ProfileIndex::make(strategy.parties(), strategy.settings()));
}

std::vector<int> correlator_matrix(const StrategyCounts& strategy, int order, int r) {
  if (strategy.settings() != 2) throw ContractViolation("correlator_matrix: m = 2 only");
  const int n = strategy.parties();
  const int a = strategy.count(0), b = strategy.count(1), c = strategy.count(2);
  if (order < 0 || order > n || r < 0 || r > order) throw ContractViolation("correlator_matrix: bad (o, r)");
  std::vector<int> mat(static_cast<std::size_t>(n) * n, 1);
  for (int u = 1; u <= n; ++u) {
    for (int v = 1; v <= n; ++v) {
      int entry = 1;
      if (n - order < u && u <= n - order + r && a + b < v) entry = -1;
      if (n - order + r < u && ((a < v && v <= a + b) || a + b + c < v)) entry = -1;
      mat[static_cast<std::size_t>(u - 1) * n + (v - 1)] = entry;
    }
  }
  return mat;
}

Rational vertex_image_permanent(const StrategyCounts& strategy, const SettingProfile& profile) {
  if (strategy.settings() != 2 || profile.settings() != 2) {
    throw ContractViolation("vertex_image_permanent: m = 2 only");
  }
  const int n = strategy.parties();
  if (profile.parties != n) throw ContractViolation("vertex_image_permanent: profile / strategy n mismatch");
  if (n > kMaxPermanentOrder) throw CapacityError("vertex_image_permanent: n above 14");
  const auto mat = correlator_matrix(strategy, profile.order(), profile.counts[0]);
  Rational out(Integer(static_cast<long>(permanent_pm1(mat, n))), factorial(static_cast<unsigned>(n)));
  out.canonicalize();
  return out;
}

Rational s_o1_closed_form(int a, int b, int c, int d, int order) {
  const int n = a + b + c + d;
  if (a < 0 || b < 0 || c < 0 || d < 0 || n < 1) throw ContractViolation("s_o1_closed_form: bad tuple");
  if (order < 1 || order > n) throw ContractViolation("s_o1_closed_form: order outside 1..n");
  Integer first = 0;
  Integer second = 0;
  for (int k = 0; k <= n; ++k) {
    const Integer sign = (k % 2 == 0) ? 1 : -1;
    first += sign * binomial(n - a - c, k) * binomial(a + c - 1, order - 1 - k);
    second += sign * binomial(n - a - c - 1, k) * binomial(a + c, order - 1 - k);
  }
  const Integer total = factorial(static_cast<unsigned>(order - 1)) * factorial(static_cast<unsigned>(n - order)) *
                        (Integer(a - c) * first + Integer(a + 2 * b + c - n) * second);
  Rational out(total, factorial(static_cast<unsigned>(n)));
  out.canonicalize();
  return out;
}

// ---------------------------------------------------------------------------

bool BellFunctional::is_zero() const {
  return std::all_of(alpha.begin(), alpha.end(), [](const Rational& q) { return sgn(q) == 0; });
}

BellFunctional zero_functional(ProfileIndexPtr index) {
  BellFunctional f;
  f.alpha.assign(index->size(), Rational(0));
  f.index = std::move(index);
  f.beta = 0;
  return f;
}

namespace {

void check_dims(const BellFunctional& func, const ProfileIndex& index) {
  if (!func.index || func.alpha.size() != func.index->size()) {
    throw ContractViolation("apply_functional: malformed functional");
  }
  if (func.index->parties() != index.parties() || func.index->settings() != index.settings()) {
    throw ContractViolation("apply_functional: dimension mismatch");
  }
}

}  // namespace

Rational apply_functional(const BellFunctional& func, const ExactSymVector& point) {
  check_dims(func, point.index());
  Rational acc = 0;
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (sgn(func.alpha[i]) != 0) acc += func.alpha[i] * point[i];
  }
  return acc * factorial(static_cast<unsigned>(point.parties()));
}

long double apply_functional(const BellFunctional& func, const RealSymVector& point) {
  check_dims(func, point.index());
  long double acc = 0;
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (sgn(func.alpha[i]) != 0) acc += to_long_double(func.alpha[i]) * point[i];
  }
  return acc * to_long_double(Rational(factorial(static_cast<unsigned>(point.parties()))));
}

std::string format_functional(const BellFunctional& func) {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < func.alpha.size(); ++i) {
    const Rational& q = func.alpha[i];
    if (sgn(q) == 0) continue;
    const Rational mag = abs(q);
    if (first) {
      if (sgn(q) < 0) out << "-";
    } else {
      out << (sgn(q) < 0 ? " - " : " + ");
    }
    if (mag != 1) out << mag.get_str() << " ";
    out << profile_label(func.index->profile(i));
    first = false;
  }
  if (first) out << "0";
  out << " <= " << func.beta.get_str();
  return out.str();
}

}  // namespace wnl
