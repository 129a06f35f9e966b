#include "wnl/quantum.hpp"

#include <cmath>
#include <numbers>

namespace wnl {

MeasurementAngles::MeasurementAngles(std::vector<double> angles) : angles_(std::move(angles)) {
  if (angles_.empty()) throw ContractViolation("MeasurementAngles: need at least one setting");
  for (double a : angles_) {
    if (!std::isfinite(a)) throw ContractViolation("MeasurementAngles: non-finite angle");
  }
}

MeasurementAngles MeasurementAngles::pauli_zx() { return MeasurementAngles({0.0, std::numbers::pi / 2}); }

MeasurementAngles MeasurementAngles::reduced() const {
  std::vector<double> out(angles_);
  for (double& a : out) {
    a = std::fmod(a, std::numbers::pi);
    if (a < 0) a += std::numbers::pi;
    if (a >= std::numbers::pi) a = 0.0;
  }
  return MeasurementAngles(std::move(out));
}

NoisyWState::NoisyWState(int parties, double vacuum_weight) : n(parties), p(vacuum_weight) {
  if (parties < 1) throw ContractViolation("NoisyWState: need n >= 1");
  if (!(vacuum_weight >= 0.0 && vacuum_weight <= 1.0)) throw ContractViolation("NoisyWState: p outside [0, 1]");
}

NoisyWState NoisyWState::after_loss(int N, int k) {
  if (k < 0 || k >= N) throw ContractViolation("NoisyWState::after_loss: need 0 <= k < N");
  return NoisyWState(N - k, static_cast<double>(k) / N);
}

ExactDirections::ExactDirections(std::vector<Rational> cosines, std::vector<Rational> sines)
    : cos(std::move(cosines)), sin(std::move(sines)) {
  if (cos.empty() || cos.size() != sin.size()) throw ContractViolation("ExactDirections: size mismatch");
  for (std::size_t j = 0; j < cos.size(); ++j) {
    if (cos[j] * cos[j] + sin[j] * sin[j] != 1) throw ContractViolation("ExactDirections: not a unit vector");
  }
}

ExactDirections ExactDirections::pauli_zx() { return ExactDirections({Rational(1), Rational(0)}, {Rational(0), Rational(1)}); }

namespace {

// Closed forms over one-excitation states. Products that exclude some cosine
// factors are formed from lowered exponents, never by division, so zero
// cosines are handled exactly.
template <class T>
std::vector<T> w_values(const ProfileIndex& index, std::span<const T> c, std::span<const T> s) {
  const int n = index.parties();
  const int m = index.settings();
  std::vector<std::vector<T>> pw(static_cast<std::size_t>(m), std::vector<T>(static_cast<std::size_t>(n) + 1));
  for (int j = 0; j < m; ++j) {
    pw[j][0] = T(1);
    for (int e = 1; e <= n; ++e) pw[j][e] = pw[j][e - 1] * c[j];
  }
  std::vector<int> r(static_cast<std::size_t>(m));
  auto lowered = [&](int j1, int d1, int j2, int d2) {
    T acc(1);
    for (int j = 0; j < m; ++j) {
      int e = r[j];
      if (j == j1) e -= d1;
      if (j == j2) e -= d2;
      acc *= pw[j][e];
    }
    return acc;
  };

  std::vector<T> out;
  out.reserve(index.size());
  for (std::size_t i = 0; i < index.size(); ++i) {
    const auto counts = index.counts(i);
    for (int j = 0; j < m; ++j) r[j] = counts[j];
    const int o = index.order(i);
    T total = T(n - 2 * o) * lowered(-1, 0, -1, 0);
    for (int j = 0; j < m; ++j) {
      if (r[j] >= 2) total += T(r[j] * (r[j] - 1)) * s[j] * s[j] * lowered(j, 2, -1, 0);
      for (int k = 0; k < m; ++k) {
        if (k == j || r[j] < 1 || r[k] < 1) continue;
        total += T(r[j] * r[k]) * s[j] * s[k] * lowered(j, 1, k, 1);
      }
    }
    out.push_back(total / T(n));
  }
  return out;
}

template <class T>
std::vector<T> product_values(const ProfileIndex& index, std::span<const T> c) {
  std::vector<T> out;
  out.reserve(index.size());
  for (std::size_t i = 0; i < index.size(); ++i) {
    const auto counts = index.counts(i);
    T acc(1);
    for (int j = 0; j < index.settings(); ++j) {
      for (int e = 0; e < counts[j]; ++e) acc *= c[j];
    }
    out.push_back(acc);
  }
  return out;
}

struct Trig {
  std::vector<double> c, s;
};

Trig trig(const MeasurementAngles& angles) {
  Trig t;
  for (double a : angles.values()) {
    t.c.push_back(std::cos(a));
    t.s.push_back(std::sin(a));
  }
  return t;
}

}  // namespace

RealSymVector w_point(int n, const MeasurementAngles& angles) {
  auto index = ProfileIndex::make(n, angles.settings());
  const Trig t = trig(angles);
  auto values = w_values<double>(*index, t.c, t.s);
  return RealSymVector(std::move(index), std::move(values));
}

RealSymVector product_point(int n, const MeasurementAngles& angles) {
  auto index = ProfileIndex::make(n, angles.settings());
  const Trig t = trig(angles);
  auto values = product_values<double>(*index, t.c);
  return RealSymVector(std::move(index), std::move(values));
}

RealSymVector mix(const RealSymVector& p1, const RealSymVector& p0, double p) {
  if (!p1.same_space(p0.index())) throw ContractViolation("mix: points live in different spaces");
  std::vector<double> values(p1.size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = (1.0 - p) * p1[i] + p * p0[i];
  return RealSymVector(p1.index_ptr(), std::move(values));
}

ExactSymVector mix(const ExactSymVector& p1, const ExactSymVector& p0, const Rational& p) {
  if (!p1.same_space(p0.index())) throw ContractViolation("mix: points live in different spaces");
  std::vector<Rational> values(p1.size());
  const Rational q = 1 - p;
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = q * p1[i] + p * p0[i];
  return ExactSymVector(p1.index_ptr(), std::move(values));
}

RealSymVector mixed_point(const NoisyWState& state, const MeasurementAngles& angles) {
  return mix(w_point(state.n, angles), product_point(state.n, angles), state.p);
}

ExactSymVector w_point(int n, const ExactDirections& dirs) {
  auto index = ProfileIndex::make(n, dirs.settings());
  auto values = w_values<Rational>(*index, dirs.cos, dirs.sin);
  return ExactSymVector(std::move(index), std::move(values));
}

ExactSymVector product_point(int n, const ExactDirections& dirs) {
  auto index = ProfileIndex::make(n, dirs.settings());
  auto values = product_values<Rational>(*index, dirs.cos);
  return ExactSymVector(std::move(index), std::move(values));
}

ExactSymVector mixed_point(int n, const Rational& p, const ExactDirections& dirs) {
  if (p < 0 || p > 1) throw ContractViolation("mixed_point: p outside [0, 1]");
  return mix(w_point(n, dirs), product_point(n, dirs), p);
}

// ---------------------------------------------------------------------------

Eigen::VectorXd w_state_vector(int n) {
  if (n < 1 || n > 20) throw CapacityError("w_state_vector: n outside 1..20");
  Eigen::VectorXd psi = Eigen::VectorXd::Zero(Eigen::Index{1} << n);
  const double amp = 1.0 / std::sqrt(static_cast<double>(n));
  for (int q = 0; q < n; ++q) psi[Eigen::Index{1} << q] = amp;
  return psi;
}

Eigen::MatrixXd noisy_w_density(const NoisyWState& state) {
  if (state.n > kMaxDenseOracleQubits) throw CapacityError("noisy_w_density: n above 12");
  const Eigen::VectorXd psi = w_state_vector(state.n);
  Eigen::MatrixXd rho = (1.0 - state.p) * psi * psi.transpose();
  rho(0, 0) += state.p;
  return rho;
}

double dense_correlator(const NoisyWState& state, const MeasurementAngles& angles, std::span<const int> assignment) {
  const int n = state.n;
  if (n > kMaxDenseOracleQubits) throw CapacityError("dense_oracle: n above 12");
  if (static_cast<int>(assignment.size()) != n) throw ContractViolation("dense_oracle: assignment size != n");

  // Per-qubit 2x2 factors; qubit q is bit q of the basis index.
  std::vector<Eigen::Matrix2d> factor(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) {
    const int setting = assignment[q];
    if (setting < 0 || setting > angles.settings()) throw ContractViolation("dense_oracle: bad setting label");
    if (setting == 0) {
      factor[q] = Eigen::Matrix2d::Identity();
    } else {
      const double th = angles[setting - 1];
      factor[q] << std::cos(th), std::sin(th), std::sin(th), -std::cos(th);
    }
  }

  // Tr(rho O) = (1-p) <W|O|W> + p <0|O|0>, with O(a,b) the product of the
  // per-qubit entries; the Kronecker product is evaluated entrywise over the
  // nonzero amplitudes of the dense statevector.
  const Eigen::VectorXd psi = w_state_vector(n);
  std::vector<Eigen::Index> support;
  for (Eigen::Index a = 0; a < psi.size(); ++a) {
    if (psi[a] != 0.0) support.push_back(a);
  }
  const auto entry = [&](Eigen::Index a, Eigen::Index b) {
    double o = 1.0;
    for (int q = 0; q < n && o != 0.0; ++q) o *= factor[q]((a >> q) & 1, (b >> q) & 1);
    return o;
  };
  long double acc = 0;
  for (Eigen::Index a : support) {
    for (Eigen::Index b : support) acc += psi[a] * psi[b] * entry(a, b);
  }
  return static_cast<double>((1.0L - state.p) * acc + state.p * entry(0, 0));
}

double dense_oracle(const NoisyWState& state, const MeasurementAngles& angles, const SettingProfile& profile) {
  if (profile.parties != state.n || profile.settings() != angles.settings()) {
    throw ContractViolation("dense_oracle: profile does not match state / angles");
  }
  std::vector<int> assignment;
  assignment.reserve(static_cast<std::size_t>(state.n));
  for (int j = 0; j < profile.settings(); ++j) {
    for (int t = 0; t < profile.counts[j]; ++t) assignment.push_back(j + 1);
  }
  while (static_cast<int>(assignment.size()) < state.n) assignment.push_back(0);
  return dense_correlator(state, angles, assignment);
}

}  // namespace wnl
