#pragma once

// Correlators of the W / vacuum mixture rho(n, p) = (1-p)|W_n><W_n| + p|0^n><0^n|
// when every party measures the same observables cos(theta_j) Z + sin(theta_j) X.

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "wnl/symcorr.hpp"

namespace wnl {

/// One angle per setting; setting j measures cos(theta_j) Z + sin(theta_j) X.
class MeasurementAngles {
 public:
  explicit MeasurementAngles(std::vector<double> angles);

  /// theta = (0, pi/2): the Z and X Pauli observables.
  static MeasurementAngles pauli_zx();

  int settings() const { return static_cast<int>(angles_.size()); }
  double operator[](int j) const { return angles_[static_cast<std::size_t>(j)]; }
  std::span<const double> values() const { return angles_; }

  /// Each angle reduced into [0, pi). Negating an observable relabels
  /// outcomes, which leaves the symmetric local polytope invariant.
  MeasurementAngles reduced() const;

 private:
  std::vector<double> angles_;
};

struct NoisyWState {
  int n = 1;
  double p = 0.0;

  NoisyWState(int parties, double vacuum_weight);
  /// rho(N, k): the W_N state with k parties traced out.
  static NoisyWState after_loss(int N, int k);
};

/// Observable directions with exact rational cosines and sines (c^2 + s^2 = 1),
/// for exact evaluation at Pauli or other rational points of the circle.
struct ExactDirections {
  std::vector<Rational> cos;
  std::vector<Rational> sin;

  ExactDirections(std::vector<Rational> cosines, std::vector<Rational> sines);
  static ExactDirections pauli_zx();
  int settings() const { return static_cast<int>(cos.size()); }
};

RealSymVector w_point(int n, const MeasurementAngles& angles);
RealSymVector product_point(int n, const MeasurementAngles& angles);
RealSymVector mixed_point(const NoisyWState& state, const MeasurementAngles& angles);

ExactSymVector w_point(int n, const ExactDirections& dirs);
ExactSymVector product_point(int n, const ExactDirections& dirs);
ExactSymVector mixed_point(int n, const Rational& p, const ExactDirections& dirs);

/// (1-p) a + p b, entrywise.
RealSymVector mix(const RealSymVector& p1, const RealSymVector& p0, double p);
ExactSymVector mix(const ExactSymVector& p1, const ExactSymVector& p0, const Rational& p);

inline constexpr int kMaxDenseOracleQubits = 12;

Eigen::VectorXd w_state_vector(int n);
Eigen::MatrixXd noisy_w_density(const NoisyWState& state);

/// Tr(rho O) from the dense 2^n statevector of W_n and O the full
/// tensor-product observable. `assignment[q]` is 0 for the identity or j+1 for
/// setting j on qubit q.
double dense_correlator(const NoisyWState& state, const MeasurementAngles& angles, std::span<const int> assignment);

/// dense_correlator with the first r_1 qubits on setting 1, the next r_2 on
/// setting 2, and so on; verification oracle for the closed forms.
double dense_oracle(const NoisyWState& state, const MeasurementAngles& angles, const SettingProfile& profile);

}  // namespace wnl
