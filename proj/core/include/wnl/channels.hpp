#pragma once

// Per-qubit amplitude damping (excitation loss) on dense n-qubit states.

#include <Eigen/Dense>

namespace wnl {

inline constexpr int kMaxChannelQubits = 10;

struct KrausPair {
  double p;
  Eigen::Matrix2d K0;
  Eigen::Matrix2d K1;

  explicit KrausPair(double loss);
  /// max |K0^T K0 + K1^T K1 - I|.
  double completeness_error() const;
};

/// sum over k in {0,1}^n of K_k rho K_k^T with K_k the tensor product of
/// single-qubit Kraus operators; applied one qubit at a time.
Eigen::MatrixXd amplitude_damp(const Eigen::MatrixXd& rho, double p);

/// K_k |psi> for one Kraus index vector (bit q of `kraus_bits` selects K1 on
/// qubit q).
Eigen::VectorXd apply_kraus(const Eigen::VectorXd& psi, const KrausPair& kraus, unsigned kraus_bits);

struct DampingReport {
  int n = 0;
  double p = 0;
  /// |K_0..0 rho_W K^T - (1-p) rho_W|_max.
  double no_loss_deviation = 0;
  /// Largest |K_k rho_W K_k^T - (p/n)|0><0||_max over single-loss vectors k.
  double single_loss_deviation = 0;
  /// Largest |K_k rho_W K_k^T|_max over vectors with two or more losses.
  double multi_loss_deviation = 0;
  /// Single-loss vectors with a nonzero contribution.
  int single_loss_sectors = 0;
  /// |amplitude_damp(rho_W) - rho(n, p)|_max.
  double identity_deviation = 0;
  double trace_deviation = 0;
  bool passed = false;

  double max_deviation() const;
};

DampingReport verify_w_damping_identity(int n, double p, double tol = 1e-12);

}  // namespace wnl
