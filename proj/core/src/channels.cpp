#include "wnl/channels.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "wnl/errors.hpp"
#include "wnl/quantum.hpp"

namespace wnl {

namespace {

int qubits_of(Eigen::Index dim) {
  if (dim < 2 || (dim & (dim - 1)) != 0) throw ContractViolation("amplitude_damp: dimension is not a power of two");
  return std::countr_zero(static_cast<unsigned long long>(dim));
}

void check_loss(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ContractViolation("amplitude_damp: p outside [0, 1]");
}

// M acting on qubit q from the left, applied to every column.
Eigen::MatrixXd apply_left(const Eigen::MatrixXd& a, const Eigen::Matrix2d& m, int q) {
  Eigen::MatrixXd out(a.rows(), a.cols());
  const Eigen::Index bit = Eigen::Index{1} << q;
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    if (r & bit) continue;
    const Eigen::Index r1 = r | bit;
    out.row(r) = m(0, 0) * a.row(r) + m(0, 1) * a.row(r1);
    out.row(r1) = m(1, 0) * a.row(r) + m(1, 1) * a.row(r1);
  }
  return out;
}

// M rho M^T on qubit q.
Eigen::MatrixXd conjugate(const Eigen::MatrixXd& rho, const Eigen::Matrix2d& m, int q) {
  const Eigen::MatrixXd left = apply_left(rho, m, q);
  return apply_left(left.transpose(), m, q).transpose();
}

double max_abs(const Eigen::MatrixXd& a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

KrausPair::KrausPair(double loss) : p(loss) {
  check_loss(loss);
  K0 << 1.0, 0.0, 0.0, std::sqrt(1.0 - loss);
  K1 << 0.0, std::sqrt(loss), 0.0, 0.0;
}

double KrausPair::completeness_error() const {
  return max_abs(K0.transpose() * K0 + K1.transpose() * K1 - Eigen::Matrix2d::Identity());
}

Eigen::MatrixXd amplitude_damp(const Eigen::MatrixXd& rho, double p) {
  check_loss(p);
  if (rho.rows() != rho.cols()) throw ContractViolation("amplitude_damp: density operator must be square");
  const int n = qubits_of(rho.rows());
  if (n > kMaxChannelQubits) throw CapacityError("amplitude_damp: more than 10 qubits");
  if (std::abs(rho.trace() - 1.0) > 1e-12) throw ContractViolation("amplitude_damp: input trace differs from 1");
  const KrausPair kraus(p);
  Eigen::MatrixXd out = rho;
  for (int q = 0; q < n; ++q) out = conjugate(out, kraus.K0, q) + conjugate(out, kraus.K1, q);
  return out;
}

Eigen::VectorXd apply_kraus(const Eigen::VectorXd& psi, const KrausPair& kraus, unsigned kraus_bits) {
  const int n = qubits_of(psi.size());
  Eigen::VectorXd out = psi;
  for (int q = 0; q < n; ++q) {
    const Eigen::Matrix2d& m = ((kraus_bits >> q) & 1U) ? kraus.K1 : kraus.K0;
    const Eigen::Index bit = Eigen::Index{1} << q;
    for (Eigen::Index i = 0; i < out.size(); ++i) {
      if (i & bit) continue;
      const double v0 = out[i];
      const double v1 = out[i | bit];
      out[i] = m(0, 0) * v0 + m(0, 1) * v1;
      out[i | bit] = m(1, 0) * v0 + m(1, 1) * v1;
    }
  }
  return out;
}

double DampingReport::max_deviation() const {
  return std::max({no_loss_deviation, single_loss_deviation, multi_loss_deviation, identity_deviation, trace_deviation});
}

DampingReport verify_w_damping_identity(int n, double p, double tol) {
  if (n < 1 || n > kMaxChannelQubits) throw CapacityError("verify_w_damping_identity: n outside 1..10");
  check_loss(p);
  DampingReport r;
  r.n = n;
  r.p = p;

  const KrausPair kraus(p);
  const Eigen::VectorXd w = w_state_vector(n);
  const Eigen::MatrixXd rho_w = w * w.transpose();
  const Eigen::Index dim = w.size();
  Eigen::MatrixXd vacuum = Eigen::MatrixXd::Zero(dim, dim);
  vacuum(0, 0) = 1.0;

  for (unsigned k = 0; k < (1U << n); ++k) {
    const Eigen::VectorXd v = apply_kraus(w, kraus, k);
    const Eigen::MatrixXd term = v * v.transpose();
    const int losses = std::popcount(k);
    if (losses == 0) {
      r.no_loss_deviation = max_abs(term - (1.0 - p) * rho_w);
    } else if (losses == 1) {
      r.single_loss_deviation = std::max(r.single_loss_deviation, max_abs(term - (p / n) * vacuum));
      if (max_abs(term) > tol) ++r.single_loss_sectors;
    } else {
      r.multi_loss_deviation = std::max(r.multi_loss_deviation, max_abs(term));
    }
  }

  const Eigen::MatrixXd damped = amplitude_damp(rho_w, p);
  r.identity_deviation = max_abs(damped - noisy_w_density(NoisyWState(n, p)));
  r.trace_deviation = std::abs(damped.trace() - 1.0);
  const bool sectors_ok = p > tol ? r.single_loss_sectors == n : r.single_loss_sectors == 0;
  r.passed = r.max_deviation() <= tol && sectors_ok;
  return r;
}

}  // namespace wnl
