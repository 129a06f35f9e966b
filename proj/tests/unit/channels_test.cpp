#include <gtest/gtest.h>

#include "wnl/channels.hpp"
#include "wnl/quantum.hpp"

using namespace wnl;

TEST(Channels, KrausCompleteness) {
  for (double p : {0.0, 0.3, 1.0}) EXPECT_LT(KrausPair(p).completeness_error(), 1e-15);
  EXPECT_THROW(KrausPair(1.2), ContractViolation);
}

TEST(Channels, ZeroLossIsIdentity) {
  const Eigen::MatrixXd rho = noisy_w_density(NoisyWState(3, 0.2));
  EXPECT_LT((amplitude_damp(rho, 0.0) - rho).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Channels, FullLossEmptiesWState) {
  const Eigen::MatrixXd rho = noisy_w_density(NoisyWState(3, 0.0));
  const Eigen::MatrixXd out = amplitude_damp(rho, 1.0);
  Eigen::MatrixXd vac = Eigen::MatrixXd::Zero(8, 8);
  vac(0, 0) = 1;
  EXPECT_LT((out - vac).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Channels, HalfLossGivesVacuumMixture) {
  const Eigen::MatrixXd rho = noisy_w_density(NoisyWState(3, 0.0));
  const Eigen::MatrixXd expect = noisy_w_density(NoisyWState(3, 0.5));
  EXPECT_LT((amplitude_damp(rho, 0.5) - expect).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Channels, DampingIdentityReports) {
  const DampingReport r = verify_w_damping_identity(3, 0.25);
  EXPECT_TRUE(r.passed);
  EXPECT_LT(r.max_deviation(), 1e-13);
  EXPECT_EQ(r.single_loss_sectors, 3);
  EXPECT_TRUE(verify_w_damping_identity(8, 0.9).passed);
  EXPECT_TRUE(verify_w_damping_identity(2, 0.0).passed);
}

TEST(Channels, KrausActionOnSingleQubit) {
  Eigen::VectorXd one(2);
  one << 0, 1;
  const KrausPair k(0.36);
  const Eigen::VectorXd kept = apply_kraus(one, k, 0);
  const Eigen::VectorXd lost = apply_kraus(one, k, 1);
  EXPECT_NEAR(kept(1), 0.8, 1e-15);
  EXPECT_NEAR(lost(0), 0.6, 1e-15);
}
