#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "wnl/quantum.hpp"

using namespace wnl;

namespace {

constexpr double kPi = std::numbers::pi;

SettingProfile s2(int n, int order, int r) { return SettingProfile{n, {r, order - r}}; }

MeasurementAngles random_angles(std::mt19937_64& rng, int m) {
  std::uniform_real_distribution<double> u(0.0, kPi);
  std::vector<double> a(static_cast<std::size_t>(m));
  for (double& x : a) x = u(rng);
  return MeasurementAngles(a);
}

}  // namespace

TEST(Quantum, PauliValuesOfWState) {
  const auto w = w_point(4, MeasurementAngles::pauli_zx());
  EXPECT_NEAR(w.at(s2(4, 1, 1)), 0.5, 1e-15);
  EXPECT_NEAR(w.at(s2(4, 2, 0)), 0.5, 1e-15);
  const auto exact = w_point(4, ExactDirections::pauli_zx());
  EXPECT_EQ(exact.at(s2(4, 1, 1)), make_rational(1, 2));
  EXPECT_EQ(exact.at(s2(4, 2, 0)), make_rational(1, 2));
}

TEST(Quantum, ExactPauliPointsFollowClosedForm) {
  for (int n = 2; n <= 10; ++n) {
    const auto w = w_point(n, ExactDirections::pauli_zx());
    const auto vac = product_point(n, ExactDirections::pauli_zx());
    for (std::size_t i = 0; i < w.size(); ++i) {
      const SettingProfile pr = w.index().profile(i);
      const int r = pr.counts[0];
      const int o = pr.order();
      Rational expect_w = (o == r) ? make_rational(n - 2 * r, n) : Rational(0);
      if (o == r + 2) expect_w = make_rational(2, n);
      EXPECT_EQ(w[i], expect_w) << profile_label(pr);
      EXPECT_EQ(vac[i], o == r ? Rational(1) : Rational(0)) << profile_label(pr);
    }
  }
}

TEST(Quantum, ClosedFormsMatchDenseOracle) {
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 6; ++n) {
    for (int trial = 0; trial < 3; ++trial) {
      const MeasurementAngles ang = random_angles(rng, 2);
      const double p = 0.3;
      const auto mixed = mixed_point(NoisyWState(n, p), ang);
      for (std::size_t i = 0; i < mixed.size(); ++i) {
        EXPECT_NEAR(mixed[i], dense_oracle(NoisyWState(n, p), ang, mixed.index().profile(i)), 1e-10);
      }
    }
  }
}

TEST(Quantum, ThreeSettingPointsMatchDenseOracle) {
  std::mt19937_64 rng(5);
  const MeasurementAngles ang = random_angles(rng, 3);
  const auto w = w_point(4, ang);
  for (std::size_t i = 0; i < w.size(); ++i) {
    EXPECT_NEAR(w[i], dense_oracle(NoisyWState(4, 0.0), ang, w.index().profile(i)), 1e-10);
  }
}

TEST(Quantum, MixtureEndpoints) {
  const MeasurementAngles ang({0.3, 1.9});
  const auto w = w_point(5, ang);
  const auto vac = product_point(5, ang);
  const auto at0 = mixed_point(NoisyWState(5, 0.0), ang);
  const auto at1 = mixed_point(NoisyWState(5, 1.0), ang);
  for (std::size_t i = 0; i < w.size(); ++i) {
    EXPECT_DOUBLE_EQ(at0[i], w[i]);
    EXPECT_DOUBLE_EQ(at1[i], vac[i]);
  }
}

TEST(Quantum, LossStateMixture) {
  const NoisyWState s = NoisyWState::after_loss(10, 3);
  EXPECT_EQ(s.n, 7);
  EXPECT_DOUBLE_EQ(s.p, 0.3);
  EXPECT_THROW(NoisyWState::after_loss(4, 4), ContractViolation);
  EXPECT_THROW(NoisyWState(3, 1.5), ContractViolation);
}

TEST(Quantum, DenseStateIsNormalized) {
  const auto psi = w_state_vector(5);
  EXPECT_NEAR(psi.norm(), 1.0, 1e-15);
  const auto rho = noisy_w_density(NoisyWState(4, 0.25));
  EXPECT_NEAR(rho.trace(), 1.0, 1e-14);
  EXPECT_NEAR(rho(0, 0), 0.25, 1e-15);
  EXPECT_THROW(noisy_w_density(NoisyWState(kMaxDenseOracleQubits + 1, 0.0)), CapacityError);
}

TEST(Quantum, ReducedAnglesStayInHalfCircle) {
  const auto r = MeasurementAngles({-0.5, 4.0}).reduced();
  EXPECT_NEAR(r[0], kPi - 0.5, 1e-15);
  EXPECT_NEAR(r[1], 4.0 - kPi, 1e-15);
}
