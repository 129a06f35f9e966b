#include <gtest/gtest.h>

#include "wnl/bellfamily.hpp"
#include "wnl/quantum.hpp"
#include "wnl/vertex_set.hpp"

using namespace wnl;

namespace {

const Rational& coeff(const BellFunctional& f, int order, int r) {
  return f.coefficient(SettingProfile{f.parties(), {r, order - r}});
}

}  // namespace

TEST(Family, FourPartyCoefficients) {
  const BellFunctional f = family_coefficients(4);
  EXPECT_EQ(coeff(f, 1, 1), 12);
  EXPECT_EQ(coeff(f, 2, 2), -12);
  EXPECT_EQ(coeff(f, 2, 0), -6);
  EXPECT_EQ(coeff(f, 3, 1), 12);
  EXPECT_EQ(coeff(f, 4, 0), 1);
  int nonzero = 0;
  for (const auto& a : f.alpha) nonzero += sgn(a) != 0;
  EXPECT_EQ(nonzero, 5);
  EXPECT_EQ(f.beta, 168);
}

TEST(Family, Constants) {
  EXPECT_EQ(family_constants(4).w, 12);
  EXPECT_EQ(family_constants(6).w, 48);
  EXPECT_EQ(family_constants(8).w, 128);
  EXPECT_EQ(family_beta(6), 24480);
  EXPECT_EQ(family_beta(8), 4072320);
  EXPECT_THROW(family_constants(5), ContractViolation);
}

TEST(Family, ClassicalValues) {
  EXPECT_EQ(family_classical_value(4, 0, 0, 0), 168);
  EXPECT_LE(family_classical_value(0, 0, 0, 4), family_beta(4));
  EXPECT_THROW(family_classical_value(1, 0, 0, 0), ContractViolation);
}

TEST(Family, ThreeEvaluatorsAgree) {
  for (int n = 2; n <= 8; n += 2) {
    const VertexSet vs(n, 2);
    const BellFunctional f = family_coefficients(n);
    for (std::size_t v = 0; v < vs.size(); ++v) {
      const StrategyCounts st = vs.strategy(v);
      const int a = st.count(0), b = st.count(1), c = st.count(2), d = st.count(3);
      const Rational via_image = apply_functional(f, vs.image(v));
      ASSERT_EQ(family_classical_value(a, b, c, d), via_image) << to_string(st);
      ASSERT_EQ(family_classical_value_split(a, b, c, d).total(), via_image) << to_string(st);
    }
  }
}

TEST(Family, EnumeratedLocalBound) {
  const FamilyLocalBound four = family_local_bound_enumerate(4);
  EXPECT_EQ(four.value, 168);
  EXPECT_EQ(four.argmax, StrategyCounts::from_tuple(4, 0, 0, 0));
  for (int n = 6; n <= 10; n += 2) EXPECT_EQ(family_local_bound_enumerate(n).value, family_beta(n)) << n;
}

TEST(Family, QuantumValues) {
  EXPECT_EQ(family_quantum_value(4, 0), 216);
  EXPECT_EQ(family_quantum_value(4, 1), 0);
  EXPECT_EQ(family_quantum_value(4, make_rational(2, 9)), 168);
  for (int n = 4; n <= 10; n += 2) {
    const BellFunctional f = family_coefficients(n);
    const Rational p = pcrit_family(n);
    const auto point = mixed_point(n, p, ExactDirections::pauli_zx());
    EXPECT_EQ(apply_functional(f, point), f.beta) << n;
  }
}

TEST(Family, Thresholds) {
  EXPECT_EQ(pcrit_family(4), make_rational(2, 9));
  EXPECT_EQ(pcrit_family(50), make_rational(96, 248));
  EXPECT_NEAR(pcrit_family(50).get_d(), 0.3871, 5e-5);
  EXPECT_NEAR(pcrit_family(2000).get_d(), 0.4, 1e-3);
  EXPECT_EQ(pcrit_family(2), 0);
  EXPECT_TRUE(family_degenerate(2));
}
