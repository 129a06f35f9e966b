#include <gtest/gtest.h>

#include <vector>

#include "wnl/simplex.hpp"

using namespace wnl::lp;

namespace {

void add(RestrictedMaster& m, std::vector<double> a, double cost) { m.add_column(a, cost); }

}  // namespace

TEST(Simplex, SmallLinearProgram) {
  // x1 + x2 + x3 = 1, x1 - x3 = 0.2, min x1 + 2 x2
  Eigen::VectorXd rhs(2);
  rhs << 1.0, 0.2;
  RestrictedMaster m(rhs);
  add(m, {1, 1}, 1);
  add(m, {1, 0}, 2);
  add(m, {1, -1}, 0);
  ASSERT_EQ(m.solve(), Status::Optimal);
  EXPECT_NEAR(m.objective(), 0.6, 1e-6);
  ASSERT_EQ(m.polish(), Status::Optimal);
  EXPECT_NEAR(m.objective(), 0.6, 1e-12);
  EXPECT_NEAR(m.value(0), 0.6, 1e-12);
  EXPECT_NEAR(m.value(1), 0.0, 1e-12);
  EXPECT_NEAR(m.value(2), 0.4, 1e-12);
  EXPECT_LT(m.primal_residual(), 1e-12);
  const Eigen::VectorXd y = m.duals();
  EXPECT_NEAR(y.dot(rhs), 0.6, 1e-12);
}

TEST(Simplex, InfeasibleSystem) {
  Eigen::VectorXd rhs(2);
  rhs << 1.0, 2.0;
  RestrictedMaster m(rhs);
  add(m, {1, 1}, 0);
  add(m, {2, 2}, 0);
  EXPECT_EQ(m.solve(), Status::Infeasible);
}

TEST(Simplex, ColumnsAddedAfterSolve) {
  Eigen::VectorXd rhs(1);
  rhs << 1.0;
  RestrictedMaster m(rhs);
  add(m, {1}, 3);
  ASSERT_EQ(m.solve(), Status::Optimal);
  EXPECT_NEAR(m.objective(), 3, 1e-6);
  add(m, {2}, 1);
  ASSERT_EQ(m.solve(), Status::Optimal);
  ASSERT_EQ(m.polish(), Status::Optimal);
  EXPECT_NEAR(m.objective(), 0.5, 1e-12);
}

TEST(Simplex, ExtendedPrecisionMaster) {
  Eigen::VectorXd rhs(2);
  rhs << 1.0, 0.2;
  ExtendedMaster m(rhs, refinement_options());
  const std::vector<double> c0{1, 1}, c1{1, 0}, c2{1, -1};
  m.add_column(c0, 1);
  m.add_column(c1, 2);
  m.add_column(c2, 0);
  ASSERT_EQ(m.solve(), Status::Optimal);
  EXPECT_NEAR(static_cast<double>(m.objective()), 0.6, 1e-15);
}
