#pragma once

// Dense revised primal simplex for   min c^T x  s.t.  A x = b,  x >= 0,
// with columns appended incrementally (column generation). The basis inverse
// is kept explicitly and refactorized periodically through an LU solve.
// Instantiated for double (search) and long double (final refinement).

#include <cstddef>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace wnl::lp {

struct SimplexOptions {
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  double pivot_tol = 1e-7;
  /// Ratio-test slack within which the largest pivot is preferred.
  double harris_tol = 1e-9;
  int refactor_interval = 32;
  int stall_limit = 40;
  long max_iterations = 200000;
  /// Scale of the random lower-bound shifts that break degeneracy; 0 disables.
  double perturbation = 1e-7;
  /// Scale of the cost shifts used by the dual repair pivots.
  double cost_shift = 1e-7;
};

/// Tolerances for the extended-precision refinement pass.
SimplexOptions refinement_options();

enum class Status { Optimal, Infeasible, IterationLimit };

std::string to_string(Status status);

template <class Real>
class BasicMaster {
 public:
  using Vector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

  BasicMaster(const Eigen::VectorXd& rhs, SimplexOptions options = {});

  std::size_t rows() const { return static_cast<std::size_t>(rhs_.size()); }
  std::size_t columns() const { return cols_.size(); }

  /// Appends a structural column; returns its id. Keeps the current basis.
  std::size_t add_column(std::span<const double> a, double cost);

  /// Optimizes over the current columns, starting from the current basis.
  /// Runs phase one until the artificial sum vanishes, then phase two.
  /// Infeasible means the restricted phase-one optimum is still positive;
  /// appending improving columns and re-solving may resume progress.
  Status solve();

  /// Pivots the given columns into the starting basis in place of
  /// artificials where a feasible pivot exists; a warm start from a
  /// previously optimal support. Only effective before phase two.
  void crash(std::span<const std::size_t> columns);

  /// Drops the lower-bound shifts and restores primal feasibility of the
  /// current basis with dual simplex pivots. Columns added afterwards are
  /// not shifted. Requires phase two.
  Status polish();
  bool polished() const { return !shifting_; }

  /// Basis entries (>= 0 structural id, < 0 artificial of row -1 - entry)
  /// and artificial column signs, for handing a basis to another master.
  const std::vector<long>& basis() const { return basis_; }
  std::vector<double> artificial_signs() const;
  /// Installs a phase-two basis over the same columns, unshifted, and
  /// restores primal feasibility with dual simplex pivots.
  Status start_from(std::span<const long> basis, std::span<const double> art_signs);

  bool in_phase_two() const { return phase_two_; }
  /// Current objective of the active phase.
  Real objective() const;
  /// Simplex multipliers y = B^{-T} c_B of the active phase.
  Vector duals() const;
  /// Value of a structural column in the current basic solution.
  Real value(std::size_t column) const;
  /// Structural columns currently basic.
  std::vector<std::size_t> basic_columns() const;

  double primal_residual() const;
  long iterations() const { return iterations_; }

 private:
  struct Column {
    Vector a;
    double cost;
    Real lower = 0;
  };

  // Basis entries: >= 0 structural id, < 0 artificial for row (-1 - entry).
  bool is_artificial(long entry) const { return entry < 0; }
  Real cost_of(long entry) const;
  Real lower_of(Eigen::Index row) const;
  Vector column_of(long entry) const;
  void refactor();
  void start_shifted();
  void pivot(Eigen::Index leave, std::size_t entering, const Vector& u, Real theta);
  Status iterate();
  Status repair();

  Vector rhs_;
  // rhs - sum of nonbasic columns at their lower bounds
  Vector shifted_rhs_;
  Vector art_sign_;
  SimplexOptions opt_;
  std::vector<Column> cols_;
  std::vector<long> basis_;
  std::vector<int> basic_pos_;  // per structural column: row in basis or -1
  Matrix binv_;
  Vector xb_;
  std::vector<Real> weight_;  // devex reference weights
  bool phase_two_ = false;
  bool started_ = false;
  bool shifting_ = true;
  long iterations_ = 0;
  int since_refactor_ = 0;
  std::mt19937_64 rng_{0x5eed};
};

using RestrictedMaster = BasicMaster<double>;
using ExtendedMaster = BasicMaster<long double>;

extern template class BasicMaster<double>;
extern template class BasicMaster<long double>;

}  // namespace wnl::lp
