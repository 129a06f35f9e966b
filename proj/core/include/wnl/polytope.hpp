#pragma once

// Critical noise of a quantum point pair against the symmetric local
// polytope. The LP
//
//   min p  s.t.  sum_v lambda_v s_v + p (P1 - P0) = P1,  sum_v lambda_v = 1,
//                lambda, p >= 0
//
// is solved by column generation over vertex classes; its dual is the
// separating functional, which is then made integral and certified exactly.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wnl/quantum.hpp"
#include "wnl/simplex.hpp"
#include "wnl/vertex_set.hpp"

namespace wnl {

struct LpOptions {
  lp::SimplexOptions simplex;
  double pricing_tol = 1e-9;
  /// Load every class up front when the set has at most this many classes.
  std::size_t full_load_limit = 3000;
  /// Columns added per pricing round; 0 means one per LP row.
  std::size_t batch = 0;
  int max_rounds = 5000;
  /// Null facet below this LP value.
  double zero_tol = 1e-9;
  /// Largest admissible gap between the LP value and the level at which the
  /// integral facet is tight.
  double certify_tol = 1e-7;
  /// Re-solve from the final basis in extended precision.
  bool refine = false;
};

struct LpWitness {
  std::string status;
  long iterations = 0;
  int pricing_rounds = 0;
  std::size_t columns = 0;
  double primal_residual = 0;
  /// Largest reduced-cost violation over all classes at termination.
  double dual_residual = 0;
  /// Vertex classes with positive weight at the optimum.
  std::vector<std::pair<std::size_t, double>> support;
};

struct PCritCertificate {
  PCritCertificate(RealSymVector point1, RealSymVector point0)
      : facet(zero_functional(point1.index_ptr())), p1(std::move(point1)), p0(std::move(point0)) {}

  int n = 0;
  int m = 0;
  /// LP optimum.
  double p_crit = 0;
  /// Noise level at which the integral facet is exactly tight.
  long double p_certified = 0;
  /// Integral coefficients; beta is the exact maximum over vertices in the
  /// un-normalized scale.
  BellFunctional facet;
  /// Measurement angles behind P1 and P0; empty if the points were supplied
  /// directly.
  std::vector<double> angles;
  LpWitness witness;
  RealSymVector p1;
  RealSymVector p0;
  bool verified = false;

  bool null_facet() const { return facet.is_zero(); }
};

struct VerificationReport {
  bool passed = false;
  /// Exact maximum over vertices does not exceed the claimed bound.
  bool bound_valid = false;
  /// ... and equals it.
  bool bound_attained = false;
  /// The facet crosses the P1-P0 line at the claimed p_crit.
  bool tight = false;
  /// Points with p below p_crit - tolerance violate the facet.
  bool separates = false;
  Rational exact_max;
  std::size_t argmax = 0;
  long double p_certified = 0;
  /// (alpha . s(p) - beta / n!) / |alpha|_1 at p_crit and p_crit - 1e-6.
  long double gap_at_pcrit = 0;
  long double gap_below = 0;
  std::string message;
};

/// Exact maximum of a functional over all vertex classes (un-normalized
/// scale) with the first class attaining it.
std::pair<Rational, std::size_t> functional_max(const BellFunctional& func, const VertexSet& vertices);

VerificationReport verify_certificate(const PCritCertificate& cert, const VertexSet& vertices,
                                      const LpOptions& options = {});

/// Repeated LP solves over one vertex set. Columns that were basic in the
/// previous solve seed the next restricted master.
class PCritSolver {
 public:
  explicit PCritSolver(const VertexSet& vertices, LpOptions options = {});

  const VertexSet& vertices() const { return *vertices_; }

  /// LP optimum only, no facet extraction.
  double value(const RealSymVector& p1, const RealSymVector& p0);
  PCritCertificate solve(const RealSymVector& p1, const RealSymVector& p0);

 private:
  struct Outcome {
    double p = 0;
    Eigen::VectorXd duals;
    LpWitness witness;
  };
  Outcome run(const RealSymVector& p1, const RealSymVector& p0);
  BellFunctional integral_facet(const Eigen::VectorXd& direction, std::span<const std::size_t> basic,
                                const RealSymVector& p1, const RealSymVector& p0, double p_lp,
                                long double& p_cert) const;

  const VertexSet* vertices_;
  LpOptions opt_;
  std::vector<std::size_t> pool_;
};

PCritCertificate pcrit_lp(const RealSymVector& p1, const RealSymVector& p0, const VertexSet& vertices,
                          const LpOptions& options = {});

/// p_crit of rho(n, p) for the given measurement angles.
PCritCertificate pcrit_at_angles(PCritSolver& solver, const MeasurementAngles& angles);

struct SearchConfig {
  /// Grid points per angle on [0, pi); 0 selects default_grid(m).
  int grid = 0;
  /// Best grid points refined by pattern search.
  int restarts = 4;
  /// Additional uniformly random starting points.
  int random_starts = 2;
  /// Smallest pattern-search step.
  double refine_tol = 1e-6;
  /// Polls per start after which every further poll halves the step.
  int poll_budget = 400;
  std::uint64_t seed = 1;
  LpOptions lp;
  VertexOptions vertices;
};

int default_grid(int m);

/// Canonical representative of an angle vector under reduction mod pi,
/// permutation of settings and the reflection theta -> pi - theta.
std::vector<double> canonical_angles(std::span<const double> angles);

/// Heuristic maximization of p_crit over measurement angles.
PCritCertificate optimize_angles(int n, int m, const SearchConfig& config = {});
PCritCertificate optimize_angles(const VertexSet& vertices, const SearchConfig& config = {});

}  // namespace wnl
