#include "wnl/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace wnl {

namespace {

struct Fraction {
  long long num;
  long long den;
};

// Continued-fraction convergent of x within tol, or nothing if none has a
// denominator below max_den.
std::optional<Fraction> best_rational(double x, long long max_den, double tol) {
  long long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int it = 0; it < 64; ++it) {
    const double a = std::floor(r);
    if (std::abs(a) > 1e12) break;
    const auto ai = static_cast<long long>(a);
    const long long h2 = ai * h1 + h0;
    const long long k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1, h1 = h2, k0 = k1, k1 = k2;
    if (std::abs(x - static_cast<double>(h1) / static_cast<double>(k1)) <= tol) return Fraction{h1, k1};
    const double frac = r - a;
    if (frac < 1e-300) break;
    r = 1.0 / frac;
  }
  return std::nullopt;
}

// Direction (alpha) of the hyperplane through the given vertex classes,
// alpha . S_v = t for every listed v, or nothing unless the solution space
// is one-dimensional. Fraction-free elimination: eliminated rows are divided
// by their content so entries stay small.
std::optional<std::vector<Integer>> hyperplane_through(const VertexSet& vertices,
                                                       std::span<const std::size_t> classes) {
  const std::size_t d = vertices.index().size();
  const std::size_t w = d + 1;  // unknowns alpha_0..alpha_{d-1}, t
  std::vector<std::vector<Integer>> rows;
  rows.reserve(classes.size());
  for (std::size_t v : classes) {
    const auto img = vertices.scaled_image(v);
    std::vector<Integer> row(w);
    for (std::size_t i = 0; i < d; ++i) row[i] = Integer(static_cast<long>(img[i]));
    row[d] = -1;
    rows.push_back(std::move(row));
  }

  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  Integer g;
  for (std::size_t c = 0; c < w && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && sgn(rows[piv][c]) == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    const auto& pr = rows[rank];
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || sgn(rows[r][c]) == 0) continue;
      const Integer f = rows[r][c];
      g = 0;
      for (std::size_t k = 0; k < w; ++k) {
        rows[r][k] = rows[r][k] * pr[c] - f * pr[k];
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), rows[r][k].get_mpz_t());
      }
      if (g > 1) {
        for (auto& x : rows[r]) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
      }
    }
    pivot_col.push_back(c);
    ++rank;
  }
  if (rank + 1 != w) return std::nullopt;

  std::vector<char> is_pivot(w, 0);
  for (std::size_t c : pivot_col) is_pivot[c] = 1;
  std::size_t free = 0;
  while (is_pivot[free]) ++free;
  // Row i reads  pr_i * x_{pivot_i} + rows[i][free] * x_free = 0.
  Integer scale = 1;
  for (std::size_t i = 0; i < rank; ++i) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), rows[i][pivot_col[i]].get_mpz_t());
  std::vector<Integer> x(w, Integer(0));
  x[free] = scale;
  for (std::size_t i = 0; i < rank; ++i) {
    x[pivot_col[i]] = -rows[i][free] * (scale / rows[i][pivot_col[i]]);
  }
  x.pop_back();
  return x;
}

void check_space(const VertexSet& vertices, const RealSymVector& p1, const RealSymVector& p0) {
  if (!p1.same_space(vertices.index()) || !p0.same_space(vertices.index())) {
    throw ContractViolation("pcrit_lp: points and vertices live in different (n, m) spaces");
  }
}

struct LineGeometry {
  long double numerator = 0;  // alpha . P1 - beta / n!
  long double slope = 0;      // alpha . (P1 - P0)
  long double l1 = 0;
};

LineGeometry line_geometry(const BellFunctional& facet, const RealSymVector& p1, const RealSymVector& p0) {
  LineGeometry g;
  const Rational beta_norm = facet.beta / Rational(factorial(static_cast<unsigned>(facet.parties())));
  g.numerator = -to_long_double(beta_norm);
  for (std::size_t i = 0; i < facet.alpha.size(); ++i) {
    if (sgn(facet.alpha[i]) == 0) continue;
    const long double a = to_long_double(facet.alpha[i]);
    g.numerator += a * p1[i];
    g.slope += a * (static_cast<long double>(p1[i]) - p0[i]);
    g.l1 += std::abs(a);
  }
  return g;
}

struct Candidate {
  double score;
  std::size_t ordinal;
  std::vector<std::int64_t> image;
};

struct WorseFirst {
  bool operator()(const Candidate& a, const Candidate& b) const {
    if (a.score != b.score) return a.score > b.score;
    return a.ordinal < b.ordinal;
  }
};

}  // namespace

std::pair<Rational, std::size_t> functional_max(const BellFunctional& func, const VertexSet& vertices) {
  const ProfileIndex& index = vertices.index();
  if (func.index->parties() != index.parties() || func.index->settings() != index.settings() ||
      func.alpha.size() != index.size()) {
    throw ContractViolation("functional_max: functional and vertices live in different spaces");
  }
  Integer lcm = 1;
  for (const auto& a : func.alpha) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), a.get_den().get_mpz_t());
  std::vector<Integer> coeffs;
  coeffs.reserve(func.alpha.size());
  Integer max_abs = 0;
  for (const auto& a : func.alpha) {
    coeffs.emplace_back(a.get_num() * (lcm / a.get_den()));
    if (abs(coeffs.back()) > max_abs) max_abs = abs(coeffs.back());
  }

  const double bits = std::log2(max_abs.get_d() + 1.0) +
                      std::log2(static_cast<double>(factorial_i64(static_cast<unsigned>(index.parties())))) +
                      std::log2(static_cast<double>(index.size()) + 1.0);
  Rational best;
  std::size_t argmax = 0;
  bool first = true;

  if (bits < 124.0) {
    std::vector<std::int64_t> small;
    small.reserve(coeffs.size());
    for (const auto& c : coeffs) small.push_back(c.get_si());
    __int128 top = 0;
    vertices.for_each([&](std::size_t v, std::span<const int>, std::span<const std::int64_t> img) {
      __int128 acc = 0;
      for (std::size_t i = 0; i < img.size(); ++i) {
        if (small[i] != 0) acc += static_cast<__int128>(small[i]) * img[i];
      }
      if (first || acc > top) {
        top = acc;
        argmax = v;
        first = false;
      }
    });
    // __int128 -> decimal string -> Integer.
    const bool neg = top < 0;
    unsigned __int128 mag = neg ? static_cast<unsigned __int128>(-top) : static_cast<unsigned __int128>(top);
    std::string digits;
    do {
      digits.push_back(static_cast<char>('0' + static_cast<int>(mag % 10)));
      mag /= 10;
    } while (mag != 0);
    if (neg) digits.push_back('-');
    std::reverse(digits.begin(), digits.end());
    best = Rational(Integer(digits), lcm);
  } else {
    Integer top;
    Integer acc;
    vertices.for_each([&](std::size_t v, std::span<const int>, std::span<const std::int64_t> img) {
      acc = 0;
      for (std::size_t i = 0; i < img.size(); ++i) {
        if (sgn(coeffs[i]) != 0) acc += coeffs[i] * Integer(static_cast<long>(img[i]));
      }
      if (first || acc > top) {
        top = acc;
        argmax = v;
        first = false;
      }
    });
    best = Rational(top, lcm);
  }
  best.canonicalize();
  return {best, argmax};
}

VerificationReport verify_certificate(const PCritCertificate& cert, const VertexSet& vertices,
                                      const LpOptions& options) {
  check_space(vertices, cert.p1, cert.p0);
  VerificationReport r;
  if (cert.facet.is_zero()) {
    r.passed = cert.p_crit <= options.zero_tol;
    r.message = r.passed ? "null facet, point is local" : "null facet with positive p_crit";
    if (r.passed && !cert.witness.support.empty()) {
      // The reported convex combination must reproduce P1.
      const double nfact = static_cast<double>(factorial_i64(static_cast<unsigned>(vertices.parties())));
      std::vector<long double> sum(cert.p1.size(), 0.0L);
      long double weight = 0;
      for (const auto& [v, lambda] : cert.witness.support) {
        if (v >= vertices.size()) throw ContractViolation("verify_certificate: support class out of range");
        const std::vector<std::int64_t> img = vertices.scaled_image(v);
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += lambda * static_cast<long double>(img[i]) / nfact;
        weight += lambda;
      }
      long double err = std::abs(weight - 1);
      for (std::size_t i = 0; i < sum.size(); ++i) err = std::max(err, std::abs(sum[i] - cert.p1[i]));
      r.passed = err <= options.certify_tol;
      if (!r.passed) r.message = "support does not reproduce the point";
    }
    r.bound_valid = r.bound_attained = r.tight = r.separates = r.passed;
    return r;
  }

  std::tie(r.exact_max, r.argmax) = functional_max(cert.facet, vertices);
  r.bound_valid = r.exact_max <= cert.facet.beta;
  r.bound_attained = r.exact_max == cert.facet.beta;

  const LineGeometry g = line_geometry(cert.facet, cert.p1, cert.p0);
  const long double p = cert.p_crit;
  const long double below = p - 1e-6L;
  r.gap_at_pcrit = (g.numerator - p * g.slope) / g.l1;
  r.gap_below = (g.numerator - below * g.slope) / g.l1;
  if (g.slope > 0) {
    r.p_certified = g.numerator / g.slope;
    r.tight = std::abs(r.p_certified - p) <= options.certify_tol;
    r.separates = r.p_certified >= below && r.gap_below > 0;
  }
  r.passed = r.bound_valid && r.bound_attained && r.tight && r.separates;
  if (r.passed) {
    r.message = "certified";
  } else if (!r.bound_valid) {
    r.message = "a vertex exceeds the claimed local bound";
  } else if (!r.bound_attained) {
    r.message = "claimed local bound is not attained by any vertex";
  } else if (!r.tight) {
    r.message = "facet is not tight at p_crit";
  } else {
    r.message = "facet does not separate points below p_crit";
  }
  return r;
}

PCritSolver::PCritSolver(const VertexSet& vertices, LpOptions options) : vertices_(&vertices), opt_(options) {}

namespace {

// One column-generation stage over a master of either precision.
template <class Master>
struct Generation {
  using Real = typename Master::Vector::Scalar;

  const VertexSet& vs;
  std::size_t d;
  double nfact;
  Master master;
  std::vector<std::size_t> ordinal_of{0};  // column id -> class ordinal; column 0 is p
  std::vector<std::size_t> column_of;      // class ordinal -> column id, 0 if absent
  std::vector<double> col;

  Generation(const VertexSet& vertices, const Eigen::VectorXd& rhs, std::span<const double> p_column,
             const lp::SimplexOptions& options)
      : vs(vertices),
        d(vertices.index().size()),
        nfact(static_cast<double>(factorial_i64(static_cast<unsigned>(vertices.parties())))),
        master(rhs, options),
        column_of(vertices.size(), 0),
        col(d + 1) {
    master.add_column(p_column, 1.0);
  }

  void add_class(std::size_t v, std::span<const std::int64_t> img) {
    if (column_of[v]) return;
    for (std::size_t i = 0; i < d; ++i) col[i] = static_cast<double>(img[i]) / nfact;
    col[d] = 1.0;
    column_of[v] = master.add_column(col, 0.0);
    ordinal_of.push_back(v);
  }

  // Adds up to batch classes with positive reduced score; returns how many.
  // max_violation receives the largest score among classes not yet loaded.
  std::size_t price(std::size_t batch, double tol, double& max_violation) {
    const typename Master::Vector y = master.duals();
    std::vector<Real> ys(d);
    for (std::size_t i = 0; i < d; ++i) ys[i] = y[static_cast<Eigen::Index>(i)] / Real(nfact);
    const Real y0 = y[static_cast<Eigen::Index>(d)];
    std::priority_queue<Candidate, std::vector<Candidate>, WorseFirst> best;
    max_violation = 0;
    vs.for_each([&](std::size_t v, std::span<const int>, std::span<const std::int64_t> img) {
      if (column_of[v]) return;
      Real acc = y0;
      for (std::size_t i = 0; i < d; ++i) acc += ys[i] * static_cast<Real>(img[i]);
      const auto score = static_cast<double>(acc);
      if (score <= tol) return;
      max_violation = std::max(max_violation, score);
      if (best.size() < batch) {
        best.push({score, v, std::vector<std::int64_t>(img.begin(), img.end())});
      } else if (WorseFirst{}(Candidate{score, v, {}}, best.top())) {
        best.pop();
        best.push({score, v, std::vector<std::int64_t>(img.begin(), img.end())});
      }
    });
    std::vector<Candidate> chosen;
    while (!best.empty()) {
      chosen.push_back(best.top());
      best.pop();
    }
    std::sort(chosen.begin(), chosen.end(), [](const Candidate& a, const Candidate& b) { return a.ordinal < b.ordinal; });
    for (const auto& c : chosen) add_class(c.ordinal, c.image);
    return chosen.size();
  }
};

void throw_on_limit(lp::Status status, double residual) {
  if (status == lp::Status::IterationLimit) {
    throw SolverError("pcrit_lp: simplex iteration limit reached (residual " + std::to_string(residual) + ")");
  }
}

}  // namespace

PCritSolver::Outcome PCritSolver::run(const RealSymVector& p1, const RealSymVector& p0) {
  const VertexSet& vs = *vertices_;
  check_space(vs, p1, p0);
  const std::size_t d = vs.index().size();
  const auto rows = static_cast<Eigen::Index>(d + 1);

  Eigen::VectorXd rhs(rows);
  for (std::size_t i = 0; i < d; ++i) rhs[static_cast<Eigen::Index>(i)] = p1[i];
  rhs[rows - 1] = 1.0;
  std::vector<double> p_column(d + 1, 0.0);
  for (std::size_t i = 0; i < d; ++i) p_column[i] = p1[i] - p0[i];

  Generation<lp::RestrictedMaster> g(vs, rhs, p_column, opt_.simplex);
  const bool full = vs.size() <= opt_.full_load_limit;
  if (full) {
    vs.for_each([&](std::size_t v, std::span<const int>, std::span<const std::int64_t> img) { g.add_class(v, img); });
  } else {
    for (std::size_t v : pool_) g.add_class(v, vs.scaled_image(v));
  }
  // Warm start from the support of the previous solve.
  std::vector<std::size_t> warm;
  for (std::size_t v : pool_) warm.push_back(g.column_of[v]);
  warm.push_back(0);
  g.master.crash(warm);

  const std::size_t batch = opt_.batch ? opt_.batch : static_cast<std::size_t>(rows);
  Outcome out;
  double max_violation = 0;
  lp::Status status;
  for (;;) {
    status = g.master.solve();
    throw_on_limit(status, g.master.primal_residual());
    if (g.price(batch, opt_.pricing_tol, max_violation) > 0) {
      if (++out.witness.pricing_rounds > opt_.max_rounds) throw SolverError("pcrit_lp: pricing round limit reached");
      continue;
    }
    if (status != lp::Status::Optimal || g.master.polished()) break;
    status = g.master.polish();
    throw_on_limit(status, g.master.primal_residual());
    if (status == lp::Status::Infeasible) throw SolverError("pcrit_lp: basis repair failed after removing bound shifts");
  }
  if (status == lp::Status::Infeasible) {
    throw SolverError("pcrit_lp: the pure product point is not local; vertex set is inconsistent");
  }

  const auto finish = [&](auto& stage) {
    out.p = std::clamp(static_cast<double>(stage.master.objective()), 0.0, 1.0);
    out.duals = stage.master.duals().head(static_cast<Eigen::Index>(d)).template cast<double>();
    out.witness.status = lp::to_string(status);
    out.witness.iterations += stage.master.iterations();
    out.witness.columns = stage.master.columns();
    out.witness.primal_residual = stage.master.primal_residual();
    out.witness.dual_residual = max_violation;
    pool_.clear();
    out.witness.support.clear();
    for (std::size_t c : stage.master.basic_columns()) {
      if (c == 0) continue;
      pool_.push_back(stage.ordinal_of[c]);
      const auto w = static_cast<double>(stage.master.value(c));
      if (w > 1e-12) out.witness.support.emplace_back(stage.ordinal_of[c], w);
    }
    std::sort(out.witness.support.begin(), out.witness.support.end());
    std::sort(pool_.begin(), pool_.end());
  };

  if (!opt_.refine) {
    finish(g);
    return out;
  }

  // Re-solve from the final basis in extended precision with tight
  // tolerances; the double stage can stop at bases that are only
  // feasible to within its tolerance, which the line geometry amplifies.
  lp::SimplexOptions ext_opt = lp::refinement_options();
  ext_opt.max_iterations = opt_.simplex.max_iterations;
  Generation<lp::ExtendedMaster> e(vs, rhs, p_column, ext_opt);
  for (std::size_t c = 1; c < g.ordinal_of.size(); ++c) e.add_class(g.ordinal_of[c], vs.scaled_image(g.ordinal_of[c]));
  lp::Status ext_status = e.master.start_from(g.master.basis(), g.master.artificial_signs());
  double ext_violation = 0;
  while (ext_status == lp::Status::Optimal) {
    ext_status = e.master.solve();
    if (ext_status != lp::Status::Optimal) break;
    if (e.price(batch, ext_opt.optimality_tol, ext_violation) == 0) break;
    if (++out.witness.pricing_rounds > opt_.max_rounds) throw SolverError("pcrit_lp: pricing round limit reached");
  }
  if (ext_status != lp::Status::Optimal) {
    finish(g);
    out.witness.status = "optimal (refinement " + lp::to_string(ext_status) + ")";
    return out;
  }
  out.witness.iterations = g.master.iterations();
  max_violation = ext_violation;
  finish(e);
  return out;
}

double PCritSolver::value(const RealSymVector& p1, const RealSymVector& p0) { return run(p1, p0).p; }

BellFunctional PCritSolver::integral_facet(const Eigen::VectorXd& direction, std::span<const std::size_t> basic,
                                           const RealSymVector& p1, const RealSymVector& p0, double p_lp,
                                           long double& p_cert) const {
  const std::size_t d = static_cast<std::size_t>(direction.size());
  const double scale = direction.cwiseAbs().maxCoeff();
  BellFunctional facet = zero_functional(vertices_->index_ptr());
  if (!(scale > 0)) return facet;

  const auto accept = [&](std::vector<Integer> a) {
    Integer g = 0;
    for (const auto& x : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 0) return false;
    for (std::size_t i = 0; i < d; ++i) facet.alpha[i] = Rational(a[i] / g);
    facet.beta = functional_max(facet, *vertices_).first;
    const LineGeometry geo = line_geometry(facet, p1, p0);
    p_cert = geo.slope > 0 ? geo.numerator / geo.slope : -1.0L;
    return std::abs(p_cert - p_lp) <= opt_.certify_tol;
  };

  std::vector<std::vector<Integer>> attempts;
  {
    std::vector<Fraction> fr;
    Integer lcm = 1;
    bool ok = true;
    for (std::size_t i = 0; i < d && ok; ++i) {
      const auto q = best_rational(direction[static_cast<Eigen::Index>(i)] / scale, 1'000'000, 1e-9);
      if (!q) {
        ok = false;
        break;
      }
      fr.push_back(*q);
      mpz_lcm_ui(lcm.get_mpz_t(), lcm.get_mpz_t(), static_cast<unsigned long>(q->den));
    }
    if (ok && lcm <= Integer(1) << 40) {
      std::vector<Integer> a;
      for (const auto& q : fr) a.emplace_back(Integer(static_cast<long>(q.num)) * (lcm / static_cast<unsigned long>(q.den)));
      attempts.push_back(std::move(a));
    }
  }
  for (auto& a : attempts) {
    if (accept(std::move(a))) return facet;
  }
  // Exact hyperplane through the basic vertices, oriented along the duals.
  if (auto exact = hyperplane_through(*vertices_, basic)) {
    long double dot = 0;
    for (std::size_t i = 0; i < d; ++i) dot += (*exact)[i].get_d() * direction[static_cast<Eigen::Index>(i)];
    if (dot < 0) {
      for (auto& x : *exact) x = -x;
    }
    if (accept(std::move(*exact))) return facet;
  }
  std::vector<Integer> a;
  for (std::size_t i = 0; i < d; ++i) {
    a.emplace_back(static_cast<long>(std::llround(std::ldexp(direction[static_cast<Eigen::Index>(i)] / scale, 40))));
  }
  accept(std::move(a));
  return facet;
}

PCritCertificate PCritSolver::solve(const RealSymVector& p1, const RealSymVector& p0) {
  Outcome o = run(p1, p0);
  PCritCertificate cert(p1, p0);
  cert.n = vertices_->parties();
  cert.m = vertices_->settings();
  cert.witness = std::move(o.witness);
  if (o.p <= opt_.zero_tol) {
    cert.p_crit = 0;
    cert.p_certified = 0;
  } else {
    cert.p_crit = o.p;
    cert.facet = integral_facet(o.duals, pool_, p1, p0, o.p, cert.p_certified);
  }
  cert.verified = verify_certificate(cert, *vertices_, opt_).passed;
  return cert;
}

PCritCertificate pcrit_lp(const RealSymVector& p1, const RealSymVector& p0, const VertexSet& vertices,
                          const LpOptions& options) {
  PCritSolver solver(vertices, options);
  return solver.solve(p1, p0);
}

PCritCertificate pcrit_at_angles(PCritSolver& solver, const MeasurementAngles& angles) {
  const VertexSet& vs = solver.vertices();
  if (angles.settings() != vs.settings()) throw ContractViolation("pcrit_at_angles: angle count != m");
  PCritCertificate cert = solver.solve(w_point(vs.parties(), angles), product_point(vs.parties(), angles));
  cert.angles.assign(angles.values().begin(), angles.values().end());
  return cert;
}

}  // namespace wnl
