#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "wnl/polytope.hpp"

namespace wnl {

int default_grid(int m) {
  switch (m) {
    case 1:
    case 2: return 24;
    case 3: return 12;
    case 4: return 8;
    default: return 6;
  }
}

namespace {

constexpr double kPi = std::numbers::pi;
// Score of a point whose LP could not be solved.
constexpr double kFailed = -1.0;
// Gains below this are LP round-off, not progress.
constexpr double kGain = 1e-9;

double reduce_angle(double a) {
  a = std::fmod(a, kPi);
  if (a < 0) a += kPi;
  if (a >= kPi - 1e-13 || a < 1e-13) a = 0.0;
  return a;
}

struct Point {
  double p;
  std::vector<double> angles;
};

// Higher p first, compared on a 1e-11 lattice so LP round-off cannot split
// ties; ties resolved by the lexicographically smaller angles.
bool better(const Point& a, const Point& b) {
  const long long qa = std::llround(a.p * 1e11);
  const long long qb = std::llround(b.p * 1e11);
  if (qa != qb) return qa > qb;
  return a.angles < b.angles;
}

class Objective {
 public:
  Objective(PCritSolver& solver, int n) : solver_(solver), n_(n) {}

  Point eval(std::span<const double> raw) {
    Point pt{0.0, canonical_angles(raw)};
    std::vector<long long> key;
    for (double a : pt.angles) key.push_back(std::llround(a * 1e12));
    if (auto it = cache_.find(key); it != cache_.end()) {
      pt.p = it->second;
      return pt;
    }
    const MeasurementAngles angles(pt.angles);
    try {
      pt.p = solver_.value(w_point(n_, angles), product_point(n_, angles));
    } catch (const SolverError&) {
      pt.p = kFailed;
    }
    cache_.emplace(std::move(key), pt.p);
    return pt;
  }

 private:
  PCritSolver& solver_;
  int n_;
  std::map<std::vector<long long>, double> cache_;
};

// Compass search: poll +-step along every axis, move to the best improving
// poll point, halve the step when none improves or the poll budget is spent.
Point refine(Objective& f, Point start, double step, double tol, int budget) {
  Point cur = std::move(start);
  const std::size_t m = cur.angles.size();
  int polls = 0;
  while (step >= tol) {
    Point best = cur;
    for (std::size_t j = 0; j < m; ++j) {
      for (double dir : {1.0, -1.0}) {
        std::vector<double> trial = cur.angles;
        trial[j] += dir * step;
        Point cand = f.eval(trial);
        ++polls;
        if (cand.p > cur.p + kGain && better(cand, best)) best = std::move(cand);
      }
    }
    if (best.p > cur.p + kGain && polls < budget) {
      cur = std::move(best);
    } else {
      if (best.p > cur.p + kGain) cur = std::move(best);
      step *= 0.5;
    }
  }
  return cur;
}

void grid_tuples(int g, int m, int from, std::vector<int>& prefix, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(prefix.size()) == m) {
    out.push_back(prefix);
    return;
  }
  for (int i = from; i < g; ++i) {
    prefix.push_back(i);
    grid_tuples(g, m, i, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<double> canonical_angles(std::span<const double> angles) {
  std::vector<double> a;
  a.reserve(angles.size());
  for (double x : angles) {
    if (!std::isfinite(x)) throw ContractViolation("canonical_angles: non-finite angle");
    a.push_back(reduce_angle(x));
  }
  std::sort(a.begin(), a.end());
  std::vector<double> b;
  b.reserve(a.size());
  for (double x : a) b.push_back(reduce_angle(kPi - x));
  std::sort(b.begin(), b.end());
  return std::min(a, b);
}

PCritCertificate optimize_angles(int n, int m, const SearchConfig& config) {
  const VertexSet vertices(n, m, config.vertices);
  return optimize_angles(vertices, config);
}

PCritCertificate optimize_angles(const VertexSet& vertices, const SearchConfig& config) {
  const int n = vertices.parties();
  const int m = vertices.settings();
  const int g = config.grid > 0 ? config.grid : default_grid(m);
  PCritSolver solver(vertices, config.lp);
  Objective f(solver, n);

  std::vector<std::vector<int>> tuples;
  std::vector<int> prefix;
  grid_tuples(g, m, 0, prefix, tuples);

  std::vector<Point> grid;
  for (const auto& t : tuples) {
    std::vector<int> mirrored;
    for (int i : t) mirrored.push_back((g - i) % g);
    std::sort(mirrored.begin(), mirrored.end());
    if (mirrored < t) continue;
    std::vector<double> angles;
    for (int i : t) angles.push_back(kPi * i / g);
    grid.push_back(f.eval(angles));
  }
  std::sort(grid.begin(), grid.end(), better);

  std::vector<Point> starts;
  for (const auto& pt : grid) {
    if (static_cast<int>(starts.size()) >= config.restarts) break;
    starts.push_back(pt);
  }
  std::mt19937_64 rng(config.seed);
  for (int r = 0; r < config.random_starts; ++r) {
    std::vector<double> angles(static_cast<std::size_t>(m));
    for (double& a : angles) a = kPi * static_cast<double>(rng() >> 11) * 0x1.0p-53;
    starts.push_back(f.eval(angles));
  }

  const double step = kPi / g / 2;
  std::vector<Point> ranked;
  for (const auto& s : starts) {
    if (s.p == kFailed) continue;
    ranked.push_back(refine(f, s, step, config.refine_tol, config.poll_budget));
  }
  ranked.insert(ranked.end(), grid.begin(), grid.end());
  std::stable_sort(ranked.begin(), ranked.end(), better);

  for (const auto& pt : ranked) {
    if (pt.p == kFailed) break;
    try {
      PCritCertificate cert = pcrit_at_angles(solver, MeasurementAngles(pt.angles));
      if (cert.verified) return cert;
    } catch (const SolverError&) {
    }
  }
  throw SolverError("optimize_angles: no angle setting produced a certified threshold");
}

}  // namespace wnl
