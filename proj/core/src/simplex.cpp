#include "wnl/simplex.hpp"

#include <cmath>
#include <limits>

#include "wnl/errors.hpp"

namespace wnl::lp {

std::string to_string(Status status) {
  switch (status) {
    case Status::Optimal: return "optimal";
    case Status::Infeasible: return "infeasible";
    case Status::IterationLimit: return "iteration-limit";
  }
  return "unknown";
}

SimplexOptions refinement_options() {
  SimplexOptions o;
  o.feasibility_tol = 1e-14;
  o.optimality_tol = 1e-13;
  o.pivot_tol = 1e-11;
  o.perturbation = 0;
  o.cost_shift = 1e-12;
  return o;
}

template <class Real>
BasicMaster<Real>::BasicMaster(const Eigen::VectorXd& rhs, SimplexOptions options)
    : rhs_(rhs.cast<Real>()), shifted_rhs_(rhs_), opt_(options) {
  const Eigen::Index r = rhs_.size();
  art_sign_.resize(r);
  for (Eigen::Index i = 0; i < r; ++i) art_sign_[i] = rhs_[i] >= 0 ? 1 : -1;
  basis_.resize(static_cast<std::size_t>(r));
  for (Eigen::Index i = 0; i < r; ++i) basis_[i] = -1 - static_cast<long>(i);
  binv_ = art_sign_.asDiagonal();
  xb_ = rhs_.cwiseAbs();
  shifting_ = opt_.perturbation > 0;
}

template <class Real>
std::size_t BasicMaster<Real>::add_column(std::span<const double> a, double cost) {
  if (a.size() != rows()) throw ContractViolation("simplex: column height mismatch");
  Column col{Eigen::Map<const Eigen::VectorXd>(a.data(), static_cast<Eigen::Index>(a.size())).cast<Real>(), cost, 0};
  if (shifting_ && started_) {
    // Shift the new bound only as far as the basic solution stays feasible.
    std::uniform_real_distribution<double> unit(0.5, 1.0);
    Real eps = opt_.perturbation * unit(rng_);
    const Vector w = binv_ * col.a;
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      if (w[i] >= 0) continue;
      eps = std::min(eps, Real(0.5) * std::max(Real(0), xb_[i] - lower_of(i)) / -w[i]);
    }
    col.lower = -eps;
    shifted_rhs_ += eps * col.a;
    xb_ += eps * w;
  }
  cols_.push_back(std::move(col));
  basic_pos_.push_back(-1);
  return cols_.size() - 1;
}

template <class Real>
void BasicMaster<Real>::start_shifted() {
  started_ = true;
  if (!shifting_) return;
  std::uniform_real_distribution<double> unit(0.5, 1.0);
  for (auto& c : cols_) {
    c.lower = -opt_.perturbation * unit(rng_);
    shifted_rhs_ -= c.lower * c.a;
  }
  const Eigen::Index r = rhs_.size();
  for (Eigen::Index i = 0; i < r; ++i) art_sign_[i] = shifted_rhs_[i] >= 0 ? 1 : -1;
  binv_ = art_sign_.asDiagonal();
  xb_ = shifted_rhs_.cwiseAbs();
}

template <class Real>
Real BasicMaster<Real>::cost_of(long entry) const {
  if (phase_two_) return is_artificial(entry) ? Real(0) : Real(cols_[static_cast<std::size_t>(entry)].cost);
  return is_artificial(entry) ? Real(1) : Real(0);
}

template <class Real>
Real BasicMaster<Real>::lower_of(Eigen::Index row) const {
  const long entry = basis_[static_cast<std::size_t>(row)];
  return is_artificial(entry) ? Real(0) : cols_[static_cast<std::size_t>(entry)].lower;
}

template <class Real>
typename BasicMaster<Real>::Vector BasicMaster<Real>::column_of(long entry) const {
  if (!is_artificial(entry)) return cols_[static_cast<std::size_t>(entry)].a;
  Vector e = Vector::Zero(rhs_.size());
  const Eigen::Index row = -1 - entry;
  e[row] = art_sign_[row];
  return e;
}

template <class Real>
Real BasicMaster<Real>::objective() const {
  Real obj = 0;
  for (std::size_t i = 0; i < basis_.size(); ++i) obj += cost_of(basis_[i]) * xb_[static_cast<Eigen::Index>(i)];
  if (phase_two_) {
    for (std::size_t j = 0; j < cols_.size(); ++j) {
      if (basic_pos_[j] < 0) obj += cols_[j].cost * cols_[j].lower;
    }
  }
  return obj;
}

template <class Real>
typename BasicMaster<Real>::Vector BasicMaster<Real>::duals() const {
  Vector cb(rhs_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) cb[static_cast<Eigen::Index>(i)] = cost_of(basis_[i]);
  return binv_.transpose() * cb;
}

template <class Real>
Real BasicMaster<Real>::value(std::size_t column) const {
  const int pos = basic_pos_.at(column);
  return pos < 0 ? cols_[column].lower : xb_[pos];
}

template <class Real>
std::vector<std::size_t> BasicMaster<Real>::basic_columns() const {
  std::vector<std::size_t> out;
  for (long entry : basis_) {
    if (!is_artificial(entry)) out.push_back(static_cast<std::size_t>(entry));
  }
  return out;
}

template <class Real>
std::vector<double> BasicMaster<Real>::artificial_signs() const {
  std::vector<double> out(rows());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<double>(art_sign_[static_cast<Eigen::Index>(i)]);
  return out;
}

template <class Real>
double BasicMaster<Real>::primal_residual() const {
  Vector acc = -rhs_;
  for (std::size_t i = 0; i < basis_.size(); ++i) acc += column_of(basis_[i]) * xb_[static_cast<Eigen::Index>(i)];
  for (std::size_t j = 0; j < cols_.size(); ++j) {
    if (basic_pos_[j] < 0 && cols_[j].lower != 0) acc += cols_[j].a * cols_[j].lower;
  }
  return static_cast<double>(acc.cwiseAbs().maxCoeff());
}

template <class Real>
void BasicMaster<Real>::refactor() {
  const Eigen::Index r = rhs_.size();
  Matrix basis(r, r);
  for (Eigen::Index i = 0; i < r; ++i) basis.col(i) = column_of(basis_[static_cast<std::size_t>(i)]);
  Eigen::PartialPivLU<Matrix> lu(basis);
  binv_ = lu.inverse();
  xb_ = binv_ * shifted_rhs_;
  since_refactor_ = 0;
}

template <class Real>
void BasicMaster<Real>::pivot(Eigen::Index leave, std::size_t entering, const Vector& u, Real theta) {
  const long leaving = basis_[static_cast<std::size_t>(leave)];
  xb_ -= theta * u;
  xb_[leave] = cols_[entering].lower + theta;
  const Eigen::Matrix<Real, 1, Eigen::Dynamic> pivot_row = binv_.row(leave) / u[leave];
  binv_.noalias() -= u * pivot_row;
  binv_.row(leave) = pivot_row;

  shifted_rhs_ += cols_[entering].lower * cols_[entering].a;
  if (!is_artificial(leaving)) {
    const auto lv = static_cast<std::size_t>(leaving);
    basic_pos_[lv] = -1;
    shifted_rhs_ -= cols_[lv].lower * cols_[lv].a;
  }
  basis_[static_cast<std::size_t>(leave)] = static_cast<long>(entering);
  basic_pos_[entering] = static_cast<int>(leave);
  ++iterations_;
  ++since_refactor_;
}

template <class Real>
void BasicMaster<Real>::crash(std::span<const std::size_t> columns) {
  if (!started_) start_shifted();
  if (phase_two_) return;
  const Eigen::Index r = rhs_.size();
  const Real feas = opt_.feasibility_tol;
  const Real ptol = opt_.pivot_tol;
  for (std::size_t j : columns) {
    if (j >= cols_.size() || basic_pos_[j] >= 0) continue;
    if (since_refactor_ >= opt_.refactor_interval) refactor();
    const Vector u = binv_ * cols_[j].a;
    // Largest pivot among artificial rows that keep the basis feasible.
    Real theta_max = std::numeric_limits<Real>::infinity();
    for (Eigen::Index i = 0; i < r; ++i) {
      if (u[i] > ptol) theta_max = std::min(theta_max, (std::max(xb_[i] - lower_of(i), Real(0)) + feas) / u[i]);
    }
    Eigen::Index leave = -1;
    Real best_pivot = 0;
    for (Eigen::Index i = 0; i < r; ++i) {
      if (!is_artificial(basis_[static_cast<std::size_t>(i)]) || u[i] <= ptol) continue;
      if (std::max(xb_[i], Real(0)) / u[i] <= theta_max && u[i] > best_pivot) {
        best_pivot = u[i];
        leave = i;
      }
    }
    if (leave >= 0) pivot(leave, j, u, std::max(Real(0), xb_[leave] / u[leave]));
  }
}

template <class Real>
Status BasicMaster<Real>::iterate() {
  const Eigen::Index r = rhs_.size();
  const Real feas = opt_.feasibility_tol;
  const Real otol = opt_.optimality_tol;
  const Real ptol = opt_.pivot_tol;
  const Real harris = opt_.harris_tol;
  bool bland = false;
  int stall = 0;
  Real last_obj = objective();
  Vector cb(r);
  weight_.assign(cols_.size(), Real(1));

  for (;;) {
    if (iterations_ >= opt_.max_iterations) return Status::IterationLimit;
    if (since_refactor_ >= opt_.refactor_interval) refactor();
    // Phase one is done as soon as the artificial sum vanishes.
    if (!phase_two_ && objective() <= feas) return Status::Optimal;

    for (Eigen::Index i = 0; i < r; ++i) cb[i] = cost_of(basis_[static_cast<std::size_t>(i)]);
    const Vector y = binv_.transpose() * cb;

    // Devex pricing: largest d_j^2 / w_j among improving columns.
    long entering = -1;
    Real best = 0;
    for (std::size_t j = 0; j < cols_.size(); ++j) {
      if (basic_pos_[j] >= 0) continue;
      const Real d = cost_of(static_cast<long>(j)) - y.dot(cols_[j].a);
      if (d >= -otol) continue;
      if (bland) {
        entering = static_cast<long>(j);
        break;
      }
      const Real score = d * d / weight_[j];
      if (score > best) {
        best = score;
        entering = static_cast<long>(j);
      }
    }
    if (entering < 0) return Status::Optimal;

    const auto q = static_cast<std::size_t>(entering);
    const Vector u = binv_ * cols_[q].a;

    Eigen::Index leave = -1;
    Real theta = 0;
    if (phase_two_) {
      // Artificials are fixed at zero once phase one is done.
      Real big = ptol;
      for (Eigen::Index i = 0; i < r; ++i) {
        if (is_artificial(basis_[static_cast<std::size_t>(i)]) && std::abs(u[i]) > big) {
          big = std::abs(u[i]);
          leave = i;
        }
      }
    }
    if (leave < 0) {
      if (bland) {
        // Textbook minimum ratio, ties to the lowest basis entry.
        Real min_ratio = std::numeric_limits<Real>::infinity();
        long min_order = std::numeric_limits<long>::max();
        for (Eigen::Index i = 0; i < r; ++i) {
          if (u[i] <= ptol) continue;
          const Real ratio = std::max(xb_[i] - lower_of(i), Real(0)) / u[i];
          const long entry = basis_[static_cast<std::size_t>(i)];
          const long order = is_artificial(entry) ? static_cast<long>(cols_.size()) - 1 - entry : entry;
          if (ratio < min_ratio - Real(1e-13) || (ratio <= min_ratio + Real(1e-13) && order < min_order)) {
            min_ratio = std::min(ratio, min_ratio);
            min_order = order;
            leave = i;
          }
        }
      } else {
        // Harris two-pass ratio test.
        Real theta_max = std::numeric_limits<Real>::infinity();
        for (Eigen::Index i = 0; i < r; ++i) {
          if (u[i] > ptol) theta_max = std::min(theta_max, (std::max(xb_[i] - lower_of(i), Real(0)) + harris) / u[i]);
        }
        Real best_pivot = 0;
        for (Eigen::Index i = 0; i < r; ++i) {
          if (u[i] > ptol && std::max(xb_[i] - lower_of(i), Real(0)) / u[i] <= theta_max && u[i] > best_pivot) {
            best_pivot = u[i];
            leave = i;
          }
        }
      }
      if (leave < 0) throw SolverError("simplex: unbounded direction in a bounded program");
      theta = std::max(Real(0), (xb_[leave] - lower_of(leave)) / u[leave]);
    }

    const Eigen::Matrix<Real, 1, Eigen::Dynamic> rho = binv_.row(leave);
    const Real wq = weight_[q];
    const Real aq = u[leave];
    for (std::size_t j = 0; j < cols_.size(); ++j) {
      if (basic_pos_[j] >= 0 || j == q) continue;
      const Real ratio = rho.dot(cols_[j].a) / aq;
      weight_[j] = std::max(weight_[j], ratio * ratio * wq);
    }
    const long leaving = basis_[static_cast<std::size_t>(leave)];
    if (!is_artificial(leaving)) weight_[static_cast<std::size_t>(leaving)] = std::max(wq / (aq * aq), Real(1));
    pivot(leave, q, u, theta);

    const Real obj = objective();
    if (obj < last_obj - Real(1e-12)) {
      last_obj = obj;
      stall = 0;
      bland = false;
    } else if (++stall > opt_.stall_limit) {
      bland = true;
    }
  }
}

template <class Real>
Status BasicMaster<Real>::solve() {
  if (!started_) start_shifted();
  for (;;) {
    const Status st = iterate();
    if (st != Status::Optimal) return st;
    if (phase_two_) return Status::Optimal;
    refactor();
    if (objective() > 10 * opt_.feasibility_tol) return Status::Infeasible;
    phase_two_ = true;
  }
}

template <class Real>
Status BasicMaster<Real>::repair() {
  const Eigen::Index r = rhs_.size();
  const Real feas = opt_.feasibility_tol;
  const Real ptol = opt_.pivot_tol;
  Vector cb(r);
  // Cost shifts break ties among the many zero reduced costs.
  std::uniform_real_distribution<double> unit(0.5, 1.0);
  std::vector<Real> cost_shift(cols_.size());
  for (Real& c : cost_shift) c = opt_.cost_shift * unit(rng_);
  for (;;) {
    if (iterations_ >= opt_.max_iterations) return Status::IterationLimit;
    if (since_refactor_ >= opt_.refactor_interval) refactor();

    // Most violated basic: structurals below zero, artificials away from zero.
    Eigen::Index leave = -1;
    Real worst = feas;
    for (Eigen::Index i = 0; i < r; ++i) {
      const bool art = is_artificial(basis_[static_cast<std::size_t>(i)]);
      const Real viol = art ? Real(std::abs(xb_[i])) : -xb_[i];
      if (viol > worst) {
        worst = viol;
        leave = i;
      }
    }
    if (leave < 0) return Status::Optimal;
    const Real dir = xb_[leave] < 0 ? -1 : 1;

    for (Eigen::Index i = 0; i < r; ++i) cb[i] = cost_of(basis_[static_cast<std::size_t>(i)]);
    const Vector y = binv_.transpose() * cb;
    const Eigen::Matrix<Real, 1, Eigen::Dynamic> row = binv_.row(leave);

    long entering = -1;
    Real min_ratio = std::numeric_limits<Real>::infinity();
    Real best_alpha = 0;
    for (std::size_t j = 0; j < cols_.size(); ++j) {
      if (basic_pos_[j] >= 0) continue;
      const Real alpha = row.dot(cols_[j].a) * dir;
      if (alpha <= ptol) continue;
      const Real d = std::max(Real(0), Real(cols_[j].cost) - y.dot(cols_[j].a)) + cost_shift[j];
      const Real ratio = d / alpha;
      if (ratio < min_ratio || (ratio == min_ratio && alpha > best_alpha)) {
        min_ratio = ratio;
        best_alpha = alpha;
        entering = static_cast<long>(j);
      }
    }
    if (entering < 0) return Status::Infeasible;

    const auto ent = static_cast<std::size_t>(entering);
    const Vector u = binv_ * cols_[ent].a;
    pivot(leave, ent, u, xb_[leave] / u[leave]);
  }
}

template <class Real>
Status BasicMaster<Real>::polish() {
  if (!phase_two_) throw ContractViolation("simplex: polish before phase two");
  if (!shifting_) return Status::Optimal;
  shifting_ = false;
  for (auto& c : cols_) c.lower = 0;
  shifted_rhs_ = rhs_;
  refactor();
  return repair();
}

template <class Real>
Status BasicMaster<Real>::start_from(std::span<const long> basis, std::span<const double> art_signs) {
  if (basis.size() != rows() || art_signs.size() != rows()) throw ContractViolation("simplex: basis size mismatch");
  shifting_ = false;
  started_ = true;
  phase_two_ = true;
  for (auto& c : cols_) c.lower = 0;
  shifted_rhs_ = rhs_;
  std::fill(basic_pos_.begin(), basic_pos_.end(), -1);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    basis_[i] = basis[i];
    art_sign_[static_cast<Eigen::Index>(i)] = art_signs[i];
    if (!is_artificial(basis[i])) basic_pos_.at(static_cast<std::size_t>(basis[i])) = static_cast<int>(i);
  }
  refactor();
  return repair();
}

template class BasicMaster<double>;
template class BasicMaster<long double>;

}  // namespace wnl::lp
