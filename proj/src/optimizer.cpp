#include "frameopt/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "frameopt/dualspace.hpp"
#include "frameopt/erasure.hpp"
#include "frameopt/errors.hpp"

namespace frameopt {

namespace {

// Stall detection for an infeasible level: iterates of cyclic projections
// onto sets with empty intersection settle on a limit cycle.
constexpr std::size_t kStallWindow = 200;
constexpr double kStallProgress = 1e-12;
constexpr double kDivergence = 1e12;

struct Cylinders {
  Eigen::VectorXd d;        // canonical diagonal
  Eigen::VectorXd q;
  CMatrix b;                // M x dof
  Eigen::VectorXd row_norm2;
  std::vector<bool> fixed;  // rows with b_i = 0 do not depend on x
  CMatrix row_space;        // orthonormal basis of null(B)^perp
  CMatrix dual_space;       // orthonormal basis of null(B^*) = range(B)^perp

  double objective(const CVector& x) const {
    const CVector z = b * x;
    double v = 0.0;
    for (Eigen::Index i = 0; i < d.size(); ++i) v = std::max(v, q(i) * std::abs(d(i) + z(i)));
    return v;
  }

  // One sweep of cyclic projections onto {x : q_i |d_i + b_i x| <= t}.
  void sweep(CVector& x, double t) const {
    for (Eigen::Index i = 0; i < d.size(); ++i) {
      if (fixed[static_cast<std::size_t>(i)]) continue;
      const Complex z = d(i) + (b.row(i) * x)(0);
      const double r = t / q(i);
      const double mag = std::abs(z);
      if (mag <= r) continue;
      const Complex excess = z - r * (z / mag);
      x -= (excess / row_norm2(i)) * b.row(i).adjoint();
    }
    x = row_space * (row_space.adjoint() * x);
  }

  // Weak duality: for mu orthogonal to range(B), mu^* (d + B x) = mu^* d for
  // every x, hence max_i q_i |d_i + (Bx)_i| >= |mu^* d| / sum_i |mu_i| / q_i.
  double dual_bound(const CVector& mu) const {
    double denom = 0.0;
    for (Eigen::Index i = 0; i < mu.size(); ++i) denom += std::abs(mu(i)) / q(i);
    if (!(denom > 0.0)) return 0.0;
    return std::abs(mu.dot(d.cast<Complex>())) / denom;
  }

  struct DualPoint {
    double bound = 0.0;
    CVector mu;
  };

  // Candidates: the basis of range(B)^perp, and the phase pattern of the
  // constraints active at x projected onto it. With dim range(B)^perp = 1
  // the first candidate is already optimal.
  DualPoint best_dual(const CVector& x) const {
    DualPoint best;
    auto consider = [&](const CVector& mu) {
      const double v = dual_bound(mu);
      if (v > best.bound) best = {v, mu};
    };
    for (Eigen::Index k = 0; k < dual_space.cols(); ++k) consider(dual_space.col(k));
    if (dual_space.cols() > 1) {
      const CVector z = d.cast<Complex>() + b * x;
      const double top = objective(x);
      CVector mu = CVector::Zero(z.size());
      for (Eigen::Index i = 0; i < z.size(); ++i) {
        const double mag = std::abs(z(i));
        if (mag > 0.0 && q(i) * mag >= (1.0 - 1e-3) * top) mu(i) = q(i) * z(i) / mag;
      }
      consider(dual_space * (dual_space.adjoint() * mu));
    }
    return best;
  }

  // Primal point suggested by complementary slackness: equality in the weak
  // duality chain forces d_i + (Bx)_i = (L / q_i) e^{i theta} mu_i / |mu_i|
  // on the support of mu, with theta = arg(mu^* d).
  CVector polish(const DualPoint& dp) const {
    const Complex md = dp.mu.dot(d.cast<Complex>());
    const Complex phase = std::abs(md) > 0.0 ? md / std::abs(md) : Complex(1.0);
    const double scale = dp.mu.cwiseAbs().maxCoeff();
    std::vector<Eigen::Index> support;
    for (Eigen::Index i = 0; i < dp.mu.size(); ++i)
      if (std::abs(dp.mu(i)) > 1e-12 * scale && !fixed[static_cast<std::size_t>(i)]) support.push_back(i);
    CMatrix bs(static_cast<Eigen::Index>(support.size()), b.cols());
    CVector rhs(bs.rows());
    for (Eigen::Index r = 0; r < bs.rows(); ++r) {
      const Eigen::Index i = support[static_cast<std::size_t>(r)];
      bs.row(r) = b.row(i);
      rhs(r) = (dp.bound / q(i)) * phase * (dp.mu(i) / std::abs(dp.mu(i))) - d(i);
    }
    const CVector x = linalg::least_squares(bs, rhs).solution;
    return row_space * (row_space.adjoint() * x);
  }
};

Cylinders build(const DualParametrization& p, const WeightSeq& q) {
  Cylinders c;
  c.d = canonical_diagonal(p);
  c.q = Eigen::Map<const Eigen::VectorXd>(q.values().data(), static_cast<Eigen::Index>(q.size()));
  c.b = diagonal_map(p);
  c.row_norm2 = c.b.rowwise().squaredNorm();
  const double scale = c.row_norm2.size() > 0 ? c.row_norm2.maxCoeff() : 0.0;
  c.fixed.resize(static_cast<std::size_t>(c.d.size()));
  for (Eigen::Index i = 0; i < c.d.size(); ++i) {
    c.fixed[static_cast<std::size_t>(i)] = c.row_norm2(i) <= 1e-28 * std::max(1.0, scale);
  }
  if (c.b.size() > 0) {
    const double smax = Eigen::JacobiSVD<CMatrix>(c.b).singularValues()(0);
    c.row_space = linalg::range_basis(c.b.adjoint(), kFamilyRankTolerance * std::max(1.0, smax));
    c.dual_space = linalg::null_space_basis(c.b.adjoint(), kFamilyRankTolerance * std::max(1.0, smax));
  } else {
    c.row_space = CMatrix(c.b.cols(), 0);
    c.dual_space = CMatrix::Identity(c.b.rows(), c.b.rows());
  }
  return c;
}

enum class Level { kFeasible, kInfeasible, kExhausted };

struct Search {
  const Cylinders& cyl;
  CVector best;
  double best_value;
  std::size_t sweeps = 0;
  std::size_t budget;

  void offer(const CVector& x) {
    const double v = cyl.objective(x);
    if (v < best_value) {
      best_value = v;
      best = x;
    }
  }

  // Raises lo to the best dual bound and tries the primal point it suggests.
  void use_dual(double& lo) {
    const auto dp = cyl.best_dual(best);
    if (dp.bound <= lo) return;
    lo = std::min(dp.bound, best_value);
    offer(cyl.polish(dp));
  }

  // Cyclic projections onto the cylinders at level t until the objective
  // drops to `accept` or the iterates stall.
  Level test(double t, double accept) {
    CVector x = best;
    CVector snapshot = x;
    for (std::size_t s = 1;; ++s) {
      if (sweeps >= budget) return Level::kExhausted;
      cyl.sweep(x, t);
      ++sweeps;
      const double v = cyl.objective(x);
      if (v < best_value) {
        best_value = v;
        best = x;
      }
      if (v <= accept) return Level::kFeasible;
      const double xn = x.norm();
      if (!std::isfinite(xn) || xn > kDivergence) return Level::kInfeasible;
      if (s % kStallWindow == 0) {
        if ((x - snapshot).norm() <= kStallProgress * std::max(1.0, xn)) return Level::kInfeasible;
        snapshot = x;
      }
    }
  }
};

}  // namespace

double certified_lower_bound(const Frame& f, const WeightSeq& q) {
  double bound = 0.0;
  if (validate_weights(q, f.dim()).sum_matches_dim) bound = 1.0;
  const auto part = lambda_partition(f, q);
  if (h1h2_intersection_trivial(f, part)) bound = std::max(bound, part.c * part.c);
  return bound;
}

LowerBoundCheck verify_lower_bound(const Frame& f, const WeightSeq& q, double value) {
  LowerBoundCheck out;
  out.bound = certified_lower_bound(f, q);
  out.respected = value >= out.bound - 1e-9;
  return out;
}

MinimaxResult minimize_r1(const Frame& f, const WeightSeq& q, double tol, std::size_t budget) {
  if (!(tol > 0.0)) throw InvalidInput("minimize_r1: tol must be positive");
  if (q.size() != f.size()) throw InvalidInput("minimize_r1: weight length mismatch");
  const auto p = parametrize_duals(f);
  const auto cyl = build(p, q);

  MinimaxResult res;
  res.certified_lower_bound = certified_lower_bound(f, q);
  Search search{cyl, CVector::Zero(static_cast<Eigen::Index>(p.dof)), 0.0, 0, budget};
  search.best_value = cyl.objective(search.best);

  double lo = res.certified_lower_bound;
  for (Eigen::Index i = 0; i < cyl.d.size(); ++i) {
    if (cyl.fixed[static_cast<std::size_t>(i)]) lo = std::max(lo, cyl.q(i) * std::abs(cyl.d(i)));
  }
  res.converged = true;
  if (cyl.row_space.cols() > 0 && search.best_value - lo > tol && validate_weights(q, f.dim()).valid()) {
    // The uniform bound is attained iff q_i <f_i, g_i> = 1 is solvable.
    if (const auto fam = equality_set_family(p, q)) {
      const CVector x = vec_params(fam->particular);
      const double v = cyl.objective(x);
      if (v < search.best_value) {
        search.best_value = v;
        search.best = x;
      }
    }
  }
  if (cyl.row_space.cols() > 0) {
    search.use_dual(lo);
    while (search.best_value - lo > tol) {
      const double width = search.best_value - lo;
      const double t = lo + 0.5 * width;
      // Projecting onto the level t + slack / 2 keeps a margin inside every
      // cylinder whenever t is feasible, so the iterates reach t + slack in
      // a bounded number of sweeps.
      const double slack = std::max(0.25 * tol, 0.25 * width);
      const Level outcome = search.test(t + 0.5 * slack, t + slack);
      if (outcome == Level::kInfeasible) {
        lo = t + 0.5 * slack;
      } else if (outcome == Level::kFeasible) {
        search.use_dual(lo);
      } else if (outcome == Level::kExhausted) {
        res.converged = false;
        break;
      }
    }
  }
  res.value = search.best_value;
  res.minimizer = unvec_params(p, search.best);
  res.iterations = search.sweeps;
  return res;
}

}  // namespace frameopt
