#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <fmt/format.h>

#include "frameopt/errors.hpp"
#include "frameopt/optimizer.hpp"

namespace frameopt {

namespace {

// Objective in real coordinates y of z = Q y, where Q is an orthonormal
// basis of range(B): psi(y) = max_i q_i |d_i + z_i|.
class ReducedObjective {
 public:
  ReducedObjective(Eigen::VectorXd d, Eigen::VectorXd q, CMatrix basis)
      : d_(std::move(d)), q_(std::move(q)), basis_(std::move(basis)) {}

  std::size_t real_dim() const { return static_cast<std::size_t>(2 * basis_.cols()); }

  double operator()(const std::vector<double>& y) const { return eval(y, nullptr); }

  // Value and one subgradient (of the first maximizing term).
  double eval(const std::vector<double>& y, Eigen::VectorXd* grad) const {
    double v = -1.0;
    Eigen::Index arg = 0;
    Complex zarg = 0.0;
    for (Eigen::Index i = 0; i < basis_.rows(); ++i) {
      Complex z = d_(i);
      for (Eigen::Index k = 0; k < basis_.cols(); ++k) {
        z += basis_(i, k) * Complex(y[2 * k], y[2 * k + 1]);
      }
      if (q_(i) * std::abs(z) > v) {
        v = q_(i) * std::abs(z);
        arg = i;
        zarg = z;
      }
    }
    if (grad) {
      grad->setZero(static_cast<Eigen::Index>(y.size()));
      const double mag = std::abs(zarg);
      if (mag > 0.0) {
        for (Eigen::Index k = 0; k < basis_.cols(); ++k) {
          const Complex c = std::conj(zarg) * basis_(arg, k) * (q_(arg) / mag);
          (*grad)(2 * k) = c.real();
          (*grad)(2 * k + 1) = -c.imag();
        }
      }
    }
    return v;
  }

 private:
  Eigen::VectorXd d_;
  Eigen::VectorXd q_;
  CMatrix basis_;
};

struct Candidate {
  double value;
  std::vector<double> point;
};

// Pattern search with coordinate and seeded random directions; the step is
// halved only after a large batch of random directions also fails, which
// gets past kinks of the max where no coordinate direction descends.
double refine(const ReducedObjective& obj, std::vector<double> y, double step, double min_step,
              std::mt19937_64& rng) {
  const std::size_t n = y.size();
  std::normal_distribution<double> normal;
  double best = obj(y);
  auto try_dir = [&](const std::vector<double>& dir, double h) {
    std::vector<double> cand = y;
    for (std::size_t k = 0; k < n; ++k) cand[k] += h * dir[k];
    const double v = obj(cand);
    if (v < best) {
      best = v;
      y = std::move(cand);
      return true;
    }
    return false;
  };
  auto random_dir = [&] {
    std::vector<double> dir(n);
    double norm = 0.0;
    for (auto& v : dir) {
      v = normal(rng);
      norm += v * v;
    }
    norm = std::sqrt(norm);
    for (auto& v : dir) v /= norm;
    return dir;
  };
  while (step > min_step) {
    bool improved = false;
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<double> e(n, 0.0);
      e[k] = 1.0;
      improved |= try_dir(e, step);
      improved |= try_dir(e, -step);
    }
    if (!improved) {
      for (int r = 0; r < 64 * static_cast<int>(n) && !improved; ++r) improved = try_dir(random_dir(), step);
    }
    if (!improved) step *= 0.5;
  }
  return best;
}

// Central-cut ellipsoid method started from the ball of radius r, which
// contains every minimizer. Stops once the certified gap
// min f - max (f(x) - sqrt(g^T P g)) drops below gap_tol.
double ellipsoid(const ReducedObjective& obj, double r, double gap_tol) {
  const auto n = static_cast<Eigen::Index>(obj.real_dim());
  const double nd = static_cast<double>(n);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  Eigen::MatrixXd pm = r * r * Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd g(n);
  std::vector<double> y(static_cast<std::size_t>(n));
  double best = INFINITY;
  double lower = -INFINITY;
  const int max_iter = 2000 * static_cast<int>(n * n);
  for (int it = 0; it < max_iter; ++it) {
    for (Eigen::Index k = 0; k < n; ++k) y[static_cast<std::size_t>(k)] = x(k);
    const double v = obj.eval(y, &g);
    best = std::min(best, v);
    const Eigen::VectorXd pg = pm * g;
    const double gpg = g.dot(pg);
    if (!(gpg > 0.0)) break;
    lower = std::max(lower, v - std::sqrt(gpg));
    if (best - lower <= gap_tol) break;
    const Eigen::VectorXd step = pg / std::sqrt(gpg);
    x -= step / (nd + 1.0);
    pm = (nd * nd / (nd * nd - 1.0)) * (pm - (2.0 / (nd + 1.0)) * step * step.transpose());
    pm = 0.5 * (pm + pm.transpose());
  }
  return best;
}

}  // namespace

double brute_force_oracle(const Frame& f, const WeightSeq& q, std::optional<double> radius,
                          std::size_t grid) {
  if (q.size() != f.size()) throw InvalidInput("brute_force_oracle: weight length mismatch");
  if (grid < 2) throw InvalidInput("brute_force_oracle: grid needs at least 2 points per axis");
  const auto p = parametrize_duals(f);
  const Eigen::VectorXd d = canonical_diagonal(p);
  const Eigen::VectorXd qv =
      Eigen::Map<const Eigen::VectorXd>(q.values().data(), static_cast<Eigen::Index>(q.size()));

  double canonical = 0.0;
  for (Eigen::Index i = 0; i < d.size(); ++i) canonical = std::max(canonical, qv(i) * d(i));
  if (p.dof == 0) return canonical;

  const CMatrix b = diagonal_map(p);
  const double smax = Eigen::JacobiSVD<CMatrix>(b).singularValues()(0);
  const CMatrix basis = linalg::range_basis(b, kFamilyRankTolerance * std::max(1.0, smax));
  if (basis.cols() == 0) return canonical;
  if (static_cast<std::size_t>(basis.cols()) > kOracleMaxDof) {
    throw UnsupportedScale(fmt::format("brute_force_oracle: {} effective complex parameters exceed {}",
                                       basis.cols(), kOracleMaxDof));
  }

  // Any z with objective <= canonical has |z_i| <= |d_i| + canonical / q_i.
  double r = 0.0;
  if (radius) {
    if (!(*radius > 0.0)) throw InvalidInput("brute_force_oracle: radius must be positive");
    r = *radius;
  } else {
    for (Eigen::Index i = 0; i < d.size(); ++i) {
      const double bound = std::abs(d(i)) + canonical / qv(i);
      r += bound * bound;
    }
    r = std::sqrt(r);
  }

  const ReducedObjective obj(d, qv, basis);
  const std::size_t n = obj.real_dim();
  const double h = 2.0 * r / static_cast<double>(grid - 1);

  constexpr std::size_t kStarts = 4;
  std::vector<Candidate> top{{obj(std::vector<double>(n, 0.0)), std::vector<double>(n, 0.0)}};
  std::vector<std::size_t> idx(n, 0);
  std::vector<double> y(n);
  for (;;) {
    for (std::size_t k = 0; k < n; ++k) y[k] = -r + h * static_cast<double>(idx[k]);
    const double v = obj(y);
    if (top.size() < kStarts || v < top.back().value) {
      top.push_back({v, y});
      std::sort(top.begin(), top.end(), [](const auto& a, const auto& c) { return a.value < c.value; });
      if (top.size() > kStarts) top.pop_back();
    }
    std::size_t k = 0;
    while (k < n && ++idx[k] == grid) idx[k++] = 0;
    if (k == n) break;
  }

  std::mt19937_64 rng(0x5eedULL);
  double best = top.front().value;
  for (const auto& c : top) {
    best = std::min(best, refine(obj, c.point, h, 1e-12 * std::max(1.0, r), rng));
  }
  return std::min(best, ellipsoid(obj, r, 1e-10 * std::max(1.0, best)));
}

}  // namespace frameopt
