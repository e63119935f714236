#include "frameopt/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "frameopt/errors.hpp"

namespace frameopt::linalg {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();  // 2^-52

Eigen::JacobiSVD<CMatrix> full_svd(const CMatrix& m) {
  return Eigen::JacobiSVD<CMatrix>(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
}

double tol_for(const CMatrix& m, const Eigen::VectorXd& sigma, std::optional<double> tol) {
  if (tol) {
    if (!(*tol >= 0.0)) throw InvalidInput("rank tolerance must be nonnegative");
    return *tol;
  }
  const double smax = sigma.size() > 0 ? sigma(0) : 0.0;
  return static_cast<double>(std::max(m.rows(), m.cols())) * smax * kEps;
}

std::size_t count_above(const Eigen::VectorXd& sigma, double tol) {
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > tol) ++r;
  }
  return r;
}

}  // namespace

Complex inner(const CVector& x, const CVector& y) {
  if (x.size() != y.size()) {
    throw InvalidInput("inner: dimension mismatch");
  }
  // Eigen's dot conjugates the first argument.
  return y.dot(x);
}

bool all_finite(const CMatrix& m) {
  return m.allFinite();
}

double default_rank_tol(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  const Eigen::JacobiSVD<CMatrix> svd(m);
  return static_cast<double>(std::max(m.rows(), m.cols())) * svd.singularValues()(0) * kEps;
}

std::size_t rank(const CMatrix& m, std::optional<double> tol) {
  if (m.size() == 0) return 0;
  const Eigen::JacobiSVD<CMatrix> svd(m);
  return count_above(svd.singularValues(), tol_for(m, svd.singularValues(), tol));
}

CMatrix null_space_basis(const CMatrix& m, std::optional<double> tol) {
  const Eigen::Index n = m.cols();
  if (m.rows() == 0) return CMatrix::Identity(n, n);
  if (n == 0) return CMatrix(0, 0);
  const auto svd = full_svd(m);
  const auto r = static_cast<Eigen::Index>(
      count_above(svd.singularValues(), tol_for(m, svd.singularValues(), tol)));
  return svd.matrixV().rightCols(n - r);
}

CMatrix range_basis(const CMatrix& m, std::optional<double> tol) {
  if (m.size() == 0) return CMatrix(m.rows(), 0);
  const auto svd = full_svd(m);
  const auto r = static_cast<Eigen::Index>(
      count_above(svd.singularValues(), tol_for(m, svd.singularValues(), tol)));
  return svd.matrixU().leftCols(r);
}

bool is_hermitian(const CMatrix& m, double rel_tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

CMatrix solve_hpd(const CMatrix& s, const CMatrix& b) {
  if (s.rows() != s.cols() || s.rows() != b.rows()) {
    throw InvalidInput("solve_hpd: shape mismatch");
  }
  if (!all_finite(s) || !all_finite(b)) {
    throw NumericalFailure("solve_hpd: non-finite input");
  }
  if (!is_hermitian(s)) {
    throw NumericalFailure("solve_hpd: matrix is not Hermitian");
  }
  const CMatrix sym = 0.5 * (s + s.adjoint());
  const Eigen::LLT<CMatrix> llt(sym);
  if (llt.info() != Eigen::Success) {
    throw NumericalFailure("solve_hpd: matrix is not positive definite");
  }
  // Squared Cholesky pivots track the conditioning of s.
  const Eigen::VectorXd pivots = llt.matrixLLT().diagonal().real().cwiseAbs2();
  const double n = static_cast<double>(s.rows());
  if (pivots.minCoeff() <= n * kEps * pivots.maxCoeff()) {
    throw NumericalFailure("solve_hpd: matrix is numerically singular");
  }
  CMatrix x = llt.solve(b);
  // One refinement step keeps the residual at roundoff level.
  x += llt.solve(b - sym * x);
  return x;
}

CVector solve_hpd(const CMatrix& s, const CVector& b) {
  const CMatrix x = solve_hpd(s, CMatrix(b));
  return x.col(0);
}

EigenBounds eig_bounds_hermitian(const CMatrix& s) {
  if (s.rows() == 0 || !is_hermitian(s)) {
    throw InvalidInput("eig_bounds_hermitian: matrix is not Hermitian");
  }
  const Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (s + s.adjoint()),
                                                  Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw NumericalFailure("eig_bounds_hermitian: eigensolver failed");
  }
  const Eigen::VectorXd& ev = es.eigenvalues();
  return {ev.minCoeff(), ev.maxCoeff()};
}

LeastSquares least_squares(const CMatrix& m, const CVector& b, std::optional<double> tol) {
  if (m.rows() != b.size()) throw InvalidInput("least_squares: shape mismatch");
  LeastSquares out;
  const Eigen::Index n = m.cols();
  if (n == 0) {
    out.solution = CVector(0);
    out.residual = b.norm();
    out.null_basis = CMatrix(0, 0);
    return out;
  }
  if (m.rows() == 0) {
    out.solution = CVector::Zero(n);
    out.null_basis = CMatrix::Identity(n, n);
    return out;
  }
  const auto svd = full_svd(m);
  const Eigen::VectorXd& sigma = svd.singularValues();
  const auto r = static_cast<Eigen::Index>(count_above(sigma, tol_for(m, sigma, tol)));
  const CVector coeffs = svd.matrixU().leftCols(r).adjoint() * b;
  CVector scaled = coeffs;
  for (Eigen::Index i = 0; i < r; ++i) scaled(i) /= sigma(i);
  out.solution = svd.matrixV().leftCols(r) * scaled;
  out.residual = (m * out.solution - b).norm();
  out.rank = static_cast<std::size_t>(r);
  out.null_basis = svd.matrixV().rightCols(n - r);
  return out;
}

}  // namespace frameopt::linalg
