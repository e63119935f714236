#pragma once

#include <complex>
#include <cstddef>
#include <optional>

#include <Eigen/Dense>

namespace frameopt {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

namespace linalg {

/// <x, y> = sum_k x_k * conj(y_k): linear in the first slot.
Complex inner(const CVector& x, const CVector& y);

bool all_finite(const CMatrix& m);

/// max(rows, cols) * sigma_max * 2^-52.
double default_rank_tol(const CMatrix& m);

/// Number of singular values strictly above `tol`.
std::size_t rank(const CMatrix& m, std::optional<double> tol = std::nullopt);

/// Orthonormal basis of {x : m x = 0}, one column per null direction.
CMatrix null_space_basis(const CMatrix& m, std::optional<double> tol = std::nullopt);

/// Orthonormal basis of the column space of `m`.
CMatrix range_basis(const CMatrix& m, std::optional<double> tol = std::nullopt);

bool is_hermitian(const CMatrix& m, double rel_tol = 1e-10);

/// Solves s x = b for Hermitian positive definite s. Throws NumericalFailure
/// when s is not Hermitian or a Cholesky pivot collapses.
CVector solve_hpd(const CMatrix& s, const CVector& b);
CMatrix solve_hpd(const CMatrix& s, const CMatrix& b);

struct EigenBounds {
  double min;
  double max;
};

/// Extreme eigenvalues of a Hermitian matrix. Throws InvalidInput otherwise.
EigenBounds eig_bounds_hermitian(const CMatrix& s);

// Minimum-norm least-squares solution of m x = b via SVD.
struct LeastSquares {
  CVector solution;
  double residual = 0.0;  // ||m x - b||_2
  std::size_t rank = 0;
  CMatrix null_basis;     // orthonormal basis of null(m)
};

LeastSquares least_squares(const CMatrix& m, const CVector& b,
                           std::optional<double> tol = std::nullopt);

}  // namespace linalg
}  // namespace frameopt
