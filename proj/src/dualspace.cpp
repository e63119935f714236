#include "frameopt/dualspace.hpp"

#include <cmath>

#include <fmt/format.h>

#include "frameopt/errors.hpp"

namespace frameopt {

namespace {

double family_tol(const CMatrix& b) {
  if (b.size() == 0) return 0.0;
  return kFamilyRankTolerance * std::max(1.0, Eigen::JacobiSVD<CMatrix>(b).singularValues()(0));
}

std::vector<CMatrix> basis_from_columns(const DualParametrization& p, const CMatrix& cols) {
  std::vector<CMatrix> out;
  out.reserve(static_cast<std::size_t>(cols.cols()));
  for (Eigen::Index k = 0; k < cols.cols(); ++k) out.push_back(unvec_params(p, cols.col(k)));
  return out;
}

void check_shape(const DualParametrization& p, const CMatrix& a) {
  if (static_cast<std::size_t>(a.rows()) != p.param_rows() ||
      static_cast<std::size_t>(a.cols()) != p.param_cols()) {
    throw InvalidInput(fmt::format("parameter matrix is {}x{}, expected {}x{}", a.rows(), a.cols(),
                                   p.param_rows(), p.param_cols()));
  }
}

}  // namespace

DualParametrization parametrize_duals(const Frame& f) {
  const auto m = static_cast<Eigen::Index>(f.size());
  const auto n = static_cast<Eigen::Index>(f.dim());
  CMatrix w = m == n ? CMatrix(m, 0) : linalg::null_space_basis(f.synthesis());
  if (w.cols() != m - n) {
    throw NumericalFailure(fmt::format("null space of the synthesis operator has dimension {}, expected {}",
                                       w.cols(), m - n));
  }
  const auto dof = static_cast<std::size_t>((m - n) * n);
  return DualParametrization{f, canonical_dual(f), std::move(w), dof};
}

CMatrix corrections(const DualParametrization& p, const CMatrix& a) {
  check_shape(p, a);
  if (p.dof == 0) {
    return CMatrix::Zero(static_cast<Eigen::Index>(p.frame.dim()),
                         static_cast<Eigen::Index>(p.frame.size()));
  }
  return (p.null_basis * a).adjoint();
}

Frame dual_from_params(const DualParametrization& p, const CMatrix& a) {
  return Frame(p.canonical.synthesis() + corrections(p, a));
}

ParamRecovery params_from_dual(const DualParametrization& p, const Frame& g) {
  if (g.size() != p.frame.size() || g.dim() != p.frame.dim()) {
    throw InvalidInput("dual shape does not match the frame");
  }
  const CMatrix u_adj = (g.synthesis() - p.canonical.synthesis()).adjoint();  // M x N
  ParamRecovery out;
  if (p.dof == 0) {
    out.params = CMatrix(0, static_cast<Eigen::Index>(p.frame.dim()));
    out.residual = u_adj.norm();
    return out;
  }
  out.params = p.null_basis.adjoint() * u_adj;
  out.residual = (p.null_basis * out.params - u_adj).norm();
  return out;
}

CVector vec_params(const CMatrix& a) {
  return a.reshaped();
}

CMatrix unvec_params(const DualParametrization& p, const CVector& x) {
  if (static_cast<std::size_t>(x.size()) != p.dof) {
    throw InvalidInput(fmt::format("parameter vector has {} entries, expected {}", x.size(), p.dof));
  }
  return x.reshaped(static_cast<Eigen::Index>(p.param_rows()),
                    static_cast<Eigen::Index>(p.param_cols()));
}

CMatrix diagonal_map(const DualParametrization& p) {
  const auto m = static_cast<Eigen::Index>(p.frame.size());
  const auto rows_a = static_cast<Eigen::Index>(p.param_rows());
  const auto n = static_cast<Eigen::Index>(p.param_cols());
  const CMatrix& f = p.frame.synthesis();
  // <f_i, u_i> = sum_k f_i[k] (W A)(i, k) = sum_{j,k} W(i, j) f_i[k] A(j, k).
  CMatrix b(m, rows_a * n);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index k = 0; k < n; ++k) {
      for (Eigen::Index j = 0; j < rows_a; ++j) {
        b(i, j + k * rows_a) = p.null_basis(i, j) * f(k, i);
      }
    }
  }
  return b;
}

Eigen::VectorXd canonical_diagonal(const DualParametrization& p) {
  Eigen::VectorXd d(static_cast<Eigen::Index>(p.frame.size()));
  for (std::size_t i = 0; i < p.frame.size(); ++i) {
    d(static_cast<Eigen::Index>(i)) =
        linalg::inner(p.frame.vector(i), p.canonical.vector(i)).real();
  }
  return d;
}

CMatrix AffineDualFamily::member(std::span<const Complex> coeffs) const {
  if (coeffs.size() != basis.size()) {
    throw InvalidInput(fmt::format("family has dimension {}, got {} coefficients", basis.size(),
                                   coeffs.size()));
  }
  CMatrix a = particular;
  for (std::size_t k = 0; k < basis.size(); ++k) a += coeffs[k] * basis[k];
  return a;
}

AffineDualFamily diagonal_preserving_family(const DualParametrization& p) {
  AffineDualFamily fam;
  fam.kind = FamilyKind::kDiagonalPreserving;
  fam.particular = CMatrix::Zero(static_cast<Eigen::Index>(p.param_rows()),
                                 static_cast<Eigen::Index>(p.param_cols()));
  if (p.dof == 0) return fam;
  const CMatrix b = diagonal_map(p);
  fam.basis = basis_from_columns(p, linalg::null_space_basis(b, family_tol(b)));
  return fam;
}

std::optional<AffineDualFamily> equality_set_family(const DualParametrization& p,
                                                    const WeightSeq& q) {
  if (q.size() != p.frame.size()) {
    throw InvalidInput(fmt::format("weight sequence has {} entries for a frame of {} vectors",
                                   q.size(), p.frame.size()));
  }
  const auto report = validate_weights(q, p.frame.dim());
  if (!report.valid()) {
    throw InvalidInput(fmt::format(
        "equality family needs q_i >= 1 and sum 1/q_i = N (min q = {:.6g}, residual {:.3e})",
        report.min_weight, report.sum_residual));
  }
  const Eigen::VectorXd d = canonical_diagonal(p);
  const auto m = d.size();
  // q_i (d_i + (B x)_i) = 1  <=>  (B x)_i = 1/q_i - d_i.
  CVector rhs(m);
  for (Eigen::Index i = 0; i < m; ++i) rhs(i) = 1.0 / q[static_cast<std::size_t>(i)] - d(i);

  AffineDualFamily fam;
  fam.kind = FamilyKind::kEqualitySet;
  if (p.dof == 0) {
    if (rhs.norm() > kFeasibilityTolerance) return std::nullopt;
    fam.particular = CMatrix(0, static_cast<Eigen::Index>(p.param_cols()));
    return fam;
  }
  const CMatrix b = diagonal_map(p);
  const auto ls = linalg::least_squares(b, rhs, family_tol(b));
  if (ls.residual > kFeasibilityTolerance) return std::nullopt;
  fam.particular = unvec_params(p, ls.solution);
  fam.basis = basis_from_columns(p, ls.null_basis);
  return fam;
}

double family_membership_residual(const DualParametrization& p, const AffineDualFamily& fam,
                                  const Frame& g) {
  const auto rec = params_from_dual(p, g);
  if (p.dof == 0) return rec.residual;
  CVector delta = vec_params(rec.params - fam.particular);
  for (const auto& bk : fam.basis) {
    const CVector e = vec_params(bk);
    delta -= e.dot(delta) * e;
  }
  return std::hypot(delta.norm(), rec.residual);
}

}  // namespace frameopt
