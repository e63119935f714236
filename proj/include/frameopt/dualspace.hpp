#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "frameopt/frames.hpp"
#include "frameopt/weights.hpp"

namespace frameopt {

/// Every dual of F is G(A) = S^-1 F + U(A), where the correction matrix
/// U(A) = (W A)^* has columns u_i, W is an orthonormal basis (M x (M-N)) of
/// null(Theta_F^*), and A ranges over all (M-N) x N complex matrices.
/// Theta_F^* W = 0 is exactly the condition sum_i <f, u_i> f_i = 0.
struct DualParametrization {
  Frame frame;
  Frame canonical;
  CMatrix null_basis;  // W
  std::size_t dof = 0; // (M - N) * N complex parameters

  std::size_t param_rows() const { return frame.size() - frame.dim(); }
  std::size_t param_cols() const { return frame.dim(); }
};

DualParametrization parametrize_duals(const Frame& f);

/// N x M matrix whose column i is u_i.
CMatrix corrections(const DualParametrization& p, const CMatrix& a);
Frame dual_from_params(const DualParametrization& p, const CMatrix& a);

struct ParamRecovery {
  CMatrix params;
  double residual = 0.0;  // ||W A - U^*||_F; zero iff g is a dual
};

/// Least-squares inverse of dual_from_params.
ParamRecovery params_from_dual(const DualParametrization& p, const Frame& g);

/// Column-major vec and its inverse for parameter matrices.
CVector vec_params(const CMatrix& a);
CMatrix unvec_params(const DualParametrization& p, const CVector& x);

/// Linear map vec(A) -> (<f_i, u_i(A)>)_i, an M x dof matrix.
CMatrix diagonal_map(const DualParametrization& p);

/// (<f_i, S^-1 f_i>)_i: real and positive.
Eigen::VectorXd canonical_diagonal(const DualParametrization& p);

enum class FamilyKind { kDiagonalPreserving, kEqualitySet };

/// {A0 + sum_k alpha_k B_k : alpha in C^k}. Basis matrices are
/// orthonormal under the Frobenius product, which W carries over to the
/// induced corrections.
struct AffineDualFamily {
  FamilyKind kind = FamilyKind::kDiagonalPreserving;
  CMatrix particular;
  std::vector<CMatrix> basis;

  std::size_t complex_dimension() const { return basis.size(); }
  CMatrix member(std::span<const Complex> coeffs) const;
};

/// Relative singular-value cutoff for rank decisions on family systems.
inline constexpr double kFamilyRankTolerance = 1e-10;
/// Absolute residual above which the equality system is inconsistent.
inline constexpr double kFeasibilityTolerance = 1e-8;

/// Corrections with <f_i, u_i> = 0 for all i: they leave every q_i <f_i, g_i>
/// unchanged, so every member has the canonical dual's r_1^q.
AffineDualFamily diagonal_preserving_family(const DualParametrization& p);

/// Solutions of q_i <f_i, G(A)_i> = 1 for all i, or nullopt if the system is
/// inconsistent. Requires q_i >= 1 and sum 1/q_i = N (InvalidInput otherwise).
std::optional<AffineDualFamily> equality_set_family(const DualParametrization& p,
                                                    const WeightSeq& q);

/// Distance of g from the family in parameter space, plus its distance from
/// the set of duals. Zero iff g is a member.
double family_membership_residual(const DualParametrization& p, const AffineDualFamily& fam,
                                  const Frame& g);

}  // namespace frameopt
