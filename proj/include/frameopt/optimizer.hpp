#pragma once

#include <cstddef>
#include <optional>

#include "frameopt/dualspace.hpp"
#include "frameopt/frames.hpp"
#include "frameopt/weights.hpp"

namespace frameopt {

struct MinimaxResult {
  double value = 0.0;          // min over duals of r_1^q, within tol
  CMatrix minimizer;           // parameter matrix A*, see DualParametrization
  bool converged = false;
  std::size_t iterations = 0;  // projection sweeps spent
  double certified_lower_bound = 0.0;
};

inline constexpr double kDefaultMinimaxTol = 1e-9;
inline constexpr std::size_t kDefaultMinimaxBudget = 2'000'000;

/// Minimizes max_i q_i |<f_i, G(A)_i>| over all parameter matrices A.
///
/// Each term is q_i |d_i + (B vec A)_i| with d_i = <f_i, S^-1 f_i>, so the
/// objective is convex. The level t is bisected between the certified lower
/// bound and the canonical value; a level is feasible iff the M
/// cylinders {x : q_i |d_i + (B x)_i| <= t} intersect, which is decided by
/// cyclic projections. Iterates are kept in the row space of B, so the
/// minimizer is free of diagonal-preserving components.
///
/// The lower end of the bracket is also raised by weak duality: any mu
/// orthogonal to range(B) gives the bound |mu^* d| / sum_i |mu_i| / q_i.
/// Each such bound is tried as a primal point via complementary slackness,
/// which closes the bracket at once when range(B)^perp is one-dimensional.
///
/// When the sweep budget runs out before the bracket is narrower than tol,
/// the best point found so far is returned with converged = false.
MinimaxResult minimize_r1(const Frame& f, const WeightSeq& q, double tol = kDefaultMinimaxTol,
                          std::size_t budget = kDefaultMinimaxBudget);

struct LowerBoundCheck {
  double bound = 0.0;
  bool respected = true;  // value >= bound - 1e-9
};

/// max(1 if sum 1/q_i = N, c^2 if H1 ∩ H2 = {0}, 0).
double certified_lower_bound(const Frame& f, const WeightSeq& q);
LowerBoundCheck verify_lower_bound(const Frame& f, const WeightSeq& q, double value);

inline constexpr std::size_t kOracleMaxDof = 4;

/// Exhaustive grid search over the effective parameters z = B vec(A), which
/// live in range(B) subset C^M, followed by pattern-search refinement from the
/// best grid points and a central-cut ellipsoid run over the same ball.
/// Returns an upper bound on the optimum. Independent of minimize_r1;
/// intended for verification at desk scale.
///
/// `radius` defaults to ||(|d_i| + c^2 / q_i)_i||_2, which bounds every
/// optimal z. Throws UnsupportedScale when rank(B) > kOracleMaxDof.
double brute_force_oracle(const Frame& f, const WeightSeq& q,
                          std::optional<double> radius = std::nullopt, std::size_t grid = 7);

}  // namespace frameopt
