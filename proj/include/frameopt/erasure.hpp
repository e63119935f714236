#pragma once

#include <cstddef>
#include <vector>

#include "frameopt/frames.hpp"
#include "frameopt/weights.hpp"

namespace frameopt {

enum class DualCheck { kRequire, kSkip };

/// r_1^q(F, G) = max_i q_i |<f_i, g_i>|.
///
/// With DualCheck::kRequire the pair must satisfy Theta_G^* Theta_F = I
/// within kDualTolerance; kSkip evaluates the functional for any G.
double r1_error(const Frame& f, const Frame& g, const WeightSeq& q,
                DualCheck check = DualCheck::kRequire);

/// q_i <f_i, g_i> for every i.
std::vector<Complex> weighted_diagonal(const Frame& f, const Frame& g, const WeightSeq& q);

inline constexpr double kTieTolerance = 1e-9;

// Indices are zero-based throughout the library.
struct LambdaPartition {
  double c = 0.0;                    // max score
  std::vector<std::size_t> lambda1;  // scores within tie_tol * c of c
  std::vector<std::size_t> lambda2;
  std::vector<double> scores;        // sqrt(q_i <f_i, S^-1 f_i>)
};

LambdaPartition lambda_partition(const Frame& f, const WeightSeq& q,
                                 double tie_tol = kTieTolerance);

/// H_j = span{f_i : i in Lambda_j}. True iff dim H1 + dim H2 = dim(H1 + H2).
bool h1h2_intersection_trivial(const Frame& f, const LambdaPartition& part);

struct OptimalityCertificate {
  LambdaPartition partition;
  bool h1h2_trivial = false;
  bool lambda2_independent = false;  // {f_i : i in Lambda_2} linearly independent
  bool lambda2_empty = false;
  bool tight = false;
  bool score_constant = false;  // sqrt(q_i) ||f_i|| constant in i
  double lower_bound = 0.0;     // c^2
  double canonical_value = 0.0; // r_1^q(F, S^-1 F)

  /// When true, the canonical dual attains the minimum r_1^q and the
  /// minimum equals c^2. Nothing is implied about uniqueness.
  bool canonical_optimal() const { return h1h2_trivial; }
};

OptimalityCertificate certificate(const Frame& f, const WeightSeq& q);

}  // namespace frameopt
