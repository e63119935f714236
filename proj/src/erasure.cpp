#include "frameopt/erasure.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "frameopt/errors.hpp"

namespace frameopt {

namespace {

void check_lengths(const Frame& f, const WeightSeq& q) {
  if (q.size() != f.size()) {
    throw InvalidInput(fmt::format("weight sequence has {} entries for a frame of {} vectors",
                                   q.size(), f.size()));
  }
}

CMatrix columns(const Frame& f, const std::vector<std::size_t>& idx) {
  CMatrix m(static_cast<Eigen::Index>(f.dim()), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) {
    m.col(static_cast<Eigen::Index>(k)) = f.synthesis().col(static_cast<Eigen::Index>(idx[k]));
  }
  return m;
}

}  // namespace

std::vector<Complex> weighted_diagonal(const Frame& f, const Frame& g, const WeightSeq& q) {
  check_lengths(f, q);
  if (g.size() != f.size() || g.dim() != f.dim()) {
    throw InvalidInput("frame and dual have different shapes");
  }
  std::vector<Complex> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    out[i] = q[i] * linalg::inner(f.vector(i), g.vector(i));
  }
  return out;
}

double r1_error(const Frame& f, const Frame& g, const WeightSeq& q, DualCheck check) {
  if (check == DualCheck::kRequire) {
    DualPair pair(f, g);
  }
  double best = 0.0;
  for (const auto& v : weighted_diagonal(f, g, q)) best = std::max(best, std::abs(v));
  return best;
}

LambdaPartition lambda_partition(const Frame& f, const WeightSeq& q, double tie_tol) {
  check_lengths(f, q);
  // <f_i, S^-1 f_i> = ||S^-1/2 f_i||^2, so the square root is never formed.
  const CMatrix dual = linalg::solve_hpd(frame_operator(f), f.synthesis());
  LambdaPartition part;
  part.scores.resize(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double d = linalg::inner(f.vector(i), dual.col(static_cast<Eigen::Index>(i))).real();
    part.scores[i] = std::sqrt(q[i] * std::max(d, 0.0));
  }
  part.c = *std::max_element(part.scores.begin(), part.scores.end());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (part.c - part.scores[i] <= tie_tol * part.c) {
      part.lambda1.push_back(i);
    } else {
      part.lambda2.push_back(i);
    }
  }
  return part;
}

bool h1h2_intersection_trivial(const Frame& f, const LambdaPartition& part) {
  if (part.lambda1.empty() || part.lambda2.empty()) return true;
  const CMatrix h1 = columns(f, part.lambda1);
  const CMatrix h2 = columns(f, part.lambda2);
  CMatrix both(h1.rows(), h1.cols() + h2.cols());
  both << h1, h2;
  return linalg::rank(h1) + linalg::rank(h2) == linalg::rank(both);
}

OptimalityCertificate certificate(const Frame& f, const WeightSeq& q) {
  OptimalityCertificate cert;
  cert.partition = lambda_partition(f, q);
  const auto& part = cert.partition;
  cert.h1h2_trivial = h1h2_intersection_trivial(f, part);
  cert.lambda2_empty = part.lambda2.empty();
  cert.lambda2_independent =
      cert.lambda2_empty || linalg::rank(columns(f, part.lambda2)) == part.lambda2.size();
  cert.tight = is_tight(f);

  double lo = INFINITY;
  double hi = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double v = std::sqrt(q[i]) * f.vector(i).norm();
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  cert.score_constant = hi - lo <= kTieTolerance * hi;
  cert.lower_bound = part.c * part.c;
  cert.canonical_value = r1_error(f, canonical_dual(f), q);
  return cert;
}

}  // namespace frameopt
