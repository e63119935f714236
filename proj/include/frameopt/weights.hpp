#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace frameopt {

/// Relative erasure probabilities p_i >= 0. Only ratios p_i / sum(p) matter.
/// Requires sum(p) - p_i > 0 for every i.
class ProbSeq {
 public:
  explicit ProbSeq(std::vector<double> p);

  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  std::span<const double> values() const { return p_; }
  double total() const { return total_; }
  ProbSeq normalized() const;

 private:
  std::vector<double> p_;
  double total_ = 0.0;
};

/// Positive finite weights q_i. Conditions (i) q_i >= 1 and (ii)
/// sum 1/q_i = N are checked by validate_weights, not by construction.
class WeightSeq {
 public:
  explicit WeightSeq(std::vector<double> q);

  std::size_t size() const { return q_.size(); }
  double operator[](std::size_t i) const { return q_[i]; }
  std::span<const double> values() const { return q_; }
  double reciprocal_sum() const;

 private:
  std::vector<double> q_;
};

inline constexpr double kWeightSumTolerance = 1e-9;

struct WeightReport {
  bool all_at_least_one = false;  // condition (i)
  bool sum_matches_dim = false;   // condition (ii) within kWeightSumTolerance
  double sum_residual = 0.0;      // sum 1/q_i - N
  double min_weight = 0.0;

  bool valid() const { return all_at_least_one && sum_matches_dim; }
};

/// q_i = [sum p / (sum p - p_i)] * (M - 1) / N.
/// Throws ConditionViolation when some q_i < 1.
WeightSeq weights_from_probabilities(const ProbSeq& p, std::size_t dim);

WeightReport validate_weights(const WeightSeq& q, std::size_t dim);

/// Inverse of weights_from_probabilities: p_i = 1 - (M - 1) / (N q_i),
/// normalized. Throws InvalidInput if q fails (i)/(ii) and
/// InconsistentWeights if some p_i comes out negative.
ProbSeq probabilities_from_weights(const WeightSeq& q, std::size_t dim);

}  // namespace frameopt
