#include "frameopt/weights.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include <fmt/format.h>

#include "frameopt/errors.hpp"

namespace frameopt {

namespace {

// Roundoff allowance when comparing q_i against 1 or p_i against 0.
constexpr double kSlack = 1e-12;

}  // namespace

ProbSeq::ProbSeq(std::vector<double> p) : p_(std::move(p)) {
  if (p_.size() < 2) throw InvalidInput("probability sequence needs at least two entries");
  for (std::size_t i = 0; i < p_.size(); ++i) {
    if (!std::isfinite(p_[i]) || p_[i] < 0.0) {
      throw InvalidInput(fmt::format("probability p_{} = {} must be finite and nonnegative", i + 1, p_[i]));
    }
  }
  total_ = std::accumulate(p_.begin(), p_.end(), 0.0);
  for (std::size_t i = 0; i < p_.size(); ++i) {
    if (!(total_ - p_[i] > 0.0)) {
      throw InvalidInput(fmt::format(
          "probability p_{} carries all the mass; at least two entries must be positive", i + 1));
    }
  }
}

ProbSeq ProbSeq::normalized() const {
  std::vector<double> out(p_.size());
  std::transform(p_.begin(), p_.end(), out.begin(), [&](double v) { return v / total_; });
  return ProbSeq(std::move(out));
}

WeightSeq::WeightSeq(std::vector<double> q) : q_(std::move(q)) {
  if (q_.empty()) throw InvalidInput("weight sequence is empty");
  for (std::size_t i = 0; i < q_.size(); ++i) {
    if (!std::isfinite(q_[i]) || !(q_[i] > 0.0)) {
      throw InvalidInput(fmt::format("weight q_{} = {} must be finite and positive", i + 1, q_[i]));
    }
  }
}

double WeightSeq::reciprocal_sum() const {
  double s = 0.0;
  for (double v : q_) s += 1.0 / v;
  return s;
}

WeightSeq weights_from_probabilities(const ProbSeq& p, std::size_t dim) {
  if (dim < 1) throw InvalidInput("dimension must be at least 1");
  const auto m = static_cast<double>(p.size());
  const double scale = (m - 1.0) / static_cast<double>(dim);
  std::vector<double> q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    // Ratio form so that scaling p by any alpha > 0 gives bitwise-equal
    // results up to the normalization division.
    const double share = p[i] / p.total();
    q[i] = scale / (1.0 - share);
    if (q[i] < 1.0 - kSlack) {
      throw ConditionViolation(fmt::format(
          "q_{} = {:.6g} < 1: condition (i) fails for M = {}, N = {}", i + 1, q[i], p.size(), dim));
    }
    q[i] = std::max(q[i], 1.0);
  }
  return WeightSeq(std::move(q));
}

WeightReport validate_weights(const WeightSeq& q, std::size_t dim) {
  WeightReport r;
  const auto vals = q.values();
  r.min_weight = *std::min_element(vals.begin(), vals.end());
  r.all_at_least_one = r.min_weight >= 1.0 - kSlack;
  r.sum_residual = q.reciprocal_sum() - static_cast<double>(dim);
  r.sum_matches_dim = std::abs(r.sum_residual) <= kWeightSumTolerance;
  return r;
}

ProbSeq probabilities_from_weights(const WeightSeq& q, std::size_t dim) {
  const auto report = validate_weights(q, dim);
  if (!report.valid()) {
    throw InvalidInput(fmt::format(
        "weights violate the defining conditions (min q = {:.6g}, sum 1/q - N = {:.3e})",
        report.min_weight, report.sum_residual));
  }
  if (q.size() < 2) throw InvalidInput("weight sequence needs at least two entries");
  const auto m = static_cast<double>(q.size());
  const double scale = (m - 1.0) / static_cast<double>(dim);
  std::vector<double> p(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    p[i] = 1.0 - scale / q[i];
    if (p[i] < -kSlack) {
      throw InconsistentWeights(fmt::format(
          "q_{} = {:.6g} is below (M-1)/N = {:.6g}; no probability sequence produces it", i + 1,
          q[i], scale));
    }
    p[i] = std::max(p[i], 0.0);
  }
  return ProbSeq(std::move(p)).normalized();
}

}  // namespace frameopt
