#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "frameopt/cli/document.hpp"
#include "frameopt/dualspace.hpp"
#include "frameopt/erasure.hpp"
#include "frameopt/optimizer.hpp"

namespace frameopt::cli {

inline constexpr double kAlgebraicTol = 1e-9;
inline constexpr double kOptimizerCheckTol = 1e-7;
inline constexpr double kOptimizerSolveTol = 1e-10;

/// Lazily computed pipeline results for one document.
class Workspace {
 public:
  explicit Workspace(const FrameDocument& doc);

  const Frame& frame() const { return problem_.frame; }
  const WeightSeq& weights() const { return problem_.weights; }
  const DualParametrization& params() const;
  const OptimalityCertificate& cert() const;
  const MinimaxResult& optimum() const;

 private:
  Problem problem_;
  mutable std::optional<DualParametrization> params_;
  mutable std::optional<OptimalityCertificate> cert_;
  mutable std::optional<MinimaxResult> optimum_;
};

struct Evaluation {
  double deviation;      // compared against the check tolerance
  std::string computed;  // human-readable computed quantity
};

/// One stored reference number (or group of numbers) and how to recompute it.
struct Check {
  std::string label;
  std::vector<double> stored;
  double tol = kAlgebraicTol;
  std::function<Evaluation(const Workspace&, std::span<const double>)> evaluate;
};

struct CheckOutcome {
  std::string label;
  bool pass = false;
  double deviation = 0.0;
  double tol = 0.0;
  std::string computed;
  std::string expected;
};

struct ReproductionCase {
  std::string id;
  std::string title;
  FrameDocument document;
  std::vector<Check> checks;

  /// Every stored number: document entries (re, im), weights, then check constants.
  std::size_t constant_count() const;
  void perturb_constant(std::size_t k, double delta);

  std::vector<CheckOutcome> run() const;
};

std::vector<std::string> reproduction_ids();
/// Throws InvalidInput for an unknown id.
ReproductionCase reproduction_case(const std::string& id);

}  // namespace frameopt::cli
