#pragma once

#include <cstddef>
#include <vector>

#include "frameopt/linalg.hpp"

namespace frameopt {

/// A finite spanning sequence {f_i}, i = 1..M, in C^N.
///
/// Stored as the N x M synthesis matrix whose columns are the frame vectors.
/// Construction rejects non-finite entries, M < N and rank-deficient
/// sequences, so every Frame value has an invertible frame operator.
class Frame {
 public:
  explicit Frame(const std::vector<CVector>& vectors);
  explicit Frame(CMatrix synthesis);

  std::size_t dim() const { return static_cast<std::size_t>(synthesis_.rows()); }
  std::size_t size() const { return static_cast<std::size_t>(synthesis_.cols()); }

  CVector vector(std::size_t i) const { return synthesis_.col(static_cast<Eigen::Index>(i)); }
  std::vector<CVector> vectors() const;

  /// Theta_F^*: C^M -> C^N, columns f_i.
  const CMatrix& synthesis() const { return synthesis_; }
  /// Theta_F: f -> (<f, f_i>)_i, the M x N matrix with rows f_i^*.
  CMatrix analysis() const { return synthesis_.adjoint(); }

 private:
  CMatrix synthesis_;
};

struct FrameBounds {
  double lower;
  double upper;
};

/// S = sum_i f_i f_i^*.
CMatrix frame_operator(const Frame& f);
FrameBounds frame_bounds(const Frame& f);
bool is_tight(const Frame& f, double tol = 1e-10);
Frame canonical_dual(const Frame& f);

inline constexpr double kDualTolerance = 1e-9;

/// max_{jk} |(Theta_G^* Theta_F - I)_{jk}|.
double dual_deviation(const Frame& f, const Frame& g);
bool verify_dual(const Frame& f, const Frame& g, double tol = kDualTolerance);

/// A frame with a verified dual. Construction throws InvalidInput when
/// Theta_G^* Theta_F deviates from I by more than the tolerance.
class DualPair {
 public:
  DualPair(Frame frame, Frame dual, double tol = kDualTolerance);

  const Frame& frame() const { return frame_; }
  const Frame& dual() const { return dual_; }

 private:
  Frame frame_;
  Frame dual_;
};

}  // namespace frameopt
