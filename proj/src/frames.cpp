#include "frameopt/frames.hpp"

#include <string>
#include <utility>

#include <fmt/format.h>

#include "frameopt/errors.hpp"

namespace frameopt {

namespace {

CMatrix stack_columns(const std::vector<CVector>& vectors) {
  if (vectors.empty()) throw InvalidFrame("frame must contain at least one vector");
  const Eigen::Index n = vectors.front().size();
  CMatrix m(n, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != n) {
      throw InvalidFrame(fmt::format("frame vector {} has dimension {}, expected {}", i + 1,
                                     vectors[i].size(), n));
    }
    m.col(static_cast<Eigen::Index>(i)) = vectors[i];
  }
  return m;
}

}  // namespace

Frame::Frame(const std::vector<CVector>& vectors) : Frame(stack_columns(vectors)) {}

Frame::Frame(CMatrix synthesis) : synthesis_(std::move(synthesis)) {
  const auto n = synthesis_.rows();
  const auto m = synthesis_.cols();
  if (n < 1) throw InvalidFrame("frame dimension must be at least 1");
  if (m < n) {
    throw InvalidFrame(fmt::format("frame has {} vectors in dimension {}; need M >= N", m, n));
  }
  if (!linalg::all_finite(synthesis_)) throw InvalidFrame("frame has non-finite entries");
  const auto r = linalg::rank(synthesis_);
  if (r != static_cast<std::size_t>(n)) {
    throw InvalidFrame(fmt::format("frame vectors span a {}-dimensional subspace of C^{}", r, n));
  }
}

std::vector<CVector> Frame::vectors() const {
  std::vector<CVector> out;
  out.reserve(size());
  for (Eigen::Index i = 0; i < synthesis_.cols(); ++i) out.emplace_back(synthesis_.col(i));
  return out;
}

CMatrix frame_operator(const Frame& f) {
  const CMatrix& t = f.synthesis();
  CMatrix s = t * t.adjoint();
  // Exact Hermitian symmetry regardless of summation order.
  return 0.5 * (s + s.adjoint());
}

FrameBounds frame_bounds(const Frame& f) {
  const auto eb = linalg::eig_bounds_hermitian(frame_operator(f));
  if (!(eb.min > 0.0)) throw InvalidFrame("frame operator is numerically singular");
  return {eb.min, eb.max};
}

bool is_tight(const Frame& f, double tol) {
  const auto b = frame_bounds(f);
  return (b.upper - b.lower) / b.upper <= tol;
}

Frame canonical_dual(const Frame& f) {
  try {
    return Frame(linalg::solve_hpd(frame_operator(f), f.synthesis()));
  } catch (const NumericalFailure& e) {
    throw InvalidFrame(std::string("canonical dual: ") + e.what());
  }
}

double dual_deviation(const Frame& f, const Frame& g) {
  if (f.dim() != g.dim() || f.size() != g.size()) {
    throw InvalidInput(fmt::format("dual shape mismatch: ({}, {}) vs ({}, {})", f.size(),
                                   f.dim(), g.size(), g.dim()));
  }
  // Theta_G^* Theta_F = sum_i g_i f_i^*.
  const CMatrix prod = g.synthesis() * f.synthesis().adjoint();
  const auto n = static_cast<Eigen::Index>(f.dim());
  return (prod - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
}

bool verify_dual(const Frame& f, const Frame& g, double tol) {
  return dual_deviation(f, g) <= tol;
}

DualPair::DualPair(Frame frame, Frame dual, double tol)
    : frame_(std::move(frame)), dual_(std::move(dual)) {
  const double dev = dual_deviation(frame_, dual_);
  if (dev > tol) {
    throw InvalidInput(fmt::format("not a dual pair: max deviation {:.3e} exceeds {:.1e}", dev, tol));
  }
}

}  // namespace frameopt
