#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "frameopt/frames.hpp"
#include "frameopt/linalg.hpp"
#include "frameopt/weights.hpp"

namespace frameopt::testing {

inline CVector vec(std::initializer_list<Complex> xs) {
  CVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index k = 0;
  for (auto x : xs) v(k++) = x;
  return v;
}

inline Frame ex32_frame() {
  return Frame(std::vector<CVector>{vec({1, 0, 0, 0}), vec({1, 1, 0, 0}), vec({1, 2, 0, 0}),
                                    vec({0, 0, 1, 2}), vec({0, 0, 2, 1})});
}
inline WeightSeq ex32_weights() { return WeightSeq({7.0 / 5, 7.0 / 2, 1, 1, 1}); }

inline Frame ex33_frame() {
  return Frame(std::vector<CVector>{vec({1, 0}), vec({0, 1}), vec({1, 1}), vec({1, -1})});
}
inline WeightSeq ex33_weights() { return WeightSeq({3, 3, 1.5, 1.5}); }

inline Frame mercedes_frame() {
  const double s = std::sqrt(3.0) / 2;
  return Frame(std::vector<CVector>{vec({1, 0}), vec({-0.5, s}), vec({-0.5, -s})});
}
inline WeightSeq mercedes_weights() { return WeightSeq({1.5, 1.5, 1.5}); }

inline Frame orthonormal_basis(Eigen::Index n) { return Frame(CMatrix(CMatrix::Identity(n, n))); }

/// The alternative dual listed alongside the C^4 example.
inline Frame ex32_listed_alternative() {
  return Frame(std::vector<CVector>{vec({5.0 / 6, -0.5, 1, 1}), vec({1.0 / 3, 0, -2, -2}),
                                    vec({1.0 / 6, 0.5, 1, 1}), vec({0, 0, -1.0 / 3, 2.0 / 3}),
                                    vec({0, 0, 2.0 / 3, -1.0 / 3})});
}

/// The (-w, w, w, w) dual of the tight C^2 example.
inline Frame ex33_pattern_dual(Complex w) {
  const double t = 1.0 / 3;
  return Frame(std::vector<CVector>{vec({t, -2.0 * w}), vec({2.0 * w, t}), vec({t - w, t + w}),
                                    vec({t + w, -t + w})});
}

/// FRAMEOPT_SEED when set, a fixed default otherwise.
inline std::uint64_t test_seed() {
  if (const char* s = std::getenv("FRAMEOPT_SEED")) return std::strtoull(s, nullptr, 10);
  return 20241014ULL;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double normal() { return normal_(gen_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  Complex cnormal() { return {normal(), normal()}; }

  CMatrix complex_matrix(Eigen::Index r, Eigen::Index c) {
    CMatrix m(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = 0; j < c; ++j) m(i, j) = cnormal();
    return m;
  }

  CMatrix hpd_matrix(Eigen::Index n) {
    const CMatrix a = complex_matrix(n, n);
    return a * a.adjoint() + 0.5 * CMatrix::Identity(n, n);
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
  std::normal_distribution<double> normal_;
};

inline Frame random_frame(Rng& rng, Eigen::Index n, Eigen::Index m, bool real = false) {
  CMatrix s = rng.complex_matrix(n, m);
  if (real) s = CMatrix(s.real().cast<Complex>());
  return Frame(std::move(s));
}

/// Forward-map weights computed directly in test code from random
/// probabilities, about a third of them zero.
inline WeightSeq random_valid_weights(Rng& rng, std::size_t m, std::size_t n) {
  std::vector<double> p(m);
  double total = 0.0;
  for (auto& v : p) {
    v = rng.uniform(0, 1) < 0.33 ? 0.0 : rng.uniform(0.05, 1.0);
    total += v;
  }
  if (total == 0.0) {
    p[0] = 1.0;
    total = 1.0;
  }
  // guarantee sum(p) - p_i > 0
  if (std::count_if(p.begin(), p.end(), [](double v) { return v > 0; }) < 2) {
    p[(std::max_element(p.begin(), p.end()) - p.begin() + 1) % static_cast<long>(m)] += 0.5;
    total += 0.5;
  }
  std::vector<double> q(m);
  for (std::size_t i = 0; i < m; ++i) {
    q[i] = total / (total - p[i]) * static_cast<double>(m - 1) / static_cast<double>(n);
  }
  return WeightSeq(std::move(q));
}

/// q_i = 1 / <f_i, S^-1 f_i>: satisfies q_i >= 1 and sum 1/q_i = N, and the
/// canonical dual attains r_1^q = 1.
inline WeightSeq balancing_weights(const Frame& f) {
  const CMatrix s = f.synthesis() * f.synthesis().adjoint();
  const CMatrix g = s.ldlt().solve(f.synthesis());
  std::vector<double> q(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    q[i] = 1.0 / g.col(k).dot(f.synthesis().col(k)).real();
  }
  return WeightSeq(std::move(q));
}

/// Dual via a generalized inverse: L = Theta^+ + Z (I - Theta Theta^+) is a
/// left inverse of the analysis matrix for any Z, and its columns form a dual.
inline Frame generalized_inverse_dual(const Frame& f, Rng& rng) {
  const CMatrix theta = f.analysis();  // M x N
  const CMatrix pinv = theta.completeOrthogonalDecomposition().pseudoInverse();  // N x M
  const auto m = theta.rows();
  const CMatrix z = rng.complex_matrix(theta.cols(), m);
  return Frame(CMatrix(pinv + z * (CMatrix::Identity(m, m) - theta * pinv)));
}

/// Closed-form eigenvalues of a 2x2 Hermitian block [[a, b], [conj b, d]].
inline std::pair<double, double> eig2(double a, Complex b, double d) {
  const double mid = 0.5 * (a + d);
  const double rad = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(b));
  return {mid - rad, mid + rad};
}

}  // namespace frameopt::testing
