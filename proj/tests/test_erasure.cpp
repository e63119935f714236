#include <gtest/gtest.h>

#include <cmath>

#include "frameopt/errors.hpp"
#include "frameopt/erasure.hpp"
#include "support/fixtures.hpp"

namespace frameopt {
namespace {

using testing::vec;
using Idx = std::vector<std::size_t>;

// {e1, e1 + e2, e2} in C^2. S^-1 = (1/3)[[2, -1], [-1, 2]] gives d_i = 2/3.
Frame diagonal_frame() { return Frame(std::vector<CVector>{vec({1, 0}), vec({1, 1}), vec({0, 1})}); }

TEST(R1Error, C4ExampleCanonical) {
  const Frame f = testing::ex32_frame();
  // q_i d_i = (7/6, 7/6, 5/6, 1, 1)
  EXPECT_NEAR(r1_error(f, canonical_dual(f), testing::ex32_weights()), 7.0 / 6, 1e-12);
}

TEST(R1Error, TightExampleCanonicalAndPattern) {
  const Frame f = testing::ex33_frame();
  const WeightSeq q = testing::ex33_weights();
  EXPECT_NEAR(r1_error(f, canonical_dual(f), q), 1.0, 1e-12);
  for (Complex w : {Complex(0, 0), Complex(1, 0), Complex(0, 1), Complex(-2.5, 0.75)}) {
    const Frame g = testing::ex33_pattern_dual(w);
    ASSERT_TRUE(verify_dual(f, g));
    EXPECT_NEAR(r1_error(f, g, q), 1.0, 1e-12);
  }
}

TEST(R1Error, DualCheck) {
  const Frame f = testing::ex32_frame();
  const WeightSeq q = testing::ex32_weights();
  EXPECT_THROW(r1_error(f, f, q), InvalidInput);
  // q_i ||f_i||^2 = (7/5, 7, 5, 5, 5)
  EXPECT_NEAR(r1_error(f, f, q, DualCheck::kSkip), 7.0, 1e-12);
  EXPECT_THROW(r1_error(f, canonical_dual(f), WeightSeq({1, 1})), InvalidInput);
}

TEST(WeightedDiagonal, C4Example) {
  const Frame f = testing::ex32_frame();
  const auto v = weighted_diagonal(f, canonical_dual(f), testing::ex32_weights());
  const std::vector<double> expected = {7.0 / 6, 7.0 / 6, 5.0 / 6, 1, 1};
  ASSERT_EQ(v.size(), expected.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    EXPECT_NEAR(v[i].real(), expected[i], 1e-12);
    EXPECT_NEAR(v[i].imag(), 0.0, 1e-12);
  }
}

TEST(LambdaPartition, C4ExampleTrueScores) {
  const auto part = lambda_partition(testing::ex32_frame(), testing::ex32_weights());
  EXPECT_NEAR(part.c, std::sqrt(7.0 / 6), 1e-12);
  const std::vector<double> expected = {std::sqrt(7.0 / 6), std::sqrt(7.0 / 6), std::sqrt(5.0 / 6), 1, 1};
  for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(part.scores[i], expected[i], 1e-12);
  EXPECT_EQ(part.lambda1, (Idx{0, 1}));
  EXPECT_EQ(part.lambda2, (Idx{2, 3, 4}));
  // f_1, f_2, f_3 all lie in span{e1, e2} = H1.
  EXPECT_FALSE(h1h2_intersection_trivial(testing::ex32_frame(), part));
}

TEST(LambdaPartition, TightExampleAllTied) {
  const auto part = lambda_partition(testing::ex33_frame(), testing::ex33_weights());
  EXPECT_NEAR(part.c, 1.0, 1e-12);
  EXPECT_EQ(part.lambda1, (Idx{0, 1, 2, 3}));
  EXPECT_TRUE(part.lambda2.empty());
  EXPECT_TRUE(h1h2_intersection_trivial(testing::ex33_frame(), part));
}

TEST(LambdaPartition, DiagonalFrameIntersectionNontrivial) {
  const WeightSeq q({4.0 / 3, 2, 4.0 / 3});  // scores^2 = (8/9, 4/3, 8/9)
  const auto part = lambda_partition(diagonal_frame(), q);
  EXPECT_NEAR(part.c * part.c, 4.0 / 3, 1e-12);
  EXPECT_EQ(part.lambda1, (Idx{1}));
  EXPECT_EQ(part.lambda2, (Idx{0, 2}));
  EXPECT_FALSE(h1h2_intersection_trivial(diagonal_frame(), part));
  EXPECT_FALSE(certificate(diagonal_frame(), q).canonical_optimal());
}

TEST(LambdaPartition, TieTolerance) {
  const WeightSeq q({4.0 / 3, 4.0 / 3 * (1 + 1e-11), 4.0 / 3});
  EXPECT_EQ(lambda_partition(diagonal_frame(), q).lambda1.size(), 3u);
  const WeightSeq q2({4.0 / 3, 4.0 / 3 * (1 + 1e-6), 4.0 / 3});
  EXPECT_EQ(lambda_partition(diagonal_frame(), q2).lambda1, (Idx{1}));
}

TEST(Certificate, C4Example) {
  const auto cert = certificate(testing::ex32_frame(), testing::ex32_weights());
  EXPECT_FALSE(cert.h1h2_trivial);
  EXPECT_FALSE(cert.canonical_optimal());
  EXPECT_TRUE(cert.lambda2_independent);  // f3, f4, f5
  EXPECT_FALSE(cert.tight);
  EXPECT_FALSE(cert.score_constant);
  EXPECT_NEAR(cert.lower_bound, 7.0 / 6, 1e-12);
  EXPECT_NEAR(cert.canonical_value, 7.0 / 6, 1e-12);
}

TEST(Certificate, TightExample) {
  const auto cert = certificate(testing::ex33_frame(), testing::ex33_weights());
  EXPECT_TRUE(cert.h1h2_trivial);
  EXPECT_TRUE(cert.canonical_optimal());
  EXPECT_TRUE(cert.lambda2_empty);
  EXPECT_TRUE(cert.tight);
  EXPECT_TRUE(cert.score_constant);  // sqrt(q_i) ||f_i|| = sqrt(3)
  EXPECT_NEAR(cert.lower_bound, 1.0, 1e-12);
  EXPECT_NEAR(cert.canonical_value, 1.0, 1e-12);
}

TEST(Certificate, DirectSumWithLargeFirstBlock) {
  // e1 alone in Lambda_1, {e2, e2} in Lambda_2: the intersection is {0}.
  const Frame f(std::vector<CVector>{vec({1, 0}), vec({0, 1}), vec({0, 1})});
  const auto cert = certificate(f, WeightSeq({3, 1, 1}));
  EXPECT_EQ(cert.partition.lambda1, (Idx{0}));
  EXPECT_TRUE(cert.h1h2_trivial);
  EXPECT_FALSE(cert.lambda2_independent);
  EXPECT_NEAR(cert.lower_bound, 3.0, 1e-12);
  EXPECT_NEAR(cert.canonical_value, 3.0, 1e-12);
}

TEST(Certificate, MercedesAndBasis) {
  const auto m = certificate(testing::mercedes_frame(), testing::mercedes_weights());
  EXPECT_TRUE(m.canonical_optimal());
  EXPECT_TRUE(m.score_constant);
  EXPECT_NEAR(m.lower_bound, 1.0, 1e-12);
  const auto b = certificate(testing::orthonormal_basis(3), WeightSeq({1, 1, 1}));
  EXPECT_TRUE(b.canonical_optimal());
  EXPECT_NEAR(b.canonical_value, 1.0, 1e-14);
}

class RandomDuals : public ::testing::Test {
 protected:
  testing::Rng rng{testing::test_seed() + 30};
};

TEST_F(RandomDuals, ValidWeightsBoundEveryDualByOne) {
  for (int t = 0; t < 200; ++t) {
    const int n = rng.integer(1, 4);
    const int m = n + rng.integer(1, 3);
    const Frame f = testing::random_frame(rng, n, m, t % 2 == 0);
    const WeightSeq q = testing::random_valid_weights(rng, static_cast<std::size_t>(m),
                                                      static_cast<std::size_t>(n));
    const Frame g = testing::generalized_inverse_dual(f, rng);
    ASSERT_TRUE(verify_dual(f, g));
    EXPECT_GE(r1_error(f, g, q), 1.0 - 1e-9);
    EXPECT_GE(r1_error(f, canonical_dual(f), q), 1.0 - 1e-9);
  }
}

TEST_F(RandomDuals, ValueOneForcesEquality) {
  // With balancing weights the canonical dual sits at r = 1, and every
  // weighted diagonal entry must equal 1.
  for (int t = 0; t < 50; ++t) {
    const int n = rng.integer(1, 4);
    const Frame f = testing::random_frame(rng, n, n + rng.integer(1, 3));
    const WeightSeq q = testing::balancing_weights(f);
    const Frame g = canonical_dual(f);
    ASSERT_NEAR(r1_error(f, g, q), 1.0, 1e-9);
    for (Complex v : weighted_diagonal(f, g, q)) EXPECT_LE(std::abs(v - 1.0), 1e-9);
  }
}

TEST_F(RandomDuals, CertificateImpliesCanonicalAtLowerBound) {
  for (int t = 0; t < 100; ++t) {
    const int n = rng.integer(1, 4);
    const Frame f = testing::random_frame(rng, n, n + rng.integer(0, 3));
    std::vector<double> w(f.size());
    for (auto& v : w) v = rng.uniform(1.0, 4.0);
    const auto cert = certificate(f, WeightSeq(w));
    if (cert.canonical_optimal()) {
      EXPECT_NEAR(cert.canonical_value, cert.lower_bound, 1e-9 * cert.lower_bound);
    }
    EXPECT_NEAR(cert.canonical_value, cert.partition.c * cert.partition.c, 1e-9 * cert.canonical_value);
  }
}

}  // namespace
}  // namespace frameopt
