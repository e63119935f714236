#include <gtest/gtest.h>

#include <algorithm>

#include "frameopt/errors.hpp"
#include "frameopt/weights.hpp"
#include "support/fixtures.hpp"

namespace frameopt {
namespace {

void expect_values(const WeightSeq& q, std::vector<double> expected, double tol) {
  ASSERT_EQ(q.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_NEAR(q[i], expected[i], tol) << "i = " << i + 1;
}

// Inverse of the forward map computed by hand: p_i / sum p = 1 - (M-1)/(N q_i).
std::vector<double> invert_by_hand(const std::vector<double>& q, double m, double n) {
  std::vector<double> p;
  for (double v : q) p.push_back(1.0 - (m - 1) / (n * v));
  return p;
}

TEST(WeightsFromProbabilities, C4ExampleList) {
  const std::vector<double> listed = {7.0 / 5, 7.0 / 2, 1, 1, 1};
  const auto p = invert_by_hand(listed, 5, 4);
  EXPECT_NEAR(p[0], 2.0 / 7, 1e-15);
  EXPECT_NEAR(p[1], 5.0 / 7, 1e-15);
  const WeightSeq q = weights_from_probabilities(ProbSeq({2, 5, 0, 0, 0}), 4);
  expect_values(q, listed, 1e-14);
  EXPECT_NEAR(q.reciprocal_sum(), 4.0, 1e-12);
}

TEST(WeightsFromProbabilities, TightExampleList) {
  const std::vector<double> listed = {3, 3, 1.5, 1.5};
  const auto p = invert_by_hand(listed, 4, 2);
  EXPECT_NEAR(p[0], 0.5, 1e-15);
  EXPECT_NEAR(p[2], 0.0, 1e-15);
  const WeightSeq q = weights_from_probabilities(ProbSeq({1, 1, 0, 0}), 2);
  expect_values(q, listed, 1e-14);
  EXPECT_NEAR(q.reciprocal_sum(), 2.0, 1e-12);
}

TEST(WeightsFromProbabilities, UniformGivesMOverN) {
  for (std::size_t m = 2; m <= 7; ++m) {
    for (std::size_t n = 1; n <= m; ++n) {
      const WeightSeq q = weights_from_probabilities(ProbSeq(std::vector<double>(m, 0.3)), n);
      for (std::size_t i = 0; i < m; ++i) {
        EXPECT_NEAR(q[i], static_cast<double>(m) / static_cast<double>(n), 1e-14);
      }
    }
  }
}

TEST(WeightsFromProbabilities, Errors) {
  EXPECT_THROW(ProbSeq({1, 0, 0}), InvalidInput);    // sum p - p_1 = 0
  EXPECT_THROW(ProbSeq({-1, 2, 0}), InvalidInput);
  EXPECT_THROW(ProbSeq({0, 0}), InvalidInput);
  // M = N = 2 with p = (3, 1): q_2 = (1/2)(4/3) < 1.
  EXPECT_THROW(weights_from_probabilities(ProbSeq({3, 1}), 2), ConditionViolation);
}

TEST(ValidateWeights, Examples) {
  const auto a = validate_weights(WeightSeq({7.0 / 5, 7.0 / 2, 1, 1, 1}), 4);
  EXPECT_TRUE(a.valid());
  EXPECT_NEAR(a.sum_residual, 0.0, 1e-15);
  EXPECT_TRUE(validate_weights(WeightSeq({3, 3, 1.5, 1.5}), 2).valid());
  const auto bad = validate_weights(WeightSeq({0.5, 2}), 1);
  EXPECT_FALSE(bad.all_at_least_one);
  EXPECT_FALSE(bad.valid());
  EXPECT_FALSE(validate_weights(WeightSeq({2, 2, 2}), 2).sum_matches_dim);
  EXPECT_THROW(WeightSeq({1, 0}), InvalidInput);
}

TEST(ProbabilitiesFromWeights, Examples) {
  const ProbSeq a = probabilities_from_weights(WeightSeq({7.0 / 5, 7.0 / 2, 1, 1, 1}), 4);
  const std::vector<double> ea = {2.0 / 7, 5.0 / 7, 0, 0, 0};
  for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(a[i], ea[i], 1e-15);
  const ProbSeq b = probabilities_from_weights(WeightSeq({3, 3, 1.5, 1.5}), 2);
  const std::vector<double> eb = {0.5, 0.5, 0, 0};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(b[i], eb[i], 1e-15);
  const ProbSeq u = probabilities_from_weights(WeightSeq(std::vector<double>(6, 2.0)), 3);
  for (std::size_t i = 0; i < 6; ++i) EXPECT_NEAR(u[i], 1.0 / 6, 1e-15);
}

TEST(ProbabilitiesFromWeights, Errors) {
  // q_1 = 6/5 < (M-1)/N = 3/2 while sum 1/q = 5/6 + 3 (7/18) = 2.
  EXPECT_THROW(probabilities_from_weights(WeightSeq({1.2, 18.0 / 7, 18.0 / 7, 18.0 / 7}), 2),
               InconsistentWeights);
  EXPECT_THROW(probabilities_from_weights(WeightSeq({2, 2, 2}), 2), InvalidInput);
}

class RandomProbabilities : public ::testing::Test {
 protected:
  testing::Rng rng{testing::test_seed() + 20};

  std::vector<double> draw(std::size_t m) {
    std::vector<double> p(m);
    for (auto& v : p) v = rng.uniform(0, 1) < 0.25 ? 0.0 : rng.uniform(0, 1);
    p[0] += 0.1;
    p[1] += 0.1;
    return p;
  }
};

TEST_F(RandomProbabilities, RoundTripScaleInvarianceAndMonotonicity) {
  for (int t = 0; t < 300; ++t) {
    const auto m = static_cast<std::size_t>(rng.integer(2, 8));
    const auto n = static_cast<std::size_t>(rng.integer(1, static_cast<int>(m) - 1));
    const auto p = draw(m);
    const WeightSeq q = weights_from_probabilities(ProbSeq(p), n);
    EXPECT_NEAR(q.reciprocal_sum(), static_cast<double>(n), 1e-12);

    const WeightSeq back = weights_from_probabilities(probabilities_from_weights(q, n), n);
    for (std::size_t i = 0; i < m; ++i) EXPECT_NEAR(back[i], q[i], 1e-12 * q[i]);

    std::vector<double> scaled = p;
    const double alpha = std::exp(rng.uniform(-5, 5));
    for (auto& v : scaled) v *= alpha;
    const WeightSeq qs = weights_from_probabilities(ProbSeq(scaled), n);
    for (std::size_t i = 0; i < m; ++i) EXPECT_NEAR(qs[i], q[i], 1e-14 * q[i]);

    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        if (p[i] > p[j]) EXPECT_GE(q[i], q[j]);
        if (p[i] == p[j]) EXPECT_NEAR(q[i], q[j], 1e-12);
      }
    }
  }
}

}  // namespace
}  // namespace frameopt
