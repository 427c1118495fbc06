#include <gtest/gtest.h>

#include <random>

#include "olyrank/llsm.hpp"
#include "test_support.hpp"

using namespace olyrank;

TEST(Llsm, ConsistentCompleteMatrixReproducesWeights) {
  const IncompletePCM m(3, {{0, 1, 2}, {0, 2, 4}, {1, 2, 2}});
  const auto w = llsm_weights(m);
  EXPECT_NEAR(w[0], 4.0 / 7, 1e-14);
  EXPECT_NEAR(w[1], 2.0 / 7, 1e-14);
  EXPECT_NEAR(w[2], 1.0 / 7, 1e-14);
  EXPECT_EQ(w.method, "llsm");
}

TEST(Llsm, PathIsCompletedConsistently) {
  const IncompletePCM m(3, {{0, 1, 2}, {1, 2, 3}});
  const auto s = llsm_solve(m);
  EXPECT_NEAR(s.weights[0], 0.6, 1e-14);
  EXPECT_NEAR(s.weights[1], 0.3, 1e-14);
  EXPECT_NEAR(s.weights[2], 0.1, 1e-14);
  // Direct evaluation of the objective at the oracle weights.
  const std::vector<double> y{std::log(6.0), std::log(3.0), 0.0};
  EXPECT_LE(llsm_objective(m, y), 1e-30);
  EXPECT_LE(s.objective, 1e-18);
}

TEST(Llsm, RejectsDisconnectedAndDegenerate) {
  const IncompletePCM split(4, {{0, 1, 2}, {2, 3, 2}});
  try {
    llsm_weights(split);
    FAIL();
  } catch (const DisconnectedGraphError& e) {
    EXPECT_EQ(e.components().size(), 2u);
  }
  EXPECT_THROW(llsm_weights(IncompletePCM(1, {})), DegenerateInputError);
}

TEST(Llsm, MatchesDescentOracleOnRandomInstance) {
  std::mt19937 rng(17);
  const auto edges = fixtures::random_connected_edges(rng, 6, 4);
  const auto m = fixtures::random_pcm(rng, 6, edges);
  const auto s = llsm_solve(m);
  EXPECT_NEAR(s.objective, fixtures::descent_llsm_minimum(m), 1e-6);
  EXPECT_LE(s.residual, 1e-10);
}

TEST(Llsm, FirstOrderConditions) {
  std::mt19937 rng(19);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + rng() % 12;
    const auto m = fixtures::random_pcm(rng, n, fixtures::random_connected_edges(rng, n, rng() % n));
    const auto s = llsm_solve(m);
    const auto g = fixtures::numeric_gradient([&](const std::vector<double>& y) { return llsm_objective(m, y); },
                                             s.log_weights, 1e-2);
    for (double v : g) EXPECT_LE(std::abs(v), 1e-9);
    double sum = 0;
    for (double v : s.weights.w) {
      EXPECT_GT(v, 0);
      sum += v;
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
}

TEST(Llsm, ZeroResidualForTreesAndConsistentData) {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng() % 10;
    const auto tree = fixtures::random_pcm(rng, n, fixtures::random_connected_edges(rng, n, 0));
    EXPECT_LE(llsm_solve(tree).objective, 1e-18);
    const auto w = fixtures::random_weights(rng, n);
    const auto consistent = fixtures::consistent_pcm(w, fixtures::random_connected_edges(rng, n, n));
    EXPECT_LE(llsm_solve(consistent).objective, 1e-18);
  }
}

TEST(Llsm, IndependentOfEquationOrder) {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 3 + rng() % 15;
    const auto m = fixtures::random_pcm(rng, n, fixtures::random_connected_edges(rng, n, n));
    auto shuffled = m.entries();
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    for (auto& e : shuffled)
      if (rng() % 2) {
        std::swap(e.i, e.j);
        e.value = 1.0 / e.value;
      }
    const auto a = llsm_weights(m);
    const auto b = llsm_weights(IncompletePCM(n, shuffled));
    for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(a[k], b[k], 1e-12);
  }
}

TEST(Llsm, RowScalingMultipliesOneWeight) {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 3 + rng() % 10;
    const auto m = fixtures::random_pcm(rng, n, fixtures::random_connected_edges(rng, n, n));
    const std::size_t row = rng() % n;
    const double c = 2.5;
    auto scaled = m.entries();
    for (auto& e : scaled) {
      if (e.i == row) e.value *= c;
      if (e.j == row) e.value /= c;
    }
    const auto a = llsm_weights(m);
    const auto b = llsm_weights(IncompletePCM(n, scaled));
    for (std::size_t k = 0; k < n; ++k) {
      const double expected = (k == row ? c : 1.0) * a[k] / a[(row + 1) % n];
      EXPECT_NEAR(b[k] / b[(row + 1) % n], expected, 1e-9 * expected);
    }
  }
}
