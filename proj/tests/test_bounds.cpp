#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "ftc/bounds.hpp"
#include "ftc/graph.hpp"
#include "ftc/spectral.hpp"
#include "support.hpp"

namespace ftc {
namespace {

using testing::Rng;

const std::vector<double> kX0{-5, -3, 7, 9, 4, 5};

TEST(PowerSumConstant, Examples) {
  EXPECT_EQ(lemma1_constant(6, 0.75), 1.0);
  EXPECT_DOUBLE_EQ(lemma1_constant(4, 2.0), 0.25);
  for (std::size_t n : {1U, 2U, 7U, 100U}) EXPECT_EQ(lemma1_constant(n, 1.0), 1.0);
  EXPECT_THROW(lemma1_constant(0, 0.5), Error);
  EXPECT_THROW(lemma1_constant(3, 0.0), Error);
}

TEST(PowerSumConstant, InequalityOnRandomVectors) {
  Rng rng(101);
  for (double p : {0.3, 0.75, 1.0, 2.0, 3.0}) {
    for (int trial = 0; trial < 1000; ++trial) {
      const std::size_t n = testing::uniform_index(rng, 1, 10);
      const auto y = testing::random_state(rng, n, 0.0, 10.0);
      double lhs = 0.0, total = 0.0;
      for (double v : y) {
        lhs += std::pow(v, p);
        total += v;
      }
      const double rhs = lemma1_constant(n, p) * std::pow(total, p);
      EXPECT_GE(lhs, rhs - 1e-9 * std::max(1.0, rhs));
    }
  }
}

TEST(V1, Examples) {
  EXPECT_EQ(v1(testing::unit_path(4), std::vector<double>(4, 3.0)), 0.0);
  EXPECT_DOUBLE_EQ(v1(Topology(2, {{0, 1, 1.0}}), std::vector<double>{0, 1}), 0.5);
  // First graph matching the reported V1(0) and λ2(L_B).
  const Topology g1(6, {{0, 1, 2}, {0, 4, 2}, {0, 5, 2}, {1, 2, 2}, {1, 4, 2}, {2, 3, 2}});
  EXPECT_DOUBLE_EQ(v1(g1, kX0), 338.0);
}

TEST(V1, HalfLaplacianQuadraticForm) {
  Rng rng(102);
  for (int trial = 0; trial < 500; ++trial) {
    const auto t = testing::random_graph(rng, testing::uniform_index(rng, 1, 7));
    const auto x = testing::random_state(rng, t.size());
    const double value = v1(t, x);
    EXPECT_GE(value, 0.0);
    EXPECT_NEAR(value, 0.5 * laplacian(t).quadratic_form(x), 1e-10 * std::max(1.0, value));
  }
}

TEST(Disagreement, Examples) {
  const auto d = disagreement(kX0);
  EXPECT_NEAR(d.kappa, 2.8333, 5e-5);
  EXPECT_NEAR(d.kappa, 17.0 / 6.0, 1e-15);

  const auto c = disagreement(std::vector<double>(3, 4.25));
  EXPECT_EQ(c.kappa, 4.25);
  EXPECT_EQ(c.delta, (std::vector<double>{0, 0, 0}));

  const auto pm = disagreement(std::vector<double>{1, -1});
  EXPECT_EQ(pm.kappa, 0.0);
  EXPECT_EQ(pm.delta, (std::vector<double>{1, -1}));
}

TEST(Disagreement, ReconstructionAndZeroSum) {
  Rng rng(103);
  for (int trial = 0; trial < 500; ++trial) {
    const auto x = testing::random_state(rng, testing::uniform_index(rng, 1, 9), -1e3, 1e3);
    const auto d = disagreement(x);
    double sum = 0.0, abs_sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      EXPECT_NEAR(d.kappa + d.delta[i], x[i], 1e-12 * std::max(1.0, std::abs(x[i])));
      sum += d.delta[i];
      abs_sum += std::abs(d.delta[i]);
    }
    EXPECT_LE(std::abs(sum), 1e-12 * abs_sum + 1e-300);
  }
}

TEST(V2, Examples) {
  EXPECT_NEAR(v2(kX0), 78.4167, 5e-5);
  EXPECT_EQ(v2(std::vector<double>(5, -2.0)), 0.0);
  EXPECT_DOUBLE_EQ(v2(std::vector<double>{1, -1}), 1.0);
}

TEST(T1Bound, Examples) {
  const double lambda2_A = 1.0409 / std::cbrt(2.0);
  EXPECT_NEAR(lambda2_A, 0.826163, 1e-6);
  EXPECT_NEAR(t1_bound(338.0, lambda2_A, 0.5), 11.7681, 1e-3);
  EXPECT_EQ(t1_bound(0.0, lambda2_A, 0.5), 0.0);
  for (double alpha : {0.2, 0.5, 0.8})
    EXPECT_NEAR(t1_bound(20.0, 1.3, alpha) / t1_bound(10.0, 1.3, alpha),
                std::pow(2.0, (1.0 - alpha) / 2.0), 1e-12);
}

TEST(T1Bound, Errors) {
  auto kind_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::InvalidArgument;
  };
  EXPECT_EQ(kind_of([] { t1_bound(1.0, 0.0, 0.5); }), ErrorKind::DisconnectedTopology);
  EXPECT_EQ(kind_of([] { t1_bound(1.0, 1.0, 1.0); }), ErrorKind::AlphaOutOfRange);
  EXPECT_EQ(kind_of([] { t2_bound(1.0, -1.0, 0.5); }), ErrorKind::DisconnectedTopology);
  EXPECT_EQ(kind_of([] { t3_bound(1.0, 1.0, 0.0); }), ErrorKind::AlphaOutOfRange);
  EXPECT_EQ(kind_of([] { t1_limit_alpha0(1.0, 0.0); }), ErrorKind::DisconnectedTopology);
}

TEST(T1LimitAlpha0, Examples) {
  const double lambda2_A = 1.0409 / std::cbrt(2.0);
  EXPECT_NEAR(t1_limit_alpha0(338.0, lambda2_A), std::sqrt(676.0 / lambda2_A), 1e-12);
  EXPECT_NEAR(t1_limit_alpha0(338.0, lambda2_A), 28.6049, 1e-4);
  EXPECT_EQ(t1_limit_alpha0(0.0, 1.0), 0.0);
  EXPECT_NEAR(t1_limit_alpha0(0.5, 2.0), std::sqrt(0.5), 1e-15);
  EXPECT_GE(t1_limit_alpha0(0.5, 2.0), 0.5);
}

TEST(T2Bound, Examples) {
  // Exact value with the rounded connectivity is 8.16752; see the acceptance suite.
  EXPECT_NEAR(t2_bound(78.4167, 1.0409, 0.5), 8.167523, 1e-6);
  EXPECT_EQ(t2_bound(0.0, 1.0409, 0.5), 0.0);
  EXPECT_NEAR(t2_bound(0.5, 2.0, 0.5), std::sqrt(2.0), 1e-12);
}

TEST(T3Bound, Examples) {
  EXPECT_NEAR(t3_bound(78.4167, 0.675170, 0.5), 11.3000, 5e-4);
  EXPECT_EQ(t3_bound(0.0, 0.5, 0.5), 0.0);
  Rng rng(104);
  for (int trial = 0; trial < 200; ++trial) {
    const double v = testing::uniform(rng, 0.0, 500.0);
    const double l = testing::uniform(rng, 0.01, 10.0);
    const double a = testing::uniform(rng, 0.01, 0.99);
    EXPECT_EQ(t3_bound(v, l, a), t2_bound(v, l, a));
  }
}

TEST(Bounds, LimitBehaviourInAlpha) {
  const double v = 338.0, lambda = 0.8;
  const double a9 = t1_bound(v, lambda, 0.9), a99 = t1_bound(v, lambda, 0.99),
               a999 = t1_bound(v, lambda, 0.999);
  EXPECT_LT(a9, a99);
  EXPECT_LT(a99, a999);
  const double limit = t1_limit_alpha0(v, lambda);
  EXPECT_LE(std::abs(t1_bound(v, lambda, 1e-4) - limit), 1e-2 * limit);
}

TEST(Bounds, AlphaZeroLimitDominatesHalfSpread) {
  Rng rng(105);
  for (int trial = 0; trial < 500; ++trial) {
    const auto t = testing::random_connected_graph(rng, testing::uniform_index(rng, 2, 7));
    const auto x = testing::random_state(rng, t.size());
    const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    EXPECT_GE(t1_limit_alpha0(v1(t, x), algebraic_connectivity(t)), (*hi - *lo) / 2.0 - 1e-12);
  }
}

TEST(Envelope, Examples) {
  EXPECT_EQ(envelope(7.5, 1.3, 0.4, 0.0), 7.5);
  EXPECT_NEAR(envelope(1.0, 1.0, 0.5, 1.0), 0.31640625, 1e-15);
  const double lambda = 0.9, alpha = 0.5, v0 = 42.0;
  const double t1 = t1_bound(v0, lambda, alpha);
  EXPECT_NEAR(envelope(v0, k1_constant(lambda, alpha), alpha, t1), 0.0, 1e-12);
  EXPECT_NEAR(envelope_zero_time(v0, k1_constant(lambda, alpha), alpha), t1, 1e-12 * t1);
  EXPECT_NEAR(envelope_zero_time(v0, k2_constant(lambda, alpha), alpha), t2_bound(v0, lambda, alpha),
              1e-12 * t1);
}

TEST(Envelope, NonincreasingAndClampedAtZero) {
  Rng rng(106);
  for (int trial = 0; trial < 200; ++trial) {
    const double v0 = testing::uniform(rng, 0.1, 100.0);
    const double k = testing::uniform(rng, 0.1, 5.0);
    const double a = testing::uniform(rng, 0.05, 0.95);
    const double zero = envelope_zero_time(v0, k, a);
    double prev = envelope(v0, k, a, 0.0);
    for (int s = 1; s <= 50; ++s) {
      const double t = 1.5 * zero * s / 50.0;
      const double e = envelope(v0, k, a, t);
      EXPECT_LE(e, prev);
      if (t >= zero) {
        EXPECT_EQ(e, 0.0);
      }
      prev = e;
    }
  }
}

}  // namespace
}  // namespace ftc
