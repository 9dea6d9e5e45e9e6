#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dsfm/core.hpp"
#include "dsfm/generators.hpp"
#include "support.hpp"

using namespace dsfm;

namespace {

Decomposition path3() {
  return Decomposition(3, {SubmodularComponent::edge(0, 1), SubmodularComponent::edge(1, 2)});
}

}  // namespace

TEST(Incidence, CountsPerElement) {
  const auto p = compute_incidence(path3());
  EXPECT_EQ(p.mu, (std::vector<int>{1, 2, 1}));
  EXPECT_EQ(p.mu_l1, 4);
  EXPECT_EQ(p.element_to_components[1], (std::vector<int>{0, 1}));
  EXPECT_TRUE(p.isolated.empty());
}

TEST(Incidence, SingleFullComponent) {
  Decomposition d(5, {SubmodularComponent::concave_cardinality({0, 1, 2, 3, 4})});
  const auto p = compute_incidence(d);
  EXPECT_EQ(p.mu, std::vector<int>(5, 1));
  EXPECT_EQ(p.mu_l1, 5);
}

TEST(Incidence, Example31) {
  const auto p = compute_incidence(gen_example31(3).first);
  EXPECT_EQ(p.mu, (std::vector<int>{1, 2, 2, 2, 2, 2, 1}));
  EXPECT_EQ(p.mu_l1, 12);
}

TEST(Incidence, IsolatedElementsReported) {
  Decomposition d(4, {SubmodularComponent::edge(0, 2)});
  const auto p = compute_incidence(d);
  EXPECT_EQ(p.isolated, (std::vector<Element>{1, 3}));
  EXPECT_EQ(p.mu[1], 0);
}

TEST(Incidence, NormEqualsTotalSupport) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const auto d = gen_random_mixed(8, 6, 40 + t);
    const auto p = compute_incidence(d);
    long long total = 0;
    for (std::size_t r = 0; r < d.num_components(); ++r) total += static_cast<long long>(d.support(r).size());
    EXPECT_EQ(p.mu_l1, total);
    for (int i = 0; i < d.n(); ++i) {
      EXPECT_EQ(p.mu[i], static_cast<int>(p.element_to_components[i].size()));
    }
  }
}

TEST(Incidence, DetectAgreesWithDeclaredSupports) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    // Concave-cardinality components depend on every element of their support.
    const int n = 9;
    const auto f = fixtures::random_component(Family::concave_cardinality, n, 6, rng);
    Decomposition d(n, {f});
    const auto p = compute_incidence(d);
    for (int i = 0; i < n; ++i) {
      if (f.size() >= 2) EXPECT_EQ(detect_incidence(f, i, n), p.mu[i] == 1) << i;
    }
  }
}

TEST(Decomposition, RejectsBadInput) {
  EXPECT_THROW(Decomposition(0, {SubmodularComponent::edge(0, 1)}), std::invalid_argument);
  EXPECT_THROW(Decomposition(3, {}), std::invalid_argument);
  EXPECT_THROW(Decomposition(1, {SubmodularComponent::edge(0, 1)}), std::invalid_argument);
  EXPECT_THROW(Decomposition(2, {SubmodularComponent::edge(0, 1)}, {1.0}), std::invalid_argument);
  EXPECT_THROW(Decomposition(2, {SubmodularComponent::edge(0, 1)}, {}, 0.0), std::invalid_argument);
}

TEST(Decomposition, TauScalesComponents) {
  Decomposition d(2, {SubmodularComponent::edge(0, 1, 3.0)}, {}, 0.5);
  const std::vector<Element> s{0};
  EXPECT_DOUBLE_EQ(d.scaled(0).evaluate(s), 1.5);
  EXPECT_DOUBLE_EQ(d.components()[0].evaluate(s), 3.0);
}

TEST(ApplyA, ZeroAndSingleBlock) {
  const auto d = path3();
  BlockVector y(d);
  EXPECT_EQ(apply_A(y, d), std::vector<double>(3, 0.0));
  y.block(1)[0] = 2.0;
  y.block(1)[1] = -2.0;
  EXPECT_EQ(apply_A(y, d), (std::vector<double>{0.0, 2.0, -2.0}));
}

TEST(ApplyA, Example31Staircase) {
  auto [d, y] = gen_example31(3);
  const auto ay = apply_A(y, d);
  const std::vector<double> expect = {1.0 / 3, 1.0 / 3, 1.0 / 3, 0.0, -1.0 / 3, -1.0 / 3, -1.0 / 3};
  double sq = 0.0;
  for (int i = 0; i < 7; ++i) {
    EXPECT_NEAR(ay[i], expect[i], 1e-15);
    sq += ay[i] * ay[i];
  }
  EXPECT_NEAR(0.5 * sq, 1.0 / 3.0, 1e-15);
}

TEST(ApplyA, Linear) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g(0.0, 1.0);
  const auto d = gen_random_mixed(10, 12, 9);
  for (int t = 0; t < 20; ++t) {
    BlockVector y(d);
    BlockVector z(d);
    BlockVector c(d);
    const double a = g(rng);
    const double b = g(rng);
    for (std::size_t i = 0; i < y.data().size(); ++i) {
      y.data()[i] = g(rng);
      z.data()[i] = g(rng);
      c.data()[i] = a * y.data()[i] + b * z.data()[i];
    }
    const auto ay = apply_A(y, d);
    const auto az = apply_A(z, d);
    const auto ac = apply_A(c, d);
    for (int i = 0; i < d.n(); ++i) {
      const double lin = a * ay[i] + b * az[i];
      EXPECT_NEAR(ac[i], lin, 1e-12 * (1.0 + std::abs(lin)));
    }
  }
}

TEST(Norms, Skewed) {
  const std::vector<double> ones{1.0, 1.0};
  EXPECT_DOUBLE_EQ(skewed_norm(std::vector<double>{1.0, 1.0}, ones), std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(skewed_norm(std::vector<double>{1.0, 2.0}, std::vector<double>{4.0, 1.0}),
                   2.0 * std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(skewed_norm(std::vector<double>{0.0, 0.0}, WeightVector({3.0, 7.0})), 0.0);
  EXPECT_THROW(skewed_norm(std::vector<double>{1.0}, ones), std::invalid_argument);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> z(17);
  double sq = 0.0;
  for (auto& v : z) {
    v = g(rng);
    sq += v * v;
  }
  EXPECT_EQ(skewed_norm(z, WeightVector::ones(17)), std::sqrt(sq));
}

TEST(Norms, WeightVectorRejectsNonPositive) {
  EXPECT_THROW(WeightVector({1.0, 0.0}), std::invalid_argument);
  EXPECT_THROW(WeightVector({-1.0}), std::invalid_argument);
}

TEST(Norms, ThetaOneInf) {
  const auto d = path3();
  BlockVector theta(d);
  theta.block(0)[0] = 1;
  theta.block(0)[1] = 5;
  theta.block(1)[0] = 2;
  theta.block(1)[1] = 1;
  EXPECT_DOUBLE_EQ(theta_one_inf(theta, d), 7.0);
  EXPECT_DOUBLE_EQ(theta_one_inf(BlockVector(d, 1.0), d), 3.0);
}

TEST(Norms, InducedVectorNormIsL1) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.1, 5.0);
  for (int t = 0; t < 10; ++t) {
    const auto d = gen_karate();
    std::vector<double> w(d.n());
    double l1 = 0.0;
    for (auto& v : w) l1 += (v = u(rng));
    EXPECT_NEAR(theta_one_inf(restrict_to_blocks(d, w), d), l1, 1e-12 * l1);
  }
  const auto d = gen_example31(4).first;
  const auto p = compute_incidence(d);
  std::vector<double> mu(p.mu.begin(), p.mu.end());
  EXPECT_DOUBLE_EQ(theta_one_inf(restrict_to_blocks(d, mu), d), static_cast<double>(p.mu_l1));
}

TEST(Norms, BlockSkewed) {
  const auto d = path3();
  BlockVector y(d, 1.0);
  BlockVector theta(d, 2.0);
  EXPECT_DOUBLE_EQ(block_skewed_norm(y, theta), std::sqrt(8.0));
}

TEST(Discrete, ObjectiveMatchesDefinition) {
  Decomposition d(3, {SubmodularComponent::edge(0, 1), SubmodularComponent::edge(1, 2)},
                  {1.0, 0.0, -1.0}, 0.5);
  EXPECT_DOUBLE_EQ(discrete_objective(d, std::vector<Element>{0}), 0.5 - 1.0);
  EXPECT_DOUBLE_EQ(discrete_objective(d, std::vector<Element>{0, 1, 2}), 0.0);
  const std::vector<char> member{1, 1, 0};
  EXPECT_DOUBLE_EQ(discrete_objective(d, member), 0.5 - 1.0);
}

TEST(Exhaustive, Trivial) {
  Decomposition d(2, {SubmodularComponent::edge(0, 1)});
  const auto s = exhaustive_dsfm(d);
  EXPECT_EQ(s.value, 0.0);
  EXPECT_TRUE(s.set.empty());
}

TEST(Exhaustive, Example31PrefersEmpty) {
  for (int n = 1; n <= 5; ++n) {
    const auto s = exhaustive_dsfm(gen_example31(n).first);
    EXPECT_EQ(s.value, 0.0);
    EXPECT_TRUE(s.set.empty());
  }
}

TEST(Exhaustive, MatchesBruteForce) {
  for (int t = 0; t < 30; ++t) {
    const auto d = gen_random_mixed(3 + t % 8, 2 + t % 7, 300 + t);
    const auto s = exhaustive_dsfm(d);
    EXPECT_EQ(s.value, fixtures::brute_force_min(d));
    EXPECT_EQ(discrete_objective(d, s.set), s.value);
  }
}

TEST(Exhaustive, LexicographicTieBreak) {
  // Cut between {0} and {1}: sets {0} and {1} both score -1.
  Decomposition d(2, {SubmodularComponent::edge(0, 1, 1.0)}, {2.0, 2.0});
  Decomposition e(2, {SubmodularComponent::edge(0, 1, 5.0)}, {1.0, 1.0});
  EXPECT_EQ(exhaustive_dsfm(d).set, (std::vector<Element>{0, 1}));
  const auto s = exhaustive_dsfm(e);
  EXPECT_EQ(s.value, -2.0);
  EXPECT_EQ(s.set, (std::vector<Element>{0, 1}));
  Decomposition f(3, {SubmodularComponent::edge(0, 1, 1.0), SubmodularComponent::edge(1, 2, 1.0)},
                  {1.0, -5.0, 0.0});
  // ∅ and {0} both score 0; ∅ sorts first.
  EXPECT_TRUE(exhaustive_dsfm(f).set.empty());
}

TEST(Exhaustive, RejectsLargeN) {
  std::vector<SubmodularComponent> comps;
  for (int i = 0; i + 1 < 21; ++i) comps.push_back(SubmodularComponent::edge(i, i + 1));
  EXPECT_THROW(exhaustive_dsfm(Decomposition(21, comps)), std::invalid_argument);
}

TEST(BlockVector, Layout) {
  const auto d = path3();
  BlockVector y(d, 0.5);
  EXPECT_EQ(y.num_blocks(), 2u);
  EXPECT_EQ(y.block(1).size(), 2u);
  EXPECT_TRUE(y.conforms(d));
  EXPECT_FALSE(BlockVector(gen_example31(2).first).conforms(d));
}
