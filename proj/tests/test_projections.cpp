#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dsfm/core.hpp"
#include "dsfm/projection.hpp"
#include "support.hpp"

using namespace dsfm;

namespace {

std::vector<double> ones(std::size_t m) { return std::vector<double>(m, 1.0); }

double wdist(std::span<const double> a, std::span<const double> b, std::span<const double> w) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += w[i] * (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

struct Case {
  SubmodularComponent f;
  std::vector<double> z;
  std::vector<double> w;
};

Case random_case(Family fam, std::mt19937_64& rng, bool weighted) {
  std::normal_distribution<double> g(0.0, 2.0);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  auto f = fixtures::random_component(fam, 8, 8, rng);
  std::vector<double> z(f.size());
  std::vector<double> w(f.size(), 1.0);
  for (auto& v : z) v = g(rng);
  if (weighted) {
    for (auto& v : w) v = std::exp(u(rng));
  }
  return {std::move(f), std::move(z), std::move(w)};
}

}  // namespace

TEST(ProjectEdge, ClosedFormExamples) {
  const auto f = SubmodularComponent::edge(0, 1);
  const auto w = ones(2);
  std::vector<double> z{2.0, 0.0};
  EXPECT_EQ(project_edge({&f, z, w}), (std::vector<double>{1.0, -1.0}));
  std::vector<double> zero{0.0, 0.0};
  std::vector<double> w2{2.0, 1.0};
  EXPECT_EQ(project_edge({&f, zero, w2}), (std::vector<double>{0.0, 0.0}));
  std::vector<double> z3{3.0, 0.0};
  EXPECT_EQ(project_edge({&f, z3, w2}), (std::vector<double>{1.0, -1.0}));
  // Interior: t = (2·0.2 − 1·0.1)/3 = 0.1
  std::vector<double> z4{0.2, 0.1};
  const auto y = project_edge({&f, z4, w2});
  EXPECT_NEAR(y[0], 0.1, 1e-15);
  EXPECT_NEAR(y[1], -0.1, 1e-15);
}

TEST(ProjectEdge, RejectsOtherFamilies) {
  const auto f = SubmodularComponent::concave_cardinality({0, 1});
  std::vector<double> z{1.0, 0.0};
  EXPECT_THROW(project_edge({&f, z, ones(2)}), std::invalid_argument);
}

TEST(ProjectEdge, EdgeSetIsProductOfEdges) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 100; ++t) {
    auto c = random_case(Family::edge_set, rng, true);
    const auto y = project_edge({&c.f, c.z, c.w, 1e-12});
    const auto sup = c.f.support();
    for (const auto& e : c.f.local_edges()) {
      const auto single = SubmodularComponent::edge(sup[e.a], sup[e.b], e.weight);
      std::vector<double> zz{c.z[e.a], c.z[e.b]};
      std::vector<double> ww{c.w[e.a], c.w[e.b]};
      const auto ye = project_edge({&single, zz, ww});
      EXPECT_EQ(y[e.a], ye[0]);
      EXPECT_EQ(y[e.b], ye[1]);
    }
    EXPECT_TRUE(kkt_check(c.f, wolfe_min_norm({&c.f, c.z, c.w, 1e-12}), c.z, c.w, 1e-9));
  }
}

TEST(ProjectDc, Examples) {
  const auto e = SubmodularComponent::edge(0, 1);
  std::vector<double> z{2.0, 0.0};
  const auto y = project_dc({&e, z, ones(2)});
  EXPECT_NEAR(y[0], 1.0, 1e-8);
  EXPECT_NEAR(y[1], -1.0, 1e-8);
  const auto c = SubmodularComponent::concave_cardinality({0, 1, 2});
  std::vector<double> zero(3, 0.0);
  const auto yc = project_dc({&c, zero, ones(3)});
  for (double v : yc) EXPECT_NEAR(v, 0.0, 1e-12);
}

TEST(Wolfe, Examples) {
  const auto e = SubmodularComponent::edge(0, 1);
  std::vector<double> z{2.0, 0.0};
  const auto y = wolfe_min_norm({&e, z, ones(2)});
  EXPECT_NEAR(y[0], 1.0, 1e-8);
  EXPECT_NEAR(y[1], -1.0, 1e-8);
}

TEST(Wolfe, MemberPointIsFixed) {
  std::mt19937_64 rng(2);
  for (Family fam : fixtures::all_families()) {
    for (int t = 0; t < 40; ++t) {
      auto c = random_case(fam, rng, t % 2);
      const auto inside = fixtures::random_base_point(c.f, rng);
      const auto y = wolfe_min_norm({&c.f, inside, c.w, 1e-10});
      const auto yd = project_dc({&c.f, inside, c.w, 1e-10});
      for (std::size_t i = 0; i < y.size(); ++i) {
        EXPECT_NEAR(y[i], inside[i], 1e-8);
        EXPECT_NEAR(yd[i], inside[i], 1e-8);
      }
    }
  }
}

TEST(Wolfe, ConcaveCardinalityKkt) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g(0.0, 3.0);
  std::uniform_real_distribution<double> u(0.2, 4.0);
  const auto f = SubmodularComponent::concave_cardinality({0, 1, 2, 3, 4});
  for (int t = 0; t < 50; ++t) {
    std::vector<double> z(5);
    std::vector<double> w(5);
    for (auto& v : z) v = g(rng);
    for (auto& v : w) v = u(rng);
    EXPECT_TRUE(kkt_check(f, wolfe_min_norm({&f, z, w, 1e-12}), z, w, 1e-9));
  }
}

TEST(Projection, BackendsAgreeAndPassKkt) {
  std::mt19937_64 rng(4);
  for (Family fam : fixtures::all_families()) {
    for (int t = 0; t < 200; ++t) {
      auto c = random_case(fam, rng, t % 2);
      const ProjectionRequest req{&c.f, c.z, c.w, 1e-12};
      const auto a = project_dc(req);
      const auto b = wolfe_min_norm(req);
      const auto d = project(req);
      EXPECT_TRUE(kkt_check(c.f, a, c.z, c.w, 1e-9));
      EXPECT_TRUE(kkt_check(c.f, b, c.z, c.w, 1e-9));
      EXPECT_TRUE(kkt_check(c.f, d, c.z, c.w, 1e-9));
      for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_NEAR(a[i], b[i], 1e-6);
        EXPECT_NEAR(a[i], d[i], 1e-6);
      }
      EXPECT_LE(base_polytope_violation(c.f, a), 1e-8);
    }
  }
}

TEST(Projection, Idempotent) {
  std::mt19937_64 rng(5);
  for (Family fam : fixtures::all_families()) {
    for (int t = 0; t < 50; ++t) {
      auto c = random_case(fam, rng, true);
      const double tol = 1e-10;
      const auto y = project({&c.f, c.z, c.w, tol});
      const auto y2 = project({&c.f, y, c.w, tol});
      EXPECT_LE(wdist(y, y2, c.w), 2 * tol + 1e-12);
    }
  }
}

TEST(Projection, NonExpansive) {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> g(0.0, 2.0);
  for (Family fam : fixtures::all_families()) {
    for (int t = 0; t < 50; ++t) {
      auto c = random_case(fam, rng, true);
      std::vector<double> z2(c.z.size());
      for (auto& v : z2) v = g(rng);
      const double tol = 1e-10;
      const auto a = project({&c.f, c.z, c.w, tol});
      const auto b = project({&c.f, z2, c.w, tol});
      EXPECT_LE(wdist(a, b, c.w), wdist(c.z, z2, c.w) + 4 * tol);
    }
  }
}

TEST(Kkt, RejectsWrongVertex) {
  const auto f = SubmodularComponent::concave_cardinality({0, 1, 2});
  const auto va = f.greedy_vertex(std::vector<double>{3, 2, 1});
  const auto vb = f.greedy_vertex(std::vector<double>{1, 2, 3});
  std::vector<double> z(3);
  for (int i = 0; i < 3; ++i) z[i] = 10.0 * va[i];
  EXPECT_FALSE(kkt_check(f, vb, z, ones(3), 1e-9));
  EXPECT_TRUE(kkt_check(f, va, va, ones(3), 1e-9));
}

TEST(Kkt, RejectsInfeasible) {
  const auto f = SubmodularComponent::edge(0, 1);
  std::vector<double> y{2.0, -2.0};
  EXPECT_FALSE(kkt_check(f, y, y, ones(2), 1e-9));
  std::vector<double> big(9, 0.0);
  std::vector<Element> s(9);
  for (int i = 0; i < 9; ++i) s[i] = i;
  const auto g = SubmodularComponent::concave_cardinality(s);
  EXPECT_THROW(kkt_check(g, big, big, ones(9), 1e-9), std::invalid_argument);
}

TEST(Projection, ValidatesRequests) {
  const auto f = SubmodularComponent::edge(0, 1);
  std::vector<double> z{1.0, 0.0};
  std::vector<double> bad_w{1.0, 0.0};
  std::vector<double> wide_w{1.0, 1e13};
  std::vector<double> nan_z{NAN, 0.0};
  EXPECT_THROW(project({&f, z, bad_w}), std::invalid_argument);
  EXPECT_THROW(project({&f, z, wide_w}), std::invalid_argument);
  EXPECT_THROW(project({&f, nan_z, ones(2)}), std::invalid_argument);
  EXPECT_THROW(project({&f, z, ones(2), 0.0}), std::invalid_argument);
  EXPECT_THROW(project({&f, std::vector<double>{1.0}, ones(2)}), std::invalid_argument);
  EXPECT_THROW(project({nullptr, z, ones(2)}), std::invalid_argument);
}

TEST(Projection, LargeSupports) {
  // Beyond the KKT verifier: cross-check backends on bigger regions and hyperedges.
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g(0.0, 3.0);
  for (int t = 0; t < 20; ++t) {
    const int m = 20 + t;
    std::vector<Element> s(m);
    for (int i = 0; i < m; ++i) s[i] = 2 * i;
    const auto c = SubmodularComponent::concave_cardinality(s, 0.5 + t);
    const auto h = SubmodularComponent::hyperedge(s, 1.0 + t);
    std::vector<double> z(m);
    std::vector<double> w(m);
    for (auto& v : z) v = g(rng);
    for (auto& v : w) v = 1.0 + (rng() % 5);
    for (const auto* f : {&c, &h}) {
      const auto a = project_dc({f, z, w, 1e-12});
      const auto b = wolfe_min_norm({f, z, w, 1e-12});
      for (int i = 0; i < m; ++i) EXPECT_NEAR(a[i], b[i], 1e-6);
      EXPECT_LE(base_polytope_violation(*f, a), 1e-8);
    }
  }
}
