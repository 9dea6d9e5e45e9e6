#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "dsfm/component.hpp"
#include "dsfm/core.hpp"

namespace dsfm::fixtures {

inline std::vector<Element> pick_subset(int n, int size, std::mt19937_64& rng) {
  std::vector<Element> all(n);
  std::iota(all.begin(), all.end(), 0);
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(size);
  std::sort(all.begin(), all.end());
  return all;
}

// Table over k local elements built as a nonnegative combination of
// truncated cardinalities, edge cuts and a free modular part.
inline std::vector<double> submodular_table(int k, std::mt19937_64& rng, bool integer) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto coef = [&](double lo, double hi) {
    const double v = lo + (hi - lo) * unit(rng);
    return integer ? std::round(v) : v;
  };
  const std::size_t size = std::size_t{1} << k;
  std::vector<double> t(size, 0.0);
  const int terms = 1 + static_cast<int>(rng() % 3);
  for (int j = 0; j < terms; ++j) {
    std::uint64_t a = rng() & (size - 1);
    if (a == 0) a = size - 1;
    const int cap = 1 + static_cast<int>(rng() % std::max(1, std::popcount(a)));
    const double c = coef(0.0, 3.0);
    for (std::size_t s = 0; s < size; ++s) {
      t[s] += c * std::min(std::popcount(s & a), cap);
    }
  }
  for (int e = 0; e < k; ++e) {
    const int u = static_cast<int>(rng() % k);
    const int v = static_cast<int>(rng() % k);
    if (u == v) continue;
    const double c = coef(0.0, 2.0);
    for (std::size_t s = 0; s < size; ++s) {
      if (((s >> u) & 1U) != ((s >> v) & 1U)) t[s] += c;
    }
  }
  for (int i = 0; i < k; ++i) {
    const double c = coef(-3.0, 3.0);
    for (std::size_t s = 0; s < size; ++s) {
      if ((s >> i) & 1U) t[s] += c;
    }
  }
  return t;
}

inline SubmodularComponent random_component(Family fam, int n, int max_size,
                                            std::mt19937_64& rng, bool integer = false) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto weight = [&] { return integer ? 1.0 + static_cast<double>(rng() % 4) : 0.25 + 2.0 * unit(rng); };
  const int top = std::min(n, max_size);
  switch (fam) {
    case Family::edge_cut: {
      const auto s = pick_subset(n, 2, rng);
      return SubmodularComponent::edge(s[0], s[1], weight());
    }
    case Family::hyperedge_cut: {
      const int m = 2 + static_cast<int>(rng() % (top - 1));
      return SubmodularComponent::hyperedge(pick_subset(n, m, rng), weight());
    }
    case Family::concave_cardinality: {
      const int m = 1 + static_cast<int>(rng() % top);
      return SubmodularComponent::concave_cardinality(pick_subset(n, m, rng), weight());
    }
    case Family::table: {
      const int m = 1 + static_cast<int>(rng() % top);
      auto s = pick_subset(n, m, rng);
      return SubmodularComponent::table(std::move(s), submodular_table(m, rng, integer));
    }
    case Family::edge_set: {
      const int m = 2 * std::max(1, static_cast<int>(rng() % (top / 2 + 1)));
      auto s = pick_subset(n, std::min(m, top - top % 2), rng);
      std::shuffle(s.begin(), s.end(), rng);
      std::vector<WeightedEdge> es;
      for (std::size_t i = 0; i + 1 < s.size(); i += 2) es.push_back({s[i], s[i + 1], weight()});
      return SubmodularComponent::edge_set(std::move(es));
    }
  }
  return SubmodularComponent::edge(0, 1);
}

inline const std::vector<Family>& all_families() {
  static const std::vector<Family> f = {Family::edge_cut, Family::hyperedge_cut,
                                        Family::concave_cardinality, Family::table,
                                        Family::edge_set};
  return f;
}

// Convex combination of a few greedy vertices: a point of the base polytope.
inline std::vector<double> random_base_point(const SubmodularComponent& f,
                                             std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t m = f.size();
  std::vector<double> y(m, 0.0);
  const int count = 1 + static_cast<int>(rng() % 4);
  std::vector<double> lam(count);
  double total = 0.0;
  for (auto& l : lam) total += (l = unit(rng) + 1e-3);
  std::vector<double> x(m);
  for (int j = 0; j < count; ++j) {
    for (auto& v : x) v = gauss(rng);
    const auto v = f.greedy_vertex(x);
    for (std::size_t i = 0; i < m; ++i) y[i] += lam[j] / total * v[i];
  }
  return y;
}

inline BlockVector random_state(const Decomposition& d, std::mt19937_64& rng) {
  BlockVector y(d);
  for (std::size_t r = 0; r < d.num_components(); ++r) {
    const auto p = random_base_point(d.scaled(r), rng);
    std::copy(p.begin(), p.end(), y.block(r).begin());
  }
  return y;
}

// Brute-force minimum of τΣF_r(S) − x0(S) built from component evaluations.
inline double brute_force_min(const Decomposition& d) {
  const int n = d.n();
  double best = 0.0;
  std::vector<Element> set;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    set.clear();
    for (int i = 0; i < n; ++i) {
      if ((mask >> i) & 1U) set.push_back(i);
    }
    double v = 0.0;
    for (const auto& f : d.components()) v += d.tau() * f.evaluate(set);
    for (Element e : set) v -= d.x0()[e];
    best = std::min(best, v);
  }
  return best;
}

}  // namespace dsfm::fixtures
