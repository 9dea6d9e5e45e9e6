#include "dsfm/gaps.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dsfm {

std::vector<double> primal_from_dual(std::span<const double> ay,
                                     const Decomposition& d,
                                     std::span<const double> w) {
  const auto n = static_cast<std::size_t>(d.n());
  if (ay.size() != n || (!w.empty() && w.size() != n)) {
    throw std::invalid_argument("primal_from_dual: dimension mismatch");
  }
  const auto x0 = d.x0();
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = x0[i] - ay[i];
    if (!w.empty()) x[i] /= w[i];
  }
  return x;
}

std::vector<double> primal_from_dual(const BlockVector& y, const Decomposition& d,
                                     std::span<const double> w) {
  return primal_from_dual(apply_A(y, d), d, w);
}

double smooth_gap_at(const BlockVector& y, const Decomposition& d,
                     std::span<const double> x) {
  if (x.size() != static_cast<std::size_t>(d.n()) || !y.conforms(d)) {
    throw std::invalid_argument("smooth_gap: dimension mismatch");
  }
  std::vector<double> local;
  double total = 0.0;
  for (std::size_t r = 0; r < d.num_components(); ++r) {
    const auto s = d.support(r);
    const auto b = y.block(r);
    local.resize(s.size());
    double inner = 0.0;
    for (std::size_t j = 0; j < s.size(); ++j) {
      local[j] = x[s[j]];
      inner += b[j] * local[j];
    }
    total += d.scaled(r).lovasz(local) - inner;
  }
  return total;
}

double smooth_gap(const BlockVector& y, const Decomposition& d,
                  std::span<const double> w) {
  const auto x = primal_from_dual(y, d, w);
  return smooth_gap_at(y, d, x);
}

LevelSetResult discrete_gap_at(std::span<const double> ay,
                               const Decomposition& d,
                               std::span<const double> x) {
  const auto n = static_cast<std::size_t>(d.n());
  if (ay.size() != n || x.size() != n) {
    throw std::invalid_argument("discrete_gap: dimension mismatch");
  }
  const auto x0 = d.x0();
  const std::size_t r_count = d.num_components();

  std::vector<std::vector<std::pair<int, int>>> touch(n);  // (r, local j)
  std::vector<std::vector<char>> local(r_count);
  std::vector<double> cur(r_count, 0.0);
  for (std::size_t r = 0; r < r_count; ++r) {
    const auto s = d.support(r);
    local[r].assign(s.size(), 0);
    for (std::size_t j = 0; j < s.size(); ++j) {
      touch[s[j]].emplace_back(static_cast<int>(r), static_cast<int>(j));
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return x[a] > x[b]; });

  std::vector<char> member(n, 0);
  std::vector<char> dirty(r_count, 0);
  std::vector<int> dirty_list;

  auto objective = [&]() {
    double total = 0.0;
    for (std::size_t r = 0; r < r_count; ++r) total += cur[r];
    for (std::size_t i = 0; i < n; ++i) {
      if (member[i]) total -= x0[i];
    }
    return total;
  };

  const double empty_value = 0.0;
  double best_value = empty_value;
  std::size_t best_count = 0;
  double best_lambda = n == 0 ? 0.0 : x[order[0]];
  bool have_positive = false;
  double positive_value = 0.0;
  std::size_t positive_count = 0;
  double positive_lambda = 0.0;
  if (n == 0 || !(x[order[0]] > 0.0)) {
    have_positive = true;
    positive_value = empty_value;
    positive_count = 0;
    positive_lambda = best_lambda;
  }

  std::size_t pos = 0;
  while (pos < n) {
    const double level = x[order[pos]];
    std::size_t end = pos;
    while (end < n && x[order[end]] == level) {
      const int v = order[end];
      member[v] = 1;
      for (auto [r, j] : touch[v]) {
        local[r][j] = 1;
        if (!dirty[r]) {
          dirty[r] = 1;
          dirty_list.push_back(r);
        }
      }
      ++end;
    }
    for (int r : dirty_list) {
      cur[r] = d.scaled(r).evaluate_local(local[r]);
      dirty[r] = 0;
    }
    dirty_list.clear();
    const double value = objective();
    const double lambda = end < n ? x[order[end]] : -INFINITY;
    if (value < best_value) {
      best_value = value;
      best_count = end;
      best_lambda = lambda;
    }
    if (level > 0.0 && !(end < n && x[order[end]] > 0.0)) {
      have_positive = true;
      positive_value = value;
      positive_count = end;
      positive_lambda = lambda;
    }
    pos = end;
  }
  if (have_positive && positive_value == best_value) {
    best_count = positive_count;
    best_lambda = positive_lambda;
  }

  double bound = 0.0;
  for (std::size_t i = 0; i < n; ++i) bound += std::min(ay[i] - x0[i], 0.0);

  LevelSetResult res;
  res.best_value = best_value;
  res.nu_d = best_value - bound;
  res.best_lambda = best_lambda;
  res.set.assign(order.begin(), order.begin() + static_cast<long>(best_count));
  std::sort(res.set.begin(), res.set.end());
  return res;
}

LevelSetResult discrete_gap(const BlockVector& y, const Decomposition& d,
                            std::span<const double> w) {
  const auto ay = apply_A(y, d);
  const auto x = primal_from_dual(ay, d, w);
  return discrete_gap_at(ay, d, x);
}

GapReport compute_gaps(const BlockVector& y, const Decomposition& d,
                       std::span<const double> w) {
  GapReport g;
  const auto ay = apply_A(y, d);
  g.x = primal_from_dual(ay, d, w);
  g.nu_s = smooth_gap_at(y, d, g.x);
  g.level = discrete_gap_at(ay, d, g.x);
  g.nu_d = g.level.nu_d;
  g.best_lambda = g.level.best_lambda;
  return g;
}

std::vector<Element> extract_solution(const BlockVector& y,
                                      const Decomposition& d,
                                      std::span<const double> w) {
  return discrete_gap(y, d, w).set;
}

}  // namespace dsfm
