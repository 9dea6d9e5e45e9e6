#include "dsfm/sampling.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace dsfm {

std::string_view plan_name(PlanKind k) {
  return k == PlanKind::uniform_k ? "uniform" : "greedy";
}

namespace {

void check_k(const Decomposition& d, int k) {
  if (k < 1 || static_cast<std::size_t>(k) > d.num_components()) {
    throw std::invalid_argument("sampling: K must lie in [1, R]");
  }
}

}  // namespace

BlockVector theta_uniform(const Decomposition& d, const IncidenceProfile& p,
                          int k) {
  check_k(d, k);
  const auto r = static_cast<double>(d.num_components());
  std::vector<double> theta(p.mu.size());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const double mu = p.mu[i];
    theta[i] = r == 1.0 ? mu
                        : (k - 1.0) / (r - 1.0) * mu + (r - k) / (r - 1.0);
  }
  return restrict_to_blocks(d, theta);
}

SamplingPlan uniform_plan(const Decomposition& d, const IncidenceProfile& p,
                          int k) {
  SamplingPlan plan;
  plan.kind = PlanKind::uniform_k;
  plan.k = k;
  plan.num_blocks = static_cast<int>(d.num_components());
  plan.alpha = static_cast<double>(k) / plan.num_blocks;
  plan.theta = theta_uniform(d, p, k);
  plan.theta_one_inf = theta_one_inf(plan.theta, d);
  return plan;
}

SamplingPlan greedy_balanced_partition(const Decomposition& d, int k) {
  check_k(d, k);
  const int r_count = static_cast<int>(d.num_components());
  const int m = (r_count + k - 1) / k;
  const auto n = static_cast<std::size_t>(d.n());

  std::vector<int> capacity(m, r_count / m);
  for (int i = 0; i < r_count % m; ++i) ++capacity[i];

  std::vector<std::vector<int>> mu_part(m, std::vector<int>(n, 0));
  std::vector<int> mu_max(n, 0);
  SamplingPlan plan;
  plan.kind = PlanKind::balanced_partition;
  plan.k = k;
  plan.num_blocks = r_count;
  plan.parts.assign(m, {});
  plan.part_of.assign(r_count, -1);

  for (int r = 0; r < r_count; ++r) {
    const auto s = d.support(r);
    int best = -1;
    long best_delta = std::numeric_limits<long>::max();
    for (int i = 0; i < m; ++i) {
      if (static_cast<int>(plan.parts[i].size()) >= capacity[i]) continue;
      long delta = 0;
      for (Element v : s) delta += mu_part[i][v] == mu_max[v];
      if (delta < best_delta) {
        best_delta = delta;
        best = i;
      }
    }
    plan.parts[best].push_back(r);
    plan.part_of[r] = best;
    for (Element v : s) {
      ++mu_part[best][v];
      mu_max[v] = std::max(mu_max[v], mu_part[best][v]);
    }
  }

  plan.alpha = 1.0 / m;
  plan.theta = BlockVector(d);
  for (int r = 0; r < r_count; ++r) {
    const auto s = d.support(r);
    auto b = plan.theta.block(r);
    for (std::size_t j = 0; j < s.size(); ++j) {
      b[j] = mu_part[plan.part_of[r]][s[j]];
    }
  }
  plan.theta_one_inf = theta_one_inf(plan.theta, d);
  return plan;
}

GroupSampler::GroupSampler(const SamplingPlan& plan, std::uint64_t seed)
    : plan_(&plan), rng_(seed), perm_(plan.num_blocks) {
  std::iota(perm_.begin(), perm_.end(), 0);
}

const std::vector<int>& GroupSampler::next() {
  const auto& plan = *plan_;
  if (plan.kind == PlanKind::balanced_partition) {
    std::uniform_int_distribution<std::size_t> pick(0, plan.parts.size() - 1);
    return plan.parts[pick(rng_)];
  }
  const int r = plan.num_blocks;
  const int k = plan.k;
  if (k == r) {
    group_ = perm_;
    std::sort(group_.begin(), group_.end());
    return group_;
  }
  for (int i = 0; i < k; ++i) {
    std::uniform_int_distribution<int> pick(i, r - 1);
    std::swap(perm_[i], perm_[pick(rng_)]);
  }
  group_.assign(perm_.begin(), perm_.begin() + k);
  std::sort(group_.begin(), group_.end());
  return group_;
}

BlockVector theta_monte_carlo(const SamplingPlan& plan, const Decomposition& d,
                              int samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("theta_monte_carlo: samples < 1");
  GroupSampler sampler(plan, seed);
  BlockVector sum(d);
  std::vector<long> hits(d.num_components(), 0);
  std::vector<int> mu_c(static_cast<std::size_t>(d.n()), 0);
  for (int t = 0; t < samples; ++t) {
    const auto& group = sampler.next();
    for (int r : group) {
      for (Element v : d.support(r)) ++mu_c[v];
    }
    for (int r : group) {
      ++hits[r];
      const auto s = d.support(r);
      auto b = sum.block(r);
      for (std::size_t j = 0; j < s.size(); ++j) b[j] += mu_c[s[j]];
    }
    for (int r : group) {
      for (Element v : d.support(r)) mu_c[v] = 0;
    }
  }
  for (std::size_t r = 0; r < d.num_components(); ++r) {
    if (hits[r] == 0) {
      throw std::runtime_error("theta_monte_carlo: block " +
                               std::to_string(r + 1) + " never sampled");
    }
    for (double& v : sum.block(r)) v /= static_cast<double>(hits[r]);
  }
  return sum;
}

}  // namespace dsfm
