#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "dsfm/core.hpp"

namespace dsfm {

enum class PlanKind { uniform_k, balanced_partition };

std::string_view plan_name(PlanKind k);

/// Block-sampling rule with its per-block θ^P.
struct SamplingPlan {
  PlanKind kind = PlanKind::uniform_k;
  int k = 1;
  int num_blocks = 1;
  /// Marginal inclusion probability: K/R (uniform) or 1/m (partition).
  double alpha = 1.0;
  /// Partition plans only; each part sorted ascending.
  std::vector<std::vector<int>> parts;
  std::vector<int> part_of;
  BlockVector theta;
  double theta_one_inf = 0.0;
};

/// θ_r = (K−1)/(R−1)·μ + (R−K)/(R−1), restricted per block. R = 1 gives μ.
BlockVector theta_uniform(const Decomposition& d, const IncidenceProfile& p,
                          int k);

SamplingPlan uniform_plan(const Decomposition& d, const IncidenceProfile& p,
                          int k);

/// Greedy balanced partition into m = ⌈R/K⌉ parts; θ for blocks of part C
/// is μ^C restricted to the block support.
SamplingPlan greedy_balanced_partition(const Decomposition& d, int k);

/// Draws groups from a plan with a caller-owned generator. Groups are sorted.
class GroupSampler {
 public:
  GroupSampler(const SamplingPlan& plan, std::uint64_t seed);
  const std::vector<int>& next();
  std::mt19937_64& rng() { return rng_; }

 private:
  const SamplingPlan* plan_;
  std::mt19937_64 rng_;
  std::vector<int> perm_;
  std::vector<int> group_;
};

/// Empirical E[μ^C | r ∈ C] over `samples` draws. Throws if a block is
/// never drawn.
BlockVector theta_monte_carlo(const SamplingPlan& plan, const Decomposition& d,
                              int samples, std::uint64_t seed);

}  // namespace dsfm
