#pragma once

#include <span>
#include <vector>

#include "dsfm/core.hpp"

namespace dsfm {

/// x = w^{-1} ⊙ (x0 − Ay). `w` may be empty (all ones).
std::vector<double> primal_from_dual(std::span<const double> ay,
                                     const Decomposition& d,
                                     std::span<const double> w = {});
std::vector<double> primal_from_dual(const BlockVector& y, const Decomposition& d,
                                     std::span<const double> w = {});

/// Σ_r [τ f_r(x) − ⟨y_r, x⟩], the primal minus dual objective at x.
double smooth_gap_at(const BlockVector& y, const Decomposition& d,
                     std::span<const double> x);
double smooth_gap(const BlockVector& y, const Decomposition& d,
                  std::span<const double> w = {});

struct LevelSetResult {
  double nu_d = 0.0;
  double best_value = 0.0;   ///< discrete_objective of the chosen set
  double best_lambda = 0.0;  ///< the set is {x > best_lambda}
  std::vector<Element> set;  ///< sorted, 0-based
};

/// min over level sets {x > λ} of the discrete objective, minus the lower
/// bound Σ_v min{(Ay − x0)_v, 0}. {x > 0} is always a candidate and wins
/// ties; other ties go to the smaller set.
LevelSetResult discrete_gap_at(std::span<const double> ay,
                               const Decomposition& d,
                               std::span<const double> x);
LevelSetResult discrete_gap(const BlockVector& y, const Decomposition& d,
                            std::span<const double> w = {});

struct GapReport {
  double nu_s = 0.0;
  double nu_d = 0.0;
  double best_lambda = 0.0;
  std::vector<double> x;
  LevelSetResult level;
};

GapReport compute_gaps(const BlockVector& y, const Decomposition& d,
                       std::span<const double> w = {});

/// Best level set of discrete_gap.
std::vector<Element> extract_solution(const BlockVector& y,
                                      const Decomposition& d,
                                      std::span<const double> w = {});

}  // namespace dsfm
