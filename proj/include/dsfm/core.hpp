#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dsfm/component.hpp"

namespace dsfm {

/// Strictly positive weights, element-indexed (length N) or block-restricted.
class WeightVector {
 public:
  WeightVector() = default;
  explicit WeightVector(std::vector<double> values);
  static WeightVector ones(std::size_t n);

  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  std::vector<double> values_;
};

/// Ground set [N] with R components, offset x0 and scale tau. The solvers
/// target min_x tau·Σ f_r(x) − ⟨x0, x⟩ + ½‖x‖²_w, whose discrete counterpart
/// is min_S tau·Σ F_r(S) − x0(S).
class Decomposition {
 public:
  Decomposition(int n, std::vector<SubmodularComponent> components,
                std::vector<double> x0 = {}, double tau = 1.0);

  int n() const { return n_; }
  std::size_t num_components() const { return components_.size(); }
  double tau() const { return tau_; }
  std::span<const double> x0() const { return x0_; }

  /// Components as given (unscaled).
  const std::vector<SubmodularComponent>& components() const {
    return components_;
  }
  /// tau·F_r, the functions every solver works with.
  const SubmodularComponent& scaled(std::size_t r) const { return scaled_[r]; }
  const std::vector<SubmodularComponent>& scaled_components() const {
    return scaled_;
  }
  std::span<const Element> support(std::size_t r) const {
    return components_[r].support();
  }

  /// Block layout: block r occupies [offsets[r], offsets[r+1]).
  std::span<const std::size_t> block_offsets() const { return offsets_; }
  std::size_t total_block_size() const { return offsets_.back(); }

 private:
  int n_;
  double tau_;
  std::vector<double> x0_;
  std::vector<SubmodularComponent> components_;
  std::vector<SubmodularComponent> scaled_;
  std::vector<std::size_t> offsets_;
};

struct IncidenceProfile {
  std::vector<int> mu;
  std::vector<std::vector<int>> element_to_components;
  long long mu_l1 = 0;
  /// Elements with mu_i = 0.
  std::vector<Element> isolated;
};

IncidenceProfile compute_incidence(const Decomposition& d);

/// y = (y_1, ..., y_R) with block r stored over S_r in sorted element order.
class BlockVector {
 public:
  BlockVector() = default;
  explicit BlockVector(const Decomposition& d, double fill = 0.0);
  explicit BlockVector(std::vector<std::size_t> offsets, double fill = 0.0);

  std::size_t num_blocks() const {
    return offsets_.empty() ? 0 : offsets_.size() - 1;
  }
  std::span<double> block(std::size_t r) {
    return {data_.data() + offsets_[r], offsets_[r + 1] - offsets_[r]};
  }
  std::span<const double> block(std::size_t r) const {
    return {data_.data() + offsets_[r], offsets_[r + 1] - offsets_[r]};
  }
  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }
  std::span<const std::size_t> offsets() const { return offsets_; }

  bool conforms(const Decomposition& d) const;
  friend bool operator==(const BlockVector&, const BlockVector&) = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<double> data_;
};

/// (Ay)_i = Σ_{r: i∈S_r} y_{r,i}, summed in ascending r.
std::vector<double> apply_A(const BlockVector& y, const Decomposition& d);
void apply_A(const BlockVector& y, const Decomposition& d, std::span<double> out);

/// √(Σ w_i z_i²).
double skewed_norm(std::span<const double> z, std::span<const double> w);
double skewed_norm(std::span<const double> z, const WeightVector& w);
/// √(Σ_r ‖y_r‖²_{θ_r}).
double block_skewed_norm(const BlockVector& y, const BlockVector& theta);

/// Σ_i max_{r: i∈S_r} θ_{r,i}; elements with mu_i = 0 contribute 0.
double theta_one_inf(const BlockVector& theta, const Decomposition& d);

/// I(w): block r carries w restricted to S_r.
BlockVector restrict_to_blocks(const Decomposition& d, std::span<const double> w);

/// τ·Σ_r F_r(S) − x0(S), summed in ascending r then ascending element.
/// `member` has length N.
double discrete_objective(const Decomposition& d, std::span<const char> member);
double discrete_objective(const Decomposition& d, std::span<const Element> set);

struct DiscreteSolution {
  double value = 0.0;
  std::vector<Element> set;  ///< sorted, 0-based
};

/// Exact minimum of discrete_objective over all 2^N subsets (N ≤ 20).
/// Ties go to the lexicographically smallest sorted element list.
DiscreteSolution exhaustive_dsfm(const Decomposition& d);

}  // namespace dsfm
