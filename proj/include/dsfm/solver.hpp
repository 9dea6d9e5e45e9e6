#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dsfm/core.hpp"
#include "dsfm/gaps.hpp"
#include "dsfm/sampling.hpp"

namespace dsfm {

enum class Algorithm {
  ap,
  iap,
  rcdm_seq,
  rcdm_par,
  acdm,
  iap_weighted,
  rcdm_weighted,
};

enum class GapKind { smooth, discrete, both };
enum class RunStatus { converged, unconverged };

std::string_view algorithm_name(Algorithm a);
/// Accepts the canonical names plus rcdm, rcdm-u, rcdm-g, acdm-u, acdm-g.
std::optional<Algorithm> parse_algorithm(std::string_view name);
std::string_view gap_kind_name(GapKind g);
bool is_coordinate_descent(Algorithm a);
bool is_full_sweep(Algorithm a);

struct SolverConfig {
  Algorithm algorithm = Algorithm::iap;
  PlanKind plan = PlanKind::uniform_k;
  int k = 1;
  double epsilon = 1e-6;
  GapKind gap = GapKind::smooth;
  /// 0 → ⌈R/K⌉ (1 for AP and IAP); negative → only at the end.
  long gap_check_period = 0;
  long max_iterations = 1000000;
  double restart_c = 1.0;
  /// Length N, or empty for all ones.
  std::vector<double> proximal_weights;
  double projection_tolerance = 1e-10;
  std::uint64_t seed = 1;
  /// 0 → OpenMP default.
  int threads = 0;
  /// Also stop once g(y) ≤ ratio·g(y⁰), tested every iteration.
  std::optional<double> objective_ratio;
  /// Also stop at a gap check whose best level set reaches this value.
  std::optional<double> target_value;
  std::optional<BlockVector> initial;
};

struct TraceRow {
  long iteration = 0;
  long long cumulative_projections = 0;
  double nu_s = 0.0;
  double nu_d = 0.0;
  double g_value = 0.0;
  double wall_seconds = 0.0;
};

struct ConvergenceTrace {
  std::string algorithm;
  std::string plan;
  int k = 0;
  std::uint64_t seed = 0;
  double theta_one_inf = 0.0;
  std::vector<TraceRow> rows;
};

struct RunResult {
  RunStatus status = RunStatus::unconverged;
  long iterations = 0;
  long long projections = 0;
  BlockVector y;
  GapReport gaps;
  DiscreteSolution solution;
  ConvergenceTrace trace;
  double initial_g = 0.0;
  double final_g = 0.0;
};

/// Iteration state for one solver run over a fixed decomposition.
class Solver {
 public:
  Solver(const Decomposition& d, SolverConfig config);

  const SolverConfig& config() const { return cfg_; }
  const IncidenceProfile& profile() const { return profile_; }
  /// Sampling plan of the coordinate-descent algorithms, else null.
  const SamplingPlan* plan() const { return plan_ ? &*plan_ : nullptr; }
  /// ‖·‖_{1,∞} of the per-block step preconditioner.
  double theta_one_inf() const { return theta_norm_; }

  /// One iteration; coordinate-descent algorithms draw their own group.
  void step();
  /// One coordinate-descent iteration on a given sorted group.
  void step_with_group(std::span<const int> group);

  long iteration() const { return k_; }
  long long projections() const { return projections_; }
  /// Current dual point y (for ACDM, z + λ_{k−1}²u).
  BlockVector current_y() const;
  double g_value() const;
  /// ACDM state.
  double lambda() const { return lambda_; }
  long restart_period() const { return restart_period_; }

  /// Gaps at the current state. ACDM certifies with the better of y (when
  /// feasible) and z; `certified` receives the dual point used.
  GapReport gaps(BlockVector* certified = nullptr) const;

  RunResult run();

 private:
  void full_sweep();
  void acdm_step(std::span<const int> group);
  void project_blocks(std::span<const int> group, const BlockVector& src,
                      double step_scale, std::span<const double> grad);
  void recompute_ay();

  const Decomposition& d_;
  SolverConfig cfg_;
  IncidenceProfile profile_;
  std::optional<SamplingPlan> plan_;
  std::optional<GroupSampler> sampler_;
  std::vector<double> w_;
  BlockVector precond_;
  BlockVector proj_weights_;
  double theta_norm_ = 0.0;
  int threads_ = 1;

  BlockVector y_;  // z for ACDM
  BlockVector u_;
  std::vector<double> ay_;  // Az for ACDM
  std::vector<double> au_;
  double lambda_ = 1.0;
  double lambda_prev_ = 0.0;
  long restart_period_ = 0;
  double g_ = 0.0;

  long k_ = 0;
  long long projections_ = 0;

  // per-iteration scratch
  std::vector<double> grad_;
  std::vector<std::vector<double>> out_;
  std::vector<int> all_blocks_;
};

RunResult solve(const Decomposition& d, const SolverConfig& config);

}  // namespace dsfm
