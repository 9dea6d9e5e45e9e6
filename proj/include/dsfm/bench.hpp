#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dsfm/core.hpp"
#include "dsfm/solver.hpp"

namespace dsfm {

enum class WeightMode { ones, mu, mu_sqrt, table2, table2_sqrt };

std::optional<WeightMode> parse_weight_mode(std::string_view name);
std::string_view weight_mode_name(WeightMode m);

/// Proximal weights over [N]. table2 is the orthogonal-projection choice:
/// μ for the IAP family, (K−1)/(R−1)μ + (R−K)/(R−1) for the CD family.
/// Empty for `ones`. Elements with μ = 0 get weight 1.
std::vector<double> proximal_weights(WeightMode mode, Algorithm algo,
                                     const IncidenceProfile& p, int r, int k);

/// Named solver setup: ap, iap, rcdm-seq, rcdm-u, rcdm-g, acdm-u, acdm-g,
/// iap-weighted, rcdm-weighted.
struct Method {
  std::string label;
  Algorithm algorithm = Algorithm::iap;
  PlanKind plan = PlanKind::uniform_k;
};
std::optional<Method> parse_method(std::string_view label);

double median(std::vector<double> v);
/// Least-squares slope of y against x.
double regression_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Exact minimum of τΣ cut − x0(S) by max-flow when every component is an
/// edge cut or edge set; nullopt otherwise.
std::optional<double> graph_cut_minimum(const Decomposition& d);

struct BenchRecord {
  std::string method;
  std::string weights;
  int k = 0;
  std::uint64_t seed = 0;
  RunResult result;
  /// iterations × K/R for coordinate descent, iterations otherwise.
  double scaled_iterations = 0.0;
};

struct BenchSummaryRow {
  std::string method;
  std::string weights;
  int k = 0;
  std::size_t runs = 0;
  std::size_t converged = 0;
  double median_iterations = 0.0;
  double median_scaled_iterations = 0.0;
  double median_projections = 0.0;
};

/// Groups records by (method, weights, K) in first-seen order.
std::vector<BenchSummaryRow> summarize(const std::vector<BenchRecord>& records);

BenchRecord run_method(const Decomposition& d, const Method& m, SolverConfig cfg,
                       WeightMode weights = WeightMode::ones);

struct Example31Point {
  int n = 0;
  int ground_size = 0;
  std::vector<long> iterations;
  double mean_iterations = 0.0;
};
struct Example31Summary {
  std::vector<Example31Point> points;
  double slope = 0.0;
};

/// Sequential RCDM from the staircase start until g ≤ ratio·g(y⁰); fits
/// ln(mean iterations) against ln(N).
Example31Summary bench_example31(const std::vector<int>& ns, int seeds,
                                 double ratio, std::uint64_t base_seed);

/// Runs every method for every seed to the configured gap on `d`.
std::vector<BenchRecord> bench_matrix(const Decomposition& d,
                                      const std::vector<Method>& methods,
                                      const std::vector<std::uint64_t>& seeds,
                                      const SolverConfig& base);

/// BA instances: per seed, every (method, weight mode, K) runs until the
/// extracted level set reaches the max-flow optimum; gaps checked every
/// iteration.
std::vector<BenchRecord> bench_ba(int n, const std::vector<std::uint64_t>& seeds,
                                  const std::vector<Method>& methods,
                                  const std::vector<WeightMode>& modes,
                                  const std::vector<int>& ks, long max_iterations,
                                  int threads);

}  // namespace dsfm
