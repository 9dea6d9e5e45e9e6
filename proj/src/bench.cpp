#include "dsfm/bench.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <stdexcept>
#include <tuple>

#include "dsfm/generators.hpp"

namespace dsfm {

std::optional<WeightMode> parse_weight_mode(std::string_view name) {
  if (name == "ones") return WeightMode::ones;
  if (name == "mu") return WeightMode::mu;
  if (name == "mu_sqrt") return WeightMode::mu_sqrt;
  if (name == "table2") return WeightMode::table2;
  if (name == "table2_sqrt") return WeightMode::table2_sqrt;
  return std::nullopt;
}

std::string_view weight_mode_name(WeightMode m) {
  switch (m) {
    case WeightMode::ones:
      return "ones";
    case WeightMode::mu:
      return "mu";
    case WeightMode::mu_sqrt:
      return "mu_sqrt";
    case WeightMode::table2:
      return "table2";
    case WeightMode::table2_sqrt:
      return "table2_sqrt";
  }
  return "unknown";
}

std::vector<double> proximal_weights(WeightMode mode, Algorithm algo,
                                     const IncidenceProfile& p, int r, int k) {
  if (mode == WeightMode::ones) return {};
  std::vector<double> w(p.mu.size());
  const bool full = is_full_sweep(algo);
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double mu = std::max(p.mu[i], 1);
    double base = mu;
    if ((mode == WeightMode::table2 || mode == WeightMode::table2_sqrt) && !full) {
      base = r == 1 ? mu
                    : (k - 1.0) / (r - 1.0) * mu + (r - k) / (r - 1.0);
    }
    const bool root = mode == WeightMode::mu_sqrt || mode == WeightMode::table2_sqrt;
    w[i] = root ? std::sqrt(base) : base;
  }
  return w;
}

std::optional<Method> parse_method(std::string_view label) {
  Method m;
  m.label = std::string(label);
  if (label == "rcdm-g" || label == "acdm-g") m.plan = PlanKind::balanced_partition;
  const auto a = parse_algorithm(label);
  if (!a) return std::nullopt;
  m.algorithm = *a;
  return m;
}

double median(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

double regression_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("regression_slope: need >= 2 paired points");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

namespace {

// Dinic's algorithm on real capacities.
class MaxFlow {
 public:
  explicit MaxFlow(int n) : adj_(n), level_(n), it_(n) {}
  void add(int u, int v, double cap, double rev_cap) {
    adj_[u].push_back({v, static_cast<int>(adj_[v].size()), cap});
    adj_[v].push_back({u, static_cast<int>(adj_[u].size()) - 1, rev_cap});
  }
  double run(int s, int t) {
    double flow = 0.0;
    while (bfs(s, t)) {
      std::fill(it_.begin(), it_.end(), 0);
      while (double f = dfs(s, t, INFINITY)) flow += f;
    }
    return flow;
  }

 private:
  struct Arc {
    int to;
    int rev;
    double cap;
  };
  static constexpr double kEps = 1e-13;
  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (const auto& a : adj_[u]) {
        if (a.cap > kEps && level_[a.to] < 0) {
          level_[a.to] = level_[u] + 1;
          q.push(a.to);
        }
      }
    }
    return level_[t] >= 0;
  }
  double dfs(int u, int t, double f) {
    if (u == t) return f;
    for (int& i = it_[u]; i < static_cast<int>(adj_[u].size()); ++i) {
      Arc& a = adj_[u][i];
      if (a.cap > kEps && level_[a.to] == level_[u] + 1) {
        const double got = dfs(a.to, t, std::min(f, a.cap));
        if (got > 0.0) {
          a.cap -= got;
          adj_[a.to][a.rev].cap += got;
          return got;
        }
      }
    }
    return 0.0;
  }
  std::vector<std::vector<Arc>> adj_;
  std::vector<int> level_;
  std::vector<int> it_;
};

}  // namespace

std::optional<double> graph_cut_minimum(const Decomposition& d) {
  const int n = d.n();
  const int s = n;
  const int t = n + 1;
  MaxFlow mf(n + 2);
  for (const auto& f : d.scaled_components()) {
    const auto sup = f.support();
    if (f.family() == Family::edge_cut) {
      const double c = f.cardinality_profile()[1];
      mf.add(sup[0], sup[1], c, c);
    } else if (f.family() == Family::edge_set) {
      for (const auto& e : f.local_edges()) mf.add(sup[e.a], sup[e.b], e.weight, e.weight);
    } else {
      return std::nullopt;
    }
  }
  double positive = 0.0;
  const auto x0 = d.x0();
  for (int i = 0; i < n; ++i) {
    if (x0[i] > 0.0) {
      mf.add(s, i, x0[i], 0.0);
      positive += x0[i];
    } else if (x0[i] < 0.0) {
      mf.add(i, t, -x0[i], 0.0);
    }
  }
  return mf.run(s, t) - positive;
}

std::vector<BenchSummaryRow> summarize(const std::vector<BenchRecord>& records) {
  std::vector<BenchSummaryRow> rows;
  std::map<std::tuple<std::string, std::string, int>, std::size_t> index;
  std::vector<std::vector<const BenchRecord*>> groups;
  for (const auto& r : records) {
    const auto key = std::make_tuple(r.method, r.weights, r.k);
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, rows.size()).first;
      rows.push_back({r.method, r.weights, r.k});
      groups.emplace_back();
    }
    groups[it->second].push_back(&r);
  }
  for (std::size_t g = 0; g < rows.size(); ++g) {
    std::vector<double> it;
    std::vector<double> sc;
    std::vector<double> pr;
    for (const auto* r : groups[g]) {
      ++rows[g].runs;
      rows[g].converged += r->result.status == RunStatus::converged;
      it.push_back(static_cast<double>(r->result.iterations));
      sc.push_back(r->scaled_iterations);
      pr.push_back(static_cast<double>(r->result.projections));
    }
    rows[g].median_iterations = median(it);
    rows[g].median_scaled_iterations = median(sc);
    rows[g].median_projections = median(pr);
  }
  return rows;
}

BenchRecord run_method(const Decomposition& d, const Method& m, SolverConfig cfg,
                       WeightMode weights) {
  cfg.algorithm = m.algorithm;
  cfg.plan = m.plan;
  if (weights != WeightMode::ones) {
    if (cfg.algorithm == Algorithm::iap) cfg.algorithm = Algorithm::iap_weighted;
    if (cfg.algorithm == Algorithm::rcdm_par) cfg.algorithm = Algorithm::rcdm_weighted;
    const auto p = compute_incidence(d);
    cfg.proximal_weights = proximal_weights(
        weights, cfg.algorithm, p, static_cast<int>(d.num_components()), cfg.k);
  }
  BenchRecord rec;
  rec.method = m.label;
  rec.weights = std::string(weight_mode_name(weights));
  rec.seed = cfg.seed;
  rec.result = solve(d, cfg);
  rec.k = rec.result.trace.k;
  const double r = static_cast<double>(d.num_components());
  rec.scaled_iterations = static_cast<double>(rec.result.iterations) *
                          (is_full_sweep(cfg.algorithm) ? 1.0 : rec.k / r);
  return rec;
}

Example31Summary bench_example31(const std::vector<int>& ns, int seeds,
                                 double ratio, std::uint64_t base_seed) {
  Example31Summary out;
  std::vector<double> lx;
  std::vector<double> ly;
  for (int n : ns) {
    auto [d, y0] = gen_example31(n);
    Example31Point pt;
    pt.n = n;
    pt.ground_size = d.n();
    double total = 0.0;
    for (int s = 0; s < seeds; ++s) {
      SolverConfig cfg;
      cfg.algorithm = Algorithm::rcdm_seq;
      cfg.initial = y0;
      cfg.objective_ratio = ratio;
      cfg.gap_check_period = -1;
      cfg.max_iterations = std::numeric_limits<long>::max() / 2;
      cfg.seed = base_seed * 1000003ULL + static_cast<std::uint64_t>(n) * 101ULL +
                 static_cast<std::uint64_t>(s);
      cfg.threads = 1;
      const auto res = solve(d, cfg);
      pt.iterations.push_back(res.iterations);
      total += static_cast<double>(res.iterations);
    }
    pt.mean_iterations = total / seeds;
    lx.push_back(std::log(static_cast<double>(pt.ground_size)));
    ly.push_back(std::log(pt.mean_iterations));
    out.points.push_back(std::move(pt));
  }
  out.slope = lx.size() >= 2 ? regression_slope(lx, ly) : 0.0;
  return out;
}

std::vector<BenchRecord> bench_matrix(const Decomposition& d,
                                      const std::vector<Method>& methods,
                                      const std::vector<std::uint64_t>& seeds,
                                      const SolverConfig& base) {
  std::vector<BenchRecord> out;
  for (const auto& m : methods) {
    for (auto seed : seeds) {
      SolverConfig cfg = base;
      cfg.seed = seed;
      out.push_back(run_method(d, m, cfg));
    }
  }
  return out;
}

std::vector<BenchRecord> bench_ba(int n, const std::vector<std::uint64_t>& seeds,
                                  const std::vector<Method>& methods,
                                  const std::vector<WeightMode>& modes,
                                  const std::vector<int>& ks, long max_iterations,
                                  int threads) {
  std::vector<BenchRecord> out;
  for (auto seed : seeds) {
    const Decomposition d = gen_ba(n, seed);
    const double target = *graph_cut_minimum(d);
    for (const auto& m : methods) {
      for (auto mode : modes) {
        for (int k : ks) {
          SolverConfig cfg;
          cfg.k = k;
          cfg.seed = seed;
          cfg.gap = GapKind::discrete;
          cfg.epsilon = 1e-9;
          cfg.projection_tolerance = 1e-12;
          cfg.gap_check_period = 1;
          cfg.max_iterations = max_iterations;
          cfg.target_value = target;
          cfg.threads = threads;
          out.push_back(run_method(d, m, cfg, mode));
        }
      }
    }
  }
  return out;
}

}  // namespace dsfm
