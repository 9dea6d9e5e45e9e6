#include "dsfm/solver.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <stdexcept>

#include "dsfm/projection.hpp"

namespace dsfm {

std::string_view algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::ap:
      return "ap";
    case Algorithm::iap:
      return "iap";
    case Algorithm::rcdm_seq:
      return "rcdm-seq";
    case Algorithm::rcdm_par:
      return "rcdm-par";
    case Algorithm::acdm:
      return "acdm";
    case Algorithm::iap_weighted:
      return "iap-weighted";
    case Algorithm::rcdm_weighted:
      return "rcdm-weighted";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  if (name == "ap") return Algorithm::ap;
  if (name == "iap") return Algorithm::iap;
  if (name == "rcdm-seq" || name == "rcdm_seq") return Algorithm::rcdm_seq;
  if (name == "rcdm-par" || name == "rcdm_par" || name == "rcdm" ||
      name == "rcdm-u" || name == "rcdm-g") {
    return Algorithm::rcdm_par;
  }
  if (name == "acdm" || name == "acdm-u" || name == "acdm-g") {
    return Algorithm::acdm;
  }
  if (name == "iap-weighted" || name == "iap_weighted") {
    return Algorithm::iap_weighted;
  }
  if (name == "rcdm-weighted" || name == "rcdm_weighted") {
    return Algorithm::rcdm_weighted;
  }
  return std::nullopt;
}

std::string_view gap_kind_name(GapKind g) {
  switch (g) {
    case GapKind::smooth:
      return "smooth";
    case GapKind::discrete:
      return "discrete";
    case GapKind::both:
      return "both";
  }
  return "unknown";
}

bool is_coordinate_descent(Algorithm a) { return !is_full_sweep(a); }

bool is_full_sweep(Algorithm a) {
  return a == Algorithm::ap || a == Algorithm::iap ||
         a == Algorithm::iap_weighted;
}

namespace {

bool accepts_weights(Algorithm a) {
  return a == Algorithm::iap_weighted || a == Algorithm::rcdm_weighted ||
         a == Algorithm::acdm;
}

double lambda_next(double l) {
  return (std::sqrt(l * l * l * l + 4.0 * l * l) - l * l) / 2.0;
}

}  // namespace

Solver::Solver(const Decomposition& d, SolverConfig config)
    : d_(d), cfg_(std::move(config)), profile_(compute_incidence(d)) {
  const auto n = static_cast<std::size_t>(d.n());
  const int r_count = static_cast<int>(d.num_components());
  if (!(cfg_.restart_c > 0.0)) {
    throw std::invalid_argument("solver: restart_c must be positive");
  }
  if (!(cfg_.epsilon > 0.0)) {
    throw std::invalid_argument("solver: epsilon must be positive");
  }
  if (!(cfg_.projection_tolerance > 0.0) ||
      !(cfg_.projection_tolerance < cfg_.epsilon / 10.0)) {
    throw std::invalid_argument(
        "solver: projection tolerance must lie in (0, epsilon/10)");
  }
  if (cfg_.max_iterations < 0) {
    throw std::invalid_argument("solver: max_iterations must be >= 0");
  }

  if (cfg_.proximal_weights.empty()) {
    w_.assign(n, 1.0);
  } else {
    if (cfg_.proximal_weights.size() != n) {
      throw std::invalid_argument("solver: proximal weights must have length N");
    }
    WeightVector check(cfg_.proximal_weights);
    w_ = cfg_.proximal_weights;
  }
  const bool unit_w = std::all_of(w_.begin(), w_.end(), [](double v) { return v == 1.0; });
  if (!unit_w && !accepts_weights(cfg_.algorithm)) {
    throw std::invalid_argument("solver: proximal weights need iap-weighted, "
                                "rcdm-weighted or acdm");
  }
  if (is_full_sweep(cfg_.algorithm) &&
      cfg_.plan == PlanKind::balanced_partition) {
    throw std::invalid_argument("solver: partition plans need a coordinate-descent algorithm");
  }
  if (cfg_.algorithm == Algorithm::rcdm_weighted &&
      cfg_.plan != PlanKind::uniform_k) {
    throw std::invalid_argument("solver: rcdm-weighted needs the uniform plan");
  }

  switch (cfg_.algorithm) {
    case Algorithm::ap:
      precond_ = BlockVector(d, static_cast<double>(r_count));
      break;
    case Algorithm::iap:
    case Algorithm::iap_weighted: {
      std::vector<double> mu(profile_.mu.begin(), profile_.mu.end());
      precond_ = restrict_to_blocks(d, mu);
      break;
    }
    case Algorithm::rcdm_seq:
      plan_ = uniform_plan(d, profile_, 1);
      precond_ = BlockVector(d, 1.0);
      break;
    default: {
      if (cfg_.k < 1 || cfg_.k > r_count) {
        throw std::invalid_argument("solver: K must lie in [1, R]");
      }
      plan_ = cfg_.plan == PlanKind::uniform_k
                  ? uniform_plan(d, profile_, cfg_.k)
                  : greedy_balanced_partition(d, cfg_.k);
      precond_ = plan_->theta;
    }
  }
  if (plan_) sampler_.emplace(*plan_, cfg_.seed);
  theta_norm_ = dsfm::theta_one_inf(precond_, d);

  proj_weights_ = precond_;
  for (std::size_t r = 0; r < d.num_components(); ++r) {
    const auto s = d.support(r);
    auto b = proj_weights_.block(r);
    for (std::size_t j = 0; j < s.size(); ++j) b[j] /= w_[s[j]];
  }

  if (cfg_.initial) {
    if (!cfg_.initial->conforms(d)) {
      throw std::invalid_argument("solver: initial point does not conform");
    }
    y_ = *cfg_.initial;
  } else {
    y_ = BlockVector(d);
    for (std::size_t r = 0; r < d.num_components(); ++r) {
      std::vector<double> zero(d.support(r).size(), 0.0);
      d.scaled(r).greedy_vertex(zero, y_.block(r));
    }
  }
  ay_.assign(n, 0.0);
  grad_.assign(n, 0.0);
  recompute_ay();

  if (cfg_.algorithm == Algorithm::acdm) {
    u_ = BlockVector(d);
    au_.assign(n, 0.0);
    const double alpha = plan_->alpha;
    restart_period_ = static_cast<long>(std::ceil(
        (1.0 + cfg_.restart_c) *
            std::sqrt(2.0 * static_cast<double>(n) * plan_->theta_one_inf) /
            alpha +
        cfg_.restart_c));
  }

  threads_ = cfg_.threads > 0 ? cfg_.threads : omp_get_max_threads();
  all_blocks_.resize(d.num_components());
  std::iota(all_blocks_.begin(), all_blocks_.end(), 0);
}

void Solver::recompute_ay() {
  apply_A(y_, d_, ay_);
  const auto x0 = d_.x0();
  g_ = 0.0;
  for (std::size_t i = 0; i < ay_.size(); ++i) {
    const double r = ay_[i] - x0[i];
    g_ += 0.5 * r * r / w_[i];
  }
}

BlockVector Solver::current_y() const {
  if (cfg_.algorithm != Algorithm::acdm) return y_;
  BlockVector y = y_;
  const double c = lambda_prev_ * lambda_prev_;
  auto dst = y.data();
  const auto src = u_.data();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += c * src[i];
  return y;
}

double Solver::g_value() const {
  if (cfg_.algorithm != Algorithm::acdm) return g_;
  const auto x0 = d_.x0();
  const double c = lambda_prev_ * lambda_prev_;
  double g = 0.0;
  for (std::size_t i = 0; i < ay_.size(); ++i) {
    const double r = ay_[i] + c * au_[i] - x0[i];
    g += 0.5 * r * r / w_[i];
  }
  return g;
}

void Solver::project_blocks(std::span<const int> group, const BlockVector& src,
                            double step_scale, std::span<const double> grad) {
  const auto count = static_cast<long>(group.size());
  if (out_.size() < group.size()) out_.resize(group.size());
  std::vector<std::exception_ptr> errors(group.size());
  const double tol = cfg_.projection_tolerance;
  auto work = [&](long t) {
    const int r = group[t];
    const auto s = d_.support(r);
    const auto yr = src.block(r);
    const auto pre = precond_.block(r);
    thread_local std::vector<double> a;
    a.resize(s.size());
    for (std::size_t j = 0; j < s.size(); ++j) {
      a[j] = yr[j] - step_scale * grad[s[j]] / pre[j];
    }
    auto& out = out_[t];
    out.resize(s.size());
    try {
      ProjectionRequest req{&d_.scaled(r), a, proj_weights_.block(r), tol};
      project(req, out);
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };
  if (threads_ > 1 && count > 1) {
#pragma omp parallel for num_threads(threads_) schedule(static)
    for (long t = 0; t < count; ++t) work(t);
  } else {
    for (long t = 0; t < count; ++t) work(t);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  projections_ += count;
}

void Solver::full_sweep() {
  const auto x0 = d_.x0();
  for (std::size_t i = 0; i < ay_.size(); ++i) grad_[i] = ay_[i] - x0[i];
  project_blocks(all_blocks_, y_, 1.0, grad_);
  for (std::size_t r = 0; r < all_blocks_.size(); ++r) {
    std::copy(out_[r].begin(), out_[r].end(), y_.block(r).begin());
  }
  recompute_ay();
}

void Solver::step() {
  if (is_full_sweep(cfg_.algorithm)) {
    full_sweep();
    ++k_;
    return;
  }
  const std::vector<int> group = sampler_->next();
  step_with_group(group);
}

void Solver::step_with_group(std::span<const int> group) {
  if (is_full_sweep(cfg_.algorithm)) {
    throw std::logic_error("step_with_group: not a coordinate-descent solver");
  }
  if (cfg_.algorithm == Algorithm::acdm) {
    acdm_step(group);
    ++k_;
    return;
  }
  const auto x0 = d_.x0();
  for (int r : group) {
    for (Element v : d_.support(r)) grad_[v] = ay_[v] - x0[v];
  }
  project_blocks(group, y_, 1.0, grad_);
  for (std::size_t t = 0; t < group.size(); ++t) {
    const int r = group[t];
    const auto s = d_.support(r);
    auto yr = y_.block(r);
    for (std::size_t j = 0; j < s.size(); ++j) {
      const double delta = out_[t][j] - yr[j];
      const double before = ay_[s[j]] - x0[s[j]];
      ay_[s[j]] += delta;
      const double after = ay_[s[j]] - x0[s[j]];
      g_ += 0.5 * (after * after - before * before) / w_[s[j]];
      yr[j] = out_[t][j];
    }
  }
  ++k_;
}

void Solver::acdm_step(std::span<const int> group) {
  const auto x0 = d_.x0();
  if (k_ > 0 && k_ % restart_period_ == 0) {
    const double c = lambda_prev_ * lambda_prev_;
    auto z = y_.data();
    auto u = u_.data();
    for (std::size_t i = 0; i < z.size(); ++i) {
      z[i] += c * u[i];
      u[i] = 0.0;
    }
    std::fill(au_.begin(), au_.end(), 0.0);
    recompute_ay();
    lambda_ = 1.0;
  }
  if (lambda_ < 1e-300) {
    // forced restart on underflow
    const double c = lambda_prev_ * lambda_prev_;
    auto z = y_.data();
    auto u = u_.data();
    for (std::size_t i = 0; i < z.size(); ++i) {
      z[i] += c * u[i];
      u[i] = 0.0;
    }
    std::fill(au_.begin(), au_.end(), 0.0);
    recompute_ay();
    lambda_ = 1.0;
  }
  const double alpha = plan_->alpha;
  const double l = lambda_;
  const double l2 = l * l;
  for (int r : group) {
    for (Element v : d_.support(r)) grad_[v] = ay_[v] + l2 * au_[v] - x0[v];
  }
  project_blocks(group, y_, alpha / l, grad_);
  const double coef = (l - alpha) / (alpha * l2);
  for (std::size_t t = 0; t < group.size(); ++t) {
    const int r = group[t];
    const auto s = d_.support(r);
    auto zr = y_.block(r);
    auto ur = u_.block(r);
    for (std::size_t j = 0; j < s.size(); ++j) {
      const double dz = out_[t][j] - zr[j];
      zr[j] = out_[t][j];
      ur[j] += coef * dz;
      ay_[s[j]] += dz;
      au_[s[j]] += coef * dz;
    }
  }
  lambda_prev_ = l;
  lambda_ = lambda_next(l);
}

GapReport Solver::gaps(BlockVector* certified) const {
  if (cfg_.algorithm != Algorithm::acdm) {
    if (certified) *certified = y_;
    return compute_gaps(y_, d_, w_);
  }
  GapReport gz = compute_gaps(y_, d_, w_);
  BlockVector y = current_y();
  bool feasible = true;
  for (std::size_t r = 0; r < d_.num_components() && feasible; ++r) {
    const auto b = y.block(r);
    double scale = 1.0;
    for (double v : b) scale = std::max(scale, std::abs(v));
    feasible = base_polytope_violation(d_.scaled(r), b) <= 1e-9 * scale;
  }
  auto key = [&](const GapReport& g) {
    switch (cfg_.gap) {
      case GapKind::smooth:
        return g.nu_s;
      case GapKind::discrete:
        return g.nu_d;
      case GapKind::both:
        return std::max(g.nu_s, g.nu_d);
    }
    return g.nu_s;
  };
  if (feasible) {
    GapReport gy = compute_gaps(y, d_, w_);
    if (key(gy) <= key(gz)) {
      if (certified) *certified = std::move(y);
      return gy;
    }
  }
  if (certified) *certified = y_;
  return gz;
}

RunResult Solver::run() {
  const auto start = std::chrono::steady_clock::now();
  RunResult res;
  res.initial_g = g_value();
  const int r_count = static_cast<int>(d_.num_components());
  const int k_eff = plan_ ? plan_->k : r_count;
  long period = cfg_.gap_check_period;
  if (period == 0) period = (r_count + k_eff - 1) / k_eff;

  res.trace.algorithm = std::string(algorithm_name(cfg_.algorithm));
  res.trace.plan = plan_ ? std::string(plan_name(plan_->kind)) : "full";
  res.trace.k = k_eff;
  res.trace.seed = cfg_.seed;
  res.trace.theta_one_inf = theta_norm_;

  auto converged = [&](const GapReport& g) {
    if (cfg_.target_value) {
      const double t = *cfg_.target_value;
      if (g.level.best_value <= t + 1e-12 * (1.0 + std::abs(t))) return true;
    }
    switch (cfg_.gap) {
      case GapKind::smooth:
        return g.nu_s <= cfg_.epsilon;
      case GapKind::discrete:
        return g.nu_d <= cfg_.epsilon;
      case GapKind::both:
        return g.nu_s <= cfg_.epsilon && g.nu_d <= cfg_.epsilon;
    }
    return false;
  };
  auto check = [&](BlockVector& cert) {
    GapReport g = gaps(&cert);
    TraceRow row;
    row.iteration = k_;
    row.cumulative_projections = projections_;
    row.nu_s = g.nu_s;
    row.nu_d = g.nu_d;
    row.g_value = g_value();
    row.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    res.trace.rows.push_back(row);
    return g;
  };

  BlockVector cert;
  std::optional<GapReport> last;
  for (;;) {
    if (period > 0 && k_ % period == 0) {
      last = check(cert);
      if (k_ >= 1 && converged(*last)) {
        res.status = RunStatus::converged;
        break;
      }
    } else {
      last.reset();
    }
    if (cfg_.objective_ratio && k_ >= 1 &&
        g_value() <= *cfg_.objective_ratio * res.initial_g) {
      res.status = RunStatus::converged;
      break;
    }
    if (k_ >= cfg_.max_iterations) break;
    step();
  }
  if (!last) {
    last = check(cert);
    if (res.status != RunStatus::converged && k_ >= 1 && converged(*last)) {
      res.status = RunStatus::converged;
    }
  }
  res.iterations = k_;
  res.projections = projections_;
  res.final_g = g_value();
  res.gaps = std::move(*last);
  res.y = std::move(cert);
  res.solution.set = res.gaps.level.set;
  res.solution.value = discrete_objective(d_, std::span<const Element>(res.solution.set));
  return res;
}

RunResult solve(const Decomposition& d, const SolverConfig& config) {
  Solver s(d, config);
  return s.run();
}

}  // namespace dsfm
