#include "dsfm/projection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dsfm {

void validate_request(const ProjectionRequest& req) {
  if (req.component == nullptr) {
    throw std::invalid_argument("projection: missing component");
  }
  const std::size_t m = req.component->size();
  if (req.z.size() != m || req.w.size() != m) {
    throw std::invalid_argument("projection: dimension mismatch");
  }
  if (!(req.tolerance > 0.0)) {
    throw std::invalid_argument("projection: tolerance must be positive");
  }
  double lo = INFINITY;
  double hi = 0.0;
  for (double v : req.w) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("projection: weights must be positive");
    }
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (hi > 1e12 * lo) {
    throw std::invalid_argument("projection: weight ratio exceeds 1e12");
  }
  for (double v : req.z) {
    if (!std::isfinite(v)) throw std::invalid_argument("projection: z not finite");
  }
}

namespace {

double edge_t(double za, double zb, double wa, double wb, double c) {
  return std::clamp((wa * za - wb * zb) / (wa + wb), -c, c);
}

}  // namespace

void project_edge(const ProjectionRequest& req, std::span<double> out) {
  validate_request(req);
  const auto& f = *req.component;
  if (f.family() == Family::edge_cut) {
    const double t = edge_t(req.z[0], req.z[1], req.w[0], req.w[1],
                            f.cardinality_profile()[1]);
    out[0] = t;
    out[1] = -t;
    return;
  }
  if (f.family() == Family::edge_set) {
    for (const auto& e : f.local_edges()) {
      const double t = edge_t(req.z[e.a], req.z[e.b], req.w[e.a], req.w[e.b],
                              e.weight);
      out[e.a] = t;
      out[e.b] = -t;
    }
    return;
  }
  throw std::invalid_argument("project_edge: component is not an edge family");
}

void project_dc(const ProjectionRequest& req, std::span<double> out) {
  validate_request(req);
  const auto& f = *req.component;
  const std::size_t m = f.size();
  struct Task {
    std::vector<int> in;
    std::vector<int> free;
  };
  std::vector<Task> stack;
  stack.push_back({{}, std::vector<int>(m)});
  std::iota(stack.back().free.begin(), stack.back().free.end(), 0);

  std::vector<char> state(m);
  std::vector<char> chosen;
  std::vector<double> yhat(m, 0.0);
  std::size_t solves = 0;
  const std::size_t budget = 2 * m + 1;

  while (!stack.empty()) {
    Task t = std::move(stack.back());
    stack.pop_back();
    std::fill(state.begin(), state.end(), 0);
    for (int j : t.in) state[j] = 1;
    const double f_in = f.evaluate_local(state);
    for (int j : t.free) state[j] = 1;
    const double f_all = f.evaluate_local(state);
    for (int j : t.free) state[j] = 2;

    double zsum = 0.0;
    double inv_w = 0.0;
    for (int j : t.free) {
      zsum += req.z[j];
      inv_w += 1.0 / req.w[j];
    }
    const double lambda = (f_all - f_in - zsum) / inv_w;
    double scale = std::abs(f_all) + std::abs(f_in);
    for (int j : t.free) {
      yhat[j] = req.z[j] + lambda / req.w[j];
      scale += std::abs(yhat[j]);
    }
    if (t.free.size() == 1) {
      out[t.free[0]] = yhat[t.free[0]];
      continue;
    }
    if (++solves > budget) {
      std::vector<double> best(out.begin(), out.end());
      throw ProjectionError("project_dc: discrete-solve budget exhausted", best,
                            INFINITY);
    }
    const double min_value = f.minimize_restricted(state, yhat, chosen);
    std::vector<int> a;
    std::vector<int> rest;
    for (int j : t.free) (chosen[j] ? a : rest).push_back(j);
    if (min_value >= -1e-14 * (1.0 + scale) || a.empty() || rest.empty()) {
      for (int j : t.free) out[j] = yhat[j];
      continue;
    }
    // A keeps the current In with the rest excluded; the rest sees A added.
    Task contraction{t.in, std::move(rest)};
    contraction.in.insert(contraction.in.end(), a.begin(), a.end());
    stack.push_back(std::move(contraction));
    stack.push_back({std::move(t.in), std::move(a)});
  }
}

void project(const ProjectionRequest& req, std::span<double> out) {
  validate_request(req);
  switch (req.component->family()) {
    case Family::edge_cut:
    case Family::edge_set:
      project_edge(req, out);
      return;
    case Family::hyperedge_cut:
    case Family::concave_cardinality:
      project_dc(req, out);
      return;
    case Family::table:
      wolfe_min_norm(req, out);
      return;
  }
}

std::vector<double> project_edge(const ProjectionRequest& req) {
  std::vector<double> out(req.z.size());
  project_edge(req, out);
  return out;
}

std::vector<double> project_dc(const ProjectionRequest& req) {
  std::vector<double> out(req.z.size());
  project_dc(req, out);
  return out;
}

std::vector<double> wolfe_min_norm(const ProjectionRequest& req) {
  std::vector<double> out(req.z.size());
  wolfe_min_norm(req, out);
  return out;
}

std::vector<double> project(const ProjectionRequest& req) {
  std::vector<double> out(req.z.size());
  project(req, out);
  return out;
}

bool kkt_check(const SubmodularComponent& f, std::span<const double> y_star,
               std::span<const double> z, std::span<const double> w,
               double slack) {
  const std::size_t m = f.size();
  if (m > 8) throw std::invalid_argument("kkt_check: support larger than 8");
  if (y_star.size() != m || z.size() != m || w.size() != m) {
    throw std::invalid_argument("kkt_check: dimension mismatch");
  }
  const std::size_t count = std::size_t{1} << m;
  std::vector<double> values(count);
  for (std::size_t mask = 0; mask < count; ++mask) {
    values[mask] = f.evaluate_mask(mask);
    double s = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      if (mask >> j & 1U) s += y_star[j];
    }
    if (s > values[mask] + slack) return false;
    if (mask == count - 1 && std::abs(s - values[mask]) > slack) return false;
  }
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> v(m);
  do {
    std::size_t mask = 0;
    double prev = 0.0;
    for (int j : order) {
      mask |= std::size_t{1} << j;
      v[j] = values[mask] - prev;
      prev = values[mask];
    }
    double inner = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      inner += w[j] * (z[j] - y_star[j]) * (v[j] - y_star[j]);
    }
    if (inner > slack) return false;
  } while (std::next_permutation(order.begin(), order.end()));
  return true;
}

}  // namespace dsfm
