#include "dsfm/component.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace dsfm {

namespace {

constexpr std::size_t kMaxTableSize = 12;

bool is_integer(double v) { return std::isfinite(v) && std::floor(v) == v; }

void require_positive_weight(double w, const char* what) {
  if (!(w > 0.0) || !std::isfinite(w)) {
    throw std::invalid_argument(std::string(what) +
                                ": weight must be positive and finite");
  }
}

std::vector<Element> sorted_unique_support(std::vector<Element> v,
                                           const char* what) {
  std::sort(v.begin(), v.end());
  if (std::adjacent_find(v.begin(), v.end()) != v.end()) {
    throw std::invalid_argument(std::string(what) + ": duplicate element");
  }
  if (!v.empty() && v.front() < 0) {
    throw std::invalid_argument(std::string(what) + ": negative element id");
  }
  return v;
}

// Local indices ordered by x descending, ties by ascending index.
void descending_order(std::span<const double> x, std::vector<int>& order) {
  order.resize(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return x[a] > x[b]; });
}

bool values_equal(double a, double b, bool exact) {
  return exact ? a == b : std::abs(a - b) <= 1e-9;
}

}  // namespace

std::string_view family_name(Family f) {
  switch (f) {
    case Family::edge_cut:
      return "edge_cut";
    case Family::hyperedge_cut:
      return "hyperedge_cut";
    case Family::concave_cardinality:
      return "concave_cardinality";
    case Family::table:
      return "table";
    case Family::edge_set:
      return "edge_set";
  }
  return "unknown";
}

SubmodularComponent SubmodularComponent::edge(Element u, Element v,
                                              double weight) {
  if (u == v) throw std::invalid_argument("edge: endpoints must differ");
  require_positive_weight(weight, "edge");
  SubmodularComponent f;
  f.family_ = Family::edge_cut;
  f.support_ = sorted_unique_support({u, v}, "edge");
  f.weight_ = weight;
  f.card_ = {0.0, weight, 0.0};
  f.finalize();
  return f;
}

SubmodularComponent SubmodularComponent::hyperedge(std::vector<Element> vertices,
                                                   double weight) {
  require_positive_weight(weight, "hyperedge");
  SubmodularComponent f;
  f.family_ = Family::hyperedge_cut;
  f.support_ = sorted_unique_support(std::move(vertices), "hyperedge");
  if (f.support_.size() < 2) {
    throw std::invalid_argument("hyperedge: needs at least two vertices");
  }
  const std::size_t m = f.support_.size();
  f.weight_ = weight;
  f.card_.assign(m + 1, weight);
  f.card_.front() = 0.0;
  f.card_.back() = 0.0;
  f.finalize();
  return f;
}

SubmodularComponent SubmodularComponent::concave_cardinality(
    std::vector<Element> region, double weight) {
  require_positive_weight(weight, "region");
  SubmodularComponent f;
  f.family_ = Family::concave_cardinality;
  f.support_ = sorted_unique_support(std::move(region), "region");
  if (f.support_.empty()) throw std::invalid_argument("region: empty support");
  const std::size_t m = f.support_.size();
  f.weight_ = weight;
  f.card_.resize(m + 1);
  for (std::size_t k = 0; k <= m; ++k) {
    f.card_[k] = weight * static_cast<double>(k) * static_cast<double>(m - k);
  }
  f.finalize();
  return f;
}

SubmodularComponent SubmodularComponent::table(std::vector<Element> elements,
                                               std::vector<double> values,
                                               double weight) {
  require_positive_weight(weight, "table");
  const std::size_t k = elements.size();
  if (k == 0) throw std::invalid_argument("table: empty support");
  if (k > kMaxTableSize) {
    throw std::invalid_argument("table: support larger than 12 elements");
  }
  if (values.size() != (std::size_t{1} << k)) {
    throw std::invalid_argument("table: expected 2^k values");
  }
  SubmodularComponent f;
  f.family_ = Family::table;
  f.support_ = sorted_unique_support(elements, "table");
  // listed position -> sorted position
  std::vector<int> to_sorted(k);
  for (std::size_t j = 0; j < k; ++j) {
    to_sorted[j] = static_cast<int>(
        std::lower_bound(f.support_.begin(), f.support_.end(), elements[j]) -
        f.support_.begin());
  }
  f.table_.assign(values.size(), 0.0);
  for (std::size_t mask = 0; mask < values.size(); ++mask) {
    std::size_t sorted_mask = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (mask >> j & 1U) sorted_mask |= std::size_t{1} << to_sorted[j];
    }
    if (!std::isfinite(values[mask])) {
      throw std::invalid_argument("table: non-finite value");
    }
    f.table_[sorted_mask] = weight * values[mask];
  }
  if (f.table_[0] != 0.0) {
    throw std::invalid_argument("table: F(empty set) must be 0");
  }
  f.finalize();
  if (!check_submodular(f)) {
    throw std::invalid_argument("table: function is not submodular");
  }
  return f;
}

SubmodularComponent SubmodularComponent::edge_set(std::vector<WeightedEdge> edges) {
  if (edges.empty()) throw std::invalid_argument("edges: empty edge set");
  SubmodularComponent f;
  f.family_ = Family::edge_set;
  std::vector<Element> endpoints;
  endpoints.reserve(2 * edges.size());
  for (const auto& e : edges) {
    if (e.u == e.v) throw std::invalid_argument("edges: endpoints must differ");
    require_positive_weight(e.weight, "edges");
    endpoints.push_back(e.u);
    endpoints.push_back(e.v);
  }
  f.support_ = sorted_unique_support(std::move(endpoints), "edges");
  for (const auto& e : edges) {
    int a = f.local_index(e.u);
    int b = f.local_index(e.v);
    if (a > b) std::swap(a, b);
    f.edges_.push_back({a, b, e.weight});
  }
  f.finalize();
  return f;
}

void SubmodularComponent::finalize() {
  integer_valued_ = true;
  switch (family_) {
    case Family::table:
      for (double v : table_) integer_valued_ = integer_valued_ && is_integer(v);
      break;
    case Family::edge_set:
      for (const auto& e : edges_) {
        integer_valued_ = integer_valued_ && is_integer(e.weight);
      }
      break;
    default:
      for (double v : card_) integer_valued_ = integer_valued_ && is_integer(v);
  }
}

int SubmodularComponent::local_index(Element e) const {
  auto it = std::lower_bound(support_.begin(), support_.end(), e);
  if (it == support_.end() || *it != e) return -1;
  return static_cast<int>(it - support_.begin());
}

double SubmodularComponent::evaluate(std::span<const Element> set) const {
  std::vector<char> member(support_.size(), 0);
  for (Element e : set) {
    int j = local_index(e);
    if (j >= 0) member[j] = 1;
  }
  return evaluate_local(member);
}

double SubmodularComponent::evaluate_local(std::span<const char> member) const {
  switch (family_) {
    case Family::table: {
      std::uint64_t mask = 0;
      for (std::size_t j = 0; j < member.size(); ++j) {
        if (member[j]) mask |= std::uint64_t{1} << j;
      }
      return table_[mask];
    }
    case Family::edge_set: {
      double total = 0.0;
      for (const auto& e : edges_) {
        if ((member[e.a] != 0) != (member[e.b] != 0)) total += e.weight;
      }
      return total;
    }
    default: {
      std::size_t count = 0;
      for (char c : member) count += c != 0;
      return card_[count];
    }
  }
}

double SubmodularComponent::evaluate_mask(std::uint64_t mask) const {
  if (family_ == Family::table) return table_[mask];
  std::vector<char> member(support_.size());
  for (std::size_t j = 0; j < member.size(); ++j) member[j] = (mask >> j) & 1U;
  return evaluate_local(member);
}

void SubmodularComponent::greedy_vertex(std::span<const double> x,
                                        std::span<double> out) const {
  const std::size_t m = support_.size();
  if (x.size() != m || out.size() != m) {
    throw std::invalid_argument("greedy_vertex: dimension mismatch");
  }
  if (family_ == Family::edge_set) {
    for (const auto& e : edges_) {
      // a < b locally, so ties favour a
      if (x[e.a] >= x[e.b]) {
        out[e.a] = e.weight;
        out[e.b] = -e.weight;
      } else {
        out[e.a] = -e.weight;
        out[e.b] = e.weight;
      }
    }
    return;
  }
  if (m == 2 && family_ != Family::table) {
    const bool first = x[0] >= x[1];
    out[first ? 0 : 1] = card_[1];
    out[first ? 1 : 0] = card_[2] - card_[1];
    return;
  }
  thread_local std::vector<int> order;
  descending_order(x, order);
  if (family_ == Family::table) {
    std::uint64_t mask = 0;
    double prev = 0.0;
    for (int j : order) {
      mask |= std::uint64_t{1} << j;
      const double cur = table_[mask];
      out[j] = cur - prev;
      prev = cur;
    }
    return;
  }
  for (std::size_t k = 0; k < m; ++k) out[order[k]] = card_[k + 1] - card_[k];
}

std::vector<double> SubmodularComponent::greedy_vertex(
    std::span<const double> x) const {
  std::vector<double> out(support_.size());
  greedy_vertex(x, out);
  return out;
}

double SubmodularComponent::lovasz(std::span<const double> x) const {
  thread_local std::vector<double> vertex;
  vertex.resize(support_.size());
  greedy_vertex(x, vertex);
  double total = 0.0;
  for (std::size_t j = 0; j < vertex.size(); ++j) total += vertex[j] * x[j];
  return total;
}

double SubmodularComponent::minimize_restricted(std::span<const char> state,
                                                std::span<const double> v,
                                                std::vector<char>& chosen) const {
  const std::size_t m = support_.size();
  if (state.size() != m || v.size() != m) {
    throw std::invalid_argument("minimize_restricted: dimension mismatch");
  }
  chosen.assign(m, 0);

  if (family_ == Family::edge_set) {
    double total = 0.0;
    for (const auto& e : edges_) {
      const char sa = state[e.a];
      const char sb = state[e.b];
      double best = 0.0;
      int best_pick = 0;  // bit 0: a, bit 1: b
      const bool a_in = sa == 1;
      const bool b_in = sb == 1;
      const double base = (a_in != b_in) ? e.weight : 0.0;
      for (int pick = 1; pick < 4; ++pick) {
        const bool take_a = pick & 1;
        const bool take_b = pick & 2;
        if ((take_a && sa != 2) || (take_b && sb != 2)) continue;
        const bool ia = a_in || take_a;
        const bool ib = b_in || take_b;
        double val = ((ia != ib) ? e.weight : 0.0) - base;
        if (take_a) val -= v[e.a];
        if (take_b) val -= v[e.b];
        const int size = take_a + take_b;
        const int best_size = (best_pick & 1) + (best_pick >> 1 & 1);
        if (val < best || (val == best && size < best_size)) {
          best = val;
          best_pick = pick;
        }
      }
      if (best_pick & 1) chosen[e.a] = 1;
      if (best_pick & 2) chosen[e.b] = 1;
      total += best;
    }
    return total;
  }

  if (family_ == Family::table) {
    std::uint64_t in_mask = 0;
    std::vector<int> free;
    for (std::size_t j = 0; j < m; ++j) {
      if (state[j] == 1) in_mask |= std::uint64_t{1} << j;
      if (state[j] == 2) free.push_back(static_cast<int>(j));
    }
    const double base = table_[in_mask];
    double best = 0.0;
    std::uint64_t best_sub = 0;
    int best_size = 0;
    const std::uint64_t count = std::uint64_t{1} << free.size();
    for (std::uint64_t sub = 1; sub < count; ++sub) {
      std::uint64_t mask = in_mask;
      double lin = 0.0;
      int size = 0;
      for (std::size_t t = 0; t < free.size(); ++t) {
        if (sub >> t & 1U) {
          mask |= std::uint64_t{1} << free[t];
          lin += v[free[t]];
          ++size;
        }
      }
      const double val = table_[mask] - base - lin;
      if (val < best || (val == best && size < best_size)) {
        best = val;
        best_sub = sub;
        best_size = size;
      }
    }
    for (std::size_t t = 0; t < free.size(); ++t) {
      if (best_sub >> t & 1U) chosen[free[t]] = 1;
    }
    return best;
  }

  // cardinality-based families: F(T) = g(|T|)
  std::size_t in_count = 0;
  std::vector<int> free;
  for (std::size_t j = 0; j < m; ++j) {
    if (state[j] == 1) ++in_count;
    if (state[j] == 2) free.push_back(static_cast<int>(j));
  }
  std::stable_sort(free.begin(), free.end(),
                   [&](int a, int b) { return v[a] > v[b]; });
  const double base = card_[in_count];
  double best = 0.0;
  std::size_t best_k = 0;
  double prefix = 0.0;
  for (std::size_t k = 1; k <= free.size(); ++k) {
    prefix += v[free[k - 1]];
    const double val = card_[in_count + k] - base - prefix;
    if (val < best) {
      best = val;
      best_k = k;
    }
  }
  for (std::size_t k = 0; k < best_k; ++k) chosen[free[k]] = 1;
  return best;
}

SubmodularComponent SubmodularComponent::scaled(double factor) const {
  require_positive_weight(factor, "scaled");
  SubmodularComponent f = *this;
  f.weight_ *= factor;
  for (double& g : f.card_) g *= factor;
  for (auto& e : f.edges_) e.weight *= factor;
  for (double& t : f.table_) t *= factor;
  f.finalize();
  return f;
}

bool check_submodular(const SubmodularComponent& f) {
  const std::size_t m = f.size();
  if (m > kMaxTableSize) {
    throw std::invalid_argument("check_submodular: support larger than 12");
  }
  const std::size_t count = std::size_t{1} << m;
  std::vector<double> values(count);
  for (std::size_t mask = 0; mask < count; ++mask) {
    values[mask] = f.evaluate_mask(mask);
  }
  const bool exact = f.integer_valued();
  for (std::size_t s = 0; s < count; ++s) {
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t bi = std::size_t{1} << i;
      if (s & bi) continue;
      for (std::size_t j = i + 1; j < m; ++j) {
        const std::size_t bj = std::size_t{1} << j;
        if (s & bj) continue;
        const double lhs = values[s | bi] + values[s | bj];
        const double rhs = values[s] + values[s | bi | bj];
        if (exact ? lhs < rhs : lhs < rhs - 1e-9) return false;
      }
    }
  }
  return true;
}

bool detect_incidence(const SubmodularComponent& f, Element i, int n) {
  if (i < 0 || i >= n) throw std::out_of_range("detect_incidence: element");
  const bool exact = f.integer_valued();
  const std::array<Element, 1> single{i};
  const double singleton = f.evaluate(single);
  std::vector<Element> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);
  const double full = f.evaluate(all);
  all.erase(all.begin() + i);
  const double without = f.evaluate(all);
  return !(values_equal(singleton, 0.0, exact) &&
           values_equal(full, without, exact));
}

double base_polytope_violation(const SubmodularComponent& f,
                               std::span<const double> y) {
  const std::size_t m = f.size();
  std::vector<char> state(m, 2);
  std::vector<char> chosen;
  const double min_slack = f.minimize_restricted(state, y, chosen);
  std::vector<char> all(m, 1);
  const double total = std::accumulate(y.begin(), y.end(), 0.0);
  return std::max(-min_slack, std::abs(total - f.evaluate_local(all)));
}

}  // namespace dsfm
