#include "dsfm/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dsfm {

WeightVector::WeightVector(std::vector<double> values) : values_(std::move(values)) {
  for (double v : values_) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("WeightVector: entries must be positive");
    }
  }
}

WeightVector WeightVector::ones(std::size_t n) {
  return WeightVector(std::vector<double>(n, 1.0));
}

Decomposition::Decomposition(int n, std::vector<SubmodularComponent> components,
                             std::vector<double> x0, double tau)
    : n_(n), tau_(tau), x0_(std::move(x0)), components_(std::move(components)) {
  if (n < 1) throw std::invalid_argument("Decomposition: N must be >= 1");
  if (components_.empty()) {
    throw std::invalid_argument("Decomposition: needs at least one component");
  }
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw std::invalid_argument("Decomposition: tau must be positive");
  }
  if (x0_.empty()) x0_.assign(static_cast<std::size_t>(n), 0.0);
  if (x0_.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("Decomposition: x0 must have length N");
  }
  for (double v : x0_) {
    if (!std::isfinite(v)) throw std::invalid_argument("Decomposition: x0 not finite");
  }
  offsets_.reserve(components_.size() + 1);
  offsets_.push_back(0);
  scaled_.reserve(components_.size());
  for (std::size_t r = 0; r < components_.size(); ++r) {
    const auto s = components_[r].support();
    if (s.empty() || s.back() >= n) {
      throw std::invalid_argument("Decomposition: component " +
                                  std::to_string(r + 1) +
                                  " has a support outside [N]");
    }
    offsets_.push_back(offsets_.back() + s.size());
    scaled_.push_back(tau == 1.0 ? components_[r] : components_[r].scaled(tau));
  }
}

IncidenceProfile compute_incidence(const Decomposition& d) {
  IncidenceProfile p;
  const auto n = static_cast<std::size_t>(d.n());
  p.mu.assign(n, 0);
  p.element_to_components.assign(n, {});
  for (std::size_t r = 0; r < d.num_components(); ++r) {
    for (Element e : d.support(r)) {
      ++p.mu[e];
      p.element_to_components[e].push_back(static_cast<int>(r));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    p.mu_l1 += p.mu[i];
    if (p.mu[i] == 0) p.isolated.push_back(static_cast<Element>(i));
  }
  return p;
}

BlockVector::BlockVector(const Decomposition& d, double fill)
    : offsets_(d.block_offsets().begin(), d.block_offsets().end()),
      data_(d.total_block_size(), fill) {}

BlockVector::BlockVector(std::vector<std::size_t> offsets, double fill)
    : offsets_(std::move(offsets)) {
  if (offsets_.empty()) offsets_.push_back(0);
  data_.assign(offsets_.back(), fill);
}

bool BlockVector::conforms(const Decomposition& d) const {
  const auto o = d.block_offsets();
  return std::equal(o.begin(), o.end(), offsets_.begin(), offsets_.end());
}

void apply_A(const BlockVector& y, const Decomposition& d, std::span<double> out) {
  if (!y.conforms(d) || out.size() != static_cast<std::size_t>(d.n())) {
    throw std::invalid_argument("apply_A: dimension mismatch");
  }
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t r = 0; r < d.num_components(); ++r) {
    const auto s = d.support(r);
    const auto b = y.block(r);
    for (std::size_t j = 0; j < s.size(); ++j) out[s[j]] += b[j];
  }
}

std::vector<double> apply_A(const BlockVector& y, const Decomposition& d) {
  std::vector<double> out(static_cast<std::size_t>(d.n()));
  apply_A(y, d, out);
  return out;
}

double skewed_norm(std::span<const double> z, std::span<const double> w) {
  if (z.size() != w.size()) {
    throw std::invalid_argument("skewed_norm: dimension mismatch");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) s += w[i] * z[i] * z[i];
  return std::sqrt(s);
}

double skewed_norm(std::span<const double> z, const WeightVector& w) {
  return skewed_norm(z, w.values());
}

double block_skewed_norm(const BlockVector& y, const BlockVector& theta) {
  if (y.offsets().size() != theta.offsets().size() ||
      !std::equal(y.offsets().begin(), y.offsets().end(),
                  theta.offsets().begin())) {
    throw std::invalid_argument("block_skewed_norm: dimension mismatch");
  }
  const auto a = y.data();
  const auto t = theta.data();
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += t[i] * a[i] * a[i];
  return std::sqrt(s);
}

double theta_one_inf(const BlockVector& theta, const Decomposition& d) {
  if (!theta.conforms(d)) {
    throw std::invalid_argument("theta_one_inf: dimension mismatch");
  }
  std::vector<double> best(static_cast<std::size_t>(d.n()), 0.0);
  for (std::size_t r = 0; r < d.num_components(); ++r) {
    const auto s = d.support(r);
    const auto b = theta.block(r);
    for (std::size_t j = 0; j < s.size(); ++j) {
      best[s[j]] = std::max(best[s[j]], b[j]);
    }
  }
  double total = 0.0;
  for (double v : best) total += v;
  return total;
}

BlockVector restrict_to_blocks(const Decomposition& d, std::span<const double> w) {
  if (w.size() != static_cast<std::size_t>(d.n())) {
    throw std::invalid_argument("restrict_to_blocks: expected length N");
  }
  BlockVector out(d);
  for (std::size_t r = 0; r < d.num_components(); ++r) {
    const auto s = d.support(r);
    auto b = out.block(r);
    for (std::size_t j = 0; j < s.size(); ++j) b[j] = w[s[j]];
  }
  return out;
}

double discrete_objective(const Decomposition& d, std::span<const char> member) {
  if (member.size() != static_cast<std::size_t>(d.n())) {
    throw std::invalid_argument("discrete_objective: expected length N");
  }
  std::vector<char> local;
  double total = 0.0;
  for (std::size_t r = 0; r < d.num_components(); ++r) {
    const auto s = d.support(r);
    local.resize(s.size());
    for (std::size_t j = 0; j < s.size(); ++j) local[j] = member[s[j]];
    total += d.scaled(r).evaluate_local(local);
  }
  const auto x0 = d.x0();
  for (std::size_t i = 0; i < member.size(); ++i) {
    if (member[i]) total -= x0[i];
  }
  return total;
}

double discrete_objective(const Decomposition& d, std::span<const Element> set) {
  std::vector<char> member(static_cast<std::size_t>(d.n()), 0);
  for (Element e : set) {
    if (e < 0 || e >= d.n()) {
      throw std::out_of_range("discrete_objective: element outside [N]");
    }
    member[e] = 1;
  }
  return discrete_objective(d, std::span<const char>(member));
}

DiscreteSolution exhaustive_dsfm(const Decomposition& d) {
  const int n = d.n();
  if (n > 20) throw std::invalid_argument("exhaustive_dsfm: N must be <= 20");
  DiscreteSolution best;
  best.value = 0.0;  // empty set
  std::vector<char> member(static_cast<std::size_t>(n));
  std::vector<Element> set;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
    set.clear();
    for (int i = 0; i < n; ++i) {
      member[i] = (mask >> i) & 1U;
      if (member[i]) set.push_back(i);
    }
    const double v = discrete_objective(d, std::span<const char>(member));
    if (v < best.value ||
        (v == best.value && std::lexicographical_compare(
                                set.begin(), set.end(), best.set.begin(),
                                best.set.end()))) {
      best.value = v;
      best.set = set;
    }
  }
  return best;
}

}  // namespace dsfm
