#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dsfm/component.hpp"

namespace dsfm {

/// Weighted projection argmin_{y∈B(F)} Σ_j w_j (y_j − z_j)², all vectors local
/// to the component support.
struct ProjectionRequest {
  const SubmodularComponent* component = nullptr;
  std::span<const double> z;
  std::span<const double> w;
  double tolerance = 1e-10;
};

class ProjectionError : public std::runtime_error {
 public:
  ProjectionError(const std::string& what, std::vector<double> best,
                  double residual)
      : std::runtime_error(what), best_(std::move(best)), residual_(residual) {}
  const std::vector<double>& best_iterate() const { return best_; }
  double residual() const { return residual_; }

 private:
  std::vector<double> best_;
  double residual_;
};

/// Throws std::invalid_argument on bad sizes, non-positive weights, weight
/// ratio above 1e12 or non-positive tolerance.
void validate_request(const ProjectionRequest& req);

/// Closed form for edge_cut, and edge by edge for edge_set.
void project_edge(const ProjectionRequest& req, std::span<double> out);
/// Divide and conquer on discrete minimizers (any family).
void project_dc(const ProjectionRequest& req, std::span<double> out);
/// Wolfe's min-norm point in the rescaled space u = √w ⊙ (y − z).
void wolfe_min_norm(const ProjectionRequest& req, std::span<double> out);
/// Family dispatch: edge families → closed form, cardinality families →
/// divide and conquer, table → Wolfe.
void project(const ProjectionRequest& req, std::span<double> out);

std::vector<double> project_edge(const ProjectionRequest& req);
std::vector<double> project_dc(const ProjectionRequest& req);
std::vector<double> wolfe_min_norm(const ProjectionRequest& req);
std::vector<double> project(const ProjectionRequest& req);

/// y_star ∈ B(F) within slack (all subsets) and ⟨z − y_star, v − y_star⟩_w ≤
/// slack for every greedy vertex v (all |S_r|! orders). |S_r| ≤ 8.
bool kkt_check(const SubmodularComponent& f, std::span<const double> y_star,
               std::span<const double> z, std::span<const double> w,
               double slack);

}  // namespace dsfm
