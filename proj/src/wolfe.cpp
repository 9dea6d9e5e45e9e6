#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "dsfm/projection.hpp"

namespace dsfm {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Affine minimizer of ‖Σ α_i P_i‖ subject to Σ α_i = 1.
VectorXd affine_minimizer(const std::vector<VectorXd>& pts) {
  const auto k = static_cast<Eigen::Index>(pts.size());
  VectorXd alpha(k);
  if (k == 1) {
    alpha(0) = 1.0;
    return alpha;
  }
  const auto m = pts[0].size();
  MatrixXd diff(m, k - 1);
  for (Eigen::Index i = 1; i < k; ++i) diff.col(i - 1) = pts[i] - pts[0];
  VectorXd beta = diff.colPivHouseholderQr().solve(-pts[0]);
  alpha(0) = 1.0 - beta.sum();
  alpha.tail(k - 1) = beta;
  return alpha;
}

}  // namespace

void wolfe_min_norm(const ProjectionRequest& req, std::span<double> out) {
  validate_request(req);
  const auto& f = *req.component;
  const std::size_t m = f.size();
  const auto mi = static_cast<Eigen::Index>(m);

  VectorXd sw(mi);
  VectorXd z(mi);
  for (std::size_t j = 0; j < m; ++j) {
    sw(j) = std::sqrt(req.w[j]);
    z(j) = req.z[j];
  }

  std::vector<double> dir(m);
  std::vector<double> vbuf(m);
  auto vertex = [&](VectorXd& v) {
    f.greedy_vertex(dir, vbuf);
    v.resize(mi);
    for (std::size_t j = 0; j < m; ++j) v(j) = vbuf[j];
  };

  std::vector<VectorXd> verts;  // original space
  std::vector<VectorXd> pts;    // rescaled space
  std::vector<double> lambda;

  for (std::size_t j = 0; j < m; ++j) dir[j] = req.w[j] * req.z[j];
  VectorXd v;
  vertex(v);
  verts.push_back(v);
  pts.push_back(sw.cwiseProduct(v - z));
  lambda.push_back(1.0);
  VectorXd x = pts[0];

  auto current_y = [&]() {
    VectorXd y = VectorXd::Zero(mi);
    for (std::size_t i = 0; i < verts.size(); ++i) y += lambda[i] * verts[i];
    return y;
  };

  double scale = pts[0].squaredNorm();
  const double tol2 = req.tolerance * req.tolerance;
  const std::size_t cap = 10 * m * m + 1000;
  double gap = INFINITY;
  bool done = false;

  for (std::size_t iter = 0; iter < cap; ++iter) {
    for (std::size_t j = 0; j < m; ++j) dir[j] = -x(j) * sw(j);
    vertex(v);
    VectorXd p = sw.cwiseProduct(v - z);
    scale = std::max(scale, p.squaredNorm());
    gap = x.squaredNorm() - x.dot(p);
    if (gap <= std::max(tol2, 1e-14 * scale)) {
      done = true;
      break;
    }
    if (std::any_of(verts.begin(), verts.end(),
                    [&](const VectorXd& u) { return u == v; })) {
      done = true;  // no further progress possible in floating point
      break;
    }
    verts.push_back(v);
    pts.push_back(p);
    lambda.push_back(0.0);

    for (;;) {
      VectorXd alpha = affine_minimizer(pts);
      if ((alpha.array() > 1e-15).all()) {
        for (std::size_t i = 0; i < lambda.size(); ++i) lambda[i] = alpha(i);
        break;
      }
      double theta = 1.0;
      for (std::size_t i = 0; i < lambda.size(); ++i) {
        if (alpha(i) <= 1e-15 && lambda[i] - alpha(i) > 0.0) {
          theta = std::min(theta, lambda[i] / (lambda[i] - alpha(i)));
        }
      }
      std::size_t keep = 0;
      double total = 0.0;
      for (std::size_t i = 0; i < lambda.size(); ++i) {
        const double li = (1.0 - theta) * lambda[i] + theta * alpha(i);
        if (li > 1e-15) {
          lambda[keep] = li;
          verts[keep] = std::move(verts[i]);
          pts[keep] = std::move(pts[i]);
          total += li;
          ++keep;
        }
      }
      if (keep == 0) {
        // numerical breakdown: restart from the newest vertex
        verts[0] = v;
        pts[0] = p;
        lambda[0] = 1.0;
        keep = 1;
        total = 1.0;
      }
      lambda.resize(keep);
      verts.resize(keep);
      pts.resize(keep);
      for (double& li : lambda) li /= total;
      if (keep == 1) break;
    }
    x = VectorXd::Zero(mi);
    for (std::size_t i = 0; i < pts.size(); ++i) x += lambda[i] * pts[i];
  }

  const VectorXd y = current_y();
  if (!done) {
    throw ProjectionError("wolfe_min_norm: iteration cap exceeded",
                          std::vector<double>(y.data(), y.data() + m), gap);
  }
  for (std::size_t j = 0; j < m; ++j) out[j] = y(j);
}

}  // namespace dsfm
