// Copyright 2026 The vqebench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// COBYLA-style linear-model trust-region method without nonlinear
// constraints. The model is the linear interpolant on an n+1 point simplex;
// each step minimizes it over a ball of radius rho around the best vertex.
// rho only shrinks once the simplex passes the geometry tests (every vertex
// within 2 rho of the best, every face distance at least rho / 4).

#include <Eigen/Dense>

#include "optim_detail.hpp"

namespace vqeb::detail {
namespace {

constexpr double kFarFactor = 2.0;
constexpr double kFlatFactor = 0.25;
constexpr double kAcceptRatio = 0.1;

class Simplex {
 public:
  Simplex(Evaluator& eval, std::vector<double> x0, double radius) : eval_(eval), n_(x0.size()) {
    values_.push_back(eval_(x0));
    vertices_.push_back(std::move(x0));
    for (std::size_t j = 0; j < n_; ++j) add_axis_vertex(j, radius);
  }

  void rebuild(double radius) {
    const std::size_t b = best();
    std::vector<double> base = vertices_[b];
    const double fb = values_[b];
    vertices_.assign(1, base);
    values_.assign(1, fb);
    for (std::size_t j = 0; j < n_; ++j) add_axis_vertex(j, radius);
  }

  std::size_t best() const {
    return static_cast<std::size_t>(std::min_element(values_.begin(), values_.end()) - values_.begin());
  }

  const std::vector<double>& vertex(std::size_t i) const { return vertices_[i]; }
  double value(std::size_t i) const { return values_[i]; }
  std::size_t size() const { return vertices_.size(); }

  void replace(std::size_t i, std::vector<double> x, double fx) {
    vertices_[i] = std::move(x);
    values_[i] = fx;
  }

  /// Difference matrix: row k is vertex others[k] minus the best vertex.
  Eigen::MatrixXd differences(std::size_t b, const std::vector<std::size_t>& others) const {
    Eigen::MatrixXd d(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(n_));
    for (std::size_t k = 0; k < others.size(); ++k)
      for (std::size_t j = 0; j < n_; ++j)
        d(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = vertices_[others[k]][j] - vertices_[b][j];
    return d;
  }

 private:
  void add_axis_vertex(std::size_t j, double radius) {
    std::vector<double> v = vertices_.front();
    const double up = v[j] + radius;
    const double down = v[j] - radius;
    if (up <= eval_.upper(j)) {
      v[j] = up;
    } else if (down >= eval_.lower(j)) {
      v[j] = down;
    } else {
      // Box narrower than the radius: take the wider side.
      v[j] = (eval_.upper(j) - v[j] >= v[j] - eval_.lower(j)) ? eval_.upper(j) : eval_.lower(j);
    }
    values_.push_back(eval_(v));
    vertices_.push_back(std::move(v));
  }

  Evaluator& eval_;
  std::size_t n_;
  std::vector<std::vector<double>> vertices_;
  std::vector<double> values_;
};

}  // namespace

void run_linear_trust(Evaluator& eval, std::vector<double> x, const LinearTrustOptions& opts) {
  const std::size_t n = eval.dimension();
  double rho = opts.initial_radius;
  Simplex simplex(eval, std::move(x), rho);

  while (rho >= opts.final_radius) {
    const std::size_t b = simplex.best();
    std::vector<std::size_t> others;
    for (std::size_t i = 0; i < simplex.size(); ++i)
      if (i != b) others.push_back(i);

    const Eigen::MatrixXd d = simplex.differences(b, others);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(d);
    if (lu.rank() < static_cast<Eigen::Index>(n)) {
      simplex.rebuild(rho);
      continue;
    }
    Eigen::VectorXd df(static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < n; ++k) df(static_cast<Eigen::Index>(k)) = simplex.value(others[k]) - simplex.value(b);
    Eigen::VectorXd g = lu.solve(df);
    // Column k of inv(D) is the gradient of the barycentric weight of others[k].
    const Eigen::MatrixXd w = lu.inverse();

    const auto& xb = simplex.vertex(b);
    const double fb = simplex.value(b);

    // Geometry diagnostics.
    std::size_t far_k = n;
    double far_dist = kFarFactor * rho;
    std::size_t flat_k = n;
    double flat_dist = kFlatFactor * rho;
    for (std::size_t k = 0; k < n; ++k) {
      const double dist = d.row(static_cast<Eigen::Index>(k)).norm();
      if (dist > far_dist) {
        far_dist = dist;
        far_k = k;
      }
      const double face = 1.0 / w.col(static_cast<Eigen::Index>(k)).norm();
      if (face < flat_dist) {
        flat_dist = face;
        flat_k = k;
      }
    }
    const bool geometry_ok = far_k == n && flat_k == n;

    // Trust-region step on the linear model, with the gradient projected
    // onto the feasible directions at active bounds.
    std::vector<double> step(n);
    for (std::size_t j = 0; j < n; ++j) {
      double gj = g(static_cast<Eigen::Index>(j));
      if ((xb[j] <= eval.lower(j) && gj > 0.0) || (xb[j] >= eval.upper(j) && gj < 0.0)) gj = 0.0;
      step[j] = -gj;
    }
    const double gnorm = norm2(step);
    bool success = false;
    if (gnorm > 0.0 && std::isfinite(gnorm)) {
      std::vector<double> trial(n);
      for (std::size_t j = 0; j < n; ++j) trial[j] = xb[j] + rho * step[j] / gnorm;
      eval.project(trial);
      double predicted = 0.0;
      double moved = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        predicted -= g(static_cast<Eigen::Index>(j)) * (trial[j] - xb[j]);
        moved += (trial[j] - xb[j]) * (trial[j] - xb[j]);
      }
      if (std::sqrt(moved) > 0.1 * rho) {
        const double ft = eval(trial);
        const double ratio = predicted > 0.0 ? (fb - ft) / predicted : -1.0;
        success = ratio >= kAcceptRatio;

        // Replace the vertex whose removal keeps the simplex best conditioned.
        Eigen::VectorXd delta(static_cast<Eigen::Index>(n));
        for (std::size_t j = 0; j < n; ++j) delta(static_cast<Eigen::Index>(j)) = trial[j] - xb[j];
        const Eigen::VectorXd lambda = w.transpose() * delta;
        std::size_t pick = n;
        double score = -1.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double dist = d.row(static_cast<Eigen::Index>(k)).norm() / rho;
          const double s = std::abs(lambda(static_cast<Eigen::Index>(k))) * std::max(1.0, dist * dist);
          if (s > score) {
            score = s;
            pick = k;
          }
        }
        if (ft < fb || (pick < n && ft < simplex.value(others[pick]))) {
          simplex.replace(others[pick], std::move(trial), ft);
        }
      }
    }
    if (success) continue;

    if (geometry_ok) {
      rho *= opts.shrink;
      continue;
    }
    // Geometry step: move the offending vertex to distance rho from the best
    // along the direction that best restores the simplex volume.
    const std::size_t k = far_k != n ? far_k : flat_k;
    Eigen::VectorXd dir = w.col(static_cast<Eigen::Index>(k));
    dir /= dir.norm();
    if (g.dot(dir) > 0.0) dir = -dir;
    std::vector<double> v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = xb[j] + rho * dir(static_cast<Eigen::Index>(j));
    eval.project(v);
    const double fv = eval(v);
    simplex.replace(others[k], std::move(v), fv);
  }
}

}  // namespace vqeb::detail
