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

#include "vqebench/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vqeb {

JacobiResult jacobi_eigenvalues(std::span<const double> matrix, int n, JacobiOptions opts) {
  if (n < 1 || matrix.size() != static_cast<std::size_t>(n) * n) {
    throw std::invalid_argument("jacobi_eigenvalues: matrix is not n x n");
  }
  std::vector<double> a(matrix.begin(), matrix.end());
  auto at = [&a, n](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };

  double frob = 0.0;
  for (double v : a) frob += v * v;
  frob = std::sqrt(frob);

  JacobiResult result;
  auto off_norm = [&] {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) s += at(i, j) * at(i, j);
    return std::sqrt(s);
  };

  const double threshold = opts.off_diagonal_tol * std::max(frob, 1e-300);
  for (result.sweeps = 0; result.sweeps < opts.max_sweeps; ++result.sweeps) {
    if (off_norm() <= threshold) {
      result.converged = true;
      break;
    }
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double app = at(p, p);
        const double aqq = at(q, q);
        // Rotation angle that annihilates a(p, q); t = tan(theta), smaller root.
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = at(k, p);
          const double akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = at(p, k);
          const double aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
        at(p, q) = 0.0;
        at(q, p) = 0.0;
      }
    }
  }
  if (!result.converged && off_norm() <= threshold) result.converged = true;

  result.eigenvalues.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) result.eigenvalues[i] = at(i, i);
  std::sort(result.eigenvalues.begin(), result.eigenvalues.end());
  return result;
}

}  // namespace vqeb
