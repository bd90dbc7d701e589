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

#pragma once

#include <span>
#include <vector>

namespace vqeb {

struct JacobiOptions {
  double off_diagonal_tol = 1e-12;  // relative to the Frobenius norm
  int max_sweeps = 100;
};

struct JacobiResult {
  std::vector<double> eigenvalues;  // ascending
  int sweeps = 0;
  bool converged = false;
};

/// Eigenvalues of a dense symmetric n x n matrix (row-major) by cyclic Jacobi
/// rotations.
JacobiResult jacobi_eigenvalues(std::span<const double> matrix, int n, JacobiOptions opts = {});

}  // namespace vqeb
