// Copyright 2026 The nrq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <vector>

#include "nrq/constants.hpp"

// Dense complex primal-dual interior point method for small block-diagonal
// semidefinite programs:
//
//   (P) max <C, X>  s.t. <A_i, X> = b_i, X >= 0
//   (D) min b^T y   s.t. S = sum_i y_i A_i - C >= 0
//
// with <A, X> = Re Tr(A X), Hermitian blocks and real y. Search direction is
// HKM with a Mehrotra predictor-corrector.
namespace nrq::sdp {

struct Entry {
  int row;
  int col;
  cplx value;
};

// One Hermitian block of a constraint matrix. Both (r, c) and (c, r)
// entries must be listed.
struct SparseBlock {
  int block;
  std::vector<Entry> entries;
};

struct Constraint {
  std::vector<SparseBlock> blocks;
};

struct Problem {
  std::vector<int> block_dims;
  std::vector<Mat> c;
  std::vector<Constraint> a;
  RVec b;
};

struct Options {
  double tol = 1e-10;
  int max_iter = 120;
  double step_fraction = 0.98;
};

struct Solution {
  std::vector<Mat> x;
  std::vector<Mat> s;
  RVec y;
  double primal = 0.0;
  double dual = 0.0;
  double rel_gap = 0.0;
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  int iterations = 0;
  bool converged = false;
};

Solution solve(const Problem& problem, const Options& opts = {});

}  // namespace nrq::sdp
