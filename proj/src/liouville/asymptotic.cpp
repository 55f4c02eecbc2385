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

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "nrq/errors.hpp"
#include "nrq/liouville.hpp"

namespace nrq {

namespace {

// Columns of V for the `count` smallest singular values, plus the largest of
// those singular values.
std::pair<Mat, double> smallest_singular_vectors(const Mat& m, int count) {
  Eigen::BDCSVD<Mat> svd(m, Eigen::ComputeFullV);
  const int n = static_cast<int>(m.cols());
  const double worst = count > 0 ? svd.singularValues()(n - count) : 0.0;
  return {svd.matrixV().rightCols(count), worst};
}

}  // namespace

AsymptoticLimit asymptotic_limit(const Lindbladian& l) {
  const Mat gen = liouvillian(l).matrix();
  const int n = static_cast<int>(gen.rows());
  const double scale = gen.cwiseAbs().rowwise().sum().maxCoeff();
  const double thr = std::max(tol::kernel, 1e-12 * scale);

  Eigen::ComplexEigenSolver<Mat> es(gen, false);
  if (es.info() != Eigen::Success) throw NumericError("asymptotic_limit: eigensolver failed");
  const Vec& ev = es.eigenvalues();
  int kernel_dim = 0;
  double slowest = 0.0;
  for (int i = 0; i < n; ++i) {
    const double re = ev(i).real();
    const double im = ev(i).imag();
    if (re > thr) {
      throw NumericError("asymptotic_limit: unstable generator, eigenvalue with Re = " + std::to_string(re));
    }
    if (std::abs(re) <= thr) {
      if (std::abs(im) > thr) {
        throw NumericError("asymptotic_limit: persistent oscillation, eigenvalue " + std::to_string(re) + " + " +
                           std::to_string(im) + "i has no long-time limit");
      }
      ++kernel_dim;
    } else {
      slowest = slowest == 0.0 ? -re : std::min(slowest, -re);
    }
  }
  if (kernel_dim == 0) throw NumericError("asymptotic_limit: generator has no stationary state");

  const auto [right, sr] = smallest_singular_vectors(gen, kernel_dim);
  const auto [left, sl] = smallest_singular_vectors(gen.adjoint(), kernel_dim);
  // A zero eigenvalue with a Jordan block shows up as a kernel that is
  // smaller than its algebraic multiplicity.
  const double kernel_cut = std::sqrt(thr) * std::max(1.0, scale);
  if (sr > kernel_cut || sl > kernel_cut) {
    throw NumericError("asymptotic_limit: stationary eigenvalue is defective, no spectral projector");
  }
  const Mat overlap = left.adjoint() * right;
  Eigen::FullPivLU<Mat> lu(overlap);
  if (!lu.isInvertible()) throw NumericError("asymptotic_limit: left and right kernels are not dual");
  Mat proj = right * lu.solve(left.adjoint());
  return {Superoperator(l.space(), std::move(proj)), kernel_dim, slowest};
}

}  // namespace nrq
