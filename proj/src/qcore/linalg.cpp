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

#include "nrq/linalg.hpp"

#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

namespace nrq {

Mat expm(const Mat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("expm: matrix is not square");
  if (!m.allFinite()) throw std::invalid_argument("expm: non-finite entries");
  if (m.size() == 0) return m;
  Mat out = m.exp();
  if (!out.allFinite()) throw std::overflow_error("expm: result overflowed");
  return out;
}

double trace_norm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues().sum();
}

double trace_norm(const Operator& op) { return trace_norm(op.data()); }

double max_abs_diff(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("max_abs_diff: shape mismatch");
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

double hermiticity_defect(const Mat& m) { return max_abs_diff(m, m.adjoint()); }

Mat hermitian_part(const Mat& m) { return 0.5 * (m + m.adjoint()); }

RVec hermitian_eigenvalues(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

Mat kernel_basis(const Mat& m, double cutoff) {
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  const RVec& s = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < s.size(); ++i) {
    if (s(i) >= cutoff) ++rank;
  }
  const int n = static_cast<int>(m.cols());
  return svd.matrixV().rightCols(n - rank);
}

Mat range_basis(const Mat& m, double cutoff) {
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullU);
  const RVec& s = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < s.size(); ++i) {
    if (s(i) >= cutoff) ++rank;
  }
  return svd.matrixU().leftCols(rank);
}

Mat ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Mat z(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      const double re = g(rng);
      const double im = g(rng);
      z(i, j) = cplx(re, im) / std::sqrt(2.0);
    }
  }
  return z;
}

Mat haar_unitary(int d, Rng& rng) {
  if (d < 1) throw std::invalid_argument("haar_unitary: dimension must be positive");
  const Mat z = ginibre(d, d, rng);
  Eigen::HouseholderQR<Mat> qr(z);
  Mat q = qr.householderQ() * Mat::Identity(d, d);
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const cplx rjj = r(j, j);
    const double a = std::abs(rjj);
    if (a > 0.0) q.col(j) *= rjj / a;
  }
  return q;
}

Vec random_pure_vector(int d, Rng& rng) {
  if (d < 1) throw std::invalid_argument("random_pure_vector: dimension must be positive");
  Vec v = ginibre(d, 1, rng).col(0);
  return v / v.norm();
}

Mat random_density_matrix(int d, Rng& rng) {
  const Mat g = ginibre(d, d, rng);
  Mat rho = g * g.adjoint();
  rho /= rho.trace().real();
  return hermitian_part(rho);
}

Mat random_hermitian(int d, Rng& rng) {
  const Mat g = ginibre(d, d, rng);
  return (g + g.adjoint()) / std::sqrt(2.0);
}

Operator haar_unitary(const CompositeSpace& space, std::uint64_t seed) {
  Rng rng(seed);
  return Operator(space, haar_unitary(space.dim(), rng));
}

Ket random_pure_state(const CompositeSpace& space, std::uint64_t seed) {
  Rng rng(seed);
  return Ket::normalized(space, random_pure_vector(space.dim(), rng));
}

Operator random_density(const CompositeSpace& space, std::uint64_t seed) {
  Rng rng(seed);
  return Operator(space, random_density_matrix(space.dim(), rng));
}

std::variant<Operator, Ket> random_sample(SampleKind kind, int dim, std::uint64_t seed) {
  if (dim < 1) throw std::invalid_argument("random_sample: dimension must be positive");
  const CompositeSpace space({dim});
  switch (kind) {
    case SampleKind::haar_unitary:
      return haar_unitary(space, seed);
    case SampleKind::pure_state:
      return random_pure_state(space, seed);
    case SampleKind::density:
      return random_density(space, seed);
  }
  throw std::invalid_argument("random_sample: unknown kind");
}

}  // namespace nrq
