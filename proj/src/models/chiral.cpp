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

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "nrq/linalg.hpp"
#include "nrq/models.hpp"

namespace nrq {

namespace {

Eigen::SelfAdjointEigenSolver<Mat> hermitian_eig(const Mat& m, const char* who) {
  if (m.rows() != m.cols() || hermiticity_defect(m) > tol::hermiticity) {
    throw std::invalid_argument(std::string(who) + ": operator is not Hermitian");
  }
  return Eigen::SelfAdjointEigenSolver<Mat>(hermitian_part(m));
}

}  // namespace

Lindbladian chiral_cascade(double gamma_a, double gamma_c, double lambda, const Operator& m_b, int n_max_a,
                           int n_max_c) {
  if (!(gamma_a >= 0.0) || !(gamma_c >= 0.0)) throw std::invalid_argument("chiral_cascade: negative rate");
  if (n_max_a < 1 || n_max_c < 1) throw std::invalid_argument("chiral_cascade: truncations must be >= 1");
  if (!m_b.is_hermitian()) throw std::invalid_argument("chiral_cascade: M_B is not Hermitian");
  std::vector<int> dims{n_max_a + 1};
  for (int d : m_b.space().dims()) dims.push_back(d);
  if (m_b.space().num_sites() != 1) throw std::invalid_argument("chiral_cascade: B must be a single site");
  dims.push_back(n_max_c + 1);
  const CompositeSpace space(dims);
  const Mat a = embed(ops::destroy(n_max_a + 1), space, 0);
  const Mat m = embed(m_b.data(), space, 1);
  const Mat c = embed(ops::destroy(n_max_c + 1), space, 2);
  const Mat h = 0.5 * std::sqrt(gamma_a * gamma_c) * (a.adjoint() * c + c.adjoint() * a) +
                0.5 * lambda * m * c.adjoint() * c;
  const Mat jump = std::sqrt(gamma_a) * a - kI * std::sqrt(gamma_c) * c;
  return Lindbladian(space, Operator(space, hermitian_part(h)), {{1.0, Operator(space, jump)}});
}

Mat effective_u_b(double gamma_c, double lambda, const Mat& m_b) {
  const auto es = hermitian_eig(m_b, "effective_u_b");
  Vec phases(es.eigenvalues().size());
  for (Eigen::Index k = 0; k < phases.size(); ++k) {
    const cplx x(0.0, lambda * es.eigenvalues()(k));
    const cplx den = gamma_c + x;
    if (std::abs(den) == 0.0) throw std::invalid_argument("effective_u_b: singular denominator");
    phases(k) = (gamma_c - x) / den;
  }
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Mat m_for_target(const Mat& e_b, double lambda, double gamma_c) {
  if (lambda == 0.0) throw std::invalid_argument("m_for_target: lambda must be nonzero");
  const auto es = hermitian_eig(e_b, "m_for_target");
  RVec m(es.eigenvalues().size());
  for (Eigen::Index k = 0; k < m.size(); ++k) {
    const double e = es.eigenvalues()(k);
    if (!(std::abs(e) < kPi - 1e-12)) throw std::invalid_argument("m_for_target: eigenvalue of E_B at +-pi");
    m(k) = gamma_c / lambda * std::tan(0.5 * e);
  }
  return es.eigenvectors() * m.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace nrq
