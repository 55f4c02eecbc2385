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
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "nrq/linalg.hpp"
#include "nrq/metrics.hpp"

namespace nrq {

namespace {

std::vector<double> eigenphases(const Mat& u) {
  Eigen::ComplexEigenSolver<Mat> es(u, false);
  std::vector<double> ph;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) ph.push_back(std::arg(es.eigenvalues()(i)));
  return ph;
}

double max_pair_sine(const std::vector<double>& ph, double scale) {
  double s = 0.0;
  for (std::size_t a = 0; a < ph.size(); ++a) {
    for (std::size_t b = a + 1; b < ph.size(); ++b) s = std::max(s, std::abs(std::sin(scale * (ph[a] - ph[b]) / 2.0)));
  }
  return s;
}

void require_unitary(const Mat& u, const char* what) {
  if (u.rows() != u.cols() || max_abs_diff(u.adjoint() * u, Mat::Identity(u.rows(), u.cols())) > 1e-10) {
    throw std::invalid_argument(std::string(what) + ": operator is not unitary");
  }
}

void require_hermitian(const Mat& h, const char* what) {
  if (h.rows() != h.cols() || hermiticity_defect(h) > 1e-10) {
    throw std::invalid_argument(std::string(what) + ": operator is not Hermitian");
  }
}

}  // namespace

BoundReport qubit_B_isolation_bound(const Mat& u_b, int ell) {
  require_unitary(u_b, "qubit_B_isolation_bound");
  if (ell < 1) throw std::invalid_argument("qubit_B_isolation_bound: ell must be positive");
  const std::vector<double> beta = eigenphases(u_b);

  // Eigenphases of U^ell on [0, 2 pi), sorted. The spectrum lies on an arc of
  // width 2 pi - (largest cyclic gap); the hull contains the origin once that
  // width reaches pi.
  std::vector<double> ph;
  for (double b : beta) {
    double p = std::fmod(ell * b, 2.0 * kPi);
    if (p < 0) p += 2.0 * kPi;
    ph.push_back(p);
  }
  std::sort(ph.begin(), ph.end());
  double max_gap = 2.0 * kPi - (ph.back() - ph.front());
  for (std::size_t i = 1; i < ph.size(); ++i) max_gap = std::max(max_gap, ph[i] - ph[i - 1]);

  BoundReport r;
  if (max_gap <= kPi) {
    r.min_overlap = 0.0;
    r.hull = 0.0;
  } else {
    const double width = 2.0 * kPi - max_gap;
    r.min_overlap = std::cos(width / 2.0);
    r.hull = 1.0 - std::sin(width / 2.0);
  }
  r.phase = 1.0 - max_pair_sine(beta, ell);
  return r;
}

DephasingIsolation dephasing_isolation_closed_form(const Mat& h_a, const Mat& xi_a, double t) {
  require_hermitian(h_a, "dephasing_isolation_closed_form");
  require_hermitian(xi_a, "dephasing_isolation_closed_form");
  if (h_a.rows() != xi_a.rows()) throw std::invalid_argument("dephasing_isolation_closed_form: dimension mismatch");
  const Mat up = h_a + xi_a;
  const Mat down = h_a - xi_a;
  const Mat overlap = expm(kI * t * down) * expm(-kI * t * up);
  const double iso = 1.0 - max_pair_sine(eigenphases(overlap), 1.0);
  return {iso, iso};
}

}  // namespace nrq
