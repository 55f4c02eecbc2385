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

#include <unsupported/Eigen/KroneckerProduct>

#include "nrq/linalg.hpp"
#include "nrq/models.hpp"

namespace nrq {

namespace {

int grid_block_dim(const OperatorGrid& u) {
  const std::size_t n = u.size();
  if (n == 0) throw std::invalid_argument("operator grid is empty");
  const auto d = u[0].empty() ? 0 : u[0][0].rows();
  for (const auto& row : u) {
    if (row.size() != n) throw std::invalid_argument("operator grid is not square");
    for (const auto& m : row) {
      if (m.rows() != d || m.cols() != d) throw std::invalid_argument("operator grid blocks differ in size");
    }
  }
  if (d == 0) throw std::invalid_argument("operator grid has empty blocks");
  return static_cast<int>(d);
}

}  // namespace

UnitarityCheck generalized_unitarity_check(const OperatorGrid& u, double tol) {
  const int d = grid_block_dim(u);
  const int n = static_cast<int>(u.size());
  UnitarityCheck r;
  r.normalization = 0.0;
  for (const auto& row : u) {
    for (const auto& m : row) r.normalization += (m.adjoint() * m).trace().real();
  }
  r.expected_normalization = static_cast<double>(n) * d;
  r.violation_flat = RVec::Zero(n * n);
  r.max_violation = 0.0;
  for (int m = 0; m < n; ++m) {
    for (int mp = 0; mp < n; ++mp) {
      Mat s = Mat::Zero(d, d);
      for (int l = 0; l < n; ++l) s += u[l][m].adjoint() * u[l][mp];
      if (m == mp) s -= Mat::Identity(d, d);
      const double v = s.cwiseAbs().maxCoeff();
      r.violation_flat(m * n + mp) = v;
      r.max_violation = std::max(r.max_violation, v);
    }
  }
  r.pass = r.max_violation <= tol &&
           std::abs(r.normalization - r.expected_normalization) <= tol * r.expected_normalization;
  return r;
}

OperatorGrid generalized_unitary_from_generator(const OperatorGrid& h) {
  const int d = grid_block_dim(h);
  const int n = static_cast<int>(h.size());
  Mat big(n * d, n * d);
  for (int j = 0; j < n; ++j) {
    for (int jp = 0; jp < n; ++jp) big.block(j * d, jp * d, d, d) = h[j][jp];
  }
  if (hermiticity_defect(big) > tol::hermiticity) {
    throw std::invalid_argument("generalized_unitary_from_generator: generator grid is not Hermitian");
  }
  const Mat u = expm(-kI * hermitian_part(big));
  OperatorGrid out(n, std::vector<Mat>(n));
  for (int l = 0; l < n; ++l) {
    for (int m = 0; m < n; ++m) out[l][m] = u.block(l * d, m * d, d, d);
  }
  return out;
}

MultiDissipatorModel multi_dissipator(const CompositeSpace& a_space, const std::vector<int>& mode_sites,
                                      const CompositeSpace& b_space, const OperatorGrid& u, double gamma) {
  const int db = grid_block_dim(u);
  if (db != b_space.dim()) throw std::invalid_argument("multi_dissipator: grid blocks do not match B");
  if (b_space.num_sites() != 1) throw std::invalid_argument("multi_dissipator: B must be a single site");
  if (mode_sites.size() != u.size()) throw std::invalid_argument("multi_dissipator: one mode per grid column");
  if (!(gamma >= 0.0)) throw std::invalid_argument("multi_dissipator: negative rate");
  const CompositeSpace full = concat(a_space, b_space);
  const int b_site = a_space.num_sites();
  std::vector<Mat> lowers;
  for (int s : mode_sites) {
    if (s < 0 || s >= a_space.num_sites()) throw std::invalid_argument("multi_dissipator: mode site out of range");
    lowers.push_back(embed(ops::destroy(a_space.site_dim(s)), full, s));
  }
  std::vector<Jump> jumps;
  for (const auto& row : u) {
    Mat z = Mat::Zero(full.dim(), full.dim());
    for (std::size_t m = 0; m < row.size(); ++m) z += lowers[m] * embed(row[m], full, b_site);
    jumps.push_back({gamma, Operator(full, z)});
  }
  return {Lindbladian::dissipative(full, std::move(jumps)), u, gamma, mode_sites, b_site};
}

MultiDissipatorModel multi_dissipator_two_mode(double theta, double phi, double gamma1, double gamma2,
                                               int total_photon_cutoff) {
  if (!(gamma1 >= 0.0) || !(gamma2 >= 0.0)) throw std::invalid_argument("multi_dissipator_two_mode: negative rate");
  if (gamma1 + gamma2 <= 0.0) throw std::invalid_argument("multi_dissipator_two_mode: both rates vanish");
  if (total_photon_cutoff < 1) throw std::invalid_argument("multi_dissipator_two_mode: cutoff must be >= 1");
  const double gamma = 0.5 * (gamma1 + gamma2);
  const double r1 = std::sqrt(gamma1 / gamma);
  const double r2 = std::sqrt(gamma2 / gamma);
  const Mat sz = ops::pauli_z();
  const Mat sx = ops::pauli_x();
  const Mat ph_m = expm(-kI * phi * sz);
  const Mat ph_p = expm(kI * phi * sz);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  OperatorGrid u(2, std::vector<Mat>(2));
  u[0][0] = r1 * c * ph_m;
  u[0][1] = -kI * r1 * s * ph_m * sx;
  u[1][0] = -kI * r2 * s * ph_p * sx;
  u[1][1] = r2 * c * ph_p;
  const int d = total_photon_cutoff + 1;
  const CompositeSpace a_space({d, d}, {{{0, 1}, total_photon_cutoff}});
  return multi_dissipator(a_space, {0, 1}, CompositeSpace({2}), u, gamma);
}

Channel multi_diss_steady_map(const MultiDissipatorModel& model, int mode, int ell) {
  const int n = static_cast<int>(model.u.size());
  if (mode < 0 || mode >= n) throw std::invalid_argument("multi_diss_steady_map: mode out of range");
  if (ell < 0) throw std::invalid_argument("multi_diss_steady_map: negative excitation number");
  const CompositeSpace b_space = model.lindbladian.space().subspace({model.b_site});
  const int d = b_space.dim();
  Mat s = Mat::Zero(d * d, d * d);
  for (int j = 0; j < n; ++j) {
    const Mat& u = model.u[j][mode];
    s += Eigen::kroneckerProduct(u.conjugate(), u).eval();
  }
  Mat p = Mat::Identity(d * d, d * d);
  for (int k = 0; k < ell; ++k) p = s * p;
  return channel_from_superop(Superoperator(b_space, p));
}

}  // namespace nrq
