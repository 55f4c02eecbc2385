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

#include <functional>
#include <utility>
#include <vector>

#include "nrq/channels.hpp"

namespace nrq {

// ---------------------------------------------------------------------------
// Single-dissipator models.

// gamma D[A (x) U_B] on concat(A.space(), B.space()), no Hamiltonian.
Lindbladian directional(const Operator& a_op, const Operator& u_b, double gamma);

// rate * ( -i[(A^+B + B^+A)/2, .] + D[A - iB] ). Both operators are given on
// the full space.
Lindbladian cascaded(const Operator& a_op, const Operator& b_op, double rate);

// One step of the measurement-feedback process realizing directional():
// M1 = sqrt(gamma dt) A U_B, M2 = I - (gamma/2) A^+A dt.
struct KrausPair {
  Operator m1;
  Operator m2;
};
KrausPair mf_kraus(const Operator& a_op, const Operator& u_b, double gamma, double dt);

// dark: orthonormal basis of ker A. ready: orthonormal basis of the vectors
// orthogonal to dark that A maps into span(dark). Columns are basis vectors.
struct GateProtocolSpaces {
  Mat dark;
  Mat ready;
};
GateProtocolSpaces gate_protocol_spaces(const Operator& a_op);

// ---------------------------------------------------------------------------
// Cavity-qubit-reservoir model. Sites: cavity a, qubit, reservoir c.

namespace cavity_sites {
inline constexpr int kCavity = 0;
inline constexpr int kQubit = 1;
inline constexpr int kReservoir = 2;
}  // namespace cavity_sites

Lindbladian cavity_qubit_full(double j, double kappa_c, double lambda_c, double lambda_a, int n_max_a, int n_max_c);

struct EffectiveParams {
  double gamma_eff;
  double lambda_eff;
  double theta_eff;  // in (-pi, pi]
};
EffectiveParams effective_params(double j, double kappa_c, double lambda_c);
// lambda_c giving the requested theta_eff, |theta_eff| < pi.
double lambda_c_for_theta(double theta_eff, double kappa_c);

// Reduced cavity-qubit model: H = ((lambda_a + lambda_eff)/2) sigma_z a^+a,
// jump sqrt(gamma_eff) a e^{-i theta_eff sigma_z / 2}. Sites: cavity, qubit.
Lindbladian cavity_qubit_effective(const EffectiveParams& p, double lambda_a, int n_max_a);

// ---------------------------------------------------------------------------
// Multi-dissipator models: jumps z_l = sum_m A_m (x) u_lm with rate gamma.

// u[l][m] acting on B.
using OperatorGrid = std::vector<std::vector<Mat>>;

struct UnitarityCheck {
  bool pass;
  // sum_lm Tr(u_lm^+ u_lm) and its unitary value N d_B.
  double normalization;
  double expected_normalization;
  // violation(m, m') = || sum_l u_lm^+ u_lm' - delta_mm' I ||_max.
  RVec violation_flat;  // row-major N x N
  double max_violation;
};
UnitarityCheck generalized_unitarity_check(const OperatorGrid& u, double tol = 1e-12);

// Blocks of exp(-i sum_jj' E_jj' (x) h_jj'). h must satisfy h_jj'^+ = h_j'j.
OperatorGrid generalized_unitary_from_generator(const OperatorGrid& h);

struct MultiDissipatorModel {
  Lindbladian lindbladian;
  OperatorGrid u;
  double gamma;
  std::vector<int> mode_sites;
  int b_site;
};

// A_m are lowering operators of mode_sites (in order) on a_space; B is one
// site appended after them.
MultiDissipatorModel multi_dissipator(const CompositeSpace& a_space, const std::vector<int>& mode_sites,
                                      const CompositeSpace& b_space, const OperatorGrid& u, double gamma);

// Two modes and a qubit; total photon number at most `total_photon_cutoff`.
MultiDissipatorModel multi_dissipator_two_mode(double theta, double phi, double gamma1, double gamma2,
                                               int total_photon_cutoff);

// E_mm^ell with E_mm'(rho) = sum_j u_jm rho u_jm'^+ (mode index 0-based).
Channel multi_diss_steady_map(const MultiDissipatorModel& model, int mode, int ell);

// ---------------------------------------------------------------------------
// Chiral cascade realizing a directional dissipator. Sites: A mode, B, c.

Lindbladian chiral_cascade(double gamma_a, double gamma_c, double lambda, const Operator& m_b, int n_max_a,
                           int n_max_c);
// (gamma_c - i lambda M)(gamma_c + i lambda M)^{-1}.
Mat effective_u_b(double gamma_c, double lambda, const Mat& m_b);
// (gamma_c / lambda) tan(E/2); throws for eigenvalues of E at +-pi.
Mat m_for_target(const Mat& e_b, double lambda, double gamma_c);

// ---------------------------------------------------------------------------
// Bloch-Redfield corrections for a bath with exponential memory tau_e.

struct RedfieldCoefficients {
  double sigma;     // Lamb-shift coefficient
  double gamma_br;  // damping rate
  bool in_window;   // tau_e |theta'| <= 0.2
};
// Series form from theta'(t), theta''(t).
RedfieldCoefficients br_corrected_generator(double g_eff, double tau_e, double theta_dot, double theta_ddot);
// K = g^2 int_0^t e^{-(t-s)/tau} e^{-i(theta(t) - theta(s))} ds, with
// sigma = Im K and gamma = 2 Re K.
RedfieldCoefficients br_exact_kernel(double g_eff, double tau_e, const std::function<double(double)>& theta,
                                     double t);

}  // namespace nrq
