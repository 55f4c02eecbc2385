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

#include <gtest/gtest.h>

#include <cmath>

#include "nrq/linalg.hpp"
#include "nrq/metrics.hpp"
#include "nrq/models.hpp"

using namespace nrq;

namespace {

Mat rz(double angle) { return expm(cplx(0.0, -0.5 * angle) * ops::pauli_z()); }

Mat fock(int d, int n) {
  const Vec e = ops::basis_vector(d, n);
  return e * e.adjoint();
}

}  // namespace

TEST(Directional, ReducedSourceDynamicsIgnoresTarget) {
  Rng rng(1);
  const CompositeSpace a({3}), b({2});
  const Operator op(a, ginibre(3, 3, rng));
  const Lindbladian l = directional(op, Operator(b, haar_unitary(2, rng)), 0.9);
  const Lindbladian alone = Lindbladian::dissipative(a, {{0.9, op}});
  for (int k = 0; k < 2; ++k) {
    const Channel c = conditional_reduced_channel(propagator(l, 1.3), {0}, {{{1}, fock(2, k)}});
    EXPECT_LT(choi_distance(c, channel_from_superop(propagator(alone, 1.3))), 1e-12);
  }
  EXPECT_THROW(directional(op, Operator(b, ops::sigma_minus()), 1.0), std::invalid_argument);
}

TEST(Cascaded, SourceReducedDynamicsIsLocal) {
  const CompositeSpace s({2, 2});
  const Operator a(s, embed(ops::sigma_minus(), s, 0));
  const Operator b(s, embed(ops::sigma_minus(), s, 1));
  const Lindbladian l = cascaded(a, b, 1.0);
  const IsolationReport r = isolation(l, 0, 1, 1.0, Optimized{});
  EXPECT_NEAR(r.value, 1.0, 1e-9);
}

TEST(MfKraus, NormalizationDefectIsSecondOrder) {
  const CompositeSpace a({3}), q({2});
  const Operator op(a, ops::destroy(3));
  const Operator u(q, rz(0.4));
  double prev = 0.0;
  for (double dt : {1e-2, 1e-3}) {
    const KrausPair k = mf_kraus(op, u, 1.0, dt);
    const Mat s = k.m1.data().adjoint() * k.m1.data() + k.m2.data().adjoint() * k.m2.data();
    const double defect = (s - Mat::Identity(s.rows(), s.cols())).cwiseAbs().maxCoeff();
    if (prev > 0.0) EXPECT_NEAR(prev / defect, 100.0, 1.0);
    prev = defect;
  }
  const KrausPair zero = mf_kraus(op, u, 1.0, 0.0);
  EXPECT_LT((zero.m2.data() - Mat::Identity(6, 6)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(GateProtocol, LadderOperatorSpaces) {
  const CompositeSpace cav({4});
  const GateProtocolSpaces s = gate_protocol_spaces(Operator(cav, ops::destroy(4)));
  ASSERT_EQ(s.dark.cols(), 1);
  ASSERT_EQ(s.ready.cols(), 1);
  EXPECT_NEAR(std::abs(s.dark(0, 0)), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(s.ready(1, 0)), 1.0, 1e-12);
}

TEST(GateProtocol, InvertibleOperatorHasNoDarkStates) {
  const CompositeSpace q({2});
  const GateProtocolSpaces s = gate_protocol_spaces(Operator(q, ops::pauli_x()));
  EXPECT_EQ(s.dark.cols(), 0);
  EXPECT_EQ(s.ready.cols(), 0);
}

TEST(Cavity, EffectiveParametersRoundTrip) {
  for (double theta : {-2.0, -kPi / 6.0, 0.3, kPi / 2.0, 3.0}) {
    for (double kappa : {2.0, 16.0}) {
      const double lc = lambda_c_for_theta(theta, kappa);
      const EffectiveParams p = effective_params(1.0, kappa, lc);
      EXPECT_NEAR(p.theta_eff, theta, 1e-12);
      EXPECT_GT(p.gamma_eff, 0.0);
    }
  }
}

TEST(Cavity, ReservoirEliminationApproachesEffectiveModel) {
  // The qubit channel conditioned on one cavity photon approaches the
  // reduced-model channel as kappa_c / J grows.
  const double theta = kPi / 6.0;
  double prev = 1.0;
  for (double kappa : {8.0, 32.0}) {
    const double lc = lambda_c_for_theta(theta, kappa);
    const EffectiveParams p = effective_params(1.0, kappa, lc);
    const double t = 30.0 / p.gamma_eff;
    const Lindbladian full = cavity_qubit_full(1.0, kappa, lc, -p.lambda_eff, 1, 2);
    const Lindbladian eff = cavity_qubit_effective(p, -p.lambda_eff, 1);
    const Channel cf = conditional_reduced_channel(propagator(full, t), {1}, {{{0}, fock(2, 1)}, {{2}, fock(3, 0)}});
    const Channel ce = conditional_reduced_channel(propagator(eff, t), {1}, {{{0}, fock(2, 1)}});
    const double d = choi_distance(cf, ce);
    EXPECT_LT(d, prev);
    prev = d;
    EXPECT_GT(average_gate_fidelity(ce, rz(theta)), 1.0 - 1e-9);
  }
}

TEST(MultiDissipator, TwoModeGridIsGeneralizedUnitary) {
  for (auto [g1, g2] : {std::pair{1.0, 1.0}, std::pair{0.5, 1.5}}) {
    const MultiDissipatorModel m = multi_dissipator_two_mode(0.7, 0.2, g1, g2, 2);
    const UnitarityCheck c = generalized_unitarity_check(m.u);
    EXPECT_EQ(c.pass, g1 == g2);
  }
  const MultiDissipatorModel m = multi_dissipator_two_mode(0.7, 0.2, 1.0, 1.0, 2);
  EXPECT_NEAR(m.gamma, 1.0, 1e-15);
  EXPECT_EQ(m.lindbladian.dim(), 12);
}

TEST(MultiDissipator, GeneratorGridGivesUnitary) {
  Rng rng(3);
  const Mat big = random_hermitian(4, rng);
  OperatorGrid h(2, std::vector<Mat>(2));
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) h[j][k] = big.block(2 * j, 2 * k, 2, 2);
  }
  const OperatorGrid u = generalized_unitary_from_generator(h);
  EXPECT_TRUE(generalized_unitarity_check(u).pass);
  h[0][1](0, 0) += 1.0;
  EXPECT_THROW(generalized_unitary_from_generator(h), std::invalid_argument);
}

TEST(MultiDissipator, SteadyMapOfEmptyModeIsIdentity) {
  const MultiDissipatorModel m = multi_dissipator_two_mode(kPi / 4.0, kPi / 4.0, 1.0, 1.0, 2);
  const CompositeSpace q({2});
  EXPECT_LT(choi_distance(multi_diss_steady_map(m, 0, 0), identity_channel(q)), 1e-14);
  EXPECT_TRUE(check_cptp(multi_diss_steady_map(m, 1, 2)).ok);
  EXPECT_THROW(multi_diss_steady_map(m, 2, 1), std::invalid_argument);
}

TEST(Chiral, EffectiveUnitaryRoundTrip) {
  Rng rng(4);
  const Mat e = 0.8 * random_hermitian(3, rng) / random_hermitian(3, rng).norm();
  const Mat m = m_for_target(e, 2.0, 5.0);
  EXPECT_LT(max_abs_diff(effective_u_b(5.0, 2.0, m), expm(-kI * e)), 1e-12);
  EXPECT_LT(hermiticity_defect(m), 1e-12);
}

TEST(Chiral, CascadeReproducesDirectionalGate) {
  // Frozen regression from the full cascade at Gamma_c / Gamma_a = 100.
  const double theta = kPi / 3.0;
  const Mat e = 0.5 * theta * ops::pauli_z();
  const Mat m = m_for_target(e, 50.0, 100.0);
  const Lindbladian l = chiral_cascade(1.0, 100.0, 50.0, Operator(CompositeSpace({2}), m), 1, 1);
  const Channel ch = conditional_reduced_channel(propagator(l, 20.0), {1}, {{{0}, fock(2, 1)}, {{2}, fock(2, 0)}});
  const double infid = 1.0 - average_gate_fidelity(ch, expm(-kI * e));
  EXPECT_NEAR(infid, 8.3325736057e-4, 1e-10);
}

TEST(Redfield, SeriesCoefficients) {
  const RedfieldCoefficients z = br_corrected_generator(0.5, 0.1, 0.0, 0.0);
  EXPECT_DOUBLE_EQ(z.sigma, 0.0);
  EXPECT_NEAR(z.gamma_br, 2.0 * 0.25 * 0.1, 1e-15);
  EXPECT_TRUE(z.in_window);
  const RedfieldCoefficients v = br_corrected_generator(0.5, 0.1, 1.0, 0.0);
  EXPECT_NEAR(v.gamma_br, 2.0 * 0.25 * 0.1 * (1.0 - 0.01), 1e-15);
  EXPECT_NEAR(v.sigma, -0.25 * 0.01 * 1.0, 1e-15);
  EXPECT_FALSE(br_corrected_generator(0.5, 0.1, 5.0, 0.0).in_window);
}

TEST(Redfield, ExactKernelForConstantDrift) {
  // Oracle: for theta = v s and t >> tau the kernel integral is
  // g^2 tau / (1 + i v tau).
  const double g = 0.4, tau = 0.2, v = 0.5;
  const RedfieldCoefficients k = br_exact_kernel(g, tau, [v](double s) { return v * s; }, 60.0 * tau);
  const double x = v * tau;
  EXPECT_NEAR(k.gamma_br, 2.0 * g * g * tau / (1.0 + x * x), 1e-12);
  EXPECT_NEAR(k.sigma, -g * g * tau * x / (1.0 + x * x), 1e-12);
}
