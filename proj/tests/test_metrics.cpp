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

#include <unsupported/Eigen/KroneckerProduct>

#include "nrq/errors.hpp"
#include "nrq/linalg.hpp"
#include "nrq/metrics.hpp"
#include "nrq/models.hpp"

using namespace nrq;

namespace {

Mat rz(double angle) { return expm(cplx(0.0, -0.5 * angle) * ops::pauli_z()); }

Channel random_channel(int d_in, int d_out, Rng& rng) {
  const Mat v = haar_unitary(2 * d_out, rng).leftCols(d_in);
  return kraus_channel(CompositeSpace({d_in}), CompositeSpace({d_out}), {v.topRows(d_out), v.bottomRows(d_out)});
}

}  // namespace

TEST(Diamond, UnitaryPairClosedForm) {
  // Independent oracle: for unitaries the diamond distance is
  // 2 sqrt(1 - d^2), d the distance from 0 to the hull of spec(U^+V).
  const CompositeSpace q({2});
  for (double t : {0.3, 1.1, 2.5, kPi}) {
    const DiamondResult r = diamond_distance(identity_channel(q), unitary_channel(Operator(q, rz(t))));
    EXPECT_TRUE(r.cross_checked);
    EXPECT_NEAR(r.value, 2.0 * std::sin(t / 2.0), 1e-8) << t;
  }
}

TEST(Diamond, AmplitudeDampingVersusIdentity) {
  const CompositeSpace q({2});
  const double p = 0.4;
  Mat k0 = Mat::Zero(2, 2), k1 = Mat::Zero(2, 2);
  k0(0, 0) = std::sqrt(1.0 - p);
  k0(1, 1) = 1.0;
  k1(1, 0) = std::sqrt(p);
  const Channel ad = kraus_channel(q, q, {k0, k1});
  const Mat j = ad.choi() - identity_channel(q).choi();
  const double asc = diamond_norm_ascent(j, 2, 2).value;
  const SdpDiamondResult sdp = diamond_norm_sdp(j, 2, 2);
  EXPECT_TRUE(sdp.converged);
  EXPECT_NEAR(asc, sdp.value, 1e-7);
  EXPECT_LE(sdp.lower, sdp.upper + 1e-12);
  // the unentangled input |0> already reaches 2p
  EXPECT_GE(asc, 2.0 * p - 1e-9);
}

TEST(Diamond, AscentIsALowerBoundAndAgreesWithSdp) {
  Rng rng(11);
  for (int k = 0; k < 6; ++k) {
    const int d_in = 2 + k % 2;
    const Channel a = random_channel(d_in, 2, rng), b = random_channel(d_in, 2, rng);
    const Mat j = a.choi() - b.choi();
    const SdpDiamondResult sdp = diamond_norm_sdp(j, d_in, 2);
    const double asc = diamond_norm_ascent(j, d_in, 2).value;
    EXPECT_LE(asc, sdp.upper + 1e-9);
    EXPECT_NEAR(asc, sdp.value, 1e-6);
    EXPECT_LE(asc, 2.0 + 1e-12);
  }
}

TEST(Diamond, DistanceIsSymmetricAndZeroOnItself) {
  Rng rng(12);
  const Channel a = random_channel(2, 2, rng), b = random_channel(2, 2, rng);
  EXPECT_NEAR(diamond_distance(a, a).value, 0.0, 1e-10);
  EXPECT_NEAR(diamond_distance(a, b).value, diamond_distance(b, a).value, 1e-8);
  const double p = distinguish_probability(a, b);
  EXPECT_NEAR(p, 0.5 + 0.25 * diamond_distance(a, b).value, 1e-8);
}

TEST(Isolation, DirectionalModelIsolatesTheSource) {
  const CompositeSpace cav({3}), q({2});
  const Lindbladian l = directional(Operator(cav, ops::destroy(3)), Operator(q, rz(kPi / 3.0)), 1.0);
  const IsolationReport a = isolation(l, 0, 1, 1.5, Optimized{});
  const IsolationReport b = isolation(l, 1, 0, 1.5, Optimized{});
  EXPECT_NEAR(a.value, 1.0, 1e-10);
  EXPECT_LT(b.value, 0.9);
}

TEST(Isolation, UnequalRatesRegression) {
  // Oracle: for the two-mode model with gamma_2 = 0 the conditional
  // isolation of the |+x>, |-x> pair decays as exp(-4 gamma t); checked
  // independently against the SDP route.
  const MultiDissipatorModel m = multi_dissipator_two_mode(kPi / 4.0, kPi / 4.0, 2.0, 0.0, 2);
  const CompositeSpace q = m.lindbladian.space().subspace({m.b_site});
  Vec plus(2), minus(2);
  plus << 1.0, 1.0;
  minus << 1.0, -1.0;
  for (double t : {0.15625, 0.5}) {
    const IsolationReport r = isolation(propagator(m.lindbladian, t), {m.mode_sites, {m.b_site}, {}},
                                        Conditional{Ket::normalized(q, plus), Ket::normalized(q, minus)});
    EXPECT_NEAR(r.value, std::exp(-4.0 * t), 1e-6) << t;
  }
}

TEST(Isolation, OptimizedNeverExceedsConditional) {
  const CompositeSpace cav({3}), q({2});
  const Lindbladian l = directional(Operator(cav, ops::destroy(3)), Operator(q, rz(kPi / 6.0)), 1.0);
  const Superoperator p = propagator(l, 2.0);
  const IsolationReport opt = isolation(p, {{1}, {0}, {}}, Optimized{});
  const IsolationReport c02 = isolation(p, {{1}, {0}, {}}, Conditional{Ket::basis(cav, 0), Ket::basis(cav, 2)});
  EXPECT_LE(opt.value, c02.value + 1e-8);
  EXPECT_TRUE(opt.optimizer.converged);
  EXPECT_EQ(opt.argmax_pair.size(), 2u);
}

TEST(Isolation, TwoQubitUnitariesAreSymmetric) {
  Rng rng(13);
  const CompositeSpace two({2, 2});
  for (int k = 0; k < 3; ++k) {
    const Mat u = haar_unitary(4, rng);
    const Superoperator s(two, Eigen::kroneckerProduct(u.conjugate(), u).eval());
    const double ia = isolation(s, {{0}, {1}, {}}, Optimized{}).value;
    const double ib = isolation(s, {{1}, {0}, {}}, Optimized{}).value;
    EXPECT_NEAR(ia, ib, 1e-3);
  }
}

TEST(Isolation, RejectsLargeConditioningSpaceWhenOptimized) {
  const CompositeSpace cav({6}), q({2});
  const Lindbladian l = directional(Operator(cav, ops::destroy(6)), Operator(q, rz(0.3)), 1.0);
  EXPECT_THROW(isolation(l, 1, 0, 1.0, Optimized{}), std::invalid_argument);
}

TEST(Bounds, ClosedFormExamples) {
  EXPECT_NEAR(qubit_B_isolation_bound(ops::identity(2), 1).hull, 1.0, 1e-14);
  EXPECT_NEAR(qubit_B_isolation_bound(rz(kPi), 1).hull, 0.0, 1e-14);
  EXPECT_NEAR(qubit_B_isolation_bound(rz(kPi / 2.0), 2).hull, 0.0, 1e-14);
  EXPECT_NEAR(qubit_B_isolation_bound(rz(kPi / 6.0), 1).hull, 1.0 - std::sin(kPi / 12.0), 1e-14);
  EXPECT_NEAR(qubit_B_isolation_bound(rz(kPi / 6.0), 1).phase, 1.0 - std::sin(kPi / 12.0), 1e-14);
  // U^2 = -I is trivial as a channel
  EXPECT_NEAR(qubit_B_isolation_bound(rz(kPi), 2).hull, 1.0, 1e-12);
  EXPECT_THROW(qubit_B_isolation_bound(ops::sigma_minus(), 1), std::invalid_argument);
}

TEST(Bounds, HullMatchesBlochSphereMinimization) {
  // Oracle: min over a Bloch-sphere grid of |<phi|U|phi>|.
  for (double t : {0.4, 1.3, 2.2}) {
    const Mat u = rz(t);
    double min_overlap = 1.0;
    for (int i = 0; i <= 200; ++i) {
      const double th = kPi * i / 200.0;
      Vec v(2);
      v << std::cos(th / 2.0), std::sin(th / 2.0);
      min_overlap = std::min(min_overlap, std::abs(v.dot(u * v)));
    }
    const double ref = 1.0 - std::sqrt(1.0 - min_overlap * min_overlap);
    EXPECT_NEAR(qubit_B_isolation_bound(u, 1).hull, ref, 1e-4) << t;
  }
}

TEST(Bounds, DephasingClosedForm) {
  Rng rng(14);
  const Mat h = random_hermitian(3, rng);
  const DephasingIsolation none = dephasing_isolation_closed_form(h, Mat::Zero(3, 3), 2.0);
  EXPECT_NEAR(none.iso_a, 1.0, 1e-12);
  EXPECT_NEAR(none.iso_b, 1.0, 1e-12);
  // commuting diagonal pieces with eigenphase spread pi at t = 1
  Mat xi = Mat::Zero(2, 2);
  xi(0, 0) = kPi / 4.0;
  xi(1, 1) = -kPi / 4.0;
  const DephasingIsolation full = dephasing_isolation_closed_form(Mat::Zero(2, 2), xi, 1.0);
  EXPECT_NEAR(full.iso_a, 0.0, 1e-12);
  EXPECT_THROW(dephasing_isolation_closed_form(ops::sigma_minus(), xi, 1.0), std::invalid_argument);
}

TEST(Classify, LabelsFollowPredicates) {
  const std::vector<double> t{0.0, 1.0, 2.0};
  EXPECT_EQ(classify(t, {1, 1, 1}, {1, 1, 1}).label, Reciprocity::reciprocal);
  EXPECT_EQ(classify(t, {1, 1, 1}, {1, 0.5, 0.0}).label, Reciprocity::maximally_unidirectional_a_to_b);
  EXPECT_EQ(classify(t, {1, 1, 1}, {1, 0.5, 0.4}).label, Reciprocity::unidirectional_a_to_b);
  EXPECT_EQ(classify(t, {1, 0.5, 0.4}, {1, 1, 1}).label, Reciprocity::unidirectional_b_to_a);
  EXPECT_EQ(classify(t, {1, 0.5, 0.4}, {1, 0.7, 0.4}).label, Reciprocity::nonreciprocal);
  EXPECT_EQ(classify(t, {1, 0.5, 0.4}, {1, 0.5, 0.4}).label, Reciprocity::reciprocal);
  EXPECT_NE(classify(t, {1, 1, 1}, {1, 1, 1}).scope.find("3 times"), std::string::npos);
  EXPECT_THROW(classify({}, {}, {}), std::invalid_argument);
}

TEST(Entanglement, LogNegativityExamples) {
  const CompositeSpace s({2, 2});
  Vec bell = Vec::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(log_negativity(Ket(s, bell).projector(), {1}), 1.0, 1e-13);
  const Operator product = tensor(random_density(CompositeSpace({2}), 1), random_density(CompositeSpace({2}), 2));
  EXPECT_NEAR(log_negativity(product, {1}), 0.0, 1e-13);
  // Werner state p|bell><bell| + (1-p) I/4: log2(max(1, (3p+1)/2))
  const double p = 0.6;
  const Operator w(s, p * Ket(s, bell).projector().data() + (1.0 - p) * Mat::Identity(4, 4) / 4.0);
  EXPECT_NEAR(log_negativity(w, {1}), std::log2((3.0 * p + 1.0) / 2.0), 1e-13);
}
