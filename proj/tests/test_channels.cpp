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

#include "nrq/channels.hpp"
#include "nrq/linalg.hpp"

using namespace nrq;

namespace {

Channel random_channel(int d_in, int d_out, int rank, Rng& rng) {
  const Mat v = haar_unitary(rank * d_out, rng).leftCols(d_in);
  std::vector<Mat> kraus;
  for (int j = 0; j < rank; ++j) kraus.push_back(v.middleRows(j * d_out, d_out));
  return kraus_channel(CompositeSpace({d_in}), CompositeSpace({d_out}), kraus);
}

}  // namespace

TEST(Channel, ChoiSuperopRoundTrip) {
  Rng rng(1);
  const Channel e = random_channel(2, 3, 2, rng);
  const Mat s = e.superop();
  EXPECT_EQ(s.rows(), 9);
  EXPECT_EQ(s.cols(), 4);
  EXPECT_LT(max_abs_diff(choi_from_superop(s, 2, 3), e.choi()), 1e-14);
  EXPECT_LT(max_abs_diff(superop_from_choi(e.choi(), 2, 3), s), 1e-14);
}

TEST(Channel, KrausChannelIsCptp) {
  Rng rng(2);
  const CptpReport r = check_cptp(random_channel(3, 2, 3, rng));
  EXPECT_TRUE(r.ok);
  EXPECT_LT(r.trace_defect, 1e-13);
  EXPECT_GT(r.min_eigenvalue, -1e-13);
}

TEST(Channel, NonTracePreservingIsRejected) {
  const CompositeSpace q({2});
  const Channel half = kraus_channel(q, q, {0.5 * ops::identity(2)});
  EXPECT_FALSE(check_cptp(half).ok);
}

TEST(Channel, ApplyMatchesKrausSum) {
  Rng rng(3);
  const CompositeSpace q({2});
  const Mat k0 = Mat::Identity(2, 2) * std::sqrt(0.7);
  const Mat k1 = ops::pauli_x() * std::sqrt(0.3);
  const Channel e = kraus_channel(q, q, {k0, k1});
  const Operator rho = random_density(q, 4);
  const Mat ref = k0 * rho.data() * k0.adjoint() + k1 * rho.data() * k1.adjoint();
  EXPECT_LT(max_abs_diff(e.apply(rho).data(), ref), 1e-14);
}

TEST(Channel, ComposeMatchesSequentialApplication) {
  Rng rng(5);
  const Channel a = random_channel(2, 2, 2, rng), b = random_channel(2, 2, 3, rng);
  const Operator rho = random_density(CompositeSpace({2}), 6);
  EXPECT_LT(max_abs_diff(compose(b, a).apply(rho).data(), b.apply(a.apply(rho)).data()), 1e-14);
}

TEST(Fidelity, DepolarizingClosedForm) {
  // rho -> (1 - p) rho + p I/d has average fidelity 1 - p (d - 1)/d.
  const CompositeSpace q({2});
  const double p = 0.3;
  std::vector<Mat> kraus{std::sqrt(1.0 - 3.0 * p / 4.0) * ops::identity(2), std::sqrt(p / 4.0) * ops::pauli_x(),
                         std::sqrt(p / 4.0) * ops::pauli_y(), std::sqrt(p / 4.0) * ops::pauli_z()};
  const Channel e = kraus_channel(q, q, kraus);
  EXPECT_NEAR(average_gate_fidelity(e, ops::identity(2)), 1.0 - p / 2.0, 1e-14);
}

TEST(Fidelity, UnitaryMismatch) {
  // F(U, V) = (|Tr U^+V|^2 + d) / (d^2 + d)
  const CompositeSpace q({2});
  const double t = 0.9;
  const Mat v = expm(cplx(0.0, -0.5 * t) * ops::pauli_z());
  const Channel e = unitary_channel(Operator(q, v));
  const double tr = std::abs((v).trace());
  EXPECT_NEAR(average_gate_fidelity(e, ops::identity(2)), (tr * tr + 2.0) / 6.0, 1e-14);
  EXPECT_NEAR(average_gate_fidelity(e, v), 1.0, 1e-14);
}

TEST(Conditional, ProductUnitaryReducesToLocalUnitary) {
  Rng rng(7);
  const CompositeSpace s({2, 3});
  const Mat ua = haar_unitary(2, rng), ub = haar_unitary(3, rng);
  const Operator u = tensor(Operator(s.subspace({0}), ua), Operator(s.subspace({1}), ub));
  const Channel full = unitary_channel(u);
  const Superoperator prop(s, full.superop());
  const Operator rb = random_density(s.subspace({1}), 8);
  const Channel ca = conditional_reduced_channel(prop, {0}, {{{1}, rb.data()}});
  EXPECT_LT(choi_distance(ca, unitary_channel(Operator(s.subspace({0}), ua))), 1e-13);
}

TEST(Conditional, ChoiFamilyCombinesLinearly) {
  const CompositeSpace s({2, 2});
  const Superoperator prop = propagator(
      Lindbladian::dissipative(s, {{1.0, Operator(s, embed(ops::sigma_minus(), s, 0) * embed(ops::pauli_x(), s, 1))}}),
      0.7);
  const ChoiFamily fam = conditional_choi_family(prop, {1}, {0}, {});
  const Operator sigma = random_density(CompositeSpace({2}), 3);
  const Channel direct = conditional_reduced_channel(prop, {1}, {{{0}, sigma.data()}});
  EXPECT_LT(max_abs_diff(fam.combine(sigma.data()), direct.choi()), 1e-14);
}

TEST(Asymptotic, ChannelOfDecayIsReset) {
  const CompositeSpace q({2});
  const Lindbladian l = Lindbladian::dissipative(q, {{1.0, Operator(q, ops::sigma_minus())}});
  const Channel e = asymptotic_channel(l);
  const Operator out = e.apply(Ket::basis(q, 0).projector());
  EXPECT_NEAR(out.data()(1, 1).real(), 1.0, 1e-12);
}
