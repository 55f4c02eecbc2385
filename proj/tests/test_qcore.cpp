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

#include <unsupported/Eigen/KroneckerProduct>

#include "nrq/linalg.hpp"
#include "nrq/operator.hpp"

using namespace nrq;

TEST(Space, ProductDimensionAndIndexRoundTrip) {
  const CompositeSpace s({2, 3, 4});
  EXPECT_EQ(s.dim(), 24);
  EXPECT_FALSE(s.truncated());
  for (int k = 0; k < s.dim(); ++k) EXPECT_EQ(s.index_of(s.multi_index(k)), k);
  // leftmost site varies slowest
  EXPECT_EQ(s.index_of({1, 0, 0}), 12);
  EXPECT_EQ(s.index_of({0, 0, 1}), 1);
}

TEST(Space, TotalExcitationTruncation) {
  const CompositeSpace s({3, 3, 2}, {{{0, 1}, 2}});
  // pairs (n1, n2) with n1 + n2 <= 2: 6, times qubit
  EXPECT_EQ(s.dim(), 12);
  EXPECT_EQ(s.product_dim(), 18);
  EXPECT_EQ(s.index_of({2, 1, 0}), -1);
  EXPECT_EQ(s.subspace({0, 1}).dim(), 6);
  EXPECT_EQ(s.subspace({2}).dim(), 2);
  EXPECT_EQ(s.untruncated().dim(), 18);
}

TEST(Operator, TensorMatchesKronecker) {
  Rng rng(1);
  const CompositeSpace a({2}), b({3});
  const Mat x = ginibre(2, 2, rng), y = ginibre(3, 3, rng);
  const Operator t = tensor(Operator(a, x), Operator(b, y));
  EXPECT_LT(max_abs_diff(t.data(), Eigen::kroneckerProduct(x, y).eval()), 1e-15);
}

TEST(Operator, PartialTraceOfProduct) {
  const CompositeSpace a({2}), b({3});
  const Operator ra = random_density(a, 5), rb = random_density(b, 6);
  const Operator ab = tensor(ra, rb);
  EXPECT_LT(max_abs_diff(partial_trace(ab, {0}).data(), ra.data()), 1e-14);
  EXPECT_LT(max_abs_diff(partial_trace(ab, {1}).data(), rb.data()), 1e-14);
}

TEST(Operator, PartialTraceIsTracePreservingOnTruncatedSpace) {
  const CompositeSpace s({3, 3, 2}, {{{0, 1}, 2}});
  const Operator rho = random_density(s, 9);
  const Operator red = partial_trace(rho, {2});
  EXPECT_NEAR(red.trace().real(), 1.0, 1e-13);
  EXPECT_TRUE(red.is_density());
}

TEST(Operator, EmbedCommutesAcrossSites) {
  const CompositeSpace s({3, 2});
  const Mat a = embed(ops::destroy(3), s, 0);
  const Mat z = embed(ops::pauli_z(), s, 1);
  EXPECT_LT((a * z - z * a).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Operator, LadderCommutatorBelowCutoff) {
  const int d = 5;
  const Mat c = ops::destroy(d) * ops::create(d) - ops::create(d) * ops::destroy(d);
  for (int n = 0; n < d - 1; ++n) EXPECT_NEAR(c(n, n).real(), 1.0, 1e-14);
  EXPECT_NEAR(c(d - 1, d - 1).real(), 1.0 - d, 1e-14);
  EXPECT_LT(max_abs_diff(ops::number(d), ops::create(d) * ops::destroy(d)), 1e-14);
}

TEST(Operator, PartialTransposeOfBellState) {
  const CompositeSpace s({2, 2});
  Vec v = Vec::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  const Operator pt = partial_transpose(Ket(s, v).projector(), {1});
  // swap operator / 2: eigenvalues 1/2 (x3), -1/2
  const RVec ev = hermitian_eigenvalues(pt.data());
  EXPECT_NEAR(ev.minCoeff(), -0.5, 1e-14);
  EXPECT_NEAR(trace_norm(pt), 2.0, 1e-14);
}

TEST(Operator, ArrangeBuildsProductOperator) {
  const CompositeSpace s({2, 3});
  const Mat x = ops::pauli_x();
  const Mat n = ops::number(3);
  const Mat a = arrange(s, {{{1}, n}, {{0}, x}});
  EXPECT_LT(max_abs_diff(a, Eigen::kroneckerProduct(x, n).eval()), 1e-15);
  EXPECT_THROW(arrange(s, {{{0}, x}}), std::invalid_argument);
}

TEST(Linalg, ExpmOfPauliRotation) {
  const double t = 0.7;
  const Mat u = expm(cplx(0.0, -t) * ops::pauli_x());
  Mat ref(2, 2);
  ref << std::cos(t), cplx(0.0, -std::sin(t)), cplx(0.0, -std::sin(t)), std::cos(t);
  EXPECT_LT(max_abs_diff(u, ref), 1e-14);
}

TEST(Linalg, TraceNormOfHermitian) {
  Mat m = Mat::Zero(3, 3);
  m.diagonal() << 1.0, -2.0, 0.5;
  EXPECT_NEAR(trace_norm(m), 3.5, 1e-14);
}

TEST(Linalg, HaarSamplesAreUnitaryAndSeeded) {
  const CompositeSpace s({4});
  const Operator u1 = haar_unitary(s, 11), u2 = haar_unitary(s, 11), u3 = haar_unitary(s, 12);
  EXPECT_TRUE(u1.is_unitary());
  EXPECT_EQ(max_abs_diff(u1.data(), u2.data()), 0.0);
  EXPECT_GT(max_abs_diff(u1.data(), u3.data()), 1e-3);
  EXPECT_TRUE(random_density(s, 3).is_density());
  EXPECT_NEAR(random_pure_state(s, 3).amplitudes().norm(), 1.0, 1e-14);
}

TEST(Linalg, KernelAndRangeBases) {
  const Mat a = ops::destroy(4);
  const Mat k = kernel_basis(a, 1e-10);
  ASSERT_EQ(k.cols(), 1);
  EXPECT_NEAR(std::abs(k(0, 0)), 1.0, 1e-14);
  EXPECT_EQ(range_basis(a, 1e-10).cols(), 3);
}

TEST(Ket, RejectsZeroVector) {
  const CompositeSpace s({2});
  EXPECT_THROW(Ket::normalized(s, Vec::Zero(2)), std::exception);
}
