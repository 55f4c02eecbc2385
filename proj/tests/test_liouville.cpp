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

#include "nrq/linalg.hpp"
#include "nrq/liouville.hpp"

using namespace nrq;

namespace {

Lindbladian random_lindbladian(const CompositeSpace& s, std::uint64_t seed, int jumps) {
  Rng rng(seed);
  const int d = s.dim();
  std::vector<Jump> js;
  for (int k = 0; k < jumps; ++k) js.push_back({0.5 + 0.5 * k, Operator(s, ginibre(d, d, rng) / std::sqrt(d))});
  return Lindbladian(s, Operator(s, random_hermitian(d, rng)), js);
}

}  // namespace

TEST(Vectorization, ColumnStackingIdentity) {
  Rng rng(2);
  const Mat a = ginibre(3, 3, rng), x = ginibre(3, 3, rng), b = ginibre(3, 3, rng);
  const Mat lhs = vec(a * x * b);
  const Mat rhs = Eigen::kroneckerProduct(b.transpose(), a).eval() * vec(x);
  EXPECT_LT(max_abs_diff(lhs, rhs), 1e-13);
  EXPECT_LT(max_abs_diff(unvec(vec(x), 3), x), 0.0 + 1e-16);
}

TEST(Liouvillian, ActsAsMasterEquation) {
  const CompositeSpace s({3});
  const Lindbladian l = random_lindbladian(s, 4, 2);
  const Operator rho = random_density(s, 5);
  // direct evaluation of -i[H, rho] + sum_k g_k D[L_k] rho
  const Mat& h = l.hamiltonian().data();
  Mat ref = -kI * (h * rho.data() - rho.data() * h);
  for (const auto& j : l.jumps()) {
    const Mat& L = j.op.data();
    const Mat ll = L.adjoint() * L;
    ref += j.rate * (L * rho.data() * L.adjoint() - 0.5 * (ll * rho.data() + rho.data() * ll));
  }
  const Superoperator gen = liouvillian(l);
  EXPECT_LT(max_abs_diff(gen.apply(rho).data(), ref), 1e-13);
  EXPECT_LT(gen.trace_defect(true), 1e-13);
}

TEST(Propagator, QubitDecayMatchesClosedForm) {
  const CompositeSpace q({2});
  const double g = 0.8;
  const Lindbladian l = Lindbladian::dissipative(q, {{g, Operator(q, ops::sigma_minus())}});
  Mat rho0(2, 2);
  rho0 << 0.6, 0.3, 0.3, 0.4;
  for (double t : {0.0, 0.3, 1.7}) {
    const Mat r = propagator(l, t).apply(Operator(q, rho0)).data();
    EXPECT_NEAR(r(0, 0).real(), 0.6 * std::exp(-g * t), 1e-13);
    EXPECT_NEAR(std::abs(r(0, 1)), 0.3 * std::exp(-0.5 * g * t), 1e-13);
  }
}

TEST(Propagator, SemigroupAndTracePreservation) {
  const CompositeSpace s({2, 2});
  const Lindbladian l = random_lindbladian(s, 7, 2);
  const Superoperator a = propagator(l, 0.4), b = propagator(l, 0.6), ab = propagator(l, 1.0);
  EXPECT_LT(max_abs_diff(a.matrix() * b.matrix(), ab.matrix()), 1e-12);
  EXPECT_LT(ab.trace_defect(false), 1e-12);
}

TEST(Propagator, LongTimeLimitMatchesLargeTime) {
  const CompositeSpace s({3});
  const Lindbladian l = random_lindbladian(s, 8, 2);
  const AsymptoticLimit lim = asymptotic_limit(l);
  EXPECT_EQ(lim.kernel_dim, 1);
  EXPECT_GT(lim.slowest_decay, 0.0);
  const double t = 60.0 / lim.slowest_decay;
  EXPECT_LT(max_abs_diff(propagator(l, kLongTime).matrix(), propagator(l, t).matrix()), 1e-9);
}

TEST(Propagator, DegenerateSteadyStatesKeepCoherentMemory) {
  // Pure dephasing conserves populations: the long-time map is the
  // dephasing channel, not a unique fixed point.
  const CompositeSpace q({2});
  const Lindbladian l = Lindbladian::dissipative(q, {{1.0, Operator(q, ops::pauli_z())}});
  const AsymptoticLimit lim = asymptotic_limit(l);
  EXPECT_EQ(lim.kernel_dim, 2);
  Mat rho(2, 2);
  rho << 0.7, 0.4, 0.4, 0.3;
  const Mat out = lim.projector.apply(Operator(q, rho)).data();
  EXPECT_NEAR(out(0, 0).real(), 0.7, 1e-12);
  EXPECT_LT(std::abs(out(0, 1)), 1e-12);
}

TEST(Propagate, RungeKuttaAgreesWithExponential) {
  const CompositeSpace s({2, 2});
  const Lindbladian l = random_lindbladian(s, 9, 1);
  const Operator rho = random_density(s, 10);
  const std::vector<double> times{0.0, 0.5, 2.0};
  PropagationOptions rk;
  rk.method = PropagationMethod::runge_kutta;
  const auto a = propagate(l, rho, times);
  const auto b = propagate(l, rho, times, rk);
  for (std::size_t k = 0; k < times.size(); ++k) EXPECT_LT(max_abs_diff(a[k].data(), b[k].data()), 1e-8);
}

TEST(SteadyCheck, DetectsConvergence) {
  const CompositeSpace q({2});
  const Lindbladian l = Lindbladian::dissipative(q, {{1.0, Operator(q, ops::sigma_minus())}});
  const Operator up = Ket::basis(q, 0).projector();
  EXPECT_FALSE(steady_check(l, up, 1.0, 1.0).converged);
  EXPECT_TRUE(steady_check(l, up, 40.0, 1.0).converged);
}

TEST(Lindbladian, SumConcatenatesJumps) {
  const CompositeSpace q({2});
  const Lindbladian a = Lindbladian::dissipative(q, {{1.0, Operator(q, ops::sigma_minus())}});
  const Lindbladian b(q, Operator(q, ops::pauli_z()), {{2.0, Operator(q, ops::pauli_z())}});
  const Lindbladian c = a + b;
  EXPECT_EQ(c.jumps().size(), 2u);
  EXPECT_LT(max_abs_diff(liouvillian(c).matrix(), liouvillian(a).matrix() + liouvillian(b).matrix()), 1e-14);
  EXPECT_DOUBLE_EQ(c.max_rate(), 2.0);
}

TEST(Lindbladian, RejectsInvalidInput) {
  const CompositeSpace q({2});
  EXPECT_THROW(Lindbladian::dissipative(q, {{-1.0, Operator(q, ops::sigma_minus())}}), std::exception);
  EXPECT_THROW(Lindbladian(q, Operator(q, ops::sigma_minus()), {}), std::exception);
}
