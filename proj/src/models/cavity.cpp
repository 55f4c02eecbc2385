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

#include "nrq/linalg.hpp"
#include "nrq/models.hpp"

namespace nrq {

Lindbladian cavity_qubit_full(double j, double kappa_c, double lambda_c, double lambda_a, int n_max_a, int n_max_c) {
  if (n_max_a < 1 || n_max_c < 1) throw std::invalid_argument("cavity_qubit_full: truncations must be >= 1");
  if (!(kappa_c >= 0.0)) throw std::invalid_argument("cavity_qubit_full: negative reservoir decay");
  const CompositeSpace space({n_max_a + 1, 2, n_max_c + 1});
  using namespace cavity_sites;
  const Mat a = embed(ops::destroy(n_max_a + 1), space, kCavity);
  const Mat c = embed(ops::destroy(n_max_c + 1), space, kReservoir);
  const Mat sz = embed(ops::pauli_z(), space, kQubit);
  const Mat h = 0.5 * lambda_a * sz * a.adjoint() * a + j * (a.adjoint() * c + c.adjoint() * a) +
                0.5 * lambda_c * sz * c.adjoint() * c;
  return Lindbladian(space, Operator(space, hermitian_part(h)), {{kappa_c, Operator(space, c)}});
}

EffectiveParams effective_params(double j, double kappa_c, double lambda_c) {
  if (!(kappa_c > 0.0)) throw std::invalid_argument("effective_params: kappa_c must be positive");
  const double den = kappa_c * kappa_c + lambda_c * lambda_c;
  return {4.0 * j * j * kappa_c / den, -4.0 * j * j * lambda_c / den, 2.0 * std::atan(lambda_c / kappa_c)};
}

double lambda_c_for_theta(double theta_eff, double kappa_c) {
  if (!(kappa_c > 0.0)) throw std::invalid_argument("lambda_c_for_theta: kappa_c must be positive");
  if (!(std::abs(theta_eff) < kPi)) throw std::invalid_argument("lambda_c_for_theta: |theta| must be below pi");
  return kappa_c * std::tan(0.5 * theta_eff);
}

Lindbladian cavity_qubit_effective(const EffectiveParams& p, double lambda_a, int n_max_a) {
  if (n_max_a < 1) throw std::invalid_argument("cavity_qubit_effective: truncation must be >= 1");
  const CompositeSpace space({n_max_a + 1, 2});
  const Mat a = embed(ops::destroy(n_max_a + 1), space, 0);
  const Mat sz = embed(ops::pauli_z(), space, 1);
  const Mat u = expm(cplx(0.0, -0.5 * p.theta_eff) * sz);
  const Mat h = 0.5 * (lambda_a + p.lambda_eff) * sz * a.adjoint() * a;
  return Lindbladian(space, Operator(space, hermitian_part(h)), {{p.gamma_eff, Operator(space, a * u)}});
}

}  // namespace nrq
