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

#include <Eigen/SVD>

#include "nrq/linalg.hpp"
#include "nrq/models.hpp"

namespace nrq {

Lindbladian directional(const Operator& a_op, const Operator& u_b, double gamma) {
  if (!u_b.is_unitary()) throw std::invalid_argument("directional: U_B is not unitary");
  if (!(gamma >= 0.0)) throw std::invalid_argument("directional: negative rate");
  const Operator jump = tensor(a_op, u_b);
  return Lindbladian::dissipative(jump.space(), {{gamma, jump}});
}

Lindbladian cascaded(const Operator& a_op, const Operator& b_op, double rate) {
  if (a_op.space() != b_op.space()) throw std::invalid_argument("cascaded: operators live on different spaces");
  if (!(rate >= 0.0)) throw std::invalid_argument("cascaded: negative rate");
  const Mat& a = a_op.data();
  const Mat& b = b_op.data();
  const Mat h = 0.5 * rate * (a.adjoint() * b + b.adjoint() * a);
  const Operator jump(a_op.space(), a - kI * b);
  return Lindbladian(a_op.space(), Operator(a_op.space(), hermitian_part(h)), {{rate, jump}});
}

KrausPair mf_kraus(const Operator& a_op, const Operator& u_b, double gamma, double dt) {
  if (!u_b.is_unitary()) throw std::invalid_argument("mf_kraus: U_B is not unitary");
  if (!(gamma >= 0.0) || !(dt >= 0.0)) throw std::invalid_argument("mf_kraus: negative rate or step");
  const Operator au = tensor(a_op, u_b);
  const Mat& a = au.data();
  const Mat m2 = Mat::Identity(a.rows(), a.cols()) - 0.5 * gamma * dt * (a.adjoint() * a);
  return {std::sqrt(gamma * dt) * au, Operator(au.space(), m2)};
}

GateProtocolSpaces gate_protocol_spaces(const Operator& a_op) {
  const Mat& a = a_op.data();
  const int d = a_op.dim();
  GateProtocolSpaces out;
  out.dark = kernel_basis(a, tol::dark_singular);
  const int nd = static_cast<int>(out.dark.cols());
  if (nd == 0) {
    out.ready = Mat(d, 0);
    return out;
  }
  // Q spans the complement of dark; ready = Q ker(P_perp A Q).
  const Mat pd = out.dark * out.dark.adjoint();
  const Mat q = kernel_basis(pd, 0.5);
  if (q.cols() == 0) {
    out.ready = Mat(d, 0);
    return out;
  }
  const Mat p_perp = Mat::Identity(d, d) - pd;
  const Mat k = kernel_basis(p_perp * a * q, tol::dark_singular);
  out.ready = k.cols() == 0 ? Mat(d, 0) : range_basis(q * k, 0.5);
  return out;
}

}  // namespace nrq
