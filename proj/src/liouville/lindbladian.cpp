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
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

#include "nrq/liouville.hpp"

namespace nrq {

Lindbladian::Lindbladian(CompositeSpace space, Operator hamiltonian, std::vector<Jump> jumps)
    : space_(std::move(space)), hamiltonian_(std::move(hamiltonian)), jumps_(std::move(jumps)) {
  if (hamiltonian_.space() != space_) throw std::invalid_argument("Lindbladian: Hamiltonian space mismatch");
  if (!hamiltonian_.is_hermitian()) throw std::invalid_argument("Lindbladian: Hamiltonian is not Hermitian");
  for (const auto& j : jumps_) {
    if (!(j.rate >= 0.0)) throw std::invalid_argument("Lindbladian: negative or NaN rate");
    if (j.op.space() != space_) throw std::invalid_argument("Lindbladian: jump operator space mismatch");
  }
}

Lindbladian Lindbladian::dissipative(CompositeSpace space, std::vector<Jump> jumps) {
  Operator h = Operator::zero(space);
  return Lindbladian(std::move(space), std::move(h), std::move(jumps));
}

double Lindbladian::max_rate() const {
  double r = 0.0;
  for (const auto& j : jumps_) r = std::max(r, j.rate);
  return r;
}

Lindbladian operator+(const Lindbladian& a, const Lindbladian& b) {
  if (a.space() != b.space()) throw std::invalid_argument("Lindbladian sum: space mismatch");
  std::vector<Jump> jumps = a.jumps();
  jumps.insert(jumps.end(), b.jumps().begin(), b.jumps().end());
  return Lindbladian(a.space(), a.hamiltonian() + b.hamiltonian(), std::move(jumps));
}

Superoperator::Superoperator(CompositeSpace space, Mat matrix) : space_(std::move(space)), m_(std::move(matrix)) {
  const int d2 = space_.dim() * space_.dim();
  if (m_.rows() != d2 || m_.cols() != d2) throw std::invalid_argument("Superoperator: matrix is not d^2 x d^2");
}

Operator Superoperator::apply(const Operator& rho) const {
  if (rho.space() != space_) throw std::invalid_argument("Superoperator::apply: space mismatch");
  return Operator(space_, unvec(m_ * vec(rho.data()), dim()));
}

double Superoperator::trace_defect(bool generator) const {
  const Vec id = vec(Mat::Identity(dim(), dim()));
  Eigen::RowVectorXcd row = id.adjoint() * m_;
  if (!generator) row -= id.adjoint();
  return row.size() ? row.cwiseAbs().maxCoeff() : 0.0;
}

Vec vec(const Mat& m) { return Eigen::Map<const Vec>(m.data(), m.size()); }

Mat unvec(const Vec& v, int d) {
  if (v.size() != static_cast<Eigen::Index>(d) * d) throw std::invalid_argument("unvec: length is not d^2");
  return Eigen::Map<const Mat>(v.data(), d, d);
}

Mat commutator_superop(const Mat& h) {
  const Mat id = Mat::Identity(h.rows(), h.cols());
  Mat left = Eigen::kroneckerProduct(id, h).eval();
  Mat right = Eigen::kroneckerProduct(h.transpose(), id).eval();
  return -kI * (left - right);
}

Mat dissipator_superop(const Mat& l) {
  const Mat id = Mat::Identity(l.rows(), l.cols());
  const Mat ldl = l.adjoint() * l;
  Mat out = Eigen::kroneckerProduct(l.conjugate(), l).eval();
  out -= 0.5 * Eigen::kroneckerProduct(id, ldl).eval();
  out -= 0.5 * Eigen::kroneckerProduct(ldl.transpose(), id).eval();
  return out;
}

Superoperator liouvillian(const Lindbladian& l) {
  Mat g = commutator_superop(l.hamiltonian().data());
  for (const auto& j : l.jumps()) {
    if (j.rate == 0.0) continue;
    g += j.rate * dissipator_superop(j.op.data());
  }
  return Superoperator(l.space(), std::move(g));
}

}  // namespace nrq
