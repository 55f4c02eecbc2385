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

#include <utility>
#include <vector>

#include "nrq/constants.hpp"
#include "nrq/space.hpp"

namespace nrq {

// Dense square matrix on a CompositeSpace. Immutable after construction.
class Operator {
 public:
  Operator(CompositeSpace space, Mat data);
  static Operator identity(const CompositeSpace& space);
  static Operator zero(const CompositeSpace& space);

  const CompositeSpace& space() const { return space_; }
  const Mat& data() const { return data_; }
  int dim() const { return static_cast<int>(data_.rows()); }

  Operator adjoint() const;
  cplx trace() const { return data_.trace(); }
  bool is_hermitian(double tol = tol::hermiticity) const;
  bool is_unitary(double tol = tol::unitarity) const;
  // Hermitian, unit trace and no eigenvalue below tol::positivity.
  bool is_density() const;

 private:
  CompositeSpace space_;
  Mat data_;
};

Operator operator+(const Operator& a, const Operator& b);
Operator operator-(const Operator& a, const Operator& b);
Operator operator*(const Operator& a, const Operator& b);
Operator operator*(cplx s, const Operator& a);

// Normalized state vector.
class Ket {
 public:
  Ket(CompositeSpace space, Vec amplitudes);
  // Normalizes the amplitudes first; throws on a zero vector.
  static Ket normalized(CompositeSpace space, Vec amplitudes);
  static Ket basis(const CompositeSpace& space, int k);

  const CompositeSpace& space() const { return space_; }
  const Vec& amplitudes() const { return amp_; }
  int dim() const { return static_cast<int>(amp_.size()); }
  Operator projector() const;

 private:
  CompositeSpace space_;
  Vec amp_;
};

// Kronecker product on the concatenated space.
Operator tensor(const Operator& a, const Operator& b);
Ket tensor(const Ket& a, const Ket& b);
// Kronecker product restricted to the basis of `target`, whose dims must be
// the concatenated dims and whose basis must lie inside the product basis.
Operator tensor(const Operator& a, const Operator& b, const CompositeSpace& target);

// Matrix elements of `data` (given on `source`) between basis kets of
// `target`. Both spaces must share dims and target's basis must be a subset.
Mat compress(const Mat& data, const CompositeSpace& source, const CompositeSpace& target);
Operator compress(const Operator& op, const CompositeSpace& target);

// Local operator on one site, identity elsewhere, restricted to the basis.
Mat embed(const Mat& local, const CompositeSpace& space, int site);
Operator embed(const Operator& local, const CompositeSpace& space, int site);

// Trace over every site not in `keep`. The output lives on
// space.subspace(keep) with the kept sites in the listed order.
Operator partial_trace(const Operator& op, const std::vector<int>& keep);

// Transpose of the indices of the listed sites. Every truncation group must
// lie entirely inside or entirely outside the listed sites.
Operator partial_transpose(const Operator& op, const std::vector<int>& sites);

// Places operators on disjoint site groups into the full space, i.e. the
// (site-ordered) tensor product of the parts restricted to space's basis.
// Each part's operator lives on space.subspace(part sites). The parts must
// cover every site exactly once.
struct Placement {
  std::vector<int> sites;
  Mat data;
};
Mat arrange(const CompositeSpace& space, const std::vector<Placement>& parts);

// Standard single-site operators.
namespace ops {
Mat identity(int d);
Mat destroy(int d);  // truncated lowering operator, n_max = d - 1
Mat create(int d);
Mat number(int d);
Mat pauli_x();
Mat pauli_y();
Mat pauli_z();
Mat sigma_minus();  // |down><up| with |up> = index 0
Mat sigma_plus();
Vec basis_vector(int d, int k);
}  // namespace ops

}  // namespace nrq
