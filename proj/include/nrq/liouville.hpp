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

#include <limits>
#include <vector>

#include "nrq/operator.hpp"

namespace nrq {

struct Jump {
  double rate;  // inverse time, >= 0
  Operator op;
};

// H plus a list of rate-weighted dissipators D[L]rho = L rho L^+ - {L^+L, rho}/2.
class Lindbladian {
 public:
  Lindbladian(CompositeSpace space, Operator hamiltonian, std::vector<Jump> jumps);
  static Lindbladian dissipative(CompositeSpace space, std::vector<Jump> jumps);

  const CompositeSpace& space() const { return space_; }
  const Operator& hamiltonian() const { return hamiltonian_; }
  const std::vector<Jump>& jumps() const { return jumps_; }
  int dim() const { return space_.dim(); }
  // Largest jump rate (0 if none); sets the natural time unit.
  double max_rate() const;

 private:
  CompositeSpace space_;
  Operator hamiltonian_;
  std::vector<Jump> jumps_;
};

// Sum of two generators on the same space.
Lindbladian operator+(const Lindbladian& a, const Lindbladian& b);

// d^2 x d^2 map on column-stacked density matrices.
class Superoperator {
 public:
  Superoperator(CompositeSpace space, Mat matrix);
  const CompositeSpace& space() const { return space_; }
  const Mat& matrix() const { return m_; }
  int dim() const { return space_.dim(); }
  Operator apply(const Operator& rho) const;
  // Largest |(vec(I)^+ S)_k - target_k|, with target vec(I)^+ for maps and 0
  // for generators.
  double trace_defect(bool generator) const;

 private:
  CompositeSpace space_;
  Mat m_;
};

Vec vec(const Mat& m);
Mat unvec(const Vec& v, int d);

// Column-stacking building blocks: vec(A X B) = (B^T kron A) vec X.
Mat commutator_superop(const Mat& h);  // -i[H, .]
Mat dissipator_superop(const Mat& l);  // D[L]
Superoperator liouvillian(const Lindbladian& l);

inline constexpr double kLongTime = std::numeric_limits<double>::infinity();

// exp(tL); t = kLongTime gives the asymptotic projector.
Superoperator propagator(const Lindbladian& l, double t);

enum class PropagationMethod { exponential, runge_kutta };

struct PropagationOptions {
  PropagationMethod method = PropagationMethod::exponential;
  double rtol = 1e-11;
  double atol = 1e-13;
};

// rho(t) on a sorted nonnegative grid. Trace must stay within 1e-9 of 1;
// Hermiticity drift above 1e-12 is removed by symmetrization.
std::vector<Operator> propagate(const Lindbladian& l, const Operator& rho0, const std::vector<double>& times,
                                const PropagationOptions& opts = {});

// Trace distance between rho(t) and rho(t + spacing).
struct SteadyCheck {
  double distance;
  bool converged;
};
SteadyCheck steady_check(const Lindbladian& l, const Operator& rho0, double t, double spacing);

struct AsymptoticLimit {
  Superoperator projector;
  int kernel_dim;
  // Smallest |Re lambda| among the decaying modes; 0 if there are none.
  double slowest_decay;
};

// Spectral projector onto the Re(lambda) = 0 eigenspace, assembled from right
// and left kernel bases of the generator. Throws NumericError for unstable
// generators and for persistent oscillations (Re = 0, Im != 0).
AsymptoticLimit asymptotic_limit(const Lindbladian& l);

}  // namespace nrq
