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

#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "nrq/channels.hpp"
#include "nrq/linalg.hpp"

namespace nrq {

Channel::Channel(CompositeSpace in, CompositeSpace out, Mat choi)
    : in_(std::move(in)), out_(std::move(out)), choi_(std::move(choi)) {
  const int n = in_.dim() * out_.dim();
  if (choi_.rows() != n || choi_.cols() != n) throw std::invalid_argument("Channel: Choi matrix has wrong size");
}

Operator Channel::apply(const Operator& rho) const {
  if (rho.space() != in_) throw std::invalid_argument("Channel::apply: input space mismatch");
  return Operator(out_, unvec(superop() * vec(rho.data()), d_out()));
}

Mat Channel::superop() const { return superop_from_choi(choi_, d_in(), d_out()); }

Mat choi_from_superop(const Mat& s, int d_in, int d_out) {
  if (s.rows() != d_out * d_out || s.cols() != d_in * d_in) {
    throw std::invalid_argument("choi_from_superop: shape mismatch");
  }
  Mat j(d_in * d_out, d_in * d_out);
  for (int i = 0; i < d_in; ++i) {
    for (int jj = 0; jj < d_in; ++jj) {
      for (int a = 0; a < d_out; ++a) {
        for (int b = 0; b < d_out; ++b) j(i * d_out + a, jj * d_out + b) = s(a + b * d_out, i + jj * d_in);
      }
    }
  }
  return j;
}

Mat superop_from_choi(const Mat& j, int d_in, int d_out) {
  if (j.rows() != d_in * d_out || j.cols() != d_in * d_out) {
    throw std::invalid_argument("superop_from_choi: shape mismatch");
  }
  Mat s(d_out * d_out, d_in * d_in);
  for (int i = 0; i < d_in; ++i) {
    for (int jj = 0; jj < d_in; ++jj) {
      for (int a = 0; a < d_out; ++a) {
        for (int b = 0; b < d_out; ++b) s(a + b * d_out, i + jj * d_in) = j(i * d_out + a, jj * d_out + b);
      }
    }
  }
  return s;
}

Mat choi_input_marginal(const Mat& j, int d_in, int d_out) {
  Mat m = Mat::Zero(d_in, d_in);
  for (int i = 0; i < d_in; ++i) {
    for (int k = 0; k < d_in; ++k) {
      for (int a = 0; a < d_out; ++a) m(i, k) += j(i * d_out + a, k * d_out + a);
    }
  }
  return m;
}

CptpReport check_cptp(const Channel& e, double tol) {
  CptpReport r{};
  r.hermiticity = hermiticity_defect(e.choi());
  r.min_eigenvalue = hermitian_eigenvalues(e.choi()).minCoeff();
  r.trace_defect = max_abs_diff(choi_input_marginal(e.choi(), e.d_in(), e.d_out()), Mat::Identity(e.d_in(), e.d_in()));
  r.ok = r.hermiticity < tol && r.min_eigenvalue > -tol && r.trace_defect < tol;
  return r;
}

Channel channel_from_superop(const Superoperator& s) {
  if (s.trace_defect(false) > tol::cptp) {
    throw std::invalid_argument("channel_from_superop: map is not trace preserving");
  }
  return Channel(s.space(), s.space(), choi_from_superop(s.matrix(), s.dim(), s.dim()));
}

Channel unitary_channel(const Operator& u) {
  if (!u.is_unitary()) throw std::invalid_argument("unitary_channel: operator is not unitary");
  return kraus_channel(u.space(), u.space(), {u.data()});
}

Channel identity_channel(const CompositeSpace& space) { return unitary_channel(Operator::identity(space)); }

Channel kraus_channel(const CompositeSpace& in, const CompositeSpace& out, const std::vector<Mat>& kraus) {
  const int di = in.dim();
  const int d_out = out.dim();
  Mat j = Mat::Zero(di * d_out, di * d_out);
  for (const Mat& k : kraus) {
    if (k.rows() != d_out || k.cols() != di) throw std::invalid_argument("kraus_channel: operator shape mismatch");
    // (I (x) K)|Omega> has components K(a, i) at (i, a).
    Vec v(di * d_out);
    for (int i = 0; i < di; ++i) {
      for (int a = 0; a < d_out; ++a) v(i * d_out + a) = k(a, i);
    }
    j += v * v.adjoint();
  }
  return Channel(in, out, std::move(j));
}

Channel compose(const Channel& second, const Channel& first) {
  if (first.out_space() != second.in_space()) throw std::invalid_argument("compose: spaces do not chain");
  const Mat s = second.superop() * first.superop();
  return Channel(first.in_space(), second.out_space(), choi_from_superop(s, first.d_in(), second.d_out()));
}

double choi_distance(const Channel& a, const Channel& b) {
  if (a.in_space() != b.in_space() || a.out_space() != b.out_space()) {
    throw std::invalid_argument("choi_distance: spaces differ");
  }
  return max_abs_diff(a.choi(), b.choi());
}

Channel asymptotic_channel(const Lindbladian& l) { return channel_from_superop(asymptotic_limit(l).projector); }

double average_gate_fidelity(const Channel& e, const Mat& u) {
  const int d = e.d_in();
  if (e.d_out() != d || u.rows() != d || u.cols() != d) {
    throw std::invalid_argument("average_gate_fidelity: dimension mismatch");
  }
  Vec omega(d * d);
  for (int i = 0; i < d; ++i) {
    for (int a = 0; a < d; ++a) omega(i * d + a) = u(a, i) / std::sqrt(static_cast<double>(d));
  }
  const double f_pro = (omega.adjoint() * e.choi() * omega)(0, 0).real() / d;
  return (d * f_pro + 1.0) / (d + 1.0);
}

double average_gate_fidelity(const Channel& e, const Operator& u) {
  if (u.space() != e.in_space()) throw std::invalid_argument("average_gate_fidelity: space mismatch");
  return average_gate_fidelity(e, u.data());
}

}  // namespace nrq
