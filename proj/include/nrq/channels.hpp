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

#include <vector>

#include "nrq/liouville.hpp"

namespace nrq {

// Choi matrix J = sum_ij |i><j| (x) Phi(|i><j|), input factor first, trace d_in.
class Channel {
 public:
  Channel(CompositeSpace in, CompositeSpace out, Mat choi);

  const CompositeSpace& in_space() const { return in_; }
  const CompositeSpace& out_space() const { return out_; }
  const Mat& choi() const { return choi_; }
  int d_in() const { return in_.dim(); }
  int d_out() const { return out_.dim(); }

  Operator apply(const Operator& rho) const;
  // d_out^2 x d_in^2 column-stacking matrix.
  Mat superop() const;

 private:
  CompositeSpace in_;
  CompositeSpace out_;
  Mat choi_;
};

struct CptpReport {
  double hermiticity;     // max |J - J^+|
  double min_eigenvalue;  // of the Hermitian part of J
  double trace_defect;    // max |Tr_out J - I_in|
  bool ok;
};
CptpReport check_cptp(const Channel& e, double tol = tol::cptp);

Mat choi_from_superop(const Mat& s, int d_in, int d_out);
Mat superop_from_choi(const Mat& j, int d_in, int d_out);
// Partial trace of a Choi matrix over its output factor.
Mat choi_input_marginal(const Mat& j, int d_in, int d_out);

// Throws std::invalid_argument if s is not trace preserving (1e-9).
Channel channel_from_superop(const Superoperator& s);
Channel unitary_channel(const Operator& u);
Channel identity_channel(const CompositeSpace& space);
Channel kraus_channel(const CompositeSpace& in, const CompositeSpace& out, const std::vector<Mat>& kraus);
// second o first.
Channel compose(const Channel& second, const Channel& first);
double choi_distance(const Channel& a, const Channel& b);

// Long-time limit of exp(tL) as a channel.
Channel asymptotic_channel(const Lindbladian& l);

// rho_keep -> Tr_rest[ P(rho_keep (x) fixed parts) ]. The fixed placements
// must cover every site outside `keep`.
Channel conditional_reduced_channel(const Superoperator& prop, const std::vector<int>& keep,
                                    const std::vector<Placement>& fixed);
// Same with P = exp(tL) (t = kLongTime for the asymptotic limit).
Channel conditional_reduced_channel(const Lindbladian& l, const std::vector<int>& keep,
                                    const std::vector<Placement>& fixed, double t);
// Bipartite shorthand: one kept site, one fixed site.
Channel conditional_reduced_channel(const Lindbladian& l, int fixed_site, const Operator& fixed_state, int keep_site,
                                    double t);
Channel conditional_reduced_channel(const Lindbladian& l, int fixed_site, const Ket& fixed_state, int keep_site,
                                    double t);

// Choi matrices of rho_keep -> Tr_rest[P(rho_keep (x) E_kl (x) fixed)] for
// every basis operator E_kl = |k><l| of the `vary` sites; entry k * d + l.
// By linearity, the conditional channel for a state sigma on `vary` is
// sum_kl sigma_kl * family[k * d + l].
struct ChoiFamily {
  CompositeSpace keep_space;
  CompositeSpace vary_space;
  std::vector<Mat> choi;
  Mat combine(const Mat& sigma) const;
};
ChoiFamily conditional_choi_family(const Superoperator& prop, const std::vector<int>& keep,
                                   const std::vector<int>& vary, const std::vector<Placement>& fixed);

// Average gate fidelity (d F_pro + 1)/(d + 1) with F_pro = <Omega_U| J/d |Omega_U>.
double average_gate_fidelity(const Channel& e, const Mat& u);
double average_gate_fidelity(const Channel& e, const Operator& u);

}  // namespace nrq
