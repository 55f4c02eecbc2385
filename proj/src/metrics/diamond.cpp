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
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nrq/errors.hpp"
#include "nrq/linalg.hpp"
#include "nrq/metrics.hpp"
#include "nrq/sdp.hpp"

namespace nrq {

namespace {

// Real basis of n x n Hermitian matrices as (row, col, value) lists.
std::vector<std::vector<sdp::Entry>> hermitian_basis(int n) {
  std::vector<std::vector<sdp::Entry>> basis;
  for (int p = 0; p < n; ++p) basis.push_back({{p, p, 1.0}});
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      basis.push_back({{p, q, 1.0}, {q, p, 1.0}});
      basis.push_back({{p, q, kI}, {q, p, -kI}});
    }
  }
  return basis;
}

bool trace_annihilating(const Mat& choi, int d_in, int d_out) {
  const double scale = std::max(1.0, choi.cwiseAbs().maxCoeff());
  return choi_input_marginal(choi, d_in, d_out).cwiseAbs().maxCoeff() < tol::cptp * scale;
}

}  // namespace

SdpDiamondResult diamond_norm_sdp(const Mat& choi, int d_in, int d_out) {
  const int n = d_in * d_out;
  if (choi.rows() != n || choi.cols() != n) throw std::invalid_argument("diamond_norm_sdp: Choi has wrong size");
  if (hermiticity_defect(choi) > 1e-10) throw std::invalid_argument("diamond_norm_sdp: map is not Hermiticity preserving");
  if (!trace_annihilating(choi, d_in, d_out)) {
    throw std::invalid_argument("diamond_norm_sdp: map is not trace annihilating");
  }

  // Dual variables y = (t, Z) with blocks Z >= 0, Z - J >= 0, t I - Tr_out Z >= 0.
  sdp::Problem p;
  p.block_dims = {n, n, d_in};
  p.c = {Mat::Zero(n, n), hermitian_part(choi), Mat::Zero(d_in, d_in)};
  sdp::Constraint tc;
  sdp::SparseBlock tb{2, {}};
  for (int i = 0; i < d_in; ++i) tb.entries.push_back({i, i, 1.0});
  tc.blocks.push_back(std::move(tb));
  p.a.push_back(std::move(tc));
  for (const auto& h : hermitian_basis(n)) {
    sdp::Constraint c;
    c.blocks.push_back({0, h});
    c.blocks.push_back({1, h});
    sdp::SparseBlock red{2, {}};
    for (const auto& e : h) {
      const int i = e.row / d_out, a = e.row % d_out;
      const int j = e.col / d_out, b = e.col % d_out;
      if (a == b) red.entries.push_back({i, j, -e.value});
    }
    if (!red.entries.empty()) c.blocks.push_back(std::move(red));
    p.a.push_back(std::move(c));
  }
  p.b = RVec::Zero(p.a.size());
  p.b(0) = 1.0;

  const sdp::Solution s = sdp::solve(p);
  SdpDiamondResult r;
  r.lower = 2.0 * s.primal;
  r.upper = 2.0 * s.dual;
  r.value = 0.5 * (r.lower + r.upper);
  r.iterations = s.iterations;
  r.converged = s.converged || (s.rel_gap < 1e-8 && s.primal_infeasibility < 1e-8 && s.dual_infeasibility < 1e-8);
  return r;
}

DiamondResult diamond_norm(const Mat& choi, int d_in, int d_out, const DiamondOptions& opts) {
  DiamondResult r;
  r.ascent = diamond_norm_ascent(choi, d_in, d_out, opts.ascent).value;
  r.value = r.ascent;
  if (d_in * d_out <= opts.cross_check_max_dim && trace_annihilating(choi, d_in, d_out)) {
    const SdpDiamondResult s = diamond_norm_sdp(choi, d_in, d_out);
    if (!s.converged) throw NumericError("diamond_norm: interior point did not converge");
    r.sdp = s.value;
    r.cross_checked = true;
    if (std::abs(s.value - r.ascent) > opts.agreement_tol) {
      std::ostringstream os;
      os.precision(12);
      os << "diamond_norm: evaluators disagree (ascent " << r.ascent << ", sdp " << s.value << ")";
      throw NumericError(os.str());
    }
    r.value = s.value;
  }
  return r;
}

DiamondResult diamond_distance(const Channel& e1, const Channel& e2, const DiamondOptions& opts) {
  if (e1.in_space() != e2.in_space() || e1.out_space() != e2.out_space()) {
    throw std::invalid_argument("diamond_distance: channel spaces differ");
  }
  if (!check_cptp(e1).ok || !check_cptp(e2).ok) throw std::invalid_argument("diamond_distance: inputs must be CPTP");
  DiamondResult r = diamond_norm(e1.choi() - e2.choi(), e1.d_in(), e1.d_out(), opts);
  r.value = std::clamp(r.value, 0.0, 2.0);
  return r;
}

double distinguish_probability(const Channel& e1, const Channel& e2, const DiamondOptions& opts) {
  return 0.5 + 0.25 * diamond_distance(e1, e2, opts).value;
}

}  // namespace nrq
