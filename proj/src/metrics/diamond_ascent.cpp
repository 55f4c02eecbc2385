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
#include <stdexcept>
#include <vector>

#include <Eigen/Eigenvalues>

#include "nrq/linalg.hpp"
#include "nrq/metrics.hpp"
#include "seesaw.hpp"

namespace nrq {

namespace detail {

Mat half_output(const Mat& choi, int d_in, int d_out, const Vec& psi) {
  const Mat y = apply_half(choi, d_in, d_out, psi);
  return 0.5 * (y + y.adjoint());
}

Mat apply_half(const Mat& choi, int d_in, int d_out, const Vec& psi) {
  const int d_anc = static_cast<int>(psi.size()) / d_in;
  // Y[(a,k),(b,l)] = sum_ij psi_ik conj(psi_jl) J[(i,a),(j,b)]
  Mat t = Mat::Zero(static_cast<Eigen::Index>(d_out) * d_anc, static_cast<Eigen::Index>(d_in) * d_out);
  for (int a = 0; a < d_out; ++a) {
    for (int k = 0; k < d_anc; ++k) {
      for (int i = 0; i < d_in; ++i) {
        const cplx c = psi(i * d_anc + k);
        if (c == cplx(0.0)) continue;
        t.row(a * d_anc + k) += c * choi.row(i * d_out + a);
      }
    }
  }
  Mat y(static_cast<Eigen::Index>(d_out) * d_anc, static_cast<Eigen::Index>(d_out) * d_anc);
  for (int b = 0; b < d_out; ++b) {
    for (int l = 0; l < d_anc; ++l) {
      Vec col = Vec::Zero(t.rows());
      for (int j = 0; j < d_in; ++j) col += std::conj(psi(j * d_anc + l)) * t.col(j * d_out + b);
      y.col(b * d_anc + l) = col;
    }
  }
  return y;
}

Mat sign_of(const Mat& y, double& trace_norm) {
  Eigen::SelfAdjointEigenSolver<Mat> es(y);
  const RVec& ev = es.eigenvalues();
  RVec s(ev.size());
  trace_norm = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    s(i) = ev(i) > 0 ? 1.0 : (ev(i) < 0 ? -1.0 : 0.0);
    trace_norm += std::abs(ev(i));
  }
  return es.eigenvectors() * s.asDiagonal() * es.eigenvectors().adjoint();
}

Mat pullback(const Mat& choi, int d_in, int d_out, int d_anc, const Mat& m) {
  // G[(j,l),(i,k)] = sum_ab M[(b,l),(a,k)] J[(i,a),(j,b)]
  const int n = d_in * d_anc;
  Mat g = Mat::Zero(n, n);
  for (int i = 0; i < d_in; ++i) {
    for (int j = 0; j < d_in; ++j) {
      const Mat blk = choi.block(i * d_out, j * d_out, d_out, d_out);
      for (int k = 0; k < d_anc; ++k) {
        for (int l = 0; l < d_anc; ++l) {
          cplx s = 0.0;
          for (int a = 0; a < d_out; ++a) {
            for (int b = 0; b < d_out; ++b) s += m(b * d_anc + l, a * d_anc + k) * blk(a, b);
          }
          g(j * d_anc + l, i * d_anc + k) = s;
        }
      }
    }
  }
  return 0.5 * (g + g.adjoint());
}

Vec top_eigenvector(const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (h + h.adjoint()));
  return es.eigenvectors().col(h.rows() - 1);
}

Vec bottom_eigenvector(const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (h + h.adjoint()));
  return es.eigenvectors().col(0);
}

}  // namespace detail

namespace {

struct Climb {
  Vec psi;
  double value = 0.0;
  double gain = 0.0;
  int iterations = 0;
};

// Alternate M = sign(Y(psi)) and psi = top eigenvector of the pullback of M
// until the per-step gain drops below tol. Each step also tries longer moves
// along psi_new - psi_old and keeps the best one.
void climb(const Mat& choi, int d_in, int d_out, Climb& c, int max_iter, double tol) {
  auto objective = [&](const Vec& psi, Mat& m) {
    double v = 0.0;
    m = detail::sign_of(detail::half_output(choi, d_in, d_out, psi), v);
    return v;
  };
  Mat m;
  c.value = objective(c.psi, m);
  double stretch = 1.0;
  for (int it = 0; it < max_iter; ++it) {
    Vec next = detail::top_eigenvector(detail::pullback(choi, d_in, d_out, d_in, m));
    const cplx overlap = c.psi.dot(next);
    if (std::abs(overlap) > 1e-8) next *= std::conj(overlap) / std::abs(overlap);
    Mat m_next;
    double v_next = objective(next, m_next);
    const Vec dir = next - c.psi;
    double s = std::min(2.0 * stretch, 1024.0);
    stretch = 1.0;
    for (; s > 1.5; s *= 0.5) {
      const Vec trial = (c.psi + s * dir).normalized();
      Mat m_trial;
      const double v_trial = objective(trial, m_trial);
      if (v_trial > v_next) {
        next = trial;
        v_next = v_trial;
        m_next = std::move(m_trial);
        stretch = s;
        break;
      }
    }
    ++c.iterations;
    c.gain = v_next - c.value;
    if (v_next >= c.value) {
      c.value = v_next;
      c.psi = std::move(next);
      m = std::move(m_next);
    }
    if (c.gain < tol) break;
  }
}

}  // namespace

AscentResult diamond_norm_ascent(const Mat& choi, int d_in, int d_out, const AscentOptions& opts) {
  const int n = d_in * d_out;
  if (choi.rows() != n || choi.cols() != n) throw std::invalid_argument("diamond_norm_ascent: Choi has wrong size");
  if (opts.restarts < 1) throw std::invalid_argument("diamond_norm_ascent: need at least one start");
  Rng rng(opts.seed);
  const double coarse = std::max(opts.tol, opts.coarse_tol);
  std::vector<Climb> starts(opts.restarts);
  int best = 0;
  for (int r = 0; r < opts.restarts; ++r) {
    Climb& c = starts[r];
    if (r == 0) {
      c.psi = Vec::Zero(d_in * d_in);
      for (int i = 0; i < d_in; ++i) c.psi(i * d_in + i) = 1.0 / std::sqrt(static_cast<double>(d_in));
    } else {
      c.psi = random_pure_vector(d_in * d_in, rng);
    }
    climb(choi, d_in, d_out, c, opts.coarse_max_iter, coarse);
    if (c.value > starts[best].value) best = r;
  }
  Climb& top = starts[best];
  climb(choi, d_in, d_out, top, opts.max_iter, opts.tol);

  AscentResult out;
  out.value = top.value;
  out.psi = top.psi;
  out.last_gain = top.gain;
  out.restarts = opts.restarts;
  for (const auto& c : starts) out.iterations += c.iterations;
  return out;
}

}  // namespace nrq
