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

#include "nrq/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>

namespace nrq::sdp {

namespace {

using Blocks = std::vector<Mat>;

double inner(const Constraint& a, const Blocks& z) {
  double s = 0.0;
  for (const auto& sb : a.blocks) {
    const Mat& zb = z[sb.block];
    for (const auto& e : sb.entries) s += (e.value * zb(e.col, e.row)).real();
  }
  return s;
}

double inner(const Blocks& a, const Blocks& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k].conjugate().cwiseProduct(b[k])).sum().real();
  return s;
}

RVec apply_a(const Problem& p, const Blocks& z) {
  RVec out(p.a.size());
  for (std::size_t i = 0; i < p.a.size(); ++i) out(i) = inner(p.a[i], z);
  return out;
}

Blocks zeros(const Problem& p) {
  Blocks z;
  for (int d : p.block_dims) z.push_back(Mat::Zero(d, d));
  return z;
}

Blocks apply_at(const Problem& p, const RVec& y) {
  Blocks z = zeros(p);
  for (std::size_t i = 0; i < p.a.size(); ++i) {
    if (y(i) == 0.0) continue;
    for (const auto& sb : p.a[i].blocks) {
      for (const auto& e : sb.entries) z[sb.block](e.row, e.col) += y(i) * e.value;
    }
  }
  return z;
}

double frob(const Blocks& z) {
  double s = 0.0;
  for (const auto& m : z) s += m.squaredNorm();
  return std::sqrt(s);
}

double constraint_frob(const Constraint& a) {
  double s = 0.0;
  for (const auto& sb : a.blocks) {
    for (const auto& e : sb.entries) s += std::norm(e.value);
  }
  return std::sqrt(s);
}

Mat herm(const Mat& m) { return 0.5 * (m + m.adjoint()); }

// Largest alpha with z + alpha dz still positive semidefinite.
double max_step(const Mat& z, const Mat& dz) {
  Eigen::LLT<Mat> llt(z);
  if (llt.info() != Eigen::Success) return 0.0;
  const Mat l = llt.matrixL();
  const Mat linv = l.triangularView<Eigen::Lower>().solve(Mat::Identity(z.rows(), z.cols()));
  const Mat t = herm(linv * dz * linv.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(t, Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues().minCoeff();
  return lmin < 0.0 ? -1.0 / lmin : std::numeric_limits<double>::infinity();
}

double max_step(const Blocks& z, const Blocks& dz) {
  double a = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < z.size(); ++k) a = std::min(a, max_step(z[k], dz[k]));
  return a;
}

struct Direction {
  Blocks dx;
  RVec dy;
  Blocks ds;
};

class Solver {
 public:
  Solver(const Problem& p, const Options& o) : p_(p), o_(o) {}

  Solution run() {
    validate();
    init();
    Solution sol;
    int stalls = 0;
    for (int it = 0; it < o_.max_iter; ++it) {
      measure(sol);
      sol.iterations = it;
      if (sol.rel_gap < o_.tol && sol.primal_infeasibility < o_.tol && sol.dual_infeasibility < o_.tol) {
        sol.converged = true;
        break;
      }
      if (!step()) break;
      if (last_alpha_ < 1e-9) {
        if (++stalls >= 3) break;
      } else {
        stalls = 0;
      }
    }
    measure(sol);
    sol.x = x_;
    sol.s = s_;
    sol.y = y_;
    return sol;
  }

 private:
  void validate() const {
    if (p_.c.size() != p_.block_dims.size()) throw std::invalid_argument("sdp: C has wrong block count");
    if (static_cast<std::size_t>(p_.b.size()) != p_.a.size()) throw std::invalid_argument("sdp: b and A differ");
    for (std::size_t k = 0; k < p_.c.size(); ++k) {
      if (p_.c[k].rows() != p_.block_dims[k] || p_.c[k].cols() != p_.block_dims[k]) {
        throw std::invalid_argument("sdp: C block has wrong size");
      }
    }
    for (const auto& a : p_.a) {
      for (const auto& sb : a.blocks) {
        if (sb.block < 0 || sb.block >= static_cast<int>(p_.block_dims.size())) {
          throw std::invalid_argument("sdp: constraint block out of range");
        }
        for (const auto& e : sb.entries) {
          const int d = p_.block_dims[sb.block];
          if (e.row < 0 || e.row >= d || e.col < 0 || e.col >= d) throw std::invalid_argument("sdp: entry out of range");
        }
      }
    }
  }

  void init() {
    n_total_ = 0;
    for (int d : p_.block_dims) n_total_ += d;
    const double sq = std::sqrt(static_cast<double>(n_total_));
    double xi = std::max(10.0, sq);
    double eta = std::max({10.0, sq, frob(p_.c)});
    for (std::size_t i = 0; i < p_.a.size(); ++i) {
      const double fa = constraint_frob(p_.a[i]);
      xi = std::max(xi, n_total_ * (1.0 + std::abs(p_.b(i))) / (1.0 + fa));
      eta = std::max(eta, fa);
    }
    x_ = zeros(p_);
    s_ = zeros(p_);
    for (std::size_t k = 0; k < x_.size(); ++k) {
      x_[k].setIdentity();
      x_[k] *= xi;
      s_[k].setIdentity();
      s_[k] *= eta;
    }
    y_ = RVec::Zero(p_.a.size());
    b_norm_ = p_.b.norm();
    c_norm_ = frob(p_.c);
  }

  void measure(Solution& sol) const {
    sol.primal = inner(p_.c, x_);
    sol.dual = p_.b.dot(y_);
    sol.rel_gap = std::abs(sol.primal - sol.dual) / (1.0 + std::abs(sol.primal) + std::abs(sol.dual));
    sol.primal_infeasibility = (p_.b - apply_a(p_, x_)).norm() / (1.0 + b_norm_);
    sol.dual_infeasibility = frob(dual_residual()) / (1.0 + c_norm_);
  }

  Blocks dual_residual() const {
    Blocks rd = apply_at(p_, y_);
    for (std::size_t k = 0; k < rd.size(); ++k) rd[k] -= s_[k] + p_.c[k];
    return rd;
  }

  Eigen::MatrixXd schur(const Blocks& sinv) const {
    const int m = static_cast<int>(p_.a.size());
    Eigen::MatrixXd mm = Eigen::MatrixXd::Zero(m, m);
    Blocks pj = zeros(p_);
    for (int j = 0; j < m; ++j) {
      for (const auto& sb : p_.a[j].blocks) {
        const Mat& xb = x_[sb.block];
        Mat xa = Mat::Zero(xb.rows(), xb.cols());
        for (const auto& e : sb.entries) xa.col(e.col) += xb.col(e.row) * e.value;
        pj[sb.block] = xa * sinv[sb.block];
      }
      for (int i = 0; i < m; ++i) mm(i, j) = inner(p_.a[i], pj);
      for (const auto& sb : p_.a[j].blocks) pj[sb.block].setZero();
    }
    return 0.5 * (mm + mm.transpose());
  }

  Direction direction(double sigma_mu, const Blocks* corr, const Blocks& sinv, const Blocks& rd, const RVec& rp,
                      const Eigen::LDLT<Eigen::MatrixXd>& ldlt, const Eigen::FullPivLU<Eigen::MatrixXd>* lu) const {
    Blocks rc(x_.size());
    Blocks t(x_.size());
    for (std::size_t k = 0; k < x_.size(); ++k) {
      rc[k] = sigma_mu * sinv[k] - x_[k];
      if (corr) rc[k] -= (*corr)[k];
      t[k] = rc[k] - x_[k] * rd[k] * sinv[k];
    }
    const RVec rhs = apply_a(p_, t) - rp;
    Direction d;
    d.dy = lu ? RVec(lu->solve(rhs)) : RVec(ldlt.solve(rhs));
    d.ds = apply_at(p_, d.dy);
    d.dx.resize(x_.size());
    for (std::size_t k = 0; k < x_.size(); ++k) {
      d.ds[k] += rd[k];
      d.dx[k] = herm(rc[k] - x_[k] * d.ds[k] * sinv[k]);
    }
    return d;
  }

  bool step() {
    Blocks sinv(s_.size());
    for (std::size_t k = 0; k < s_.size(); ++k) {
      Eigen::LLT<Mat> llt(s_[k]);
      if (llt.info() != Eigen::Success) return false;
      sinv[k] = herm(llt.solve(Mat::Identity(s_[k].rows(), s_[k].cols())));
    }
    const double mu = inner(x_, s_) / n_total_;
    const Blocks rd = dual_residual();
    const RVec rp = p_.b - apply_a(p_, x_);

    const Eigen::MatrixXd m = schur(sinv);
    Eigen::LDLT<Eigen::MatrixXd> ldlt(m);
    std::unique_ptr<Eigen::FullPivLU<Eigen::MatrixXd>> lu;
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) lu = std::make_unique<Eigen::FullPivLU<Eigen::MatrixXd>>(m);

    const Direction pred = direction(0.0, nullptr, sinv, rd, rp, ldlt, lu.get());
    const double ap = std::min(1.0, max_step(x_, pred.dx));
    const double ad = std::min(1.0, max_step(s_, pred.ds));
    Blocks xa(x_.size()), sa(s_.size());
    for (std::size_t k = 0; k < x_.size(); ++k) {
      xa[k] = x_[k] + ap * pred.dx[k];
      sa[k] = s_[k] + ad * pred.ds[k];
    }
    const double mu_aff = inner(xa, sa) / n_total_;
    const double sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 0.0, 1.0);

    Blocks corr(x_.size());
    for (std::size_t k = 0; k < x_.size(); ++k) corr[k] = pred.dx[k] * pred.ds[k] * sinv[k];
    const Direction d = direction(sigma * mu, &corr, sinv, rd, rp, ldlt, lu.get());

    const double gamma = o_.step_fraction;
    const double alpha_p = std::min(1.0, gamma * max_step(x_, d.dx));
    const double alpha_d = std::min(1.0, gamma * max_step(s_, d.ds));
    for (std::size_t k = 0; k < x_.size(); ++k) {
      x_[k] = herm(x_[k] + alpha_p * d.dx[k]);
      s_[k] = herm(s_[k] + alpha_d * d.ds[k]);
    }
    y_ += alpha_d * d.dy;
    last_alpha_ = std::min(alpha_p, alpha_d);
    return true;
  }

  const Problem& p_;
  const Options& o_;
  Blocks x_, s_;
  RVec y_;
  int n_total_ = 0;
  double b_norm_ = 0.0;
  double c_norm_ = 0.0;
  double last_alpha_ = 1.0;
};

}  // namespace

Solution solve(const Problem& problem, const Options& opts) { return Solver(problem, opts).run(); }

}  // namespace nrq::sdp
