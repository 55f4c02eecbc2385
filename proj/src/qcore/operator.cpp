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

#include "nrq/operator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

namespace nrq {

Operator::Operator(CompositeSpace space, Mat data) : space_(std::move(space)), data_(std::move(data)) {
  if (data_.rows() != space_.dim() || data_.cols() != space_.dim()) {
    throw std::invalid_argument("Operator: matrix is " + std::to_string(data_.rows()) + "x" +
                                std::to_string(data_.cols()) + " but space " + space_.describe());
  }
}

Operator Operator::identity(const CompositeSpace& space) {
  return Operator(space, Mat::Identity(space.dim(), space.dim()));
}

Operator Operator::zero(const CompositeSpace& space) {
  return Operator(space, Mat::Zero(space.dim(), space.dim()));
}

Operator Operator::adjoint() const { return Operator(space_, data_.adjoint()); }

bool Operator::is_hermitian(double tol) const {
  return (data_ - data_.adjoint()).cwiseAbs().maxCoeff() < tol;
}

bool Operator::is_unitary(double tol) const {
  const Mat id = Mat::Identity(dim(), dim());
  return (data_.adjoint() * data_ - id).cwiseAbs().maxCoeff() < tol;
}

bool Operator::is_density() const {
  if (!is_hermitian()) return false;
  if (std::abs(trace() - 1.0) > tol::trace) return false;
  const Mat h = 0.5 * (data_ + data_.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() > tol::positivity;
}

namespace {

void require_same(const Operator& a, const Operator& b, const char* what) {
  if (a.space() != b.space()) throw std::invalid_argument(std::string(what) + ": space mismatch");
}

}  // namespace

Operator operator+(const Operator& a, const Operator& b) {
  require_same(a, b, "operator+");
  return Operator(a.space(), a.data() + b.data());
}

Operator operator-(const Operator& a, const Operator& b) {
  require_same(a, b, "operator-");
  return Operator(a.space(), a.data() - b.data());
}

Operator operator*(const Operator& a, const Operator& b) {
  require_same(a, b, "operator*");
  return Operator(a.space(), a.data() * b.data());
}

Operator operator*(cplx s, const Operator& a) { return Operator(a.space(), s * a.data()); }

Ket::Ket(CompositeSpace space, Vec amplitudes) : space_(std::move(space)), amp_(std::move(amplitudes)) {
  if (amp_.size() != space_.dim()) throw std::invalid_argument("Ket: amplitude count does not match space");
  if (std::abs(amp_.norm() - 1.0) > tol::ket_norm) throw std::invalid_argument("Ket: not normalized");
}

Ket Ket::normalized(CompositeSpace space, Vec amplitudes) {
  const double n = amplitudes.norm();
  if (!(n > 0.0)) throw std::invalid_argument("Ket: zero vector");
  return Ket(std::move(space), amplitudes / n);
}

Ket Ket::basis(const CompositeSpace& space, int k) {
  if (k < 0 || k >= space.dim()) throw std::invalid_argument("Ket::basis: index out of range");
  return Ket(space, ops::basis_vector(space.dim(), k));
}

Operator Ket::projector() const { return Operator(space_, amp_ * amp_.adjoint()); }

Operator tensor(const Operator& a, const Operator& b) {
  Mat k = Eigen::kroneckerProduct(a.data(), b.data()).eval();
  return Operator(concat(a.space(), b.space()), std::move(k));
}

Ket tensor(const Ket& a, const Ket& b) {
  Vec k = Eigen::kroneckerProduct(a.amplitudes(), b.amplitudes()).eval();
  return Ket(concat(a.space(), b.space()), std::move(k));
}

Operator tensor(const Operator& a, const Operator& b, const CompositeSpace& target) {
  const Operator full = tensor(a, b);
  return Operator(target, compress(full.data(), full.space(), target));
}

Mat compress(const Mat& data, const CompositeSpace& source, const CompositeSpace& target) {
  if (source.dims() != target.dims()) throw std::invalid_argument("compress: dims differ");
  if (data.rows() != source.dim() || data.cols() != source.dim()) {
    throw std::invalid_argument("compress: matrix does not match source space");
  }
  std::vector<int> map(target.dim());
  for (int k = 0; k < target.dim(); ++k) {
    map[k] = source.index_of(target.multi_index(k));
    if (map[k] < 0) throw std::invalid_argument("compress: target basis not contained in source");
  }
  Mat out(target.dim(), target.dim());
  for (int j = 0; j < target.dim(); ++j) {
    for (int i = 0; i < target.dim(); ++i) out(i, j) = data(map[i], map[j]);
  }
  return out;
}

Operator compress(const Operator& op, const CompositeSpace& target) {
  return Operator(target, compress(op.data(), op.space(), target));
}

Mat embed(const Mat& local, const CompositeSpace& space, int site) {
  if (site < 0 || site >= space.num_sites()) throw std::invalid_argument("embed: site out of range");
  const int d = space.site_dim(site);
  if (local.rows() != d || local.cols() != d) {
    throw std::invalid_argument("embed: local operator has wrong dimension for site " + std::to_string(site));
  }
  Mat out = Mat::Zero(space.dim(), space.dim());
  for (int n = 0; n < space.dim(); ++n) {
    std::vector<int> m = space.multi_index(n);
    const int c = m[site];
    for (int r = 0; r < d; ++r) {
      if (local(r, c) == cplx(0.0)) continue;
      m[site] = r;
      const int row = space.index_of(m);
      if (row >= 0) out(row, n) = local(r, c);
    }
  }
  return out;
}

Operator embed(const Operator& local, const CompositeSpace& space, int site) {
  return Operator(space, embed(local.data(), space, site));
}

namespace {

std::vector<int> restrict_index(const std::vector<int>& m, const std::vector<int>& sites) {
  std::vector<int> r(sites.size());
  for (std::size_t i = 0; i < sites.size(); ++i) r[i] = m[sites[i]];
  return r;
}

}  // namespace

Operator partial_trace(const Operator& op, const std::vector<int>& keep) {
  const CompositeSpace& sp = op.space();
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set is empty");
  if (static_cast<int>(keep.size()) >= sp.num_sites()) {
    throw std::invalid_argument("partial_trace: keep set must be a strict subset");
  }
  const CompositeSpace out_space = sp.subspace(keep);
  const std::vector<int> drop = complement_sites(sp, keep);

  // Group basis kets by their discarded multi-index.
  std::map<std::vector<int>, std::vector<std::pair<int, int>>> groups;
  for (int k = 0; k < sp.dim(); ++k) {
    const auto& m = sp.multi_index(k);
    groups[restrict_index(m, drop)].emplace_back(k, out_space.index_of(restrict_index(m, keep)));
  }
  Mat out = Mat::Zero(out_space.dim(), out_space.dim());
  for (const auto& [key, members] : groups) {
    for (const auto& [kr, orow] : members) {
      for (const auto& [kc, ocol] : members) out(orow, ocol) += op.data()(kr, kc);
    }
  }
  return Operator(out_space, std::move(out));
}

Operator partial_transpose(const Operator& op, const std::vector<int>& sites) {
  const CompositeSpace& sp = op.space();
  std::vector<char> in(sp.num_sites(), 0);
  for (int s : sites) {
    if (s < 0 || s >= sp.num_sites()) throw std::invalid_argument("partial_transpose: site out of range");
    in[s] = 1;
  }
  for (const auto& t : sp.truncations()) {
    int count = 0;
    for (int s : t.sites) count += in[s];
    if (count != 0 && count != static_cast<int>(t.sites.size())) {
      throw std::invalid_argument("partial_transpose: truncation group straddles the partition");
    }
  }
  Mat out = Mat::Zero(sp.dim(), sp.dim());
  for (int c = 0; c < sp.dim(); ++c) {
    for (int r = 0; r < sp.dim(); ++r) {
      std::vector<int> m = sp.multi_index(r);
      std::vector<int> n = sp.multi_index(c);
      for (int s : sites) std::swap(m[s], n[s]);
      out(sp.index_of(m), sp.index_of(n)) = op.data()(r, c);
    }
  }
  return Operator(sp, std::move(out));
}

Mat arrange(const CompositeSpace& space, const std::vector<Placement>& parts) {
  std::vector<int> cover(space.num_sites(), 0);
  std::vector<CompositeSpace> subs;
  for (const auto& p : parts) {
    for (int s : p.sites) {
      if (s < 0 || s >= space.num_sites()) throw std::invalid_argument("arrange: site out of range");
      ++cover[s];
    }
    subs.push_back(space.subspace(p.sites));
    if (p.data.rows() != subs.back().dim() || p.data.cols() != subs.back().dim()) {
      throw std::invalid_argument("arrange: part has wrong dimension");
    }
  }
  for (int c : cover) {
    if (c != 1) throw std::invalid_argument("arrange: parts must cover each site exactly once");
  }
  const int D = space.dim();
  std::vector<std::vector<int>> local(parts.size(), std::vector<int>(D));
  for (std::size_t p = 0; p < parts.size(); ++p) {
    for (int k = 0; k < D; ++k) local[p][k] = subs[p].index_of(restrict_index(space.multi_index(k), parts[p].sites));
  }
  Mat out(D, D);
  for (int c = 0; c < D; ++c) {
    for (int r = 0; r < D; ++r) {
      cplx v = 1.0;
      for (std::size_t p = 0; p < parts.size() && v != cplx(0.0); ++p) v *= parts[p].data(local[p][r], local[p][c]);
      out(r, c) = v;
    }
  }
  return out;
}

namespace ops {

Mat identity(int d) { return Mat::Identity(d, d); }

Mat destroy(int d) {
  Mat a = Mat::Zero(d, d);
  for (int n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

Mat create(int d) { return destroy(d).adjoint(); }

Mat number(int d) {
  Mat n = Mat::Zero(d, d);
  for (int k = 0; k < d; ++k) n(k, k) = static_cast<double>(k);
  return n;
}

Mat pauli_x() {
  Mat m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Mat pauli_y() {
  Mat m(2, 2);
  m << 0, -kI, kI, 0;
  return m;
}

Mat pauli_z() {
  Mat m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Mat sigma_minus() {
  Mat m = Mat::Zero(2, 2);
  m(1, 0) = 1.0;
  return m;
}

Mat sigma_plus() { return sigma_minus().adjoint(); }

Vec basis_vector(int d, int k) {
  Vec v = Vec::Zero(d);
  v(k) = 1.0;
  return v;
}

}  // namespace ops

}  // namespace nrq
