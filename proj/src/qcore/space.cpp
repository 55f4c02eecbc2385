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

#include "nrq/space.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace nrq {

struct CompositeSpace::Data {
  std::vector<int> dims;
  std::vector<Truncation> truncations;
  std::vector<std::vector<int>> basis;
  std::vector<int> lookup;  // product index -> basis index or -1
  std::vector<int> strides;
  int product_dim = 1;
};

namespace {

bool admissible(const std::vector<int>& m, const std::vector<Truncation>& truncs) {
  for (const auto& t : truncs) {
    int s = 0;
    for (int site : t.sites) s += m[site];
    if (s > t.max_total) return false;
  }
  return true;
}

}  // namespace

CompositeSpace::CompositeSpace() : CompositeSpace(std::vector<int>{1}) {}

CompositeSpace::CompositeSpace(std::vector<int> dims, std::vector<Truncation> truncations) {
  if (dims.empty()) throw std::invalid_argument("CompositeSpace: dims must be nonempty");
  for (int d : dims) {
    if (d < 1) throw std::invalid_argument("CompositeSpace: dimensions must be positive");
  }
  const int n = static_cast<int>(dims.size());
  for (auto& t : truncations) {
    if (t.sites.empty()) throw std::invalid_argument("CompositeSpace: empty truncation group");
    if (t.max_total < 0) throw std::invalid_argument("CompositeSpace: negative cutoff");
    std::vector<int> seen(n, 0);
    for (int s : t.sites) {
      if (s < 0 || s >= n) throw std::invalid_argument("CompositeSpace: truncation site out of range");
      if (seen[s]++) throw std::invalid_argument("CompositeSpace: repeated truncation site");
    }
    std::sort(t.sites.begin(), t.sites.end());
  }

  auto data = std::make_shared<Data>();
  data->dims = std::move(dims);
  data->truncations = std::move(truncations);
  data->strides.assign(n, 1);
  for (int i = n - 2; i >= 0; --i) data->strides[i] = data->strides[i + 1] * data->dims[i + 1];
  data->product_dim = data->strides[0] * data->dims[0];
  data->lookup.assign(data->product_dim, -1);

  std::vector<int> m(n, 0);
  for (int p = 0; p < data->product_dim; ++p) {
    int rem = p;
    for (int i = 0; i < n; ++i) {
      m[i] = rem / data->strides[i];
      rem %= data->strides[i];
    }
    if (admissible(m, data->truncations)) {
      data->lookup[p] = static_cast<int>(data->basis.size());
      data->basis.push_back(m);
    }
  }
  if (data->basis.empty()) throw std::invalid_argument("CompositeSpace: truncation leaves no states");
  d_ = std::move(data);
}

int CompositeSpace::dim() const { return static_cast<int>(d_->basis.size()); }
int CompositeSpace::num_sites() const { return static_cast<int>(d_->dims.size()); }
int CompositeSpace::site_dim(int site) const { return d_->dims.at(site); }
const std::vector<int>& CompositeSpace::dims() const { return d_->dims; }
const std::vector<Truncation>& CompositeSpace::truncations() const { return d_->truncations; }
bool CompositeSpace::truncated() const { return dim() != d_->product_dim; }
int CompositeSpace::product_dim() const { return d_->product_dim; }
const std::vector<int>& CompositeSpace::multi_index(int k) const { return d_->basis.at(k); }

int CompositeSpace::index_of(const std::vector<int>& m) const {
  if (static_cast<int>(m.size()) != num_sites()) return -1;
  int p = 0;
  for (int i = 0; i < num_sites(); ++i) {
    if (m[i] < 0 || m[i] >= d_->dims[i]) return -1;
    p += m[i] * d_->strides[i];
  }
  return d_->lookup[p];
}

CompositeSpace CompositeSpace::subspace(const std::vector<int>& sites) const {
  if (sites.empty()) throw std::invalid_argument("subspace: no sites");
  std::vector<int> pos(num_sites(), -1);
  std::vector<int> dims;
  for (int s : sites) {
    if (s < 0 || s >= num_sites()) throw std::invalid_argument("subspace: site out of range");
    if (pos[s] >= 0) throw std::invalid_argument("subspace: repeated site");
    pos[s] = static_cast<int>(dims.size());
    dims.push_back(d_->dims[s]);
  }
  std::vector<Truncation> truncs;
  for (const auto& t : d_->truncations) {
    Truncation r;
    r.max_total = t.max_total;
    for (int s : t.sites) {
      if (pos[s] >= 0) r.sites.push_back(pos[s]);
    }
    if (!r.sites.empty()) truncs.push_back(std::move(r));
  }
  return CompositeSpace(std::move(dims), std::move(truncs));
}

CompositeSpace CompositeSpace::untruncated() const { return CompositeSpace(d_->dims); }

bool CompositeSpace::operator==(const CompositeSpace& other) const {
  if (d_ == other.d_) return true;
  if (d_->dims != other.d_->dims || dim() != other.dim()) return false;
  for (int k = 0; k < dim(); ++k) {
    if (d_->basis[k] != other.d_->basis[k]) return false;
  }
  return true;
}

std::string CompositeSpace::describe() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < num_sites(); ++i) os << (i ? "," : "") << d_->dims[i];
  os << "]";
  for (const auto& t : d_->truncations) {
    os << " sum{";
    for (std::size_t j = 0; j < t.sites.size(); ++j) os << (j ? "," : "") << t.sites[j];
    os << "}<=" << t.max_total;
  }
  os << " dim=" << dim();
  return os.str();
}

CompositeSpace concat(const CompositeSpace& a, const CompositeSpace& b) {
  std::vector<int> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  std::vector<Truncation> truncs = a.truncations();
  for (auto t : b.truncations()) {
    for (int& s : t.sites) s += a.num_sites();
    truncs.push_back(std::move(t));
  }
  return CompositeSpace(std::move(dims), std::move(truncs));
}

std::vector<int> complement_sites(const CompositeSpace& space, const std::vector<int>& sites) {
  std::vector<int> out;
  for (int s = 0; s < space.num_sites(); ++s) {
    if (std::find(sites.begin(), sites.end(), s) == sites.end()) out.push_back(s);
  }
  return out;
}

}  // namespace nrq
