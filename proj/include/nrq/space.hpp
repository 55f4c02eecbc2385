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

#include <memory>
#include <string>
#include <vector>

namespace nrq {

// A set of sites whose summed local index is capped. For bosonic modes the
// local index is the photon number, so this is a total-excitation cutoff.
struct Truncation {
  std::vector<int> sites;
  int max_total = 0;
};

// Ordered list of subsystem dimensions, optionally restricted to the
// multi-indices that satisfy every truncation. Basis kets are ordered
// lexicographically with the leftmost site varying slowest. Cheap to copy.
class CompositeSpace {
 public:
  CompositeSpace();
  explicit CompositeSpace(std::vector<int> dims, std::vector<Truncation> truncations = {});

  int dim() const;
  int num_sites() const;
  int site_dim(int site) const;
  const std::vector<int>& dims() const;
  const std::vector<Truncation>& truncations() const;
  bool truncated() const;
  // Dimension of the untruncated product space.
  int product_dim() const;

  // k-th basis ket as a multi-index.
  const std::vector<int>& multi_index(int k) const;
  // Position of a multi-index in the basis, or -1 if it is truncated away.
  int index_of(const std::vector<int>& m) const;

  // Space of the listed sites (in the listed order). Truncation groups are
  // restricted to the kept sites; this is exactly the set of marginal
  // multi-indices that occur in this space.
  CompositeSpace subspace(const std::vector<int>& sites) const;
  CompositeSpace untruncated() const;

  bool operator==(const CompositeSpace& other) const;
  bool operator!=(const CompositeSpace& other) const { return !(*this == other); }
  std::string describe() const;

 private:
  struct Data;
  std::shared_ptr<const Data> d_;
};

// Sites of b follow the sites of a; truncation groups are kept per factor.
CompositeSpace concat(const CompositeSpace& a, const CompositeSpace& b);

// Sites of a space not in the given list, ascending.
std::vector<int> complement_sites(const CompositeSpace& space, const std::vector<int>& sites);

}  // namespace nrq
