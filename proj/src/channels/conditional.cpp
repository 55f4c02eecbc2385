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

#include "nrq/channels.hpp"

namespace nrq {

namespace {

Mat unit(int d, int r, int c) {
  Mat e = Mat::Zero(d, d);
  e(r, c) = 1.0;
  return e;
}

}  // namespace

Mat ChoiFamily::combine(const Mat& sigma) const {
  const int dv = vary_space.dim();
  if (sigma.rows() != dv || sigma.cols() != dv) throw std::invalid_argument("ChoiFamily::combine: wrong size");
  Mat j = Mat::Zero(choi.front().rows(), choi.front().cols());
  for (int k = 0; k < dv; ++k) {
    for (int l = 0; l < dv; ++l) {
      if (sigma(k, l) != cplx(0.0)) j += sigma(k, l) * choi[k * dv + l];
    }
  }
  return j;
}

ChoiFamily conditional_choi_family(const Superoperator& prop, const std::vector<int>& keep,
                                   const std::vector<int>& vary, const std::vector<Placement>& fixed) {
  const CompositeSpace& space = prop.space();
  if (keep.empty()) throw std::invalid_argument("conditional channel: nothing kept");
  ChoiFamily fam{space.subspace(keep), vary.empty() ? CompositeSpace() : space.subspace(vary), {}};
  const int dk = fam.keep_space.dim();
  const int dv = fam.vary_space.dim();
  const int D = space.dim();

  Mat inputs(static_cast<Eigen::Index>(D) * D, static_cast<Eigen::Index>(dk) * dk * dv * dv);
  int col = 0;
  for (int k = 0; k < dv; ++k) {
    for (int l = 0; l < dv; ++l) {
      for (int i = 0; i < dk; ++i) {
        for (int j = 0; j < dk; ++j) {
          std::vector<Placement> parts = fixed;
          parts.push_back({keep, unit(dk, i, j)});
          if (!vary.empty()) parts.push_back({vary, unit(dv, k, l)});
          inputs.col(col++) = vec(arrange(space, parts));
        }
      }
    }
  }
  const Mat outputs = prop.matrix() * inputs;

  col = 0;
  for (int kl = 0; kl < dv * dv; ++kl) {
    Mat j(dk * dk, dk * dk);
    for (int i = 0; i < dk; ++i) {
      for (int jj = 0; jj < dk; ++jj) {
        const Operator full(space, unvec(outputs.col(col++), D));
        const Mat block = partial_trace(full, keep).data();
        j.block(i * dk, jj * dk, dk, dk) = block;
      }
    }
    fam.choi.push_back(std::move(j));
  }
  return fam;
}

Channel conditional_reduced_channel(const Superoperator& prop, const std::vector<int>& keep,
                                    const std::vector<Placement>& fixed) {
  ChoiFamily fam = conditional_choi_family(prop, keep, {}, fixed);
  return Channel(fam.keep_space, fam.keep_space, std::move(fam.choi.front()));
}

Channel conditional_reduced_channel(const Lindbladian& l, const std::vector<int>& keep,
                                    const std::vector<Placement>& fixed, double t) {
  return conditional_reduced_channel(propagator(l, t), keep, fixed);
}

Channel conditional_reduced_channel(const Lindbladian& l, int fixed_site, const Operator& fixed_state, int keep_site,
                                    double t) {
  if (fixed_site == keep_site) throw std::invalid_argument("conditional channel: fixed and kept sites coincide");
  if (l.space().num_sites() != 2) {
    throw std::invalid_argument("conditional channel: site shorthand needs a bipartite space");
  }
  if (fixed_state.space() != l.space().subspace({fixed_site})) {
    throw std::invalid_argument("conditional channel: fixed state has the wrong dimension");
  }
  return conditional_reduced_channel(l, {keep_site}, {{{fixed_site}, fixed_state.data()}}, t);
}

Channel conditional_reduced_channel(const Lindbladian& l, int fixed_site, const Ket& fixed_state, int keep_site,
                                    double t) {
  return conditional_reduced_channel(l, fixed_site, fixed_state.projector(), keep_site, t);
}

}  // namespace nrq
