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

#include <cmath>
#include <stdexcept>

#include "nrq/linalg.hpp"
#include "nrq/metrics.hpp"

namespace nrq {

double log_negativity(const Operator& rho, const std::vector<int>& second) {
  if (!rho.is_density()) throw std::invalid_argument("log_negativity: input is not a density matrix");
  if (second.empty() || static_cast<int>(second.size()) >= rho.space().num_sites()) {
    throw std::invalid_argument("log_negativity: the second partition must be a nonempty strict subset");
  }
  const double n = trace_norm(partial_transpose(rho, second));
  return std::max(0.0, std::log2(n));
}

}  // namespace nrq
