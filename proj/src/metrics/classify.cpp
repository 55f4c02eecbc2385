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

#include "nrq/metrics.hpp"

namespace nrq {

const char* to_string(Reciprocity r) {
  switch (r) {
    case Reciprocity::reciprocal:
      return "reciprocal";
    case Reciprocity::nonreciprocal:
      return "nonreciprocal";
    case Reciprocity::unidirectional_a_to_b:
      return "unidirectional(A->B)";
    case Reciprocity::unidirectional_b_to_a:
      return "unidirectional(B->A)";
    case Reciprocity::maximally_unidirectional_a_to_b:
      return "maximally_unidirectional(A->B)";
    case Reciprocity::maximally_unidirectional_b_to_a:
      return "maximally_unidirectional(B->A)";
  }
  return "unknown";
}

Classification classify(const std::vector<double>& times, const std::vector<double>& iso_a,
                        const std::vector<double>& iso_b, const ClassifyOptions& opts) {
  if (times.empty() || times.size() != iso_a.size() || times.size() != iso_b.size()) {
    throw std::invalid_argument("classify: grids must be nonempty and of equal length");
  }
  auto all_one = [&](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [&](double x) { return x >= 1.0 - opts.eps_eq; });
  };
  auto some_zero = [&](const std::vector<double>& v) {
    return std::any_of(v.begin(), v.end(), [&](double x) { return x <= opts.eps_eq; });
  };
  auto some_below_one = [&](const std::vector<double>& v) {
    return std::any_of(v.begin(), v.end(), [&](double x) { return x < 1.0 - opts.eps_lt; });
  };

  Reciprocity label = Reciprocity::reciprocal;
  if (all_one(iso_a) && some_zero(iso_b)) {
    label = Reciprocity::maximally_unidirectional_a_to_b;
  } else if (all_one(iso_b) && some_zero(iso_a)) {
    label = Reciprocity::maximally_unidirectional_b_to_a;
  } else if (all_one(iso_a) && some_below_one(iso_b)) {
    label = Reciprocity::unidirectional_a_to_b;
  } else if (all_one(iso_b) && some_below_one(iso_a)) {
    label = Reciprocity::unidirectional_b_to_a;
  } else {
    for (std::size_t i = 0; i < times.size(); ++i) {
      if (std::abs(iso_a[i] - iso_b[i]) > opts.eps_lt) {
        label = Reciprocity::nonreciprocal;
        break;
      }
    }
  }
  const auto [lo, hi] = std::minmax_element(times.begin(), times.end());
  std::ostringstream os;
  os << "sampled on " << times.size() << " times in [" << *lo << ", " << *hi << "]";
  return {label, os.str()};
}

}  // namespace nrq
