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

#include <complex>

#include <Eigen/Dense>

namespace nrq {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

inline constexpr cplx kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

// Shared numerical tolerances. Tests and library checks both read from here.
namespace tol {
inline constexpr double hermiticity = 1e-12;
inline constexpr double trace = 1e-12;
inline constexpr double positivity = -1e-10;  // minimum allowed eigenvalue
inline constexpr double unitarity = 1e-12;
inline constexpr double ket_norm = 1e-12;
inline constexpr double cptp = 1e-9;
inline constexpr double trace_preservation = 1e-10;
inline constexpr double kernel = 1e-9;        // |Re lambda| cut for steady modes
inline constexpr double steady_checkpoint = 1e-9;
inline constexpr double evaluator_agreement = 1e-6;
inline constexpr double dark_singular = 1e-10;
}  // namespace tol

}  // namespace nrq
