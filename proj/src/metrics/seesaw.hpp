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

// Building blocks shared by the diamond-norm ascent and the isolation
// optimizer. A map Delta is given by its Choi matrix J (input factor first);
// psi lives on input (x) ancilla with the input index slowest.

#include "nrq/constants.hpp"

namespace nrq::detail {

// (Delta (x) id)(psi psi^+) on output (x) ancilla, Hermitian part.
Mat half_output(const Mat& choi, int d_in, int d_out, const Vec& psi);
// Same without symmetrizing; linear in the Choi matrix, so it is also valid
// for non-Hermitian family members.
Mat apply_half(const Mat& choi, int d_in, int d_out, const Vec& psi);

// sign(Y) for Hermitian Y; writes ||Y||_1 to trace_norm.
Mat sign_of(const Mat& y, double& trace_norm);

// G with <psi|G|psi> = Tr(M (Delta (x) id)(psi psi^+)).
Mat pullback(const Mat& choi, int d_in, int d_out, int d_anc, const Mat& m);

// Top eigenvector of a Hermitian matrix.
Vec top_eigenvector(const Mat& h);
Vec bottom_eigenvector(const Mat& h);

}  // namespace nrq::detail
