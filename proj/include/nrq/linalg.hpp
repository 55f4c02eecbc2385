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

#include <cstdint>
#include <random>
#include <variant>

#include "nrq/operator.hpp"

namespace nrq {

// Matrix exponential (Pade scaling and squaring). Throws std::invalid_argument
// for non-square or non-finite input and std::overflow_error if the result
// is not finite.
Mat expm(const Mat& m);

double trace_norm(const Mat& m);
double trace_norm(const Operator& op);

// Largest absolute entry of a - b.
double max_abs_diff(const Mat& a, const Mat& b);
double hermiticity_defect(const Mat& m);
Mat hermitian_part(const Mat& m);
// Eigenvalues of the Hermitian part, ascending.
RVec hermitian_eigenvalues(const Mat& m);
// Columns spanning the numerical kernel (singular values below `cutoff`).
Mat kernel_basis(const Mat& m, double cutoff);
// Orthonormal basis of the column span, rank decided by `cutoff`.
Mat range_basis(const Mat& m, double cutoff);

// Haar unitaries from QR of a Ginibre matrix with the phase correction;
// uniform pure states; Hilbert-Schmidt random densities.
enum class SampleKind { haar_unitary, pure_state, density };
using Rng = std::mt19937_64;

Mat haar_unitary(int d, Rng& rng);
Vec random_pure_vector(int d, Rng& rng);
Mat random_density_matrix(int d, Rng& rng);
Mat random_hermitian(int d, Rng& rng);  // GUE-like, unit-variance entries
Mat ginibre(int rows, int cols, Rng& rng);

Operator haar_unitary(const CompositeSpace& space, std::uint64_t seed);
Ket random_pure_state(const CompositeSpace& space, std::uint64_t seed);
Operator random_density(const CompositeSpace& space, std::uint64_t seed);

std::variant<Operator, Ket> random_sample(SampleKind kind, int dim, std::uint64_t seed);

}  // namespace nrq
