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
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "nrq/channels.hpp"

namespace nrq {

// ---------------------------------------------------------------------------
// Diamond norm

struct AscentOptions {
  int restarts = 16;
  std::uint64_t seed = 0x5eed;
  // Every start climbs until its per-step gain is below coarse_tol (at most
  // coarse_max_iter steps); the best start is then refined to tol.
  double coarse_tol = 1e-9;
  int coarse_max_iter = 150;
  int max_iter = 2000;
  double tol = 1e-14;
};

struct AscentResult {
  double value = 0.0;
  Vec psi;  // maximizing input on input (x) ancilla, ancilla dim = d_in
  int restarts = 0;
  int iterations = 0;
  double last_gain = 0.0;
};

// Lower bound on ||Delta||_diamond for a Hermiticity-preserving map given by
// its Choi matrix: alternating maximization of Tr(M (Delta (x) id)(psi psi^+))
// over -I <= M <= I and unit psi, from several random starts.
AscentResult diamond_norm_ascent(const Mat& choi, int d_in, int d_out, const AscentOptions& opts = {});

struct SdpDiamondResult {
  double value = 0.0;  // midpoint of the primal and dual bounds
  double lower = 0.0;
  double upper = 0.0;
  int iterations = 0;
  bool converged = false;
};

// ||Delta||_diamond = 2 min ||Tr_out Z||_inf s.t. Z >= 0, Z >= J(Delta), valid
// for trace-annihilating Hermiticity-preserving maps (differences of channels).
SdpDiamondResult diamond_norm_sdp(const Mat& choi, int d_in, int d_out);

struct DiamondOptions {
  AscentOptions ascent;
  // The SDP route runs when d_in * d_out is at most this.
  int cross_check_max_dim = 16;
  double agreement_tol = tol::evaluator_agreement;
};

struct DiamondResult {
  double value = 0.0;
  double ascent = 0.0;
  std::optional<double> sdp;
  bool cross_checked = false;
};

// Both evaluators for small problems; throws NumericError if they disagree.
DiamondResult diamond_norm(const Mat& choi, int d_in, int d_out, const DiamondOptions& opts = {});
// Requires both inputs CPTP.
DiamondResult diamond_distance(const Channel& e1, const Channel& e2, const DiamondOptions& opts = {});
double distinguish_probability(const Channel& e1, const Channel& e2, const DiamondOptions& opts = {});

// ---------------------------------------------------------------------------
// Isolation

enum class IsolationMethod { optimized, conditional, closed_form };
const char* to_string(IsolationMethod m);

struct OptimizerTrace {
  int restarts = 0;
  int iterations = 0;
  double final_step = 0.0;  // gain of the last iteration of the winning start
  bool converged = true;
};

struct IsolationReport {
  double value = 1.0;
  std::vector<Ket> argmax_pair;  // two states of the conditioning subsystem
  OptimizerTrace optimizer;
  IsolationMethod method = IsolationMethod::optimized;
  // Diamond distance of the argmax pair recomputed with diamond_distance.
  double certified_distance = 0.0;
};

struct IsolationOptions {
  int restarts = 24;
  std::uint64_t seed = 0x150;
  int max_iter = 5000;
  double tol = 1e-14;
  // Always tried as one restart (e.g. the physically expected pair).
  std::optional<std::pair<Vec, Vec>> seed_pair;
  DiamondOptions diamond;
};

struct Optimized {};
struct Conditional {
  Ket phi1;
  Ket phi2;
};
using IsolationMode = std::variant<Optimized, Conditional>;

// Isolation of `probed` against initial states of `other`. Sites not in
// either group must be given fixed states.
struct IsolationSetup {
  std::vector<int> probed;
  std::vector<int> other;
  std::vector<Placement> fixed;
};

IsolationReport isolation(const Superoperator& prop, const IsolationSetup& setup, const IsolationMode& mode,
                          const IsolationOptions& opts = {});
IsolationReport isolation(const Lindbladian& l, const IsolationSetup& setup, double t, const IsolationMode& mode,
                          const IsolationOptions& opts = {});
// Bipartite shorthand.
IsolationReport isolation(const Lindbladian& l, int probed, int other, double t, const IsolationMode& mode,
                          const IsolationOptions& opts = {});

// Works directly on a Choi family (see conditional_choi_family).
IsolationReport optimized_isolation(const ChoiFamily& family, const IsolationOptions& opts = {});
IsolationReport conditional_isolation(const ChoiFamily& family, const Vec& phi1, const Vec& phi2,
                                      const DiamondOptions& opts = {});

// ---------------------------------------------------------------------------
// Closed forms

struct BoundReport {
  double hull = 1.0;   // 1 - sqrt(1 - dist(0, hull(spec U^ell))^2), authoritative
  double phase = 1.0;  // 1 - max |sin(ell (beta_m - beta_n) / 2)|
  double min_overlap = 1.0;
};
BoundReport qubit_B_isolation_bound(const Mat& u_b, int ell);

struct DephasingIsolation {
  double iso_a;
  double iso_b;
};
DephasingIsolation dephasing_isolation_closed_form(const Mat& h_a, const Mat& xi_a, double t);

// ---------------------------------------------------------------------------
// Classification

enum class Reciprocity {
  reciprocal,
  nonreciprocal,
  unidirectional_a_to_b,
  unidirectional_b_to_a,
  maximally_unidirectional_a_to_b,
  maximally_unidirectional_b_to_a,
};
const char* to_string(Reciprocity r);

struct ClassifyOptions {
  double eps_eq = 1e-6;  // tolerance for "= 1" and "= 0"
  double eps_lt = 1e-3;  // margin for "< 1" and "!="
};

struct Classification {
  Reciprocity label;
  // Labels only describe the sampled grid.
  std::string scope;
};

Classification classify(const std::vector<double>& times, const std::vector<double>& iso_a,
                        const std::vector<double>& iso_b, const ClassifyOptions& opts = {});

// ---------------------------------------------------------------------------
// Entanglement

// log2 || rho^{T_second} ||_1.
double log_negativity(const Operator& rho, const std::vector<int>& second);

}  // namespace nrq
