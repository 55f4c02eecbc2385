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
#include <stdexcept>

#include "nrq/linalg.hpp"
#include "nrq/metrics.hpp"
#include "seesaw.hpp"

namespace nrq {

const char* to_string(IsolationMethod m) {
  switch (m) {
    case IsolationMethod::optimized:
      return "optimized";
    case IsolationMethod::conditional:
      return "conditional";
    case IsolationMethod::closed_form:
      return "closed_form";
  }
  return "unknown";
}

namespace {

Mat pair_difference(const Vec& v1, const Vec& v2) { return v1 * v1.adjoint() - v2 * v2.adjoint(); }

Channel family_channel(const ChoiFamily& fam, const Vec& v) {
  return Channel(fam.keep_space, fam.keep_space, fam.combine(v * v.adjoint()));
}

struct Start {
  Vec v1, v2;
  double value = 0.0;
  double gain = 0.0;
  int iterations = 0;
};

// Joint alternating maximization of Tr(M (Delta_{v1,v2} (x) id)(psi psi^+))
// over M, psi and the conditioning pair. Every update is an exact
// maximization of a linear functional, so the objective never decreases.
Start climb(const ChoiFamily& fam, Vec v1, Vec v2, const IsolationOptions& opts) {
  const int d = fam.keep_space.dim();
  const int dv = fam.vary_space.dim();
  Vec psi = Vec::Zero(d * d);
  for (int i = 0; i < d; ++i) psi(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));

  Mat j = fam.combine(pair_difference(v1, v2));
  double value = 0.0;
  Mat m = detail::sign_of(detail::half_output(j, d, d, psi), value);
  Start s;
  int it = 0;
  for (; it < opts.max_iter; ++it) {
    psi = detail::top_eigenvector(detail::pullback(j, d, d, d, m));
    double after_psi = 0.0;
    m = detail::sign_of(detail::half_output(j, d, d, psi), after_psi);

    // Tr(M Y_sigma) = Tr(K sigma) with K(l, k) = Tr(M Y_{E_kl}).
    Mat k(dv, dv);
    for (int a = 0; a < dv; ++a) {
      for (int b = 0; b < dv; ++b) {
        const Mat y = detail::apply_half(fam.choi[a * dv + b], d, d, psi);
        k(b, a) = (m * y).trace();
      }
    }
    v1 = detail::top_eigenvector(k);
    v2 = detail::bottom_eigenvector(k);
    j = fam.combine(pair_difference(v1, v2));
    double next = 0.0;
    m = detail::sign_of(detail::half_output(j, d, d, psi), next);
    s.gain = next - value;
    value = std::max(value, next);
    if (s.gain < opts.tol) break;
  }
  s.v1 = std::move(v1);
  s.v2 = std::move(v2);
  s.value = value;
  s.iterations = it + 1;
  return s;
}

}  // namespace

IsolationReport conditional_isolation(const ChoiFamily& family, const Vec& phi1, const Vec& phi2,
                                      const DiamondOptions& opts) {
  const int dv = family.vary_space.dim();
  if (phi1.size() != dv || phi2.size() != dv) throw std::invalid_argument("conditional_isolation: state dimension");
  const Ket k1 = Ket::normalized(family.vary_space, phi1);
  const Ket k2 = Ket::normalized(family.vary_space, phi2);
  const DiamondResult d =
      diamond_distance(family_channel(family, k1.amplitudes()), family_channel(family, k2.amplitudes()), opts);
  IsolationReport r;
  r.value = std::clamp(1.0 - 0.5 * d.value, 0.0, 1.0);
  r.argmax_pair = {k1, k2};
  r.method = IsolationMethod::conditional;
  r.certified_distance = d.value;
  r.optimizer.restarts = 0;
  return r;
}

IsolationReport optimized_isolation(const ChoiFamily& family, const IsolationOptions& opts) {
  const int dv = family.vary_space.dim();
  if (opts.restarts < 1) throw std::invalid_argument("optimized_isolation: need at least one start");
  Rng rng(opts.seed);
  Start best;
  best.value = -1.0;
  int total_iterations = 0;
  for (int r = 0; r < opts.restarts; ++r) {
    Vec v1, v2;
    if (r == 0 && opts.seed_pair) {
      v1 = opts.seed_pair->first.normalized();
      v2 = opts.seed_pair->second.normalized();
    } else {
      v1 = random_pure_vector(dv, rng);
      v2 = random_pure_vector(dv, rng);
    }
    Start s = climb(family, v1, v2, opts);
    total_iterations += s.iterations;
    if (s.value > best.value) best = std::move(s);
  }

  const Ket k1(family.vary_space, best.v1.normalized());
  const Ket k2(family.vary_space, best.v2.normalized());
  const DiamondResult cert =
      diamond_distance(family_channel(family, k1.amplitudes()), family_channel(family, k2.amplitudes()), opts.diamond);
  const double dist = std::max(best.value, cert.value);

  IsolationReport r;
  r.value = std::clamp(1.0 - 0.5 * dist, 0.0, 1.0);
  r.argmax_pair = {k1, k2};
  r.method = IsolationMethod::optimized;
  r.certified_distance = cert.value;
  r.optimizer.restarts = opts.restarts;
  r.optimizer.iterations = total_iterations;
  r.optimizer.final_step = best.gain;
  r.optimizer.converged = best.gain < opts.tol;
  return r;
}

IsolationReport isolation(const Superoperator& prop, const IsolationSetup& setup, const IsolationMode& mode,
                          const IsolationOptions& opts) {
  if (setup.probed.empty() || setup.other.empty()) throw std::invalid_argument("isolation: empty site group");
  const ChoiFamily fam = conditional_choi_family(prop, setup.probed, setup.other, setup.fixed);
  if (const auto* c = std::get_if<Conditional>(&mode)) {
    if (c->phi1.space() != fam.vary_space || c->phi2.space() != fam.vary_space) {
      throw std::invalid_argument("isolation: conditioning states live on the wrong space");
    }
    return conditional_isolation(fam, c->phi1.amplitudes(), c->phi2.amplitudes(), opts.diamond);
  }
  if (fam.vary_space.dim() > 4) {
    throw std::invalid_argument("isolation: optimized mode supports conditioning subsystems of dimension <= 4");
  }
  return optimized_isolation(fam, opts);
}

IsolationReport isolation(const Lindbladian& l, const IsolationSetup& setup, double t, const IsolationMode& mode,
                          const IsolationOptions& opts) {
  return isolation(propagator(l, t), setup, mode, opts);
}

IsolationReport isolation(const Lindbladian& l, int probed, int other, double t, const IsolationMode& mode,
                          const IsolationOptions& opts) {
  if (probed == other) throw std::invalid_argument("isolation: probed and conditioning sites coincide");
  if (l.space().num_sites() != 2) throw std::invalid_argument("isolation: site shorthand needs a bipartite space");
  return isolation(l, IsolationSetup{{probed}, {other}, {}}, t, mode, opts);
}

}  // namespace nrq
