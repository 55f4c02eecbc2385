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
#include <stdexcept>
#include <string>

#include "nrq/errors.hpp"
#include "nrq/linalg.hpp"
#include "nrq/liouville.hpp"

namespace nrq {

Superoperator propagator(const Lindbladian& l, double t) {
  if (std::isinf(t) && t > 0) return asymptotic_limit(l).projector;
  if (!(t >= 0.0)) throw std::invalid_argument("propagator: time must be nonnegative");
  const Superoperator gen = liouvillian(l);
  return Superoperator(l.space(), expm(t * gen.matrix()));
}

namespace {

// Dormand-Prince 5(4), stepping exactly onto every requested output time.
class DormandPrince {
 public:
  DormandPrince(const Mat& gen, double rtol, double atol) : g_(gen), rtol_(rtol), atol_(atol) {}

  void advance(Vec& y, double t0, double t1, double& h) {
    double t = t0;
    int steps = 0;
    while (t < t1) {
      if (++steps > 10000000) throw NumericError("propagate: Runge-Kutta step budget exhausted");
      const double step = std::min(h, t1 - t);
      Vec y5, err;
      attempt(y, step, y5, err);
      double e = 0.0;
      for (Eigen::Index i = 0; i < y.size(); ++i) {
        const double sc = atol_ + rtol_ * std::max(std::abs(y(i)), std::abs(y5(i)));
        e = std::max(e, std::abs(err(i)) / sc);
      }
      if (e <= 1.0) {
        t = (step == t1 - t) ? t1 : t + step;
        y = y5;
      }
      const double factor = e == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(e, -0.2), 0.2, 5.0);
      // A step shortened to land on t1 says nothing about the next one.
      h = (e <= 1.0 && step < h) ? std::max(h, step * factor) : step * factor;
      if (!(h > 1e-15 * std::max(1.0, t1))) throw NumericError("propagate: Runge-Kutta step collapsed");
    }
  }

 private:
  void attempt(const Vec& y, double h, Vec& y5, Vec& err) const {
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                            b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                            e6 = 22.0 / 525, e7 = -1.0 / 40;
    const Vec k1 = g_ * y;
    const Vec k2 = g_ * (y + h * a21 * k1);
    const Vec k3 = g_ * (y + h * (a31 * k1 + a32 * k2));
    const Vec k4 = g_ * (y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const Vec k5 = g_ * (y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Vec k6 = g_ * (y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const Vec k7 = g_ * y5;
    err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
  }

  const Mat& g_;
  double rtol_;
  double atol_;
};

Operator finish(const CompositeSpace& space, Mat rho, double t) {
  if (std::abs(rho.trace() - 1.0) > 1e-9) {
    throw NumericError("propagate: trace drifted to " + std::to_string(std::abs(rho.trace())) + " at t=" +
                       std::to_string(t));
  }
  if (hermiticity_defect(rho) > tol::hermiticity) rho = hermitian_part(rho);
  return Operator(space, std::move(rho));
}

}  // namespace

std::vector<Operator> propagate(const Lindbladian& l, const Operator& rho0, const std::vector<double>& times,
                                const PropagationOptions& opts) {
  if (rho0.space() != l.space()) throw std::invalid_argument("propagate: state space mismatch");
  if (!rho0.is_density()) throw std::invalid_argument("propagate: initial state is not a density matrix");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0) || !std::isfinite(times[i])) throw std::invalid_argument("propagate: bad time");
    if (i && times[i] < times[i - 1]) throw std::invalid_argument("propagate: times must be sorted");
  }
  const int d = l.dim();
  const Mat gen = liouvillian(l).matrix();
  std::vector<Operator> out;
  out.reserve(times.size());
  Vec y = vec(rho0.data());

  if (opts.method == PropagationMethod::exponential) {
    double t_prev = 0.0;
    for (double t : times) {
      if (t > t_prev) y = expm((t - t_prev) * gen) * y;
      t_prev = t;
      out.push_back(finish(l.space(), unvec(y, d), t));
    }
    return out;
  }

  DormandPrince rk(gen, opts.rtol, opts.atol);
  const double norm = gen.cwiseAbs().rowwise().sum().maxCoeff();
  double h = norm > 0 ? 0.01 / norm : 1.0;
  double t_prev = 0.0;
  for (double t : times) {
    if (t > t_prev) rk.advance(y, t_prev, t, h);
    t_prev = t;
    out.push_back(finish(l.space(), unvec(y, d), t));
  }
  return out;
}

SteadyCheck steady_check(const Lindbladian& l, const Operator& rho0, double t, double spacing) {
  const auto states = propagate(l, rho0, {t, t + spacing});
  const double dist = 0.5 * trace_norm(states[1].data() - states[0].data());
  return {dist, dist < tol::steady_checkpoint};
}

}  // namespace nrq
