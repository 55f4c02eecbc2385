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

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "nrq/models.hpp"

namespace nrq {

namespace {

constexpr double kWindow = 0.2;

void check_bath(double tau_e) {
  if (!(tau_e > 0.0)) throw std::invalid_argument("Bloch-Redfield: bath memory time must be positive");
}

}  // namespace

RedfieldCoefficients br_corrected_generator(double g_eff, double tau_e, double theta_dot, double theta_ddot) {
  check_bath(tau_e);
  const double g2 = g_eff * g_eff;
  const double x = tau_e * theta_dot;
  RedfieldCoefficients r;
  r.sigma = -g2 * tau_e * tau_e * (theta_dot - tau_e * theta_ddot);
  r.gamma_br = 2.0 * g2 * tau_e * (1.0 - x * x);
  r.in_window = std::abs(x) <= kWindow;
  return r;
}

RedfieldCoefficients br_exact_kernel(double g_eff, double tau_e, const std::function<double(double)>& theta,
                                     double t) {
  check_bath(tau_e);
  if (!(t >= 0.0)) throw std::invalid_argument("br_exact_kernel: negative time");
  using boost::math::quadrature::gauss_kronrod;
  const double th = theta(t);
  auto re = [&](double s) { return std::exp(-(t - s) / tau_e) * std::cos(th - theta(s)); };
  auto im = [&](double s) { return -std::exp(-(t - s) / tau_e) * std::sin(th - theta(s)); };
  const double g2 = g_eff * g_eff;
  const double k_re = g2 * gauss_kronrod<double, 61>::integrate(re, 0.0, t, 20, 1e-13);
  const double k_im = g2 * gauss_kronrod<double, 61>::integrate(im, 0.0, t, 20, 1e-13);
  const double h = 1e-5 * std::max(1.0, tau_e);
  const double slope = (theta(t + h) - theta(t - h)) / (2.0 * h);
  return {k_im, 2.0 * k_re, std::abs(tau_e * slope) <= kWindow};
}

}  // namespace nrq
