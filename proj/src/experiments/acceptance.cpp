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
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

#include "nrq/experiments.hpp"
#include "nrq/linalg.hpp"
#include "nrq/metrics.hpp"
#include "nrq/models.hpp"

namespace nrq::experiments {

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

struct Outcome {
  bool passed;
  std::string detail;
};

Mat rotation_z(double angle) { return expm(cplx(0.0, -0.5 * angle) * ops::pauli_z()); }

Mat fock(int d, int n) {
  const Vec e = ops::basis_vector(d, n);
  return e * e.adjoint();
}

// Column access into an experiment table.
struct Columns {
  const Table& t;
  int index(const std::string& name) const {
    const auto it = std::find(t.columns.begin(), t.columns.end(), name);
    if (it == t.columns.end()) throw std::logic_error("missing column " + name);
    return static_cast<int>(it - t.columns.begin());
  }
  double num(std::size_t row, const std::string& name) const { return std::stod(t.rows[row][index(name)]); }
};

ExperimentOutput run_with(ExperimentOutput (*f)(RunContext&), Config config, std::uint64_t seed) {
  RunContext ctx{config, seed, 1};
  return f(ctx);
}

// --------------------------------------------------------------------------

Outcome gauge(std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> phase(-kPi, kPi);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const int d = 2 + k % 3;
    const Mat a = ginibre(d, d, rng);
    const Mat b = a * std::polar(1.0, phase(rng));
    worst = std::max(worst, max_abs_diff(dissipator_superop(a), dissipator_superop(b)));
  }
  return {worst < 1e-12, "max generator difference " + sci(worst)};
}

Outcome unitary_mixing(std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int n : {2, 3}) {
    for (int trial = 0; trial < 5; ++trial) {
      const int d = 2 + trial % 3;
      std::vector<Mat> l;
      for (int k = 0; k < n; ++k) l.push_back(ginibre(d, d, rng));
      const Mat w = haar_unitary(n, rng);
      Mat g1 = Mat::Zero(d * d, d * d);
      Mat g2 = Mat::Zero(d * d, d * d);
      for (int j = 0; j < n; ++j) {
        Mat mixed = Mat::Zero(d, d);
        for (int k = 0; k < n; ++k) mixed += w(j, k) * l[k];
        g1 += dissipator_superop(l[j]);
        g2 += dissipator_superop(mixed);
      }
      worst = std::max(worst, max_abs_diff(g1, g2));
    }
  }
  return {worst < 1e-11, "max generator difference " + sci(worst)};
}

Outcome trace_out(std::uint64_t seed) {
  Rng rng(seed);
  const CompositeSpace a_space({3});
  const CompositeSpace b_space({2});
  const Operator a(a_space, 0.5 * ginibre(3, 3, rng));
  const Operator u(b_space, haar_unitary(2, rng));
  const Lindbladian dir = directional(a, u, 1.0);
  const CompositeSpace& full = dir.space();
  const Operator hb(full, embed(random_hermitian(2, rng), full, 1));
  const Operator lb(full, embed(ginibre(2, 2, rng), full, 1));
  const Lindbladian l = dir + Lindbladian(full, hb, {{0.7, lb}});
  const Lindbladian alone = Lindbladian::dissipative(a_space, {{1.0, a}});
  const Operator rho_b = random_density(b_space, seed + 1);
  double worst = 0.0;
  for (double t : {0.1, 0.5, 1.0, 2.0, 5.0}) {
    const Channel cond = conditional_reduced_channel(propagator(l, t), {0}, {{{1}, rho_b.data()}});
    const Channel ref = channel_from_superop(propagator(alone, t));
    worst = std::max(worst, choi_distance(cond, ref));
  }
  return {worst < 1e-10, "max Choi distance " + sci(worst)};
}

Outcome stabilized_gate(std::uint64_t seed) {
  Config c;
  const ExperimentOutput out = run_with(run_gate_demo, c, seed);
  const Columns col{out.table};
  bool ok = true;
  double worst_infid = 0.0;
  double dark_dev = 0.0;
  for (std::size_t r = 0; r < out.table.rows.size(); ++r) {
    const int ell = static_cast<int>(col.num(r, "ell"));
    if (ell == 0) {
      dark_dev = col.num(r, "state_deviation");
      ok = ok && col.num(r, "dark") == 1.0 && dark_dev < 1e-10;
    } else {
      worst_infid = std::max(worst_infid, col.num(r, "infidelity"));
    }
  }
  ok = ok && worst_infid < 1e-6;
  return {ok, "max infidelity " + sci(worst_infid) + ", dark-state deviation " + sci(dark_dev)};
}

Outcome isolation_bound(std::uint64_t seed) {
  Config c;
  c.set("bounds.theta", "pi/6, pi/3, pi/2, pi");
  c.set("bounds.ell", "1, 2");
  c.set("bounds.n_max", "2");
  const ExperimentOutput out = run_with(run_bounds, c, seed);
  const Columns col{out.table};
  bool ok = true;
  double worst_excess = -1.0;
  double worst_maximal = 0.0;
  for (std::size_t r = 0; r < out.table.rows.size(); ++r) {
    const double iso = col.num(r, "iso_B_optimized");
    const double hull = col.num(r, "bound_hull");
    worst_excess = std::max(worst_excess, iso - hull);
    if (std::abs(col.num(r, "theta") * col.num(r, "ell") - kPi) < 1e-9) {
      worst_maximal = std::max(worst_maximal, iso);
      ok = ok && iso < 1e-4;
    }
  }
  ok = ok && worst_excess <= 1e-6;
  return {ok, "max (optimized - bound) " + sci(worst_excess) + ", max isolation at ell*theta = pi " + sci(worst_maximal)};
}

Outcome diamond_cross(std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const int d_in = 2 + k % 2;
    const int d_out = 2;
    auto random_channel = [&] {
      const Mat v = haar_unitary(3 * d_out, rng).leftCols(d_in);
      std::vector<Mat> kraus;
      for (int j = 0; j < 3; ++j) kraus.push_back(v.middleRows(j * d_out, d_out));
      return kraus_channel(CompositeSpace({d_in}), CompositeSpace({d_out}), kraus);
    };
    const Channel e1 = random_channel();
    const Channel e2 = random_channel();
    const Mat j = e1.choi() - e2.choi();
    const double asc = diamond_norm_ascent(j, d_in, d_out).value;
    const double sdp = diamond_norm_sdp(j, d_in, d_out).value;
    worst = std::max(worst, std::abs(asc - sdp));
  }
  double worst_unitary = 0.0;
  const CompositeSpace q({2});
  for (int k = 1; k <= 5; ++k) {
    const double theta = k * kPi / 5.0;
    const DiamondResult r = diamond_distance(identity_channel(q), unitary_channel(Operator(q, rotation_z(theta))));
    worst_unitary = std::max(worst_unitary, std::abs(r.value - 2.0 * std::sin(theta / 2.0)));
  }
  return {worst < 1e-6 && worst_unitary < 1e-6,
          "max |ascent - SDP| " + sci(worst) + ", max unitary-pair error " + sci(worst_unitary)};
}

Outcome fig3a(std::uint64_t seed) {
  const ExperimentOutput out = run_with(run_fig3a, Config{}, seed);
  const Columns col{out.table};
  std::map<int, std::vector<std::pair<double, double>>> series;
  for (std::size_t r = 0; r < out.table.rows.size(); ++r) {
    series[static_cast<int>(col.num(r, "ell"))].push_back({col.num(r, "kappa_over_J"), col.num(r, "infidelity")});
  }
  bool ok = series.count(1) && series.count(2);
  std::string detail;
  for (auto& [ell, s] : series) {
    std::sort(s.begin(), s.end());
    for (std::size_t i = 1; i < s.size(); ++i) ok = ok && s[i].second <= s[i - 1].second;
    ok = ok && s.back().first == 64.0 && s.back().second < 1e-2;
    detail += (detail.empty() ? "" : ", ") + std::string("ell=") + std::to_string(ell) + " infidelity at 64: " +
              sci(s.back().second);
  }
  return {ok, detail + ", flagged rows " + std::to_string(out.flagged_rows)};
}

Outcome fig3b(std::uint64_t seed) {
  const ExperimentOutput out = run_with(run_fig3b, Config{}, seed);
  const Columns col{out.table};
  bool ok = true;
  double min_gap = std::numeric_limits<double>::infinity();
  double min_cavity_64 = 1.0;
  for (std::size_t r = 0; r < out.table.rows.size(); ++r) {
    const double cav = col.num(r, "iso_cavity");
    min_gap = std::min(min_gap, cav - col.num(r, "iso_qubit_cond"));
    if (col.num(r, "kappa_over_J") == 64.0) min_cavity_64 = std::min(min_cavity_64, cav);
  }
  ok = min_gap > 0.0 && min_cavity_64 >= 0.99;
  return {ok, "cavity isolation at 64: " + sci(min_cavity_64) + ", min (cavity - qubit) " + sci(min_gap)};
}

Outcome fig4b(std::uint64_t seed) {
  const ExperimentOutput out = run_with(run_fig4b, Config{}, seed);
  const Columns col{out.table};
  double equal_dev = 0.0;
  double unequal_min = 1.0;
  int equal_rows = 0;
  for (std::size_t r = 0; r < out.table.rows.size(); ++r) {
    const double iso = col.num(r, "iso_A_cond");
    if (col.num(r, "gamma_split") == 1.0) {
      equal_dev = std::max(equal_dev, std::abs(iso - 1.0));
      ++equal_rows;
    } else {
      unequal_min = std::min(unequal_min, iso);
    }
  }
  const bool ok = equal_rows == 32 && equal_dev <= 1e-8 && unequal_min < 0.95;
  return {ok, "equal rates max |iso - 1| " + sci(equal_dev) + ", unequal rates min " + sci(unequal_min)};
}

Outcome fig4c(std::uint64_t seed) {
  const ExperimentOutput out = run_with(run_fig4c, Config{}, seed);
  const Columns col{out.table};
  double peak = 0.0;
  double last = 1.0;
  double last_t = 0.0;
  for (std::size_t r = 0; r < out.table.rows.size(); ++r) {
    const double t = col.num(r, "t");
    const double ln = col.num(r, "log_negativity");
    if (t > 0.0 && t < 30.0) peak = std::max(peak, ln);
    if (t >= last_t) {
      last_t = t;
      last = ln;
    }
  }
  const bool ok = peak >= 0.05 && std::abs(last_t - 30.0) < 1e-12 && last < 1e-6;
  return {ok, "peak " + sci(peak) + ", at t=30: " + sci(last)};
}

Outcome dephasing(std::uint64_t seed) {
  Rng rng(seed);
  const CompositeSpace q({2});
  double worst_closed = 0.0;
  for (int k = 0; k < 20; ++k) {
    const int d = 2 + k % 3;
    const CompositeSpace a_space({d});
    const Mat h = random_hermitian(d, rng);
    const Mat xi = 0.5 * random_hermitian(d, rng);
    const Operator hamiltonian = tensor(Operator(a_space, h), Operator::identity(q)) +
                                 tensor(Operator(a_space, xi), Operator(q, ops::pauli_z()));
    const Lindbladian l(hamiltonian.space(), hamiltonian, {});
    const double t = 1.0;
    const DephasingIsolation closed = dephasing_isolation_closed_form(h, xi, t);
    IsolationOptions opts;
    opts.seed = seed + static_cast<std::uint64_t>(k);
    const IsolationReport b = isolation(propagator(l, t), {{1}, {0}, {}}, Optimized{}, opts);
    worst_closed = std::max(worst_closed, std::abs(closed.iso_a - b.value));
  }
  const CompositeSpace two({2, 2});
  double worst_haar = 0.0;
  for (int k = 0; k < 10; ++k) {
    const Mat u = haar_unitary(4, rng);
    const Superoperator s(two, Eigen::kroneckerProduct(u.conjugate(), u).eval());
    IsolationOptions opts;
    opts.seed = seed + 100 + static_cast<std::uint64_t>(k);
    const double ia = isolation(s, {{0}, {1}, {}}, Optimized{}, opts).value;
    const double ib = isolation(s, {{1}, {0}, {}}, Optimized{}, opts).value;
    worst_haar = std::max(worst_haar, std::abs(ia - ib));
  }
  return {worst_closed < 1e-4 && worst_haar < 1e-3,
          "max |closed - optimized| " + sci(worst_closed) + ", max Haar |I_A - I_B| " + sci(worst_haar)};
}

Outcome redfield() {
  const double g = 0.3;
  const double tau = 0.5;
  const RedfieldCoefficients still = br_corrected_generator(g, tau, 0.0, 0.0);
  const double ref = 2.0 * g * g * tau;
  const double still_err = std::abs(still.gamma_br - ref) / ref;
  const double v = 0.05 / tau;
  const RedfieldCoefficients series = br_corrected_generator(g, tau, v, 0.0);
  const RedfieldCoefficients exact = br_exact_kernel(g, tau, [v](double s) { return v * s; }, 50.0 * tau);
  const double rel_gamma = std::abs(series.gamma_br - exact.gamma_br) / std::abs(exact.gamma_br);
  const double rel_sigma = std::abs(series.sigma - exact.sigma) / std::abs(exact.sigma);
  const bool ok = still.sigma == 0.0 && still_err < 1e-12 && rel_gamma < 1e-2 && rel_sigma < 1e-2;
  return {ok, "static rate error " + sci(still_err) + ", series vs kernel: rate " + sci(rel_gamma) + ", shift " +
                  sci(rel_sigma)};
}

Outcome chiral() {
  const double gamma_a = 1.0;
  const double gamma_c = 100.0;
  const double lambda = 50.0;
  const double theta = kPi / 3.0;
  const Mat e = 0.5 * theta * ops::pauli_z();
  const Mat target = expm(-kI * e);
  const Mat m = m_for_target(e, lambda, gamma_c);
  const double roundtrip = max_abs_diff(effective_u_b(gamma_c, lambda, m), target);
  const CompositeSpace q({2});
  const Lindbladian l = chiral_cascade(gamma_a, gamma_c, lambda, Operator(q, m), 1, 1);
  const Channel ch = conditional_reduced_channel(propagator(l, 20.0 / gamma_a), {1}, {{{0}, fock(2, 1)}, {{2}, fock(2, 0)}});
  const double infid = 1.0 - average_gate_fidelity(ch, target);
  return {roundtrip < 1e-12 && infid < 1e-2, "round trip " + sci(roundtrip) + ", gate infidelity " + sci(infid)};
}

Outcome mf_slope(std::uint64_t seed) {
  Rng rng(seed);
  const CompositeSpace a_space({3});
  const CompositeSpace q({2});
  const Operator a(a_space, ops::destroy(3));
  const Operator u(q, haar_unitary(2, rng));
  const double gamma = 1.0;
  const Lindbladian l = directional(a, u, gamma);
  std::vector<double> xs;
  std::vector<double> ys;
  for (double dt : {1e-2, 1e-3, 1e-4}) {
    const KrausPair k = mf_kraus(a, u, gamma, dt / gamma);
    const Channel step = kraus_channel(l.space(), l.space(), {k.m1.data(), k.m2.data()});
    const double err = max_abs_diff(step.superop(), propagator(l, dt / gamma).matrix());
    xs.push_back(std::log10(dt));
    ys.push_back(std::log10(err));
  }
  const double xm = (xs[0] + xs[1] + xs[2]) / 3.0;
  const double ym = (ys[0] + ys[1] + ys[2]) / 3.0;
  double sxy = 0.0;
  double sxx = 0.0;
  for (int i = 0; i < 3; ++i) {
    sxy += (xs[i] - xm) * (ys[i] - ym);
    sxx += (xs[i] - xm) * (xs[i] - xm);
  }
  const double slope = sxy / sxx;
  return {std::abs(slope - 2.0) <= 0.1, "log-log slope " + format_number(slope)};
}

Outcome multi_diss() {
  const MultiDissipatorModel model = multi_dissipator_two_mode(kPi / 4.0, kPi / 4.0, 1.0, 1.0, 2);
  const CompositeSpace& full = model.lindbladian.space();
  const CompositeSpace modes = full.subspace(model.mode_sites);
  const Superoperator limit = propagator(model.lindbladian, kLongTime);
  double worst = 0.0;
  for (int m = 0; m < 2; ++m) {
    for (int ell = 1; ell <= 2; ++ell) {
      std::vector<int> occ{0, 0};
      occ[m] = ell;
      const Vec e = ops::basis_vector(modes.dim(), modes.index_of(occ));
      const Channel ref = conditional_reduced_channel(limit, {model.b_site}, {{model.mode_sites, e * e.adjoint()}});
      worst = std::max(worst, choi_distance(multi_diss_steady_map(model, m, ell), ref));
    }
  }

  // theta = pi/2 generator grid against two collective dissipators.
  const double phi = 0.3;
  const double gamma = 1.0;
  const Mat sz = ops::pauli_z();
  const Mat id2 = ops::identity(2);
  const Mat pz = ops::pauli_z();
  const Mat px = ops::pauli_x();
  OperatorGrid h(2, std::vector<Mat>(2));
  for (int j = 0; j < 2; ++j) {
    for (int jp = 0; jp < 2; ++jp) h[j][jp] = (kPi / 2.0) * (pz(j, jp) * std::cos(phi) * sz + px(j, jp) * std::sin(phi) * id2);
  }
  const CompositeSpace a_space({3, 3}, {{{0, 1}, 2}});
  const MultiDissipatorModel md = multi_dissipator(a_space, {0, 1}, CompositeSpace({2}), generalized_unitary_from_generator(h), gamma);
  const CompositeSpace& sp = md.lindbladian.space();
  const Mat a1 = embed(ops::destroy(3), sp, 0);
  const Mat a2 = embed(ops::destroy(3), sp, 1);
  const Mat yp = (a1 + kI * a2) / std::sqrt(2.0);
  const Mat ym = (a1 - kI * a2) / std::sqrt(2.0);
  const Mat rp = embed(expm(kI * (kPi / 2.0 - phi) * sz), sp, 2);
  const Mat rm = embed(expm(kI * (-kPi / 2.0 + phi) * sz), sp, 2);
  const Mat expected = gamma * (dissipator_superop(rp * yp) + dissipator_superop(rm * ym));
  const double identity_err = max_abs_diff(liouvillian(md.lindbladian).matrix(), expected);
  return {worst < 1e-6 && identity_err < 1e-11,
          "steady map max Choi distance " + sci(worst) + ", decomposition error " + sci(identity_err)};
}

struct CriterionInfo {
  const char* name;
  double limit_seconds;
};

const CriterionInfo kCriteria[kCriteriaCount] = {
    {"gauge invariance", 1.0},
    {"unitary mixing invariance", 1.0},
    {"trace-out theorem", 5.0},
    {"stabilized gate", 10.0},
    {"B isolation bound", 120.0},
    {"diamond norm cross-validation", 300.0},
    {"fig3a infidelity", 300.0},
    {"fig3b isolation", 600.0},
    {"fig4b isolation", 600.0},
    {"fig4c log-negativity", 300.0},
    {"dephasing closed form", 900.0},
    {"Bloch-Redfield coefficients", 1.0},
    {"chiral cascade", 60.0},
    {"feedback Kraus order", 5.0},
    {"multi-dissipator steady map", 120.0},
};

}  // namespace

CriterionResult run_criterion(int id, std::uint64_t seed) {
  if (id < 1 || id > kCriteriaCount) throw std::out_of_range("criterion id out of range");
  CriterionResult r;
  r.id = id;
  r.name = kCriteria[id - 1].name;
  r.limit_seconds = kCriteria[id - 1].limit_seconds;
  const auto start = std::chrono::steady_clock::now();
  Outcome o{false, ""};
  try {
    switch (id) {
      case 1: o = gauge(seed); break;
      case 2: o = unitary_mixing(seed); break;
      case 3: o = trace_out(seed); break;
      case 4: o = stabilized_gate(seed); break;
      case 5: o = isolation_bound(seed); break;
      case 6: o = diamond_cross(seed); break;
      case 7: o = fig3a(seed); break;
      case 8: o = fig3b(seed); break;
      case 9: o = fig4b(seed); break;
      case 10: o = fig4c(seed); break;
      case 11: o = dephasing(seed); break;
      case 12: o = redfield(); break;
      case 13: o = chiral(); break;
      case 14: o = mf_slope(seed); break;
      case 15: o = multi_diss(); break;
    }
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.passed = o.passed && r.seconds < r.limit_seconds;
  r.detail = o.detail;
  if (r.seconds >= r.limit_seconds) r.detail += "; over the time limit";
  return r;
}

ExperimentOutput run_suite(RunContext& ctx) {
  const auto ids = ctx.config.integers("suite.criteria", {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15});
  ctx.config.reject_unused();
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] < 1 || ids[i] > kCriteriaCount) throw ConfigError("suite.criteria: unknown criterion " + std::to_string(ids[i]));
    if (i && ids[i] <= ids[i - 1]) throw ConfigError("suite.criteria: values must be strictly increasing");
  }
  ExperimentOutput out;
  out.table.columns = {"criterion", "name", "passed", "detail", "flag"};
  for (int id : ids) {
    const CriterionResult r = run_criterion(id, ctx.seed);
    out.table.add_row({std::to_string(id), r.name, r.passed ? "1" : "0", r.detail, r.passed ? "ok" : "failed"});
    if (!r.passed) ++out.flagged_rows;
    out.timings.push_back({"criterion_" + std::to_string(id), r.seconds});
  }
  return out;
}

}  // namespace nrq::experiments
