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
#include <string>

#include "nrq/experiments.hpp"
#include "nrq/linalg.hpp"
#include "nrq/metrics.hpp"
#include "nrq/models.hpp"

namespace nrq::experiments {

namespace {

std::string cell(double v) { return format_number(v); }
std::string cell(int v) { return std::to_string(v); }

Mat projector(int d, int k) {
  const Vec e = ops::basis_vector(d, k);
  return e * e.adjoint();
}

Mat rotation_z(double angle) { return expm(cplx(0.0, -0.5 * angle) * ops::pauli_z()); }

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

void require_grid(const std::vector<double>& g, const std::string& key) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    require(g[i] > 0.0, key + ": values must be positive");
    if (i) require(g[i] > g[i - 1], key + ": values must be strictly increasing");
  }
}

void require_ints(const std::vector<int>& g, int lo, int hi, const std::string& key) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    require(g[i] >= lo && g[i] <= hi, key + ": value out of range [" + std::to_string(lo) + ", " +
                                          std::to_string(hi) + "]");
    if (i) require(g[i] > g[i - 1], key + ": values must be strictly increasing");
  }
}

std::string join_flags(const std::vector<std::string>& f) {
  if (f.empty()) return "ok";
  std::string s;
  for (const auto& x : f) s += (s.empty() ? "" : ";") + x;
  return s;
}

struct Row {
  std::vector<std::string> cells;
  bool flagged = false;
};

ExperimentOutput assemble(std::vector<std::string> columns, const std::vector<Row>& rows) {
  ExperimentOutput out;
  columns.push_back("flag");
  out.table.columns = std::move(columns);
  for (const auto& r : rows) {
    out.table.add_row(r.cells);
    if (r.flagged) ++out.flagged_rows;
  }
  return out;
}

Row finish(std::vector<std::string> cells, const std::vector<std::string>& flags) {
  cells.push_back(join_flags(flags));
  return {std::move(cells), !flags.empty()};
}

// Cavity-qubit-reservoir point shared by the two fig3 experiments.
struct CavityPoint {
  EffectiveParams eff;
  Lindbladian l;
};

CavityPoint cavity_point(double j, double ratio, double theta, int n_max_a, int n_max_c) {
  const double kappa = ratio * j;
  const double lc = lambda_c_for_theta(theta, kappa);
  const EffectiveParams p = effective_params(j, kappa, lc);
  return {p, cavity_qubit_full(j, kappa, lc, -p.lambda_eff, n_max_a, n_max_c)};
}

double gate_infidelity(const Lindbladian& l, int ell, int n_max_c, double theta, double t) {
  using namespace cavity_sites;
  const int da = l.space().site_dim(kCavity);
  const Channel ch = conditional_reduced_channel(
      propagator(l, t), {kQubit}, {{{kCavity}, projector(da, ell)}, {{kReservoir}, projector(n_max_c + 1, 0)}});
  return 1.0 - average_gate_fidelity(ch, rotation_z(ell * theta));
}

}  // namespace

ExperimentOutput run_fig3a(RunContext& ctx) {
  auto& c = ctx.config;
  const double theta = c.number("fig3a.theta_eff", kPi / 6.0);
  const auto ratios = c.numbers("fig3a.kappa_over_j", {2, 4, 8, 16, 32, 64});
  const auto ells = c.integers("fig3a.ell", {1, 2});
  const double j = c.number("fig3a.j", 1.0);
  const int n_max_c = c.integer("fig3a.n_max_c", 2);
  const double t_gamma = c.number("fig3a.t_gamma", 30.0);
  const double spacing_gamma = c.number("fig3a.steady_spacing_gamma", 1.0);
  const bool truncation_check = c.flag("fig3a.truncation_check", true);
  c.reject_unused();
  require(std::abs(theta) > 0.0 && std::abs(theta) < kPi, "fig3a.theta_eff must lie in (-pi, pi) and be nonzero");
  require_grid(ratios, "fig3a.kappa_over_j");
  require_ints(ells, 1, 4, "fig3a.ell");
  require(j > 0.0, "fig3a.j must be positive");
  require(n_max_c >= 1, "fig3a.n_max_c must be at least 1");
  require(t_gamma > 0.0 && spacing_gamma > 0.0, "fig3a times must be positive");

  const int n = static_cast<int>(ratios.size() * ells.size());
  const auto rows = parallel_map(n, ctx.jobs, [&](int idx) {
    const double ratio = ratios[idx / ells.size()];
    const int ell = ells[idx % ells.size()];
    const CavityPoint pt = cavity_point(j, ratio, theta, ell, n_max_c);
    const double t = t_gamma / pt.eff.gamma_eff;
    const double infid = gate_infidelity(pt.l, ell, n_max_c, theta, t);

    std::vector<std::string> flags;
    using namespace cavity_sites;
    const Vec plus = Vec::Constant(2, 1.0 / std::sqrt(2.0));
    const Operator rho0(pt.l.space(), arrange(pt.l.space(), {{{kCavity}, projector(ell + 1, ell)},
                                                             {{kQubit}, plus * plus.adjoint()},
                                                             {{kReservoir}, projector(n_max_c + 1, 0)}}));
    if (!steady_check(pt.l, rho0, t, spacing_gamma / pt.eff.gamma_eff).converged) flags.push_back("unsteady");
    if (truncation_check && ell == ells.front()) {
      const CavityPoint wide = cavity_point(j, ratio, theta, ell, 2 * n_max_c);
      if (std::abs(gate_infidelity(wide.l, ell, 2 * n_max_c, theta, t) - infid) > 1e-9) flags.push_back("truncation");
    }
    return finish({cell(ratio), cell(ell), cell(infid)}, flags);
  });
  return assemble({"kappa_over_J", "ell", "infidelity"}, rows);
}

ExperimentOutput run_fig3b(RunContext& ctx) {
  auto& c = ctx.config;
  const double theta = c.number("fig3b.theta_eff", kPi / 6.0);
  const auto ratios = c.numbers("fig3b.kappa_over_j", {2, 4, 8, 16, 32, 64});
  const auto n_maxes = c.integers("fig3b.n_max", {1, 2});
  const double j = c.number("fig3b.j", 1.0);
  const int n_max_c = c.integer("fig3b.n_max_c", 2);
  const double t_gamma = c.number("fig3b.t_gamma", kPi);
  const int restarts = c.integer("fig3b.restarts", 24);
  c.reject_unused();
  require(std::abs(theta) > 0.0 && std::abs(theta) < kPi, "fig3b.theta_eff must lie in (-pi, pi) and be nonzero");
  require_grid(ratios, "fig3b.kappa_over_j");
  require_ints(n_maxes, 1, 3, "fig3b.n_max");
  require(j > 0.0, "fig3b.j must be positive");
  require(n_max_c >= 1, "fig3b.n_max_c must be at least 1");
  require(t_gamma > 0.0, "fig3b.t_gamma must be positive");
  require(restarts >= 1, "fig3b.restarts must be at least 1");

  const int n = static_cast<int>(ratios.size() * n_maxes.size());
  const auto rows = parallel_map(n, ctx.jobs, [&](int idx) {
    using namespace cavity_sites;
    const double ratio = ratios[idx / n_maxes.size()];
    const int n_max = n_maxes[idx % n_maxes.size()];
    const CavityPoint pt = cavity_point(j, ratio, theta, n_max, n_max_c);
    const Superoperator prop = propagator(pt.l, t_gamma / pt.eff.gamma_eff);
    const std::vector<Placement> vacuum{{{kReservoir}, projector(n_max_c + 1, 0)}};

    IsolationOptions opts;
    opts.restarts = restarts;
    opts.seed = ctx.seed + static_cast<std::uint64_t>(idx);
    opts.seed_pair = std::make_pair(Vec(ops::basis_vector(2, 0)), Vec(ops::basis_vector(2, 1)));
    const IsolationReport cav = isolation(prop, {{kCavity}, {kQubit}, vacuum}, Optimized{}, opts);

    const CompositeSpace cav_space = pt.l.space().subspace({kCavity});
    const IsolationReport qb = isolation(prop, {{kQubit}, {kCavity}, vacuum},
                                         Conditional{Ket::basis(cav_space, 0), Ket::basis(cav_space, n_max)}, {});
    std::vector<std::string> flags;
    if (cav.optimizer.final_step > 1e-9) flags.push_back("optimizer");
    return finish({cell(ratio), cell(n_max), cell(cav.value), cell(qb.value)}, flags);
  });
  return assemble({"kappa_over_J", "n_max", "iso_cavity", "iso_qubit_cond"}, rows);
}

namespace {

struct MultiSetup {
  double theta, phi, gamma;
  int cutoff;
  std::vector<double> splits;
};

MultiSetup read_multi(Config& c, const std::string& prefix, std::vector<double> default_splits) {
  MultiSetup s;
  s.theta = c.number(prefix + ".theta", kPi / 4.0);
  s.phi = c.number(prefix + ".phi", kPi / 4.0);
  s.gamma = c.number(prefix + ".gamma", 1.0);
  s.cutoff = c.integer(prefix + ".total_photons", 2);
  s.splits = c.numbers(prefix + ".gamma_split", default_splits);
  return s;
}

void check_multi(const MultiSetup& s, const std::string& prefix) {
  require(s.gamma > 0.0, prefix + ".gamma must be positive");
  require(s.cutoff >= 1 && s.cutoff <= 4, prefix + ".total_photons must lie in [1, 4]");
  for (double x : s.splits) require(x >= 0.0 && x <= 2.0, prefix + ".gamma_split values must lie in [0, 2]");
}

// gamma_split = gamma1 / gamma with gamma = (gamma1 + gamma2) / 2.
MultiDissipatorModel multi_model(const MultiSetup& s, double split) {
  return multi_dissipator_two_mode(s.theta, s.phi, split * s.gamma, (2.0 - split) * s.gamma, s.cutoff);
}

}  // namespace

ExperimentOutput run_fig4b(RunContext& ctx) {
  auto& c = ctx.config;
  const MultiSetup s = read_multi(c, "fig4b", {1.0, 2.0});
  const double t_max_gamma = c.number("fig4b.t_max_gamma", 5.0);
  const int samples = c.integer("fig4b.samples", 32);
  const int restarts = c.integer("fig4b.restarts", 16);
  c.reject_unused();
  check_multi(s, "fig4b");
  require(t_max_gamma > 0.0, "fig4b.t_max_gamma must be positive");
  require(samples >= 1, "fig4b.samples must be at least 1");
  require(restarts >= 1, "fig4b.restarts must be at least 1");

  const int n = static_cast<int>(s.splits.size()) * samples;
  const auto rows = parallel_map(n, ctx.jobs, [&](int idx) {
    const double split = s.splits[idx / samples];
    const int k = idx % samples + 1;
    const double t = k * (t_max_gamma / s.gamma) / samples;
    const MultiDissipatorModel m = multi_model(s, split);
    const CompositeSpace q = m.lindbladian.space().subspace({m.b_site});
    Vec plus(2), minus(2);
    plus << 1.0, 1.0;
    minus << 1.0, -1.0;
    IsolationOptions opts;
    opts.diamond.ascent.restarts = restarts;
    opts.diamond.ascent.seed = ctx.seed + static_cast<std::uint64_t>(idx);
    const IsolationReport r =
        isolation(propagator(m.lindbladian, t), {m.mode_sites, {m.b_site}, {}},
                  Conditional{Ket::normalized(q, plus), Ket::normalized(q, minus)}, opts);
    return finish({cell(t), cell(split), cell(r.value)}, {});
  });
  return assemble({"t", "gamma_split", "iso_A_cond"}, rows);
}

ExperimentOutput run_fig4c(RunContext& ctx) {
  auto& c = ctx.config;
  const MultiSetup s = read_multi(c, "fig4c", {1.0});
  const double t_max_gamma = c.number("fig4c.t_max_gamma", 30.0);
  const int samples = c.integer("fig4c.samples", 60);
  c.reject_unused();
  check_multi(s, "fig4c");
  require(s.cutoff >= 2, "fig4c.total_photons must be at least 2 for the |11> input");
  require(t_max_gamma > 0.0, "fig4c.t_max_gamma must be positive");
  require(samples >= 1, "fig4c.samples must be at least 1");

  std::vector<double> times;
  for (int k = 0; k <= samples; ++k) times.push_back(k * (t_max_gamma / s.gamma) / samples);

  const auto blocks = parallel_map(static_cast<int>(s.splits.size()), ctx.jobs, [&](int idx) {
    const double split = s.splits[idx];
    const MultiDissipatorModel m = multi_model(s, split);
    const CompositeSpace& sp = m.lindbladian.space();
    // |1,1> (x) |+y>
    Vec psi = Vec::Zero(sp.dim());
    psi(sp.index_of({1, 1, 0})) = 1.0 / std::sqrt(2.0);
    psi(sp.index_of({1, 1, 1})) = cplx(0.0, 1.0 / std::sqrt(2.0));
    const auto states = propagate(m.lindbladian, Ket(sp, psi).projector(), times);
    std::vector<Row> rows;
    for (std::size_t k = 0; k < times.size(); ++k) {
      rows.push_back(finish({cell(times[k]), cell(split), cell(log_negativity(states[k], {m.b_site}))}, {}));
    }
    return rows;
  });
  std::vector<Row> rows;
  for (const auto& b : blocks) rows.insert(rows.end(), b.begin(), b.end());
  return assemble({"t", "gamma_split", "log_negativity"}, rows);
}

ExperimentOutput run_bounds(RunContext& ctx) {
  auto& c = ctx.config;
  const auto thetas = c.numbers("bounds.theta", {kPi / 6.0, kPi / 3.0, kPi / 2.0, 2.0 * kPi / 3.0, kPi});
  const auto ells = c.integers("bounds.ell", {1, 2});
  const int n_max = c.integer("bounds.n_max", 2);
  const double gamma = c.number("bounds.gamma", 1.0);
  const int restarts = c.integer("bounds.restarts", 24);
  c.reject_unused();
  require_grid(thetas, "bounds.theta");
  require_ints(ells, 1, 8, "bounds.ell");
  require(n_max >= 1 && n_max <= 3, "bounds.n_max must lie in [1, 3]");
  require(gamma > 0.0, "bounds.gamma must be positive");
  require(restarts >= 1, "bounds.restarts must be at least 1");

  // The optimized isolation does not depend on ell; compute it per theta.
  struct Point {
    double iso;
    bool converged;
  };
  const auto optimized = parallel_map(static_cast<int>(thetas.size()), ctx.jobs, [&](int idx) {
    const CompositeSpace cav({n_max + 1});
    const CompositeSpace qb({2});
    const Lindbladian l = directional(Operator(cav, ops::destroy(n_max + 1)), Operator(qb, rotation_z(thetas[idx])), gamma);
    IsolationOptions opts;
    opts.restarts = restarts;
    opts.seed = ctx.seed + static_cast<std::uint64_t>(idx);
    const IsolationReport r = isolation(propagator(l, kLongTime), {{1}, {0}, {}}, Optimized{}, opts);
    return Point{r.value, r.optimizer.final_step <= 1e-9};
  });

  std::vector<Row> rows;
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    for (int ell : ells) {
      const BoundReport b = qubit_B_isolation_bound(rotation_z(thetas[i]), ell);
      std::vector<std::string> flags;
      if (!optimized[i].converged) flags.push_back("optimizer");
      if (ell <= n_max && optimized[i].iso > b.hull + 1e-6) flags.push_back("above_bound");
      rows.push_back(finish({cell(thetas[i]), cell(ell), cell(b.hull), cell(b.phase), cell(optimized[i].iso)}, flags));
    }
  }
  return assemble({"theta", "ell", "bound_hull", "bound_phase", "iso_B_optimized"}, rows);
}

ExperimentOutput run_gate_demo(RunContext& ctx) {
  auto& c = ctx.config;
  const double theta = c.number("gate-demo.theta", kPi / 6.0);
  const int n_max = c.integer("gate-demo.n_max", 2);
  const double gamma = c.number("gate-demo.gamma", 1.0);
  const double t_gamma = c.number("gate-demo.t_gamma", 30.0);
  c.reject_unused();
  require(n_max >= 1 && n_max <= 6, "gate-demo.n_max must lie in [1, 6]");
  require(gamma > 0.0 && t_gamma > 0.0, "gate-demo rates and times must be positive");

  const CompositeSpace cav({n_max + 1});
  const CompositeSpace qb({2});
  const Operator a(cav, ops::destroy(n_max + 1));
  const Lindbladian l = directional(a, Operator(qb, rotation_z(theta)), gamma);
  const GateProtocolSpaces spaces = gate_protocol_spaces(a);
  const Superoperator prop = propagator(l, t_gamma / gamma);
  const Operator rho_b = random_density(qb, ctx.seed);

  std::vector<Row> rows;
  for (int ell = 0; ell <= n_max; ++ell) {
    const Vec e = ops::basis_vector(n_max + 1, ell);
    const bool dark = spaces.dark.cols() > 0 && (spaces.dark.adjoint() * e).norm() > 1.0 - 1e-12;
    const bool ready = spaces.ready.cols() > 0 && (spaces.ready.adjoint() * e).norm() > 1.0 - 1e-12;
    const Channel ch = conditional_reduced_channel(prop, {1}, {{{0}, e * e.adjoint()}});
    const Mat u = rotation_z(ell * theta);
    const double infid = 1.0 - average_gate_fidelity(ch, u);
    const double dev = max_abs_diff(ch.apply(rho_b).data(), u * rho_b.data() * u.adjoint());
    std::vector<std::string> flags;
    if (dark && dev > 1e-10) flags.push_back("dark_changed");
    rows.push_back(finish({cell(ell), cell(dark ? 1 : 0), cell(ready ? 1 : 0), cell(infid), cell(dev)}, flags));
  }
  return assemble({"ell", "dark", "ready", "infidelity", "state_deviation"}, rows);
}

}  // namespace nrq::experiments
