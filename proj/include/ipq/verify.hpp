#pragma once

#include "ipq/presets.hpp"
#include "ipq/qec_report.hpp"
#include "ipq/runner.hpp"

namespace ipq {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  bool flip_kernel_sign = false;  // test hook: the oracle comparison must catch this
};

namespace detail {

inline std::string sci(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%.3e", v);
  return b;
}

inline double opnorm(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

inline CheckResult check_algebra() {
  FockSpec spec{2, 1};
  auto ops = build_mode_ops(spec);
  auto idx = sector_indices(spec, 1, {0, 1});
  Su2 j = su2_generators(ops[0], ops[1]);
  Mat jx = restrict_to(j.x, idx), jy = restrict_to(j.y, idx), jz = restrict_to(j.z, idx);
  double e = std::max(opnorm(commutator(jx, jz) + 2.0 * I1 * jy), opnorm(commutator(jx, jy) - 2.0 * I1 * jz));
  Mat hc = 3.7 * (number_op(ops[0]) + number_op(ops[1]));
  double c = std::max({opnorm(commutator(hc, j.x)), opnorm(commutator(hc, j.y)), opnorm(commutator(hc, j.z))});
  return {"fock: su2 algebra and [H_C, J]", e <= 1e-12 && c == 0.0, "su2 " + sci(e) + ", [H_C,J] " + sci(c)};
}

inline CheckResult check_leo(int M) {
  FockSpec spec{2 + M, 1};
  auto ops = build_mode_ops(spec);
  BathDiscretization b = discretize(Lorentzian{5.0, 0.5, 100.0}, M, 20.0);
  const Eigen::Index d = Eigen::Index(spec.dim());
  Mat hsb = Mat::Zero(d, d), hb = Mat::Zero(d, d);
  Mat xs = ops[0] + ops[0].adjoint() + ops[1] + ops[1].adjoint();
  for (int k = 0; k < M; ++k) {
    const Mat& bk = ops[std::size_t(2 + k)];
    hsb += b.modes[std::size_t(k)].g * xs * (bk + bk.adjoint());
    hb += b.modes[std::size_t(k)].omega * number_op(bk);
  }
  Mat hs = su2_generators(ops[0], ops[1]).x + 0.3 * su2_generators(ops[0], ops[1]).z;
  Mat r = leo_reflection(ops[0], ops[1]);
  double e = std::max({opnorm(r * hsb * r + hsb), opnorm(r * hs * r - hs), opnorm(r * hb * r - hb)});
  return {"fock: LEO reflection on a toy bath (M=" + std::to_string(M) + ")", e <= 1e-12, "residual " + sci(e)};
}

inline CheckResult check_cphase() {
  FockSpec spec{4, 1};  // qubit alpha in modes 0,1; beta in modes 2,3
  auto ops = build_mode_ops(spec);
  Mat u = cphase_unitary(number_op(ops[0]), number_op(ops[2]), pi);
  Mat hleo = 2.0 * (number_op(ops[0]) + number_op(ops[1]) + number_op(ops[2]) + number_op(ops[3]));
  Mat hcp = number_op(ops[0]) * number_op(ops[2]);
  // logical |i>_alpha |j>_beta ordered {11, 10, 01, 00}; |0> is the particle in the first mode of each pair
  std::vector<Vec> basis;
  for (int ia : {1, 0})
    for (int ib : {1, 0}) basis.push_back(basis_state(spec, {ia == 0, ia == 1, ib == 0, ib == 1}));
  Mat m(4, 4);
  for (int a = 0; a < 4; ++a)
    for (int c = 0; c < 4; ++c) m(a, c) = basis[std::size_t(a)].dot(u * basis[std::size_t(c)]);
  Mat target = Mat::Identity(4, 4);
  target(3, 3) = -1.0;
  cplx phase = m(0, 0);
  double e = opnorm(m - phase * target);
  double cm = opnorm(commutator(hcp, hleo));
  return {"fock: C-phase at alpha_cp = pi", e <= 1e-10 && cm == 0.0, "gate " + sci(e) + ", [H_cp,H_LEO] " + sci(cm)};
}

inline CheckResult check_qec(int trials) {
  QecSpec q;
  q.trials = trials;
  QecSummary r = qec_trials(q);
  bool ok = r.kl_binomial_ok && r.kl_binomial <= 1e-12 && !r.kl_ipq_ok && r.kl_ipq > 0.1 && std::abs(r.min_fidelity0 - 1.0) <= 1e-10 &&
            r.max_unitarity_error <= 1e-10 && r.max_probability_error <= 1e-10 && r.syndrome_failures == 0 && r.non_unitary == 0 &&
            std::abs(r.binomial_w0 - 1.0) <= 1e-12 && std::abs(r.binomial_w1 - 1.0) <= 1e-12;
  return {"qec: KL, parity syndrome, WWM and binomial recovery", ok,
          "KL binomial " + sci(r.kl_binomial) + ", KL ipq " + sci(r.kl_ipq) + ", min F0 " + sci(r.min_fidelity0) + ", unitarity " +
              sci(r.max_unitarity_error)};
}

inline CheckResult check_pulse() {
  PulseTrain p{50.0, 0.02 * pi, 0.005 * pi, 0.0, pi};
  double ph = phase_integral(p, p.width);
  double per = phase_integral(p, p.period() + p.width) - phase_integral(p, p.period());
  bool mu = mu_at(p, 0.0) == 50.0 && mu_at(p, p.width) == 0.0 && mu_at(p, p.period()) == 50.0;
  auto g = build_grid(p, 1e-3);
  bool edges = true;
  for (double e : pulse_edges(p)) {
    auto it = std::lower_bound(g.begin(), g.end(), e - 1e-12);
    edges = edges && it != g.end() && std::abs(*it - e) <= 1e-12;
  }
  double e = std::max(std::abs(ph - pi), std::abs(per - pi));
  return {"pulse: per-pulse phase, edges on grid", e <= 1e-12 && mu && edges, "phase error " + sci(e)};
}

// x' = -int_0^t a e^{-l (t-s)} x(s) ds has x = e^{-l t/2}(cos wt + l/(2w) sin wt), w = sqrt(a - l^2/4).
inline double scalar_error(Method m, bool rich, double h) {
  const double a = 4.0, l = 1.0, T = 3.0;
  LinearMemorySystem sys;
  sys.dim = 1;
  sys.drift = [](double) { return Mat::Zero(1, 1); };
  MemoryKernel k;
  k.terms.push_back({a, l});
  sys.channels.push_back({k, -Mat::Identity(1, 1)});
  std::vector<double> g;
  long n = std::lround(T / h);
  for (long i = 0; i <= n; ++i) g.push_back(T * double(i) / double(n));
  SolverOptions o;
  o.method = m;
  o.richardson = rich;
  Trajectory tr = integrate(sys, Vec::Ones(1), g, o);
  const double w = std::sqrt(a - 0.25 * l * l);
  double err = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    double t = g[i];
    double x = std::exp(-0.5 * l * t) * (std::cos(w * t) + 0.5 * l / w * std::sin(w * t));
    err = std::max(err, std::abs(tr.states[i](0) - x));
  }
  return err;
}

inline CheckResult check_volterra() {
  double e1 = scalar_error(Method::Generic, false, 0.02), e2 = scalar_error(Method::Generic, false, 0.01);
  double order = std::log2(e1 / e2);
  double ee = scalar_error(Method::Exponential, false, 0.01);
  double er = scalar_error(Method::Generic, true, 0.01);
  bool ok = order > 1.8 && order < 2.2 && ee <= 1e-7 && er <= 1e-6;
  return {"volterra: generic order 2, exponential and extrapolated accuracy", ok,
          "order " + sci(order) + ", exponential " + sci(ee) + ", extrapolated " + sci(er)};
}

// Volterra vs discretized-bath oracle, collective storage.
inline CheckResult check_oracle(bool flip, int modes) {
  CollectiveScenario sc;
  sc.duration = 2.0 / sc.spectrum.gamma;
  sc.init = InitialState::pure(0.6, 0.8);
  RunOptions opt;
  auto grid = collective_grid(sc, opt);
  LinearMemorySystem sys = build_system(sc);
  if (flip)
    for (auto& c : sys.channels) c.kernel = c.kernel.scaled(-1.0);
  Trajectory tr = integrate(sys, identity_coefficients(), grid, opt.solver());
  QuadraticModel qm = collective_model(sc, modes, 20.0);
  std::vector<double> ts;
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < grid.size(); i += 25) {
    ts.push_back(grid[i]);
    rows.push_back(i);
  }
  auto oc = oracle_coefficients(qm, ts);
  double e = 0.0;
  for (std::size_t k = 0; k < ts.size(); ++k) e = std::max(e, (a_to_c(coeff_matrix(tr.states[rows[k]])) - oc.c[k]).cwiseAbs().maxCoeff());
  return {"oracle: collective storage coefficients vs matrix-exponential bath (M=" + std::to_string(modes) + ")", e <= 1e-3,
          "max error " + sci(e)};
}

inline CheckResult check_thermal_oracle() {
  IndividualScenario sc;
  sc.rwa = true;
  sc.gate = {Gate::X, 1.0};
  sc.spectra = {Lorentzian{1.0, 2.5, 100.0}, Lorentzian{1.0, 2.5, 100.0}};
  sc.omega0 = {100.0, 100.0};
  sc.beta = {0.02, 0.05};
  sc.duration = 1.0;
  sc.init = InitialState::pure(1.0, 0.0);
  RunOptions opt;
  auto res = run_individual(sc, opt);
  std::vector<double> ts;
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < res.coeffs.times.size(); i += 40) {
    ts.push_back(res.coeffs.times[i]);
    rows.push_back(i);
  }
  auto corr = thermal_expectation(individual_model(sc, 150, 20.0), ts, sc.beta, sc.init);
  double e = 0.0;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const auto& p = res.bloch.points[rows[k]];
    e = std::max({e, std::abs(p.n0 - corr[k](0, 0).real()), std::abs(p.n1 - corr[k](1, 1).real())});
  }
  return {"oracle: finite-temperature occupations, individual RWA X gate", e <= 1e-3, "max error " + sci(e)};
}

inline CheckResult check_dfs() {
  CollectiveScenario sc;
  sc.init = InitialState::pure(-1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));
  auto r = run_collective(sc);
  double m = r.bloch.max_infidelity();
  return {"collective: zero-temperature a0 state is decoherence free", m <= 1e-10, "max infidelity " + sci(m)};
}

inline CheckResult check_paths() {
  CollectiveScenario sc;
  sc.gate = {Gate::X, 1.0};
  sc.duration = 1.0;
  sc.beta = 0.02;
  RunOptions a, b;
  a.method = Method::Exponential;
  b.method = Method::Generic;
  b.richardson = true;
  auto ra = run_collective(sc, a), rb = run_collective(sc, b);
  double e = 0.0;
  for (std::size_t i = 0; i < ra.coeffs.c.size(); ++i) e = std::max(e, (ra.coeffs.c[i] - rb.coeffs.c[i]).cwiseAbs().maxCoeff());
  return {"volterra: exponential vs extrapolated generic path, collective X gate", e <= 1e-6, "max difference " + sci(e)};
}

inline CheckResult check_config() {
  int parsed = 0;
  for (const auto& [name, text] : presets()) {
    parse_config(json::parse(text));
    ++parsed;
  }
  json t = json::parse(presets().at("fig1a"));
  t["units"] = "Gamma";
  bool rejected = false;
  try {
    parse_config(t);
  } catch (const Error& e) {
    rejected = e.kind == Error::Kind::Config;
  }
  json u = json::parse(presets().at("fig1a"));
  u["defaults"]["spectrum"]["Gamma_typo"] = 1.0;
  bool rejected2 = false;
  try {
    parse_config(u);
  } catch (const Error& e) {
    rejected2 = e.kind == Error::Kind::Config;
  }
  return {"cli: presets parse, tampered units and unknown keys rejected", rejected && rejected2,
          std::to_string(parsed) + " presets parsed"};
}

inline CheckResult check_determinism() {
  Config c = parse_config(json::parse(presets().at("fig1d")));
  RunSpec r = c.runs[0];
  r.set_duration(0.5);
  r.refine_check = false;
  std::string a = csv(execute(r), c.units), b = csv(execute(r), c.units);
  return {"cli: identical runs give identical CSV bytes", a == b, std::to_string(a.size()) + " bytes"};
}

}  // namespace detail

inline std::vector<CheckResult> verify_suite(const VerifyOptions& o = {}) {
  std::vector<std::function<CheckResult()>> checks{
      detail::check_algebra,
      [] { return detail::check_leo(6); },
      detail::check_cphase,
      detail::check_pulse,
      [] { return detail::check_qec(20); },
      detail::check_volterra,
      detail::check_paths,
      detail::check_dfs,
      [&] { return detail::check_oracle(o.flip_kernel_sign, 200); },
      detail::check_thermal_oracle,
      detail::check_config,
      detail::check_determinism,
  };
  std::vector<CheckResult> out;
  for (auto& f : checks) {
    try {
      out.push_back(f());
    } catch (const std::exception& e) {
      out.push_back({"check threw", false, e.what()});
    }
  }
  return out;
}

}  // namespace ipq
