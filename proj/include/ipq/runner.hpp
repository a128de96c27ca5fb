#pragma once

#include "ipq/config.hpp"
#include "ipq/oracle.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>

namespace ipq {

struct RefinementCheck {
  bool ran = false;
  double endpoint_change = 0.0;
  double tolerance = 0.0;
  bool passed = true;
};

struct QuadratureCheck {
  bool ran = false;
  double change = 0.0;
  double tolerance = 0.0;
  bool passed = true;
};

struct SteadyInfo {
  bool used = false;
  double read_time = 0.0;
  double drift = 0.0;
  int doublings = 0;
  bool plateau = false;
};

struct RunResult {
  RunSpec spec;
  BlochTrajectory bloch;
  std::vector<Mat2> coeffs;  // c-mode C(j,i)
  std::vector<Mat2> cbar;
  double step = 0.0;
  std::vector<long> oracle_rows;  // grid index of each oracle sample
  BlochTrajectory oracle;
  std::string oracle_note;
  RefinementCheck refine;
  QuadratureCheck quad;
  SteadyInfo steady;
  double seconds = 0.0;
};

namespace detail {

struct Pipeline {
  BlochTrajectory bloch;
  std::vector<Mat2> c, cbar, bath;
  std::vector<double> grid;
};

inline Pipeline pipeline(const RunSpec& r, const RunOptions& opt) {
  Pipeline p;
  if (r.individual()) {
    auto res = run_individual(r.ind, opt);
    p.grid = res.coeffs.times;
    p.c = res.coeffs.c;
    p.cbar = res.coeffs.cbar;
    p.bath = res.bath;
    p.bloch = res.bloch;
  } else {
    auto res = run_collective(r.coll, opt);
    p.grid = res.coeffs.times;
    p.c = res.coeffs.c;
    p.cbar.assign(p.c.size(), Mat2::Zero());
    p.bath = res.thermal;
    p.bloch = res.bloch;
  }
  return p;
}

inline double endpoint_distance(const BlochPoint& a, const BlochPoint& b) {
  return std::max({std::abs(a.n0 - b.n0), std::abs(a.n1 - b.n1), std::abs(a.j.x - b.j.x), std::abs(a.j.y - b.j.y),
                   std::abs(a.j.z - b.j.z)});
}

inline double step_of(const RunSpec& r, const RunOptions& opt) {
  auto g = r.individual() ? individual_grid(r.ind, opt) : collective_grid(r.coll, opt);
  return g[1] - g[0];
}

}  // namespace detail

inline void check_steady(const BlochTrajectory& b, SteadyInfo& s) {
  const double t_end = b.back().t;
  double drift = 0.0;
  for (const auto& p : b.points)
    if (p.t >= 0.9 * t_end)
      drift = std::max({drift, std::abs(p.n0 - b.back().n0) / std::max(std::abs(b.back().n0), 1.0),
                        std::abs(p.n1 - b.back().n1) / std::max(std::abs(b.back().n1), 1.0)});
  s.read_time = t_end;
  s.drift = drift;
  s.plateau = drift <= 1e-3;
}

inline RunResult execute(const RunSpec& spec, bool with_oracle = false) {
  auto t0 = std::chrono::steady_clock::now();
  RunResult res;
  res.spec = spec;
  RunSpec r = spec;

  detail::Pipeline p;
  if (r.steady) {
    res.steady.used = true;
    r.set_duration(10.0 / r.gamma_scale());
    for (int d = 0;; ++d) {
      p = detail::pipeline(r, r.opt);
      check_steady(p.bloch, res.steady);
      res.steady.doublings = d;
      if (res.steady.plateau || d == 4) break;
      r.set_duration(2.0 * r.duration());
    }
    res.spec = r;
    if (!res.steady.plateau)
      throw Error(Error::Kind::Solver, "steady state not reached: plateau drift " + std::to_string(res.steady.drift));
  } else {
    p = detail::pipeline(r, r.opt);
  }
  res.step = p.grid[1] - p.grid[0];
  res.bloch = p.bloch;
  res.coeffs = p.c;
  res.cbar = p.cbar;

  if (r.refine_check) {
    RunOptions o = r.opt;
    o.step = 0.5 * detail::step_of(r, r.opt);
    auto fine = detail::pipeline(r, o);
    res.refine.ran = true;
    res.refine.tolerance = r.tolerance;
    res.refine.endpoint_change = detail::endpoint_distance(fine.bloch.back(), p.bloch.back());
    res.refine.passed = res.refine.endpoint_change <= r.tolerance;
  }
  bool has_bath = false;
  for (const auto& m : p.bath) has_bath = has_bath || m.cwiseAbs().maxCoeff() > 0.0;
  if (r.quadrature_check && has_bath) {
    RunOptions o = r.opt;
    o.step = res.step;
    o.nodes = 2 * r.opt.nodes;
    auto q2 = detail::pipeline(r, o);
    double scale = 0.0, change = 0.0;
    for (std::size_t i = 0; i < p.bath.size(); ++i) {
      scale = std::max(scale, p.bath[i].cwiseAbs().maxCoeff());
      change = std::max(change, (q2.bath[i] - p.bath[i]).cwiseAbs().maxCoeff());
    }
    res.quad.ran = true;
    res.quad.change = change / std::max(scale, 1e-300);
    res.quad.tolerance = r.quadrature_tolerance;
    res.quad.passed = change <= r.quadrature_tolerance * scale + 1e-12;
  }

  if (with_oracle) {
    std::size_t n = p.grid.size();
    std::size_t stride = std::max<std::size_t>(1, (n + std::size_t(r.oracle.max_rows) - 1) / std::size_t(r.oracle.max_rows));
    std::vector<double> ts;
    for (std::size_t i = 0; i < n; i += stride) {
      ts.push_back(p.grid[i]);
      res.oracle_rows.push_back(long(i));
    }
    QuadraticModel qm = r.individual() ? individual_model(r.ind, r.oracle.modes, r.oracle.coverage)
                                       : collective_model(r.coll, r.oracle.modes, r.oracle.coverage);
    std::array<double, 2> betas = r.individual() ? r.ind.beta : std::array<double, 2>{r.coll.beta, r.coll.beta};
    const InitialState& init = r.individual() ? r.ind.init : r.coll.init;
    bool bath_needed = !qm.rwa || !std::isinf(betas[0]) || !std::isinf(betas[1]);
    std::vector<Mat2> corr;
    if (bath_needed && qm.leo.active() && !qm.rwa) {
      // Full Bogoliubov propagation under pulses is out of reach at this size; report the system part.
      auto oc = oracle_coefficients(qm, ts);
      ExtendedTrajectory et{ts, oc.c, oc.cbar};
      corr = individual_correlations(et, init, nullptr);
      res.oracle_note = "bath terms omitted (pulsed Bogoliubov propagation)";
    } else {
      corr = thermal_expectation(qm, ts, betas, init);
    }
    res.oracle = bloch_series(ts, corr);
    // Bath-free reference for the oracle fidelity columns.
    RunSpec ref = r;
    ref.coll.spectrum.Gamma = 0.0;
    ref.ind.spectra[0].Gamma = ref.ind.spectra[1].Gamma = 0.0;
    RunOptions o = r.opt;
    o.step = res.step;
    auto rp = detail::pipeline(ref, o);
    require(rp.grid.size() == p.grid.size(), Error::Kind::Dimension, "reference grid differs");
    BlochTrajectory refsub;
    for (long i : res.oracle_rows) refsub.points.push_back(rp.bloch.points[std::size_t(i)]);
    attach_reference(res.oracle, refsub);
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

inline std::string fmt_num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

inline std::string describe(const RunSpec& r) {
  std::ostringstream os;
  if (r.individual()) {
    const auto& s = r.ind;
    os << "model=individual rwa=" << (s.rwa ? 1 : 0) << " gate=" << to_string(s.gate.tag) << " G=" << s.gate.strength;
    os << " beta0=" << s.beta[0] << " beta1=" << s.beta[1];
  } else {
    const auto& s = r.coll;
    os << "model=collective gate=" << to_string(s.gate.tag) << " G=" << s.gate.strength << " beta=" << s.beta;
  }
  return os.str();
}

inline std::string csv(const RunResult& res, const std::string& units) {
  std::ostringstream os;
  std::string tu = units == "Gamma" ? "1/Gamma" : "1/G";
  os << "# run=" << res.spec.name << " " << describe(res.spec) << " units: time [" << tu
     << "], n0 n1 [quanta], Jx Jy Jz [dimensionless], infidelity trace_distance [dimensionless], clamped [0/1]";
  if (res.spec.coefficients) os << ", C coefficients [dimensionless]";
  os << "\n";
  os << "time,n0,n1,Jx,Jy,Jz,infidelity,trace_distance,clamped";
  const char* names[4] = {"C11", "C10", "C01", "C00"};
  if (res.spec.coefficients)
    for (auto n : names) os << "," << n << "_re," << n << "_im";
  bool orc = !res.oracle_rows.empty();
  if (orc) os << ",n0_oracle,n1_oracle,Jx_oracle,Jy_oracle,Jz_oracle,infidelity_oracle,trace_distance_oracle";
  os << "\n";
  std::size_t k = 0;
  for (std::size_t i = 0; i < res.bloch.size(); ++i) {
    const auto& p = res.bloch.points[i];
    os << fmt_num(p.t) << "," << fmt_num(p.n0) << "," << fmt_num(p.n1) << "," << fmt_num(p.j.x) << "," << fmt_num(p.j.y) << ","
       << fmt_num(p.j.z) << "," << fmt_num(p.infidelity) << "," << fmt_num(p.trace_distance) << "," << (p.eff.clamped ? 1 : 0);
    if (res.spec.coefficients) {
      Vec v = coeff_vector(res.coeffs[i]);
      for (int c = 0; c < 4; ++c) os << "," << fmt_num(v(c).real()) << "," << fmt_num(v(c).imag());
    }
    if (orc) {
      if (k < res.oracle_rows.size() && res.oracle_rows[k] == long(i)) {
        const auto& q = res.oracle.points[k++];
        os << "," << fmt_num(q.n0) << "," << fmt_num(q.n1) << "," << fmt_num(q.j.x) << "," << fmt_num(q.j.y) << "," << fmt_num(q.j.z)
           << "," << fmt_num(q.infidelity) << "," << fmt_num(q.trace_distance);
      } else {
        os << ",,,,,,,";
      }
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace ipq
