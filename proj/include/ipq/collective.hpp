#pragma once

#include "ipq/bath.hpp"
#include "ipq/observables.hpp"
#include "ipq/pulse.hpp"
#include "ipq/volterra.hpp"

#include <cmath>

namespace ipq {

enum class Gate { Storage, X, Z };

inline std::string to_string(Gate g) {
  switch (g) {
    case Gate::X: return "x";
    case Gate::Z: return "z";
    default: return "storage";
  }
}

struct GateKind {
  Gate tag = Gate::Storage;
  double strength = 0.0;

  double gx() const { return tag == Gate::X ? strength : 0.0; }
  double gz() const { return tag == Gate::Z ? strength : 0.0; }
  void validate() const { require(strength >= 0.0, Error::Kind::Domain, "gate strength must be >= 0"); }
};

struct RunOptions {
  double step = 0.0;  // 0 selects the default rule
  Method method = Method::Auto;
  int nodes = 128;
  double window = 30.0;  // thermal window half-width in units of gamma
  bool thermal = true;
  double blowup = 1e8;
  bool richardson = false;

  SolverOptions solver() const { return {method, blowup, richardson}; }
};

// h = min(width/8 when pulsed, 2 pi / (50 * fastest rate), duration / 200).
inline double default_step(const PulseTrain& leo, double fastest, double duration) {
  double h = 2.0 * pi / (50.0 * std::max(fastest, 1e-12));
  if (leo.active()) h = std::min({h, leo.width / 8.0, 2.0 * pi / (50.0 * leo.strength)});
  return std::min(h, duration / 200.0);
}

inline double kernel_rate_scale(const MemoryKernel& k) {
  double f = 0.0;
  for (const auto& t : k.terms) f = std::max({f, std::abs(t.rate), std::sqrt(std::abs(t.amp))});
  return f;
}

struct CollectiveScenario {
  GateKind gate;
  Lorentzian spectrum{5.0, 0.5, 100.0};
  double omega0 = 100.0;
  double beta = inf;
  PulseTrain leo;
  double duration = pi;
  InitialState init = InitialState::pure(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));

  PulseTrain train() const {
    PulseTrain p = leo;
    p.duration = duration;
    return p;
  }
  void validate() const {
    gate.validate();
    spectrum.validate();
    require(beta > 0.0, Error::Kind::Domain, "beta must be positive (use +inf for zero temperature)");
    train().validate();
    require(duration > 0.0, Error::Kind::Domain, "duration must be > 0");
  }
  MemoryKernel kernel() const { return rwa_kernel(spectrum, omega0); }
};

namespace detail {
inline int cidx(int j, int i) { return 2 * (1 - j) + (1 - i); }
}  // namespace detail

// 4-dim system over [A11, A10, A01, A00] (A(j,i): a_j(t) coefficient of a_i(0)); memory acts on the a1 rows.
inline LinearMemorySystem build_system(const CollectiveScenario& sc) {
  sc.validate();
  const double gx = sc.gate.gx(), gz = sc.gate.gz();
  PulseTrain p = sc.train();
  LinearMemorySystem sys;
  sys.dim = 4;
  sys.drift = [p, gx, gz](double t) {
    double mu = mu_at(p, t);
    Mat a = Mat::Zero(4, 4);
    for (int i = 0; i < 2; ++i) {
      a(detail::cidx(1, i), detail::cidx(1, i)) = -I1 * (mu + gx);
      a(detail::cidx(0, i), detail::cidx(0, i)) = -I1 * (mu - gx);
      a(detail::cidx(1, i), detail::cidx(0, i)) = -I1 * gz;
      a(detail::cidx(0, i), detail::cidx(1, i)) = -I1 * gz;
    }
    return a;
  };
  MemoryKernel k = sc.kernel();
  if (!k.empty()) {
    Mat m = Mat::Zero(4, 4);
    m(0, 0) = -1.0;
    m(1, 1) = -1.0;
    sys.channels.push_back({k, m});
  }
  return sys;
}

inline Vec identity_coefficients() {
  Vec v = Vec::Zero(4);
  v(0) = 1.0;
  v(3) = 1.0;
  return v;
}

struct CoefficientTrajectory {
  std::vector<double> times;
  std::vector<Mat2> a;  // a-mode coefficients
  std::vector<Mat2> c;  // c-mode view
};

inline double collective_fastest(const CollectiveScenario& sc, double drive_max = 0.0) {
  return std::max({kernel_rate_scale(sc.kernel()), sc.gate.strength, drive_max});
}

inline std::vector<double> collective_grid(const CollectiveScenario& sc, const RunOptions& opt) {
  double drive = opt.thermal && !std::isinf(sc.beta) ? opt.window * sc.spectrum.gamma + std::abs(sc.spectrum.Omega - sc.omega0) : 0.0;
  double h = opt.step > 0.0 ? opt.step : default_step(sc.train(), collective_fastest(sc, drive), sc.duration);
  return build_grid(sc.train(), h);
}

inline CoefficientTrajectory simulate(const CollectiveScenario& sc, const std::vector<double>& grid, const RunOptions& opt = {}) {
  Trajectory tr = integrate(build_system(sc), identity_coefficients(), grid, opt.solver());
  CoefficientTrajectory ct;
  ct.times = tr.times;
  for (const auto& v : tr.states) {
    Mat2 a = coeff_matrix(v);
    ct.a.push_back(a);
    ct.c.push_back(a_to_c(a));
  }
  return ct;
}

// B(w, t) per node in a-modes, (a0, a1) order, coupling factor stripped.
struct BathResponse {
  std::vector<double> omega;
  std::vector<double> times;
  std::vector<std::vector<Eigen::Vector2cd>> b;  // [node][time]
};

inline BathResponse bath_response(const CollectiveScenario& sc, const std::vector<double>& omega, const std::vector<double>& grid,
                                  const RunOptions& opt = {}) {
  sc.validate();
  require(!omega.empty(), Error::Kind::Domain, "bath response needs frequency nodes");
  const double gx = sc.gate.gx(), gz = sc.gate.gz();
  PulseTrain p = sc.train();
  LinearMemorySystem sys;
  sys.dim = 2;
  sys.drift = [p, gx, gz](double t) {
    double mu = mu_at(p, t);
    Mat a(2, 2);
    a << -I1 * (mu - gx), -I1 * gz, -I1 * gz, -I1 * (mu + gx);
    return a;
  };
  MemoryKernel k = sc.kernel();
  if (!k.empty()) {
    Mat m = Mat::Zero(2, 2);
    m(1, 1) = -1.0;
    sys.channels.push_back({k, m});
  }
  BathResponse r;
  r.omega = omega;
  r.times = grid;
  for (double w : omega) {
    require(w > 0.0, Error::Kind::Domain, "bath frequencies must be positive");
    double dw = w - sc.omega0;
    sys.drive = [dw](double t) {
      Vec d(2);
      d << 0.0, -I1 * std::exp(-I1 * dw * t);
      return d;
    };
    Trajectory tr = integrate(sys, Vec::Zero(2), grid, opt.solver());
    std::vector<Eigen::Vector2cd> col;
    col.reserve(grid.size());
    for (const auto& v : tr.states) col.emplace_back(v(0), v(1));
    r.b.push_back(std::move(col));
  }
  return r;
}

// Bath part of <c_m' c_n>: sum over nodes of w J(w) nbar(w) conj(B_m) B_n in c-modes.
inline std::vector<Mat2> thermal_terms(const BathResponse& r, const Quadrature& q, const Lorentzian& s, double beta) {
  require(q.size() == r.omega.size(), Error::Kind::Dimension, "quadrature and response grids differ");
  std::vector<Mat2> out(r.times.size(), Mat2::Zero());
  if (std::isinf(beta)) return out;
  Eigen::Matrix2cd qt = collective_rotation().transpose().cast<cplx>();
  for (std::size_t k = 0; k < q.size(); ++k) {
    double wt = q.w[k] * spectral_density(s, q.x[k]) * thermal_occupancy(q.x[k], beta);
    for (std::size_t i = 0; i < r.times.size(); ++i) {
      Eigen::Vector2cd bc = qt * r.b[k][i];
      out[i] += wt * bc.conjugate() * bc.transpose();
    }
  }
  return out;
}

struct CollectiveResult {
  CoefficientTrajectory coeffs;
  std::vector<Mat2> thermal;
  BlochTrajectory bloch;
  double step = 0.0;
};

inline std::vector<Mat2> collective_thermal(const CollectiveScenario& sc, const std::vector<double>& grid, const RunOptions& opt,
                                            int nodes) {
  if (!opt.thermal || std::isinf(sc.beta) || sc.spectrum.Gamma == 0.0) return std::vector<Mat2>(grid.size(), Mat2::Zero());
  Quadrature q = thermal_window(sc.spectrum, nodes, opt.window);
  return thermal_terms(bath_response(sc, q.x, grid, opt), q, sc.spectrum, sc.beta);
}

inline CollectiveResult run_collective(const CollectiveScenario& sc, const RunOptions& opt = {}) {
  std::vector<double> grid = collective_grid(sc, opt);
  CollectiveResult res;
  res.step = grid.size() > 1 ? grid[1] - grid[0] : 0.0;
  res.coeffs = simulate(sc, grid, opt);
  res.thermal = collective_thermal(sc, grid, opt, opt.nodes);
  res.bloch = bloch_series(grid, correlation_series(res.coeffs.c, sc.init, &res.thermal));

  CollectiveScenario ref = sc;
  ref.spectrum.Gamma = 0.0;
  auto rc = simulate(ref, grid, opt);
  attach_reference(res.bloch, bloch_series(grid, correlation_series(rc.c, sc.init)));
  return res;
}

}  // namespace ipq
