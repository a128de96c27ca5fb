#pragma once

#include "ipq/collective.hpp"

#include <array>

namespace ipq {

struct IndividualScenario {
  GateKind gate;
  std::array<Lorentzian, 2> spectra{Lorentzian{5.0, 0.5, 100.0}, Lorentzian{5.0, 0.5, 100.0}};
  std::array<double, 2> omega0{0.0, 0.0};
  std::array<double, 2> beta{inf, inf};
  PulseTrain leo;
  double duration = pi;
  InitialState init = InitialState::pure(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));
  bool rwa = false;

  PulseTrain train() const {
    PulseTrain p = leo;
    p.duration = duration;
    return p;
  }
  void validate() const {
    gate.validate();
    for (const auto& s : spectra) s.validate();
    for (double b : beta) require(b > 0.0, Error::Kind::Domain, "beta must be positive (use +inf for zero temperature)");
    train().validate();
    require(duration > 0.0, Error::Kind::Domain, "duration must be > 0");
  }
  // Rotating frame for the RWA equations; the non-RWA equations stay in the lab frame.
  double frame() const { return rwa ? 0.5 * (omega0[0] + omega0[1]) : 0.0; }
  MemoryKernel kernel(int j) const { return rwa ? rwa_kernel(spectra[j], frame()) : nonrwa_kernel(spectra[j]); }
  // Single-particle Hamiltonian of the two modes in the working frame, natural (0, 1) order.
  Eigen::Matrix2d hamiltonian(double mu) const {
    Eigen::Matrix2d h;
    double f = frame();
    h << omega0[0] - f + mu - gate.gz(), gate.gx(), gate.gx(), omega0[1] - f + mu + gate.gz();
    return h;
  }
};

// RWA: 4-dim [C11, C10, C01, C00]. Non-RWA: 8-dim [C, D] with D = conj(Cbar) in the same layout.
inline LinearMemorySystem build_individual_system(const IndividualScenario& sc) {
  sc.validate();
  PulseTrain p = sc.train();
  const bool rwa = sc.rwa;
  LinearMemorySystem sys;
  sys.dim = rwa ? 4 : 8;
  sys.drift = [sc, p, rwa](double t) {
    Eigen::Matrix2d h = sc.hamiltonian(mu_at(p, t));
    Mat a = Mat::Zero(rwa ? 4 : 8, rwa ? 4 : 8);
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int i = 0; i < 2; ++i) {
          a(detail::cidx(j, i), detail::cidx(k, i)) = -I1 * h(j, k);
          if (!rwa) a(4 + detail::cidx(j, i), 4 + detail::cidx(k, i)) = I1 * h(j, k);
        }
    return a;
  };
  for (int j = 0; j < 2; ++j) {
    MemoryKernel k = sc.kernel(j);
    if (k.empty()) continue;
    if (rwa) {
      Mat m = Mat::Zero(4, 4);
      for (int i = 0; i < 2; ++i) m(detail::cidx(j, i), detail::cidx(j, i)) = -1.0;
      sys.channels.push_back({k, m});
      continue;
    }
    Mat mc = Mat::Zero(8, 8), md = Mat::Zero(8, 8);
    for (int i = 0; i < 2; ++i) {
      int r = detail::cidx(j, i);
      mc(r, r) = mc(r, 4 + r) = -1.0;
      md(4 + r, r) = md(4 + r, 4 + r) = -1.0;
    }
    sys.channels.push_back({k, mc});
    sys.channels.push_back({k.conj(), md});
  }
  return sys;
}

struct ExtendedTrajectory {
  std::vector<double> times;
  std::vector<Mat2> c;     // C(j,i)
  std::vector<Mat2> cbar;  // Cbar(j,i), zero under RWA
};

inline double individual_fastest(const IndividualScenario& sc, double drive_max = 0.0) {
  double f = std::max(sc.gate.strength, drive_max);
  for (int j = 0; j < 2; ++j) f = std::max({f, kernel_rate_scale(sc.kernel(j)), std::abs(sc.omega0[j] - sc.frame())});
  return f;
}

inline double individual_drive_max(const IndividualScenario& sc, const RunOptions& opt) {
  double d = 0.0;
  for (int j = 0; j < 2; ++j) {
    if (std::isinf(sc.beta[j]) && sc.rwa) continue;
    d = std::max(d, std::abs(sc.spectra[j].Omega + opt.window * sc.spectra[j].gamma - sc.frame()));
    d = std::max(d, std::abs(std::max(0.0, sc.spectra[j].Omega - opt.window * sc.spectra[j].gamma) - sc.frame()));
  }
  return opt.thermal ? d : 0.0;
}

inline std::vector<double> individual_grid(const IndividualScenario& sc, const RunOptions& opt) {
  double h = opt.step > 0.0 ? opt.step : default_step(sc.train(), individual_fastest(sc, individual_drive_max(sc, opt)), sc.duration);
  return build_grid(sc.train(), h);
}

inline ExtendedTrajectory simulate_individual(const IndividualScenario& sc, const std::vector<double>& grid, const RunOptions& opt = {}) {
  LinearMemorySystem sys = build_individual_system(sc);
  Vec x0 = Vec::Zero(sys.dim);
  x0(0) = 1.0;
  x0(3) = 1.0;
  Trajectory tr = integrate(sys, x0, grid, opt.solver());
  ExtendedTrajectory et;
  et.times = tr.times;
  for (const auto& v : tr.states) {
    et.c.push_back(coeff_matrix(v.head(4)));
    et.cbar.push_back(sc.rwa ? Mat2(Mat2::Zero()) : Mat2(coeff_matrix(v.tail(4)).conjugate()));
  }
  return et;
}

// Per node of bath k: RWA gives P (mode 0, mode 1); non-RWA gives [P0, P1, Q0, Q1] where P is the
// coefficient of b in c_j and Q the conjugate of the coefficient of b'. Coupling factor stripped.
struct IndividualBathResponse {
  int bath = 0;
  std::vector<double> omega;
  std::vector<double> times;
  std::vector<std::vector<Vec>> v;  // [node][time]
};

inline IndividualBathResponse individual_bath_response(const IndividualScenario& sc, const std::vector<double>& omega,
                                                       const std::vector<double>& grid, int bath, const RunOptions& opt = {}) {
  sc.validate();
  require(bath == 0 || bath == 1, Error::Kind::Domain, "bath index must be 0 or 1");
  require(!omega.empty(), Error::Kind::Domain, "bath response needs frequency nodes");
  PulseTrain p = sc.train();
  const bool rwa = sc.rwa;
  const int d = rwa ? 2 : 4;
  LinearMemorySystem sys;
  sys.dim = d;
  sys.drift = [sc, p, rwa, d](double t) {
    Eigen::Matrix2d h = sc.hamiltonian(mu_at(p, t));
    Mat a = Mat::Zero(d, d);
    a.topLeftCorner(2, 2) = -I1 * h.cast<cplx>();
    if (!rwa) a.bottomRightCorner(2, 2) = I1 * h.cast<cplx>();
    return a;
  };
  for (int j = 0; j < 2; ++j) {
    MemoryKernel k = sc.kernel(j);
    if (k.empty()) continue;
    Mat m = Mat::Zero(d, d);
    m(j, j) = -1.0;
    if (rwa) {
      sys.channels.push_back({k, m});
      continue;
    }
    m(j, 2 + j) = -1.0;
    Mat md = Mat::Zero(d, d);
    md(2 + j, j) = md(2 + j, 2 + j) = -1.0;
    sys.channels.push_back({k, m});
    sys.channels.push_back({k.conj(), md});
  }
  IndividualBathResponse r;
  r.bath = bath;
  r.omega = omega;
  r.times = grid;
  const double f = sc.frame();
  for (double w : omega) {
    require(w > 0.0, Error::Kind::Domain, "bath frequencies must be positive");
    sys.drive = [w, f, bath, rwa, d](double t) {
      Vec v = Vec::Zero(d);
      cplx e = std::exp(-I1 * (w - f) * t);
      v(bath) = -I1 * e;
      if (!rwa) v(2 + bath) = I1 * e;
      return v;
    };
    Trajectory tr = integrate(sys, Vec::Zero(d), grid, opt.solver());
    r.v.push_back(std::move(tr.states));
  }
  return r;
}

// Bath part of <c_m' c_n> from one bath.
inline std::vector<Mat2> individual_bath_terms(const IndividualBathResponse& r, const Quadrature& q, const Lorentzian& s, double beta,
                                               bool rwa) {
  require(q.size() == r.omega.size(), Error::Kind::Dimension, "quadrature and response grids differ");
  std::vector<Mat2> out(r.times.size(), Mat2::Zero());
  for (std::size_t k = 0; k < q.size(); ++k) {
    double j = q.w[k] * spectral_density(s, q.x[k]);
    double nb = thermal_occupancy(q.x[k], beta);
    for (std::size_t i = 0; i < r.times.size(); ++i) {
      const Vec& v = r.v[k][i];
      Eigen::Vector2cd pv(v(0), v(1));
      out[i] += (j * nb) * pv.conjugate() * pv.transpose();
      if (!rwa) {
        Eigen::Vector2cd qv(v(2), v(3));
        out[i] += (j * (nb + 1.0)) * qv * qv.adjoint();
      }
    }
  }
  return out;
}

inline std::vector<Mat2> individual_thermal_terms(const std::array<IndividualBathResponse, 2>& r, const std::array<Quadrature, 2>& q,
                                                  const std::array<Lorentzian, 2>& spectra, const std::array<double, 2>& beta,
                                                  bool rwa) {
  require(r[0].times.size() == r[1].times.size(), Error::Kind::Dimension, "bath responses on different grids");
  std::vector<Mat2> out = individual_bath_terms(r[0], q[0], spectra[0], beta[0], rwa);
  std::vector<Mat2> b1 = individual_bath_terms(r[1], q[1], spectra[1], beta[1], rwa);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b1[i];
  return out;
}

// <c_m' c_n> system part including the counter-rotating block.
inline std::vector<Mat2> individual_correlations(const ExtendedTrajectory& et, const InitialState& init, const std::vector<Mat2>* bath) {
  std::vector<Mat2> out = correlation_series(et.c, init, bath);
  Mat2 n0 = initial_expectations(init, Rep::C);
  Mat2 e = Mat2::Identity() + n0.transpose();
  for (std::size_t i = 0; i < out.size(); ++i) {
    Mat2 dm = et.cbar[i].conjugate();
    out[i] += dm * e * dm.adjoint();
  }
  return out;
}

struct IndividualResult {
  ExtendedTrajectory coeffs;
  std::vector<Mat2> bath;
  BlochTrajectory bloch;
  double step = 0.0;
};

inline std::vector<Mat2> individual_bath(const IndividualScenario& sc, const std::vector<double>& grid, const RunOptions& opt, int nodes) {
  std::vector<Mat2> out(grid.size(), Mat2::Zero());
  if (!opt.thermal) return out;
  for (int k = 0; k < 2; ++k) {
    if (sc.spectra[k].Gamma == 0.0) continue;
    if (sc.rwa && std::isinf(sc.beta[k])) continue;
    Quadrature q = thermal_window(sc.spectra[k], nodes, opt.window);
    auto r = individual_bath_response(sc, q.x, grid, k, opt);
    auto t = individual_bath_terms(r, q, sc.spectra[k], sc.beta[k], sc.rwa);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += t[i];
  }
  return out;
}

inline IndividualResult run_individual(const IndividualScenario& sc, const RunOptions& opt = {}) {
  std::vector<double> grid = individual_grid(sc, opt);
  IndividualResult res;
  res.step = grid[1] - grid[0];
  res.coeffs = simulate_individual(sc, grid, opt);
  res.bath = individual_bath(sc, grid, opt, opt.nodes);
  res.bloch = bloch_series(grid, individual_correlations(res.coeffs, sc.init, &res.bath));

  IndividualScenario ref = sc;
  ref.spectra[0].Gamma = ref.spectra[1].Gamma = 0.0;
  auto rc = simulate_individual(ref, grid, opt);
  attach_reference(res.bloch, bloch_series(grid, individual_correlations(rc, sc.init, nullptr)));
  return res;
}

}  // namespace ipq
