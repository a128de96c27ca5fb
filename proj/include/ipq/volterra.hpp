#pragma once

#include "ipq/bath.hpp"

#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>
#include <functional>
#include <sstream>

namespace ipq {

// Contributes int_0^t kernel(t - s) * mask * x(s) ds to dx/dt.
struct MemoryChannel {
  MemoryKernel kernel;
  Mat mask;
};

// dx/dt = A(t) x + sum_c int k_c(t-s) M_c x(s) ds + d(t).
// The drift is treated as constant over each grid step and sampled at the step midpoint.
struct LinearMemorySystem {
  int dim = 0;
  std::function<Mat(double)> drift;
  std::vector<MemoryChannel> channels;
  std::function<Vec(double)> drive;

  void validate() const {
    require(dim > 0, Error::Kind::Dimension, "system dimension must be positive");
    require(bool(drift), Error::Kind::Dimension, "system needs a drift");
    for (const auto& c : channels) {
      require(c.mask.rows() == dim && c.mask.cols() == dim, Error::Kind::Dimension, "memory mask dimension mismatch");
      c.kernel.validate();
    }
  }
  bool exponential() const {
    for (const auto& c : channels)
      if (!c.kernel.exponential()) return false;
    return true;
  }
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Vec> states;
};

enum class Method { Auto, Exponential, Generic };

inline std::string to_string(Method m) {
  switch (m) {
    case Method::Exponential: return "exponential";
    case Method::Generic: return "generic";
    default: return "auto";
  }
}

struct SolverOptions {
  Method method = Method::Auto;
  double blowup = 1e8;
  bool richardson = false;  // generic path: combine h and h/2 runs, (4 x_{h/2} - x_h) / 3
};

namespace detail {

inline void check_grid(const std::vector<double>& grid) {
  require(grid.size() >= 2, Error::Kind::Domain, "grid needs at least two points");
  for (std::size_t i = 1; i < grid.size(); ++i)
    require(grid[i] > grid[i - 1], Error::Kind::Domain, "grid must be strictly increasing");
}

inline void check_blowup(const Vec& x, double bound, double t) {
  double n = x.norm();
  if (!(n <= bound)) {
    std::ostringstream os;
    os << "integration unstable at t=" << t << " (|x| = " << n << ", bound " << bound << ")";
    throw Error(Error::Kind::Solver, os.str());
  }
}

// Small cache of exp(A h) keyed on the exact drift matrix and step.
struct ExpCache {
  struct Entry {
    Mat a;
    double h;
    Mat e, e_half;
  };
  std::vector<Entry> entries;

  const Entry& get(const Mat& a, double h) {
    for (auto& en : entries)
      if (en.h == h && en.a.rows() == a.rows() && (en.a - a).cwiseAbs().maxCoeff() == 0.0) return en;
    if (entries.size() >= 16) entries.erase(entries.begin());
    Mat ah = a * h;
    Mat eh = (0.5 * ah).exp();
    entries.push_back({a, h, eh * eh, eh});
    return entries.back();
  }
};

}  // namespace detail

// Pseudo-mode augmentation with Lawson RK4: the drift and the pseudo-mode decay are handled
// exactly through the integrating factor, memory couplings and drive by RK4.
inline Trajectory integrate_exponential(const LinearMemorySystem& sys, const Vec& x0, const std::vector<double>& grid,
                                        const SolverOptions& opt = {}) {
  sys.validate();
  require(sys.exponential(), Error::Kind::Domain, "exponential path needs sum-of-exponential kernels");
  require(x0.size() == sys.dim, Error::Kind::Dimension, "initial state dimension mismatch");
  detail::check_grid(grid);

  const int d = sys.dim;
  std::vector<int> chan;
  std::vector<cplx> amp, lam;
  for (std::size_t c = 0; c < sys.channels.size(); ++c)
    for (const auto& t : sys.channels[c].kernel.terms) {
      chan.push_back(int(c));
      amp.push_back(t.amp);
      lam.push_back(t.rate);
    }
  const int P = int(amp.size());
  Eigen::VectorXcd ampv(P);
  for (int p = 0; p < P; ++p) ampv(p) = amp[p];

  Vec x = x0;
  Mat Z = Mat::Zero(d, P);
  std::vector<Vec> mx(sys.channels.size());

  auto nonlinear = [&](double t, const Vec& xs, const Mat& Zs, Vec& dx, Mat& dZ) {
    dx = (P > 0) ? Vec(Zs * ampv) : Vec(Vec::Zero(d));
    if (sys.drive) dx += sys.drive(t);
    for (std::size_t c = 0; c < sys.channels.size(); ++c) mx[c] = sys.channels[c].mask * xs;
    dZ.resize(d, P);
    for (int p = 0; p < P; ++p) dZ.col(p) = mx[chan[p]];
  };

  Trajectory out;
  out.times = grid;
  out.states.reserve(grid.size());
  out.states.push_back(x);
  detail::ExpCache cache;
  const double bound = opt.blowup * std::max(1.0, x0.norm());

  Vec k1x, k2x, k3x, k4x;
  Mat k1z, k2z, k3z, k4z;
  Eigen::VectorXcd dz(P), dz_half(P);
  for (std::size_t n = 0; n + 1 < grid.size(); ++n) {
    const double t = grid[n], h = grid[n + 1] - grid[n];
    const auto& ex = cache.get(sys.drift(t + 0.5 * h), h);
    for (int p = 0; p < P; ++p) {
      dz(p) = std::exp(-lam[p] * h);
      dz_half(p) = std::exp(-lam[p] * 0.5 * h);
    }
    auto applyE = [&](const Vec& xs, const Mat& Zs, bool half, Vec& xo, Mat& Zo) {
      xo = (half ? ex.e_half : ex.e) * xs;
      Zo = Zs * (half ? dz_half : dz).asDiagonal();
    };

    Vec ux, tx;
    Mat uz, tz;
    nonlinear(t, x, Z, k1x, k1z);
    applyE(x + 0.5 * h * k1x, Z + 0.5 * h * k1z, true, ux, uz);
    nonlinear(t + 0.5 * h, ux, uz, k2x, k2z);
    Vec ehx;
    Mat ehz;
    applyE(x, Z, true, ehx, ehz);
    nonlinear(t + 0.5 * h, ehx + 0.5 * h * k2x, ehz + 0.5 * h * k2z, k3x, k3z);
    Vec ex3;
    Mat ez3;
    applyE(k3x, k3z, true, ex3, ez3);
    Vec efx;
    Mat efz;
    applyE(x, Z, false, efx, efz);
    nonlinear(t + h, efx + h * ex3, efz + h * ez3, k4x, k4z);

    Vec e1x, e23x;
    Mat e1z, e23z;
    applyE(k1x, k1z, false, e1x, e1z);
    applyE(k2x + k3x, k2z + k3z, true, e23x, e23z);
    x = efx + (h / 6.0) * (e1x + 2.0 * e23x + k4x);
    Z = efz + (h / 6.0) * (e1z + 2.0 * e23z + k4z);
    detail::check_blowup(x, bound, grid[n + 1]);
    out.states.push_back(x);
  }
  return out;
}

// Product trapezoidal rule for the memory integral with the step-constant drift integrated exactly:
// x_{n+1} = E x_n + h/2 (E g_n + g_{n+1}), g = memory + drive, implicit in the k(0) term.
inline Trajectory integrate_generic(const LinearMemorySystem& sys, const Vec& x0, const std::vector<double>& grid,
                                    const SolverOptions& opt = {}) {
  sys.validate();
  require(x0.size() == sys.dim, Error::Kind::Dimension, "initial state dimension mismatch");
  detail::check_grid(grid);

  const int d = sys.dim;
  const std::size_t N = grid.size();
  const std::size_t C = sys.channels.size();

  double h0 = grid[1] - grid[0];
  bool uniform = true;
  for (std::size_t i = 1; i + 1 < N; ++i)
    if (std::abs((grid[i + 1] - grid[i]) - h0) > 1e-9 * h0) {
      uniform = false;
      break;
    }
  // Kernel values at lag m*h0 when the grid is uniform.
  std::vector<std::vector<cplx>> table(C);
  if (uniform)
    for (std::size_t c = 0; c < C; ++c) {
      table[c].resize(N);
      for (std::size_t m = 0; m < N; ++m) table[c][m] = sys.channels[c].kernel(double(m) * h0);
    }
  auto kern = [&](std::size_t c, std::size_t n, std::size_t j) -> cplx {
    if (uniform) return table[c][n - j];
    return sys.channels[c].kernel(grid[n] - grid[j]);
  };

  std::vector<std::vector<Vec>> hist(C);
  for (std::size_t c = 0; c < C; ++c) {
    hist[c].reserve(N);
    hist[c].push_back(sys.channels[c].mask * x0);
  }
  Mat k0mask = Mat::Zero(d, d);
  for (std::size_t c = 0; c < C; ++c) k0mask += sys.channels[c].kernel(0.0) * sys.channels[c].mask;

  Vec x = x0;
  Vec g = sys.drive ? Vec(sys.drive(grid[0])) : Vec(Vec::Zero(d));
  Trajectory out;
  out.times = grid;
  out.states.reserve(N);
  out.states.push_back(x);
  detail::ExpCache cache;
  const double bound = opt.blowup * std::max(1.0, x0.norm());
  Mat lhs_cache;
  double lhs_h = -1.0;
  Eigen::PartialPivLU<Mat> lu;

  for (std::size_t n = 0; n + 1 < N; ++n) {
    const double t = grid[n], h = grid[n + 1] - t;
    const auto& ex = cache.get(sys.drift(t + 0.5 * h), h);
    // Known part of the memory integral at t_{n+1}.
    Vec known = Vec::Zero(d);
    for (std::size_t c = 0; c < C; ++c) {
      Vec acc = Vec::Zero(d);
      for (std::size_t j = 0; j <= n; ++j) {
        double w = 0.5 * ((j > 0 ? grid[j] - grid[j - 1] : 0.0) + (grid[j + 1] - grid[j]));
        acc += (w * kern(c, n + 1, j)) * hist[c][j];
      }
      known += acc;
    }
    Vec dnext = sys.drive ? Vec(sys.drive(grid[n + 1])) : Vec(Vec::Zero(d));
    Vec rhs = ex.e * x + 0.5 * h * (ex.e * g + known + dnext);
    if (h != lhs_h) {
      lhs_cache = Mat::Identity(d, d) - (0.25 * h * h) * k0mask;
      lu.compute(lhs_cache);
      lhs_h = h;
    }
    x = lu.solve(rhs);
    g = known + 0.5 * h * (k0mask * x) + dnext;
    for (std::size_t c = 0; c < C; ++c) hist[c].push_back(sys.channels[c].mask * x);
    detail::check_blowup(x, bound, grid[n + 1]);
    out.states.push_back(x);
  }
  return out;
}

inline Trajectory integrate_generic_extrapolated(const LinearMemorySystem& sys, const Vec& x0, const std::vector<double>& grid,
                                                 const SolverOptions& opt = {}) {
  detail::check_grid(grid);
  std::vector<double> fine;
  fine.reserve(2 * grid.size());
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    fine.push_back(grid[i]);
    fine.push_back(0.5 * (grid[i] + grid[i + 1]));
  }
  fine.push_back(grid.back());
  Trajectory coarse = integrate_generic(sys, x0, grid, opt);
  Trajectory f = integrate_generic(sys, x0, fine, opt);
  for (std::size_t i = 0; i < grid.size(); ++i) coarse.states[i] = (4.0 * f.states[2 * i] - coarse.states[i]) / 3.0;
  return coarse;
}

inline Trajectory integrate(const LinearMemorySystem& sys, const Vec& x0, const std::vector<double>& grid,
                            const SolverOptions& opt = {}) {
  Method m = opt.method;
  if (m == Method::Auto) m = sys.exponential() ? Method::Exponential : Method::Generic;
  if (m == Method::Exponential && !sys.exponential()) m = Method::Generic;
  if (m == Method::Exponential) return integrate_exponential(sys, x0, grid, opt);
  return opt.richardson ? integrate_generic_extrapolated(sys, x0, grid, opt) : integrate_generic(sys, x0, grid, opt);
}

}  // namespace ipq
