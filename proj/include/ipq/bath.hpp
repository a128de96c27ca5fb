#pragma once

#include "ipq/common.hpp"

#include <gsl/gsl_integration.h>
#include <cmath>
#include <functional>

namespace ipq {

struct Lorentzian {
  double Gamma = 1.0;
  double gamma = 1.0;
  double Omega = 0.0;

  void validate() const {
    require(Gamma >= 0.0, Error::Kind::Domain, "Gamma must be non-negative");
    require(gamma > 0.0, Error::Kind::Domain, "gamma must be positive");
  }
};

inline double spectral_density(const Lorentzian& s, double w) {
  double d = w - s.Omega;
  return s.Gamma * s.gamma * s.gamma / (2.0 * pi * (d * d + s.gamma * s.gamma));
}

struct ExpTerm {
  cplx amp;
  cplx rate;  // f(t) contains amp * exp(-rate * t)
};

// Sum of exponentials, or samples on a uniform grid (linear interpolation) when `samples` is non-empty.
struct MemoryKernel {
  std::vector<ExpTerm> terms;
  double sample_dt = 0.0;
  std::vector<cplx> samples;

  bool exponential() const { return samples.empty(); }
  bool empty() const { return terms.empty() && samples.empty(); }

  cplx operator()(double tau) const {
    if (exponential()) {
      cplx s = 0.0;
      for (const auto& t : terms) s += t.amp * std::exp(-t.rate * tau);
      return s;
    }
    double u = tau / sample_dt;
    require(u >= -1e-9 && u <= double(samples.size() - 1) + 1e-9, Error::Kind::Domain,
            "sampled kernel evaluated outside its window");
    if (u <= 0.0) return samples.front();
    std::size_t i = static_cast<std::size_t>(u);
    if (i + 1 >= samples.size()) return samples.back();
    double r = u - double(i);
    return (1.0 - r) * samples[i] + r * samples[i + 1];
  }

  MemoryKernel conj() const {
    MemoryKernel k = *this;
    for (auto& t : k.terms) {
      t.amp = std::conj(t.amp);
      t.rate = std::conj(t.rate);
    }
    for (auto& s : k.samples) s = std::conj(s);
    return k;
  }

  MemoryKernel scaled(cplx c) const {
    MemoryKernel k = *this;
    for (auto& t : k.terms) t.amp *= c;
    for (auto& s : k.samples) s *= c;
    return k;
  }

  void validate() const {
    for (const auto& t : terms)
      require(t.rate.real() > 0.0, Error::Kind::Domain, "kernel decay rate needs positive real part");
    if (!samples.empty()) require(sample_dt > 0.0 && samples.size() >= 2, Error::Kind::Domain, "bad kernel samples");
  }
};

inline MemoryKernel sample_kernel(const std::function<cplx(double)>& f, double dt, std::size_t n) {
  MemoryKernel k;
  k.sample_dt = dt;
  for (std::size_t i = 0; i < n; ++i) k.samples.push_back(f(dt * double(i)));
  return k;
}

// f(tau) = int J(w) e^{-i(w - w0) tau} dw over the real line.
inline MemoryKernel rwa_kernel(const Lorentzian& s, double omega0) {
  s.validate();
  MemoryKernel k;
  if (s.Gamma == 0.0) return k;
  k.terms.push_back({cplx(0.5 * s.Gamma * s.gamma, 0.0), cplx(s.gamma, s.Omega - omega0)});
  return k;
}

// f(tau) = -2i int J(w) sin(w tau) dw.
inline MemoryKernel nonrwa_kernel(const Lorentzian& s) {
  s.validate();
  MemoryKernel k;
  if (s.Gamma == 0.0) return k;
  double a = 0.5 * s.Gamma * s.gamma;
  k.terms.push_back({cplx(a, 0.0), cplx(s.gamma, s.Omega)});
  k.terms.push_back({cplx(-a, 0.0), cplx(s.gamma, -s.Omega)});
  return k;
}

inline double thermal_occupancy(double w, double beta) {
  require(w > 0.0, Error::Kind::Domain, "thermal occupancy needs a positive frequency");
  require(beta > 0.0, Error::Kind::Domain, "beta must be positive (use +inf for zero temperature)");
  if (std::isinf(beta)) return 0.0;
  return 1.0 / std::expm1(beta * w);
}

struct BathMode {
  double omega;
  double g;
};

struct BathDiscretization {
  std::vector<BathMode> modes;
  double beta = inf;

  double coupling_sum() const {
    double s = 0.0;
    for (const auto& m : modes) s += m.g * m.g;
    return s;
  }
};

inline BathDiscretization discretize(const Lorentzian& s, int mode_count, double k, double beta = inf) {
  s.validate();
  require(mode_count >= 2, Error::Kind::Domain, "need at least two bath modes");
  require(k >= 5.0, Error::Kind::Domain, "coverage must be at least 5 half-widths");
  double lo = std::max(s.Omega - k * s.gamma, 0.0);
  double hi = s.Omega + k * s.gamma;
  require(hi > lo, Error::Kind::Domain, "empty bath window after clipping at w > 0");
  double dw = (hi - lo) / mode_count;
  BathDiscretization b;
  b.beta = beta;
  for (int i = 0; i < mode_count; ++i) {
    double w = lo + (i + 0.5) * dw;
    b.modes.push_back({w, std::sqrt(spectral_density(s, w) * dw)});
  }
  return b;
}

struct Quadrature {
  std::vector<double> x, w;
  std::size_t size() const { return x.size(); }
};

inline Quadrature gauss_legendre(double a, double b, int n) {
  require(n >= 1 && b > a, Error::Kind::Domain, "bad Gauss-Legendre request");
  gsl_integration_glfixed_table* t = gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(n));
  Quadrature q;
  for (int i = 0; i < n; ++i) {
    double xi, wi;
    gsl_integration_glfixed_point(a, b, static_cast<std::size_t>(i), &xi, &wi, t);
    q.x.push_back(xi);
    q.w.push_back(wi);
  }
  gsl_integration_glfixed_table_free(t);
  return q;
}

// Nodes on [max(0, Omega - k gamma), Omega + k gamma] for integrals against J(w) dw.
// Gauss-Legendre in theta with w = Omega + gamma tan(theta), which flattens the Lorentzian peak;
// the Jacobian is folded into the weights so sum w_i F(x_i) approximates int F dw.
inline Quadrature thermal_window(const Lorentzian& s, int nodes = 64, double k = 30.0) {
  double lo = std::max(s.Omega - k * s.gamma, 0.0);
  double hi = s.Omega + k * s.gamma;
  Quadrature t = gauss_legendre(std::atan((lo - s.Omega) / s.gamma), std::atan((hi - s.Omega) / s.gamma), nodes);
  Quadrature q;
  for (std::size_t i = 0; i < t.size(); ++i) {
    double c = std::cos(t.x[i]);
    q.x.push_back(s.Omega + s.gamma * std::tan(t.x[i]));
    q.w.push_back(t.w[i] * s.gamma / (c * c));
  }
  return q;
}

}  // namespace ipq
