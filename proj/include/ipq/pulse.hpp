#pragma once

#include "ipq/common.hpp"

#include <algorithm>
#include <cmath>

namespace ipq {

// Rectangular LEO pulses of height `strength` starting at offset + k (width + spacing), k >= 0.
struct PulseTrain {
  double strength = 0.0;
  double width = 1.0;
  double spacing = 0.0;
  double offset = 0.0;
  double duration = 1.0;

  double period() const { return width + spacing; }
  bool active() const { return strength != 0.0; }

  void validate() const {
    require(strength >= 0.0, Error::Kind::Domain, "pulse strength must be >= 0");
    require(width > 0.0, Error::Kind::Domain, "pulse width must be > 0");
    require(spacing >= 0.0, Error::Kind::Domain, "pulse spacing must be >= 0");
    require(offset >= 0.0, Error::Kind::Domain, "pulse offset must be >= 0");
    require(duration > 0.0, Error::Kind::Domain, "duration must be > 0");
  }
};

namespace detail {

inline void check_time(const PulseTrain& p, double t) {
  double tol = 1e-12 * std::max(1.0, p.duration);
  require(t >= -tol && t <= p.duration + tol, Error::Kind::Domain, "time outside [0, duration]");
}

// Pulse index and position inside the period, snapped so that computed edges land on the left side.
inline std::pair<double, double> locate(const PulseTrain& p, double t) {
  double u = t - p.offset;
  double P = p.period();
  double k = std::floor(u / P);
  double r = u - k * P;
  if (P - r <= 1e-12 * P) {
    k += 1.0;
    r = 0.0;
  }
  return {k, r};
}

}  // namespace detail

inline double mu_at(const PulseTrain& p, double t) {
  detail::check_time(p, t);
  if (!p.active()) return 0.0;
  auto [k, r] = detail::locate(p, t);
  if (k < 0.0) return 0.0;
  return (r < p.width * (1.0 - 1e-12)) ? p.strength : 0.0;
}

inline double phase_integral(const PulseTrain& p, double t) {
  detail::check_time(p, t);
  if (!p.active()) return 0.0;
  auto [k, r] = detail::locate(p, t);
  if (k < 0.0) return 0.0;
  return p.strength * (k * p.width + std::min(r, p.width));
}

// Pulse edges in (0, duration).
inline std::vector<double> pulse_edges(const PulseTrain& p) {
  std::vector<double> e;
  if (!p.active()) return e;
  double tol = 1e-12 * std::max(1.0, p.duration);
  for (long k = 0;; ++k) {
    double s = p.offset + double(k) * p.period();
    if (s >= p.duration - tol) break;
    if (s > tol) e.push_back(s);
    double f = s + p.width;
    if (f < p.duration - tol && (e.empty() || f > e.back() + tol)) e.push_back(f);
  }
  return e;
}

inline std::size_t max_grid_points = 2'000'000;

// Uniform step when all breakpoint intervals share a common divisor no larger than base_step,
// otherwise each interval is subdivided on its own. Pulses always get at least 8 steps.
inline std::vector<double> build_grid(const PulseTrain& p, double base_step) {
  p.validate();
  require(base_step > 0.0, Error::Kind::Domain, "base step must be positive");
  std::vector<double> bp{0.0};
  for (double e : pulse_edges(p)) bp.push_back(e);
  bp.push_back(p.duration);

  double step = base_step;
  if (p.active()) step = std::min(step, p.width / 8.0);

  std::vector<double> len;
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) len.push_back(bp[i + 1] - bp[i]);
  double lmin = *std::min_element(len.begin(), len.end());

  auto steps_for = [&](double l, double h) { return std::max<long>(1, std::lround(l / h)); };
  bool uniform = false;
  double h = step;
  for (long m = std::max<long>(1, long(std::ceil(lmin / step - 1e-9))); m < 64 * std::max<long>(1, long(std::ceil(lmin / step))); ++m) {
    h = lmin / double(m);
    bool ok = true;
    for (double l : len) {
      double n = l / h;
      if (std::abs(n - std::round(n)) > 1e-7 * std::max(1.0, n)) {
        ok = false;
        break;
      }
    }
    if (ok) {
      uniform = true;
      break;
    }
  }

  std::size_t total = 1;
  for (double l : len) total += std::size_t(uniform ? steps_for(l, h) : long(std::ceil(l / step - 1e-9)));
  require(total <= max_grid_points, Error::Kind::Capacity, "time grid exceeds " + std::to_string(max_grid_points) + " points");

  std::vector<double> g;
  g.reserve(total);
  g.push_back(0.0);
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    long n = uniform ? steps_for(len[i], h) : std::max<long>(1, long(std::ceil(len[i] / step - 1e-9)));
    for (long j = 1; j < n; ++j) g.push_back(bp[i] + len[i] * double(j) / double(n));
    g.push_back(bp[i + 1]);
  }
  return g;
}

}  // namespace ipq
