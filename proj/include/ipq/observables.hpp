#pragma once

#include "ipq/common.hpp"

#include <cmath>

namespace ipq {

// One-particle state of the two modes. rho is the density matrix in the natural (mode 0, mode 1) order.
struct InitialState {
  Mat2 rho = Mat2::Identity() * 0.5;

  static InitialState pure(cplx a0, cplx a1) {
    double nrm = std::norm(a0) + std::norm(a1);
    require(std::abs(nrm - 1.0) <= 1e-10, Error::Kind::Domain, "initial amplitudes are not normalized");
    Eigen::Vector2cd v(a0, a1);
    return {v * v.adjoint()};
  }
  static InitialState mixed(const Mat2& r) {
    require((r - r.adjoint()).norm() <= 1e-10, Error::Kind::Domain, "density matrix not Hermitian");
    require(std::abs(r.trace() - 1.0) <= 1e-10, Error::Kind::Domain, "density matrix trace != 1");
    Eigen::SelfAdjointEigenSolver<Mat2> es(r);
    require(es.eigenvalues().minCoeff() >= -1e-10, Error::Kind::Domain, "density matrix not positive semidefinite");
    return {r};
  }
};

enum class Rep { C, A };

// a_m = sum_k Q(m,k) c_k in (a0, a1) order.
inline Eigen::Matrix2d collective_rotation() {
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::Matrix2d q;
  q << -r, r, r, r;
  return q;
}

// Matrix of <m_i' m_j> (' = dagger) in the requested mode set.
inline Mat2 initial_expectations(const InitialState& s, Rep rep) {
  Mat2 n = s.rho.transpose();
  if (rep == Rep::C) return n;
  Eigen::Matrix2d q = collective_rotation();
  return q.cast<cplx>() * n * q.transpose().cast<cplx>();
}

// Coefficient matrix X(j,i) of m_j(t) = sum_i X(j,i) m_i(0) + ..., stored as [X11, X10, X01, X00].
inline Mat2 coeff_matrix(const Vec& v) {
  Mat2 m;
  m(1, 1) = v(0);
  m(1, 0) = v(1);
  m(0, 1) = v(2);
  m(0, 0) = v(3);
  return m;
}

inline Vec coeff_vector(const Mat2& m) {
  Vec v(4);
  v << m(1, 1), m(1, 0), m(0, 1), m(0, 0);
  return v;
}

// Coefficients in c-modes from a-mode coefficients.
inline Mat2 a_to_c(const Mat2& a) {
  Eigen::Matrix2cd q = collective_rotation().cast<cplx>();
  return q.transpose() * a * q;
}

// 4x4 map acting on coefficient vectors, equal to a_to_c.
inline Eigen::Matrix4cd a_to_c_vector_map() {
  Eigen::Matrix4cd u = Eigen::Matrix4cd::Constant(0.5);
  u.row(1) << 0.5, -0.5, 0.5, -0.5;
  u.row(2) << 0.5, 0.5, -0.5, -0.5;
  u.row(3) << 0.5, -0.5, -0.5, 0.5;
  return u;
}

inline Mat2 system_correlation(const Mat2& x, const Mat2& n0) { return x.conjugate() * n0 * x.transpose(); }

struct Bloch {
  double x = 0, y = 0, z = 0;
  double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

inline Bloch bloch_from_corr(const Mat2& n) {
  return {2.0 * n(0, 1).real(), -2.0 * n(0, 1).imag(), (n(1, 1) - n(0, 0)).real()};
}

struct EffectiveState {
  Bloch r;
  Mat2 rho;  // basis order {|1>, |0>}
  bool clamped = false;
};

inline EffectiveState effective_state(Bloch b) {
  EffectiveState e;
  double n = b.norm();
  if (n > 1.0) {
    b = {b.x / n, b.y / n, b.z / n};
    e.clamped = true;
  }
  e.r = b;
  e.rho << 0.5 * (1.0 + b.z), 0.5 * cplx(b.x, -b.y), 0.5 * cplx(b.x, b.y), 0.5 * (1.0 - b.z);
  return e;
}

inline double infidelity(const EffectiveState& a, const EffectiveState& b) {
  double ra = a.r.norm(), rb = b.r.norm();
  require(ra <= 1.0 + 1e-12 && rb <= 1.0 + 1e-12, Error::Kind::Domain, "infidelity: state not positive semidefinite");
  double dot = a.r.x * b.r.x + a.r.y * b.r.y + a.r.z * b.r.z;
  double f = 0.5 * (1.0 + dot + std::sqrt(std::max(0.0, (1.0 - ra * ra) * (1.0 - rb * rb))));
  return std::clamp(1.0 - f, 0.0, 1.0);
}

inline double trace_distance(const EffectiveState& a, const EffectiveState& b) {
  double dx = a.r.x - b.r.x, dy = a.r.y - b.r.y, dz = a.r.z - b.r.z;
  return 0.5 * std::sqrt(dx * dx + dy * dy + dz * dz);
}

struct BlochPoint {
  double t = 0, n0 = 0, n1 = 0;
  Bloch j;
  EffectiveState eff;
  double infidelity = std::nan("");
  double trace_distance = std::nan("");
};

struct BlochTrajectory {
  std::vector<BlochPoint> points;

  std::size_t size() const { return points.size(); }
  double max_infidelity() const {
    double m = 0.0;
    for (const auto& p : points) m = std::max(m, p.infidelity);
    return m;
  }
  const BlochPoint& back() const { return points.back(); }
};

// Full correlation series: system part from the coefficients plus an optional bath part.
inline std::vector<Mat2> correlation_series(const std::vector<Mat2>& coeffs, const InitialState& init,
                                            const std::vector<Mat2>* bath = nullptr) {
  if (bath) require(bath->size() == coeffs.size(), Error::Kind::Dimension, "thermal series length mismatch");
  Mat2 n0 = initial_expectations(init, Rep::C);
  std::vector<Mat2> out;
  out.reserve(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    Mat2 n = system_correlation(coeffs[i], n0);
    if (bath) n += (*bath)[i];
    out.push_back(n);
  }
  return out;
}

inline BlochTrajectory bloch_series(const std::vector<double>& times, const std::vector<Mat2>& corr) {
  require(times.size() == corr.size(), Error::Kind::Dimension, "time grid and series length differ");
  BlochTrajectory b;
  b.points.reserve(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    BlochPoint p;
    p.t = times[i];
    p.n0 = corr[i](0, 0).real();
    p.n1 = corr[i](1, 1).real();
    p.j = bloch_from_corr(corr[i]);
    p.eff = effective_state(p.j);
    b.points.push_back(p);
  }
  return b;
}

inline void attach_reference(BlochTrajectory& b, const BlochTrajectory& ref) {
  require(b.size() == ref.size(), Error::Kind::Dimension, "reference trajectory length mismatch");
  for (std::size_t i = 0; i < b.size(); ++i) {
    b.points[i].infidelity = infidelity(b.points[i].eff, ref.points[i].eff);
    b.points[i].trace_distance = trace_distance(b.points[i].eff, ref.points[i].eff);
  }
}

}  // namespace ipq
