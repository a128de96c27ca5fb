#pragma once

#include "ipq/collective.hpp"
#include "ipq/individual.hpp"

#include <map>
#include <unsupported/Eigen/MatrixFunctions>

namespace ipq {

// Explicit-bath quadratic model. Modes are [c0, c1, bath...]; h is the single-particle Hamiltonian at
// mu = 0 in the working frame, kappa the pairing block of the counter-rotating coupling (empty under RWA).
struct QuadraticModel {
  bool rwa = true;
  Mat h;
  Mat kappa;
  std::vector<double> omega;  // absolute frequency of each mode (bath entries used for occupancy)
  std::vector<int> bath_of;   // -1 for system modes, else bath index
  PulseTrain leo;

  int n() const { return int(h.rows()); }
  int dim() const { return rwa ? n() : 2 * n(); }
};

inline QuadraticModel collective_model(const CollectiveScenario& sc, int M = 400, double k = 20.0) {
  sc.validate();
  BathDiscretization b = discretize(sc.spectrum, M, k);
  const int n = 2 + M;
  QuadraticModel qm;
  qm.rwa = true;
  qm.h = Mat::Zero(n, n);
  qm.h(0, 0) = -sc.gate.gz();
  qm.h(1, 1) = sc.gate.gz();
  qm.h(0, 1) = qm.h(1, 0) = sc.gate.gx();
  qm.omega.assign(n, sc.omega0);
  qm.bath_of.assign(n, -1);
  const double r = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < M; ++i) {
    int a = 2 + i;
    qm.h(a, a) = b.modes[i].omega - sc.omega0;
    qm.h(0, a) = qm.h(a, 0) = qm.h(1, a) = qm.h(a, 1) = r * b.modes[i].g;
    qm.omega[a] = b.modes[i].omega;
    qm.bath_of[a] = 0;
  }
  qm.leo = sc.train();
  return qm;
}

// M modes per bath; bath j couples to c_j only.
inline QuadraticModel individual_model(const IndividualScenario& sc, int M = 400, double k = 20.0) {
  sc.validate();
  const int n = 2 + 2 * M;
  const double f = sc.frame();
  QuadraticModel qm;
  qm.rwa = sc.rwa;
  qm.h = Mat::Zero(n, n);
  qm.h.topLeftCorner(2, 2) = sc.hamiltonian(0.0).cast<cplx>();
  if (!sc.rwa) qm.kappa = Mat::Zero(n, n);
  qm.omega.assign(n, 0.0);
  qm.omega[0] = sc.omega0[0];
  qm.omega[1] = sc.omega0[1];
  qm.bath_of.assign(n, -1);
  for (int j = 0; j < 2; ++j) {
    BathDiscretization b = discretize(sc.spectra[j], M, k);
    for (int i = 0; i < M; ++i) {
      int a = 2 + j * M + i;
      qm.h(a, a) = b.modes[i].omega - f;
      qm.h(j, a) = qm.h(a, j) = b.modes[i].g;
      if (!sc.rwa) qm.kappa(j, a) = qm.kappa(a, j) = b.modes[i].g;
      qm.omega[a] = b.modes[i].omega;
      qm.bath_of[a] = j;
    }
  }
  qm.leo = sc.train();
  return qm;
}

// Applies exp(-i G dt) for the piecewise-constant generator, G = h + mu P_sys (RWA) or its Bogoliubov doubling.
class Propagator {
 public:
  explicit Propagator(const QuadraticModel& m) : m_(m) {}

  Mat generator(double mu) const {
    const int n = m_.n();
    Mat hm = m_.h;
    hm(0, 0) += mu;
    hm(1, 1) += mu;
    if (m_.rwa) return hm;
    Mat g(2 * n, 2 * n);
    g.topLeftCorner(n, n) = hm;
    g.topRightCorner(n, n) = m_.kappa;
    g.bottomLeftCorner(n, n) = -m_.kappa.conjugate();
    g.bottomRightCorner(n, n) = -hm.conjugate();
    return g;
  }

  void apply(Mat& x, double mu, double dt) {
    if (m_.rwa) {
      const Eig& e = eig(mu);
      Eigen::VectorXcd ph = (-I1 * dt * e.values.cast<cplx>()).array().exp();
      x = e.vectors * (ph.asDiagonal() * (e.vectors.adjoint() * x));
    } else {
      x = expm(mu, dt) * x;
    }
  }
  // x <- x * E for row vectors stacked in x.
  void apply_right(Mat& x, double mu, double dt) {
    if (m_.rwa) {
      const Eig& e = eig(mu);
      Eigen::VectorXcd ph = (-I1 * dt * e.values.cast<cplx>()).array().exp();
      x = ((x * e.vectors) * ph.asDiagonal()) * e.vectors.adjoint();
    } else {
      x = x * expm(mu, dt);
    }
  }

 private:
  struct Eig {
    Eigen::VectorXd values;
    Mat vectors;
  };
  const Eig& eig(double mu) {
    auto it = eig_.find(mu);
    if (it != eig_.end()) return it->second;
    Eigen::SelfAdjointEigenSolver<Mat> es(generator(mu));
    return eig_.emplace(mu, Eig{es.eigenvalues(), es.eigenvectors()}).first->second;
  }
  const Mat& expm(double mu, double dt) {
    auto key = std::make_pair(mu, dt);
    auto it = exp_.find(key);
    if (it != exp_.end()) return it->second;
    if (exp_.size() >= 8) exp_.clear();
    Mat e = (Mat(-I1 * dt * generator(mu))).exp();
    return exp_.emplace(key, std::move(e)).first->second;
  }

  const QuadraticModel& m_;
  std::map<double, Eig> eig_;
  std::map<std::pair<double, double>, Mat> exp_;
};

namespace detail {

struct Segment {
  double t0, t1, mu;
  int out = -1;  // index of output time reached at t1, if any
};

inline std::vector<Segment> segments(const QuadraticModel& m, const std::vector<double>& times) {
  require(!times.empty() && times.front() >= 0.0, Error::Kind::Domain, "oracle output times must be non-negative");
  for (std::size_t i = 1; i < times.size(); ++i)
    require(times[i] > times[i - 1], Error::Kind::Domain, "oracle output times must increase");
  std::vector<double> e = pulse_edges(m.leo);
  std::vector<Segment> s;
  double t = 0.0;
  std::size_t ie = 0;
  const double tol = 1e-12 * std::max(1.0, times.back());
  for (std::size_t k = 0; k < times.size(); ++k) {
    while (ie < e.size() && e[ie] < times[k] - tol) {
      if (e[ie] > t + tol) {
        s.push_back({t, e[ie], mu_at(m.leo, std::min(0.5 * (t + e[ie]), m.leo.duration)), -1});
        t = e[ie];
      }
      ++ie;
    }
    if (times[k] > t + tol) {
      s.push_back({t, times[k], mu_at(m.leo, std::min(0.5 * (t + times[k]), m.leo.duration)), int(k)});
      t = times[k];
    } else {
      s.push_back({t, t, 0.0, int(k)});
    }
    if (ie < e.size() && std::abs(e[ie] - times[k]) <= tol) ++ie;
  }
  return s;
}

inline bool constant_mu(const QuadraticModel& m) { return !m.leo.active(); }

}  // namespace detail

// Selected columns of the full propagator (size dim x cols) at each output time.
inline std::vector<Mat> propagate_columns(const QuadraticModel& m, const std::vector<double>& times, const std::vector<int>& cols) {
  Propagator p(m);
  Mat x = Mat::Zero(m.dim(), Eigen::Index(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) x(cols[c], Eigen::Index(c)) = 1.0;
  std::vector<Mat> out(times.size());
  for (const auto& s : detail::segments(m, times)) {
    if (s.t1 > s.t0) p.apply(x, s.mu, s.t1 - s.t0);
    if (s.out >= 0) out[s.out] = x;
  }
  return out;
}

// Full propagator at each output time. Cost grows as dim^3 per segment.
inline std::vector<Mat> propagate(const QuadraticModel& m, const std::vector<double>& times) {
  std::vector<int> all(m.dim());
  for (int i = 0; i < m.dim(); ++i) all[i] = i;
  return propagate_columns(m, times, all);
}

// Selected rows; only valid for a time-independent generator.
inline std::vector<Mat> propagate_rows(const QuadraticModel& m, const std::vector<double>& times, const std::vector<int>& rows) {
  require(detail::constant_mu(m), Error::Kind::Domain, "row propagation needs a constant generator");
  Propagator p(m);
  Mat x = Mat::Zero(Eigen::Index(rows.size()), m.dim());
  for (std::size_t r = 0; r < rows.size(); ++r) x(Eigen::Index(r), rows[r]) = 1.0;
  std::vector<Mat> out(times.size());
  for (const auto& s : detail::segments(m, times)) {
    if (s.t1 > s.t0) p.apply_right(x, s.mu, s.t1 - s.t0);
    if (s.out >= 0) out[s.out] = x;
  }
  return out;
}

// System coefficient blocks C(j,i) and Cbar(j,i) from the system columns.
struct OracleCoefficients {
  std::vector<double> times;
  std::vector<Mat2> c, cbar;
  double symplectic_error = 0.0;
};

inline OracleCoefficients oracle_coefficients(const QuadraticModel& m, const std::vector<double>& times) {
  const int n = m.n();
  std::vector<int> cols{0, 1};
  if (!m.rwa) {
    cols.push_back(n);
    cols.push_back(n + 1);
  }
  auto w = propagate_columns(m, times, cols);
  OracleCoefficients oc;
  oc.times = times;
  Mat sz = Mat::Identity(m.dim(), m.dim());
  if (!m.rwa) sz.bottomRightCorner(n, n) *= -1.0;
  Mat ref = Mat::Identity(Eigen::Index(cols.size()), Eigen::Index(cols.size()));
  if (!m.rwa) ref.bottomRightCorner(2, 2) *= -1.0;
  for (const auto& x : w) {
    Mat2 c, cb = Mat2::Zero();
    for (int j = 0; j < 2; ++j)
      for (int i = 0; i < 2; ++i) {
        c(j, i) = x(j, i);
        if (!m.rwa) cb(j, i) = x(j, 2 + i);  // column n+i holds (V(:,i), conj U(:,i))
      }
    oc.c.push_back(c);
    oc.cbar.push_back(cb);
    double err = (x.adjoint() * sz * x - ref).cwiseAbs().maxCoeff();
    oc.symplectic_error = std::max(oc.symplectic_error, err);
  }
  require(m.rwa || oc.symplectic_error <= 1e-8, Error::Kind::Solver, "oracle lost the symplectic metric");
  return oc;
}

// <c_m' c_n> at each output time for the given bath temperatures and initial system state.
inline std::vector<Mat2> thermal_expectation(const QuadraticModel& m, const std::vector<double>& times, const std::array<double, 2>& beta,
                                             const InitialState& init) {
  const int n = m.n();
  Mat2 n0 = initial_expectations(init, Rep::C);
  bool need_bath = !m.rwa;
  for (int a = 2; a < n; ++a)
    if (!std::isinf(beta[m.bath_of[a]])) need_bath = true;

  std::vector<Mat> rows;
  if (!need_bath) {
    auto oc = oracle_coefficients(m, times);
    return correlation_series(oc.c, init);
  }
  if (detail::constant_mu(m)) {
    rows = propagate_rows(m, times, {0, 1});
  } else {
    for (auto& w : propagate(m, times)) rows.push_back(w.topRows(2));
  }
  std::vector<double> nb(n, 0.0);
  for (int a = 2; a < n; ++a) nb[a] = thermal_occupancy(m.omega[a], beta[m.bath_of[a]]);
  std::vector<Mat2> out;
  for (const auto& r : rows) {
    Mat2 u = r.leftCols(2);
    Mat2 nm = system_correlation(u, n0);
    if (!m.rwa) {
      Mat2 v = r.middleCols(n, 2);
      nm += v.conjugate() * (Mat2::Identity() + n0.transpose()) * v.transpose();
    }
    for (int a = 2; a < n; ++a) {
      Eigen::Vector2cd ua = r.col(a);
      nm += nb[a] * ua.conjugate() * ua.transpose();
      if (!m.rwa) {
        Eigen::Vector2cd va = r.col(n + a);
        nm += (nb[a] + 1.0) * va.conjugate() * va.transpose();
      }
    }
    out.push_back(nm);
  }
  return out;
}

}  // namespace ipq
