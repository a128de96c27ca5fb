#pragma once

#include "ipq/fock.hpp"

#include <cmath>

namespace ipq {

struct CodeSpace {
  std::vector<Vec> words;
  std::string label;

  void validate(double tol = 1e-12) const {
    require(!words.empty(), Error::Kind::Domain, "empty code space");
    for (std::size_t i = 0; i < words.size(); ++i)
      for (std::size_t j = 0; j < words.size(); ++j) {
        require(words[i].size() == words[0].size(), Error::Kind::Dimension, "codeword dimension mismatch");
        double target = i == j ? 1.0 : 0.0;
        require(std::abs(words[i].dot(words[j]) - target) <= tol, Error::Kind::Domain, "codewords not orthonormal");
      }
  }
};

struct ErrorSet {
  std::vector<Mat> ops;
  std::vector<std::string> labels;
};

struct KLResult {
  Mat c;  // C_lk read from the first codeword
  bool satisfied = false;
  double residual = 0.0;
};

inline KLResult kl_matrix(const CodeSpace& code, const ErrorSet& errs, double tol = 1e-10) {
  code.validate();
  const std::size_t L = errs.ops.size();
  const Eigen::Index d = code.words[0].size();
  for (const auto& e : errs.ops) require(e.rows() == d && e.cols() == d, Error::Kind::Dimension, "error operator dimension mismatch");
  KLResult r;
  r.c = Mat::Zero(L, L);
  for (std::size_t l = 0; l < L; ++l)
    for (std::size_t k = 0; k < L; ++k) {
      Mat ee = errs.ops[l].adjoint() * errs.ops[k];
      r.c(l, k) = code.words[0].dot(ee * code.words[0]);
      for (std::size_t i = 0; i < code.words.size(); ++i)
        for (std::size_t j = 0; j < code.words.size(); ++j) {
          cplx m = code.words[i].dot(ee * code.words[j]);
          double v = i == j ? std::abs(m - r.c(l, k)) : std::abs(m);
          r.residual = std::max(r.residual, v);
        }
    }
  r.satisfied = r.residual <= tol;
  return r;
}

// Two modes truncated to total occupation <= nmax; operators restricted to that subspace.
struct TwoModeSpace {
  FockSpec spec;
  std::vector<Eigen::Index> keep;
  Mat c0, c1;

  Eigen::Index dim() const { return Eigen::Index(keep.size()); }
  Vec embed(const Vec& full) const {
    Vec v(dim());
    for (Eigen::Index i = 0; i < dim(); ++i) v(i) = full(keep[i]);
    return v;
  }
  Vec state(int n0, int n1) const { return embed(basis_state(spec, {n0, n1})); }
  Vec vacuum() const { return state(0, 0); }
  Vec ket0() const { return state(1, 0); }
  Vec ket1() const { return state(0, 1); }
  Mat x0() const { return c0 + c0.adjoint(); }
  Mat x1() const { return c1 + c1.adjoint(); }
  Mat x() const { return x0() + x1(); }
  Mat parity() const { return parity_operator(c0, c1); }
};

inline TwoModeSpace two_mode_space(int nmax) {
  require(nmax >= 2, Error::Kind::Domain, "total-number cutoff must be >= 2");
  TwoModeSpace s;
  s.spec = {2, nmax};
  auto ops = build_mode_ops(s.spec);
  for (std::size_t i = 0; i < s.spec.dim(); ++i)
    if (s.spec.occupation(i, 0) + s.spec.occupation(i, 1) <= nmax) s.keep.push_back(Eigen::Index(i));
  s.c0 = restrict_to(ops[0], s.keep);
  s.c1 = restrict_to(ops[1], s.keep);
  return s;
}

inline CodeSpace ipq_code(const TwoModeSpace& s) { return {{s.ket0(), s.ket1()}, "ipq"}; }

// Parity eigenvalue of a state; ambiguous (mixed-parity) states are rejected.
inline int parity_syndrome(const Vec& state, const Mat& parity) {
  require(state.size() == parity.rows(), Error::Kind::Dimension, "state dimension mismatch");
  double nrm = state.squaredNorm();
  require(nrm > 0.0, Error::Kind::Domain, "zero state");
  Vec odd = 0.5 * (state + parity * state);
  double p = odd.squaredNorm() / nrm;
  if (p >= 1.0 - 1e-10) return 1;
  if (p <= 1e-10) return -1;
  throw Error(Error::Kind::Syndrome, "ambiguous syndrome: state is not a parity eigenstate");
}

struct ParityMeasurement {
  int outcome;
  double probability;
  Vec post;
};

// Projective parity measurement; `pick` selects which branch to return (+1 or -1).
inline ParityMeasurement parity_measure(const Vec& state, const Mat& parity, int pick) {
  require(pick == 1 || pick == -1, Error::Kind::Domain, "parity outcome must be +1 or -1");
  Vec proj = 0.5 * (state + double(pick) * (parity * state));
  double p = proj.squaredNorm() / state.squaredNorm();
  Vec post = p > 0.0 ? Vec(proj / proj.norm()) : Vec(Vec::Zero(state.size()));
  return {pick, p, post};
}

struct WwmOutcome {
  int outcome = 0;
  double probability = 0.0;
  Vec post;
  double fidelity = std::nan("");
};

struct WwmResult {
  WwmOutcome out0, out1;
  Mat u;  // ancilla-major blocks: [[A, -S], [S, A]] with A = 1/(eps x), S = sqrt(1 - 1/(eps x)^2)
  bool non_unitary = false;
  double min_support_eigenvalue = 0.0;
};

// err_state = eps x |psi>. When `reference` is given, fidelities are |<ref|post>|^2.
inline WwmResult wwm_recover(const Vec& err_state, double epsilon, const Mat& x_op, const Vec* reference = nullptr) {
  require(x_op.rows() == x_op.cols() && x_op.rows() == err_state.size(), Error::Kind::Dimension, "x operator dimension mismatch");
  require((x_op - x_op.adjoint()).cwiseAbs().maxCoeff() <= 1e-12, Error::Kind::Domain, "x operator must be Hermitian");
  require(epsilon > 0.0, Error::Kind::Domain, "epsilon must be positive");
  const double floor = 1e-12;
  Eigen::SelfAdjointEigenSolver<Mat> es(x_op);
  const Mat& v = es.eigenvectors();
  const Eigen::VectorXd& xi = es.eigenvalues();
  const Eigen::Index d = xi.size();

  Vec coef = v.adjoint() * err_state;
  double enorm = err_state.norm();
  require(enorm > 0.0, Error::Kind::Domain, "zero error state");
  WwmResult r;
  r.min_support_eigenvalue = inf;
  Eigen::VectorXcd a(d), s(d);
  for (Eigen::Index k = 0; k < d; ++k) {
    bool support = std::abs(coef(k)) > 1e-10 * enorm;
    if (support) {
      if (std::abs(xi(k)) <= floor) throw Error(Error::Kind::Singular, "singular inverse: zero eigenvalue of x in the support");
      r.min_support_eigenvalue = std::min(r.min_support_eigenvalue, std::abs(xi(k)));
    }
    if (std::abs(xi(k)) <= floor) {
      a(k) = 1.0;
      s(k) = 0.0;
      continue;
    }
    double inv = 1.0 / (epsilon * xi(k));
    a(k) = inv;
    s(k) = std::sqrt(cplx(1.0 - inv * inv, 0.0));
    if (support && epsilon * epsilon * xi(k) * xi(k) < 1.0) r.non_unitary = true;
  }
  Mat am = v * a.asDiagonal() * v.adjoint();
  Mat sm = v * s.asDiagonal() * v.adjoint();
  r.u = Mat::Zero(2 * d, 2 * d);
  r.u.topLeftCorner(d, d) = am;
  r.u.topRightCorner(d, d) = -sm;
  r.u.bottomLeftCorner(d, d) = sm;
  r.u.bottomRightCorner(d, d) = am;

  Vec in = Vec::Zero(2 * d);
  in.head(d) = err_state / enorm;
  Vec outv = r.u * in;
  auto fill = [&](WwmOutcome& o, int k, const Vec& part) {
    o.outcome = k;
    o.probability = part.squaredNorm();
    o.post = o.probability > 0.0 ? Vec(part / part.norm()) : Vec(Vec::Zero(d));
    if (reference) o.fidelity = std::norm(reference->dot(o.post)) / reference->squaredNorm();
  };
  fill(r.out0, 0, outv.head(d));
  fill(r.out1, 1, outv.tail(d));
  return r;
}

// Single mode with levels 0..cutoff.
inline CodeSpace binomial_code(int cutoff = 4) {
  require(cutoff >= 4, Error::Kind::Domain, "binomial code needs Fock level 4");
  Vec w0 = Vec::Zero(cutoff + 1), w1 = Vec::Zero(cutoff + 1);
  w0(0) = w0(4) = 1.0 / std::sqrt(2.0);
  w1(2) = 1.0;
  return {{w0, w1}, "binomial"};
}

// Recovery unitary on levels 0..4: |3> -> W0, |1> -> |2>, |0> -> (|0>-|4>)/sqrt2, |2> -> |1>, |4> -> |3>.
inline Mat binomial_recovery_unitary(int cutoff = 4) {
  require(cutoff >= 4, Error::Kind::Domain, "binomial recovery needs Fock level 4");
  const double r = 1.0 / std::sqrt(2.0);
  Mat u = Mat::Identity(cutoff + 1, cutoff + 1);
  u.topLeftCorner(5, 5).setZero();
  u(0, 3) = r;
  u(4, 3) = r;
  u(2, 1) = 1.0;
  u(0, 0) = r;
  u(4, 0) = -r;
  u(1, 2) = 1.0;
  u(3, 4) = 1.0;
  return u;
}

inline Vec binomial_recovery(const Vec& state) {
  const Eigen::Index d = state.size();
  require(d >= 5, Error::Kind::Dimension, "binomial recovery needs Fock level 4");
  double total = state.squaredNorm();
  double odd = std::norm(state(1)) + std::norm(state(3));
  require(total > 0.0 && odd >= total * (1.0 - 1e-10), Error::Kind::Domain, "state not supported on the post-loss subspace {|1>, |3>}");
  Vec out = binomial_recovery_unitary(int(d) - 1) * state;
  return out / out.norm();
}

inline ErrorSet single_loss_errors(int cutoff) {
  auto a = build_mode_ops({1, cutoff})[0];
  return {{Mat::Identity(cutoff + 1, cutoff + 1), a}, {"I", "a"}};
}

inline ErrorSet dipole_errors(const TwoModeSpace& s) {
  return {{Mat::Identity(s.dim(), s.dim()), s.x()}, {"I", "x"}};
}

// Optional second-order set: adds the products x_i x_j.
inline ErrorSet second_order_errors(const TwoModeSpace& s) {
  ErrorSet e = dipole_errors(s);
  e.ops.push_back(s.x0() * s.x0());
  e.ops.push_back(s.x0() * s.x1());
  e.ops.push_back(s.x1() * s.x1());
  e.labels.insert(e.labels.end(), {"x0x0", "x0x1", "x1x1"});
  return e;
}

}  // namespace ipq
