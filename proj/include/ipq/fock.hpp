#pragma once

#include "ipq/common.hpp"

#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>

namespace ipq {

// Basis index = sum_k n_k (cutoff+1)^k, mode 0 least significant.
struct FockSpec {
  int modes = 1;
  int cutoff = 1;

  std::size_t dim() const {
    std::size_t d = 1;
    for (int k = 0; k < modes; ++k) d *= static_cast<std::size_t>(cutoff + 1);
    return d;
  }
  std::size_t stride(int k) const {
    std::size_t s = 1;
    for (int i = 0; i < k; ++i) s *= static_cast<std::size_t>(cutoff + 1);
    return s;
  }
  int occupation(std::size_t index, int k) const {
    return static_cast<int>((index / stride(k)) % static_cast<std::size_t>(cutoff + 1));
  }
  std::size_t index(const std::vector<int>& occ) const {
    require(static_cast<int>(occ.size()) == modes, Error::Kind::Dimension, "occupation list length != mode count");
    std::size_t idx = 0;
    for (int k = 0; k < modes; ++k) {
      require(occ[k] >= 0 && occ[k] <= cutoff, Error::Kind::Domain, "occupation outside cutoff");
      idx += static_cast<std::size_t>(occ[k]) * stride(k);
    }
    return idx;
  }
};

inline std::size_t max_fock_dim = 4096;

inline std::vector<Mat> build_mode_ops(const FockSpec& spec) {
  require(spec.modes >= 1, Error::Kind::Domain, "mode count must be positive");
  require(spec.cutoff >= 1, Error::Kind::Domain, "cutoff must be >= 1");
  double logd = spec.modes * std::log(double(spec.cutoff + 1));
  require(logd <= std::log(double(max_fock_dim)) + 1e-12, Error::Kind::Capacity,
          "Fock dimension above limit " + std::to_string(max_fock_dim));
  const std::size_t d = spec.dim();
  std::vector<Mat> ops;
  for (int k = 0; k < spec.modes; ++k) {
    Mat a = Mat::Zero(d, d);
    const std::size_t s = spec.stride(k);
    for (std::size_t i = 0; i < d; ++i) {
      int n = spec.occupation(i, k);
      if (n > 0) a(i - s, i) = std::sqrt(double(n));
    }
    ops.push_back(std::move(a));
  }
  return ops;
}

inline Vec basis_state(const FockSpec& spec, const std::vector<int>& occ) {
  Vec v = Vec::Zero(spec.dim());
  v(spec.index(occ)) = 1.0;
  return v;
}

inline void check_pair(const Mat& c0, const Mat& c1) {
  require(c0.rows() == c1.rows() && c0.cols() == c1.cols() && c0.rows() == c0.cols(), Error::Kind::Dimension,
          "mode operators must be square and of equal dimension");
}

struct Su2 {
  Mat x, y, z;
};

inline Su2 su2_generators(const Mat& c0, const Mat& c1) {
  check_pair(c0, c1);
  Mat c0d = c0.adjoint(), c1d = c1.adjoint();
  Su2 j;
  j.x = c0d * c1 + c1d * c0;
  j.y = I1 * (c0d * c1 - c0 * c1d);
  j.z = c1d * c1 - c0d * c0;
  return j;
}

struct CollectiveModes {
  Mat a0, a1;
};

inline CollectiveModes collective_modes(const Mat& c0, const Mat& c1) {
  check_pair(c0, c1);
  const double r = 1.0 / std::sqrt(2.0);
  return {r * (c1 - c0), r * (c1 + c0)};
}

inline Eigen::VectorXd diagonal_real(const Mat& m) {
  require(m.rows() == m.cols(), Error::Kind::Dimension, "square matrix expected");
  Eigen::VectorXd d(m.rows());
  for (Eigen::Index i = 0; i < m.rows(); ++i) d(i) = m(i, i).real();
  return d;
}

inline Mat number_op(const Mat& c) { return c.adjoint() * c; }

// Number operators are diagonal in the Fock basis, so occupations can be read off directly.
inline Mat parity_operator(const Mat& c0, const Mat& c1) {
  check_pair(c0, c1);
  Eigen::VectorXd n = diagonal_real(number_op(c0) + number_op(c1));
  Mat p = Mat::Zero(n.size(), n.size());
  for (Eigen::Index i = 0; i < n.size(); ++i) p(i, i) = (std::lround(n(i)) % 2 == 1) ? 1.0 : -1.0;
  return p;
}

inline Mat leo_reflection(const Mat& c0, const Mat& c1) {
  check_pair(c0, c1);
  Eigen::VectorXd n = diagonal_real(number_op(c0) + number_op(c1));
  Mat r = Mat::Zero(n.size(), n.size());
  for (Eigen::Index i = 0; i < n.size(); ++i) r(i, i) = (std::lround(n(i)) % 2 == 0) ? 1.0 : -1.0;
  return r;
}

inline bool is_diagonal(const Mat& m, double tol = 0.0) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (i != j && std::abs(m(i, j)) > tol) return false;
  return true;
}

inline Mat cphase_unitary(const Mat& n0_alpha, const Mat& n0_beta, double alpha_cp) {
  check_pair(n0_alpha, n0_beta);
  Mat h = n0_alpha * n0_beta;
  if (!is_diagonal(h)) return (-I1 * alpha_cp * h).exp();
  Mat u = Mat::Zero(h.rows(), h.cols());
  for (Eigen::Index i = 0; i < h.rows(); ++i) u(i, i) = std::exp(-I1 * alpha_cp * h(i, i));
  return u;
}

struct LogicalBasis {
  Vec ket0, ket1;
};

// Logical states of the qubit held in modes (m0, m1).
inline LogicalBasis logical_basis(const FockSpec& spec, int m0 = 0, int m1 = 1) {
  std::vector<int> occ(spec.modes, 0);
  occ[m0] = 1;
  Vec k0 = basis_state(spec, occ);
  occ[m0] = 0;
  occ[m1] = 1;
  return {k0, basis_state(spec, occ)};
}

// Indices of basis states whose total occupation over `which` modes equals n.
inline std::vector<Eigen::Index> sector_indices(const FockSpec& spec, int n, const std::vector<int>& which) {
  std::vector<Eigen::Index> out;
  for (std::size_t i = 0; i < spec.dim(); ++i) {
    int tot = 0;
    for (int k : which) tot += spec.occupation(i, k);
    if (tot == n) out.push_back(static_cast<Eigen::Index>(i));
  }
  return out;
}

inline Mat restrict_to(const Mat& op, const std::vector<Eigen::Index>& idx) {
  Mat r(idx.size(), idx.size());
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b) r(a, b) = op(idx[a], idx[b]);
  return r;
}

}  // namespace ipq
