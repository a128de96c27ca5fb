#pragma once

#include <Eigen/Dense>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace ipq {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using Mat2 = Eigen::Matrix2cd;

inline constexpr cplx I1{0.0, 1.0};
inline constexpr double pi = 3.14159265358979323846;
inline constexpr double inf = std::numeric_limits<double>::infinity();

struct Error : std::runtime_error {
  enum class Kind { Capacity, Dimension, Domain, Solver, Singular, Syndrome, Config, Quadrature };
  Kind kind;
  Error(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

inline void require(bool cond, Error::Kind k, const std::string& msg) {
  if (!cond) throw Error(k, msg);
}

inline Mat commutator(const Mat& a, const Mat& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), Error::Kind::Dimension, "commutator: dimension mismatch");
  return a * b - b * a;
}

}  // namespace ipq
