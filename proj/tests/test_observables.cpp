#include "ipq/fock.hpp"
#include "ipq/observables.hpp"

#include <gtest/gtest.h>
#include <random>

using namespace ipq;

namespace {

// Uhlmann fidelity by eigen-decomposition square roots.
double uhlmann(const Mat2& a, const Mat2& b) {
  auto sqrtm = [](const Mat2& m) {
    Eigen::SelfAdjointEigenSolver<Mat2> es(m);
    Eigen::Vector2d ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return Mat2(es.eigenvectors() * ev.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint());
  };
  Mat2 s = sqrtm(a);
  Mat2 inner = s * b * s;
  inner = 0.5 * (inner + inner.adjoint());
  double t = sqrtm(inner).trace().real();
  return t * t;
}

double trace_norm_half(const Mat2& d) {
  Eigen::SelfAdjointEigenSolver<Mat2> es(d);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

Bloch random_bloch(std::mt19937_64& rng, double rmax) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Bloch b{u(rng), u(rng), u(rng)};
  double n = b.norm();
  double r = rmax * std::abs(u(rng));
  return {b.x / n * r, b.y / n * r, b.z / n * r};
}

}  // namespace

TEST(Observables, BlochMatchesFockExpectations) {
  FockSpec spec{2, 1};
  auto ops = build_mode_ops(spec);
  Su2 j = su2_generators(ops[0], ops[1]);
  Vec k0 = basis_state(spec, {1, 0}), k1 = basis_state(spec, {0, 1});
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    cplx a0(n(rng), n(rng)), a1(n(rng), n(rng));
    double nrm = std::sqrt(std::norm(a0) + std::norm(a1));
    a0 /= nrm;
    a1 /= nrm;
    Vec psi = a0 * k0 + a1 * k1;
    Bloch b = bloch_from_corr(initial_expectations(InitialState::pure(a0, a1), Rep::C));
    EXPECT_NEAR(b.x, psi.dot(j.x * psi).real(), 1e-14);
    EXPECT_NEAR(b.y, psi.dot(j.y * psi).real(), 1e-14);
    EXPECT_NEAR(b.z, psi.dot(j.z * psi).real(), 1e-14);
    Mat2 nc = initial_expectations(InitialState::pure(a0, a1), Rep::C);
    EXPECT_NEAR(std::abs(nc(0, 1) - psi.dot(ops[0].adjoint() * ops[1] * psi)), 0.0, 1e-14);
  }
}

TEST(Observables, CollectiveExpectations) {
  FockSpec spec{2, 1};
  auto ops = build_mode_ops(spec);
  auto a = collective_modes(ops[0], ops[1]);
  Vec psi = 0.6 * basis_state(spec, {1, 0}) + cplx(0.0, 0.8) * basis_state(spec, {0, 1});
  Mat2 na = initial_expectations(InitialState::pure(0.6, cplx(0.0, 0.8)), Rep::A);
  const Mat* m[2] = {&a.a0, &a.a1};
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q) EXPECT_NEAR(std::abs(na(p, q) - psi.dot(m[p]->adjoint() * *m[q] * psi)), 0.0, 1e-14);
}

TEST(Observables, CoefficientTransformIsHadamardProduct) {
  Eigen::Matrix4cd u = a_to_c_vector_map();
  Eigen::Matrix2cd h;
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  Eigen::Matrix4cd kron;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) kron.block<2, 2>(2 * i, 2 * j) = h(i, j) * h;
  EXPECT_LE((u - kron).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LE((u * u - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff(), 1e-15);
  // the printed transform differs by swapping the two middle rows
  Eigen::Matrix4cd printed;
  printed << 1, 1, 1, 1, 1, 1, -1, -1, 1, -1, 1, -1, 1, -1, -1, 1;
  printed *= 0.5;
  Eigen::Matrix4cd swapped = printed;
  swapped.row(1) = printed.row(2);
  swapped.row(2) = printed.row(1);
  EXPECT_LE((u - swapped).cwiseAbs().maxCoeff(), 1e-15);

  std::mt19937_64 rng(5);
  std::normal_distribution<double> n(0.0, 1.0);
  Mat2 am;
  for (int i = 0; i < 4; ++i) am(i / 2, i % 2) = cplx(n(rng), n(rng));
  Vec cv = coeff_vector(a_to_c(am));
  Vec av = coeff_vector(am);
  EXPECT_LE((cv - u * av).cwiseAbs().maxCoeff(), 1e-14);
}

// a_to_c follows from a = Q c: the c-mode coefficients of c(t) = Q^T a(t) with a(t) = A a(0) = A Q c(0).
TEST(Observables, CoefficientTransformFromModeDefinition) {
  Eigen::Matrix2cd q = collective_rotation().cast<cplx>();
  std::mt19937_64 rng(9);
  std::normal_distribution<double> n(0.0, 1.0);
  Mat2 am;
  for (int i = 0; i < 4; ++i) am(i / 2, i % 2) = cplx(n(rng), n(rng));
  EXPECT_LE((a_to_c(am) - q.inverse() * am * q).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Observables, EffectiveStateAndClamping) {
  auto e = effective_state({0.0, 0.0, 1.0});
  EXPECT_NEAR(std::abs(e.rho(0, 0) - 1.0), 0.0, 0.0);
  EXPECT_FALSE(e.clamped);
  auto m = effective_state({0.0, 0.0, 0.0});
  EXPECT_NEAR(std::abs(m.rho(1, 1) - 0.5), 0.0, 0.0);
  auto c = effective_state({0.0, 1.2, 0.0});
  EXPECT_TRUE(c.clamped);
  EXPECT_NEAR(c.r.norm(), 1.0, 1e-15);
}

TEST(Observables, InfidelityMatchesUhlmann) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    auto a = effective_state(random_bloch(rng, 1.0)), b = effective_state(random_bloch(rng, 1.0));
    EXPECT_NEAR(infidelity(a, b), 1.0 - uhlmann(a.rho, b.rho), 1e-7);
    EXPECT_NEAR(infidelity(a, b), infidelity(b, a), 1e-15);
    EXPECT_NEAR(trace_distance(a, b), trace_norm_half(a.rho - b.rho), 1e-12);
  }
  auto one = effective_state({0.0, 0.0, 1.0}), zero = effective_state({0.0, 0.0, -1.0}), mix = effective_state({0, 0, 0});
  EXPECT_NEAR(infidelity(one, one), 0.0, 1e-15);
  EXPECT_NEAR(infidelity(one, zero), 1.0, 1e-15);
  EXPECT_NEAR(infidelity(one, mix), 0.5, 1e-15);
}

TEST(Observables, InfidelityContractsUnderMixing) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 50; ++i) {
    Bloch a = random_bloch(rng, 1.0), b = random_bloch(rng, 1.0), c = random_bloch(rng, 1.0);
    auto mixw = [](Bloch x, Bloch y) { return Bloch{0.5 * (x.x + y.x), 0.5 * (x.y + y.y), 0.5 * (x.z + y.z)}; };
    double before = infidelity(effective_state(a), effective_state(b));
    double after = infidelity(effective_state(mixw(a, c)), effective_state(mixw(b, c)));
    EXPECT_LE(after, before + 1e-12);
  }
}

TEST(Observables, SeriesAndReference) {
  std::vector<double> t{0.0, 1.0};
  InitialState s = InitialState::pure(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));
  std::vector<Mat2> coeffs{Mat2::Identity(), Mat2::Identity() * std::exp(I1 * 0.3)};
  std::vector<Mat2> zero(2, Mat2::Zero());
  auto a = bloch_series(t, correlation_series(coeffs, s));
  auto b = bloch_series(t, correlation_series(coeffs, s, &zero));
  for (int i = 0; i < 2; ++i) {
    EXPECT_EQ(a.points[i].j.x, b.points[i].j.x);
    EXPECT_NEAR(a.points[i].j.norm(), 1.0, 1e-12);
  }
  attach_reference(a, b);
  EXPECT_NEAR(a.max_infidelity(), 0.0, 1e-15);
  std::vector<Mat2> bad(3, Mat2::Zero());
  EXPECT_THROW(correlation_series(coeffs, s, &bad), Error);
}

TEST(Observables, InitialStateValidation) {
  Mat2 r;
  r << 0.5, 0.0, 0.0, 0.6;
  EXPECT_THROW(InitialState::mixed(r), Error);
  r << 1.2, 0.0, 0.0, -0.2;
  EXPECT_THROW(InitialState::mixed(r), Error);
  r << 0.5, 0.5, 0.5, 0.5;
  EXPECT_NO_THROW(InitialState::mixed(r));
}
