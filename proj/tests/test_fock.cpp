#include "ipq/fock.hpp"

#include <gtest/gtest.h>
#include <unsupported/Eigen/MatrixFunctions>

using namespace ipq;

namespace {

double maxabs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

struct TwoModes : ::testing::Test {
  FockSpec spec{2, 1};
  std::vector<Mat> ops = build_mode_ops(spec);
  Mat c0 = ops[0], c1 = ops[1];
  Su2 j = su2_generators(c0, c1);
  Vec vac = basis_state(spec, {0, 0});
  Vec k0 = basis_state(spec, {1, 0});
  Vec k1 = basis_state(spec, {0, 1});
};

}  // namespace

TEST(Fock, LadderMatrixElements) {
  FockSpec s{1, 4};
  Mat a = build_mode_ops(s)[0];
  for (int n = 1; n <= 4; ++n) EXPECT_NEAR(std::abs(a(n - 1, n) - std::sqrt(double(n))), 0.0, 1e-15);
  EXPECT_EQ(maxabs(a.bottomRows(1)), 0.0);
}

TEST(Fock, ModeZeroIsLeastSignificant) {
  FockSpec s{2, 2};
  EXPECT_EQ(s.index({1, 0}), 1u);
  EXPECT_EQ(s.index({0, 1}), 3u);
  EXPECT_EQ(s.occupation(5, 0), 2);
  EXPECT_EQ(s.occupation(5, 1), 1);
}

TEST(Fock, CapacityLimit) {
  EXPECT_THROW(build_mode_ops(FockSpec{13, 1}), Error);
  try {
    build_mode_ops(FockSpec{13, 1});
  } catch (const Error& e) {
    EXPECT_EQ(e.kind, Error::Kind::Capacity);
  }
}

TEST_F(TwoModes, PauliAlgebraOnOneParticleSector) {
  auto idx = sector_indices(spec, 1, {0, 1});
  ASSERT_EQ(idx.size(), 2u);
  Mat x = restrict_to(j.x, idx), y = restrict_to(j.y, idx), z = restrict_to(j.z, idx);
  EXPECT_LE(maxabs(commutator(x, y) - 2.0 * I1 * z), 1e-12);
  EXPECT_LE(maxabs(commutator(x, z) + 2.0 * I1 * y), 1e-12);
  EXPECT_LE(maxabs(commutator(y, z) - 2.0 * I1 * x), 1e-12);
  EXPECT_LE(maxabs(x * x - Mat::Identity(2, 2)), 1e-12);
}

TEST_F(TwoModes, JzSignConvention) {
  EXPECT_LE((j.z * k1 - k1).norm(), 1e-15);
  EXPECT_LE((j.z * k0 + k0).norm(), 1e-15);
}

TEST_F(TwoModes, LeoHamiltonianCommutesWithGenerators) {
  Mat hc = 7.3 * (number_op(c0) + number_op(c1));
  EXPECT_EQ(maxabs(commutator(hc, j.x)), 0.0);
  EXPECT_EQ(maxabs(commutator(hc, j.y)), 0.0);
  EXPECT_EQ(maxabs(commutator(hc, j.z)), 0.0);
}

TEST(Fock, CollectiveModesCommute) {
  // cutoff 2 so that [c, c'] = 1 holds on every state with at most one particle
  FockSpec s{2, 2};
  auto ops = build_mode_ops(s);
  auto a = collective_modes(ops[0], ops[1]);
  Mat cm = commutator(a.a0, a.a1.adjoint());
  for (auto i : sector_indices(s, 0, {0, 1})) EXPECT_LE(cm.col(i).cwiseAbs().maxCoeff(), 1e-15);
  for (auto i : sector_indices(s, 1, {0, 1})) EXPECT_LE(cm.col(i).cwiseAbs().maxCoeff(), 1e-15);
}

TEST_F(TwoModes, CollectiveModes) {
  auto a = collective_modes(c0, c1);
  EXPECT_LE(maxabs(a.a1.adjoint() * a.a1 - a.a0.adjoint() * a.a0 - j.x), 1e-15);
  Vec dfs = (k1 - k0) / std::sqrt(2.0);
  Mat n0 = a.a0.adjoint() * a.a0;
  EXPECT_LE((n0 * dfs - dfs).norm(), 1e-15);
  EXPECT_LE((a.a1.adjoint() * a.a1 * dfs).norm(), 1e-15);
}

TEST_F(TwoModes, Parity) {
  Mat p = parity_operator(c0, c1);
  EXPECT_LE((p * k0 - k0).norm(), 0.0);
  EXPECT_LE((p * vac + vac).norm(), 0.0);
  Vec both = basis_state(spec, {1, 1});
  EXPECT_LE((p * both + both).norm(), 0.0);
  EXPECT_EQ(maxabs(commutator(p, j.x)), 0.0);
  EXPECT_EQ(maxabs(commutator(p, j.y)), 0.0);
}

TEST(Fock, LeoReflection) {
  FockSpec spec{2, 3};
  auto ops = build_mode_ops(spec);
  Mat r = leo_reflection(ops[0], ops[1]);
  Mat n = number_op(ops[0]) + number_op(ops[1]);
  Mat viaexp = (-I1 * pi * n).exp();
  EXPECT_LE(maxabs(r - viaexp), 1e-12);
  EXPECT_LE(maxabs(r * r - Mat::Identity(r.rows(), r.cols())), 0.0);
  Mat x0 = ops[0] + ops[0].adjoint();
  EXPECT_LE(maxabs(r * x0 * r + x0), 0.0);
  Mat jx = su2_generators(ops[0], ops[1]).x;
  EXPECT_LE(maxabs(r * jx * r - jx), 0.0);
}

TEST(Fock, ReflectionOnToyBath) {
  const int M = 8;
  FockSpec spec{2 + M, 1};
  auto ops = build_mode_ops(spec);
  const Eigen::Index d = Eigen::Index(spec.dim());
  Mat hsb = Mat::Zero(d, d), hb = Mat::Zero(d, d);
  for (int k = 0; k < M; ++k) {
    const Mat& b = ops[std::size_t(2 + k)];
    double g = 0.1 * (k + 1);
    hsb += g * (ops[0] * b.adjoint() + ops[0].adjoint() * b + ops[1] * b + ops[1].adjoint() * b.adjoint());
    hb += (90.0 + k) * number_op(b);
  }
  Mat hs = su2_generators(ops[0], ops[1]).x;
  Mat r = leo_reflection(ops[0], ops[1]);
  EXPECT_LE(maxabs(r * hsb * r + hsb), 1e-12);
  EXPECT_LE(maxabs(r * hs * r - hs), 1e-12);
  EXPECT_LE(maxabs(r * hb * r - hb), 1e-12);
}

TEST(Fock, CPhaseGate) {
  FockSpec spec{4, 1};
  auto ops = build_mode_ops(spec);
  Mat na = number_op(ops[0]), nb = number_op(ops[2]);
  Mat u = cphase_unitary(na, nb, pi);
  auto ket = [&](int a, int b) { return basis_state(spec, {a == 0, a == 1, b == 0, b == 1}); };
  for (int a : {0, 1})
    for (int b : {0, 1}) {
      cplx ph = ket(a, b).dot(u * ket(a, b));
      EXPECT_NEAR(std::abs(ph - (a == 0 && b == 0 ? -1.0 : 1.0)), 0.0, 1e-12);
    }
  EXPECT_LE(maxabs(cphase_unitary(na, nb, 0.0) - Mat::Identity(16, 16)), 0.0);
  Mat hleo = 3.0 * (na + number_op(ops[1]) + nb + number_op(ops[3]));
  EXPECT_EQ(maxabs(commutator(na * nb, hleo)), 0.0);
  EXPECT_EQ(maxabs(commutator(u, hleo)), 0.0);
}

TEST(Fock, DimensionMismatchRejected) {
  auto a = build_mode_ops(FockSpec{2, 1});
  auto b = build_mode_ops(FockSpec{2, 2});
  EXPECT_THROW(su2_generators(a[0], b[1]), Error);
}
