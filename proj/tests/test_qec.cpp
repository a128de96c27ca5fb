#include "ipq/qec.hpp"
#include "ipq/qec_report.hpp"

#include <gtest/gtest.h>
#include <random>

using namespace ipq;

TEST(Qec, KnillLaflammeBinomial) {
  KLResult r = kl_matrix(binomial_code(4), single_loss_errors(4));
  EXPECT_TRUE(r.satisfied);
  EXPECT_LE(r.residual, 1e-12);
  // <W0|a'a|W0> = <W1|a'a|W1> = 2
  EXPECT_NEAR(std::abs(r.c(1, 1) - 2.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(r.c(0, 0) - 1.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(r.c(0, 1)), 0.0, 1e-12);
}

TEST(Qec, KnillLaflammeIpqDipole) {
  TwoModeSpace s = two_mode_space(4);
  KLResult r = kl_matrix(ipq_code(s), dipole_errors(s));
  EXPECT_FALSE(r.satisfied);
  EXPECT_NEAR(r.residual, 2.0, 1e-12);
  KLResult id = kl_matrix(ipq_code(s), ErrorSet{{Mat::Identity(s.dim(), s.dim())}, {"I"}});
  EXPECT_TRUE(id.satisfied);
  EXPECT_NEAR(std::abs(id.c(0, 0) - 1.0), 0.0, 1e-15);
}

TEST(Qec, TwoModeSpaceTruncation) {
  TwoModeSpace s = two_mode_space(4);
  EXPECT_EQ(s.dim(), 15);  // n0 + n1 <= 4
  Mat x = s.x();
  EXPECT_LE((x - x.adjoint()).cwiseAbs().maxCoeff(), 0.0);
  // x|10> = |00> + |20>/... independent check of the amplitudes
  Vec e = x * s.ket0();
  EXPECT_NEAR(std::abs(s.vacuum().dot(e)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(s.state(2, 0).dot(e)), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(std::abs(s.state(1, 1).dot(e)), 1.0, 1e-15);
  EXPECT_NEAR(e.squaredNorm(), 4.0, 1e-14);
}

TEST(Qec, ParitySyndromes) {
  TwoModeSpace s = two_mode_space(4);
  Mat p = s.parity();
  EXPECT_EQ(parity_syndrome(s.ket0(), p), 1);
  EXPECT_EQ(parity_syndrome(s.ket1(), p), 1);
  EXPECT_EQ(parity_syndrome(s.vacuum(), p), -1);
  EXPECT_EQ(parity_syndrome(s.state(1, 1), p), -1);
  EXPECT_EQ(parity_syndrome(s.x() * s.ket0(), p), -1);
  Vec mixed = s.ket0() + s.vacuum();
  try {
    parity_syndrome(mixed, p);
    FAIL() << "mixed parity accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind, Error::Kind::Syndrome);
  }
  auto m = parity_measure(mixed, p, 1);
  EXPECT_NEAR(m.probability, 0.5, 1e-15);
  EXPECT_NEAR(std::abs(m.post.dot(s.ket0())), 1.0, 1e-15);
  auto m2 = parity_measure(mixed, p, -1);
  EXPECT_NEAR(m2.probability, 0.5, 1e-15);
  EXPECT_THROW(parity_measure(mixed, p, 0), Error);
}

TEST(Qec, WwmRecoversRandomStates) {
  QecSpec q;
  q.trials = 100;
  QecSummary r = qec_trials(q);
  EXPECT_EQ(r.syndrome_failures, 0);
  EXPECT_EQ(r.non_unitary, 0);
  EXPECT_GE(r.min_fidelity0, 1.0 - 1e-12);
  EXPECT_LE(r.max_unitarity_error, 1e-12);
  EXPECT_LE(r.max_probability_error, 1e-12);
  // the odd-in-x branch has opposite photon parity overlap, so it is orthogonal
  EXPECT_LE(r.min_fidelity1, 1e-20);
}

TEST(Qec, WwmSingleEigenvector) {
  // x = diag(2, -1): state along one eigenvector; A = 1/(eps*2).
  Mat x = Mat::Zero(2, 2);
  x(0, 0) = 2.0;
  x(1, 1) = -1.0;
  Vec psi = Vec::Zero(2);
  psi(0) = 1.0;
  double eps = 1.0;
  auto w = wwm_recover(eps * (x * psi), eps, x, &psi);
  EXPECT_NEAR(w.out0.probability, 0.25, 1e-15);
  EXPECT_NEAR(w.out1.probability, 0.75, 1e-15);
  EXPECT_NEAR(w.out0.fidelity, 1.0, 1e-15);
  EXPECT_FALSE(w.non_unitary);
  EXPECT_NEAR(w.min_support_eigenvalue, 2.0, 1e-15);
}

TEST(Qec, WwmFlagsNonUnitaryAndSingular) {
  Mat x = Mat::Zero(2, 2);
  x(0, 0) = 0.5;
  x(1, 1) = 0.0;
  Vec psi = Vec::Zero(2);
  psi(0) = 1.0;
  auto w = wwm_recover(x * psi, 1.0, x, &psi);
  EXPECT_TRUE(w.non_unitary);
  Vec bad = Vec::Zero(2);
  bad(0) = bad(1) = 1.0;
  try {
    wwm_recover(bad, 1.0, x);
    FAIL() << "singular support accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind, Error::Kind::Singular);
  }
  EXPECT_THROW(wwm_recover(psi, -1.0, x), Error);
}

TEST(Qec, BinomialRecovery) {
  CodeSpace code = binomial_code(4);
  Mat a = single_loss_errors(4).ops[1];
  Mat u = binomial_recovery_unitary(4);
  EXPECT_LE((u.adjoint() * u - Mat::Identity(5, 5)).cwiseAbs().maxCoeff(), 1e-15);
  for (int k = 0; k < 2; ++k) {
    Vec lost = a * code.words[k];
    Vec rec = binomial_recovery(lost);
    EXPECT_NEAR(std::norm(code.words[k].dot(rec)), 1.0, 1e-14);
  }
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    cplx c0(n(rng), n(rng)), c1(n(rng), n(rng));
    Vec psi = c0 * code.words[0] + c1 * code.words[1];
    psi /= psi.norm();
    Vec rec = binomial_recovery(a * psi);
    EXPECT_NEAR(std::norm(psi.dot(rec)), 1.0, 1e-13);
  }
  EXPECT_THROW(binomial_recovery(code.words[0]), Error);
}
