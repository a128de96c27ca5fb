#pragma once

#include "ipq/config.hpp"
#include "ipq/qec.hpp"

#include <random>

namespace ipq {

inline Vec random_one_particle(const TwoModeSpace& s, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  cplx a(n(rng), n(rng)), b(n(rng), n(rng));
  Vec v = a * s.ket0() + b * s.ket1();
  return v / v.norm();
}

// Smallest |xi| over the eigenvectors of x that carry weight in x|psi>.
inline double min_support_eigenvalue(const Mat& x, const Vec& psi) {
  Eigen::SelfAdjointEigenSolver<Mat> es(x);
  Vec e = x * psi;
  Vec coef = es.eigenvectors().adjoint() * e;
  double m = inf;
  for (Eigen::Index k = 0; k < coef.size(); ++k)
    if (std::abs(coef(k)) > 1e-10 * e.norm()) m = std::min(m, std::abs(es.eigenvalues()(k)));
  return m;
}

struct QecSummary {
  double epsilon = 0.0;
  int trials = 0;
  double min_fidelity0 = 1.0;
  double min_fidelity1 = 1.0, mean_fidelity1 = 0.0;
  double max_unitarity_error = 0.0;
  double max_probability_error = 0.0;
  int non_unitary = 0;
  int syndrome_failures = 0;
  double kl_binomial = 0.0, kl_ipq = 0.0, kl_ipq_second = 0.0;
  bool kl_binomial_ok = false, kl_ipq_ok = true;
  double binomial_w0 = 0.0, binomial_w1 = 0.0;
};

inline QecSummary qec_trials(const QecSpec& q) {
  TwoModeSpace s = two_mode_space(q.cutoff);
  Mat x = s.x(), par = s.parity();
  std::mt19937_64 rng(q.seed);
  std::vector<Vec> states;
  for (int i = 0; i < q.trials; ++i) states.push_back(random_one_particle(s, rng));

  QecSummary r;
  r.trials = q.trials;
  r.epsilon = q.epsilon;
  if (r.epsilon <= 0.0) {
    double m = inf;
    for (const auto& v : states) m = std::min(m, min_support_eigenvalue(x, v));
    r.epsilon = (1.0 + 1e-12) / m;
  }
  for (const auto& psi : states) {
    Vec err = r.epsilon * (x * psi);
    if (parity_syndrome(psi, par) != 1 || parity_syndrome(err, par) != -1) ++r.syndrome_failures;
    WwmResult w = wwm_recover(err, r.epsilon, x, &psi);
    r.min_fidelity0 = std::min(r.min_fidelity0, w.out0.fidelity);
    r.min_fidelity1 = std::min(r.min_fidelity1, w.out1.fidelity);
    r.mean_fidelity1 += w.out1.fidelity / q.trials;
    if (w.non_unitary) ++r.non_unitary;
    const Mat id = Mat::Identity(w.u.rows(), w.u.cols());
    r.max_unitarity_error = std::max(r.max_unitarity_error, (w.u.adjoint() * w.u - id).cwiseAbs().maxCoeff());
    r.max_probability_error = std::max(r.max_probability_error, std::abs(w.out0.probability + w.out1.probability - 1.0));
  }

  int c = std::max(4, q.cutoff);
  KLResult kb = kl_matrix(binomial_code(c), single_loss_errors(c));
  KLResult ki = kl_matrix(ipq_code(s), dipole_errors(s));
  r.kl_binomial = kb.residual;
  r.kl_binomial_ok = kb.satisfied;
  r.kl_ipq = ki.residual;
  r.kl_ipq_ok = ki.satisfied;
  r.kl_ipq_second = kl_matrix(ipq_code(s), second_order_errors(s)).residual;

  CodeSpace b = binomial_code(c);
  Mat a = single_loss_errors(c).ops[1];
  r.binomial_w0 = std::norm(b.words[0].dot(binomial_recovery(a * b.words[0])));
  r.binomial_w1 = std::norm(b.words[1].dot(binomial_recovery(a * b.words[1])));
  return r;
}

inline json qec_json(const QecSpec& q, const QecSummary& r) {
  json j;
  j["cutoff"] = q.cutoff;
  j["seed"] = q.seed;
  j["trials"] = r.trials;
  j["epsilon"] = r.epsilon;
  j["wwm"] = {{"min_fidelity_outcome0", r.min_fidelity0},
              {"min_fidelity_outcome1", r.min_fidelity1},
              {"mean_fidelity_outcome1", r.mean_fidelity1},
              {"max_unitarity_error", r.max_unitarity_error},
              {"max_probability_sum_error", r.max_probability_error},
              {"non_unitary_trials", r.non_unitary},
              {"syndrome_failures", r.syndrome_failures}};
  j["kl"] = {{"binomial_single_loss", {{"satisfied", r.kl_binomial_ok}, {"residual", r.kl_binomial}}},
             {"ipq_dipole", {{"satisfied", r.kl_ipq_ok}, {"residual", r.kl_ipq}}},
             {"ipq_second_order", {{"residual", r.kl_ipq_second}}}};
  j["binomial_recovery_fidelity"] = {{"W0", r.binomial_w0}, {"W1", r.binomial_w1}};
  return j;
}

}  // namespace ipq
