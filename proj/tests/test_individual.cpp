#include "ipq/individual.hpp"
#include "ipq/oracle.hpp"

#include <gtest/gtest.h>

using namespace ipq;

namespace {

const double r2 = 1.0 / std::sqrt(2.0);

IndividualScenario base(bool rwa) {
  IndividualScenario sc;
  sc.rwa = rwa;
  if (rwa) sc.omega0 = {100.0, 100.0};
  return sc;
}

double coeff_error(const std::vector<Mat2>& a, const std::vector<Mat2>& b, const std::vector<std::size_t>& rows) {
  double e = 0.0;
  for (std::size_t k = 0; k < rows.size(); ++k) e = std::max(e, (a[rows[k]] - b[k]).cwiseAbs().maxCoeff());
  return e;
}

}  // namespace

TEST(Individual, GateRotationWithoutBath) {
  for (bool rwa : {true, false}) {
    IndividualScenario sc = base(rwa);
    sc.spectra[0].Gamma = sc.spectra[1].Gamma = 0.0;
    sc.gate = {Gate::X, 1.0};
    sc.init = InitialState::pure(1.0, 0.0);
    sc.duration = 2.0;
    auto r = run_individual(sc);
    for (const auto& p : r.bloch.points) {
      EXPECT_NEAR(p.j.y, std::sin(2.0 * p.t), 1e-8) << "rwa=" << rwa;
      EXPECT_NEAR(p.j.z, -std::cos(2.0 * p.t), 1e-8) << "rwa=" << rwa;
    }
    for (const auto& cb : r.coeffs.cbar) EXPECT_EQ(cb.cwiseAbs().maxCoeff(), 0.0);
  }
}

TEST(Individual, NonRwaStorageMatchesOracle) {
  IndividualScenario sc = base(false);
  sc.duration = 0.8;
  RunOptions opt;
  auto grid = individual_grid(sc, opt);
  auto et = simulate_individual(sc, grid, opt);
  std::vector<double> ts;
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < grid.size(); i += 20) {
    ts.push_back(grid[i]);
    rows.push_back(i);
  }
  auto oc = oracle_coefficients(individual_model(sc, 150, 20.0), ts);
  EXPECT_LE(oc.symplectic_error, 1e-8);
  EXPECT_LE(coeff_error(et.c, oc.c, rows), 1e-3);
  EXPECT_LE(coeff_error(et.cbar, oc.cbar, rows), 1e-3);
}

TEST(Individual, FlippedNonRwaKernelDisagreesWithOracle) {
  IndividualScenario sc = base(false);
  sc.duration = 0.8;
  RunOptions opt;
  auto grid = individual_grid(sc, opt);
  LinearMemorySystem sys = build_individual_system(sc);
  for (auto& c : sys.channels) c.kernel = c.kernel.scaled(-1.0);
  Vec x0 = Vec::Zero(sys.dim);
  x0(0) = x0(3) = 1.0;
  Trajectory tr = integrate(sys, x0, grid, opt.solver());
  auto oc = oracle_coefficients(individual_model(sc, 100, 20.0), {grid.back()});
  EXPECT_GT((coeff_matrix(tr.states.back().head(4)) - oc.c[0]).cwiseAbs().maxCoeff(), 1e-2);
}

TEST(Individual, RwaThermalMatchesOracle) {
  IndividualScenario sc = base(true);
  sc.gate = {Gate::X, 1.0};
  sc.spectra = {Lorentzian{1.0, 2.5, 100.0}, Lorentzian{2.0, 1.5, 100.0}};
  sc.beta = {0.02, 0.05};
  sc.duration = 1.0;
  sc.init = InitialState::pure(0.6, 0.8);
  auto r = run_individual(sc);
  std::vector<double> ts;
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < r.coeffs.times.size(); i += 40) {
    ts.push_back(r.coeffs.times[i]);
    rows.push_back(i);
  }
  auto corr = thermal_expectation(individual_model(sc, 150, 20.0), ts, sc.beta, sc.init);
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const auto& p = r.bloch.points[rows[k]];
    Bloch b = bloch_from_corr(corr[k]);
    EXPECT_NEAR(p.n0, corr[k](0, 0).real(), 1e-3);
    EXPECT_NEAR(p.n1, corr[k](1, 1).real(), 1e-3);
    EXPECT_NEAR(p.j.x, b.x, 1e-3);
    EXPECT_NEAR(p.j.y, b.y, 1e-3);
  }
}

TEST(Individual, NonRwaThermalMatchesOracle) {
  IndividualScenario sc = base(false);
  sc.gate = {Gate::Z, 1.0};
  sc.omega0 = {100.0, 100.0};
  sc.beta = {0.01, 0.02};
  sc.duration = 0.5;
  sc.init = InitialState::pure(r2, r2);
  auto r = run_individual(sc);
  std::vector<double> ts;
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < r.coeffs.times.size(); i += 100) {
    ts.push_back(r.coeffs.times[i]);
    rows.push_back(i);
  }
  auto corr = thermal_expectation(individual_model(sc, 100, 20.0), ts, sc.beta, sc.init);
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const auto& p = r.bloch.points[rows[k]];
    EXPECT_NEAR(p.n0, corr[k](0, 0).real(), 2e-3 * std::max(1.0, p.n0));
    EXPECT_NEAR(p.n1, corr[k](1, 1).real(), 2e-3 * std::max(1.0, p.n1));
  }
}

TEST(Individual, EqualTemperatureStorageIsTemperatureIndependent) {
  IndividualScenario sc = base(false);
  sc.omega0 = {100.0, 100.0};
  sc.duration = 1.0;
  sc.beta = {0.01, 0.01};
  auto a = run_individual(sc);
  sc.beta = {0.05, 0.05};
  auto b = run_individual(sc);
  ASSERT_EQ(a.bloch.size(), b.bloch.size());
  for (std::size_t i = 0; i < a.bloch.size(); ++i) {
    EXPECT_NEAR(a.bloch.points[i].j.x, b.bloch.points[i].j.x, 1e-8);
    EXPECT_NEAR(a.bloch.points[i].j.y, b.bloch.points[i].j.y, 1e-8);
    EXPECT_NEAR(a.bloch.points[i].j.z, b.bloch.points[i].j.z, 1e-8);
  }
  EXPECT_GT(std::abs(a.bloch.back().n0 - b.bloch.back().n0), 1e-2);
}

TEST(Individual, RwaZeroTemperatureDecays) {
  IndividualScenario sc = base(true);
  sc.spectra = {Lorentzian{1.0, 2.5, 100.0}, Lorentzian{1.0, 2.5, 100.0}};
  sc.init = InitialState::pure(1.0, 0.0);
  sc.duration = 16.0;
  auto r = run_individual(sc);
  EXPECT_LE(r.bloch.back().n0 + r.bloch.back().n1, 1e-3);
}

TEST(Individual, Validation) {
  IndividualScenario sc = base(false);
  sc.beta = {-1.0, 1.0};
  EXPECT_THROW(run_individual(sc), Error);
}
