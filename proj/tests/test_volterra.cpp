#include "ipq/volterra.hpp"

#include <gtest/gtest.h>

using namespace ipq;

namespace {

const double kA = 4.0, kL = 1.0;

// x' = -int_0^t a e^{-l (t-s)} x(s) ds, x(0) = 1
double exact(double t) {
  double w = std::sqrt(kA - 0.25 * kL * kL);
  return std::exp(-0.5 * kL * t) * (std::cos(w * t) + 0.5 * kL / w * std::sin(w * t));
}

LinearMemorySystem scalar(bool sampled = false) {
  LinearMemorySystem sys;
  sys.dim = 1;
  sys.drift = [](double) { return Mat::Zero(1, 1); };
  MemoryKernel k;
  if (sampled)
    k = sample_kernel([](double t) { return cplx(kA * std::exp(-kL * t)); }, 1e-4, 40001);
  else
    k.terms.push_back({kA, kL});
  sys.channels.push_back({k, -Mat::Identity(1, 1)});
  return sys;
}

std::vector<double> uniform(double T, long n) {
  std::vector<double> g;
  for (long i = 0; i <= n; ++i) g.push_back(T * double(i) / double(n));
  return g;
}

double max_error(const Trajectory& tr) {
  double e = 0.0;
  for (std::size_t i = 0; i < tr.times.size(); ++i) e = std::max(e, std::abs(tr.states[i](0) - exact(tr.times[i])));
  return e;
}

SolverOptions with(Method m, bool rich = false) {
  SolverOptions o;
  o.method = m;
  o.richardson = rich;
  return o;
}

}  // namespace

TEST(Volterra, GenericIsSecondOrder) {
  double e1 = max_error(integrate(scalar(), Vec::Ones(1), uniform(3.0, 150), with(Method::Generic)));
  double e2 = max_error(integrate(scalar(), Vec::Ones(1), uniform(3.0, 300), with(Method::Generic)));
  double e3 = max_error(integrate(scalar(), Vec::Ones(1), uniform(3.0, 600), with(Method::Generic)));
  EXPECT_NEAR(std::log2(e1 / e2), 2.0, 0.1);
  EXPECT_NEAR(std::log2(e2 / e3), 2.0, 0.1);
}

TEST(Volterra, ExponentialPathAccuracy) {
  double e = max_error(integrate(scalar(), Vec::Ones(1), uniform(3.0, 300), with(Method::Exponential)));
  EXPECT_LE(e, 1e-7);
}

TEST(Volterra, RichardsonExtrapolation) {
  double e = max_error(integrate(scalar(), Vec::Ones(1), uniform(3.0, 300), with(Method::Generic, true)));
  EXPECT_LE(e, 1e-6);
}

TEST(Volterra, SampledKernelUsesGenericPath) {
  LinearMemorySystem s = scalar(true);
  EXPECT_FALSE(s.exponential());
  EXPECT_THROW(integrate_exponential(s, Vec::Ones(1), uniform(3.0, 300)), Error);
  double e = max_error(integrate(s, Vec::Ones(1), uniform(3.0, 300), with(Method::Auto)));
  EXPECT_LE(e, 1e-4);
}

TEST(Volterra, DriftAndDrive) {
  // x' = -2 x + 3, x(0) = 1 -> x = 3/2 - e^{-2t}/2
  LinearMemorySystem s;
  s.dim = 1;
  s.drift = [](double) { return Mat::Constant(1, 1, -2.0); };
  s.drive = [](double) { return Vec::Constant(1, 3.0); };
  for (Method m : {Method::Exponential, Method::Generic}) {
    Trajectory tr = integrate(s, Vec::Ones(1), uniform(2.0, 200), with(m));
    for (std::size_t i = 0; i < tr.times.size(); ++i)
      EXPECT_NEAR(std::abs(tr.states[i](0) - (1.5 - 0.5 * std::exp(-2.0 * tr.times[i]))), 0.0, m == Method::Exponential ? 1e-9 : 5e-5);
  }
}

TEST(Volterra, PathsAgreeOnCoupledSystem) {
  // two variables, rotating drift and a complex two-term kernel on one of them
  LinearMemorySystem s;
  s.dim = 2;
  s.drift = [](double t) {
    Mat a(2, 2);
    double mu = std::fmod(t, 0.5) < 0.25 ? 20.0 : 0.0;
    a << -I1 * (1.0 + mu), -I1 * 0.7, -I1 * 0.7, I1 * (1.0 - mu);
    return a;
  };
  MemoryKernel k;
  k.terms.push_back({1.25, cplx(0.5, 3.0)});
  k.terms.push_back({-1.25, cplx(0.5, -3.0)});
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = -1.0;
  s.channels.push_back({k, m});
  Vec x0(2);
  x0 << 0.6, cplx(0.0, 0.8);
  auto g = uniform(2.0, 800);
  Trajectory a = integrate(s, x0, g, with(Method::Exponential));
  Trajectory b = integrate(s, x0, g, with(Method::Generic, true));
  double e = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) e = std::max(e, (a.states[i] - b.states[i]).cwiseAbs().maxCoeff());
  EXPECT_LE(e, 1e-6);
}

TEST(Volterra, BlowupDetected) {
  LinearMemorySystem s;
  s.dim = 1;
  s.drift = [](double) { return Mat::Constant(1, 1, 30.0); };
  try {
    integrate(s, Vec::Ones(1), uniform(2.0, 400), with(Method::Exponential));
    FAIL() << "expected blowup";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind, Error::Kind::Solver);
  }
}

TEST(Volterra, ValidatesInputs) {
  LinearMemorySystem s = scalar();
  EXPECT_THROW(integrate(s, Vec::Ones(2), uniform(1.0, 10)), Error);
  EXPECT_THROW(integrate(s, Vec::Ones(1), {0.0, 0.5, 0.4}), Error);
  s.channels[0].mask = Mat::Identity(2, 2);
  EXPECT_THROW(integrate(s, Vec::Ones(1), uniform(1.0, 10)), Error);
}
