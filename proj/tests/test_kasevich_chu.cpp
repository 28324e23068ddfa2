#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qgrav/core.hpp"
#include "qgrav/errors.hpp"
#include "qgrav/kasevich_chu.hpp"
#include "qgrav/kernel.hpp"
#include "qgrav/oracle/grid.hpp"
#include "qgrav/oracle/qfim.hpp"

using namespace qgrav;
using kc::KCConfig;

namespace {

KCConfig make(double k0, double T, double g, double sigma_v = 0.0, double contrast = 1.0) {
  KCConfig c;
  c.k0 = k0;
  c.T = T;
  c.g = g;
  c.sigma_v = sigma_v;
  c.contrast = contrast;
  return c;
}

}  // namespace

TEST_SUITE("kasevich_chu") {

TEST_CASE("phase and its derivatives") {
  CHECK(kc::delta_phi(make(1.0, 1.0, 0.0)) == 0.0);
  CHECK(kc::delta_phi(make(1.0, 2.0, 1.0)) == doctest::Approx(-4.0));
  const KCConfig c = make(1.3, 0.9, 0.7);
  const double h = 1e-5;
  KCConfig a = c, b = c;
  a.g += h;
  b.g -= h;
  CHECK((kc::delta_phi(a) - kc::delta_phi(b)) / (2 * h) == doctest::Approx(-c.k0 * c.T * c.T).epsilon(1e-8));
  a = c;
  b = c;
  a.T += h;
  b.T -= h;
  CHECK((kc::delta_phi(a) - kc::delta_phi(b)) / (2 * h) == doctest::Approx(-2 * c.k0 * c.g * c.T).epsilon(1e-8));
}

TEST_CASE("fringe") {
  KCConfig c = make(1.0, 1.0, 0.0);
  CHECK(kc::fringe_probability(c) == doctest::Approx(0.0));
  c.phi_ctrl = -std::numbers::pi;
  CHECK(kc::fringe_probability(c) == doctest::Approx(1.0));
}

TEST_CASE("internal fisher is rank one") {
  const FisherMatrix2 f = kc::internal_fisher(make(1.0, 1.0, 1.0));
  CHECK(f.f_gg == doctest::Approx(1.0));
  CHECK(f.f_gt == doctest::Approx(2.0));
  CHECK(f.f_tt == doctest::Approx(4.0));
  const FisherMatrix2 z = kc::internal_fisher(make(1.5, 2.0, 0.0, 0.0, 0.5));
  CHECK(z.f_gt == 0.0);
  CHECK(z.f_tt == 0.0);
  CHECK(z.f_gg == doctest::Approx(0.25 * 2.25 * 16.0));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.01, 3.0);
  for (int i = 0; i < 1000; ++i) {
    const FisherMatrix2 r = kc::internal_fisher(make(u(rng), u(rng), u(rng) - 1.5, 0.0, u(rng) / 3.0));
    CHECK(std::abs(r.det()) <= 1e-12 * r.f_gg * r.f_tt);
  }
}

TEST_CASE("internal regularized") {
  const KCConfig c = make(1.0, 1.0, 1.0);
  CHECK(kc::internal_effective_regularized(c, PriorInfo::from_timing_resolution(0.5)) == doctest::Approx(0.5));
  CHECK(kc::internal_effective_regularized(c, PriorInfo::from_timing_resolution(1e-9)) == doctest::Approx(1.0));
  CHECK(kc::internal_effective_regularized(make(1.0, 1.3, 0.0), PriorInfo::none()) == doctest::Approx(std::pow(1.3, 4)));
  // large T: ~ T^2 / (4 g^2 dT^2)
  const PriorInfo prior = PriorInfo::from_timing_resolution(0.1);
  const double a = kc::internal_effective_regularized(make(1.0, 100.0, 1.0), prior);
  const double b = kc::internal_effective_regularized(make(1.0, 200.0, 1.0), prior);
  CHECK(std::log(b / a) / std::log(2.0) == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("full-state matrix") {
  const FisherMatrix2 f = kc::fullstate_qfim(make(1.0, 1.0, 1.0, 1.0));
  CHECK(f.f_gg == doctest::Approx(1.0));
  CHECK(f.f_gt == doctest::Approx(2.0));
  CHECK(f.f_tt == doctest::Approx(8.0));
  CHECK(f.det() == doctest::Approx(4.0));
  CHECK(kc::fullstate_effective(make(1.0, 1.0, 1.0, 1.0)) == doctest::Approx(0.5));
  const FisherMatrix2 z = kc::fullstate_qfim(make(1.0, 1.0, 1.0, 0.0));
  CHECK(std::abs(z.det()) <= 1e-14);
  KCConfig n = make(2.0, 1.5, 0.3, 0.2);
  CHECK(kc::fullstate_effective(make(2.0, 1.5, 0.0, 0.2)) == doctest::Approx(4.0 * std::pow(1.5, 4)));
  const KCConfig half = make(2.0, 1.5, 0.2 / 1.5, 0.2);
  CHECK(kc::fullstate_effective(half) == doctest::Approx(0.5 * 4.0 * std::pow(1.5, 4)));
  n.n_atoms = 50;
  CHECK(retention(kc::fullstate_qfim(n)) == doctest::Approx(kc::fullstate_retention(0.3, 1.5, 0.2)));
  CHECK(kc::fullstate_effective(n) == doctest::Approx(50.0 * 4.0 * std::pow(1.5, 4) * 0.04 / (0.04 + 0.09 * 2.25)));
}

TEST_CASE("full-state retention") {
  CHECK(kc::fullstate_retention(9.81, 0.06, 1.38e-2) == doctest::Approx(5.5e-4).epsilon(0.02));
  CHECK(kc::fullstate_retention(9.81, 0.26, 1.38e-2) == doctest::Approx(2.9e-5).epsilon(0.05));
  CHECK(kc::fullstate_retention(1.0, 1.0, 1e6) == doctest::Approx(1.0));
  CHECK_THROWS_AS(kc::fullstate_retention(0.0, 1.0, 0.0), Error);
  const KCConfig c = make(1.0, 0.8, 0.6, 0.3);
  const kernel::KernelParams p = kc::fullstate_kernel_params(c);
  const kernel::AxisParams a = kernel::axis_from_quadratic(p);
  CHECK(a.g_c() == 0.0);
  CHECK(a.g_star() == doctest::Approx(0.3 / 0.8));
  const double u = kernel::u_coordinate(c.g, a);
  CHECK(kc::fullstate_retention(c.g, c.T, c.sigma_v) == doctest::Approx(1.0 / (1.0 + u * u)));
}

TEST_CASE("prior-regularized kernel scale") {
  const KCConfig c = make(2.0, 0.5, 0.4, 0.0, 0.8);
  const kernel::KernelParams p = kc::internal_regularized_kernel_params(c, PriorInfo::from_timing_resolution(0.3));
  CHECK(kernel::axis_from_quadratic(p).g_star() == doctest::Approx(1.0 / (2 * 0.8 * 2.0 * 0.5 * 0.3)));
}

TEST_CASE("motional timing channel from a grid state") {
  // generator -(k0/m)(p + k0 hbar/2): variance 4 k0^2 Var(p)/m^2 in the QFIM
  oracle::GridModel m;
  m.n_points = 512;
  m.box_length = 40.0;
  const double sigma = 1.3, k0 = 1.7;
  m.initial_state = oracle::gaussian_state(m, sigma);
  const oracle::SplitStep s(m);
  const Eigen::VectorXcd& psi = m.initial_state;
  const Eigen::VectorXcd gpsi = -k0 * (s.apply_momentum(psi) + 0.5 * k0 * psi);
  const double var = 4.0 * oracle::sym_covariance(psi, gpsi, gpsi);
  const double var_p = 0.5 / (sigma * sigma);
  const KCConfig c = make(k0, 1.0, 0.0, std::sqrt(var_p));
  CHECK(var == doctest::Approx(kc::fullstate_qfim(c).f_tt).epsilon(1e-10));
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(kc::fringe_probability(make(1.0, -1.0, 0.0)), Error);
  CHECK_THROWS_AS(kc::internal_fisher(make(1.0, 1.0, 0.0, 0.0, 1.5)), Error);
}

}  // TEST_SUITE
