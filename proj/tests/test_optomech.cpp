#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "qgrav/core.hpp"
#include "qgrav/errors.hpp"
#include "qgrav/optomech.hpp"
#include "qgrav/oracle/qfim.hpp"

using namespace qgrav;
using optomech::MechTime;
using optomech::OptoConfig;

namespace {

constexpr double kPi = std::numbers::pi;

OptoConfig small_coupling() { return {0.05, 1.0, 0.0, 0.3, 0.0, 1.0}; }
OptoConfig demo() { return {0.1, 4.0, 0.1, 0.0, -0.02, 1.0}; }

}  // namespace

TEST_SUITE("optomech") {

TEST_CASE("revivals") {
  const OptoConfig c{0.2, 3.0, 0.4, -0.3, 0.1, 1.7};
  for (int n = 1; n <= 3; ++n)
    for (double g : {-1.0, 0.0, 2.5}) CHECK(std::abs(optomech::cross_term(c, g, MechTime(2 * kPi * n))) < 1e-12 * 100);
  const optomech::AffineCoeffs a = optomech::affine_coeffs(c, MechTime(4 * kPi));
  CHECK(std::abs(a.d0) < 1e-12);
  CHECK(std::abs(a.d1) < 1e-12);
}

TEST_CASE("affine in g") {
  const OptoConfig c{0.2, 3.0, 0.4, -0.3, 0.1, 1.7};
  const MechTime t(1.1);
  const optomech::AffineCoeffs a = optomech::affine_coeffs(c, t);
  CHECK(std::abs(optomech::cross_term(c, 2.0, t) - optomech::cross_term(c, 0.0, t) - 2.0 * a.d1) < 1e-14 * 10);
  const double second = optomech::cross_term(c, 1.0, t) - 2 * optomech::cross_term(c, 0.5, t) + optomech::cross_term(c, 0.0, t);
  CHECK(std::abs(second) < 1e-14);
  CHECK(optomech::affine_coeffs(c, MechTime(kPi / 2)).d1 == doctest::Approx(2 * 1.7 * 1.7));
}

TEST_CASE("only the gravity term survives without coupling") {
  const OptoConfig c{0.3, 0.0, 0.0, 0.0, 0.5, 1.2};
  const MechTime t(0.9);
  CHECK(optomech::cross_term(c, 0.7, t) == doctest::Approx(2 * 1.2 * 1.2 * 0.7 * std::sin(0.9)));
  CHECK(optomech::zeta(t) == doctest::Approx(0.9 - std::sin(0.9)));
}

TEST_CASE("axis parameters") {
  const OptoConfig c{0.2, 4.0, 0.0, 0.0, 0.0, 2.0};
  const kernel::AxisParams a = optomech::axis_params(c);
  CHECK(a.g_c() == doctest::Approx(0.4));
  CHECK(a.g_star() == doctest::Approx(0.2 * 2.0 / 2.0));
  // tuned detuning with beta_i = 0
  const OptoConfig tuned{0.1, 4.0, 0.1, 0.0, -0.02, 1.0};
  CHECK(optomech::axis_params(tuned).g_star() == doctest::Approx(0.1 * 2.0));
  CHECK(optomech::axis_params(tuned).g_c() == doctest::Approx(0.3));
  CHECK_THROWS_AS(optomech::axis_params({0.0, 0.0, 0.3, 0.0, 0.0, 1.0}), Error);
}

TEST_CASE("closed-form cross term against the Fock oracle") {
  const OptoConfig c = small_coupling();
  const oracle::FockModel m = optomech::fock_model(c, 1.0);
  const double g = 0.2, t = 1.3;
  const FisherMatrix2 fd = oracle::qfim_fd(m, g, t, 1e-2, 1e-2);
  const double closed = optomech::cross_term(c, g, MechTime(t));
  CHECK(std::abs(fd.f_gt - closed) <= 1e-4 * std::abs(closed));
}

TEST_CASE("harvested axis matches the dictionary at small coupling") {
  const OptoConfig c = small_coupling();
  const kernel::KernelParams p = optomech::harvested_kernel_params(c, MechTime(1.3), 4096);
  const kernel::AxisParams h = kernel::axis_from_quadratic(p);
  const kernel::AxisParams d = optomech::axis_params(c);
  CHECK(h.g_c() == doctest::Approx(d.g_c()).epsilon(1e-3));
  CHECK(h.g_star() == doctest::Approx(d.g_star()).epsilon(1e-3));
  const kernel::NormalizedCoeffs n = kernel::normalized_coeffs(p, h);
  for (double u = -10.0; u <= 10.0; u += 0.25) {
    const double r = kernel::retention_kernel(n, u);
    CHECK(r >= 0.0);
    CHECK(r <= 1.0);
  }
}

TEST_CASE("correlation field on the demo slice") {
  const std::vector<double> u{-1.0, -0.3, 0.0, 0.6, 1.0};
  const std::vector<double> t{0.7, 2 * kPi, 3.5, 4 * kPi, 9.0};
  optomech::FieldOptions fo;
  fo.n_quadrature = 1 << 12;
  const optomech::CorrelationField f = optomech::correlation_field(demo(), u, t, fo);
  REQUIRE(f.cells.size() == u.size() * t.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    CHECK(f.at(i, 1).rho2 < 1e-20);
    CHECK(f.at(i, 3).rho2 < 1e-20);
    for (std::size_t j = 0; j < t.size(); ++j) {
      const auto& c = f.at(i, j);
      CHECK(c.rho2 >= 0.0);
      CHECK(c.rho2 <= 1.0 + 1e-9);
      CHECK(c.degradation == doctest::Approx(1.0 / std::sqrt(1.0 - c.rho2) - 1.0));
    }
  }
}

TEST_CASE("field cell agrees with two independent stencils") {
  const OptoConfig c = small_coupling();
  const std::vector<double> u{0.5}, t{1.3};
  const optomech::CorrelationField f = optomech::correlation_field(c, u, t);
  const oracle::FockModel m = optomech::fock_model(c, 1.0);
  oracle::FdOptions o2;
  o2.stencil = oracle::Stencil::Central2;
  o2.rel_tol = 1e-5;
  const double g = f.at(0, 0).g;
  const FisherMatrix2 a = oracle::qfim_fd(m, g, 1.3, 1e-2, 1e-2);
  const FisherMatrix2 b = oracle::qfim_fd(m, g, 1.3, 2e-3, 2e-3, o2);
  CHECK(correlation(a) == doctest::Approx(correlation(b)).epsilon(1e-5));
  CHECK(f.at(0, 0).rho2_oracle == doctest::Approx(correlation(a)).epsilon(1e-5));
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(OptoConfig({0.1, -1.0, 0.0, 0.0, 0.0, 1.0}).validate(), Error);
  OptoConfig c = demo();
  c.fock_dim = 4;
  c.photon_max = 2;
  try {
    optomech::fock_model(c, 1.0);
    FAIL("expected TruncationTooSmall");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TruncationTooSmall);
  }
}

}  // TEST_SUITE
