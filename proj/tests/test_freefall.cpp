#include <doctest.h>

#include <cmath>
#include <vector>

#include "qgrav/core.hpp"
#include "qgrav/errors.hpp"
#include "qgrav/freefall.hpp"
#include "qgrav/kernel.hpp"

using namespace qgrav;
using freefall::GaussianProbe;

TEST_SUITE("freefall") {

TEST_CASE("qfim reference points") {
  const GaussianProbe p(1.0);
  const FisherMatrix2 a = freefall::qfim(p, 0.0, 1.0);
  CHECK(a.f_gg == doctest::Approx(2.5));
  CHECK(a.f_gt == 0.0);
  CHECK(a.f_tt == doctest::Approx(0.5));
  const FisherMatrix2 b = freefall::qfim(p, 1.0, 2.0);
  CHECK(b.f_gg == doctest::Approx(16.0));
  CHECK(b.f_gt == doctest::Approx(4.0));
  CHECK(b.f_tt == doctest::Approx(2.5));
}

TEST_CASE("t = 0 carries no gravity information") {
  const FisherMatrix2 f = freefall::qfim(GaussianProbe(1.0), 1.0, 0.0);
  CHECK(f.f_gg == 0.0);
  CHECK(f.f_gt == 0.0);
  CHECK(f.f_tt == doctest::Approx(2.5));
}

TEST_CASE("exact structure in g") {
  const GaussianProbe p(1.3, 0.7, 1.1);
  for (double t : {0.3, 1.0, 4.0}) {
    CHECK(freefall::qfim(p, 0.2, t).f_gg == freefall::qfim(p, -3.0, t).f_gg);
    CHECK(freefall::qfim(p, 2.4, t).f_gt == 2.0 * freefall::qfim(p, 1.2, t).f_gt);
  }
}

TEST_CASE("lorentz scale") {
  CHECK(freefall::lorentz_scale(GaussianProbe(1.0)) == doctest::Approx(0.5));
  CHECK(freefall::lorentz_scale(GaussianProbe(2.0)) == doctest::Approx(0.5 / 8.0));
  const GaussianProbe p(0.8, 1.9, 0.6);
  const kernel::AxisParams a = kernel::axis_from_quadratic(freefall::kernel_params(p, 1.4));
  CHECK(a.g_star() == doctest::Approx(freefall::lorentz_scale(p)).epsilon(1e-13));
}

TEST_CASE("effective information") {
  const GaussianProbe p(1.0);
  CHECK(freefall::effective_info(p, 0.0, 1.5) == doctest::Approx(freefall::qfim(p, 0.0, 1.5).f_gg));
  CHECK(freefall::effective_info(p, 1.0, 2.0) == doctest::Approx(9.6));
  CHECK(freefall::effective_info(p, 1e6, 2.0) == doctest::Approx(8.0).epsilon(1e-9));
  for (double g = -2.0; g <= 2.0; g += 0.25)
    for (double t = 0.25; t <= 5.0; t += 0.25) {
      const FisherMatrix2 f = freefall::qfim(p, g, t);
      CHECK(std::abs(freefall::effective_info(p, g, t) - schur_effective(f)) <= 1e-12 * f.f_gg);
    }
}

TEST_CASE("kernel params") {
  const kernel::KernelParams k = freefall::kernel_params(GaussianProbe(1.0), 1.0);
  CHECK(k.c0 == doctest::Approx(0.5));
  CHECK(k.c1 == 0.0);
  CHECK(k.c2 == doctest::Approx(2.0));
  CHECK(k.d0 == 0.0);
  CHECK(k.d1 == doctest::Approx(2.0));
  CHECK(k.f_gg == doctest::Approx(2.5));
}

TEST_CASE("plane-wave collapse") {
  double prev = INFINITY;
  double rho2 = 0.0;
  for (double s : {1.0, 10.0, 100.0, 1000.0}) {
    const GaussianProbe p(s);
    const double e = freefall::effective_info(p, 1.0, 1.0);
    CHECK(e < prev);
    prev = e;
    rho2 = correlation(freefall::qfim(p, 1.0, 1.0));
  }
  CHECK(rho2 > 0.999);
}

TEST_CASE("bad probes") {
  CHECK_THROWS_AS(GaussianProbe(0.0), Error);
  CHECK_THROWS_AS(GaussianProbe(1.0, -1.0), Error);
}

}  // TEST_SUITE
