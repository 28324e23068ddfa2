// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "qgrav/core.hpp"
#include "qgrav/errors.hpp"
#include "qgrav/experiments.hpp"
#include "qgrav/freefall.hpp"
#include "qgrav/kasevich_chu.hpp"
#include "qgrav/kernel.hpp"
#include "qgrav/optomech.hpp"
#include "qgrav/oracle/fock.hpp"
#include "qgrav/oracle/grid.hpp"
#include "qgrav/oracle/identities.hpp"
#include "qgrav/oracle/kc_sim.hpp"
#include "qgrav/oracle/qfim.hpp"

using namespace qgrav;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double rel(double x, double ref) { return ref != 0.0 ? std::abs(x - ref) / std::abs(ref) : std::abs(x); }

double entrywise(const FisherMatrix2& a, const FisherMatrix2& ref) {
  return std::max({rel(a.f_gg, ref.f_gg), rel(a.f_gt, ref.f_gt), rel(a.f_tt, ref.f_tt)});
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Outcome freefall_oracle() {
  const auto start = std::chrono::steady_clock::now();
  const freefall::GaussianProbe probe(1.0);
  std::mt19937_64 rng(20260601);
  std::uniform_real_distribution<double> ug(0.2, 1.5), ut(0.5, 2.5);
  const oracle::GridModel model = oracle::make_freefall_model(probe, 1.5, 2.6);
  double worst_fd = 0.0, worst_gen = 0.0;
  for (int i = 0; i < 5; ++i) {
    const double g = ug(rng), t = ut(rng);
    const FisherMatrix2 exact = freefall::qfim(probe, g, t);
    worst_fd = std::max(worst_fd, entrywise(oracle::qfim_fd(model, g, t, 1e-2, 1e-2), exact));
    worst_gen = std::max(worst_gen, entrywise(oracle::generator_qfim(model, g, t, 32), exact));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {worst_fd <= 1e-6 && worst_gen <= 1e-5 && secs < 60.0,
          fmt("5 random points: fd %.2e (tol 1e-6), generator %.2e (tol 1e-5), %.1f s", worst_fd, worst_gen, secs)};
}

Outcome schur_consistency() {
  double worst = 0.0;
  const freefall::GaussianProbe probe(1.0);
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j) {
      const double g = -2.0 + 4.0 * i / 19.0;
      const double t = 0.1 + 4.9 * j / 19.0;
      const double e = freefall::effective_info(probe, g, t);
      worst = std::max(worst, rel(e, schur_effective(freefall::qfim(probe, g, t))));
    }
  return {worst <= 1e-12, fmt("20x20 (g, t) grid: max relative gap %.2e (tol 1e-12)", worst)};
}

kc::KCConfig random_kc(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.05, 3.0);
  kc::KCConfig c;
  c.k0 = u(rng);
  c.T = u(rng);
  c.g = u(rng) - 1.5;
  c.contrast = u(rng) / 3.0;
  c.sigma_v = u(rng);
  c.n_atoms = 1 + static_cast<long>(10 * u(rng));
  return c;
}

Outcome kc_rank_one() {
  std::mt19937_64 rng(1);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const FisherMatrix2 f = kc::internal_fisher(random_kc(rng));
    if (f.f_gg * f.f_tt > 0.0) worst = std::max(worst, std::abs(f.det()) / (f.f_gg * f.f_tt));
  }
  return {worst <= 1e-12, fmt("1000 random configs: max |det|/(f_gg f_tt) %.2e (tol 1e-12)", worst)};
}

Outcome kc_closed_forms() {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.05, 2.0);
  double worst_int = 0.0, worst_full = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const kc::KCConfig c = random_kc(rng);
    const PriorInfo prior = PriorInfo::from_timing_resolution(u(rng));
    worst_int = std::max(worst_int, rel(kc::internal_effective_regularized(c, prior),
                                        regularized_effective(kc::internal_fisher(c), prior)));
    const double s2 = c.sigma_v * c.sigma_v;
    const double expected = static_cast<double>(c.n_atoms) * c.k0 * c.k0 * std::pow(c.T, 4) * s2 / (s2 + c.g * c.g * c.T * c.T);
    worst_full = std::max(worst_full, rel(kc::fullstate_effective(c), expected));
  }
  return {worst_int <= 1e-12 && worst_full <= 1e-12,
          fmt("internal regularized %.2e, full-state effective %.2e (tol 1e-12)", worst_int, worst_full)};
}

Outcome kc_pulse_oracle() {
  oracle::GridModel m;
  m.n_points = 1024;
  m.box_length = 64.0;
  m.initial_state = oracle::gaussian_state(m, 1.5);
  kc::KCConfig cfg;
  cfg.k0 = 2.0;
  cfg.T = 1.0;
  cfg.g = 0.5;
  double worst_c = 0.0, worst_phi = 0.0;
  for (const double phi : {0.0, 0.7, -1.9}) {
    cfg.phi_ctrl = phi;
    const oracle::FringeFit fit = oracle::kc_fringe_fit(cfg, m, 8);
    worst_c = std::max(worst_c, std::abs(fit.contrast - 1.0));
    worst_phi = std::max(worst_phi, std::abs(oracle::wrap_phase(fit.delta_phi - kc::delta_phi(cfg))));
  }
  return {worst_c <= 1e-3 && worst_phi <= 1e-4,
          fmt("8-point fringes at 3 offsets: |C-1| %.2e (tol 1e-3), phase %.2e rad (tol 1e-4)", worst_c, worst_phi)};
}

Outcome optomech_checks() {
  optomech::OptoConfig strong{0.1, 4.0, 0.1, 0.2, -0.3, 1.0};
  double worst_rev = 0.0;
  for (int n = 1; n <= 3; ++n) {
    const optomech::MechTime t(2.0 * kPi * n);
    // magnitude of the individual terms at this t
    const double scale = 16.0 * strong.kbar * strong.kbar * strong.mu * optomech::zeta(t) * std::abs(strong.beta_r) +
                         2.0 * (strong.kbar * strong.mu + 1.0 + std::abs(strong.beta_r) + std::abs(strong.beta_i));
    worst_rev = std::max(worst_rev, std::abs(optomech::cross_term(strong, 1.0, t)) / scale);
  }
  const optomech::OptoConfig cfg{0.05, 1.0, 0.0, 0.3, 0.0, 1.0};
  const double g = 0.2, t = 1.3;
  const oracle::FockModel model = optomech::fock_model(cfg, 1.0);
  const double fd = oracle::qfim_fd(model, g, t, 1e-2, 1e-2).f_gt;
  const double gt_err = rel(fd, optomech::cross_term(cfg, g, optomech::MechTime(t)));
  const oracle::FockOperatorModel ops(model);
  const double scal = oracle::commutator_scalarity(ops, 0.3, 1.7).residual;
  const double drift = oracle::photon_statistics_drift(model, oracle::propagate_full_space(model, g, t));
  const bool ok = worst_rev <= 1e-12 && gt_err <= 1e-4 && scal <= 1e-8 && drift <= 1e-10;
  return {ok, fmt("revivals %.1e (tol 1e-12), F_gt %.1e (tol 1e-4), scalarity %.1e (tol 1e-8)", worst_rev, gt_err, scal) +
                  fmt(", photon drift %.1e (tol 1e-10)", drift)};
}

oracle::GridModel small_grid(oracle::BackgroundPotential bg = {}) {
  oracle::GridModel m;
  m.n_points = 256;
  m.box_length = 32.0;
  m.background = bg;
  m.initial_state = oracle::gaussian_state(m, 1.0);
  return m;
}

Outcome identities() {
  const oracle::GridModel free = small_grid();
  double bch = 0.0;
  for (const double t : {1.0, 2.0}) bch = std::max(bch, std::abs(oracle::bch_factorization_check(free, 1.0, t)));
  const double control = oracle::bch_factorization_check(free, 1.0, 2.0, 1.0 / 11.0);
  const oracle::GridOperatorModel ops(free);
  double affine = 0.0;
  for (const double s : {0.5, 1.0, 1.5}) {
    const oracle::AffineShiftReport a = oracle::affine_shift_check(ops, 1.0, s);
    affine = std::max({affine, a.residual, std::abs(a.f + 0.5 * s * s)});
  }
  const oracle::GridOperatorModel quartic(small_grid(oracle::BackgroundPotential::quartic(0.5)));
  const double neg = oracle::commutator_scalarity(quartic, 0.0, 1.0).residual;
  const bool ok = bch <= 1e-8 && control > 1e-6 && affine <= 1e-8 && neg > 1e-2;
  return {ok, fmt("BCH %.1e (tol 1e-8; 1/11 control %.1e), affine shift %.1e (tol 1e-8)", bch, control, affine) +
                  fmt(", quartic control %.2f (> 1e-2)", neg)};
}

Outcome golden() {
  const experiments::GoldenNumbers n = experiments::golden_numbers();
  struct Item {
    double value, target, tol;
  };
  const std::vector<Item> items{
      {n.sigma_v_2uk, 1.38e-2, 0.01},          {n.retention_aqg, 5.5e-4, 0.02},
      {n.retention_gain, 2.9e-5, 0.05},        {n.required_aqg_half, 0.589, 0.01},
      {n.required_aqg_ninety, 1.77, 0.01},     {n.required_gain_half, 2.55, 0.01},
      {n.required_gain_ninety, 7.65, 0.01},    {n.bound_aqg_half, 621e-12, 0.015},
      {n.bound_aqg_ninety, 207e-12, 0.015},    {n.bound_gain_half, 143e-12, 0.015},
      {n.bound_gain_ninety, 47.7e-12, 0.015},  {n.ratio_aqg_half, 43.0, 0.02},
      {n.ratio_aqg_ninety, 128.0, 0.02},       {n.ratio_gain_half, 184.0, 0.02},
      {n.ratio_gain_ninety, 553.0, 0.02},
  };
  double worst = 0.0;  // as a fraction of each item's tolerance
  int failed = 0;
  for (const Item& it : items) {
    const double r = rel(it.value, it.target);
    worst = std::max(worst, r / it.tol);
    failed += r <= it.tol ? 0 : 1;
  }
  return {failed == 0, fmt("%.0f values, %.0f outside tolerance, worst at %.2f of its tolerance",
                           static_cast<double>(items.size()), failed, worst)};
}

Outcome asymptotics() {
  const freefall::GaussianProbe probe(1.0);
  // least-squares slope of log rho^2 against log t
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = 41;
  for (int i = 0; i < n; ++i) {
    const double t = std::pow(10.0, 2.0 + 2.0 * i / (n - 1));
    const double x = std::log(t), y = std::log(correlation(freefall::qfim(probe, 1.0, t)));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  bool monotone = true;
  double prev = INFINITY, rho2 = 0.0;
  for (const double s : {1.0, 10.0, 100.0, 1000.0}) {
    const freefall::GaussianProbe p(s);
    const double e = freefall::effective_info(p, 1.0, 1.0);
    monotone = monotone && e < prev;
    prev = e;
    rho2 = correlation(freefall::qfim(p, 1.0, 1.0));
  }
  return {std::abs(slope + 2.0) <= 0.05 && monotone && rho2 > 0.999,
          fmt("slope %.4f (target -2 +- 0.05), plane-wave rho^2 at sigma=1e3: %.6f, monotone %.0f", slope, rho2, monotone)};
}

double min_max_kernel(const kernel::KernelParams& p, double& hi) {
  const kernel::AxisParams a = kernel::axis_from_quadratic(p);
  const kernel::NormalizedCoeffs n = kernel::normalized_coeffs(p, a);
  double lo = INFINITY;
  for (int i = 0; i <= 400; ++i) {
    const double r = kernel::retention_kernel(n, -10.0 + 0.05 * i);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  return lo;
}

Outcome kernel_bound() {
  std::vector<kernel::KernelParams> families;
  const freefall::GaussianProbe probe(1.0);
  for (const double t : {0.5, 1.0, 2.0}) families.push_back(freefall::kernel_params(probe, t));
  const oracle::GridModel grid = oracle::make_freefall_model(probe, 1.0, 2.1);
  for (const double t : {0.7, 1.9}) families.push_back(oracle::harvest_kernel_params(grid, t, 32));
  kc::KCConfig c;
  c.k0 = 1.3;
  c.T = 0.8;
  c.g = 0.4;
  c.sigma_v = 0.2;
  c.contrast = 0.9;
  families.push_back(kc::fullstate_kernel_params(c));
  families.push_back(kc::internal_regularized_kernel_params(c, PriorInfo::from_timing_resolution(0.05)));
  const optomech::OptoConfig weak{0.05, 1.0, 0.0, 0.3, 0.0, 1.0};
  const optomech::OptoConfig demo{0.1, 4.0, 0.1, 0.0, -0.02, 1.0};
  for (const double t : {0.9, 3.0}) {
    families.push_back(optomech::harvested_kernel_params(weak, optomech::MechTime(t), 4096));
    families.push_back(optomech::harvested_kernel_params(demo, optomech::MechTime(t), 4096));
  }
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& p : families) lo = std::min(lo, min_max_kernel(p, hi));

  std::mt19937_64 rng(4);
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> ud(0.0, 5.0);
  int violations = 0;
  for (int i = 0; i < 1000; ++i) {
    const double a = nd(rng), b = nd(rng), cc = nd(rng), d = nd(rng);
    const FisherMatrix2 f{a * a + cc * cc, a * b + cc * d, b * b + d * d};
    const double i1 = ud(rng), i2 = i1 + ud(rng);
    if (regularized_effective(f, PriorInfo::from_information(i2)) < regularized_effective(f, PriorInfo::from_information(i1)))
      ++violations;
  }
  return {lo >= 0.0 && hi <= 1.0 && violations == 0,
          fmt("%.0f harvested families: R in [%.3f, %.3f] on u in [-10, 10]", static_cast<double>(families.size()), lo, hi) +
              fmt("; regularization monotone in 1000 cases (%.0f violations)", violations)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"free-fall closed form vs both oracle routes", freefall_oracle},
      {"Schur consistency", schur_consistency},
      {"KC internal readout rank one", kc_rank_one},
      {"KC closed forms", kc_closed_forms},
      {"KC pulse-level oracle", kc_pulse_oracle},
      {"optomechanical revivals, cross term, scalarity, conservation", optomech_checks},
      {"operator identities", identities},
      {"platform golden numbers", golden},
      {"free-fall asymptotics", asymptotics},
      {"kernel bound and regularization monotonicity", kernel_bound},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("%s  %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
