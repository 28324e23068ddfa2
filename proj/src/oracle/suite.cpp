#include "qgrav/oracle/suite.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>

#include <json.hpp>

#include "qgrav/errors.hpp"
#include "qgrav/freefall.hpp"
#include "qgrav/kasevich_chu.hpp"
#include "qgrav/optomech.hpp"
#include "qgrav/oracle/identities.hpp"
#include "qgrav/oracle/kc_sim.hpp"
#include "qgrav/oracle/qfim.hpp"

namespace qgrav::oracle {

namespace {

using Bound = VerificationRecord::Bound;
using Records = std::vector<VerificationRecord>;

double entrywise_relative(const FisherMatrix2& a, const FisherMatrix2& ref) {
  const auto rel = [](double x, double r) { return r != 0.0 ? std::abs(x - r) / std::abs(r) : std::abs(x); };
  return std::max({rel(a.f_gg, ref.f_gg), rel(a.f_gt, ref.f_gt), rel(a.f_tt, ref.f_tt)});
}

// Runs a group of checks; a library error turns into one failed record.
void guarded(Records& out, const std::string& name, const std::function<void(Records&)>& body) {
  try {
    body(out);
  } catch (const Error& e) {
    out.push_back(make_record(name, {}, INFINITY, 0.0, Bound::Upper, e.what()));
  }
}

GridModel small_grid(double sigma, BackgroundPotential bg = {}, std::size_t n = 256, double box = 32.0) {
  GridModel m;
  m.n_points = n;
  m.box_length = box;
  m.background = bg;
  m.initial_state = gaussian_state(m, sigma);
  return m;
}

void freefall_checks(Records& out, const SuiteOptions& opts) {
  const freefall::GaussianProbe probe(1.0);
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> ug(0.2, 1.5), ut(0.5, 2.5);
  const GridModel model = make_freefall_model(probe, 1.5, 2.6);
  for (int i = 0; i < opts.random_points; ++i) {
    const double g = ug(rng), t = ut(rng);
    const FisherMatrix2 exact = freefall::qfim(probe, g, t);
    const FisherMatrix2 fd = qfim_fd(model, g, t, 1e-2, 1e-2);
    const FisherMatrix2 gen = generator_qfim(model, g, t, 32);
    out.push_back(make_record("freefall.qfim_fd", {{"g", g}, {"t", t}}, entrywise_relative(fd, exact), 1e-6));
    out.push_back(make_record("freefall.generator_qfim", {{"g", g}, {"t", t}}, entrywise_relative(gen, exact), 1e-5));
    out.push_back(make_record("oracle.fd_vs_generator", {{"g", g}, {"t", t}}, entrywise_relative(fd, gen), 1e-5));
  }
  {
    const FisherMatrix2 fd = qfim_fd(model, 1.0, 2.0, 1e-2, 1e-2);
    out.push_back(make_record("freefall.qfim_fd.reference", {{"g", 1.0}, {"t", 2.0}},
                              entrywise_relative(fd, FisherMatrix2{16.0, 4.0, 2.5}), 1e-6));
    const FisherMatrix2 at_zero = qfim_fd(model, 0.0, 2.0, 1e-2, 1e-2);
    out.push_back(make_record("freefall.qfim_fd.g0_cross", {{"t", 2.0}}, std::abs(at_zero.f_gt), 1e-8));
  }
}

void propagation_checks(Records& out) {
  const freefall::GaussianProbe probe(1.0);
  const GridModel model = make_freefall_model(probe, 1.0, 2.0);
  const Eigen::VectorXd z = model.positions();
  const Eigen::VectorXcd psi = propagate(model, 1.0, 2.0, true);
  out.push_back(make_record("propagate.norm", {{"g", 1.0}, {"t", 2.0}}, std::abs(psi.squaredNorm() - 1.0), 1e-10));
  const double mean_z = (psi.cwiseAbs2().array() * z.array()).sum();
  out.push_back(make_record("propagate.ehrenfest", {{"g", 1.0}, {"t", 2.0}}, std::abs(mean_z + 2.0), 1e-8));
  out.push_back(make_record("propagate.identity_at_t0", {},
                            (propagate(model, 1.0, 0.0) - model.initial_state).norm(), 1e-14));

  // Free spreading: psi(z, t) ~ exp(-z^2 / (2 sigma^2 (1 + i t / sigma^2))) for hbar = m = 1.
  const Eigen::VectorXcd spread = propagate(model, 0.0, 2.0);
  Eigen::VectorXcd exact(spread.size());
  const std::complex<double> w(1.0, 2.0);
  for (Eigen::Index j = 0; j < z.size(); ++j) exact[j] = std::exp(-0.5 * z[j] * z[j] / w);
  out.push_back(make_record("propagate.free_dispersion", {{"t", 2.0}}, 1.0 - fidelity(spread, exact), 1e-8));
}

void operator_checks(Records& out) {
  const GridModel free = small_grid(1.0);
  const GridOperatorModel free_ops(free);
  const ScalarityReport fr = commutator_scalarity(free_ops, 0.0, 1.0);
  out.push_back(make_record("scalarity.free", {{"u", 0.0}, {"v", 1.0}}, fr.residual, 1e-8));
  out.push_back(make_record("scalarity.free.value", {{"u", 0.0}, {"v", 1.0}},
                            std::abs(fr.scalar - std::complex<double>(0.0, 1.0)), 1e-8));
  out.push_back(make_record("scalarity.equal_times", {{"u", 0.7}, {"v", 0.7}},
                            commutator_scalarity(free_ops, 0.7, 0.7).residual, 0.0));

  const GridOperatorModel harmonic(small_grid(1.0, BackgroundPotential::harmonic(1.0)));
  out.push_back(make_record("scalarity.harmonic", {{"u", 0.3}, {"v", 1.4}},
                            commutator_scalarity(harmonic, 0.3, 1.4).residual, 1e-8));
  const GridOperatorModel quartic(small_grid(1.0, BackgroundPotential::quartic(0.5)));
  out.push_back(make_record("scalarity.quartic_negative_control", {{"u", 0.0}, {"v", 1.0}},
                            commutator_scalarity(quartic, 0.0, 1.0).residual, 1e-2, Bound::Lower));

  for (const double s : {0.5, 1.0, 1.5}) {
    const AffineShiftReport a = affine_shift_check(free_ops, 1.0, s);
    out.push_back(make_record("affine_shift.free.residual", {{"g", 1.0}, {"s", s}}, a.residual, 1e-8));
    out.push_back(make_record("affine_shift.free.f", {{"g", 1.0}, {"s", s}}, std::abs(a.f + 0.5 * s * s), 1e-8));
  }
  out.push_back(make_record("affine_shift.g0", {{"s", 1.0}}, affine_shift_check(free_ops, 0.0, 1.0).residual, 0.0));

  out.push_back(make_record("bch.g0", {{"g", 0.0}, {"t", 1.0}}, bch_factorization_check(free, 0.0, 1.0), 1e-12));
  out.push_back(make_record("bch.factorization", {{"g", 1.0}, {"t", 1.0}}, bch_factorization_check(free, 1.0, 1.0), 1e-8));
  out.push_back(make_record("bch.factorization", {{"g", 1.0}, {"t", 2.0}}, bch_factorization_check(free, 1.0, 2.0), 1e-8));
  out.push_back(make_record("bch.negative_control_1_11", {{"g", 1.0}, {"t", 2.0}},
                            bch_factorization_check(free, 1.0, 2.0, 1.0 / 11.0), 1e-6, Bound::Lower));
}

GridModel kc_grid() {
  GridModel m;
  m.n_points = 1024;
  m.box_length = 64.0;
  m.initial_state = gaussian_state(m, 1.5);
  return m;
}

void kc_checks(Records& out) {
  const GridModel model = kc_grid();
  kc::KCConfig cfg;
  cfg.k0 = 2.0;
  cfg.T = 1.0;
  cfg.g = 0.5;
  cfg.phi_ctrl = -cfg.k0 * cfg.g * cfg.T * cfg.T - std::numbers::pi;
  const KCSimResult bright = kc_pulse_sim(cfg, model);
  out.push_back(make_record("kc.bright_fringe", {{"k0", 2.0}, {"T", 1.0}, {"g", 0.5}}, std::abs(bright.p_b - 1.0), 1e-4));

  for (const double phi : {0.0, 0.4}) {
    cfg.phi_ctrl = phi;
    const FringeFit fit = kc_fringe_fit(cfg, model, 8);
    const double expected = wrap_phase(kc::delta_phi(cfg));
    out.push_back(make_record("kc.fringe_contrast", {{"phi_ctrl", phi}}, std::abs(fit.contrast - 1.0), 1e-3));
    out.push_back(make_record("kc.fringe_phase", {{"phi_ctrl", phi}}, std::abs(wrap_phase(fit.delta_phi - expected)), 1e-4));
    out.push_back(make_record("kc.fringe_fit_residual", {{"phi_ctrl", phi}}, fit.max_fit_residual, 1e-4));
  }
  cfg.phi_ctrl = -cfg.k0 * cfg.g * cfg.T * cfg.T - 0.5 * std::numbers::pi;  // mid-fringe
  const KCSimResult mid = kc_pulse_sim(cfg, model);
  out.push_back(make_record("kc.fisher_rank1", {{"g", 0.5}}, mid.fisher_rank1_residual, 1e-12));
  out.push_back(make_record("kc.gradient_direction", {{"g", 0.5}}, mid.direction_residual, 1e-6));
  out.push_back(make_record("kc.fringe_probability", {{"g", 0.5}},
                            std::abs(mid.p_b - kc::fringe_probability(cfg)), 1e-4));
}

optomech::OptoConfig opto_test_point() {
  optomech::OptoConfig c;
  c.kbar = 0.05;
  c.mu = 1.0;
  c.beta_r = 0.0;
  c.beta_i = 0.3;
  c.delta = 0.0;
  c.a_coef = 1.0;
  return c;
}

void opto_checks(Records& out) {
  const optomech::OptoConfig cfg = opto_test_point();
  for (int n = 1; n <= 3; ++n) {
    const optomech::MechTime t(2.0 * std::numbers::pi * n);
    optomech::OptoConfig strong = cfg;
    strong.beta_r = 0.1;
    const double scale = strong.a_coef * (16.0 * strong.kbar * strong.kbar * strong.mu * optomech::zeta(t) * std::abs(strong.beta_r) +
                                          2.0 * (strong.kbar * strong.mu + std::abs(strong.beta_r) + std::abs(strong.beta_i)) + 2.0);
    out.push_back(make_record("opto.revival_zero", {{"n", n}},
                              std::abs(optomech::cross_term(strong, 1.0, t)) / scale, 1e-12));
  }
  const double g = 0.2, t = 1.3;
  const FockModel model = optomech::fock_model(cfg, 1.0);
  const FisherMatrix2 fd = qfim_fd(model, g, t, 1e-2, 1e-2);
  const double closed = optomech::cross_term(cfg, g, optomech::MechTime(t));
  out.push_back(make_record("opto.cross_term_vs_fd", {{"g", g}, {"t", t}}, std::abs(fd.f_gt - closed) / std::abs(closed), 1e-4));
  const FisherMatrix2 gen = generator_qfim(model, g, t, 4096);
  out.push_back(make_record("opto.fd_vs_generator", {{"g", g}, {"t", t}}, entrywise_relative(fd, gen), 1e-5));

  const kernel::KernelParams p = harvest_kernel_params(model, t, 4096);
  const kernel::AxisParams harvested = kernel::axis_from_quadratic(p);
  const kernel::AxisParams printed = optomech::axis_params(cfg);
  out.push_back(make_record("opto.axis_g_c", {}, std::abs(harvested.g_c() - printed.g_c()) / std::abs(printed.g_c()), 1e-3));
  out.push_back(make_record("opto.axis_g_star", {}, std::abs(harvested.g_star() - printed.g_star()) / printed.g_star(), 1e-3));

  const FockOperatorModel ops(model);
  out.push_back(make_record("opto.scalarity", {{"u", 0.3}, {"v", 1.7}}, commutator_scalarity(ops, 0.3, 1.7).residual, 1e-8));
  out.push_back(make_record("opto.affine_shift", {{"g", 0.2}, {"s", 1.1}}, affine_shift_check(ops, 0.2, 1.1).residual, 1e-8));

  const Eigen::VectorXcd full = propagate_full_space(model, g, t);
  out.push_back(make_record("opto.photon_conservation", {{"g", g}, {"t", t}}, photon_statistics_drift(model, full), 1e-10));
  out.push_back(make_record("opto.full_vs_block_propagation", {{"g", g}, {"t", t}},
                            1.0 - fidelity(full, propagate(model, g, t)), 1e-10));
}

void convergence_checks(Records& out) {
  const freefall::GaussianProbe probe(1.0);
  const GridModel coarse = make_freefall_model(probe, 1.0, 2.1);
  GridModel fine = coarse;
  fine.n_points *= 2;
  fine.dt *= 0.5;
  fine.initial_state = gaussian_state(fine, 1.0);
  const FisherMatrix2 a = qfim_fd(coarse, 1.0, 2.0, 1e-2, 1e-2);
  const FisherMatrix2 b = qfim_fd(fine, 1.0, 2.0, 1e-2, 1e-2);
  out.push_back(make_record("oracle.grid_halving", {{"n_points", static_cast<double>(coarse.n_points)}},
                            entrywise_relative(a, b), 1e-6));
}

}  // namespace

VerificationRecord make_record(std::string check, std::vector<std::pair<std::string, double>> params, double residual,
                               double tolerance, VerificationRecord::Bound bound, std::string note) {
  VerificationRecord r;
  r.check = std::move(check);
  r.params = std::move(params);
  r.residual = residual;
  r.tolerance = tolerance;
  r.bound = bound;
  r.pass = std::isfinite(residual) && (bound == Bound::Upper ? residual <= tolerance : residual >= tolerance);
  r.note = std::move(note);
  return r;
}

std::string to_json_line(const VerificationRecord& r) {
  nlohmann::ordered_json j;
  j["check"] = r.check;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  j["params"] = params;
  j["residual"] = std::isfinite(r.residual) ? nlohmann::ordered_json(r.residual) : nlohmann::ordered_json(nullptr);
  j["tolerance"] = r.tolerance;
  j["bound"] = r.bound == Bound::Upper ? "max" : "min";
  j["pass"] = r.pass;
  if (!r.note.empty()) j["note"] = r.note;
  return j.dump();
}

void write_json_lines(std::ostream& out, const std::vector<VerificationRecord>& records) {
  for (const auto& r : records) out << to_json_line(r) << '\n';
}

std::vector<VerificationRecord> run_verification_suite(const SuiteOptions& opts) {
  Records out;
  guarded(out, "freefall", [&](Records& r) { freefall_checks(r, opts); });
  guarded(out, "propagate", propagation_checks);
  guarded(out, "operators", operator_checks);
  guarded(out, "kc", kc_checks);
  guarded(out, "opto", opto_checks);
  if (opts.include_convergence) guarded(out, "convergence", convergence_checks);
  return out;
}

}  // namespace qgrav::oracle
