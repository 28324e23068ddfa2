// qgrav: parameter sweeps, figure data, dictionary tables and the oracle
// verification runner. Exit codes: 0 ok, 1 bad input, 2 numerical failure.

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qgrav/core.hpp"
#include "qgrav/csv.hpp"
#include "qgrav/errors.hpp"
#include "qgrav/experiments.hpp"
#include "qgrav/freefall.hpp"
#include "qgrav/kasevich_chu.hpp"
#include "qgrav/kernel.hpp"
#include "qgrav/optomech.hpp"
#include "qgrav/oracle/grid.hpp"
#include "qgrav/oracle/qfim.hpp"
#include "qgrav/oracle/suite.hpp"

namespace {

using namespace qgrav;
using csv::Table;

constexpr const char* kVersion = "0.1.0";

struct Globals {
  std::string out;
  std::string format = "csv";
  int grid_points = 0;
  double tol = 1e-6;
};

std::vector<double> linspace(double a, double b, int n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "points must be >= 1 (got " + std::to_string(n) + ")");
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = n == 1 ? a : a + (b - a) * i / (n - 1);
  return v;
}

nlohmann::ordered_json field_json(const csv::Field& f) {
  if (const double* d = std::get_if<double>(&f)) {
    if (std::isfinite(*d)) return *d;
    return csv::format_number(*d);
  }
  if (const long* l = std::get_if<long>(&f)) return *l;
  return std::get<std::string>(f);
}

void write_records(std::ostream& out, const Table& t) {
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [k, v] : t.metadata()) meta[k] = v;
  out << nlohmann::ordered_json{{"meta", meta}}.dump() << '\n';
  for (const auto& row : t.rows()) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) j[t.columns()[i]] = field_json(row[i]);
    out << j.dump() << '\n';
  }
}

template <class Writer>
void with_output(const Globals& g, Writer&& w) {
  if (g.out.empty() || g.out == "-") {
    w(std::cout);
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot open --out file '" + g.out + "'");
  w(f);
}

void emit(const Globals& g, Table& t) {
  t.meta("qgrav_version", kVersion);
  with_output(g, [&](std::ostream& os) {
    if (g.format == "records")
      write_records(os, t);
    else
      t.write(os);
  });
}

void meta_list(Table& t, const std::string& key, const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + csv::format_number(v[i]);
  t.meta(key, s);
}

// ---- freefall ----

struct FreefallArgs {
  double sigma = 1.0;
  double mass = 1.0;
  double hbar = 1.0;
  double g = 1.0;
  std::vector<double> t{2.0};
  double prior_dt = 0.0;
  bool oracle = false;
};

void run_freefall(const Globals& gl, const FreefallArgs& a) {
  const freefall::GaussianProbe probe(a.sigma, a.mass, a.hbar);
  std::optional<PriorInfo> prior;
  if (a.prior_dt > 0.0) prior = PriorInfo::from_timing_resolution(a.prior_dt);
  std::vector<std::string> cols{"t", "g", "f_gg", "f_gt", "f_tt", "f_eff", "rho2", "retention", "u", "alpha1"};
  if (prior) cols.push_back("f_eff_regularized");
  if (a.oracle) {
    for (const char* c : {"fd_f_gg", "fd_f_gt", "fd_f_tt", "gen_f_gg", "gen_f_gt", "gen_f_tt"}) cols.push_back(c);
  }
  Table t(cols);
  t.meta("command", "freefall");
  t.meta("units", "natural (hbar, mass, sigma as given)");
  t.meta("sigma", a.sigma);
  t.meta("mass", a.mass);
  t.meta("hbar", a.hbar);
  t.meta("g", a.g);
  t.meta("g_star", freefall::lorentz_scale(probe));
  if (prior) t.meta("prior_dt", a.prior_dt);

  std::optional<oracle::GridModel> grid;
  if (a.oracle) {
    double t_max = 0.0;
    for (double ti : a.t) t_max = std::max(t_max, ti);
    grid = oracle::make_freefall_model(probe, std::abs(a.g), t_max + 0.1, static_cast<std::size_t>(gl.grid_points));
    t.meta("grid_points", static_cast<double>(grid->n_points));
    t.meta("box_length", grid->box_length);
    t.meta("oracle_tol", gl.tol);
  }
  const kernel::AxisParams axis = kernel::AxisParams::make(0.0, freefall::lorentz_scale(probe));
  for (double ti : a.t) {
    const FisherMatrix2 f = freefall::qfim(probe, a.g, ti);
    const kernel::NormalizedCoeffs nc = kernel::normalized_coeffs(freefall::kernel_params(probe, ti), axis);
    std::vector<csv::Field> row{ti, a.g, f.f_gg, f.f_gt, f.f_tt, freefall::effective_info(probe, a.g, ti),
                                correlation(f), retention(f), kernel::u_coordinate(a.g, axis), nc.alpha1};
    if (prior) row.emplace_back(regularized_effective(f, *prior));
    if (grid) {
      oracle::FdOptions opts;
      opts.rel_tol = gl.tol;
      const double h = 1e-2 * std::max(1.0, ti);
      const FisherMatrix2 fd = oracle::qfim_fd(*grid, a.g, ti, h, h, opts);
      const FisherMatrix2 gen = oracle::generator_qfim(*grid, a.g, ti, 64);
      for (double v : {fd.f_gg, fd.f_gt, fd.f_tt, gen.f_gg, gen.f_gt, gen.f_tt}) row.emplace_back(v);
    }
    t.add_row(std::move(row));
  }
  emit(gl, t);
}

// ---- kc ----

struct KcArgs {
  double k0 = 1.0;
  std::vector<double> T{1.0};
  double g = 1.0;
  double sigma_v = 0.1;
  double contrast = 1.0;
  double prior_dt = 0.0;
  long n_atoms = 1;
  double phi_ctrl = 0.0;
};

void run_kc(const Globals& gl, const KcArgs& a) {
  std::optional<PriorInfo> prior;
  if (a.prior_dt > 0.0) prior = PriorInfo::from_timing_resolution(a.prior_dt);
  std::vector<std::string> cols{"T", "delta_phi", "fringe_p", "int_f_gg", "int_f_gt", "int_f_tt",
                                "full_f_gg", "full_f_gt", "full_f_tt", "full_f_eff", "full_retention", "full_g_star"};
  if (prior) {
    cols.push_back("int_f_eff_regularized");
    cols.push_back("int_g_star_regularized");
  }
  Table t(cols);
  t.meta("command", "kc");
  t.meta("units", "natural (caller's consistent units)");
  t.meta("k0", a.k0);
  t.meta("g", a.g);
  t.meta("sigma_v", a.sigma_v);
  t.meta("contrast", a.contrast);
  t.meta("n_atoms", static_cast<double>(a.n_atoms));
  t.meta("phi_ctrl", a.phi_ctrl);
  if (prior) t.meta("prior_dt", a.prior_dt);
  for (double T : a.T) {
    kc::KCConfig cfg{a.k0, T, a.contrast, a.g, a.sigma_v, a.n_atoms, a.phi_ctrl};
    cfg.validate();
    const FisherMatrix2 fi = kc::internal_fisher(cfg);
    const FisherMatrix2 fs = kc::fullstate_qfim(cfg);
    std::vector<csv::Field> row{T, kc::delta_phi(cfg), kc::fringe_probability(cfg), fi.f_gg, fi.f_gt, fi.f_tt,
                                fs.f_gg, fs.f_gt, fs.f_tt, kc::fullstate_effective(cfg),
                                kc::fullstate_retention(a.g, T, a.sigma_v), a.sigma_v / T};
    if (prior) {
      row.emplace_back(kc::internal_effective_regularized(cfg, *prior));
      row.emplace_back(1.0 / (2.0 * a.contrast * a.k0 * T * a.prior_dt));
    }
    t.add_row(std::move(row));
  }
  emit(gl, t);
}

// ---- opto ----

struct OptoArgs {
  optomech::OptoConfig cfg{0.1, 4.0, 0.1, 0.0, -0.02, 1.0};
  std::vector<double> u{0.0};
  std::vector<double> t{1.0};
  int photon_max = -1;
  int n_quadrature = 1 << 16;
};

void opto_meta(Table& t, const optomech::OptoConfig& c) {
  t.meta("units", "mechanical frequency (t = omega_m t_phys)");
  t.meta("kbar", c.kbar);
  t.meta("mu", c.mu);
  t.meta("beta_r", c.beta_r);
  t.meta("beta_i", c.beta_i);
  t.meta("delta", c.delta);
  t.meta("A", c.a_coef);
}

void write_field(const Globals& gl, Table& t, const optomech::OptoConfig& cfg, const std::vector<double>& u,
                 const std::vector<double>& times, int nq) {
  const kernel::AxisParams axis = optomech::axis_params(cfg);
  optomech::FieldOptions fo;
  fo.n_quadrature = nq;
  const optomech::CorrelationField field = optomech::correlation_field(cfg, u, times, fo);
  opto_meta(t, cfg);
  t.meta("g_c", axis.g_c());
  t.meta("g_star", axis.g_star());
  t.meta("fock_dim", static_cast<double>(field.fock_dim));
  t.meta("photon_max", static_cast<double>(field.photon_max));
  t.meta("n_quadrature", static_cast<double>(nq));
  for (const auto& c : field.cells)
    t.add_row({c.u, c.t, c.g, c.f_gg, c.f_tt, c.f_gt, c.f_gt_oracle, c.rho2, c.rho2_oracle, c.degradation,
               optomech::cross_term(cfg, c.g, optomech::MechTime(c.t))});
  emit(gl, t);
}

const std::vector<std::string> kFieldColumns{"u", "t", "g", "f_gg", "f_tt", "f_gt", "f_gt_oracle",
                                             "rho2", "rho2_oracle", "degradation", "cross_term"};

void run_opto(const Globals& gl, OptoArgs a) {
  if (gl.grid_points > 0) a.cfg.fock_dim = gl.grid_points;
  a.cfg.photon_max = a.photon_max;
  a.cfg.validate();
  Table t(kFieldColumns);
  t.meta("command", "opto");
  write_field(gl, t, a.cfg, a.u, a.t, a.n_quadrature);
}

// ---- kernel ----

struct DictArgs {
  double sigma = 1.0;
  double t = 2.0;
  double g = 1.0;
  double k0 = 1.0;
  double T = 1.0;
  double contrast = 1.0;
  double prior_dt = 0.1;
  double sigma_v = 0.1;
  optomech::OptoConfig opto{0.05, 1.0, 0.0, 0.3, 0.0, 1.0};
  int n_quadrature = 1 << 16;
};

void dict_row(Table& t, const std::string& name, double time, double g, const kernel::AxisParams& ax,
              const kernel::NormalizedCoeffs& nc) {
  const double u = kernel::u_coordinate(g, ax);
  t.add_row({name, time, g, ax.g_c(), ax.g_star(), nc.alpha0, nc.alpha1, u, kernel::retention_kernel(nc, u)});
}

void run_dictionary(const Globals& gl, DictArgs a) {
  Table t({"platform", "t", "g", "g_c", "g_star", "alpha0", "alpha1", "u", "retention"});
  t.meta("command", "kernel dictionary");
  t.meta("units", "natural per row (free fall: hbar = m = 1; optomech: mechanical frequency)");
  t.meta("sigma", a.sigma);
  t.meta("k0", a.k0);
  t.meta("contrast", a.contrast);
  t.meta("prior_dt", a.prior_dt);
  t.meta("sigma_v", a.sigma_v);

  const freefall::GaussianProbe probe(a.sigma);
  const kernel::KernelParams ff = freefall::kernel_params(probe, a.t);
  const kernel::AxisParams ff_ax = kernel::axis_from_quadratic(ff);
  dict_row(t, "free fall (Gaussian)", a.t, a.g, ff_ax, kernel::normalized_coeffs(ff, ff_ax));

  kc::KCConfig cfg{a.k0, a.T, a.contrast, a.g, a.sigma_v, 1, 0.0};
  cfg.validate();
  const kernel::KernelParams ki = kc::internal_regularized_kernel_params(cfg, PriorInfo::from_timing_resolution(a.prior_dt));
  const kernel::AxisParams ki_ax = kernel::axis_from_quadratic(ki);
  dict_row(t, "KC internal (prior-regularized)", a.T, a.g, ki_ax, kernel::normalized_coeffs(ki, ki_ax));
  const kernel::KernelParams kf = kc::fullstate_kernel_params(cfg);
  const kernel::AxisParams kf_ax = kernel::axis_from_quadratic(kf);
  dict_row(t, "KC full-state", a.T, a.g, kf_ax, kernel::normalized_coeffs(kf, kf_ax));

  if (gl.grid_points > 0) a.opto.fock_dim = gl.grid_points;
  a.opto.validate();
  const kernel::AxisParams printed = optomech::axis_params(a.opto);
  t.meta("opto_kbar", a.opto.kbar);
  t.meta("opto_mu", a.opto.mu);
  t.meta("opto_beta_r", a.opto.beta_r);
  t.meta("opto_beta_i", a.opto.beta_i);
  t.meta("opto_delta", a.opto.delta);
  t.meta("opto_A", a.opto.a_coef);
  t.meta("opto_g_c_closed_form", printed.g_c());
  t.meta("opto_g_star_closed_form", printed.g_star());
  const kernel::KernelParams om = optomech::harvested_kernel_params(a.opto, optomech::MechTime(a.t), a.n_quadrature);
  const kernel::AxisParams om_ax = kernel::axis_from_quadratic(om);
  dict_row(t, "optomechanical (closed unitary, oracle)", a.t, a.g, om_ax, kernel::normalized_coeffs(om, om_ax));
  emit(gl, t);
}

struct EvalArgs {
  double alpha0 = 0.0;
  double alpha1 = 1.0;
  double u_min = -10.0;
  double u_max = 10.0;
  int points = 201;
};

void run_eval(const Globals& gl, const EvalArgs& a) {
  Table t({"u", "retention"});
  t.meta("command", "kernel eval");
  t.meta("units", "normalized");
  t.meta("alpha0", a.alpha0);
  t.meta("alpha1", a.alpha1);
  const kernel::NormalizedCoeffs nc{a.alpha0, a.alpha1, 0.0};
  for (double u : linspace(a.u_min, a.u_max, a.points)) t.add_row({u, kernel::retention_kernel(nc, u)});
  emit(gl, t);
}

// ---- experiments ----

void run_experiments(const Globals& gl) {
  using experiments::PhysicalConstants;
  const experiments::GoldenNumbers n = experiments::golden_numbers();
  Table t({"quantity", "value", "unit"});
  t.meta("command", "experiments table");
  t.meta("units", "SI");
  t.meta("hbar", PhysicalConstants::hbar);
  t.meta("k_boltzmann", PhysicalConstants::k_boltzmann);
  t.meta("m_rb87", PhysicalConstants::m_rb87);
  t.meta("g_standard", PhysicalConstants::g_standard);
  const auto row = [&](const char* q, double v, const char* unit) { t.add_row({q, v, unit}); };
  row("sigma_v_thermal_2uK", n.sigma_v_2uk, "m/s");
  row("retention_AQG_60ms", n.retention_aqg, "1");
  row("retention_GAIN_260ms", n.retention_gain, "1");
  row("required_sigma_v_AQG_R0.5", n.required_aqg_half, "m/s");
  row("required_sigma_v_AQG_R0.9", n.required_aqg_ninety, "m/s");
  row("required_sigma_v_GAIN_R0.5", n.required_gain_half, "m/s");
  row("required_sigma_v_GAIN_R0.9", n.required_gain_ninety, "m/s");
  row("localization_bound_AQG_R0.5", n.bound_aqg_half, "m");
  row("localization_bound_AQG_R0.9", n.bound_aqg_ninety, "m");
  row("localization_bound_GAIN_R0.5", n.bound_gain_half, "m");
  row("localization_bound_GAIN_R0.9", n.bound_gain_ninety, "m");
  row("ratio_AQG_R0.5", n.ratio_aqg_half, "1");
  row("ratio_AQG_R0.9", n.ratio_aqg_ninety, "1");
  row("ratio_GAIN_R0.5", n.ratio_gain_half, "1");
  row("ratio_GAIN_R0.9", n.ratio_gain_ninety, "1");
  for (const auto& p : experiments::reference_platforms()) {
    t.add_row({"retention_" + p.label, experiments::retention_estimate(p), p.notes.empty() ? "1" : "1 (" + p.notes + ")"});
  }
  emit(gl, t);
}

// ---- verify ----

struct VerifyArgs {
  std::uint64_t seed = 20260601;
  int random_points = 5;
  bool quick = false;
};

int run_verify(const Globals& gl, const VerifyArgs& a) {
  oracle::SuiteOptions opts;
  opts.seed = a.seed;
  opts.random_points = a.random_points;
  opts.include_convergence = !a.quick;
  const auto records = oracle::run_verification_suite(opts);
  int failed = 0;
  for (const auto& r : records) failed += r.pass ? 0 : 1;
  if (gl.format == "records") {
    with_output(gl, [&](std::ostream& os) { oracle::write_json_lines(os, records); });
  } else {
    Table t({"check", "params", "residual", "tolerance", "bound", "pass", "note"});
    t.meta("command", "verify");
    t.meta("seed", std::to_string(a.seed));
    t.meta("random_points", static_cast<double>(a.random_points));
    for (const auto& r : records) {
      std::string params;
      for (const auto& [k, v] : r.params) params += (params.empty() ? "" : ";") + k + "=" + csv::format_number(v);
      t.add_row({r.check, params, r.residual, r.tolerance,
                 r.bound == oracle::VerificationRecord::Bound::Upper ? "max" : "min", r.pass ? "true" : "false",
                 r.note});
    }
    emit(gl, t);
  }
  std::cerr << records.size() - static_cast<std::size_t>(failed) << "/" << records.size() << " checks passed\n";
  return failed == 0 ? 0 : 2;
}

// ---- figures ----

void run_fig1(const Globals& gl, int points) {
  Table t({"u", "R_lorentzian", "R_freefall", "R_opto"});
  t.meta("command", "figures fig1");
  t.meta("units", "normalized");
  t.meta("freefall_alpha", "0 0.60");
  t.meta("opto_alpha", "0.25 0.65");
  const kernel::NormalizedCoeffs lor{0.0, 1.0, 0.0}, ff{0.0, 0.60, 0.0}, om{0.25, 0.65, 0.0};
  for (double u : linspace(-10.0, 10.0, points))
    t.add_row({u, kernel::retention_kernel(lor, u), kernel::retention_kernel(ff, u), kernel::retention_kernel(om, u)});
  emit(gl, t);
}

void run_fig2(const Globals& gl, int u_points, int t_points, int revivals, int nq) {
  // t grid hits 2 pi n exactly when t_points - 1 is a multiple of revivals
  const double kbar = 0.1, beta_r = 0.1;
  const optomech::OptoConfig cfg{kbar, 4.0, beta_r, 0.0, -2.0 * kbar * beta_r, 1.0};
  std::vector<double> times = linspace(0.0, 2.0 * std::numbers::pi * revivals, t_points);
  times.erase(times.begin());  // F_gg vanishes at t = 0
  Table t(kFieldColumns);
  t.meta("command", "figures fig2");
  meta_list(t, "revival_times", [&] {
    std::vector<double> r;
    for (int n = 1; n <= revivals; ++n) r.push_back(2.0 * std::numbers::pi * n);
    return r;
  }());
  write_field(gl, t, cfg, linspace(-1.0, 1.0, u_points), times, nq);
}

void run_fig3(const Globals& gl, int points) {
  Table t({"platform", "t_src_K", "sigma_v_mps", "t_int_s", "retention_kc", "retention_freefall_proxy", "caveat"});
  t.meta("command", "figures fig3");
  t.meta("units", "SI");
  t.meta("g_standard", experiments::PhysicalConstants::g_standard);
  t.meta("m_rb87", experiments::PhysicalConstants::m_rb87);
  const std::vector<double> grid = linspace(0.25 / points, 0.25, points);
  const auto platforms = experiments::reference_platforms();
  for (const auto& r : experiments::figure3_table(platforms, grid))
    t.add_row({r.platform, r.t_src, r.sigma_v, r.t_int, r.retention_kc, r.retention_freefall_proxy, r.caveat});
  emit(gl, t);
}

int exit_code(const Error& e) { return is_validation_error(e.kind()) ? 1 : 2; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-parameter (gravity, interrogation time) Fisher information toolkit"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  app.set_config("--config", "", "key = value config file; flags override file values");

  Globals gl;
  app.add_option("--out,-o", gl.out, "output file (default stdout)");
  app.add_option("--format", gl.format, "csv or records (JSON lines)")->check(CLI::IsMember({"csv", "records"}));
  app.add_option("--grid-points", gl.grid_points, "oracle grid size / Fock dimension (0 = automatic)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--tol", gl.tol, "oracle self-convergence tolerance")->check(CLI::PositiveNumber);

  std::function<int()> action;

  FreefallArgs ff;
  auto* c_ff = app.add_subcommand("freefall", "Gaussian free-fall QFIM and profiled information");
  c_ff->add_option("--sigma", ff.sigma, "packet width");
  c_ff->add_option("--mass", ff.mass);
  c_ff->add_option("--hbar", ff.hbar);
  c_ff->add_option("--g", ff.g);
  c_ff->add_option("--t", ff.t, "interrogation times")->expected(1, -1);
  c_ff->add_option("--prior-dt", ff.prior_dt, "timing resolution of an independent prior (0 = none)");
  c_ff->add_flag("--oracle", ff.oracle, "add the grid oracle's two routes");
  c_ff->callback([&] { action = [&] { run_freefall(gl, ff); return 0; }; });

  KcArgs kc;
  auto* c_kc = app.add_subcommand("kc", "three-pulse light-pulse interferometer");
  c_kc->add_option("--k0", kc.k0);
  c_kc->add_option("--T", kc.T, "pulse separations")->expected(1, -1);
  c_kc->add_option("--g", kc.g);
  c_kc->add_option("--sigma-v", kc.sigma_v);
  c_kc->add_option("--contrast", kc.contrast);
  c_kc->add_option("--prior-dt", kc.prior_dt);
  c_kc->add_option("--n-atoms", kc.n_atoms);
  c_kc->add_option("--phi-ctrl", kc.phi_ctrl);
  c_kc->callback([&] { action = [&] { run_kc(gl, kc); return 0; }; });

  OptoArgs om;
  auto* c_om = app.add_subcommand("opto", "closed optomechanical model: correlation field over (u, t)");
  c_om->add_option("--kbar", om.cfg.kbar);
  c_om->add_option("--mu", om.cfg.mu);
  c_om->add_option("--beta-r", om.cfg.beta_r);
  c_om->add_option("--beta-i", om.cfg.beta_i);
  c_om->add_option("--delta", om.cfg.delta);
  c_om->add_option("--A", om.cfg.a_coef);
  c_om->add_option("--u", om.u)->expected(1, -1);
  c_om->add_option("--t", om.t)->expected(1, -1);
  c_om->add_option("--photon-max", om.photon_max);
  c_om->add_option("--quadrature", om.n_quadrature)->check(CLI::Range(16, 1 << 22));
  c_om->callback([&] { action = [&] { run_opto(gl, om); return 0; }; });

  auto* c_kernel = app.add_subcommand("kernel", "retention kernel");
  c_kernel->require_subcommand(1);
  DictArgs da;
  auto* c_dict = c_kernel->add_subcommand("dictionary", "platform dictionary rows at given parameters");
  c_dict->add_option("--sigma", da.sigma);
  c_dict->add_option("--t", da.t, "free-fall / optomechanical time");
  c_dict->add_option("--g", da.g);
  c_dict->add_option("--k0", da.k0);
  c_dict->add_option("--T", da.T);
  c_dict->add_option("--contrast", da.contrast);
  c_dict->add_option("--prior-dt", da.prior_dt);
  c_dict->add_option("--sigma-v", da.sigma_v);
  c_dict->add_option("--kbar", da.opto.kbar);
  c_dict->add_option("--mu", da.opto.mu);
  c_dict->add_option("--beta-r", da.opto.beta_r);
  c_dict->add_option("--beta-i", da.opto.beta_i);
  c_dict->add_option("--delta", da.opto.delta);
  c_dict->add_option("--A", da.opto.a_coef);
  c_dict->callback([&] { action = [&] { run_dictionary(gl, da); return 0; }; });
  EvalArgs ea;
  auto* c_eval = c_kernel->add_subcommand("eval", "R(u) for given (alpha0, alpha1)");
  c_eval->add_option("--alpha0", ea.alpha0);
  c_eval->add_option("--alpha1", ea.alpha1);
  c_eval->add_option("--u-min", ea.u_min);
  c_eval->add_option("--u-max", ea.u_max);
  c_eval->add_option("--points", ea.points);
  c_eval->callback([&] { action = [&] { run_eval(gl, ea); return 0; }; });

  auto* c_exp = app.add_subcommand("experiments", "SI platform mapping");
  c_exp->require_subcommand(1);
  c_exp->add_subcommand("table", "golden numbers and platform retentions")->callback([&] {
    action = [&] { run_experiments(gl); return 0; };
  });

  VerifyArgs va;
  auto* c_ver = app.add_subcommand("verify", "run the oracle verification suite");
  c_ver->add_option("--seed", va.seed);
  c_ver->add_option("--random-points", va.random_points)->check(CLI::Range(1, 100));
  c_ver->add_flag("--quick", va.quick, "skip the grid-halving sweep");
  c_ver->callback([&] { action = [&] { return run_verify(gl, va); }; });

  auto* c_fig = app.add_subcommand("figures", "figure datasets");
  c_fig->require_subcommand(1);
  int fig1_points = 801;
  c_fig->add_subcommand("fig1", "normalized retention classes")
      ->callback([&] { action = [&] { run_fig1(gl, fig1_points); return 0; }; })
      ->add_option("--points", fig1_points);
  int fig2_u = 41, fig2_t = 161, fig2_rev = 2, fig2_nq = 1 << 16;
  auto* c_fig2 = c_fig->add_subcommand("fig2", "optomechanical correlation field");
  c_fig2->add_option("--u-points", fig2_u);
  c_fig2->add_option("--t-points", fig2_t);
  c_fig2->add_option("--revivals", fig2_rev)->check(CLI::Range(1, 20));
  c_fig2->add_option("--quadrature", fig2_nq)->check(CLI::Range(16, 1 << 22));
  c_fig2->callback([&] { action = [&] { run_fig2(gl, fig2_u, fig2_t, fig2_rev, fig2_nq); return 0; }; });
  int fig3_points = 250;
  c_fig->add_subcommand("fig3", "literature-anchored platform curves")
      ->callback([&] { action = [&] { run_fig3(gl, fig3_points); return 0; }; })
      ->add_option("--points", fig3_points);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    return action ? action() : 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
