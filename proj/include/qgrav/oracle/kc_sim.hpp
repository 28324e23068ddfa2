#pragma once

// Pulse-level simulation of the pi/2 - pi - pi/2 sequence on a two-level
// atom whose centre of mass lives on the position grid. Pulses act
// instantaneously with the photon-recoil factors exp(+-i k0 z); free fall in
// between is split-step propagation of both internal components.

#include "qgrav/kasevich_chu.hpp"
#include "qgrav/oracle/grid.hpp"

namespace qgrav::oracle {

struct PulsePhases {
  double phi1 = 0.0;
  double phi2 = 0.0;
  double phi3 = 0.0;
};

/// Excited-state population after the sequence. Uses cfg.k0, cfg.T, cfg.g;
/// the motional state comes from the model. Throws GridUnderResolved when
/// the final components reach the box edge or the momentum band edge.
double kc_fringe_sim(const kc::KCConfig& cfg, const GridModel& model, const PulsePhases& phases);

struct KCSimResult {
  double p_b = 0.0;
  /// |det F| / (F_gg F_TT) of the fringe's classical Fisher matrix over
  /// (g, T), from finite-difference gradients of the simulated P_b.
  double fisher_rank1_residual = 0.0;
  /// Mismatch of the gradient direction with (T^2, 2 g T):
  /// |T dP/dT - 2 g dP/dg| / (|T dP/dT| + |2 g dP/dg|); 0 when both vanish.
  double direction_residual = 0.0;
};

/// Runs with phi1 = phi2 = 0, phi3 = cfg.phi_ctrl.
KCSimResult kc_pulse_sim(const kc::KCConfig& cfg, const GridModel& model);

struct FringeFit {
  double offset = 0.0;
  double contrast = 0.0;
  double delta_phi = 0.0;       // extracted -k0 g T^2 - phi_ctrl, wrapped to (-pi, pi]
  double max_fit_residual = 0.0;
};

/// Sweeps phi3 over n_points equally spaced offsets around cfg.phi_ctrl and
/// fits a + c cos(phi) + s sin(phi). Needs n_points >= 3.
FringeFit kc_fringe_fit(const kc::KCConfig& cfg, const GridModel& model, int n_points = 8);

/// Wraps an angle to (-pi, pi].
double wrap_phase(double phi) noexcept;

}  // namespace qgrav::oracle
