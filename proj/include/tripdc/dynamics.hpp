#pragma once

#include <optional>

#include "tripdc/fock.hpp"

namespace tripdc {

struct EvolutionConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  std::vector<double> tau_grid;  // strictly increasing from 0
  TimeConvention convention = TimeConvention::ScaledSinglePair;
  TruncationPolicy policy{};

  void validate() const;
};

/// Observable time series of an evolution run. Particle conservation pins
/// nbar_p + nbar_s - n_s0 = n_p0 at every sample.
struct ObservableSeries {
  std::vector<double> tau;
  std::vector<double> nbar_s, nbar_p, nbar_ibar;
  std::vector<double> nbar_sbar, nbar_i;  // two-pair runs only
  std::vector<double> var_s, var_p;
  std::vector<double> entropy_s_bits;
  std::vector<double> norm_drift;
};

struct EventReport {
  std::optional<double> population_crossing_tau;    // nbar_p = nbar_s
  std::optional<double> variance_crossing_tau;      // var_p = var_s
  std::optional<double> pump_minimum_tau;           // first d nbar_p / d tau = 0
  std::optional<double> validity_horizon_tau;       // model valid while d nbar_p/d tau <= 0
  std::optional<double> pump_depletion_at_minimum;  // 1 - nbar_p(min)/nbar_p(0)
};

/// Integrate the quantum amplitude recursion for the single-pair trilinear
/// interaction from c_n(0) = delta_{n,0}, returning states on the grid.
std::vector<AmplitudeState> evolve_single_pair(const ModeSetup& setup,
                                               const EvolutionConfig& cfg);

/// Two-pair evolution on the triangular index domain n + m <= n_p0 from
/// c_{n,m}(0) = delta_{n,0} delta_{m,0}.
std::vector<AmplitudeState> evolve_two_pair(const ModeSetup& setup,
                                            const EvolutionConfig& cfg);

struct CoherentEnsembleResult {
  std::vector<int> sector_pump;                     // pump Fock sectors kept
  std::vector<double> sector_weight;                // Poisson weights
  std::vector<std::vector<AmplitudeState>> states;  // [sector][grid point]
  ObservableSeries series;                          // ensemble observables
  std::vector<double> deff_s, deff_p;               // 1 + Delta n
  std::vector<double> entropy_thermal_bits;         // thermal reference at nbar_s
  std::vector<double> information_bits;             // S_thermal - S(rho_s)
};

/// Poisson-weighted ensemble of independent pump Fock sectors; the common
/// time variable is t' = r t regardless of cfg.convention.
CoherentEnsembleResult evolve_coherent_pump(double alpha_sq, int n_s0,
                                            const EvolutionConfig& cfg);

/// Dense eigendecomposition propagator, exact up to the eigensolver; the
/// validation anchor for the adaptive integrator. n_p0 <= 500.
AmplitudeState propagator_oracle(const ModeSetup& setup, double tau,
                                 TimeConvention conv = TimeConvention::ScaledSinglePair);

ObservableSeries observables_from_states(const std::vector<AmplitudeState>& states);

EventReport detect_events(const ObservableSeries& series);

}  // namespace tripdc
