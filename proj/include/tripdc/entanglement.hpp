#pragma once

#include "tripdc/analytic.hpp"
#include "tripdc/fock.hpp"

namespace tripdc {

/// The bipartite divisions whose log-negativity reduces to an amplitude sum.
enum class BipartitionLabel {
  PumpIdlerVsSignal,
  PairVsPair,
  SignalVsIdler,
  SignalVsSpectator,
  PumpIdlerVsSignal_EntangledIC,
  SignalVsInfaller_BS,
};

/// E_N = log2(1 + 2 N(rho)) with N the absolute sum of the negative partial
/// transpose eigenvalues; the structured-state evaluators below absorb the
/// factor into amplitude sums.
double log_negativity_from_negative_sum(double negative_sum);

/// Magnitude-vector cores of the closed forms. Inputs are |c_n| with unit
/// L2 norm (each family separately); the z-parameterized wrappers feed
/// policy-truncated short/long-time magnitudes through these.
double logneg_correlated_pair_from_magnitudes(std::span<const double> c);
double logneg_pair_vs_pair_from_magnitudes(std::span<const double> a,
                                           std::span<const double> b);
double logneg_entangled_ic_from_magnitudes(std::span<const double> c_vac,
                                           std::span<const double> c_seed);
double logneg_pibars_entangled_from_magnitudes(std::span<const double> c_vac,
                                               std::span<const double> c_seed);
double logneg_bs_scattering_from_magnitudes(std::span<const double> c_vac, double theta);

/// (pump, idler) vs signal: 2 log2 sum_n |c_n| (bits).
double logneg_pump_idler_vs_signal(const AmplitudeState& state);
double logneg_pump_idler_vs_signal(double z, int n_s0, Branch branch,
                                   const TruncationPolicy& policy);

/// Signal vs idler after the pump trace: diagonal state, identically zero.
double logneg_signal_vs_idler(const AmplitudeState& state);

/// (s, ibar) pair vs (sbar, i) pair, coupled through the traced-out pump:
/// log2[ sum_M lambda_M^2 w_M ] with lambda_M the diagonal convolution of the
/// two short-time amplitude families.
double logneg_pair_vs_pair(double z, int n_s0, int n_sbar0, Branch branch,
                           const TruncationPolicy& policy);

/// Signal/spectator pair prepared maximally entangled; the spectator never
/// interacts. Short-time amplitudes for all z.
double logneg_entangled_ic(double z, int n_s0, const TruncationPolicy& policy);

/// (pump, idler) vs signal with the entangled initial condition, and its
/// separable-preparation companion.
double logneg_pump_idler_vs_signal_entangled_ic(double z, int n_s0,
                                                const TruncationPolicy& policy);
double logneg_pump_idler_vs_signal_separable_ic(double z, int n_s0,
                                                const TruncationPolicy& policy);

/// |f_k^(0)(n)|: magnitude of the beam-splitter amplitude for one extra
/// quantum scattered against an n-quantum signal state.
double bs_single_quantum_coefficient(int k, int n, double theta);

/// Signal vs infalling mode after beam-splitter scattering of one late
/// quantum, transmittance cos^2 theta.
double logneg_bs_scattering(double z, double theta, const TruncationPolicy& policy);

struct MutualTripartite {
  double mutual_bits = 0;      // I(A:B) for any single-mode pair = S(|c_n|^2)
  double tripartite_bits = 0;  // I_3, identically 0 for the pure state
};

MutualTripartite mutual_and_tripartite_info(const AmplitudeState& state);

}  // namespace tripdc
