#pragma once

#include "tripdc/fock.hpp"
#include "tripdc/specfun.hpp"

namespace tripdc {

/// Which closed-form regime a z-parameterized quantity is evaluated in.
enum class Branch { Short, Long, Combined };

/// Squeezing parameter z = tanh^2(tau), kept consistent both ways.
struct SqueezeTime {
  double z = 0;
  double tau = 0;

  static SqueezeTime from_z(double z);
  static SqueezeTime from_tau(double tau);
};

/// (k_e, T_q, tau scale) bundle for the long-time elliptic mean-occupation
/// law. T_q = a(k_e) - (1/2) ln(1 - k_e); a = pi/2 in the k_e -> 1 regime
/// (k_e > 0.99), otherwise T_q is the exact quarter period K(k_e) so that
/// small-pump runs stay consistent with the implemented elliptic flow.
struct EllipticSchedule {
  double k_e = 0;
  double quarter_period = 0;  // T_q
  double tau_scale = 1;       // sqrt(n_p0+n_s0+1) or the two-pair analogue

  static EllipticSchedule for_setup(const ModeSetup& setup);

  EllipticModulus modulus() const { return EllipticModulus::from_parameter(k_e); }
  /// a(k_e) = T_q + (1/2) ln(1 - k_e); lies in [ln 4, pi/2].
  double shape_constant() const;
};

/// Short-time (non-depleted pump) amplitudes
/// c_n = (-i tanh tau)^n / (cosh tau)^{n_s0+1} sqrt(C(n_s0+n, n)).
AmplitudeState short_time_amplitudes(const SqueezeTime& zt, int n_s0,
                                     const TruncationPolicy& policy);

/// |c_n| of the short-time solution at squeezing z (used by the closed-form
/// entanglement sums; long-time magnitudes are the same at z -> f/(1+f)).
std::vector<double> short_time_magnitudes(double z, int n_s0,
                                          const TruncationPolicy& policy);

/// Crossover squeezing z* where the short- and long-time mean occupations
/// match, from a bisection refinement of the mean-matching equation.
double crossover_z_star(const ModeSetup& setup);
/// First-order closed formula for z* (small eps expansion).
double crossover_z_star_first_order(const ModeSetup& setup);
/// n_p0 -> infinity limit 1/(e^{pi/2}/2 - 1)^2 ~ 0.506407.
double crossover_z_star_limit();

/// Long-time mean occupation n_p0 cn^2(tau - T_q | k_e); tau in the
/// schedule's scaled convention.
double longtime_mean(double tau, const ModeSetup& setup, const EllipticSchedule& schedule);
/// sech approximation n_p0 sech^2(tau - T_q), single pulse.
double longtime_mean_sech(double tau, const ModeSetup& setup, const EllipticSchedule& schedule);
/// Two-pair fractions of the shared envelope: (nbar, mbar).
std::pair<double, double> longtime_mean_two_pair(double tau, const ModeSetup& setup,
                                                 const EllipticSchedule& schedule);
/// tau <= T_q; past the envelope peak the pump would re-absorb radiation.
bool within_model_validity(double tau, const EllipticSchedule& schedule);

/// f(z) = 4 e^{-pi} (1 + sqrt z)/(1 - sqrt z); the long-time branch evaluates
/// every short-time formula at z -> f/(1+f).
double f_of_z(double z);
double long_branch_z(double z);

ProbDist longtime_probabilities(double z, int n_s0, const TruncationPolicy& policy);
ProbDist combined_solution(double z, int n_s0, const TruncationPolicy& policy);

/// Fidelity of the combined solution against the non-depleted thermal
/// reference: 1 below z*, the Bhattacharyya overlap of p_< and p_> above.
double fidelity_curve(double z, int n_s0);

}  // namespace tripdc
