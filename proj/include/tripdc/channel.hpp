#pragma once

#include <complex>

#include "tripdc/analytic.hpp"
#include "tripdc/fock.hpp"

namespace tripdc {

/// Outgoing-mode distribution when m quanta were initially present, indexed
/// by the total occupation m + n (first m entries vanish).
ProbDist stimulated_dist(double z, int m_init, const TruncationPolicy& policy);

struct ComponentEntropies {
  double s_k0 = 0;  // S(rho_{k|0}) bits
  double s_k1 = 0;  // S(rho_{k|1}) bits
};

ComponentEntropies component_entropies(double z);

/// Holevo capacity of the dual-rail particle/anti-particle encoding, closed
/// form; the long branch substitutes z -> f/(1+f).
double holevo_chi(double z, Branch branch);

/// Same quantity assembled from first principles as the joint-mixture entropy
/// minus the mean component entropy at mixing probability p_mix.
double holevo_chi_first_principles(double z, double p_mix, const TruncationPolicy& policy);

/// Beam-splitter Fock transfer amplitudes: |n, n'> -> sum_p f_p |p, n+n'-p>.
std::vector<std::complex<double>> bs_coefficients(int n, int n_prime, double theta);

/// alpha^2 - beta^2 + gamma^2 for the scattered late-time mode; identically 1.
double bogoliubov_identity(double r, double theta);

struct GrayBodyParams {
  double theta = 0;  // beam-splitter angle, [0, pi/2]

  explicit GrayBodyParams(double angle);
  double transmittance() const;                // cos^2 theta
  double absorptivity(double rapidity) const;  // cos^2 theta cosh^2 r
};

/// Send-'0'/send-'1' product distributions for signal and anti-signal after
/// gray-body scattering of one late quantum.
struct ChannelEnsemble {
  double p_mix = 0.5;
  ProbDist dist_s_0, dist_sbar_0, dist_s_1, dist_sbar_1;
};

ChannelEnsemble graybody_ensemble(double z, double theta, const TruncationPolicy& policy);

/// Joint-mixture entropy minus mean component entropies on the (k, m) grid.
double holevo_chi_of_ensemble(const ChannelEnsemble& ens, double p_mix);

double holevo_chi_graybody(double z, double theta, Branch branch,
                           const TruncationPolicy& policy);

}  // namespace tripdc
