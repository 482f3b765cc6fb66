#include "tripdc/entanglement.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tripdc/specfun.hpp"

namespace tripdc {

double log_negativity_from_negative_sum(double negative_sum) {
  if (negative_sum < 0)
    throw std::invalid_argument("log_negativity: negative sum must be >= 0");
  return std::log2(1.0 + 2.0 * negative_sum);
}

namespace {

double branch_z(double z, Branch branch) {
  switch (branch) {
    case Branch::Short:
      return z;
    case Branch::Long:
      return long_branch_z(z);
    case Branch::Combined:
      return z <= crossover_z_star_limit() ? z : long_branch_z(z);
  }
  throw std::logic_error("unknown branch");
}

// Amplitude sums decay with sqrt(z), so their truncation needs the square of
// the probability-level tail mass.
TruncationPolicy amplitude_policy(const TruncationPolicy& policy) {
  TruncationPolicy p = policy;
  p.tail_epsilon = std::max(policy.tail_epsilon * policy.tail_epsilon, 1e-120);
  return p;
}

std::vector<double> amplitude_magnitudes(double z, int n_s0, const TruncationPolicy& policy) {
  return short_time_magnitudes(z, n_s0, amplitude_policy(policy));
}

}  // namespace

double logneg_correlated_pair_from_magnitudes(std::span<const double> c) {
  double s = 0;
  for (double v : c) s += v;
  return std::max(2.0 * std::log2(s), 0.0);
}

double logneg_pump_idler_vs_signal(const AmplitudeState& state) {
  if (state.layout() != AmplitudeState::Layout::SinglePair)
    throw std::invalid_argument("logneg_pump_idler_vs_signal: single-pair states only");
  double s = 0;
  for (const auto& c : state.values()) s += std::abs(c);
  return std::max(2.0 * std::log2(s), 0.0);
}

double logneg_pump_idler_vs_signal(double z, int n_s0, Branch branch,
                                   const TruncationPolicy& policy) {
  const auto mag = amplitude_magnitudes(branch_z(z, branch), n_s0, policy);
  return logneg_correlated_pair_from_magnitudes(mag);
}

double logneg_signal_vs_idler(const AmplitudeState& state) {
  if (state.layout() != AmplitudeState::Layout::SinglePair)
    throw std::invalid_argument("logneg_signal_vs_idler: single-pair states only");
  // rho_{s,ibar} is diagonal once the pump is traced out; its partial
  // transpose is itself, so the negativity vanishes identically
  return 0.0;
}

double logneg_pair_vs_pair_from_magnitudes(std::span<const double> a,
                                           std::span<const double> b) {
  // lambda_M = sum_n |c^s_n| |c^sbar_{M-n}|, E = log2 sum_M lambda_M^2
  const std::size_t len = a.size() + b.size() - 1;
  double total = 0;
  for (std::size_t M = 0; M < len; ++M) {
    double lam = 0;
    const std::size_t n_lo = M >= b.size() ? M - b.size() + 1 : 0;
    const std::size_t n_hi = std::min(M, a.size() - 1);
    for (std::size_t n = n_lo; n <= n_hi; ++n) lam += a[n] * b[M - n];
    total += lam * lam;
  }
  return std::max(std::log2(total), 0.0);
}

double logneg_pair_vs_pair(double z, int n_s0, int n_sbar0, Branch branch,
                           const TruncationPolicy& policy) {
  const double zb = branch_z(z, branch);
  const auto a = amplitude_magnitudes(zb, n_s0, policy);
  const auto b = amplitude_magnitudes(zb, n_sbar0, policy);
  return logneg_pair_vs_pair_from_magnitudes(a, b);
}

double logneg_entangled_ic_from_magnitudes(std::span<const double> c_vac,
                                           std::span<const double> c_seed) {
  double s = 0;
  const std::size_t len = std::min(c_vac.size(), c_seed.size());
  for (std::size_t n = 0; n < len; ++n) s += c_vac[n] * c_seed[n];
  return std::log2(1.0 + s);
}

double logneg_entangled_ic(double z, int n_s0, const TruncationPolicy& policy) {
  if (n_s0 == 0) return 0.0;  // the paired preparation evolves separably
  const auto c0 = amplitude_magnitudes(z, 0, policy);
  const auto cs = amplitude_magnitudes(z, n_s0, policy);
  return logneg_entangled_ic_from_magnitudes(c0, cs);
}

double logneg_pump_idler_vs_signal_separable_ic(double z, int n_s0,
                                                const TruncationPolicy& policy) {
  return logneg_pump_idler_vs_signal(z, n_s0, Branch::Short, policy);
}

double logneg_pibars_entangled_from_magnitudes(std::span<const double> c_vac,
                                               std::span<const double> c_seed) {
  double s0 = 0, ss = 0;
  for (double v : c_vac) s0 += v;
  for (double v : c_seed) ss += v;
  return std::max(std::log2(0.5 * s0 * s0 + 0.5 * ss * ss), 0.0);
}

double logneg_pump_idler_vs_signal_entangled_ic(double z, int n_s0,
                                                const TruncationPolicy& policy) {
  const auto c0 = amplitude_magnitudes(z, 0, policy);
  const auto cs = amplitude_magnitudes(z, n_s0, policy);
  return logneg_pibars_entangled_from_magnitudes(c0, cs);
}

double bs_single_quantum_coefficient(int k, int n, double theta) {
  if (k < 0 || n < 0 || k > n + 1)
    throw std::invalid_argument("bs_single_quantum_coefficient: k outside [0, n+1]");
  const double c = std::cos(theta), s = std::sin(theta);
  auto pow_or_zero = [](double base, int e) {
    return e == 0 ? 1.0 : std::pow(base, e);
  };
  double t1 = 0, t2 = 0;
  if (k <= n)
    t1 = std::sqrt(n + 1.0 - k) * std::exp(0.5 * log_binomial(n, k)) *
         pow_or_zero(c, k + 1) * pow_or_zero(s, n - k);
  if (k >= 1)
    t2 = std::sqrt(static_cast<double>(k)) * std::exp(0.5 * log_binomial(n, k - 1)) *
         pow_or_zero(c, k - 1) * pow_or_zero(s, n - k + 2);
  return std::abs(t1 - t2);
}

double logneg_bs_scattering_from_magnitudes(std::span<const double> c_vac, double theta) {
  double total = 0;
  for (std::size_t n = 0; n < c_vac.size(); ++n) {
    double fsum = 0;
    for (int k = 0; k <= static_cast<int>(n) + 1; ++k)
      fsum += bs_single_quantum_coefficient(k, static_cast<int>(n), theta);
    total += c_vac[n] * c_vac[n] * fsum * fsum;
  }
  return std::max(std::log2(total), 0.0);
}

double logneg_bs_scattering(double z, double theta, const TruncationPolicy& policy) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi / 2 + 1e-15))
    throw std::invalid_argument("logneg_bs_scattering: theta outside [0, pi/2]");
  // fully transmitting or fully reflecting: Fock states map to Fock states
  // and the modes stay separable
  if (theta == 0.0 || theta >= std::numbers::pi / 2) return 0.0;
  const auto c0 = amplitude_magnitudes(z, 0, policy);
  return logneg_bs_scattering_from_magnitudes(c0, theta);
}

MutualTripartite mutual_and_tripartite_info(const AmplitudeState& state) {
  if (state.layout() != AmplitudeState::Layout::SinglePair)
    throw std::invalid_argument("mutual_and_tripartite_info: single-pair states only");
  // all six cuts share the logical distribution
  const double s_one = shannon_entropy_bits(reduced_cut_dist(state, ReducedCut::Signal));
  const double s_two = shannon_entropy_bits(reduced_cut_dist(state, ReducedCut::PumpIdler));
  const double s_all = 0.0;  // pure three-mode state
  MutualTripartite out;
  out.mutual_bits = s_one + s_one - s_two;
  out.tripartite_bits = 3 * s_one - 3 * s_two + s_all;
  return out;
}

}  // namespace tripdc
