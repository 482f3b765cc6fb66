#include "tripdc/analytic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tripdc {

namespace {
constexpr double kPi = std::numbers::pi;

double effective_initial_occupation(const ModeSetup& setup) {
  // (n_s0 + 1), or the two-pair sum (n_s0 + 1) + (n_sbar0 + 1)
  return setup.two_pair() ? setup.n_s0 + setup.n_sbar0.value_or(0) + 2.0
                          : setup.n_s0 + 1.0;
}
}  // namespace

SqueezeTime SqueezeTime::from_z(double z) {
  if (!(z >= 0.0 && z < 1.0)) throw std::invalid_argument("SqueezeTime: z outside [0,1)");
  return {z, std::atanh(std::sqrt(z))};
}

SqueezeTime SqueezeTime::from_tau(double tau) {
  if (!(tau >= 0.0)) throw std::invalid_argument("SqueezeTime: tau must be >= 0");
  const double t = std::tanh(tau);
  return {t * t, tau};
}

EllipticSchedule EllipticSchedule::for_setup(const ModeSetup& setup) {
  EllipticSchedule s;
  const auto k = setup.two_pair()
                     ? EllipticModulus::two_pair(setup.n_p0, setup.n_s0, *setup.n_sbar0)
                     : EllipticModulus::single_pair(setup.n_p0, setup.n_s0);
  s.k_e = k.parameter();
  s.tau_scale = setup.time_scale(setup.two_pair() ? TimeConvention::ScaledTwoPair
                                                  : TimeConvention::ScaledSinglePair);
  if (s.k_e > 0.99) {
    s.quarter_period = kPi / 2 - 0.5 * std::log1p(-s.k_e);
  } else {
    s.quarter_period = complete_elliptic_k(k);
  }
  return s;
}

double EllipticSchedule::shape_constant() const {
  return quarter_period + 0.5 * std::log1p(-k_e);
}

std::vector<double> short_time_magnitudes(double z, int n_s0,
                                          const TruncationPolicy& policy) {
  if (n_s0 < 0) throw std::invalid_argument("short_time_magnitudes: n_s0 must be >= 0");
  const std::size_t len = truncation_length(z, n_s0, policy);
  std::vector<double> mag(len);
  if (z == 0.0) {
    mag[0] = 1.0;
    return mag;
  }
  const double log_z = std::log(z), log_1mz = std::log1p(-z);
  for (std::size_t n = 0; n < len; ++n) {
    const double lp = (n_s0 + 1.0) * log_1mz + n * log_z +
                      log_binomial(n_s0 + static_cast<double>(n), static_cast<double>(n));
    mag[n] = std::exp(0.5 * lp);
  }
  return mag;
}

AmplitudeState short_time_amplitudes(const SqueezeTime& zt, int n_s0,
                                     const TruncationPolicy& policy) {
  auto mag = short_time_magnitudes(zt.z, n_s0, policy);
  std::vector<std::complex<double>> c(mag.size());
  std::complex<double> phase{1.0, 0.0};
  const std::complex<double> minus_i{0.0, -1.0};
  for (std::size_t n = 0; n < mag.size(); ++n) {
    c[n] = phase * mag[n];
    phase *= minus_i;
  }
  return AmplitudeState::single_pair(ModeSetup::unbounded_pump(n_s0), zt.tau,
                                     TimeConvention::ScaledSinglePair, std::move(c),
                                     DistOrigin::ShortTimeAnalytic);
}

namespace {

// zeta_Tq = tanh(T_q) with the sech-pulse quarter period a(k_e) = pi/2 used
// throughout the crossover construction (it is what the f(z) replacement law
// is anchored to).
double zeta_quarter_period(const ModeSetup& setup) {
  const double S = effective_initial_occupation(setup);
  const double k_e = setup.n_p0 / (setup.n_p0 + S);
  const double Tq = kPi / 2 - 0.5 * std::log1p(-k_e);
  return std::tanh(Tq);
}

double mean_matching_residual(double zeta, const ModeSetup& setup, double zeta_Tq) {
  const double S = effective_initial_occupation(setup);
  const double lhs = S * zeta * zeta / (1.0 - zeta * zeta);
  const double t = (zeta - zeta_Tq) / (1.0 - zeta * zeta_Tq);
  const double rhs = setup.n_p0 * (1.0 - t * t);
  return lhs - rhs;
}

}  // namespace

double crossover_z_star(const ModeSetup& setup) {
  const double zeta_Tq = zeta_quarter_period(setup);
  double lo = 1e-14, hi = zeta_Tq;
  if (!(mean_matching_residual(lo, setup, zeta_Tq) < 0.0 &&
        mean_matching_residual(hi, setup, zeta_Tq) > 0.0))
    throw std::domain_error("crossover_z_star: no root in (0,1) for this setup");
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mean_matching_residual(mid, setup, zeta_Tq) > 0.0)
      hi = mid;
    else
      lo = mid;
  }
  const double zeta = 0.5 * (lo + hi);
  return zeta * zeta;
}

double crossover_z_star_first_order(const ModeSetup& setup) {
  const double S = effective_initial_occupation(setup);
  const double eps = S / setup.n_p0;
  const double eps_Tq = 2.0 * std::exp(-kPi) * S / (setup.n_p0 + S);
  const double zeta = (2.0 * eps_Tq + std::sqrt(2.0 * eps_Tq * eps)) / (eps - 2.0 * eps_Tq);
  return zeta * zeta;
}

double crossover_z_star_limit() {
  const double zeta = 1.0 / (std::exp(kPi / 2) / 2.0 - 1.0);
  return zeta * zeta;
}

double longtime_mean(double tau, const ModeSetup& setup, const EllipticSchedule& schedule) {
  // In the k_e > 0.99 regime the schedule anchors T_q to a = pi/2, which is
  // the quarter period of the sech pulse, not of cn; the consistent envelope
  // there is the sech limit. The exact cn form pairs with T_q = K(k_e).
  if (schedule.k_e > 0.99) return longtime_mean_sech(tau, setup, schedule);
  const double cn = jacobi_cn(tau - schedule.quarter_period, schedule.modulus());
  return setup.n_p0 * cn * cn;
}

double longtime_mean_sech(double tau, const ModeSetup& setup,
                          const EllipticSchedule& schedule) {
  const double s = 1.0 / std::cosh(tau - schedule.quarter_period);
  return setup.n_p0 * s * s;
}

std::pair<double, double> longtime_mean_two_pair(double tau, const ModeSetup& setup,
                                                 const EllipticSchedule& schedule) {
  if (!setup.two_pair())
    throw std::invalid_argument("longtime_mean_two_pair: setup lacks n_sbar0");
  const double envelope = longtime_mean(tau, setup, schedule);
  const double denom = setup.n_s0 + *setup.n_sbar0 + 2.0;
  return {(setup.n_s0 + 1.0) / denom * envelope,
          (*setup.n_sbar0 + 1.0) / denom * envelope};
}

bool within_model_validity(double tau, const EllipticSchedule& schedule) {
  return tau <= schedule.quarter_period;
}

double f_of_z(double z) {
  if (!(z >= 0.0 && z < 1.0)) throw std::invalid_argument("f_of_z: z outside [0,1)");
  const double r = std::sqrt(z);
  return 4.0 * std::exp(-kPi) * (1.0 + r) / (1.0 - r);
}

double long_branch_z(double z) {
  const double f = f_of_z(z);
  return f / (1.0 + f);
}

ProbDist longtime_probabilities(double z, int n_s0, const TruncationPolicy& policy) {
  const double zeff = long_branch_z(z);
  auto mag = short_time_magnitudes(zeff, n_s0, policy);
  std::vector<double> w(mag.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = mag[i] * mag[i];
  return ProbDist(std::move(w), DistOrigin::LongTimeAnalytic);
}

ProbDist combined_solution(double z, int n_s0, const TruncationPolicy& policy) {
  if (z <= crossover_z_star_limit()) {
    auto mag = short_time_magnitudes(z, n_s0, policy);
    std::vector<double> w(mag.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = mag[i] * mag[i];
    return ProbDist(std::move(w), DistOrigin::ShortTimeAnalytic);
  }
  return longtime_probabilities(z, n_s0, policy);
}

double fidelity_curve(double z, int n_s0) {
  if (!(z >= 0.0 && z < 1.0)) throw std::invalid_argument("fidelity_curve: z outside [0,1)");
  if (z <= crossover_z_star_limit()) return 1.0;
  // closed-form Bhattacharyya overlap of two negative binomials sharing k
  const double z2 = long_branch_z(z);
  const double k = n_s0 + 1.0;
  return std::exp(0.5 * k * (std::log1p(-z) + std::log1p(-z2)) -
                  k * std::log1p(-std::sqrt(z * z2)));
}

}  // namespace tripdc
