#include "tripdc/page.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tripdc/analytic.hpp"
#include "tripdc/specfun.hpp"

namespace tripdc {

namespace {

// H_b - H_a = sum_{k=a+1}^{b} 1/k
double harmonic_difference(long long a, long long b) {
  if (b <= a) return 0.0;
  if (b <= 1000000) {
    double s = 0;
    for (long long k = b; k > a; --k) s += 1.0 / static_cast<double>(k);
    return s;
  }
  return digamma(static_cast<double>(b) + 1.0) - digamma(static_cast<double>(a) + 1.0);
}

}  // namespace

PageValues page_entropy_information(const PagePair& pair) {
  if (pair.m < 1 || pair.n < 1)
    throw std::invalid_argument("page_entropy_information: dimensions must be >= 1");
  const long long m = std::min(pair.m, pair.n);
  const long long n = std::max(pair.m, pair.n);
  if (n > (1LL << 62) / m)
    throw std::invalid_argument("page_entropy_information: m*n overflows");
  const long long mn = m * n;
  PageValues out;
  out.entropy_nats = harmonic_difference(n, mn) -
                     (static_cast<double>(m) - 1.0) / (2.0 * static_cast<double>(n));
  out.information_nats = std::log(static_cast<double>(m)) - out.entropy_nats;
  return out;
}

ProbDist thermal_reference(double nbar, const TruncationPolicy& policy) {
  if (!(nbar >= 0)) throw std::invalid_argument("thermal_reference: nbar must be >= 0");
  if (nbar == 0.0) return ProbDist({1.0}, DistOrigin::ThermalReference);
  const double z = nbar / (nbar + 1.0);
  if (z >= policy.z_max)
    throw std::invalid_argument("thermal_reference: nbar too large (policy z_max)");
  const std::size_t len = truncation_length(z, 0, policy);
  std::vector<double> w(len);
  double zk = 1.0;
  for (std::size_t k = 0; k < len; ++k) {
    w[k] = (1.0 - z) * zk;
    zk *= z;
  }
  return ProbDist(std::move(w), DistOrigin::ThermalReference);
}

std::vector<double> page_information_series(const std::vector<ProbDist>& signal_dists) {
  std::vector<double> info;
  info.reserve(signal_dists.size());
  for (const auto& p : signal_dists) {
    const double nbar = mean_and_variance(p).mean;
    double s_th = 0;
    if (nbar > 0) {
      const double z = nbar / (nbar + 1.0);
      s_th = -std::log2(1.0 - z) - z / (1.0 - z) * std::log2(z);
    }
    info.push_back(s_th - shannon_entropy_bits(p));
  }
  return info;
}

double page_information_analytic(double z, int n_s0, const TruncationPolicy& policy) {
  if (z <= crossover_z_star_limit()) return 0.0;
  const auto mag = short_time_magnitudes(z, n_s0, policy);
  std::vector<double> w(mag.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = mag[i] * mag[i];
  const double s_short = shannon_entropy_bits(ProbDist(std::move(w)));
  const double s_long = shannon_entropy_bits(longtime_probabilities(z, n_s0, policy));
  return s_short - s_long;
}

EffectiveDimensions effective_dimensions(const ProbDist& dist) {
  const auto mo = mean_and_variance(dist);
  EffectiveDimensions d;
  d.popescu = 2.0 * mo.mean + 1.0;
  d.variance_based = 1.0 + std::sqrt(mo.variance);
  return d;
}

double bits_per_nat() { return 1.0 / std::numbers::ln2; }

std::vector<long long> divisors(long long n) {
  if (n < 1) throw std::invalid_argument("divisors: n must be >= 1");
  std::vector<long long> out;
  for (long long d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d != n / d) out.push_back(n / d);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace tripdc
