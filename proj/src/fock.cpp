#include "tripdc/fock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tripdc {

namespace {
constexpr int kUnboundedPump = std::numeric_limits<int>::max();
}

ModeSetup::ModeSetup(int np0, int ns0, std::optional<int> nsbar0, double r)
    : n_p0(np0), n_s0(ns0), n_sbar0(nsbar0), coupling(r) {
  if (n_p0 < 1) throw std::invalid_argument("ModeSetup: n_p0 must be >= 1");
  if (n_s0 < 0) throw std::invalid_argument("ModeSetup: n_s0 must be >= 0");
  if (n_sbar0 && *n_sbar0 < 0)
    throw std::invalid_argument("ModeSetup: n_sbar0 must be >= 0");
  if (!(coupling > 0)) throw std::invalid_argument("ModeSetup: coupling must be > 0");
}

double ModeSetup::time_scale(TimeConvention c) const {
  switch (c) {
    case TimeConvention::RawCoupling:
      return 1.0;
    case TimeConvention::ScaledSinglePair:
      return std::sqrt(static_cast<double>(n_p0) + n_s0 + 1.0);
    case TimeConvention::ScaledTwoPair:
      return std::sqrt(static_cast<double>(n_p0) + n_s0 + n_sbar0.value_or(0) + 2.0);
  }
  throw std::logic_error("ModeSetup: unknown time convention");
}

ModeSetup ModeSetup::unbounded_pump(int ns0, std::optional<int> nsbar0) {
  return ModeSetup(kUnboundedPump, ns0, nsbar0);
}

bool ModeSetup::pump_unbounded() const { return n_p0 == kUnboundedPump; }

ProbDist::ProbDist(std::vector<double> weights, DistOrigin origin)
    : w_(std::move(weights)), origin_(origin) {
  if (w_.empty()) throw std::invalid_argument("ProbDist: empty weight vector");
  double sum = 0;
  for (double v : w_) {
    if (!(v >= 0)) throw std::invalid_argument("ProbDist: negative weight");
    sum += v;
  }
  if (std::abs(sum - 1.0) > kNormTol)
    throw std::invalid_argument("ProbDist: weights not normalized (sum = " +
                                std::to_string(sum) + ")");
}

Moments mean_and_variance(const ProbDist& p) {
  double mean = 0;
  for (std::size_t n = 0; n < p.size(); ++n) mean += static_cast<double>(n) * p[n];
  double var = 0;
  for (std::size_t n = 0; n < p.size(); ++n) {
    const double d = static_cast<double>(n) - mean;
    var += d * d * p[n];
  }
  return {mean, std::max(var, 0.0)};
}

void TruncationPolicy::validate() const {
  if (!(tail_epsilon > 0 && tail_epsilon < 1))
    throw std::invalid_argument("TruncationPolicy: tail_epsilon out of (0,1)");
  if (hard_cap < 1) throw std::invalid_argument("TruncationPolicy: hard_cap must be >= 1");
  if (!(z_max > 0 && z_max < 1))
    throw std::invalid_argument("TruncationPolicy: z_max out of (0,1)");
}

namespace {

// Upper bound on the mass of the negative-binomial tail starting at index N:
// term(N) * 1/(1 - rho) with rho the (decreasing) term ratio at N, valid once
// rho < 1.
double neg_binomial_tail_bound(double z, int k, std::size_t N) {
  const double rho = z * (static_cast<double>(k) + static_cast<double>(N)) /
                     (static_cast<double>(N) + 1.0);
  if (rho >= 1.0) return 1.0;
  double log_term = k * std::log1p(-z) + static_cast<double>(N) * std::log(z) +
                    std::lgamma(static_cast<double>(k) + N) - std::lgamma(N + 1.0) -
                    std::lgamma(static_cast<double>(k));
  return std::exp(log_term) / (1.0 - rho);
}

}  // namespace

std::size_t truncation_length(double z, int n_s0, const TruncationPolicy& policy) {
  policy.validate();
  if (n_s0 < 0) throw std::invalid_argument("truncation_length: n_s0 must be >= 0");
  if (!(z >= 0)) throw std::invalid_argument("truncation_length: z must be >= 0");
  if (z >= policy.z_max)
    throw std::invalid_argument("truncation_length: z too close to 1 (policy z_max = " +
                                std::to_string(policy.z_max) + ")");
  if (z == 0) return 1;
  const int k = n_s0 + 1;
  // geometric case has the exact tail z^N; otherwise bracket on the bound
  std::size_t lo = 1, hi = 2;
  while (neg_binomial_tail_bound(z, k, hi) >= policy.tail_epsilon) {
    if (hi >= policy.hard_cap) return policy.hard_cap;
    hi = std::min(hi * 2, policy.hard_cap);
  }
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (neg_binomial_tail_bound(z, k, mid) < policy.tail_epsilon)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

AmplitudeState AmplitudeState::single_pair(ModeSetup setup, double tau, TimeConvention conv,
                                           std::vector<std::complex<double>> values,
                                           DistOrigin origin) {
  if (values.empty()) throw std::invalid_argument("AmplitudeState: empty amplitude vector");
  if (!setup.pump_unbounded() &&
      values.size() > static_cast<std::size_t>(setup.n_p0) + 1)
    throw std::invalid_argument("AmplitudeState: index exceeds pump occupation");
  AmplitudeState s;
  s.setup_ = setup;
  s.tau_ = tau;
  s.conv_ = conv;
  s.layout_ = Layout::SinglePair;
  s.origin_ = origin;
  s.extent_ = static_cast<int>(values.size()) - 1;
  s.values_ = std::move(values);
  double n2 = s.norm_sq();
  if (std::abs(n2 - 1.0) > kNormTol)
    throw std::invalid_argument("AmplitudeState: not normalized (|c|^2 = " +
                                std::to_string(n2) + ")");
  return s;
}

AmplitudeState AmplitudeState::two_pair(ModeSetup setup, double tau, TimeConvention conv,
                                        std::vector<std::complex<double>> values, int extent,
                                        DistOrigin origin) {
  if (!setup.two_pair())
    throw std::invalid_argument("AmplitudeState: two-pair state needs n_sbar0");
  if (!setup.pump_unbounded() && extent > setup.n_p0)
    throw std::invalid_argument("AmplitudeState: extent exceeds pump occupation");
  if (values.size() != tri_size(extent))
    throw std::invalid_argument("AmplitudeState: triangular size mismatch");
  AmplitudeState s;
  s.setup_ = setup;
  s.tau_ = tau;
  s.conv_ = conv;
  s.layout_ = Layout::TwoPair;
  s.origin_ = origin;
  s.extent_ = extent;
  s.values_ = std::move(values);
  double n2 = s.norm_sq();
  if (std::abs(n2 - 1.0) > kNormTol)
    throw std::invalid_argument("AmplitudeState: not normalized (|c|^2 = " +
                                std::to_string(n2) + ")");
  return s;
}

std::complex<double> AmplitudeState::amp(int n) const {
  if (layout_ != Layout::SinglePair)
    throw std::logic_error("AmplitudeState: single-index access on two-pair state");
  if (n < 0 || n > extent_) return {0.0, 0.0};
  return values_[static_cast<std::size_t>(n)];
}

std::complex<double> AmplitudeState::amp(int n, int m) const {
  if (layout_ != Layout::TwoPair)
    throw std::logic_error("AmplitudeState: two-index access on single-pair state");
  if (n < 0 || m < 0 || n + m > extent_) return {0.0, 0.0};
  return values_[tri_index(extent_, n, m)];
}

double AmplitudeState::norm_sq() const {
  double s = 0;
  for (const auto& c : values_) s += std::norm(c);
  return s;
}

std::size_t AmplitudeState::tri_size(int extent) {
  const std::size_t N = static_cast<std::size_t>(extent);
  return (N + 1) * (N + 2) / 2;
}

std::size_t AmplitudeState::tri_index(int extent, int n, int m) {
  // row n holds m = 0 .. extent - n
  const std::size_t N = static_cast<std::size_t>(extent);
  const std::size_t nn = static_cast<std::size_t>(n);
  return nn * (N + 1) - nn * (nn - 1) / 2 + static_cast<std::size_t>(m);
}

ProbDist logical_dist(const AmplitudeState& state) {
  if (state.layout() != AmplitudeState::Layout::SinglePair)
    throw std::logic_error("logical_dist: single-pair states only");
  std::vector<double> w(state.values().size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::norm(state.values()[i]);
  return ProbDist(std::move(w), state.origin());
}

ProbDist reduced_cut_dist(const AmplitudeState& state, ReducedCut) {
  // every cut of the single-index pure state shares the logical distribution
  return logical_dist(state);
}

ProbDist reduced_signal_dist(const AmplitudeState& state) {
  if (state.layout() == AmplitudeState::Layout::SinglePair) return logical_dist(state);
  const int N = state.extent();
  std::vector<double> w(static_cast<std::size_t>(N) + 1, 0.0);
  for (int n = 0; n <= N; ++n)
    for (int m = 0; m + n <= N; ++m) w[n] += std::norm(state.amp(n, m));
  return ProbDist(std::move(w), state.origin());
}

ProbDist reduced_antisignal_dist(const AmplitudeState& state) {
  if (state.layout() != AmplitudeState::Layout::TwoPair)
    throw std::logic_error("reduced_antisignal_dist: two-pair states only");
  const int N = state.extent();
  std::vector<double> w(static_cast<std::size_t>(N) + 1, 0.0);
  for (int n = 0; n <= N; ++n)
    for (int m = 0; m + n <= N; ++m) w[m] += std::norm(state.amp(n, m));
  return ProbDist(std::move(w), state.origin());
}

ProbDist aggregate_signal_dist(std::span<const double> weights,
                               std::span<const AmplitudeState> sector_states) {
  if (weights.size() != sector_states.size() || weights.empty())
    throw std::invalid_argument("aggregate_signal_dist: weight/state count mismatch");
  std::size_t len = 0;
  for (const auto& s : sector_states) len = std::max(len, s.values().size());
  std::vector<double> w(len, 0.0);
  for (std::size_t k = 0; k < weights.size(); ++k) {
    const auto vals = sector_states[k].values();
    for (std::size_t n = 0; n < vals.size(); ++n)
      w[n] += weights[k] * std::norm(vals[n]);
  }
  return ProbDist(std::move(w), DistOrigin::Numeric);
}

ProbDist pump_occupation_dist(const AmplitudeState& state) {
  const auto& setup = state.setup();
  if (setup.pump_unbounded())
    throw std::logic_error("pump_occupation_dist: pump occupation undefined for analytic states");
  std::vector<double> w(static_cast<std::size_t>(setup.n_p0) + 1, 0.0);
  if (state.layout() == AmplitudeState::Layout::SinglePair) {
    for (int n = 0; n <= state.extent(); ++n)
      w[static_cast<std::size_t>(setup.n_p0 - n)] += std::norm(state.amp(n));
  } else {
    for (int n = 0; n <= state.extent(); ++n)
      for (int m = 0; m + n <= state.extent(); ++m)
        w[static_cast<std::size_t>(setup.n_p0 - n - m)] += std::norm(state.amp(n, m));
  }
  return ProbDist(std::move(w), state.origin());
}

}  // namespace tripdc
