#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tripdc {

/// Time variable carried by amplitude states and observable series.
///   RawCoupling     : t' = r t
///   ScaledSinglePair: tau = sqrt(n_p0 + n_s0 + 1) r t
///   ScaledTwoPair   : tau = sqrt(n_p0 + n_s0 + n_sbar0 + 2) r t
enum class TimeConvention { RawCoupling, ScaledSinglePair, ScaledTwoPair };

/// Initial occupations of the pump/signal(/anti-signal) modes plus the
/// coupling constant r. All derived scales come from here.
struct ModeSetup {
  int n_p0 = 1;
  int n_s0 = 0;
  std::optional<int> n_sbar0{};  // present only for two-pair runs
  double coupling = 1.0;         // r, inverse time units

  ModeSetup(int np0, int ns0 = 0, std::optional<int> nsbar0 = std::nullopt,
            double r = 1.0);

  bool two_pair() const { return n_sbar0.has_value(); }
  double kappa() const { return 0.5 * (1.0 + n_s0); }
  double kappa_bar() const { return 0.5 * (1.0 + n_sbar0.value_or(0)); }
  double time_scale(TimeConvention c) const;

  /// Placeholder pump size for analytic (infinite-pump) states.
  static ModeSetup unbounded_pump(int ns0, std::optional<int> nsbar0 = std::nullopt);
  bool pump_unbounded() const;
};

enum class DistOrigin { Numeric, ShortTimeAnalytic, LongTimeAnalytic, ThermalReference };

/// Nonnegative, normalized distribution over an occupation index.
class ProbDist {
 public:
  static constexpr double kNormTol = 1e-9;

  ProbDist(std::vector<double> weights, DistOrigin origin = DistOrigin::Numeric);

  const std::vector<double>& weights() const { return w_; }
  DistOrigin origin() const { return origin_; }
  std::size_t size() const { return w_.size(); }
  double operator[](std::size_t i) const { return w_[i]; }

 private:
  std::vector<double> w_;
  DistOrigin origin_;
};

struct Moments {
  double mean = 0;
  double variance = 0;
};

Moments mean_and_variance(const ProbDist& p);

struct TruncationPolicy {
  double tail_epsilon = 1e-12;
  std::size_t hard_cap = 1000000;
  double z_max = 1.0 - 1e-6;

  void validate() const;
};

/// Number of leading entries of the generalized thermal distribution
/// (negative binomial with k = n_s0 + 1) that carry all but tail_epsilon of
/// the mass. Entries from the returned index on may be discarded.
std::size_t truncation_length(double z, int n_s0, const TruncationPolicy& policy);

/// Complex amplitude vector over the logical basis at a given scaled time.
/// Single pair: values[n] = c_n, n in [0, extent]. Two pair: triangular grid
/// c_{n,m} with n + m <= extent, stored row-major in n then m.
class AmplitudeState {
 public:
  enum class Layout { SinglePair, TwoPair };
  static constexpr double kNormTol = 1e-9;

  static AmplitudeState single_pair(ModeSetup setup, double tau, TimeConvention conv,
                                    std::vector<std::complex<double>> values,
                                    DistOrigin origin = DistOrigin::Numeric);
  static AmplitudeState two_pair(ModeSetup setup, double tau, TimeConvention conv,
                                 std::vector<std::complex<double>> values, int extent,
                                 DistOrigin origin = DistOrigin::Numeric);

  const ModeSetup& setup() const { return setup_; }
  double tau() const { return tau_; }
  TimeConvention convention() const { return conv_; }
  Layout layout() const { return layout_; }
  DistOrigin origin() const { return origin_; }
  std::span<const std::complex<double>> values() const { return values_; }

  /// Largest stored logical index (single pair) or largest stored n+m (two pair).
  int extent() const { return extent_; }

  std::complex<double> amp(int n) const;
  std::complex<double> amp(int n, int m) const;
  double norm_sq() const;

  static std::size_t tri_size(int extent);
  static std::size_t tri_index(int extent, int n, int m);

 private:
  AmplitudeState() = default;
  ModeSetup setup_{1, 0};
  double tau_ = 0;
  TimeConvention conv_ = TimeConvention::ScaledSinglePair;
  Layout layout_ = Layout::SinglePair;
  DistOrigin origin_ = DistOrigin::Numeric;
  int extent_ = 0;
  std::vector<std::complex<double>> values_;
};

/// The six one- and two-mode cuts of the single-pair pure state. All of them
/// share the distribution |c_n|^2 over the logical index.
enum class ReducedCut { SignalIdler, PumpIdler, PumpSignal, Signal, Idler, Pump };

ProbDist logical_dist(const AmplitudeState& state);
ProbDist reduced_cut_dist(const AmplitudeState& state, ReducedCut cut);

/// Reduced diagonal distribution of the signal mode indexed by emitted-pair
/// count n (single pair: |c_n|^2; two pair: marginal over m).
ProbDist reduced_signal_dist(const AmplitudeState& state);
/// Two-pair only: marginal over n, indexed by m.
ProbDist reduced_antisignal_dist(const AmplitudeState& state);
/// Weighted aggregate of per-sector signal distributions (pump sectors are
/// orthogonal, so the ensemble reduced state is the weighted diagonal sum).
ProbDist aggregate_signal_dist(std::span<const double> weights,
                               std::span<const AmplitudeState> sector_states);

/// Distribution over the physical pump occupation n_p0 - n (or n_p0 - n - m).
ProbDist pump_occupation_dist(const AmplitudeState& state);

}  // namespace tripdc
