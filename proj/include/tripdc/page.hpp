#pragma once

#include "tripdc/fock.hpp"

namespace tripdc {

/// Subsystem dimensions for the Haar-average entropy formulas. The evaluator
/// swaps internally so either ordering may be passed.
struct PagePair {
  long long m = 1;  // radiation subsystem dimension
  long long n = 1;  // remainder dimension
};

struct PageValues {
  double entropy_nats = 0;      // S_{m,n}
  double information_nats = 0;  // ln m - S_{m,n}
};

/// S_{m,n} = sum_{k=n+1}^{mn} 1/k - (m-1)/(2n) for m <= n (swapped branch for
/// m > n), I_{m,n} = ln m - S_{m,n}. Harmonic sums go through digamma once
/// m n exceeds 1e6.
PageValues page_entropy_information(const PagePair& pair);

/// Geometric reference distribution with z = nbar/(nbar+1).
ProbDist thermal_reference(double nbar, const TruncationPolicy& policy);

/// I = S_thermal(nbar_s) - S(rho_s) per sample, in bits.
std::vector<double> page_information_series(const std::vector<ProbDist>& signal_dists);

/// Analytic single-period variant: 0 below z*, S(p_<) - S(p_>) above.
double page_information_analytic(double z, int n_s0, const TruncationPolicy& policy);

struct EffectiveDimensions {
  double popescu = 1;         // (1+z_th)/(1-z_th) = 2 nbar + 1
  double variance_based = 1;  // 1 + Delta n
};

EffectiveDimensions effective_dimensions(const ProbDist& dist);

/// Nats-to-bits conversion factor 1/ln 2.
double bits_per_nat();

/// All divisors of n in increasing order.
std::vector<long long> divisors(long long n);

}  // namespace tripdc
