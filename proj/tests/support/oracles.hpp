#pragma once

// Test-only oracles, kept independent of the library evaluators they check:
// dense partial-transpose negativity, explicitly assembled structured density
// matrices, and a matrix-exponential beam-splitter transform.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>
#include <span>
#include <vector>

namespace tripdc::testing {

using Cd = std::complex<double>;

/// Sum of |negative eigenvalues| of the partial transpose over subsystem B of
/// rho acting on H_A (x) H_B, row index a*dimB + b.
inline double pt_negativity(const Eigen::MatrixXcd& rho, int dim_a, int dim_b) {
  Eigen::MatrixXcd pt(rho.rows(), rho.cols());
  for (int a = 0; a < dim_a; ++a)
    for (int b = 0; b < dim_b; ++b)
      for (int ap = 0; ap < dim_a; ++ap)
        for (int bp = 0; bp < dim_b; ++bp)
          pt(a * dim_b + bp, ap * dim_b + b) = rho(a * dim_b + b, ap * dim_b + bp);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(pt);
  double neg = 0;
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) < 0) neg -= es.eigenvalues()(i);
  return neg;
}

inline double pt_log_negativity(const Eigen::MatrixXcd& rho, int dim_a, int dim_b) {
  return std::log2(1.0 + 2.0 * pt_negativity(rho, dim_a, dim_b));
}

/// rho = sum_{n,m} c_n c_m^* |n,n><m,m| for the single-index correlated state.
inline Eigen::MatrixXcd correlated_pair_rho(std::span<const Cd> c) {
  const int N = static_cast<int>(c.size());
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(N * N, N * N);
  for (int n = 0; n < N; ++n)
    for (int m = 0; m < N; ++m)
      rho(n * N + n, m * N + m) = c[n] * std::conj(c[m]);
  return rho;
}

/// Diagonal rho = sum_n p_n |n,n><n,n| (signal/idler after the pump trace).
inline Eigen::MatrixXcd diagonal_pair_rho(std::span<const double> p) {
  const int N = static_cast<int>(p.size());
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(N * N, N * N);
  for (int n = 0; n < N; ++n) rho(n * N + n, n * N + n) = p[n];
  return rho;
}

/// Pair-vs-pair state after the pump trace: matrix elements
/// a_n b_m a_{n'} b_{m'} delta_{n+m, n'+m'} on (n) (x) (m).
inline Eigen::MatrixXcd pair_vs_pair_rho(std::span<const double> a,
                                         std::span<const double> b) {
  const int Na = static_cast<int>(a.size()), Nb = static_cast<int>(b.size());
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(Na * Nb, Na * Nb);
  for (int n = 0; n < Na; ++n)
    for (int m = 0; m < Nb; ++m)
      for (int np = 0; np < Na; ++np)
        for (int mp = 0; mp < Nb; ++mp)
          if (n + m == np + mp)
            rho(n * Nb + m, np * Nb + mp) = a[n] * b[m] * a[np] * b[mp];
  return rho;
}

/// Signal/spectator state from the maximally entangled preparation, after the
/// pump/idler trace: (1/2) sum_n (c_seed_n |n_s0+n,0> + c_vac_n |n,1>)(h.c.),
/// with the spectator occupations {0, n_c0} mapped onto a two-level index.
inline Eigen::MatrixXcd entangled_ic_rho(std::span<const double> c_vac,
                                         std::span<const double> c_seed, int n_s0) {
  const int N = static_cast<int>(std::min(c_vac.size(), c_seed.size()));
  const int dim_s = n_s0 + N;
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim_s * 2, dim_s * 2);
  for (int n = 0; n < N; ++n) {
    const int i_seed = (n_s0 + n) * 2 + 0, i_vac = n * 2 + 1;
    rho(i_seed, i_seed) += 0.5 * c_seed[n] * c_seed[n];
    rho(i_vac, i_vac) += 0.5 * c_vac[n] * c_vac[n];
    rho(i_seed, i_vac) += 0.5 * c_seed[n] * c_vac[n];
    rho(i_vac, i_seed) += 0.5 * c_vac[n] * c_seed[n];
  }
  return rho;
}

/// (pump, idler) vs signal with the entangled preparation: incoherent half
/// sum of the two branch projectors (the spectator trace removes the cross
/// terms).
inline Eigen::MatrixXcd pibars_entangled_rho(std::span<const double> c_vac,
                                             std::span<const double> c_seed, int n_s0) {
  const int N = static_cast<int>(std::min(c_vac.size(), c_seed.size()));
  const int dim_b = n_s0 + N;  // signal occupations
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(N * dim_b, N * dim_b);
  for (int n = 0; n < N; ++n)
    for (int m = 0; m < N; ++m) {
      rho(n * dim_b + (n_s0 + n), m * dim_b + (n_s0 + m)) +=
          0.5 * c_seed[n] * c_seed[m];
      rho(n * dim_b + n, m * dim_b + m) += 0.5 * c_vac[n] * c_vac[m];
    }
  return rho;
}

/// e^{-i H_bs} on the fixed total-occupation sector, H_bs the hopping
/// generator theta (a_s^dag a_c + a_s a_c^dag). Returns the amplitude of
/// |k>_s |total-k>_c given the input |in_s>_s |in_c>_c.
inline Eigen::VectorXcd bs_sector_transform(int in_s, int in_c, double theta) {
  const int total = in_s + in_c;
  const int dim = total + 1;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (int k = 0; k + 1 <= total; ++k) {
    // <k+1, total-k-1| a_s^dag a_c |k, total-k>
    const double amp = std::sqrt((k + 1.0) * (total - k));
    h(k + 1, k) += amp;
    h(k, k + 1) += amp;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  Eigen::VectorXcd in = Eigen::VectorXcd::Zero(dim);
  in(in_s) = 1.0;
  const Eigen::VectorXcd proj = es.eigenvectors().transpose() * in;
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
  for (int j = 0; j < dim; ++j)
    out += std::exp(Cd(0.0, -theta * es.eigenvalues()(j))) * es.eigenvectors().col(j) *
           proj(j);
  return out;
}

/// Signal/infaller state after scattering one late quantum off each
/// squeezed-pair component: rho on s (x) c occupations (both 0..N+1).
inline Eigen::MatrixXcd bs_scattering_rho(std::span<const double> c_vac, double theta) {
  const int N = static_cast<int>(c_vac.size());
  const int dim = N + 1;  // occupations 0..N (s) and 0..N (c); total n+1 <= N
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim * dim, dim * dim);
  for (int n = 0; n < N; ++n) {
    const auto f = bs_sector_transform(n, 1, theta);
    for (int k = 0; k <= n + 1; ++k)
      for (int l = 0; l <= n + 1; ++l)
        rho(k * dim + (n + 1 - k), l * dim + (n + 1 - l)) +=
            c_vac[n] * c_vac[n] * f(k) * std::conj(f(l));
  }
  return rho;
}

/// Deterministic RNG for property-style tests.
inline std::mt19937_64 test_rng(std::uint64_t seed = 0x5eed5eedULL) {
  return std::mt19937_64(seed);
}

/// Simple adaptive Simpson integrator, independent of the library quadrature.
template <typename F>
double simpson_adaptive(F f, double a, double b, double tol, int depth = 0) {
  const double c = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fc = f(c);
  const double s = (b - a) / 6.0 * (fa + 4 * fc + fb);
  const double d = 0.5 * (a + c), e = 0.5 * (c + b);
  const double s2 = (b - a) / 12.0 * (fa + 4 * f(d) + 2 * fc + 4 * f(e) + fb);
  if (depth > 24 || std::abs(s2 - s) < 15 * tol) return s2 + (s2 - s) / 15.0;
  return simpson_adaptive(f, a, c, 0.5 * tol, depth + 1) +
         simpson_adaptive(f, c, b, 0.5 * tol, depth + 1);
}

}  // namespace tripdc::testing
