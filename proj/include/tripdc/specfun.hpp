#pragma once

#include <functional>

#include "tripdc/fock.hpp"

namespace tripdc {

/// g(n) = sqrt(2) Gamma(1 + n/2) / Gamma(1/2 + n/2), the coupling gamma ratio
/// with g(n-1) g(n) = n. Evaluated through a cancellation-free Stirling
/// difference so the identity holds to ~1e-15 up to n ~ 1e6.
double gamma_ratio_g(double n);

/// ln C(n + k, n) through log-gamma; stable for arguments up to 1e6.
double log_binomial(double top, double bottom);

/// Elliptic parameter in the convention of the depleted-pump flow: the stored
/// value is the *parameter* m of cn(u|m) (so m = k^2 in modulus notation).
/// Single pair: m = n_p0 / (n_p0 + n_s0 + 1); two pair:
/// m = n_p0 / (n_p0 + n_s0 + n_sbar0 + 2). Always < 1.
class EllipticModulus {
 public:
  static EllipticModulus from_parameter(double m);
  static EllipticModulus single_pair(int n_p0, int n_s0);
  static EllipticModulus two_pair(int n_p0, int n_s0, int n_sbar0);

  double parameter() const { return m_; }

 private:
  explicit EllipticModulus(double m) : m_(m) {}
  double m_;
};

struct JacobiValues {
  double sn, cn, dn;
};

/// Jacobi elliptic functions by the descending Landen / arithmetic-geometric
/// mean iteration.
JacobiValues jacobi_elliptic(double u, const EllipticModulus& k);
double jacobi_sn(double u, const EllipticModulus& k);
double jacobi_cn(double u, const EllipticModulus& k);
double jacobi_dn(double u, const EllipticModulus& k);
double jacobi_sd(double u, const EllipticModulus& k);  // sn/dn

/// Complete elliptic integral of the first kind K(m) via the AGM; this is the
/// exact quarter period of the depleted-pump elliptic flow.
double complete_elliptic_k(const EllipticModulus& k);

/// u(theta) = Integral_0^theta dtheta' / sqrt(n_p0 sin^2 theta' + n_s0 + 1),
/// adaptive Gauss-Kronrod, abs tol 1e-10. theta must lie in [0, pi/2].
double elliptic_u_of_theta(double theta, int n_p0, int n_s0);

/// Inverse of elliptic_u_of_theta through the real-parameter sd form
/// sin(theta) = sqrt(1 - m) sd(sqrt(n_p0 + n_s0 + 1) u | m).
double theta_of_u(double u, int n_p0, int n_s0);

/// Shannon entropy in bits, with 0 log 0 = 0. Input must be normalized.
double shannon_entropy_bits(const ProbDist& p);

/// sum_n sqrt(p_n q_n); the states compared here are diagonal in the same
/// basis, so this equals the fidelity Tr sqrt(sqrt(p) q sqrt(p)).
double bhattacharyya_fidelity(const ProbDist& p, const ProbDist& q);

double digamma(double x);

/// Adaptive Gauss-Kronrod 7-15 quadrature to absolute tolerance.
double integrate_gk(const std::function<double(double)>& f, double a, double b,
                    double abs_tol);

}  // namespace tripdc
