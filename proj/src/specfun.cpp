#include "tripdc/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tripdc {

namespace {

// Stirling-series tail S(x) = sum B_{2k} / (2k (2k-1) x^{2k-1})
double stirling_tail(double x) {
  static constexpr std::array<double, 7> coef = {
      1.0 / 12,   -1.0 / 360,        1.0 / 1260, -1.0 / 1680,
      1.0 / 1188, -691.0 / 360360.0, 1.0 / 156};
  double s = 0, xp = x;
  const double x2 = x * x;
  for (double c : coef) {
    s += c / xp;
    xp *= x2;
  }
  return s;
}

// Gamma(x + 1/2) / Gamma(x) for x > 0, accurate to a few ulp uniformly.
double half_shift_gamma_ratio(double x) {
  double factor = 1.0;
  while (x < 12.0) {
    factor *= x / (x + 0.5);
    x += 1.0;
  }
  const double d = x * std::log1p(0.5 / x) + 0.5 * std::log(x) - 0.5 +
                   stirling_tail(x + 0.5) - stirling_tail(x);
  return factor * std::exp(d);
}

}  // namespace

double gamma_ratio_g(double n) {
  if (!(n >= 0)) throw std::invalid_argument("gamma_ratio_g: n must be >= 0");
  return std::numbers::sqrt2 * half_shift_gamma_ratio(0.5 * (n + 1.0));
}

double log_binomial(double top, double bottom) {
  if (!(top >= 0) || !(bottom >= 0) || bottom > top)
    throw std::invalid_argument("log_binomial: need 0 <= bottom <= top");
  return std::lgamma(top + 1.0) - std::lgamma(bottom + 1.0) -
         std::lgamma(top - bottom + 1.0);
}

EllipticModulus EllipticModulus::from_parameter(double m) {
  if (!(m >= 0.0 && m <= 1.0))
    throw std::invalid_argument("EllipticModulus: parameter must lie in [0,1]");
  return EllipticModulus(m);
}

EllipticModulus EllipticModulus::single_pair(int n_p0, int n_s0) {
  if (n_p0 < 1 || n_s0 < 0)
    throw std::invalid_argument("EllipticModulus: invalid occupations");
  const double d = static_cast<double>(n_p0);
  return EllipticModulus(d / (d + n_s0 + 1.0));
}

EllipticModulus EllipticModulus::two_pair(int n_p0, int n_s0, int n_sbar0) {
  if (n_p0 < 1 || n_s0 < 0 || n_sbar0 < 0)
    throw std::invalid_argument("EllipticModulus: invalid occupations");
  const double d = static_cast<double>(n_p0);
  return EllipticModulus(d / (d + n_s0 + n_sbar0 + 2.0));
}

JacobiValues jacobi_elliptic(double u, const EllipticModulus& k) {
  const double m = k.parameter();
  if (!std::isfinite(u)) throw std::invalid_argument("jacobi_elliptic: non-finite u");
  if (m == 0.0) return {std::sin(u), std::cos(u), 1.0};
  if (m == 1.0) {
    const double sech = 1.0 / std::cosh(u);
    return {std::tanh(u), sech, sech};
  }
  // descending Landen chain (A&S 16.4): a_{i+1} = (a_i+b_i)/2, c = (a_i-b_i)/2
  constexpr int kMaxIter = 32;
  std::array<double, kMaxIter + 1> a{}, c{};
  a[0] = 1.0;
  c[0] = std::sqrt(m);
  double aa = 1.0, bb = std::sqrt(1.0 - m);
  int N = 0;
  while (N < kMaxIter && std::abs(c[N]) > 4e-16 * aa) {
    const double an = 0.5 * (aa + bb);
    c[N + 1] = 0.5 * (aa - bb);
    bb = std::sqrt(aa * bb);
    aa = an;
    a[N + 1] = an;
    ++N;
  }
  double phi = std::ldexp(aa * u, N);
  for (int i = N; i >= 1; --i) {
    const double s = std::clamp(c[i] / a[i] * std::sin(phi), -1.0, 1.0);
    phi = 0.5 * (phi + std::asin(s));
  }
  const double sn = std::sin(phi), cn = std::cos(phi);
  return {sn, cn, std::sqrt(1.0 - m * sn * sn)};
}

double jacobi_sn(double u, const EllipticModulus& k) { return jacobi_elliptic(u, k).sn; }
double jacobi_cn(double u, const EllipticModulus& k) { return jacobi_elliptic(u, k).cn; }
double jacobi_dn(double u, const EllipticModulus& k) { return jacobi_elliptic(u, k).dn; }
double jacobi_sd(double u, const EllipticModulus& k) {
  const auto v = jacobi_elliptic(u, k);
  return v.sn / v.dn;
}

double complete_elliptic_k(const EllipticModulus& k) {
  const double m = k.parameter();
  if (m >= 1.0) throw std::domain_error("complete_elliptic_k: parameter must be < 1");
  double a = 1.0, b = std::sqrt(1.0 - m);
  for (int i = 0; i < 64 && std::abs(a - b) > 4e-16 * a; ++i) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return std::numbers::pi / (2.0 * a);
}

namespace {

// Gauss-Kronrod 7-15 nodes/weights on [-1, 1] (positive half).
constexpr std::array<double, 8> kXgk = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr std::array<double, 4> kWg = {0.129484966168870, 0.279705391489277,
                                       0.381830050505119, 0.417959183673469};

struct GkEstimate {
  double value, error;
};

GkEstimate gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double resk = 0, resg = 0;
  for (int j = 0; j < 8; ++j) {
    const double dx = h * kXgk[j];
    double fv = (j == 7) ? f(c) : f(c - dx) + f(c + dx);
    resk += kWgk[j] * fv;
    if (j % 2 == 1) resg += kWg[j / 2] * fv;
  }
  return {resk * h, std::abs(resk - resg) * h};
}

double gk_adaptive(const std::function<double(double)>& f, double a, double b,
                   double abs_tol, int depth) {
  const auto est = gk15(f, a, b);
  if (est.error <= abs_tol || depth >= 30) return est.value;
  const double c = 0.5 * (a + b);
  return gk_adaptive(f, a, c, 0.5 * abs_tol, depth + 1) +
         gk_adaptive(f, c, b, 0.5 * abs_tol, depth + 1);
}

}  // namespace

double integrate_gk(const std::function<double(double)>& f, double a, double b,
                    double abs_tol) {
  if (!(b >= a)) throw std::invalid_argument("integrate_gk: need b >= a");
  if (a == b) return 0.0;
  return gk_adaptive(f, a, b, abs_tol, 0);
}

double elliptic_u_of_theta(double theta, int n_p0, int n_s0) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi / 2 + 1e-15))
    throw std::invalid_argument("elliptic_u_of_theta: theta outside [0, pi/2]");
  if (n_p0 < 1 || n_s0 < 0)
    throw std::invalid_argument("elliptic_u_of_theta: invalid occupations");
  const double A = n_p0, B = n_s0 + 1.0;
  return integrate_gk(
      [&](double t) {
        const double s = std::sin(t);
        return 1.0 / std::sqrt(A * s * s + B);
      },
      0.0, theta, 1e-10);
}

double theta_of_u(double u, int n_p0, int n_s0) {
  const auto k = EllipticModulus::single_pair(n_p0, n_s0);
  const double scale = std::sqrt(static_cast<double>(n_p0) + n_s0 + 1.0);
  const double x = scale * u;
  const double m = k.parameter();
  double s;
  if (m > 1.0 - 1e-12) {
    // sd -> sinh as the parameter approaches 1
    s = std::sqrt(1.0 - m) * std::sinh(x);
  } else {
    s = std::sqrt(1.0 - m) * jacobi_sd(x, k);
  }
  return std::asin(std::clamp(s, -1.0, 1.0));
}

double shannon_entropy_bits(const ProbDist& p) {
  double h = 0;
  for (double v : p.weights())
    if (v > 0) h -= v * std::log2(v);
  return std::max(h, 0.0);
}

double bhattacharyya_fidelity(const ProbDist& p, const ProbDist& q) {
  if (p.size() != q.size())
    throw std::invalid_argument("bhattacharyya_fidelity: mismatched support lengths");
  double s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::sqrt(p[i] * q[i]);
  return std::min(s, 1.0);
}

double digamma(double x) {
  if (!(x > 0)) throw std::invalid_argument("digamma: x must be > 0");
  double acc = 0;
  while (x < 12.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  // asymptotic: ln x - 1/(2x) - sum B_{2k} / (2k x^{2k})
  const double inv = 1.0 / x, inv2 = inv * inv;
  const double series =
      inv2 *
      (1.0 / 12 -
       inv2 * (1.0 / 120 -
               inv2 * (1.0 / 252 - inv2 * (1.0 / 240 - inv2 * (1.0 / 132 -
                                                               inv2 * 691.0 / 32760)))));
  return acc + std::log(x) - 0.5 * inv - series;
}

}  // namespace tripdc
