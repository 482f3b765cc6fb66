#include "tripdc/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tripdc/specfun.hpp"

namespace tripdc {

namespace {

constexpr double kZGuard = 1.0 - 1e-6;

void check_z(double z) {
  if (!(z >= 0.0 && z <= kZGuard))
    throw std::invalid_argument("channel: z outside [0, 1 - 1e-6]");
}

// sum_{n>=0} z^n (n+1) log2(n+1) and sum_{n>=0} z^n (n+1)(n+2) log2(n+1),
// streamed with a geometric tail criterion so z within 1e-6 of 1 stays exact
// to ~1e-12 relative.
struct ChiSeries {
  double linear = 0;     // (n+1) log2(n+1) weights
  double quadratic = 0;  // (n+1)(n+2) log2(n+1) weights
};

ChiSeries chi_series(double z) {
  ChiSeries out;
  if (z <= 0.0) return out;
  double zn = 1.0;
  double c_lin = 0, c_quad = 0;  // Kahan compensation
  const double tail_scale = 1.0 - z;
  for (std::size_t n = 0;; ++n) {
    const double l = std::log2(n + 1.0);
    const double t_lin = zn * (n + 1.0) * l;
    const double t_quad = zn * (n + 1.0) * (n + 2.0) * l;
    double y = t_lin - c_lin, t = out.linear + y;
    c_lin = (t - out.linear) - y;
    out.linear = t;
    y = t_quad - c_quad;
    t = out.quadratic + y;
    c_quad = (t - out.quadratic) - y;
    out.quadratic = t;
    if (n > 8 && t_quad < 1e-17 * tail_scale * (out.quadratic + 1.0)) break;
    if (n > 400000000) throw std::runtime_error("chi series did not converge");
    zn *= z;
    if (zn == 0.0) break;
  }
  return out;
}

}  // namespace

ProbDist stimulated_dist(double z, int m_init, const TruncationPolicy& policy) {
  if (m_init < 0) throw std::invalid_argument("stimulated_dist: m_init must be >= 0");
  if (z >= policy.z_max)
    throw std::invalid_argument("stimulated_dist: z too close to 1 (policy z_max)");
  const std::size_t excess = truncation_length(z, m_init, policy);
  std::vector<double> w(static_cast<std::size_t>(m_init) + excess, 0.0);
  if (z == 0.0) {
    w[m_init] = 1.0;
  } else {
    const double log_z = std::log(z), log_1mz = std::log1p(-z);
    for (std::size_t n = 0; n < excess; ++n)
      w[m_init + n] = std::exp((m_init + 1.0) * log_1mz + n * log_z +
                               log_binomial(m_init + static_cast<double>(n),
                                            static_cast<double>(n)));
  }
  return ProbDist(std::move(w));
}

ComponentEntropies component_entropies(double z) {
  check_z(z);
  ComponentEntropies e;
  if (z == 0.0) return e;
  const double l1mz = std::log2(1.0 - z), lz = std::log2(z);
  e.s_k0 = -l1mz - z / (1.0 - z) * lz;
  const auto series = chi_series(z);
  e.s_k1 = -2.0 * l1mz - 2.0 * z / (1.0 - z) * lz -
           (1.0 - z) * (1.0 - z) * series.linear;
  return e;
}

namespace {

double chi_closed_form(double z) {
  if (z <= 0.0) return 1.0;
  const auto series = chi_series(z);
  const double one_m = 1.0 - z;
  return 1.0 - 0.5 * one_m * one_m * one_m * series.quadratic +
         one_m * one_m * series.linear;
}

}  // namespace

double holevo_chi(double z, Branch branch) {
  check_z(z);
  switch (branch) {
    case Branch::Short:
      return chi_closed_form(z);
    case Branch::Long:
      return chi_closed_form(long_branch_z(z));
    case Branch::Combined:
      return z <= crossover_z_star_limit() ? chi_closed_form(z)
                                           : chi_closed_form(long_branch_z(z));
  }
  throw std::logic_error("unknown branch");
}

namespace {

double entropy_bits_raw(std::span<const double> p) {
  double h = 0;
  for (double v : p)
    if (v > 0) h -= v * std::log2(v);
  return h;
}

double joint_mixture_chi(const ProbDist& s0, const ProbDist& sb0, const ProbDist& s1,
                         const ProbDist& sb1, double p_mix) {
  const std::size_t K = std::max(s0.size(), s1.size());
  const std::size_t M = std::max(sb0.size(), sb1.size());
  auto at = [](const ProbDist& d, std::size_t i) { return i < d.size() ? d[i] : 0.0; };
  double h_joint = 0;
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t m = 0; m < M; ++m) {
      const double v = p_mix * at(s0, k) * at(sb0, m) +
                       (1.0 - p_mix) * at(s1, k) * at(sb1, m);
      if (v > 0) h_joint -= v * std::log2(v);
    }
  }
  const double h_comp =
      p_mix * (entropy_bits_raw(s0.weights()) + entropy_bits_raw(sb0.weights())) +
      (1.0 - p_mix) * (entropy_bits_raw(s1.weights()) + entropy_bits_raw(sb1.weights()));
  return h_joint - h_comp;
}

}  // namespace

double holevo_chi_first_principles(double z, double p_mix, const TruncationPolicy& policy) {
  check_z(z);
  if (!(p_mix >= 0.0 && p_mix <= 1.0))
    throw std::invalid_argument("holevo_chi_first_principles: p_mix outside [0,1]");
  // '0': one particle sent (stimulated) with spontaneous anti-particles;
  // '1': the mirror image
  const auto stim = stimulated_dist(z, 1, policy);
  const auto spont = stimulated_dist(z, 0, policy);
  ChannelEnsemble ens{p_mix, stim, spont, spont, stim};
  return joint_mixture_chi(ens.dist_s_0, ens.dist_sbar_0, ens.dist_s_1, ens.dist_sbar_1,
                           p_mix);
}

std::vector<std::complex<double>> bs_coefficients(int n, int n_prime, double theta) {
  constexpr int kCap = 4096;
  if (n < 0 || n_prime < 0) throw std::invalid_argument("bs_coefficients: negative input");
  if (n + n_prime > kCap)
    throw std::invalid_argument("bs_coefficients: n + n' exceeds cap");
  const double c = std::cos(theta), s = std::sin(theta);
  static constexpr std::complex<double> minus_i_pow[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
  std::vector<std::complex<double>> f(static_cast<std::size_t>(n + n_prime) + 1,
                                      {0.0, 0.0});
  auto pw = [](double b, int e) { return e == 0 ? 1.0 : std::pow(b, e); };
  for (int q = 0; q <= n; ++q) {
    for (int qp = 0; qp <= n_prime; ++qp) {
      const int p = q + qp;
      const double mag =
          std::exp(log_binomial(n, q) + log_binomial(n_prime, qp) +
                   0.5 * (std::lgamma(p + 1.0) + std::lgamma(n + n_prime - p + 1.0) -
                          std::lgamma(n + 1.0) - std::lgamma(n_prime + 1.0)));
      const int cpow = n_prime + q - qp, spow = n - q + qp;
      f[p] += mag * pw(c, cpow) * pw(s, spow) * minus_i_pow[spow % 4];
    }
  }
  return f;
}

double bogoliubov_identity(double r, double theta) {
  const double alpha = std::cosh(r) * std::cos(theta);
  const double beta = std::sinh(r);
  const double gamma = std::cosh(r) * std::sin(theta);
  return alpha * alpha - beta * beta + gamma * gamma;
}

GrayBodyParams::GrayBodyParams(double angle) : theta(angle) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi / 2 + 1e-15))
    throw std::invalid_argument("GrayBodyParams: theta outside [0, pi/2]");
}

double GrayBodyParams::transmittance() const {
  const double c = std::cos(theta);
  return c * c;
}

double GrayBodyParams::absorptivity(double rapidity) const {
  const double ch = std::cosh(rapidity);
  return transmittance() * ch * ch;
}

ChannelEnsemble graybody_ensemble(double z, double theta, const TruncationPolicy& policy) {
  GrayBodyParams params(theta);  // validates theta
  if (z >= policy.z_max)
    throw std::invalid_argument("graybody_ensemble: z too close to 1 (policy z_max)");
  const double c2 = params.transmittance();
  const double s2 = 1.0 - c2;

  if (z == 0.0) {
    // analytic limits: the single late quantum is split cos^2/sin^2
    std::vector<double> s1{1.0}, sb1{0.0, 1.0}, sb0{1.0};
    std::vector<double> s0;
    if (s2 == 0.0)
      s0 = {1.0};
    else if (c2 == 0.0)
      s0 = {0.0, 1.0};
    else
      s0 = {c2, s2};
    return ChannelEnsemble{0.5, ProbDist(std::move(s0)), ProbDist(std::move(sb0)),
                           ProbDist(std::move(s1)), ProbDist(std::move(sb1))};
  }

  // send '1': signal sees only spontaneous pairs filtered by the splitter;
  // anti-signal carries the stimulated quantum
  const double w = z * c2 / (1.0 - z * s2);
  const double pref = (1.0 - z) / (1.0 - z * s2);
  const std::size_t K1 = c2 == 0.0 ? 1 : truncation_length(w, 0, policy);
  std::vector<double> s1(K1);
  {
    double wk = 1.0;
    for (std::size_t k = 0; k < K1; ++k) {
      s1[k] = pref * wk;
      wk *= w;
    }
  }
  // anti-signal stimulated branch m (1-z)^2 z^{m-1}: direct tail control on
  // the linear-in-m geometric series
  std::vector<double> sb1{0.0};
  {
    const double one_m = (1.0 - z) * (1.0 - z);
    double zp = 1.0;  // z^{m-1}
    for (std::size_t m = 1; m < policy.hard_cap; ++m) {
      sb1.push_back(m * one_m * zp);
      const double tail =
          one_m * zp * z * ((m + 1.0) / (1.0 - z) + z / ((1.0 - z) * (1.0 - z)));
      if (tail < 0.5 * policy.tail_epsilon) break;
      zp *= z;
    }
  }

  // send '0': the late quantum rides the signal arm; the exact resummation
  // carries a 1/(1 - z sin^2 theta) normalization on top of the printed
  // closed form. The k-weighted tail has its own (large) prefactor, so the
  // length comes from a direct bound rather than the negative-binomial one.
  std::vector<double> s0;
  if (c2 == 0.0) {
    s0 = {0.0, 1.0};  // perfect mirror reflects the quantum into the signal
  } else {
    const double lin = s2 / c2 * (1.0 - z) * (1.0 - z) / z;  // k-term weight
    const double norm = pref / (1.0 - z * s2);
    double wk = 1.0;
    for (std::size_t k = 0; k < policy.hard_cap; ++k) {
      s0.push_back(norm * wk * (c2 + k * lin));
      const double tail =
          norm * wk * w *
          (c2 / (1.0 - w) + lin * ((k + 1.0) / (1.0 - w) + w / ((1.0 - w) * (1.0 - w))));
      if (tail < 0.5 * policy.tail_epsilon) break;
      wk *= w;
    }
  }
  std::vector<double> sb0(truncation_length(z, 0, policy));
  {
    double zk = 1.0;
    for (std::size_t m = 0; m < sb0.size(); ++m) {
      sb0[m] = (1.0 - z) * zk;
      zk *= z;
    }
  }
  return ChannelEnsemble{0.5, ProbDist(std::move(s0)), ProbDist(std::move(sb0)),
                         ProbDist(std::move(s1)), ProbDist(std::move(sb1))};
}

double holevo_chi_of_ensemble(const ChannelEnsemble& ens, double p_mix) {
  if (!(p_mix >= 0.0 && p_mix <= 1.0))
    throw std::invalid_argument("holevo_chi_of_ensemble: p_mix outside [0,1]");
  return joint_mixture_chi(ens.dist_s_0, ens.dist_sbar_0, ens.dist_s_1, ens.dist_sbar_1,
                           p_mix);
}

double holevo_chi_graybody(double z, double theta, Branch branch,
                           const TruncationPolicy& policy) {
  check_z(z);
  double zb = z;
  switch (branch) {
    case Branch::Short:
      break;
    case Branch::Long:
      zb = long_branch_z(z);
      break;
    case Branch::Combined:
      zb = z <= crossover_z_star_limit() ? z : long_branch_z(z);
      break;
  }
  const auto ens = graybody_ensemble(zb, theta, policy);
  return holevo_chi_of_ensemble(ens, 0.5);
}

}  // namespace tripdc
