#include "tripdc/dynamics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "tripdc/analytic.hpp"
#include "tripdc/specfun.hpp"

namespace tripdc {

void EvolutionConfig::validate() const {
  if (!(abs_tol > 0) || !(rel_tol > 0))
    throw std::invalid_argument("EvolutionConfig: tolerances must be > 0");
  if (tau_grid.empty() || tau_grid.front() != 0.0)
    throw std::invalid_argument("EvolutionConfig: tau grid must start at 0");
  for (std::size_t i = 1; i < tau_grid.size(); ++i)
    if (!(tau_grid[i] > tau_grid[i - 1]))
      throw std::invalid_argument("EvolutionConfig: tau grid must be strictly increasing");
  policy.validate();
}

namespace {

// Dormand-Prince 5(4) on d' = L d for a real skew coupling L (norm-preserving
// flow). Matrix-free: `apply` writes L*x into the output argument.
template <typename Apply>
class Rk45 {
 public:
  Rk45(Apply apply, std::size_t dim, double abs_tol, double rel_tol)
      : apply_(apply), abs_tol_(abs_tol), rel_tol_(rel_tol) {
    for (auto* v : {&k1_, &k2_, &k3_, &k4_, &k5_, &k6_, &k7_, &tmp_, &err_})
      v->assign(dim, 0.0);
  }

  // advance y from t to t_end; y updated in place
  void integrate_to(std::vector<double>& y, double& t, double t_end) {
    if (t_end <= t) return;
    if (h_ <= 0) h_ = 1e-4;
    apply_(y, k1_);  // FSAL seed
    while (t < t_end) {
      double h = std::min(h_, t_end - t);
      for (;;) {
        step(y, h);
        const double err = error_norm(y);
        if (err <= 1.0) {
          t += h;
          y.swap(tmp_);
          k1_.swap(k7_);  // FSAL
          h_ = h * std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
          break;
        }
        h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
        if (h < 1e-14 * std::max(1.0, std::abs(t)))
          throw std::runtime_error("integrator step underflow at tau = " + std::to_string(t));
      }
    }
  }

 private:
  void step(const std::vector<double>& y, double h) {
    const std::size_t n = y.size();
    auto axpy = [n](std::vector<double>& out, const std::vector<double>& y0,
                    std::initializer_list<std::pair<double, const std::vector<double>*>> terms,
                    double h) {
      for (std::size_t i = 0; i < n; ++i) {
        double acc = 0;
        for (const auto& [a, v] : terms) acc += a * (*v)[i];
        out[i] = y0[i] + h * acc;
      }
    };
    axpy(tmp_, y, {{1.0 / 5, &k1_}}, h);
    apply_(tmp_, k2_);
    axpy(tmp_, y, {{3.0 / 40, &k1_}, {9.0 / 40, &k2_}}, h);
    apply_(tmp_, k3_);
    axpy(tmp_, y, {{44.0 / 45, &k1_}, {-56.0 / 15, &k2_}, {32.0 / 9, &k3_}}, h);
    apply_(tmp_, k4_);
    axpy(tmp_, y,
         {{19372.0 / 6561, &k1_}, {-25360.0 / 2187, &k2_}, {64448.0 / 6561, &k3_},
          {-212.0 / 729, &k4_}},
         h);
    apply_(tmp_, k5_);
    axpy(tmp_, y,
         {{9017.0 / 3168, &k1_}, {-355.0 / 33, &k2_}, {46732.0 / 5247, &k3_},
          {49.0 / 176, &k4_}, {-5103.0 / 18656, &k5_}},
         h);
    apply_(tmp_, k6_);
    axpy(tmp_, y,
         {{35.0 / 384, &k1_}, {500.0 / 1113, &k3_}, {125.0 / 192, &k4_},
          {-2187.0 / 6784, &k5_}, {11.0 / 84, &k6_}},
         h);
    apply_(tmp_, k7_);
    // embedded 4th-order difference
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
    for (std::size_t i = 0; i < n; ++i)
      err_[i] = h * (e1 * k1_[i] + e3 * k3_[i] + e4 * k4_[i] + e5 * k5_[i] +
                     e6 * k6_[i] + e7 * k7_[i]);
  }

  double error_norm(const std::vector<double>& y_old) const {
    double s = 0;
    for (std::size_t i = 0; i < y_old.size(); ++i) {
      const double sc = abs_tol_ + rel_tol_ * std::max(std::abs(y_old[i]), std::abs(tmp_[i]));
      const double r = err_[i] / sc;
      s += r * r;
    }
    return std::sqrt(s / static_cast<double>(y_old.size()));
  }

  Apply apply_;
  double abs_tol_, rel_tol_, h_ = 0;
  std::vector<double> k1_, k2_, k3_, k4_, k5_, k6_, k7_, tmp_, err_;
};

// c_n = i^n * d_n restores the complex amplitudes from the gauged real flow
std::vector<std::complex<double>> ungauge(const std::vector<double>& d) {
  std::vector<std::complex<double>> c(d.size());
  static constexpr std::complex<double> ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (std::size_t n = 0; n < d.size(); ++n) c[n] = ipow[n % 4] * d[n];
  return c;
}

std::vector<double> single_pair_couplings(int n_p0, int n_s0, int extent, double scale) {
  std::vector<double> a(static_cast<std::size_t>(extent));
  for (int n = 0; n < extent; ++n)
    a[n] = std::sqrt(static_cast<double>(n_p0 - n) * (n + 1.0) * (n_s0 + n + 1.0)) / scale;
  return a;
}

}  // namespace

std::vector<AmplitudeState> evolve_single_pair(const ModeSetup& setup,
                                               const EvolutionConfig& cfg) {
  cfg.validate();
  if (setup.two_pair())
    throw std::invalid_argument("evolve_single_pair: setup carries n_sbar0");
  const double scale = setup.time_scale(cfg.convention) / setup.coupling;
  const int extent = setup.n_p0;
  const auto a = single_pair_couplings(setup.n_p0, setup.n_s0, extent, scale);

  auto apply = [&a, extent](const std::vector<double>& d, std::vector<double>& out) {
    // d'_n = A_n d_{n+1} - A_{n-1} d_{n-1}
    for (int n = 0; n <= extent; ++n) {
      double v = 0;
      if (n < extent) v += a[n] * d[n + 1];
      if (n > 0) v -= a[n - 1] * d[n - 1];
      out[n] = v;
    }
  };

  std::vector<double> d(static_cast<std::size_t>(extent) + 1, 0.0);
  d[0] = 1.0;
  Rk45 rk(apply, d.size(), cfg.abs_tol, cfg.rel_tol);

  std::vector<AmplitudeState> out;
  out.reserve(cfg.tau_grid.size());
  double t = 0;
  for (double tau : cfg.tau_grid) {
    rk.integrate_to(d, t, tau);
    out.push_back(AmplitudeState::single_pair(setup, tau, cfg.convention, ungauge(d)));
  }
  return out;
}

namespace {

struct TriangleApply {
  int N;       // extent: n + m <= N
  int n_p0;    // physical pump occupation
  int n_s0, n_sbar0;
  double scale;

  void operator()(const std::vector<double>& d, std::vector<double>& out) const {
    std::size_t i = 0;
    for (int n = 0; n <= N; ++n) {
      for (int m = 0; m <= N - n; ++m, ++i) {
        const double pump_up = static_cast<double>(n_p0 - n - m);
        const double pump_dn = static_cast<double>(n_p0 - n - m + 1);
        double v = 0;
        if (n + m < N) {
          v += std::sqrt(pump_up * (n + 1.0) * (n_s0 + n + 1.0)) *
               d[AmplitudeState::tri_index(N, n + 1, m)];
          v += std::sqrt(pump_up * (m + 1.0) * (n_sbar0 + m + 1.0)) *
               d[AmplitudeState::tri_index(N, n, m + 1)];
        }
        if (n > 0)
          v -= std::sqrt(pump_dn * n * (n_s0 + static_cast<double>(n))) *
               d[AmplitudeState::tri_index(N, n - 1, m)];
        if (m > 0)
          v -= std::sqrt(pump_dn * m * (n_sbar0 + static_cast<double>(m))) *
               d[AmplitudeState::tri_index(N, n, m - 1)];
        out[i] = v / scale;
      }
    }
  }
};

std::vector<std::complex<double>> ungauge_triangle(const std::vector<double>& d, int N) {
  std::vector<std::complex<double>> c(d.size());
  static constexpr std::complex<double> ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  std::size_t i = 0;
  for (int n = 0; n <= N; ++n)
    for (int m = 0; m <= N - n; ++m, ++i) c[i] = ipow[(n + m) % 4] * d[i];
  return c;
}

}  // namespace

std::vector<AmplitudeState> evolve_two_pair(const ModeSetup& setup,
                                            const EvolutionConfig& cfg) {
  cfg.validate();
  if (!setup.two_pair())
    throw std::invalid_argument("evolve_two_pair: setup lacks n_sbar0");
  const double scale = setup.time_scale(cfg.convention) / setup.coupling;

  // The triangular domain is cut down when the run stays in the short-time
  // regime: the total n+m is negative-binomial with k = n_s0 + n_sbar0 + 2,
  // so its tail bound gives a safe extent. Depleted-pump runs use the full
  // domain.
  int extent = setup.n_p0;
  const double tau_max_scaled =
      cfg.tau_grid.back() * setup.time_scale(TimeConvention::ScaledTwoPair) /
      setup.time_scale(cfg.convention);
  const double z_max = std::tanh(tau_max_scaled) * std::tanh(tau_max_scaled);
  if (z_max < crossover_z_star_limit()) {
    TruncationPolicy tight = cfg.policy;
    tight.tail_epsilon = std::min(tight.tail_epsilon, 1e-14);
    const std::size_t len =
        truncation_length(z_max, setup.n_s0 + setup.n_sbar0.value_or(0) + 1, tight);
    extent = std::min<int>(setup.n_p0, static_cast<int>(2 * len + 16));
  }
  if (AmplitudeState::tri_size(extent) > cfg.policy.hard_cap)
    throw std::invalid_argument("evolve_two_pair: triangular domain exceeds hard_cap");

  TriangleApply apply{extent, setup.n_p0, setup.n_s0, setup.n_sbar0.value_or(0), scale};
  std::vector<double> d(AmplitudeState::tri_size(extent), 0.0);
  d[0] = 1.0;
  Rk45 rk(apply, d.size(), cfg.abs_tol, cfg.rel_tol);

  std::vector<AmplitudeState> out;
  out.reserve(cfg.tau_grid.size());
  double t = 0;
  for (double tau : cfg.tau_grid) {
    rk.integrate_to(d, t, tau);
    out.push_back(AmplitudeState::two_pair(setup, tau, cfg.convention,
                                           ungauge_triangle(d, extent), extent));
  }
  return out;
}

AmplitudeState propagator_oracle(const ModeSetup& setup, double tau, TimeConvention conv) {
  if (setup.n_p0 > 500)
    throw std::invalid_argument("propagator_oracle: n_p0 > 500 dense guard");
  if (setup.two_pair())
    throw std::invalid_argument("propagator_oracle: single-pair setups only");
  const int dim = setup.n_p0 + 1;
  const double scale = setup.time_scale(conv) / setup.coupling;
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);
  for (int n = 0; n < setup.n_p0; ++n) {
    const double an =
        std::sqrt(static_cast<double>(setup.n_p0 - n) * (n + 1.0) * (setup.n_s0 + n + 1.0)) /
        scale;
    H(n, n + 1) = an;
    H(n + 1, n) = an;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
  const Eigen::VectorXd& lam = es.eigenvalues();
  const Eigen::MatrixXd& Q = es.eigenvectors();
  Eigen::VectorXcd phase(dim);
  for (int j = 0; j < dim; ++j)
    phase(j) = std::exp(std::complex<double>(0.0, -lam(j) * tau)) * Q(0, j);
  Eigen::VectorXcd c = Q * phase;  // exp(-i H tau) e_0
  std::vector<std::complex<double>> vals(c.data(), c.data() + dim);
  return AmplitudeState::single_pair(setup, tau, conv, std::move(vals));
}

ObservableSeries observables_from_states(const std::vector<AmplitudeState>& states) {
  ObservableSeries s;
  const std::size_t T = states.size();
  for (auto* v : {&s.tau, &s.nbar_s, &s.nbar_p, &s.nbar_ibar, &s.var_s, &s.var_p,
                  &s.entropy_s_bits, &s.norm_drift})
    v->reserve(T);
  const bool two = !states.empty() && states.front().layout() == AmplitudeState::Layout::TwoPair;
  if (two) {
    s.nbar_sbar.reserve(T);
    s.nbar_i.reserve(T);
  }
  for (const auto& st : states) {
    const auto& setup = st.setup();
    s.tau.push_back(st.tau());
    s.norm_drift.push_back(std::abs(st.norm_sq() - 1.0));
    if (!two) {
      double mean = 0, m2 = 0;
      for (int n = 0; n <= st.extent(); ++n) {
        const double p = std::norm(st.amp(n));
        mean += n * p;
        m2 += static_cast<double>(n) * n * p;
      }
      const double var = std::max(m2 - mean * mean, 0.0);
      s.nbar_s.push_back(setup.n_s0 + mean);
      s.nbar_p.push_back(setup.n_p0 - mean);
      s.nbar_ibar.push_back(mean);
      s.var_s.push_back(var);
      s.var_p.push_back(var);  // shared emitted-pair distribution
      s.entropy_s_bits.push_back(shannon_entropy_bits(logical_dist(st)));
    } else {
      double mn = 0, mm = 0, e_tot2 = 0;
      for (int n = 0; n <= st.extent(); ++n)
        for (int m = 0; m <= st.extent() - n; ++m) {
          const double p = std::norm(st.amp(n, m));
          mn += n * p;
          mm += m * p;
          const double tot = static_cast<double>(n) + m;
          e_tot2 += tot * tot * p;
        }
      const auto ps = reduced_signal_dist(st);
      const auto mo = mean_and_variance(ps);
      s.nbar_s.push_back(setup.n_s0 + mn);
      s.nbar_sbar.push_back(setup.n_sbar0.value_or(0) + mm);
      s.nbar_ibar.push_back(mn);
      s.nbar_i.push_back(mm);
      s.nbar_p.push_back(setup.n_p0 - mn - mm);
      s.var_s.push_back(mo.variance);
      const double tot_mean = mn + mm;
      s.var_p.push_back(std::max(e_tot2 - tot_mean * tot_mean, 0.0));
      s.entropy_s_bits.push_back(shannon_entropy_bits(ps));
    }
  }
  return s;
}

namespace {

// Fritsch-Carlson monotone cubic slopes on a local window
std::vector<double> pchip_slopes(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  std::vector<double> h(n - 1), del(n - 1), d(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x[i + 1] - x[i];
    del[i] = (y[i + 1] - y[i]) / h[i];
  }
  d[0] = del[0];
  d[n - 1] = del[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (del[i - 1] * del[i] <= 0) {
      d[i] = 0;
    } else {
      const double w1 = 2 * h[i] + h[i - 1], w2 = h[i] + 2 * h[i - 1];
      d[i] = (w1 + w2) / (w1 / del[i - 1] + w2 / del[i]);
    }
  }
  return d;
}

double pchip_eval(std::span<const double> x, std::span<const double> y,
                  const std::vector<double>& d, double t) {
  std::size_t i = 0;
  while (i + 2 < x.size() && t > x[i + 1]) ++i;
  const double h = x[i + 1] - x[i], s = (t - x[i]) / h;
  const double h00 = (1 + 2 * s) * (1 - s) * (1 - s), h10 = s * (1 - s) * (1 - s);
  const double h01 = s * s * (3 - 2 * s), h11 = s * s * (s - 1);
  return h00 * y[i] + h10 * h * d[i] + h01 * y[i + 1] + h11 * h * d[i + 1];
}

// root of the interpolated difference series inside [x[i], x[i+1]]
std::optional<double> locate_crossing(std::span<const double> x, std::span<const double> f) {
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    if (f[i] == 0.0) return x[i];
    if (f[i] * f[i + 1] < 0.0) {
      const std::size_t lo = i >= 1 ? i - 1 : i;
      const std::size_t hi = std::min(i + 2, x.size() - 1);
      std::span<const double> xs(x.data() + lo, hi - lo + 1);
      std::span<const double> fs(f.data() + lo, hi - lo + 1);
      const auto d = pchip_slopes(xs, fs);
      double a = x[i], b = x[i + 1];
      for (int it = 0; it < 100; ++it) {
        const double m = 0.5 * (a + b);
        if (pchip_eval(xs, fs, d, m) * pchip_eval(xs, fs, d, a) <= 0)
          b = m;
        else
          a = m;
      }
      return 0.5 * (a + b);
    }
  }
  return std::nullopt;
}

// local quadratic fit around the discrete extremum
std::optional<double> locate_first_minimum(std::span<const double> x,
                                           std::span<const double> y) {
  for (std::size_t i = 1; i + 1 < x.size(); ++i) {
    if (y[i] <= y[i - 1] && y[i] < y[i + 1]) {
      const std::size_t lo = i >= 2 ? i - 2 : 0;
      const std::size_t hi = std::min(i + 2, x.size() - 1);
      double sx = 0, sx2 = 0, sx3 = 0, sx4 = 0, sy = 0, sxy = 0, sx2y = 0;
      const double n = static_cast<double>(hi - lo + 1);
      for (std::size_t j = lo; j <= hi; ++j) {
        const double xx = x[j] - x[i], yy = y[j];
        sx += xx;
        sx2 += xx * xx;
        sx3 += xx * xx * xx;
        sx4 += xx * xx * xx * xx;
        sy += yy;
        sxy += xx * yy;
        sx2y += xx * xx * yy;
      }
      // solve normal equations for y = a + b x + c x^2
      Eigen::Matrix3d M;
      M << n, sx, sx2, sx, sx2, sx3, sx2, sx3, sx4;
      Eigen::Vector3d rhs(sy, sxy, sx2y);
      const Eigen::Vector3d abc = M.fullPivLu().solve(rhs);
      if (abc(2) <= 0) return x[i];
      return x[i] - abc(1) / (2 * abc(2));
    }
  }
  return std::nullopt;
}

}  // namespace

EventReport detect_events(const ObservableSeries& series) {
  EventReport r;
  const std::size_t T = series.tau.size();
  if (T < 3) return r;
  std::vector<double> pop_diff(T), var_diff(T);
  for (std::size_t i = 0; i < T; ++i) {
    pop_diff[i] = series.nbar_p[i] - series.nbar_s[i];
    var_diff[i] = series.var_p[i] - series.var_s[i];
  }
  r.population_crossing_tau = locate_crossing(series.tau, pop_diff);
  // skip the trivial var_p == var_s identity of single-pair runs
  double max_vd = 0;
  for (double v : var_diff) max_vd = std::max(max_vd, std::abs(v));
  if (max_vd > 1e-9) r.variance_crossing_tau = locate_crossing(series.tau, var_diff);
  r.pump_minimum_tau = locate_first_minimum(series.tau, series.nbar_p);
  if (r.pump_minimum_tau) {
    r.validity_horizon_tau = r.pump_minimum_tau;
    // depletion fraction at the minimum, from the interpolated series
    std::size_t j = 0;
    for (std::size_t i = 1; i < T; ++i)
      if (series.nbar_p[i] < series.nbar_p[j]) j = i;
    r.pump_depletion_at_minimum = 1.0 - series.nbar_p[j] / series.nbar_p.front();
  }
  return r;
}

CoherentEnsembleResult evolve_coherent_pump(double alpha_sq, int n_s0,
                                            const EvolutionConfig& cfg) {
  cfg.validate();
  if (!(alpha_sq > 0)) throw std::invalid_argument("evolve_coherent_pump: alpha_sq must be > 0");

  // Poisson sectors, symmetric window around the mode with cumulative mass
  // >= 1 - tail_epsilon
  const double eps = cfg.policy.tail_epsilon;
  const int mode = static_cast<int>(alpha_sq);
  auto log_pmf = [&](int k) {
    return -alpha_sq + k * std::log(alpha_sq) - std::lgamma(k + 1.0);
  };
  int lo = mode, hi = mode;
  double mass = std::exp(log_pmf(mode));
  while (mass < 1.0 - eps) {
    const double wl = lo > 0 ? std::exp(log_pmf(lo - 1)) : -1.0;
    const double wh = std::exp(log_pmf(hi + 1));
    if (wh >= wl) {
      ++hi;
      mass += wh;
    } else {
      --lo;
      mass += wl;
    }
    if (hi - lo > 100000)
      throw std::runtime_error("evolve_coherent_pump: sector window runaway");
  }

  CoherentEnsembleResult res;
  for (int k = lo; k <= hi; ++k) {
    res.sector_pump.push_back(k);
    res.sector_weight.push_back(std::exp(log_pmf(k)));
  }

  EvolutionConfig sector_cfg = cfg;
  sector_cfg.convention = TimeConvention::RawCoupling;  // common clock across sectors
  res.states.resize(res.sector_pump.size());
  for (std::size_t si = 0; si < res.sector_pump.size(); ++si) {
    const int np0 = res.sector_pump[si];
    if (np0 == 0) {
      // empty pump: trivial stationary sector
      std::vector<AmplitudeState> states;
      states.reserve(cfg.tau_grid.size());
      for (double tau : cfg.tau_grid)
        states.push_back(AmplitudeState::single_pair(ModeSetup(1, n_s0), tau,
                                                     TimeConvention::RawCoupling,
                                                     {std::complex<double>(1.0, 0.0)}));
      res.states[si] = std::move(states);
    } else {
      res.states[si] = evolve_single_pair(ModeSetup(np0, n_s0), sector_cfg);
    }
  }

  // fixed-order ensemble aggregation
  const std::size_t T = cfg.tau_grid.size();
  auto& s = res.series;
  s.tau = cfg.tau_grid;
  s.nbar_s.assign(T, 0.0);
  s.nbar_p.assign(T, 0.0);
  s.nbar_ibar.assign(T, 0.0);
  s.var_s.assign(T, 0.0);
  s.var_p.assign(T, 0.0);
  s.entropy_s_bits.assign(T, 0.0);
  s.norm_drift.assign(T, 0.0);
  res.deff_s.assign(T, 0.0);
  res.deff_p.assign(T, 0.0);
  res.entropy_thermal_bits.assign(T, 0.0);
  res.information_bits.assign(T, 0.0);

  std::vector<AmplitudeState> snapshot;
  for (std::size_t t = 0; t < T; ++t) {
    double es = 0, es2 = 0, ep = 0, ep2 = 0, drift = 0;
    std::size_t max_len = 0;
    for (std::size_t si = 0; si < res.states.size(); ++si)
      max_len = std::max(max_len, res.states[si][t].values().size());
    std::vector<double> ps_mix(max_len, 0.0);
    for (std::size_t si = 0; si < res.states.size(); ++si) {
      const auto& st = res.states[si][t];
      const double w = res.sector_weight[si];
      const int np0_sector = res.sector_pump[si];
      drift += w * std::abs(st.norm_sq() - 1.0);
      const auto vals = st.values();
      for (std::size_t n = 0; n < vals.size(); ++n) {
        const double p = std::norm(vals[n]);
        const double occ_s = static_cast<double>(n) + n_s0;
        const double occ_p = static_cast<double>(np0_sector) - static_cast<double>(n);
        es += w * p * occ_s;
        es2 += w * p * occ_s * occ_s;
        ep += w * p * occ_p;
        ep2 += w * p * occ_p * occ_p;
        ps_mix[n] += w * p;
      }
    }
    const double tot = [&] {
      double acc = 0;
      for (double v : ps_mix) acc += v;
      return acc;
    }();
    for (double& v : ps_mix) v /= tot;  // discarded Poisson tail folded back
    s.nbar_s[t] = es;
    s.nbar_p[t] = ep;
    s.nbar_ibar[t] = es - n_s0;
    s.var_s[t] = std::max(es2 - es * es, 0.0);
    s.var_p[t] = std::max(ep2 - ep * ep, 0.0);
    s.norm_drift[t] = drift;
    ProbDist mix(ps_mix);
    s.entropy_s_bits[t] = shannon_entropy_bits(mix);
    res.deff_s[t] = 1.0 + std::sqrt(s.var_s[t]);
    res.deff_p[t] = 1.0 + std::sqrt(s.var_p[t]);
    // thermal reference at the current mean signal occupation
    const double nb = s.nbar_s[t];
    double s_th = 0.0;
    if (nb > 0) {
      const double zt = nb / (nb + 1.0);
      s_th = -std::log2(1.0 - zt) - zt / (1.0 - zt) * std::log2(zt);
    }
    res.entropy_thermal_bits[t] = s_th;
    res.information_bits[t] = s_th - s.entropy_s_bits[t];
  }
  return res;
}

}  // namespace tripdc
