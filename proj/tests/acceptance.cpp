// Acceptance suite: one numbered criterion per run (or all), one pass/fail
// line each. Exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "support/oracles.hpp"
#include "tripdc/analytic.hpp"
#include "tripdc/channel.hpp"
#include "tripdc/dynamics.hpp"
#include "tripdc/entanglement.hpp"
#include "tripdc/page.hpp"
#include "tripdc/specfun.hpp"

using namespace tripdc;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;
const TruncationPolicy kPol{};

struct Check {
  std::string what;
  double measure;
  double bound;
  bool pass() const { return measure <= bound; }
};

std::vector<Check> g_checks;

void expect(std::string what, double measure, double bound) {
  g_checks.push_back({std::move(what), measure, bound});
}

std::vector<double> tau_range(double max, double step) {
  std::vector<double> g;
  for (double t = 0.0; t <= max + 1e-9; t += step) g.push_back(t);
  return g;
}

std::vector<double> truncated_magnitudes(double z, int ns0, int max_occ) {
  auto mag = short_time_magnitudes(z, ns0, kPol);
  if (mag.size() > static_cast<std::size_t>(max_occ) + 1)
    mag.resize(static_cast<std::size_t>(max_occ) + 1);
  double n2 = 0;
  for (double v : mag) n2 += v * v;
  for (double& v : mag) v /= std::sqrt(n2);
  return mag;
}

// 1. crossover constant in the large-pump limit
void criterion_1() {
  expect("z* limit vs 0.506407", std::abs(crossover_z_star_limit() - 0.506407), 1e-5);
  expect("bisection at n_p0 = 1e9 vs limit",
         std::abs(crossover_z_star(ModeSetup(1000000000, 0)) - crossover_z_star_limit()),
         1e-5);
}

// 2. log-negativity closed forms
void criterion_2() {
  for (double tau : {0.5, 1.0, 2.0}) {
    const double z = std::tanh(tau) * std::tanh(tau);
    expect("short-time E_N vs 2 tau/ln2 at tau=" + std::to_string(tau),
           std::abs(logneg_pump_idler_vs_signal(z, 0, Branch::Short, kPol) -
                    2.0 * tau / kLn2),
           1e-9);
  }
  {
    const double tau = 5.0;
    const double z = std::tanh(tau) * std::tanh(tau);
    const double offset =
        logneg_pump_idler_vs_signal(z, 0, Branch::Long, kPol) - 2.0 * tau / kLn2;
    expect("long-time asymptotic offset vs -0.53236", std::abs(offset + 0.53236), 1e-3);
  }
  for (double z : {0.2, 0.45}) {
    expect("pair-pair short vs log2((1+z)/(1-z)) at z=" + std::to_string(z),
           std::abs(logneg_pair_vs_pair(z, 0, 0, Branch::Short, kPol) -
                    std::log2((1 + z) / (1 - z))),
           1e-9);
  }
  for (double z : {0.6, 0.9}) {
    expect("pair-pair long vs log2(1+2f) at z=" + std::to_string(z),
           std::abs(logneg_pair_vs_pair(z, 0, 0, Branch::Long, kPol) -
                    std::log2(1 + 2 * f_of_z(z))),
           1e-9);
  }
}

// 3. Holevo capacity
void criterion_3() {
  expect("chi(0) = 1", std::abs(holevo_chi(0.0, Branch::Short) - 1.0), 0.0);
  const double zs = crossover_z_star_limit();
  expect("branch agreement at z*",
         std::abs(holevo_chi(zs, Branch::Short) - holevo_chi(zs, Branch::Long)), 1e-2);
  const double z1 = 1.0 - 1e-6;
  expect("terminal value agreement at z -> 1",
         std::abs(holevo_chi(z1, Branch::Short) - holevo_chi(z1, Branch::Long)), 1e-3);
  // full figure grid including the mirror column
  double mirror_dev = 0;
  for (double z = 0.0; z <= 0.9951; z += 0.005) {
    for (double th : {0.0, kPi / 8, kPi / 4, 3 * kPi / 8, 3.75 * kPi / 8})
      (void)holevo_chi_graybody(z, th, Branch::Combined, kPol);
    mirror_dev = std::max(
        mirror_dev,
        std::abs(holevo_chi_graybody(z, kPi / 2, Branch::Combined, kPol) - 1.0));
  }
  expect("chi(z, theta = pi/2) = 1 on the grid", mirror_dev, 1e-9);
}

// 4. Fock-pump dynamics events at n_p0 = 255
void criterion_4() {
  ModeSetup setup(255, 0);
  EvolutionConfig cfg;
  cfg.tau_grid = tau_range(5.0, 0.01);
  const auto states = evolve_single_pair(setup, cfg);
  const auto series = observables_from_states(states);
  const auto ev = detect_events(series);
  expect("population crossing tau vs 3.49",
         ev.population_crossing_tau ? std::abs(*ev.population_crossing_tau - 3.49) : 1e9,
         0.05);
  expect("pump minimum tau vs 4.39",
         ev.pump_minimum_tau ? std::abs(*ev.pump_minimum_tau - 4.39) : 1e9, 0.05);
  expect("pump depletion at the minimum vs 80%",
         ev.pump_depletion_at_minimum ? std::abs(*ev.pump_depletion_at_minimum - 0.80)
                                      : 1e9,
         0.03);
}

// 5. coherent-pump dynamics events at alpha^2 = 35
void criterion_5() {
  EvolutionConfig cfg;
  cfg.tau_grid = tau_range(0.8, 0.002);
  const auto res = evolve_coherent_pump(35.0, 0, cfg);
  const auto ev = detect_events(res.series);
  expect("effective-dimension crossing vs 0.34",
         ev.variance_crossing_tau ? std::abs(*ev.variance_crossing_tau - 0.34) : 1e9,
         0.02);
  expect("population crossing vs 0.41",
         ev.population_crossing_tau ? std::abs(*ev.population_crossing_tau - 0.41) : 1e9,
         0.02);
  expect("pump minimum vs 0.55",
         ev.pump_minimum_tau ? std::abs(*ev.pump_minimum_tau - 0.55) : 1e9, 0.02);
}

// 6. amplitude ODE vs dense propagator, all n_p0 <= 30
void criterion_6() {
  double worst = 0, drift = 0;
  for (int np0 = 1; np0 <= 30; ++np0) {
    ModeSetup setup(np0, 0);
    EvolutionConfig cfg;
    cfg.tau_grid = tau_range(5.0, 0.5);
    const auto states = evolve_single_pair(setup, cfg);
    for (const auto& st : states) {
      const auto ref = propagator_oracle(setup, st.tau());
      for (int n = 0; n <= np0; ++n)
        worst = std::max(worst, std::abs(st.amp(n) - ref.amp(n)));
      drift = std::max(drift, std::abs(st.norm_sq() - 1.0));
    }
  }
  expect("max amplitude deviation from the propagator", worst, 1e-8);
  expect("unitarity drift", drift, 1e-8);
}

// 7. closed-form log-negativity vs the dense partial-transpose oracle.
// Reported per evaluator family: the pure-state forms are exact; the
// pump-traced mixed-state forms drop the diagonal repopulation of the
// partial transpose and sit strictly above the oracle (for the pair-vs-pair
// state the partial transpose is in fact positive semidefinite).
void criterion_7() {
  double pure = 0, diag = 0, pair = 0, ent = 0, pibars = 0, bs = 0;
  for (double z : {0.2, 0.4, 0.6}) {
    for (int ns0 : {0, 1, 2, 5, 10}) {
      const auto mag = truncated_magnitudes(z, ns0, 10);
      std::vector<std::complex<double>> amps(mag.begin(), mag.end());
      const int d = static_cast<int>(mag.size());
      pure = std::max(
          pure, std::abs(logneg_correlated_pair_from_magnitudes(mag) -
                         testing::pt_log_negativity(testing::correlated_pair_rho(amps),
                                                    d, d)));
    }
    for (auto [a0, b0] : std::vector<std::pair<int, int>>{{0, 0}, {1, 0}, {2, 2}}) {
      const auto a = truncated_magnitudes(z, a0, 9);
      const auto b = truncated_magnitudes(z, b0, 9);
      pair = std::max(
          pair, std::abs(logneg_pair_vs_pair_from_magnitudes(a, b) -
                         testing::pt_log_negativity(testing::pair_vs_pair_rho(a, b),
                                                    static_cast<int>(a.size()),
                                                    static_cast<int>(b.size()))));
    }
    for (int ns0 : {1, 5, 10}) {
      const auto c0 = truncated_magnitudes(z, 0, 10);
      const auto cs = truncated_magnitudes(z, ns0, 10);
      const int N = static_cast<int>(std::min(c0.size(), cs.size()));
      ent = std::max(
          ent, std::abs(logneg_entangled_ic_from_magnitudes(c0, cs) -
                        testing::pt_log_negativity(testing::entangled_ic_rho(c0, cs, ns0),
                                                   ns0 + N, 2)));
      pibars = std::max(
          pibars,
          std::abs(logneg_pibars_entangled_from_magnitudes(c0, cs) -
                   testing::pt_log_negativity(testing::pibars_entangled_rho(c0, cs, ns0),
                                              N, ns0 + N)));
    }
    for (double th : {0.3, kPi / 4, 1.2}) {
      const auto c0 = truncated_magnitudes(z, 0, 9);
      const int dim = static_cast<int>(c0.size()) + 1;
      bs = std::max(
          bs, std::abs(logneg_bs_scattering_from_magnitudes(c0, th) -
                       testing::pt_log_negativity(testing::bs_scattering_rho(c0, th),
                                                  dim, dim)));
    }
    {
      const auto mag = truncated_magnitudes(z, 0, 10);
      std::vector<double> p(mag.size());
      for (std::size_t i = 0; i < p.size(); ++i) p[i] = mag[i] * mag[i];
      const int d = static_cast<int>(p.size());
      diag = std::max(diag,
                      testing::pt_log_negativity(testing::diagonal_pair_rho(p), d, d));
    }
  }
  expect("pump-idler vs signal (pure-state form) vs oracle", pure, 1e-8);
  expect("signal vs idler (diagonal form) vs oracle", diag, 1e-8);
  expect("pair vs pair vs oracle", pair, 1e-8);
  expect("entangled-preparation signal/spectator vs oracle", ent, 1e-8);
  expect("entangled-preparation (p,ibar)|s vs oracle", pibars, 1e-8);
  expect("beam-splitter scattering vs oracle", bs, 1e-8);
}

// 8. structural identities
void criterion_8() {
  double i3 = 0;
  for (int np0 : {5, 12, 20}) {
    EvolutionConfig cfg;
    cfg.tau_grid = {0.0, 0.5, 1.0, 2.0};
    for (const auto& st : evolve_single_pair(ModeSetup(np0, 0), cfg))
      i3 = std::max(i3, std::abs(mutual_and_tripartite_info(st).tripartite_bits));
  }
  expect("tripartite information I3 = 0", i3, 1e-10);

  double bid = 0;
  for (double r = 0.0; r <= 3.0; r += 0.25)
    for (double th = 0.0; th <= kPi / 2 + 1e-12; th += kPi / 16)
      bid = std::max(bid, std::abs(bogoliubov_identity(r, th) - 1.0));
  expect("alpha^2 - beta^2 + gamma^2 = 1", bid, 1e-12);

  double uni = 0;
  for (int n = 0; n <= 16; ++n)
    for (int np = 0; np + n <= 16; ++np)
      for (double th : {0.3, 0.9, 1.4}) {
        const auto f = bs_coefficients(n, np, th);
        double s = 0;
        for (const auto& c : f) s += std::norm(c);
        uni = std::max(uni, std::abs(s - 1.0));
      }
  expect("beam-splitter unitarity for n + n' <= 16", uni, 1e-12);

  double gid = 0;
  for (int n = 1; n <= 10000; ++n)
    gid = std::max(gid, std::abs(gamma_ratio_g(n - 1.0) * gamma_ratio_g(n) / n - 1.0));
  expect("g(n-1) g(n) = n for n <= 1e4", gid, 1e-12);
}

// 9. fidelity curve shape
void criterion_9() {
  double below_dev = 0;
  bool decreasing = true;
  double prev = 2.0;
  for (int i = 0; i < 100; ++i) {
    const double z = 0.0099 * (i + 1);
    const double f = fidelity_curve(z, 0);
    if (z <= crossover_z_star_limit()) {
      below_dev = std::max(below_dev, std::abs(f - 1.0));
      prev = f;
    } else {
      if (f >= prev) decreasing = false;
      prev = f;
    }
  }
  expect("F(z) = 1 below z*", below_dev, 0.0);
  expect("F(z) strictly decreasing above z*", decreasing ? 0.0 : 1.0, 0.5);
}

// 10. gray-body reductions
void criterion_10() {
  const auto ens = graybody_ensemble(0.5, 0.0, kPol);
  const auto spont = stimulated_dist(0.5, 0, kPol);
  const auto stim = stimulated_dist(0.5, 1, kPol);
  double dev = 0;
  for (std::size_t i = 0; i < std::min(ens.dist_s_1.size(), spont.size()); ++i) {
    dev = std::max(dev, std::abs(ens.dist_s_1[i] - spont[i]));
    dev = std::max(dev, std::abs(ens.dist_s_0[i] - spont[i]));
    dev = std::max(dev, std::abs(ens.dist_sbar_0[i] - spont[i]));
  }
  for (std::size_t i = 0; i < std::min(ens.dist_sbar_1.size(), stim.size()); ++i)
    dev = std::max(dev, std::abs(ens.dist_sbar_1[i] - stim[i]));
  expect("theta = 0 ensemble reduces to the stimulated/spontaneous forms", dev, 1e-10);

  expect("E_BS(z = 0, theta = pi/4) = 1",
         std::abs(logneg_bs_scattering(0.0, kPi / 4, kPol) - 1.0), 1e-10);
}

struct Criterion {
  int id;
  const char* name;
  void (*fn)();
};

const Criterion kCriteria[] = {
    {1, "crossover constant", criterion_1},
    {2, "log-negativity closed forms", criterion_2},
    {3, "Holevo capacity", criterion_3},
    {4, "Fock-pump dynamics events (n_p0 = 255)", criterion_4},
    {5, "coherent-pump dynamics events (alpha^2 = 35)", criterion_5},
    {6, "ODE vs dense propagator", criterion_6},
    {7, "entanglement PT oracle", criterion_7},
    {8, "structural identities", criterion_8},
    {9, "fidelity curve shape", criterion_9},
    {10, "gray-body reductions", criterion_10},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);
  int failed_criteria = 0;
  for (const auto& crit : kCriteria) {
    if (only != 0 && crit.id != only) continue;
    g_checks.clear();
    const auto t0 = std::chrono::steady_clock::now();
    crit.fn();
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool ok = true;
    for (const auto& c : g_checks) ok = ok && c.pass();
    std::printf("[%s] criterion %d: %s (%.2f s)\n", ok ? "PASS" : "FAIL", crit.id,
                crit.name, secs);
    for (const auto& c : g_checks)
      std::printf("    %s %s: %.3g (bound %.3g)\n", c.pass() ? "ok  " : "FAIL",
                  c.what.c_str(), c.measure, c.bound);
    if (!ok) ++failed_criteria;
  }
  return failed_criteria;
}
