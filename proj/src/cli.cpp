#include "tripdc/cli.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tripdc/analytic.hpp"
#include "tripdc/channel.hpp"
#include "tripdc/dynamics.hpp"
#include "tripdc/entanglement.hpp"
#include "tripdc/page.hpp"
#include "tripdc/specfun.hpp"

namespace tripdc {

namespace {

namespace fs = std::filesystem;

std::string out_path(const RunConfig& cfg, const std::string& name) {
  fs::create_directories(cfg.out_dir);
  return (fs::path(cfg.out_dir) / name).string();
}

void stamp(CsvTable& t, const RunConfig& cfg) {
  t.add_metadata("artifact_version", kArtifactVersion);
  t.add_metadata("config_hash", std::to_string(cfg.hash()));
}

nlohmann::ordered_json summary_header(const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["artifact_version"] = kArtifactVersion;
  j["config_hash"] = cfg.hash();
  j["config"] = nlohmann::ordered_json::parse(cfg.canonical_json());
  return j;
}

nlohmann::ordered_json event_json(const EventReport& ev) {
  nlohmann::ordered_json j;
  auto put = [&j](const char* key, const std::optional<double>& v) {
    if (v)
      j[key] = *v;
    else
      j[key] = nullptr;
  };
  put("population_crossing_tau", ev.population_crossing_tau);
  put("variance_crossing_tau", ev.variance_crossing_tau);
  put("pump_minimum_tau", ev.pump_minimum_tau);
  put("validity_horizon_tau", ev.validity_horizon_tau);
  put("pump_depletion_at_minimum", ev.pump_depletion_at_minimum);
  return j;
}

}  // namespace

std::string run_evolve(const RunConfig& cfg) {
  EvolutionConfig ecfg;
  ecfg.abs_tol = ecfg.rel_tol = 1e-13;  // CLI runs keep norm drift reportable
  ecfg.tau_grid = cfg.tau_grid();
  ecfg.policy = cfg.policy();

  ObservableSeries series;
  nlohmann::ordered_json extra;
  if (cfg.alpha_sq) {
    ecfg.convention = TimeConvention::RawCoupling;
    const auto res = evolve_coherent_pump(*cfg.alpha_sq, cfg.ns0, ecfg);
    series = res.series;
    CsvTable dyn({"tau", "nbar_s", "nbar_p", "var_s", "var_p", "entropy_s_bits",
                  "norm_drift", "deff_s", "deff_p", "entropy_thermal_bits",
                  "information_bits"});
    stamp(dyn, cfg);
    for (std::size_t i = 0; i < series.tau.size(); ++i)
      dyn.add_row({series.tau[i], series.nbar_s[i], series.nbar_p[i], series.var_s[i],
                   series.var_p[i], series.entropy_s_bits[i], series.norm_drift[i],
                   res.deff_s[i], res.deff_p[i], res.entropy_thermal_bits[i],
                   res.information_bits[i]});
    dyn.write(out_path(cfg, "evolve_coherent.csv"));
    extra["sectors"] = res.sector_pump.size();
  } else {
    ModeSetup setup(cfg.np0, cfg.ns0, cfg.nsbar0);
    ecfg.convention = cfg.nsbar0 ? TimeConvention::ScaledTwoPair
                                 : TimeConvention::ScaledSinglePair;
    const auto states = cfg.nsbar0 ? evolve_two_pair(setup, ecfg)
                                   : evolve_single_pair(setup, ecfg);
    series = observables_from_states(states);
    CsvTable dyn({"tau", "nbar_s", "nbar_p", "var_s", "var_p", "entropy_s_bits",
                  "norm_drift"});
    stamp(dyn, cfg);
    for (std::size_t i = 0; i < series.tau.size(); ++i)
      dyn.add_row({series.tau[i], series.nbar_s[i], series.nbar_p[i], series.var_s[i],
                   series.var_p[i], series.entropy_s_bits[i], series.norm_drift[i]});
    dyn.write(out_path(cfg, "evolve.csv"));
  }

  const auto events = detect_events(series);
  auto j = summary_header(cfg);
  j["events"] = event_json(events);
  for (auto& [k, v] : extra.items()) j[k] = v;
  const std::string text = j.dump(2) + "\n";
  write_text_file(out_path(cfg, cfg.alpha_sq ? "evolve_coherent_events.json"
                                             : "evolve_events.json"),
                  text);
  return text;
}

std::string run_analytic(const RunConfig& cfg) {
  const auto policy = cfg.policy();
  ModeSetup setup(cfg.np0, cfg.ns0, cfg.nsbar0);
  const auto schedule = EllipticSchedule::for_setup(setup);

  CsvTable t({"z", "tau", "nbar_short", "nbar_long_elliptic", "nbar_long_f",
              "f_z", "mean_combined", "fidelity", "information_analytic_bits"});
  stamp(t, cfg);
  for (double z : cfg.z_grid()) {
    const auto zt = SqueezeTime::from_z(z);
    const double nb_short = (cfg.ns0 + 1.0) * (z == 0 ? 0.0 : z / (1.0 - z));
    const double nb_long_ell = longtime_mean(zt.tau, setup, schedule);
    const double f = f_of_z(z);
    const double nb_long_f = (cfg.ns0 + 1.0) * f;
    const auto comb = combined_solution(z, cfg.ns0, policy);
    t.add_row({z, zt.tau, nb_short, nb_long_ell, nb_long_f, f,
               mean_and_variance(comb).mean, fidelity_curve(z, cfg.ns0),
               page_information_analytic(z, cfg.ns0, policy)});
  }
  t.write(out_path(cfg, "analytic.csv"));

  auto j = summary_header(cfg);
  j["z_star"] = crossover_z_star(setup);
  j["z_star_first_order"] = crossover_z_star_first_order(setup);
  j["z_star_limit"] = crossover_z_star_limit();
  j["k_e"] = schedule.k_e;
  j["quarter_period"] = schedule.quarter_period;
  j["shape_constant"] = schedule.shape_constant();
  j["tau_scale"] = schedule.tau_scale;
  const std::string text = j.dump(2) + "\n";
  write_text_file(out_path(cfg, "analytic_summary.json"), text);
  return text;
}

std::string run_logneg(const RunConfig& cfg) {
  const auto policy = cfg.policy();
  const int nsb = cfg.nsbar0.value_or(0);
  CsvTable t({"z", "pis_short", "pis_long", "pis_combined", "pair_short", "pair_long",
              "pair_combined", "ent_ic", "pibars_separable", "pibars_entangled"});
  stamp(t, cfg);
  for (double z : cfg.z_grid()) {
    t.add_row({z, logneg_pump_idler_vs_signal(z, cfg.ns0, Branch::Short, policy),
               logneg_pump_idler_vs_signal(z, cfg.ns0, Branch::Long, policy),
               logneg_pump_idler_vs_signal(z, cfg.ns0, Branch::Combined, policy),
               logneg_pair_vs_pair(z, cfg.ns0, nsb, Branch::Short, policy),
               logneg_pair_vs_pair(z, cfg.ns0, nsb, Branch::Long, policy),
               logneg_pair_vs_pair(z, cfg.ns0, nsb, Branch::Combined, policy),
               logneg_entangled_ic(z, cfg.ns0, policy),
               logneg_pump_idler_vs_signal_separable_ic(z, cfg.ns0, policy),
               logneg_pump_idler_vs_signal_entangled_ic(z, cfg.ns0, policy)});
  }
  t.write(out_path(cfg, "logneg.csv"));

  std::vector<double> thetas = cfg.theta_list;
  if (thetas.empty())
    thetas = {0.0, std::numbers::pi / 8, std::numbers::pi / 4, 3 * std::numbers::pi / 8,
              std::numbers::pi / 2};
  CsvTable bs({"z", "theta", "logneg_bs"});
  stamp(bs, cfg);
  for (double z : cfg.z_grid())
    for (double th : thetas) bs.add_row({z, th, logneg_bs_scattering(z, th, policy)});
  bs.write(out_path(cfg, "logneg_bs.csv"));

  auto j = summary_header(cfg);
  j["files"] = {"logneg.csv", "logneg_bs.csv"};
  return j.dump(2) + "\n";
}

std::string run_holevo(const RunConfig& cfg) {
  CsvTable t({"z", "chi_short", "chi_long", "chi_combined", "s_k0", "s_k1"});
  stamp(t, cfg);
  for (double z : cfg.z_grid()) {
    const auto se = component_entropies(z);
    t.add_row({z, holevo_chi(z, Branch::Short), holevo_chi(z, Branch::Long),
               holevo_chi(z, Branch::Combined), se.s_k0, se.s_k1});
  }
  t.write(out_path(cfg, "holevo.csv"));
  auto j = summary_header(cfg);
  j["files"] = {"holevo.csv"};
  return j.dump(2) + "\n";
}

std::string run_graybody(const RunConfig& cfg) {
  const auto policy = cfg.policy();
  std::vector<double> thetas = cfg.theta_list;
  if (thetas.empty())
    thetas = {0.0, std::numbers::pi / 8, std::numbers::pi / 4, 3 * std::numbers::pi / 8,
              3.75 * std::numbers::pi / 8, std::numbers::pi / 2};
  CsvTable t({"z", "theta", "chi"});
  stamp(t, cfg);
  for (double z : cfg.z_grid())
    for (double th : thetas)
      t.add_row({z, th, holevo_chi_graybody(z, th, Branch::Combined, policy)});
  t.write(out_path(cfg, "graybody.csv"));
  auto j = summary_header(cfg);
  j["files"] = {"graybody.csv"};
  return j.dump(2) + "\n";
}

std::string run_page(const RunConfig& cfg) {
  // static Haar-average curve over the divisor pairs of N = 291600
  constexpr long long kPageN = 291600;
  CsvTable t({"m", "ln_m", "entropy_nats", "information_nats"});
  stamp(t, cfg);
  for (long long m : divisors(kPageN)) {
    const auto pv = page_entropy_information({m, kPageN / m});
    t.add_row({static_cast<double>(m), std::log(static_cast<double>(m)),
               pv.entropy_nats, pv.information_nats});
  }
  t.write(out_path(cfg, "page_subsystem.csv"));

  // dynamical information from the coherent-pump run
  EvolutionConfig ecfg;
  ecfg.abs_tol = ecfg.rel_tol = 1e-13;
  ecfg.tau_grid = cfg.tau_grid();
  ecfg.policy = cfg.policy();
  ecfg.convention = TimeConvention::RawCoupling;
  const double a2 = cfg.alpha_sq.value_or(35.0);
  const auto res = evolve_coherent_pump(a2, cfg.ns0, ecfg);
  CsvTable dyn({"tau", "nbar_s", "nbar_p", "deff_s", "deff_p", "entropy_thermal_bits",
                "entropy_s_bits", "information_bits"});
  stamp(dyn, cfg);
  for (std::size_t i = 0; i < res.series.tau.size(); ++i)
    dyn.add_row({res.series.tau[i], res.series.nbar_s[i], res.series.nbar_p[i],
                 res.deff_s[i], res.deff_p[i], res.entropy_thermal_bits[i],
                 res.series.entropy_s_bits[i], res.information_bits[i]});
  dyn.write(out_path(cfg, "page_dynamic.csv"));

  const auto events = detect_events(res.series);
  auto j = summary_header(cfg);
  j["events"] = event_json(events);
  const std::string text = j.dump(2) + "\n";
  write_text_file(out_path(cfg, "page_events.json"), text);
  return text;
}

namespace {

struct SelfCheck {
  std::string name;
  bool pass;
  double measure;
};

}  // namespace

int run_selftest(std::string& out) {
  std::vector<SelfCheck> checks;
  auto add = [&checks](const std::string& name, double measure, double bound) {
    checks.push_back({name, measure < bound, measure});
  };

  // gamma-ratio identity
  double worst = 0;
  for (int n = 1; n <= 10000; ++n)
    worst = std::max(worst,
                     std::abs(gamma_ratio_g(n - 1) * gamma_ratio_g(n) / n - 1.0));
  add("gamma_ratio identity g(n-1)g(n)=n, n<=1e4", worst, 1e-12);

  // Jacobi identities on a deterministic grid
  worst = 0;
  for (int i = 0; i < 200; ++i) {
    const double u = -8.0 + 16.0 * i / 199.0;
    const double m = (i * 37 % 200) / 199.0;
    const auto k = EllipticModulus::from_parameter(m);
    const auto v = jacobi_elliptic(u, k);
    worst = std::max(worst, std::abs(v.sn * v.sn + v.cn * v.cn - 1.0));
    worst = std::max(worst, std::abs(v.dn * v.dn + m * v.sn * v.sn - 1.0));
  }
  add("jacobi identities sn^2+cn^2=1, dn^2+m sn^2=1", worst, 1e-12);

  // u(theta) round trip
  worst = 0;
  for (double th : {0.3, 0.8, 1.4}) {
    const double u = elliptic_u_of_theta(th, 255, 0);
    worst = std::max(worst, std::abs(theta_of_u(u, 255, 0) - th));
  }
  add("elliptic u(theta) round trip", worst, 1e-8);

  // ODE vs dense propagator
  worst = 0;
  for (int np0 : {8, 12, 20}) {
    ModeSetup setup(np0, 0);
    EvolutionConfig ecfg;
    ecfg.tau_grid = {0.0, 0.5, 1.0, 2.0};
    const auto states = evolve_single_pair(setup, ecfg);
    for (const auto& st : states) {
      const auto ref = propagator_oracle(setup, st.tau());
      for (int n = 0; n <= np0; ++n)
        worst = std::max(worst, std::abs(st.amp(n) - ref.amp(n)));
      worst = std::max(worst, std::abs(st.norm_sq() - 1.0));
    }
  }
  add("amplitude ODE vs dense propagator", worst, 1e-8);

  // dual-path Holevo assembly
  worst = 0;
  for (double z : {0.2, 0.5, 0.9}) {
    TruncationPolicy pol;
    worst = std::max(worst, std::abs(holevo_chi(z, Branch::Short) -
                                     holevo_chi_first_principles(z, 0.5, pol)));
  }
  add("holevo closed form vs entropy assembly", worst, 1e-9);

  // gray-body normalization and theta=0 reduction
  {
    TruncationPolicy pol;
    const auto ens = graybody_ensemble(0.5, std::numbers::pi / 4, pol);
    auto mass = [](const ProbDist& d) {
      double s = 0;
      for (double v : d.weights()) s += v;
      return std::abs(s - 1.0);
    };
    const double norm_err = std::max(std::max(mass(ens.dist_s_0), mass(ens.dist_s_1)),
                                     std::max(mass(ens.dist_sbar_0), mass(ens.dist_sbar_1)));
    add("gray-body distributions normalized", norm_err, 1e-9);

    const auto ens0 = graybody_ensemble(0.5, 0.0, pol);
    const auto spont = stimulated_dist(0.5, 0, pol);
    const auto stim = stimulated_dist(0.5, 1, pol);
    double red = 0;
    for (std::size_t i = 0; i < std::min(ens0.dist_s_1.size(), spont.size()); ++i)
      red = std::max(red, std::abs(ens0.dist_s_1[i] - spont[i]));
    for (std::size_t i = 0; i < std::min(ens0.dist_sbar_1.size(), stim.size()); ++i)
      red = std::max(red, std::abs(ens0.dist_sbar_1[i] - stim[i]));
    add("gray-body theta=0 reduction", red, 1e-10);
  }

  // beam-splitter unitarity
  worst = 0;
  for (int n = 0; n <= 8; ++n)
    for (int np = 0; np <= 8; ++np) {
      const auto f = bs_coefficients(n, np, 0.61);
      double s = 0;
      for (const auto& c : f) s += std::norm(c);
      worst = std::max(worst, std::abs(s - 1.0));
    }
  add("beam-splitter coefficient unitarity", worst, 1e-12);

  // tripartite information of an evolved state
  {
    EvolutionConfig ecfg;
    ecfg.tau_grid = {0.0, 1.0};
    const auto states = evolve_single_pair(ModeSetup(20, 0), ecfg);
    const auto mt = mutual_and_tripartite_info(states.back());
    add("tripartite information vanishes", std::abs(mt.tripartite_bits), 1e-10);
  }

  // crossover constant
  add("crossover limit constant",
      std::abs(crossover_z_star_limit() - 0.506407), 1e-5);

  std::ostringstream os;
  int failures = 0;
  for (const auto& c : checks) {
    os << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << "  (measure "
       << format_double(c.measure) << ")\n";
    if (!c.pass) ++failures;
  }
  os << (failures == 0 ? "all self-checks passed\n"
                       : std::to_string(failures) + " self-check(s) failed\n");
  out = os.str();
  return failures;
}

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"depleted-pump parametric down-conversion simulator"};
  app.set_config("--config", "", "read options from a TOML/INI config file");
  app.require_subcommand(1);

  RunConfig cfg;
  std::string z_spec = "0:0.99:0.01";
  double alpha_sq_flag = -1.0;
  int nsbar0_flag = -1;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--np0", cfg.np0, "initial pump occupation");
    sub->add_option("--ns0", cfg.ns0, "initial signal occupation");
    sub->add_option("--nsbar0", nsbar0_flag, "initial anti-signal occupation (two-pair)");
    sub->add_option("--alpha-sq", alpha_sq_flag, "coherent pump mean |alpha|^2");
    sub->add_option("--z-grid", z_spec, "squeezing grid a:b:step");
    sub->add_option("--theta", cfg.theta_list, "beam-splitter angles (radians)");
    sub->add_option("--tau-max", cfg.tau_max, "final scaled time");
    sub->add_option("--dtau", cfg.dtau, "output grid spacing");
    sub->add_option("--tail-eps", cfg.tail_eps, "truncation tail mass");
    sub->add_option("--out", cfg.out_dir, "output directory");
    sub->add_option("--format", cfg.format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--seed", cfg.seed, "reserved (dynamics are deterministic)");
  };

  auto* evolve = app.add_subcommand("evolve", "integrate the amplitude equations");
  evolve->add_flag("--coherent", "coherent-state pump (with --alpha-sq)");
  auto* analytic = app.add_subcommand("analytic", "closed-form distributions and crossover");
  auto* logneg = app.add_subcommand("logneg", "log-negativity curves");
  auto* holevo = app.add_subcommand("holevo", "Holevo capacity curves");
  auto* graybody = app.add_subcommand("graybody", "gray-body channel capacity grid");
  auto* page = app.add_subcommand("page", "Page entropy/information outputs");
  auto* selftest = app.add_subcommand("selftest", "oracle-equivalence checks");
  for (auto* sub : {evolve, analytic, logneg, holevo, graybody, page}) add_common(sub);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  // normalize into RunConfig
  if (nsbar0_flag >= 0) cfg.nsbar0 = nsbar0_flag;
  if (alpha_sq_flag > 0 || evolve->count("--coherent")) {
    if (alpha_sq_flag <= 0) {
      std::cerr << "config error: --coherent requires --alpha-sq > 0\n";
      return 2;
    }
    cfg.alpha_sq = alpha_sq_flag;
  }
  try {
    std::istringstream zs(z_spec);
    std::string part;
    std::vector<double> parts;
    while (std::getline(zs, part, ':')) parts.push_back(std::stod(part));
    if (parts.size() != 3) throw std::invalid_argument("need three fields");
    cfg.z_lo = parts[0];
    cfg.z_hi = parts[1];
    cfg.z_step = parts[2];
  } catch (const std::exception&) {
    std::cerr << "config error: --z-grid expects a:b:step\n";
    return 2;
  }

  try {
    if (app.got_subcommand(selftest)) {
      std::string report;
      const int failures = run_selftest(report);
      std::cout << report;
      return failures == 0 ? 0 : 1;
    }
    std::string summary;
    if (app.got_subcommand(evolve)) {
      cfg.command = "evolve";
      summary = run_evolve(cfg);
    } else if (app.got_subcommand(analytic)) {
      cfg.command = "analytic";
      summary = run_analytic(cfg);
    } else if (app.got_subcommand(logneg)) {
      cfg.command = "logneg";
      summary = run_logneg(cfg);
    } else if (app.got_subcommand(holevo)) {
      cfg.command = "holevo";
      summary = run_holevo(cfg);
    } else if (app.got_subcommand(graybody)) {
      cfg.command = "graybody";
      summary = run_graybody(cfg);
    } else if (app.got_subcommand(page)) {
      cfg.command = "page";
      summary = run_page(cfg);
    }
    std::cout << summary;
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace tripdc
