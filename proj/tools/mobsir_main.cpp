// mobsir command-line driver: single runs, alpha/quarantine sweeps,
// analytic queries, synthetic network generation, and the case study.
#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "mobsir/analysis.hpp"
#include "mobsir/dynamics.hpp"
#include "mobsir/errors.hpp"
#include "mobsir/io.hpp"
#include "mobsir/network.hpp"

namespace fs = std::filesystem;
using namespace mobsir;

namespace {

std::string sig9(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir + "': " + ec.message());
}

std::string metrics_json(const SummaryMetrics& m, const double* classical_diff) {
  std::string out = "{\n";
  out += "  \"peak_infected_fraction\": " + format_sig12(m.peak_infected_fraction) + ",\n";
  out += "  \"peak_day\": " + format_sig12(m.peak_day) + ",\n";
  out += "  \"attack_rate\": " + format_sig12(m.attack_rate);
  if (classical_diff != nullptr) {
    out += ",\n  \"classical_reference_max_abs_fraction_diff\": " +
           format_sig12(*classical_diff);
  }
  out += "\n}\n";
  return out;
}

int run_simulate(const std::string& config_path, const std::string& out_dir,
                 bool classical_reference) {
  const auto config = load_scenario(config_path);
  const auto net = realize_network(config);
  const auto initial = realize_initial_state(config, net);

  auto run_net = net;
  if (config.quarantine.percentile > 0.0) {
    run_net = apply_quarantine(net, config.quarantine);
  }

  const auto traj = simulate(run_net, config.params, initial, config.integrator);
  const auto metrics = summarize(traj);

  ensure_dir(out_dir);
  const fs::path out(out_dir);
  write_trajectory(traj, (out / "trajectory.csv").string());
  write_aggregate(traj, (out / "aggregate.csv").string());

  double diff = 0.0;
  if (classical_reference) {
    std::vector<Trajectory> classical(net.size());
    for (std::size_t i = 0; i < net.size(); ++i) {
      const double N = net.location(i).population;
      classical[i] = classical_sir(initial.S[i] / N, initial.I[i] / N,
                                   initial.R[i] / N, config.params.beta,
                                   config.params.mu, config.integrator);
    }
    Trajectory ref;
    ref.params = config.params;
    ref.network_fingerprint = traj.network_fingerprint;
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
      CompartmentState state;
      state.t = traj.states[k].t;
      state.S.resize(net.size());
      state.I.resize(net.size());
      state.R.resize(net.size());
      for (std::size_t i = 0; i < net.size(); ++i) {
        const double N = net.location(i).population;
        const auto& cs = classical[i].states[k];
        state.S[i] = cs.S[0] * N;
        state.I[i] = cs.I[0] * N;
        state.R[i] = cs.R[0] * N;
        diff = std::max(diff, std::abs(traj.states[k].S[i] / N - cs.S[0]));
        diff = std::max(diff, std::abs(traj.states[k].I[i] / N - cs.I[0]));
        diff = std::max(diff, std::abs(traj.states[k].R[i] / N - cs.R[0]));
      }
      ref.states.push_back(std::move(state));
    }
    write_trajectory(ref, (out / "classical_trajectory.csv").string());
    std::cout << "classical reference max abs fraction diff: " << sig9(diff)
              << "\n";
  }

  write_file_atomic((out / "metrics.json").string(),
                    metrics_json(metrics, classical_reference ? &diff : nullptr));
  std::cout << "wrote trajectory.csv, aggregate.csv, metrics.json to "
            << out_dir << "\n";
  return 0;
}

int run_sweep(const std::string& config_path, const std::vector<double>& alphas,
              const std::vector<double>& percentiles, const std::string& out_dir) {
  const auto config = load_scenario(config_path);
  const auto net = realize_network(config);
  const auto initial = realize_initial_state(config, net);
  const auto cells =
      sweep(net, config.params, alphas, percentiles, initial, config.integrator);

  ensure_dir(out_dir);
  const fs::path out(out_dir);
  write_sweep(cells, (out / "sweep.csv").string());

  std::string table = "alpha";
  for (double p : percentiles) table += ",p" + format_sig12(p);
  table += "\n";
  for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
    table += format_sig12(alphas[ai]);
    for (std::size_t pi = 0; pi < percentiles.size(); ++pi) {
      table += "," +
               format_sig12(cells[ai * percentiles.size() + pi].metrics.peak_day);
    }
    table += "\n";
  }
  write_file_atomic((out / "peak_days.csv").string(), table);

  std::cout << "wrote sweep.csv, peak_days.csv to " << out_dir << " ("
            << cells.size() << " cells)\n";
  return 0;
}

int run_case_study(const std::string& od_path, const std::string& pop_path,
                   const std::string& cases_path, const std::string& cutoff,
                   double r0, double mu, const std::vector<double>& alphas,
                   double horizon, double dt, const std::string& out_dir,
                   bool active_only) {
  const auto net = load_network(od_path, pop_path);
  const auto records = load_case_records(cases_path);
  const auto initial = load_initial_cases(cases_path, cutoff, net);

  std::string last_report;
  for (const auto& rec : records)
    if (rec.date > last_report) last_report = rec.date;

  IntegratorConfig integ{Scheme::RK4, dt, horizon};
  validate(integ);

  std::vector<Trajectory> runs;
  for (double alpha : alphas) {
    auto params = params_from_r0(r0, mu);
    params.alpha = alpha;
    validate(params);
    const double percentile = (1.0 - alpha) * 100.0;
    auto run_net = net;
    if (percentile > 0.0)
      run_net = apply_quarantine(net, {percentile});
    runs.push_back(simulate(run_net, params, initial, integ));
  }

  const int days = static_cast<int>(std::floor(horizon + 1e-9));
  std::string csv = "day,date,actual";
  for (double alpha : alphas) csv += ",alpha_" + format_sig12(alpha);
  csv += "\n";
  for (int d = 0; d <= days; ++d) {
    const std::string date = iso_date_add(cutoff, d);
    csv += std::to_string(d) + "," + date + ",";
    if (date <= last_report)
      csv += std::to_string(total_cases_at(records, date));
    const std::size_t k =
        static_cast<std::size_t>(std::llround(static_cast<double>(d) / dt));
    for (const auto& traj : runs) {
      const auto& state = traj.states.at(k);
      double total = 0.0;
      for (std::size_t i = 0; i < state.size(); ++i)
        total += active_only ? state.I[i] : state.I[i] + state.R[i];
      csv += "," + format_sig12(total);
    }
    csv += "\n";
  }

  ensure_dir(out_dir);
  write_file_atomic((fs::path(out_dir) / "forecast.csv").string(), csv);
  std::cout << "wrote forecast.csv to " << out_dir << " (" << alphas.size()
            << " alpha runs, " << days + 1 << " days)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mobility-coupled metapopulation SIR simulator"};
  app.require_subcommand(1);

  auto* sim = app.add_subcommand("simulate", "run one scenario and write trajectory, aggregate, and metrics files");
  std::string sim_config, sim_out;
  bool sim_classical = false;
  sim->add_option("--config", sim_config, "scenario JSON path")->required();
  sim->add_option("--out", sim_out, "output directory")->required();
  sim->add_flag("--classical-reference", sim_classical,
                "also run the uncoupled per-location classical model and report the max abs fraction difference");

  auto* swp = app.add_subcommand("sweep", "evaluate an alpha x quarantine-percentile grid");
  std::string swp_config, swp_out;
  std::vector<double> swp_alphas, swp_percentiles;
  swp->add_option("--config", swp_config, "scenario JSON path")->required();
  swp->add_option("--alphas", swp_alphas, "comma-separated alpha values")
      ->required()
      ->delimiter(',');
  swp->add_option("--percentiles", swp_percentiles,
                  "comma-separated quarantine percentiles")
      ->required()
      ->delimiter(',');
  swp->add_option("--out", swp_out, "output directory")->required();

  auto* r0cmd = app.add_subcommand("r0", "print the reproduction number for homogeneous parameters");
  double r0_beta = 0.0, r0_mu = 0.0, r0_alpha = 1.0;
  int r0_k = 0;
  double r0_n = 0.0;
  r0cmd->add_option("--beta", r0_beta, "infection rate")->required();
  r0cmd->add_option("--mu", r0_mu, "recovery rate")->required();
  r0cmd->add_option("--alpha", r0_alpha, "mobility scaling factor")->capture_default_str();
  r0cmd->add_option("--k", r0_k, "neighbours visited per location")->capture_default_str();
  r0cmd->add_option("--n", r0_n, "visitors hosted per location")->capture_default_str();

  auto* fscmd = app.add_subcommand("final-size", "print the epidemic final-size root for a reproduction number");
  double fs_r0 = 0.0, fs_tol = 1e-9;
  fscmd->add_option("--r0", fs_r0, "reproduction number")->required();
  fscmd->add_option("--tol", fs_tol, "bisection tolerance")->capture_default_str();

  auto* gen = app.add_subcommand("gen-network", "generate a synthetic network and write its CSV pair");
  SyntheticNetworkSpec gspec;
  std::string gen_od, gen_pop;
  gen->add_option("--n", gspec.n, "location count")->required();
  gen->add_option("--pop-min", gspec.population_min, "population lower bound")->required();
  gen->add_option("--pop-max", gspec.population_max, "population upper bound")->required();
  gen->add_option("--flow-fraction", gspec.flow_fraction,
                  "max per-pair daily flow as a fraction of origin population")->capture_default_str();
  gen->add_option("--seed", gspec.rng_seed, "RNG seed")->capture_default_str();
  gen->add_option("--out-od", gen_od, "OD matrix CSV path")->required();
  gen->add_option("--out-pop", gen_pop, "population CSV path")->required();

  auto* cs = app.add_subcommand("case-study", "fit-free forecast over reported case data, one run per alpha with the paired quarantine percentile (1-alpha)*100");
  std::string cs_od, cs_pop, cs_cases, cs_cutoff = "2020-03-11", cs_out;
  double cs_r0 = 2.5, cs_mu = 0.0, cs_horizon = 30.0, cs_dt = 0.1;
  std::vector<double> cs_alphas;
  bool cs_active = false;
  cs->add_option("--od", cs_od, "OD matrix CSV path")->required();
  cs->add_option("--pop", cs_pop, "population CSV path")->required();
  cs->add_option("--cases", cs_cases, "cumulative case CSV path")->required();
  cs->add_option("--cutoff", cs_cutoff, "initial-condition date (ISO)")->capture_default_str();
  cs->add_option("--r0", cs_r0, "target reproduction number")->capture_default_str();
  cs->add_option("--mu", cs_mu, "recovery rate")->required();
  cs->add_option("--alphas", cs_alphas, "comma-separated alpha values, one run each")
      ->required()
      ->delimiter(',');
  cs->add_option("--horizon", cs_horizon, "days to forecast past the cutoff")->capture_default_str();
  cs->add_option("--dt", cs_dt, "integration step")->capture_default_str();
  cs->add_option("--out", cs_out, "output directory")->required();
  cs->add_flag("--active", cs_active,
               "emit active infections instead of cumulative I+R");

  try {
    app.parse(argc, argv);
    if (sim->parsed()) return run_simulate(sim_config, sim_out, sim_classical);
    if (swp->parsed())
      return run_sweep(swp_config, swp_alphas, swp_percentiles, swp_out);
    if (r0cmd->parsed()) {
      std::cout << sig9(reproduction_number(
                       {r0_beta, r0_mu, r0_alpha, r0_k, r0_n}))
                << "\n";
      return 0;
    }
    if (fscmd->parsed()) {
      std::cout << sig9(final_size(fs_r0, fs_tol)) << "\n";
      return 0;
    }
    if (gen->parsed()) {
      const auto net =
          generate_random_network(gspec.n, gspec.population_min,
                                  gspec.population_max, gspec.flow_fraction,
                                  gspec.rng_seed);
      write_network(net, gen_od, gen_pop);
      std::cout << "wrote " << gen_od << " and " << gen_pop << " ("
                << net.size() << " locations)\n";
      return 0;
    }
    if (cs->parsed())
      return run_case_study(cs_od, cs_pop, cs_cases, cs_cutoff, cs_r0, cs_mu,
                            cs_alphas, cs_horizon, cs_dt, cs_out, cs_active);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const StiffnessError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DivergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
