#include "mobsir/analysis.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "mobsir/errors.hpp"

namespace mobsir {

namespace {

double mobility_bracket(const HomogeneousParams& hp) {
  return (1.0 + (1.0 + hp.alpha * static_cast<double>(hp.k)) * hp.n) /
         (1.0 + hp.n);
}

}  // namespace

double reproduction_number(const HomogeneousParams& hp) {
  if (!(hp.mu > 0.0)) throw DomainError("reproduction number requires mu > 0");
  return hp.beta / hp.mu * mobility_bracket(hp);
}

double final_size(double r0, double tol) {
  if (!std::isfinite(r0)) throw DomainError("r0 must be finite");
  if (r0 < 0.0) throw DomainError("r0 must be non-negative");
  if (!(tol > 0.0) || tol >= 1.0)
    throw DomainError("final size tolerance must be in (0, 1)");
  if (r0 <= 1.0) return 0.0;
  auto f = [r0](double r) { return 1.0 - std::exp(-r0 * r) - r; };
  double lo = tol, hi = 1.0;
  if (f(lo) < 0.0) return lo;  // root below the bracket, within tolerance
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double homogeneous_susceptible(double R, const HomogeneousParams& hp,
                               double S0, double N) {
  (void)N;
  return S0 * std::exp(-(hp.beta / hp.mu) * R * mobility_bracket(hp));
}

double homogeneous_time_of(double R_target, const HomogeneousParams& hp,
                           double S0, double N, int quad_steps) {
  if (quad_steps < 1) throw ConfigError("quadrature needs at least one panel");
  if (!(R_target >= 0.0)) throw DomainError("R_target must be non-negative");
  if (R_target == 0.0) return 0.0;
  const double r_inf = final_size(reproduction_number(hp));
  if (R_target >= 0.999 * r_inf * N)
    throw DivergenceError("R_target " + std::to_string(R_target) +
                          " is at or beyond 99.9% of the predicted final size " +
                          std::to_string(r_inf * N));
  const auto m = static_cast<std::size_t>(quad_steps);
  const double h = R_target / (2.0 * static_cast<double>(m));
  auto integrand = [&](double R) {
    const double denom = N - R - homogeneous_susceptible(R, hp, S0, N);
    if (!(denom > 0.0))
      throw DivergenceError(
          "no infected individuals at R = " + std::to_string(R) +
          "; the integrand is singular (is I(0) zero?)");
    return 1.0 / denom;
  };
  double sum = integrand(0.0) + integrand(R_target);
  for (std::size_t k = 1; k < 2 * m; ++k)
    sum += (k % 2 == 1 ? 4.0 : 2.0) *
           integrand(static_cast<double>(k) * h);
  return sum * h / 3.0 / hp.mu;
}

SummaryMetrics summarize(const Trajectory& traj) {
  if (traj.states.empty())
    throw InputError("cannot summarize an empty trajectory");
  const CompartmentState& first = traj.states.front();
  double total = 0.0;
  for (std::size_t i = 0; i < first.size(); ++i)
    total += first.S[i] + first.I[i] + first.R[i];
  if (!(total > 0.0))
    throw InputError("trajectory has zero total population");
  SummaryMetrics m;
  for (const auto& state : traj.states) {
    double infected = 0.0;
    for (double x : state.I) infected += x;
    const double fraction = infected / total;
    if (fraction > m.peak_infected_fraction) {
      m.peak_infected_fraction = fraction;
      m.peak_day = state.t;
    }
  }
  double recovered = 0.0;
  for (double x : traj.states.back().R) recovered += x;
  m.attack_rate = recovered / total;
  return m;
}

double compare(const SummaryMetrics& baseline, const SummaryMetrics& scenario) {
  if (!(baseline.attack_rate > 0.0))
    throw DomainError("baseline attack rate is zero; reduction is undefined");
  return 100.0 * (1.0 - scenario.attack_rate / baseline.attack_rate);
}

std::vector<SweepCell> sweep(const MobilityNetwork& net,
                             const EpidemicParams& base_params,
                             const std::vector<double>& alphas,
                             const std::vector<double>& percentiles,
                             const CompartmentState& initial,
                             const IntegratorConfig& config) {
  if (alphas.empty() || percentiles.empty())
    throw ConfigError("sweep needs at least one alpha and one percentile");
  std::vector<SweepCell> cells;
  cells.reserve(alphas.size() * percentiles.size());
  for (double alpha : alphas) {
    EpidemicParams params = base_params;
    params.alpha = alpha;
    const Trajectory base_traj = simulate(net, params, initial, config);
    const SummaryMetrics baseline = summarize(base_traj);
    for (double percentile : percentiles) {
      SweepCell cell;
      cell.alpha = alpha;
      cell.percentile = percentile;
      if (percentile == 0.0) {
        cell.metrics = baseline;
      } else {
        const MobilityNetwork cut =
            apply_quarantine(net, QuarantineIntervention{percentile});
        cell.metrics = summarize(simulate(cut, params, initial, config));
      }
      cell.metrics.reduction_vs_baseline =
          baseline.attack_rate > 0.0 ? compare(baseline, cell.metrics) : 0.0;
      cells.push_back(cell);
    }
  }
  return cells;
}

std::vector<SweepCell> sweep(const MobilityNetwork& net,
                             const EpidemicParams& base_params,
                             const std::vector<double>& alphas,
                             const std::vector<double>& percentiles,
                             const SeedStrategy& seed_strategy,
                             const IntegratorConfig& config,
                             double seed_fraction) {
  const std::size_t seed = select_seed(net, seed_strategy);
  return sweep(net, base_params, alphas, percentiles,
               seed_state(net, seed, seed_fraction), config);
}

}  // namespace mobsir
