#pragma once

#include <cstddef>
#include <vector>

#include "mobsir/dynamics.hpp"
#include "mobsir/network.hpp"

namespace mobsir {

/// Parameters of the homogeneous-mobility reduction: every location has k
/// incoming connections, each carrying a fraction n/k of the local
/// population, so the total incoming mobility fraction is n.
struct HomogeneousParams {
  double beta = 0.0;
  double mu = 0.0;
  double alpha = 1.0;
  int k = 0;
  double n = 0.0;
};

struct SummaryMetrics {
  double peak_infected_fraction = 0.0;
  double peak_day = 0.0;
  double attack_rate = 0.0;
  double reduction_vs_baseline = 0.0;  // percent; filled by sweep
};

struct SweepCell {
  double alpha = 0.0;
  double percentile = 0.0;
  SummaryMetrics metrics;
};

/// Basic reproduction number of the homogeneous model:
///   R0 = (beta / mu) * (1 + (1 + alpha k) n) / (1 + n).
/// With alpha = 0 or n = 0 this reduces to the classical beta / mu.
double reproduction_number(const HomogeneousParams& hp);

/// Final epidemic size as the fraction of the population ever infected:
/// the positive root of r = 1 - exp(-r0 * r), found by bisection on
/// [tol, 1]. Returns 0 for r0 <= 1.
double final_size(double r0, double tol = 1e-9);

/// Closed-form susceptible count of the homogeneous model as a function of
/// the recovered count R:
///   S(R) = S0 * exp(-(beta/mu) R (1 + (1 + alpha k) n) / (1 + n)).
double homogeneous_susceptible(double R, const HomogeneousParams& hp,
                               double S0, double N);

/// Days until the recovered count reaches R_target, computed as
/// (1/mu) * integral_0^R_target dR / (N - R - S(R)) by composite Simpson
/// quadrature with quad_steps panels. Requires I(0) > 0; targets at or
/// beyond 99.9% of the predicted final size raise DivergenceError.
double homogeneous_time_of(double R_target, const HomogeneousParams& hp,
                           double S0, double N, int quad_steps = 10000);

/// Peak aggregate infected fraction, the day it is first attained, and the
/// final attack rate of a trajectory.
SummaryMetrics summarize(const Trajectory& traj);

/// Percent reduction of the scenario attack rate relative to the baseline:
/// 100 * (1 - scenario / baseline). Zero baseline attack rate is a
/// DomainError.
double compare(const SummaryMetrics& baseline, const SummaryMetrics& scenario);

/// Full factorial scan over coupling weights and quarantine percentiles,
/// row-major with alpha as the outer dimension. Every cell reuses the same
/// initial state; reduction_vs_baseline is measured against the percentile-0
/// cell of the same alpha (0 when that baseline has a zero attack rate).
std::vector<SweepCell> sweep(const MobilityNetwork& net,
                             const EpidemicParams& base_params,
                             const std::vector<double>& alphas,
                             const std::vector<double>& percentiles,
                             const CompartmentState& initial,
                             const IntegratorConfig& config);

/// Convenience overload: seeds seed_fraction * N infected at the location
/// chosen by the strategy on the unmodified network.
std::vector<SweepCell> sweep(const MobilityNetwork& net,
                             const EpidemicParams& base_params,
                             const std::vector<double>& alphas,
                             const std::vector<double>& percentiles,
                             const SeedStrategy& seed_strategy,
                             const IntegratorConfig& config,
                             double seed_fraction = kDefaultSeedFraction);

}  // namespace mobsir
