#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mobsir/network.hpp"

namespace mobsir {

/// Recovery term of the infected equation. Consistent uses mu * I_i, which
/// keeps the per-location model equivalent to the classical SIR when mobility
/// is off. PaperLiteral uses mu * I_i / N_i, reproducing the source model's
/// equations verbatim.
enum class RecoveryMode { Consistent, PaperLiteral };

struct EpidemicParams {
  double beta = 0.0;   // infection rate, 1/day
  double mu = 0.0;     // recovery rate, 1/day
  double alpha = 1.0;  // mobility coupling weight
  RecoveryMode recovery_mode = RecoveryMode::Consistent;
};

/// Throws ConfigError unless beta, mu are in [0, 1] and alpha is in [0, 1].
void validate(const EpidemicParams& params);

/// Per-location compartment counts at one instant. Sizes must match the
/// network the state is used with.
struct CompartmentState {
  double t = 0.0;
  std::vector<double> S, I, R;

  std::size_t size() const { return S.size(); }
};

enum class Scheme { Euler, RK4 };

struct IntegratorConfig {
  Scheme scheme = Scheme::RK4;
  double dt = 0.1;        // days
  double horizon = 300.0; // days
};

/// Throws ConfigError unless dt > 0 and horizon >= dt.
void validate(const IntegratorConfig& config);

struct Derivatives {
  std::vector<double> dS, dI, dR;
};

struct Trajectory {
  std::vector<CompartmentState> states;
  EpidemicParams params;
  std::uint64_t network_fingerprint = 0;
};

inline constexpr double kDefaultSeedFraction = 1e-3;

/// Right-hand side of the mobility SIR system. For location i:
///   dS_i = -beta S_i I_i / N_i
///          - alpha S_i (sum_j c_ij I_j / N_j) beta / (N_i + sum_j c_ij)
///   dR_i = recovery (mu I_i, or mu I_i / N_i in PaperLiteral mode)
///   dI_i = -dS_i - dR_i
Derivatives derivatives(const CompartmentState& state,
                        const MobilityNetwork& net,
                        const EpidemicParams& params);

/// One integrator step of length config.dt. Negative compartments below
/// -1e-9 raise StiffnessError; values in [-1e-9, 0) are clamped to zero.
CompartmentState step(const CompartmentState& state, const MobilityNetwork& net,
                      const EpidemicParams& params,
                      const IntegratorConfig& config);

/// Fixed-step integration from the initial state over the whole horizon.
/// Returns floor(horizon / dt) + 1 states with t_k = k * dt.
Trajectory simulate(const MobilityNetwork& net, const EpidemicParams& params,
                    const CompartmentState& initial,
                    const IntegratorConfig& config);

/// Classical single-population SIR in fractions (s + i + r = 1), integrated
/// with the same schemes and step policy. Reference model for the
/// zero-coupling limit.
Trajectory classical_sir(double s0, double i0, double r0, double beta,
                         double mu, const IntegratorConfig& config);

/// State with seed_fraction * N infected at the seed location, everyone
/// else susceptible, no one recovered.
CompartmentState seed_state(const MobilityNetwork& net,
                            std::size_t seed_location, double seed_fraction);

}  // namespace mobsir
