#include "mobsir/dynamics.hpp"

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "mobsir/errors.hpp"

namespace mobsir {

namespace {

constexpr double kNegativeTolerance = 1e-9;

void check_shapes(const CompartmentState& state, std::size_t n) {
  if (state.S.size() != n || state.I.size() != n || state.R.size() != n)
    throw ShapeError("state has sizes (" + std::to_string(state.S.size()) +
                     ", " + std::to_string(state.I.size()) + ", " +
                     std::to_string(state.R.size()) +
                     "), expected " + std::to_string(n) + " each");
}

// Applies y += h * k elementwise into a fresh copy.
std::vector<double> axpy(const std::vector<double>& y, double h,
                         const std::vector<double>& k) {
  std::vector<double> out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] + h * k[i];
  return out;
}

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Rejects undershoots below -1e-9 and clamps the rest of the negative range
// to zero, before the value is committed to the new state.
void settle_nonnegative(std::vector<double>& v, double t, const char* name) {
  for (double& x : v) {
    if (x < -kNegativeTolerance)
      throw StiffnessError(std::string(name) + " fell to " + short_num(x) +
                           " at t = " + short_num(t) + "; reduce dt");
    if (x < 0.0) x = 0.0;
  }
}

Derivatives classical_rhs(const CompartmentState& y, double beta, double mu) {
  Derivatives d{{0.0}, {0.0}, {0.0}};
  const double s = y.S[0], i = y.I[0];
  d.dS[0] = -beta * s * i;
  d.dR[0] = mu * i;
  d.dI[0] = -d.dS[0] - d.dR[0];
  return d;
}

template <typename Rhs>
CompartmentState generic_step(const CompartmentState& state, const Rhs& rhs,
                              const IntegratorConfig& config) {
  const double h = config.dt;
  CompartmentState next;
  next.t = state.t + h;
  if (config.scheme == Scheme::Euler) {
    const Derivatives k = rhs(state);
    next.S = axpy(state.S, h, k.dS);
    next.I = axpy(state.I, h, k.dI);
    next.R = axpy(state.R, h, k.dR);
  } else {
    const Derivatives k1 = rhs(state);
    CompartmentState mid;
    mid.t = state.t + 0.5 * h;
    mid.S = axpy(state.S, 0.5 * h, k1.dS);
    mid.I = axpy(state.I, 0.5 * h, k1.dI);
    mid.R = axpy(state.R, 0.5 * h, k1.dR);
    const Derivatives k2 = rhs(mid);
    mid.S = axpy(state.S, 0.5 * h, k2.dS);
    mid.I = axpy(state.I, 0.5 * h, k2.dI);
    mid.R = axpy(state.R, 0.5 * h, k2.dR);
    const Derivatives k3 = rhs(mid);
    CompartmentState end;
    end.t = state.t + h;
    end.S = axpy(state.S, h, k3.dS);
    end.I = axpy(state.I, h, k3.dI);
    end.R = axpy(state.R, h, k3.dR);
    const Derivatives k4 = rhs(end);
    const std::size_t n = state.size();
    next.S.resize(n);
    next.I.resize(n);
    next.R.resize(n);
    const double w = h / 6.0;
    for (std::size_t i = 0; i < n; ++i) {
      next.S[i] = state.S[i] + w * (k1.dS[i] + 2.0 * k2.dS[i] + 2.0 * k3.dS[i] + k4.dS[i]);
      next.I[i] = state.I[i] + w * (k1.dI[i] + 2.0 * k2.dI[i] + 2.0 * k3.dI[i] + k4.dI[i]);
      next.R[i] = state.R[i] + w * (k1.dR[i] + 2.0 * k2.dR[i] + 2.0 * k3.dR[i] + k4.dR[i]);
    }
  }
  settle_nonnegative(next.S, next.t, "S");
  settle_nonnegative(next.I, next.t, "I");
  settle_nonnegative(next.R, next.t, "R");
  return next;
}

std::size_t step_count(const IntegratorConfig& config) {
  return static_cast<std::size_t>(
      std::floor(config.horizon / config.dt + 1e-9));
}

template <typename Rhs>
Trajectory integrate(CompartmentState initial, const Rhs& rhs,
                     const IntegratorConfig& config) {
  const std::size_t steps = step_count(config);
  Trajectory traj;
  traj.states.reserve(steps + 1);
  initial.t = 0.0;
  traj.states.push_back(std::move(initial));
  for (std::size_t k = 1; k <= steps; ++k) {
    CompartmentState next = generic_step(traj.states.back(), rhs, config);
    next.t = static_cast<double>(k) * config.dt;
    traj.states.push_back(std::move(next));
  }
  return traj;
}

}  // namespace

void validate(const EpidemicParams& params) {
  if (!(params.beta >= 0.0) || !(params.beta <= 1.0))
    throw ConfigError("beta must be in [0, 1]");
  if (!(params.mu >= 0.0) || !(params.mu <= 1.0))
    throw ConfigError("mu must be in [0, 1]");
  if (!(params.alpha >= 0.0) || !(params.alpha <= 1.0))
    throw ConfigError("alpha must be in [0, 1]");
}

void validate(const IntegratorConfig& config) {
  if (!(config.dt > 0.0)) throw ConfigError("dt must be positive");
  if (!(config.horizon >= config.dt))
    throw ConfigError("horizon must be at least one step long");
}

Derivatives derivatives(const CompartmentState& state,
                        const MobilityNetwork& net,
                        const EpidemicParams& params) {
  validate(params);
  const std::size_t n = net.size();
  check_shapes(state, n);
  const auto& flows = net.flows();
  Derivatives d;
  d.dS.resize(n);
  d.dI.resize(n);
  d.dR.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double Ni = net.locations()[i].population;
    double inflow = 0.0;
    double imported = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double c = flows[i * n + j];
      inflow += c;
      if (c != 0.0)
        imported += c * state.I[j] / net.locations()[j].population;
    }
    const double local = params.beta * state.S[i] * state.I[i] / Ni;
    const double mobility =
        params.alpha * state.S[i] * imported * params.beta / (Ni + inflow);
    const double recovery = params.recovery_mode == RecoveryMode::Consistent
                                ? params.mu * state.I[i]
                                : params.mu * state.I[i] / Ni;
    d.dS[i] = -(local + mobility);
    d.dR[i] = recovery;
    d.dI[i] = -d.dS[i] - d.dR[i];
  }
  return d;
}

CompartmentState step(const CompartmentState& state, const MobilityNetwork& net,
                      const EpidemicParams& params,
                      const IntegratorConfig& config) {
  validate(params);
  validate(config);
  check_shapes(state, net.size());
  auto rhs = [&](const CompartmentState& y) {
    return derivatives(y, net, params);
  };
  return generic_step(state, rhs, config);
}

Trajectory simulate(const MobilityNetwork& net, const EpidemicParams& params,
                    const CompartmentState& initial,
                    const IntegratorConfig& config) {
  validate(params);
  validate(config);
  const std::size_t n = net.size();
  check_shapes(initial, n);
  for (std::size_t i = 0; i < n; ++i) {
    const double Ni = net.locations()[i].population;
    const double total = initial.S[i] + initial.I[i] + initial.R[i];
    if (std::abs(total - Ni) > 1e-6 * Ni)
      throw ConfigError("initial state of location " + std::to_string(i) +
                        " sums to " + std::to_string(total) +
                        ", population is " + std::to_string(Ni));
  }
  auto rhs = [&](const CompartmentState& y) {
    return derivatives(y, net, params);
  };
  Trajectory traj = integrate(initial, rhs, config);
  traj.params = params;
  traj.network_fingerprint = network_fingerprint(net);
  return traj;
}

Trajectory classical_sir(double s0, double i0, double r0, double beta,
                         double mu, const IntegratorConfig& config) {
  validate(config);
  if (!(beta >= 0.0) || !(beta <= 1.0)) throw ConfigError("beta must be in [0, 1]");
  if (!(mu >= 0.0) || !(mu <= 1.0)) throw ConfigError("mu must be in [0, 1]");
  if (!(s0 >= 0.0) || !(i0 >= 0.0) || !(r0 >= 0.0))
    throw ConfigError("initial fractions must be non-negative");
  if (std::abs(s0 + i0 + r0 - 1.0) > 1e-12)
    throw ConfigError("initial fractions must sum to 1");
  CompartmentState initial;
  initial.S = {s0};
  initial.I = {i0};
  initial.R = {r0};
  auto rhs = [beta, mu](const CompartmentState& y) {
    return classical_rhs(y, beta, mu);
  };
  Trajectory traj = integrate(std::move(initial), rhs, config);
  traj.params = EpidemicParams{beta, mu, 0.0, RecoveryMode::Consistent};
  traj.network_fingerprint = 0;
  return traj;
}

CompartmentState seed_state(const MobilityNetwork& net,
                            std::size_t seed_location, double seed_fraction) {
  const std::size_t n = net.size();
  if (seed_location >= n)
    throw IndexError("seed location " + std::to_string(seed_location) +
                     " out of range for network of size " + std::to_string(n));
  if (!(seed_fraction > 0.0) || !(seed_fraction < 1.0))
    throw ConfigError("seed fraction must be in (0, 1)");
  CompartmentState state;
  state.t = 0.0;
  state.S.resize(n);
  state.I.assign(n, 0.0);
  state.R.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    state.S[i] = net.locations()[i].population;
  const double infected = seed_fraction * net.locations()[seed_location].population;
  state.I[seed_location] = infected;
  state.S[seed_location] -= infected;
  return state;
}

}  // namespace mobsir
