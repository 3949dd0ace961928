#include "mobsir/network.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>
#include <random>
#include <string>

#include "mobsir/errors.hpp"

namespace mobsir {

namespace {

// Uniform double in [0, 1) with the full 53-bit mantissa, fixed across
// platforms so seeded networks replay bit for bit.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t hash_bytes(std::uint64_t h, const void* data, std::size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

std::uint64_t hash_double(std::uint64_t h, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  return hash_bytes(h, &bits, sizeof bits);
}

}  // namespace

MobilityNetwork::MobilityNetwork(std::vector<Location> locations,
                                 std::vector<double> flows)
    : locations_(std::move(locations)), flows_(std::move(flows)) {
  const std::size_t n = locations_.size();
  if (flows_.size() != n * n)
    throw ShapeError("flow matrix has " + std::to_string(flows_.size()) +
                     " entries, expected " + std::to_string(n * n));
  for (std::size_t i = 0; i < n; ++i) {
    if (locations_[i].id != static_cast<int>(i))
      throw ConfigError("location ids must be contiguous from 0; position " +
                        std::to_string(i) + " has id " +
                        std::to_string(locations_[i].id));
    if (!(locations_[i].population > 0.0))
      throw ConfigError("location " + std::to_string(i) +
                        " has non-positive population");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (flows_[i * n + i] != 0.0)
      throw ConfigError("flow matrix diagonal must be zero (location " +
                        std::to_string(i) + ")");
    for (std::size_t j = 0; j < n; ++j)
      if (!(flows_[i * n + j] >= 0.0))
        throw ConfigError("negative or NaN flow at (" + std::to_string(i) +
                          ", " + std::to_string(j) + ")");
  }
}

const Location& MobilityNetwork::location(std::size_t id) const {
  if (id >= locations_.size())
    throw IndexError("location id " + std::to_string(id) +
                     " out of range for network of size " +
                     std::to_string(locations_.size()));
  return locations_[id];
}

double MobilityNetwork::population(std::size_t id) const {
  return location(id).population;
}

double MobilityNetwork::total_population() const {
  double total = 0.0;
  for (const auto& loc : locations_) total += loc.population;
  return total;
}

double MobilityNetwork::flow(std::size_t to, std::size_t from) const {
  const std::size_t n = locations_.size();
  if (to >= n || from >= n)
    throw IndexError("flow index (" + std::to_string(to) + ", " +
                     std::to_string(from) + ") out of range for network of size " +
                     std::to_string(n));
  return flows_[to * n + from];
}

MobilityNetwork generate_random_network(std::size_t n, double population_min,
                                        double population_max,
                                        double flow_fraction,
                                        std::uint64_t rng_seed) {
  if (n < 1) throw ConfigError("network size must be at least 1");
  if (!(population_min > 0.0) || !(population_max >= population_min))
    throw ConfigError("population range must satisfy 0 < min <= max");
  if (!(flow_fraction > 0.0) || !(flow_fraction <= 1.0))
    throw ConfigError("flow fraction must be in (0, 1]");

  std::mt19937_64 rng(rng_seed);
  std::vector<Location> locations(n);
  for (std::size_t i = 0; i < n; ++i) {
    locations[i].id = static_cast<int>(i);
    locations[i].name = "L" + std::to_string(i);
    locations[i].population =
        population_min + (population_max - population_min) * uniform01(rng);
  }
  std::vector<double> flows(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j)
        flows[i * n + j] =
            uniform01(rng) * flow_fraction * locations[j].population;
  return MobilityNetwork(std::move(locations), std::move(flows));
}

double out_strength(const MobilityNetwork& net, std::size_t j) {
  const std::size_t n = net.size();
  if (j >= n)
    throw IndexError("location id " + std::to_string(j) +
                     " out of range for network of size " + std::to_string(n));
  const auto& flows = net.flows();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += flows[i * n + j];
  return s;
}

double in_strength(const MobilityNetwork& net, std::size_t i) {
  const std::size_t n = net.size();
  if (i >= n)
    throw IndexError("location id " + std::to_string(i) +
                     " out of range for network of size " + std::to_string(n));
  const auto& flows = net.flows();
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j) s += flows[i * n + j];
  return s;
}

std::vector<std::size_t> rank_by_strength(const MobilityNetwork& net) {
  const std::size_t n = net.size();
  std::vector<double> strength(n);
  for (std::size_t j = 0; j < n; ++j) strength[j] = out_strength(net, j);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (strength[a] != strength[b]) return strength[a] > strength[b];
    return a < b;
  });
  return order;
}

std::size_t select_seed(const MobilityNetwork& net, const SeedStrategy& strategy) {
  if (net.empty()) throw ConfigError("cannot select a seed in an empty network");
  switch (strategy.variant) {
    case SeedVariant::RandomLocation: {
      std::mt19937_64 rng(strategy.rng_seed);
      return static_cast<std::size_t>(rng() % net.size());
    }
    case SeedVariant::StrongestConnected:
      return rank_by_strength(net).front();
    case SeedVariant::WeakestConnected:
      return rank_by_strength(net).back();
  }
  throw ConfigError("unknown seed strategy");
}

std::vector<std::size_t> quarantine_targets(const MobilityNetwork& net,
                                            const QuarantineIntervention& q) {
  if (!(q.percentile >= 0.0) || !(q.percentile <= 100.0))
    throw ConfigError("quarantine percentile must be in [0, 100]");
  const std::size_t n = net.size();
  const auto count = static_cast<std::size_t>(
      std::ceil(q.percentile * static_cast<double>(n) / 100.0));
  auto order = rank_by_strength(net);
  order.resize(std::min(count, n));
  return order;
}

MobilityNetwork zero_location_mobility(const MobilityNetwork& net,
                                       const std::vector<std::size_t>& ids) {
  const std::size_t n = net.size();
  std::vector<double> flows = net.flows();
  for (std::size_t id : ids) {
    if (id >= n)
      throw IndexError("location id " + std::to_string(id) +
                       " out of range for network of size " + std::to_string(n));
    for (std::size_t k = 0; k < n; ++k) {
      flows[id * n + k] = 0.0;
      flows[k * n + id] = 0.0;
    }
  }
  return MobilityNetwork(net.locations(), std::move(flows));
}

MobilityNetwork apply_quarantine(const MobilityNetwork& net,
                                 const QuarantineIntervention& q) {
  return zero_location_mobility(net, quarantine_targets(net, q));
}

std::uint64_t network_fingerprint(const MobilityNetwork& net) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  const std::uint64_t n = net.size();
  h = hash_bytes(h, &n, sizeof n);
  for (const auto& loc : net.locations()) {
    h = hash_bytes(h, loc.name.data(), loc.name.size());
    h = hash_double(h, loc.population);
  }
  for (double f : net.flows()) h = hash_double(h, f);
  return h;
}

}  // namespace mobsir
