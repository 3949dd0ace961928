#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace mobsir {

struct Location {
  int id = 0;
  std::string name;
  double population = 0.0;
};

enum class SeedVariant { RandomLocation, WeakestConnected, StrongestConnected };

struct SeedStrategy {
  SeedVariant variant = SeedVariant::RandomLocation;
  std::uint64_t rng_seed = 0;  // consumed only by RandomLocation
};

struct QuarantineIntervention {
  double percentile = 0.0;  // top share, in percent, of locations to cut off
};

/// A set of locations plus the daily mobility matrix between them.
/// flow(i, j) is the number of individuals moving per day from location j
/// to location i; the diagonal is zero.
class MobilityNetwork {
 public:
  MobilityNetwork() = default;
  MobilityNetwork(std::vector<Location> locations, std::vector<double> flows);

  std::size_t size() const { return locations_.size(); }
  bool empty() const { return locations_.empty(); }
  const std::vector<Location>& locations() const { return locations_; }
  const Location& location(std::size_t id) const;
  double population(std::size_t id) const;
  double total_population() const;
  double flow(std::size_t to, std::size_t from) const;
  const std::vector<double>& flows() const { return flows_; }

 private:
  std::vector<Location> locations_;
  std::vector<double> flows_;  // row-major, flows_[to * n + from]
};

/// Builds a fully connected random network: populations uniform in
/// [population_min, population_max], each off-diagonal flow j->i uniform in
/// [0, flow_fraction * population(j)]. Same seed, same network, bit for bit.
MobilityNetwork generate_random_network(std::size_t n, double population_min,
                                        double population_max,
                                        double flow_fraction,
                                        std::uint64_t rng_seed);

/// Total daily outflow of location j (column sum of the flow matrix).
double out_strength(const MobilityNetwork& net, std::size_t j);

/// Total daily inflow into location i (row sum of the flow matrix).
double in_strength(const MobilityNetwork& net, std::size_t i);

/// Location ids ordered by descending out-strength; ties by ascending id.
std::vector<std::size_t> rank_by_strength(const MobilityNetwork& net);

/// Picks the outbreak start location according to the strategy.
std::size_t select_seed(const MobilityNetwork& net, const SeedStrategy& strategy);

/// Ids of the ceil(percentile * n / 100) strongest-connected locations.
std::vector<std::size_t> quarantine_targets(const MobilityNetwork& net,
                                            const QuarantineIntervention& q);

/// Copy of the network with all flows into and out of the given ids zeroed.
MobilityNetwork zero_location_mobility(const MobilityNetwork& net,
                                       const std::vector<std::size_t>& ids);

/// Cuts the strongest-connected top-percentile locations out of the mobility
/// matrix. Populations and ids are untouched; the input is not modified.
MobilityNetwork apply_quarantine(const MobilityNetwork& net,
                                 const QuarantineIntervention& q);

/// Order-sensitive hash of sizes, names, populations and flows. Identifies
/// which network produced a trajectory.
std::uint64_t network_fingerprint(const MobilityNetwork& net);

}  // namespace mobsir
