#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "mobsir/analysis.hpp"
#include "mobsir/dynamics.hpp"
#include "mobsir/network.hpp"

namespace mobsir {

struct CaseRecord {
  std::string date;      // ISO-8601 calendar date
  std::string location;  // location name
  long long cumulative_cases = 0;
};

struct SyntheticNetworkSpec {
  std::size_t n = 0;
  double population_min = 0.0;
  double population_max = 0.0;
  double flow_fraction = 0.01;
  std::uint64_t rng_seed = 0;
};

struct NetworkFiles {
  std::string od_path;
  std::string population_path;
};

struct StrategySeed {
  SeedStrategy strategy;
  double fraction = kDefaultSeedFraction;
};

struct ExplicitSeed {
  std::map<std::string, double> infected;  // location name -> initial count
};

struct ScenarioConfig {
  std::variant<SyntheticNetworkSpec, NetworkFiles> network;
  EpidemicParams params;
  std::variant<StrategySeed, ExplicitSeed> seed;
  QuarantineIntervention quarantine;  // percentile 0 means no intervention
  IntegratorConfig integrator;
};

/// Reads an origin-destination CSV (from,to,flow; names) plus a population
/// CSV (id,name,population) into a validated network. Unknown names,
/// duplicate pairs, self-flows, negative flows, non-contiguous ids and
/// malformed rows are InputErrors naming the file and line.
MobilityNetwork load_network(const std::string& od_path,
                             const std::string& population_path);

/// Writes the two network CSVs; loading them back reproduces the network
/// exactly. Only nonzero flows are written.
void write_network(const MobilityNetwork& net, const std::string& od_path,
                   const std::string& population_path);

/// Reads a cumulative case CSV (date,location,cumulative_cases). Counts must
/// be non-decreasing per location.
std::vector<CaseRecord> load_case_records(const std::string& path);

/// Initial compartment state from reported cumulative cases: for each named
/// location, everyone reported by the cutoff date is infected, the rest are
/// susceptible, no one is recovered. An empty case file yields a fully
/// susceptible state.
CompartmentState load_initial_cases(const std::string& cases_path,
                                    const std::string& cutoff_date,
                                    const MobilityNetwork& net);

/// Sum of cumulative cases across all locations as of the given date.
long long total_cases_at(const std::vector<CaseRecord>& records,
                         const std::string& date);

/// Parameters whose classical reproduction number beta / mu equals
/// r0_target, with alpha = 1 and Consistent recovery.
EpidemicParams params_from_r0(double r0_target, double mu);

/// Per-location trajectory CSV: t,location_id,S,I,R.
void write_trajectory(const Trajectory& traj, const std::string& path);

/// Re-reads a trajectory CSV written by write_trajectory. Parameters and
/// fingerprint are not stored in the CSV and are left default.
Trajectory read_trajectory(const std::string& path, std::size_t n_locations);

/// Aggregate CSV: t,S_total,I_total,R_total,s_frac,i_frac,r_frac.
void write_aggregate(const Trajectory& traj, const std::string& path);

/// Sweep grid CSV: alpha,percentile,peak_fraction,peak_day,attack_rate,
/// reduction_pct, in the order the cells were produced.
void write_sweep(const std::vector<SweepCell>& cells, const std::string& path);

/// Parses and validates a scenario JSON file. Unknown keys anywhere in the
/// document are InputErrors.
ScenarioConfig load_scenario(const std::string& path);

/// Builds the network a scenario describes (generated or loaded from files).
MobilityNetwork realize_network(const ScenarioConfig& config);

/// Builds the initial state a scenario describes. Seed strategies are
/// evaluated on the given network, which should be the unquarantined one.
CompartmentState realize_initial_state(const ScenarioConfig& config,
                                       const MobilityNetwork& net);

/// True for a syntactically and calendrically valid ISO-8601 date.
bool valid_iso_date(const std::string& date);

/// The ISO date `days` days after the given one.
std::string iso_date_add(const std::string& date, int days);

/// Shortest decimal form that parses back to exactly the same double.
std::string format_exact(double v);

/// Fixed 12-significant-digit form used in report CSVs.
std::string format_sig12(double v);

/// Writes content to path atomically (temporary file plus rename).
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace mobsir
