#include "mobsir/io.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <system_error>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "mobsir/errors.hpp"

namespace mobsir {

namespace {

using nlohmann::json;

struct CsvRow {
  std::size_t line = 0;  // 1-based, header is line 1
  std::vector<std::string> fields;
};

std::string where(const std::string& path, std::size_t line) {
  return path + ":" + std::to_string(line);
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path + " for reading");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  if (in.bad()) throw IoError("read failure on " + path);
  return lines;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

// Reads a CSV with an exact expected header and a fixed column count.
std::vector<CsvRow> read_csv(const std::string& path,
                             const std::string& expected_header) {
  const auto lines = read_lines(path);
  if (lines.empty())
    throw InputError(path + " is empty, expected header '" + expected_header + "'");
  if (lines[0] != expected_header)
    throw InputError(where(path, 1) + ": expected header '" + expected_header +
                     "', got '" + lines[0] + "'");
  const std::size_t ncols = split_fields(expected_header).size();
  std::vector<CsvRow> rows;
  rows.reserve(lines.size() - 1);
  for (std::size_t k = 1; k < lines.size(); ++k) {
    CsvRow row;
    row.line = k + 1;
    row.fields = split_fields(lines[k]);
    if (lines[k].empty())
      throw InputError(where(path, row.line) + ": blank line");
    if (row.fields.size() != ncols)
      throw InputError(where(path, row.line) + ": expected " +
                       std::to_string(ncols) + " fields, got " +
                       std::to_string(row.fields.size()));
    rows.push_back(std::move(row));
  }
  return rows;
}

double parse_double(const std::string& s, const std::string& path,
                    std::size_t line, const char* what) {
  double v = 0.0;
  const char* begin = s.data();
  const char* end = begin + s.size();
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc{} || ptr != end)
    throw InputError(where(path, line) + ": '" + s + "' is not a valid " + what);
  return v;
}

long long parse_int(const std::string& s, const std::string& path,
                    std::size_t line, const char* what) {
  long long v = 0;
  const char* begin = s.data();
  const char* end = begin + s.size();
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc{} || ptr != end)
    throw InputError(where(path, line) + ": '" + s + "' is not a valid " + what);
  return v;
}

struct CaseRow {
  CaseRecord record;
  std::size_t line = 0;
};

std::vector<CaseRow> parse_case_rows(const std::string& path) {
  const auto rows = read_csv(path, "date,location,cumulative_cases");
  std::vector<CaseRow> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    CaseRow cr;
    cr.line = row.line;
    cr.record.date = row.fields[0];
    cr.record.location = row.fields[1];
    cr.record.cumulative_cases =
        parse_int(row.fields[2], path, row.line, "case count");
    if (!valid_iso_date(cr.record.date))
      throw InputError(where(path, row.line) + ": '" + cr.record.date +
                       "' is not a valid ISO-8601 date");
    if (cr.record.location.empty())
      throw InputError(where(path, row.line) + ": empty location name");
    if (cr.record.cumulative_cases < 0)
      throw InputError(where(path, row.line) + ": negative case count");
    out.push_back(std::move(cr));
  }
  // Cumulative counts must be non-decreasing per location in date order.
  std::map<std::string, std::vector<const CaseRow*>> by_location;
  for (const auto& cr : out) by_location[cr.record.location].push_back(&cr);
  for (auto& [name, series] : by_location) {
    std::sort(series.begin(), series.end(),
              [](const CaseRow* a, const CaseRow* b) {
                return a->record.date < b->record.date;
              });
    for (std::size_t k = 1; k < series.size(); ++k) {
      if (series[k]->record.date == series[k - 1]->record.date)
        throw InputError(where(path, series[k]->line) + ": duplicate date " +
                         series[k]->record.date + " for location " + name);
      if (series[k]->record.cumulative_cases <
          series[k - 1]->record.cumulative_cases)
        throw InputError(where(path, series[k]->line) +
                         ": cumulative cases for " + name + " decrease from " +
                         std::to_string(series[k - 1]->record.cumulative_cases) +
                         " to " +
                         std::to_string(series[k]->record.cumulative_cases));
    }
  }
  return out;
}

std::string json_context(const std::string& path, const char* section) {
  return path + ": " + section;
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& context) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) {
          return key == a;
        }) == allowed.end())
      throw InputError(context + ": unknown key '" + key + "'");
  }
}

const json& require_key(const json& obj, const char* key,
                        const std::string& context) {
  const auto it = obj.find(key);
  if (it == obj.end())
    throw InputError(context + ": missing required key '" + key + "'");
  return *it;
}

double get_number(const json& v, const char* key, const std::string& context) {
  if (!v.is_number())
    throw InputError(context + ": '" + key + "' must be a number");
  return v.get<double>();
}

std::uint64_t get_uint(const json& v, const char* key,
                       const std::string& context) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<long long>() >= 0)
    return static_cast<std::uint64_t>(v.get<long long>());
  throw InputError(context + ": '" + key + "' must be a non-negative integer");
}

std::string get_string(const json& v, const char* key,
                       const std::string& context) {
  if (!v.is_string())
    throw InputError(context + ": '" + key + "' must be a string");
  return v.get<std::string>();
}

}  // namespace

MobilityNetwork load_network(const std::string& od_path,
                             const std::string& population_path) {
  const auto pop_rows = read_csv(population_path, "id,name,population");
  if (pop_rows.empty())
    throw InputError(population_path + ": no locations defined");
  const std::size_t n = pop_rows.size();
  std::vector<Location> locations(n);
  std::vector<bool> seen(n, false);
  std::unordered_map<std::string, std::size_t> by_name;
  for (const auto& row : pop_rows) {
    const long long id = parse_int(row.fields[0], population_path, row.line, "id");
    if (id < 0 || static_cast<std::size_t>(id) >= n)
      throw InputError(where(population_path, row.line) + ": id " +
                       std::to_string(id) + " outside the contiguous range 0.." +
                       std::to_string(n - 1));
    if (seen[static_cast<std::size_t>(id)])
      throw InputError(where(population_path, row.line) + ": duplicate id " +
                       std::to_string(id));
    seen[static_cast<std::size_t>(id)] = true;
    const std::string& name = row.fields[1];
    if (name.empty())
      throw InputError(where(population_path, row.line) + ": empty name");
    const double population =
        parse_double(row.fields[2], population_path, row.line, "population");
    if (!(population > 0.0))
      throw InputError(where(population_path, row.line) +
                       ": population must be positive");
    if (!by_name.emplace(name, static_cast<std::size_t>(id)).second)
      throw InputError(where(population_path, row.line) + ": duplicate name '" +
                       name + "'");
    auto& loc = locations[static_cast<std::size_t>(id)];
    loc.id = static_cast<int>(id);
    loc.name = name;
    loc.population = population;
  }

  std::vector<double> flows(n * n, 0.0);
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& row : read_csv(od_path, "from,to,flow")) {
    const auto from_it = by_name.find(row.fields[0]);
    if (from_it == by_name.end())
      throw InputError(where(od_path, row.line) + ": unknown location '" +
                       row.fields[0] + "'");
    const auto to_it = by_name.find(row.fields[1]);
    if (to_it == by_name.end())
      throw InputError(where(od_path, row.line) + ": unknown location '" +
                       row.fields[1] + "'");
    const std::size_t from = from_it->second, to = to_it->second;
    if (from == to)
      throw InputError(where(od_path, row.line) + ": self flow for '" +
                       row.fields[0] + "'");
    if (!pairs.emplace(from, to).second)
      throw InputError(where(od_path, row.line) + ": duplicate pair " +
                       row.fields[0] + " -> " + row.fields[1]);
    const double flow = parse_double(row.fields[2], od_path, row.line, "flow");
    if (!(flow >= 0.0))
      throw InputError(where(od_path, row.line) + ": flow must be non-negative");
    flows[to * n + from] = flow;
  }
  return MobilityNetwork(std::move(locations), std::move(flows));
}

void write_network(const MobilityNetwork& net, const std::string& od_path,
                   const std::string& population_path) {
  std::string pop = "id,name,population\n";
  for (const auto& loc : net.locations())
    pop += std::to_string(loc.id) + "," + loc.name + "," +
           format_exact(loc.population) + "\n";
  write_file_atomic(population_path, pop);

  const std::size_t n = net.size();
  std::string od = "from,to,flow\n";
  for (std::size_t from = 0; from < n; ++from)
    for (std::size_t to = 0; to < n; ++to) {
      const double f = net.flows()[to * n + from];
      if (f != 0.0)
        od += net.locations()[from].name + "," + net.locations()[to].name +
              "," + format_exact(f) + "\n";
    }
  write_file_atomic(od_path, od);
}

std::vector<CaseRecord> load_case_records(const std::string& path) {
  std::vector<CaseRecord> records;
  for (auto& row : parse_case_rows(path)) records.push_back(std::move(row.record));
  return records;
}

CompartmentState load_initial_cases(const std::string& cases_path,
                                    const std::string& cutoff_date,
                                    const MobilityNetwork& net) {
  if (!valid_iso_date(cutoff_date))
    throw InputError("cutoff date '" + cutoff_date +
                     "' is not a valid ISO-8601 date");
  const auto rows = parse_case_rows(cases_path);
  const std::size_t n = net.size();
  CompartmentState state;
  state.t = 0.0;
  state.S.resize(n);
  state.I.assign(n, 0.0);
  state.R.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    state.S[i] = net.locations()[i].population;
  if (!rows.empty()) {
    std::string min_date = rows[0].record.date, max_date = rows[0].record.date;
    for (const auto& row : rows) {
      min_date = std::min(min_date, row.record.date);
      max_date = std::max(max_date, row.record.date);
    }
    if (cutoff_date < min_date || cutoff_date > max_date)
      throw InputError("cutoff date " + cutoff_date + " outside file coverage " +
                       min_date + " .. " + max_date);
    std::unordered_map<std::string, std::size_t> by_name;
    for (std::size_t i = 0; i < n; ++i)
      by_name.emplace(net.locations()[i].name, i);
    struct Latest {
      std::string date;
      long long count = 0;
    };
    std::map<std::size_t, Latest> latest;
    for (const auto& row : rows) {
      const auto it = by_name.find(row.record.location);
      if (it == by_name.end())
        throw InputError(where(cases_path, row.line) + ": unknown location '" +
                         row.record.location + "'");
      if (row.record.date > cutoff_date) continue;
      auto& slot = latest[it->second];
      if (slot.date.empty() || row.record.date > slot.date) {
        slot.date = row.record.date;
        slot.count = row.record.cumulative_cases;
      }
    }
    for (const auto& [i, slot] : latest) {
      const double infected = static_cast<double>(slot.count);
      if (infected > net.locations()[i].population)
        throw InputError("location " + net.locations()[i].name + " has " +
                         std::to_string(slot.count) +
                         " cases, more than its population");
      state.I[i] = infected;
      state.S[i] -= infected;
    }
  }
  return state;
}

long long total_cases_at(const std::vector<CaseRecord>& records,
                         const std::string& date) {
  if (!valid_iso_date(date))
    throw InputError("date '" + date + "' is not a valid ISO-8601 date");
  std::map<std::string, std::pair<std::string, long long>> latest;
  for (const auto& r : records) {
    if (r.date > date) continue;
    auto& slot = latest[r.location];
    if (slot.first.empty() || r.date > slot.first)
      slot = {r.date, r.cumulative_cases};
  }
  long long total = 0;
  for (const auto& [name, slot] : latest) total += slot.second;
  return total;
}

EpidemicParams params_from_r0(double r0_target, double mu) {
  if (!(mu > 0.0)) throw ConfigError("mu must be positive");
  EpidemicParams params;
  params.beta = r0_target * mu;
  params.mu = mu;
  params.alpha = 1.0;
  params.recovery_mode = RecoveryMode::Consistent;
  validate(params);
  return params;
}

void write_trajectory(const Trajectory& traj, const std::string& path) {
  std::string out = "t,location_id,S,I,R\n";
  for (const auto& state : traj.states)
    for (std::size_t i = 0; i < state.size(); ++i)
      out += format_sig12(state.t) + "," + std::to_string(i) + "," +
             format_sig12(state.S[i]) + "," + format_sig12(state.I[i]) + "," +
             format_sig12(state.R[i]) + "\n";
  write_file_atomic(path, out);
}

Trajectory read_trajectory(const std::string& path, std::size_t n_locations) {
  if (n_locations == 0)
    throw ConfigError("trajectory needs at least one location");
  const auto rows = read_csv(path, "t,location_id,S,I,R");
  if (rows.size() % n_locations != 0)
    throw InputError(path + ": " + std::to_string(rows.size()) +
                     " rows is not a multiple of " +
                     std::to_string(n_locations) + " locations");
  Trajectory traj;
  for (std::size_t base = 0; base < rows.size(); base += n_locations) {
    CompartmentState state;
    state.t = parse_double(rows[base].fields[0], path, rows[base].line, "time");
    state.S.resize(n_locations);
    state.I.resize(n_locations);
    state.R.resize(n_locations);
    for (std::size_t i = 0; i < n_locations; ++i) {
      const auto& row = rows[base + i];
      const long long id = parse_int(row.fields[1], path, row.line, "location id");
      if (id != static_cast<long long>(i))
        throw InputError(where(path, row.line) + ": expected location id " +
                         std::to_string(i) + ", got " + std::to_string(id));
      const double t = parse_double(row.fields[0], path, row.line, "time");
      if (t != state.t)
        throw InputError(where(path, row.line) +
                         ": time changes mid-block, expected " +
                         format_sig12(state.t));
      state.S[i] = parse_double(row.fields[2], path, row.line, "S");
      state.I[i] = parse_double(row.fields[3], path, row.line, "I");
      state.R[i] = parse_double(row.fields[4], path, row.line, "R");
    }
    traj.states.push_back(std::move(state));
  }
  return traj;
}

void write_aggregate(const Trajectory& traj, const std::string& path) {
  std::string out = "t,S_total,I_total,R_total,s_frac,i_frac,r_frac\n";
  for (const auto& state : traj.states) {
    double s = 0.0, i = 0.0, r = 0.0;
    for (double x : state.S) s += x;
    for (double x : state.I) i += x;
    for (double x : state.R) r += x;
    const double total = s + i + r;
    out += format_sig12(state.t) + "," + format_sig12(s) + "," +
           format_sig12(i) + "," + format_sig12(r) + "," +
           format_sig12(total > 0.0 ? s / total : 0.0) + "," +
           format_sig12(total > 0.0 ? i / total : 0.0) + "," +
           format_sig12(total > 0.0 ? r / total : 0.0) + "\n";
  }
  write_file_atomic(path, out);
}

void write_sweep(const std::vector<SweepCell>& cells, const std::string& path) {
  std::string out =
      "alpha,percentile,peak_fraction,peak_day,attack_rate,reduction_pct\n";
  for (const auto& cell : cells)
    out += format_sig12(cell.alpha) + "," + format_sig12(cell.percentile) +
           "," + format_sig12(cell.metrics.peak_infected_fraction) + "," +
           format_sig12(cell.metrics.peak_day) + "," +
           format_sig12(cell.metrics.attack_rate) + "," +
           format_sig12(cell.metrics.reduction_vs_baseline) + "\n";
  write_file_atomic(path, out);
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path + " for reading");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
  if (!doc.is_object()) throw InputError(path + ": top level must be an object");
  check_keys(doc, {"network", "params", "seed", "quarantine", "integrator"},
             path);

  ScenarioConfig config;
  const auto base_dir = std::filesystem::path(path).parent_path();
  auto resolve = [&](const std::string& p) {
    const std::filesystem::path fp(p);
    return fp.is_absolute() ? fp.string() : (base_dir / fp).string();
  };

  {
    const std::string context = json_context(path, "network");
    const json& net = require_key(doc, "network", path);
    if (!net.is_object()) throw InputError(context + ": must be an object");
    const std::string type = get_string(require_key(net, "type", context),
                                        "type", context);
    if (type == "synthetic") {
      check_keys(net,
                 {"type", "n", "population_min", "population_max",
                  "flow_fraction", "rng_seed"},
                 context);
      SyntheticNetworkSpec spec;
      const json& jn = require_key(net, "n", context);
      spec.n = static_cast<std::size_t>(get_uint(jn, "n", context));
      spec.population_min = get_number(
          require_key(net, "population_min", context), "population_min", context);
      spec.population_max = get_number(
          require_key(net, "population_max", context), "population_max", context);
      if (net.contains("flow_fraction"))
        spec.flow_fraction =
            get_number(net["flow_fraction"], "flow_fraction", context);
      if (net.contains("rng_seed"))
        spec.rng_seed = get_uint(net["rng_seed"], "rng_seed", context);
      config.network = spec;
    } else if (type == "files") {
      check_keys(net, {"type", "od", "population"}, context);
      NetworkFiles files;
      files.od_path = resolve(get_string(require_key(net, "od", context), "od", context));
      files.population_path = resolve(
          get_string(require_key(net, "population", context), "population", context));
      config.network = files;
    } else {
      throw InputError(context + ": type must be 'synthetic' or 'files', got '" +
                       type + "'");
    }
  }

  {
    const std::string context = json_context(path, "params");
    const json& params = require_key(doc, "params", path);
    if (!params.is_object()) throw InputError(context + ": must be an object");
    check_keys(params, {"beta", "mu", "alpha", "recovery_mode"}, context);
    config.params.beta =
        get_number(require_key(params, "beta", context), "beta", context);
    config.params.mu =
        get_number(require_key(params, "mu", context), "mu", context);
    if (params.contains("alpha"))
      config.params.alpha = get_number(params["alpha"], "alpha", context);
    if (params.contains("recovery_mode")) {
      const std::string mode =
          get_string(params["recovery_mode"], "recovery_mode", context);
      if (mode == "consistent")
        config.params.recovery_mode = RecoveryMode::Consistent;
      else if (mode == "paper_literal")
        config.params.recovery_mode = RecoveryMode::PaperLiteral;
      else
        throw InputError(context +
                         ": recovery_mode must be 'consistent' or "
                         "'paper_literal', got '" + mode + "'");
    }
    validate(config.params);
  }

  if (doc.contains("seed")) {
    const std::string context = json_context(path, "seed");
    const json& seed = doc["seed"];
    if (!seed.is_object()) throw InputError(context + ": must be an object");
    const std::string type =
        get_string(require_key(seed, "type", context), "type", context);
    if (type == "strategy") {
      check_keys(seed, {"type", "strategy", "rng_seed", "fraction"}, context);
      StrategySeed s;
      const std::string name =
          get_string(require_key(seed, "strategy", context), "strategy", context);
      if (name == "random")
        s.strategy.variant = SeedVariant::RandomLocation;
      else if (name == "weakest")
        s.strategy.variant = SeedVariant::WeakestConnected;
      else if (name == "strongest")
        s.strategy.variant = SeedVariant::StrongestConnected;
      else
        throw InputError(context +
                         ": strategy must be 'random', 'weakest' or "
                         "'strongest', got '" + name + "'");
      if (seed.contains("rng_seed"))
        s.strategy.rng_seed = get_uint(seed["rng_seed"], "rng_seed", context);
      if (seed.contains("fraction"))
        s.fraction = get_number(seed["fraction"], "fraction", context);
      config.seed = s;
    } else if (type == "explicit") {
      check_keys(seed, {"type", "infected"}, context);
      ExplicitSeed s;
      const json& infected = require_key(seed, "infected", context);
      if (!infected.is_object())
        throw InputError(context + ": 'infected' must be an object");
      for (const auto& [name, value] : infected.items()) {
        const double count = get_number(value, name.c_str(), context);
        if (!(count >= 0.0))
          throw InputError(context + ": infected count for '" + name +
                           "' must be non-negative");
        s.infected[name] = count;
      }
      config.seed = s;
    } else {
      throw InputError(context + ": type must be 'strategy' or 'explicit', got '" +
                       type + "'");
    }
  } else {
    config.seed = StrategySeed{};
  }

  if (doc.contains("quarantine")) {
    const std::string context = json_context(path, "quarantine");
    const json& q = doc["quarantine"];
    if (!q.is_object()) throw InputError(context + ": must be an object");
    check_keys(q, {"percentile"}, context);
    config.quarantine.percentile =
        get_number(require_key(q, "percentile", context), "percentile", context);
    if (!(config.quarantine.percentile >= 0.0) ||
        !(config.quarantine.percentile <= 100.0))
      throw InputError(context + ": percentile must be in [0, 100]");
  }

  if (doc.contains("integrator")) {
    const std::string context = json_context(path, "integrator");
    const json& integ = doc["integrator"];
    if (!integ.is_object()) throw InputError(context + ": must be an object");
    check_keys(integ, {"scheme", "dt", "horizon"}, context);
    if (integ.contains("scheme")) {
      const std::string scheme = get_string(integ["scheme"], "scheme", context);
      if (scheme == "euler")
        config.integrator.scheme = Scheme::Euler;
      else if (scheme == "rk4")
        config.integrator.scheme = Scheme::RK4;
      else
        throw InputError(context + ": scheme must be 'euler' or 'rk4', got '" +
                         scheme + "'");
    }
    if (integ.contains("dt"))
      config.integrator.dt = get_number(integ["dt"], "dt", context);
    if (integ.contains("horizon"))
      config.integrator.horizon = get_number(integ["horizon"], "horizon", context);
    validate(config.integrator);
  }

  return config;
}

MobilityNetwork realize_network(const ScenarioConfig& config) {
  if (const auto* spec = std::get_if<SyntheticNetworkSpec>(&config.network))
    return generate_random_network(spec->n, spec->population_min,
                                   spec->population_max, spec->flow_fraction,
                                   spec->rng_seed);
  const auto& files = std::get<NetworkFiles>(config.network);
  return load_network(files.od_path, files.population_path);
}

CompartmentState realize_initial_state(const ScenarioConfig& config,
                                       const MobilityNetwork& net) {
  if (const auto* strat = std::get_if<StrategySeed>(&config.seed))
    return seed_state(net, select_seed(net, strat->strategy), strat->fraction);
  const auto& explicit_seed = std::get<ExplicitSeed>(config.seed);
  const std::size_t n = net.size();
  CompartmentState state;
  state.t = 0.0;
  state.S.resize(n);
  state.I.assign(n, 0.0);
  state.R.assign(n, 0.0);
  std::unordered_map<std::string, std::size_t> by_name;
  for (std::size_t i = 0; i < n; ++i)
    by_name.emplace(net.locations()[i].name, i);
  for (std::size_t i = 0; i < n; ++i)
    state.S[i] = net.locations()[i].population;
  for (const auto& [name, count] : explicit_seed.infected) {
    const auto it = by_name.find(name);
    if (it == by_name.end())
      throw InputError("seed names unknown location '" + name + "'");
    if (count > net.locations()[it->second].population)
      throw InputError("seed for '" + name + "' exceeds its population");
    state.I[it->second] = count;
    state.S[it->second] -= count;
  }
  return state;
}

bool valid_iso_date(const std::string& date) {
  if (date.size() != 10 || date[4] != '-' || date[7] != '-') return false;
  for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
    if (date[i] < '0' || date[i] > '9') return false;
  const int y = std::stoi(date.substr(0, 4));
  const int m = std::stoi(date.substr(5, 2));
  const int d = std::stoi(date.substr(8, 2));
  using namespace std::chrono;
  return year_month_day(year(y), month(static_cast<unsigned>(m)),
                        day(static_cast<unsigned>(d)))
      .ok();
}

std::string iso_date_add(const std::string& date, int days) {
  if (!valid_iso_date(date))
    throw InputError("date '" + date + "' is not a valid ISO-8601 date");
  using namespace std::chrono;
  const int y = std::stoi(date.substr(0, 4));
  const int m = std::stoi(date.substr(5, 2));
  const int d = std::stoi(date.substr(8, 2));
  const sys_days base = sys_days(year_month_day(
      year(y), month(static_cast<unsigned>(m)), day(static_cast<unsigned>(d))));
  const year_month_day shifted(base + std::chrono::days(days));
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", int(shifted.year()),
                unsigned(shifted.month()), unsigned(shifted.day()));
  return buf;
}

std::string format_exact(double v) {
  char buf[32];
  const auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw IoError("number formatting failed");
  return std::string(buf, ptr);
}

std::string format_sig12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path tmp = target.parent_path() /
                       (target.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoError("write failure on " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw IoError("cannot move " + tmp.string() + " to " + path + ": " +
                  ec.message());
  }
}

}  // namespace mobsir
