#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "mobsir/errors.hpp"
#include "mobsir/io.hpp"

using namespace mobsir;
namespace fs = std::filesystem;

namespace {

const std::string kDataDir = MOBSIR_DATA_DIR;

struct TempDir {
  fs::path path;
  TempDir() {
    std::string tmpl = (fs::temp_directory_path() / "mobsir_io_XXXXXX").string();
    path = mkdtemp(tmpl.data());
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

void put(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  return content;
}

template <typename Fn>
std::string error_message(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  FAIL("expected an error");
  return {};
}

}  // namespace

TEST_CASE("load_network reads the documented CSV convention") {
  TempDir tmp;
  put(tmp.file("pop.csv"), "id,name,population\n0,A,100\n1,B,200\n");
  SUBCASE("zero OD rows give an all-zero matrix") {
    put(tmp.file("od.csv"), "from,to,flow\n");
    const auto net = load_network(tmp.file("od.csv"), tmp.file("pop.csv"));
    REQUIRE(net.size() == 2);
    CHECK(net.flow(0, 1) == 0.0);
    CHECK(net.flow(1, 0) == 0.0);
    CHECK(net.location(0).name == "A");
    CHECK(net.location(1).population == 200.0);
  }
  SUBCASE("a flow row lands at flows[to][from]") {
    put(tmp.file("od.csv"), "from,to,flow\nA,B,50\n");
    const auto net = load_network(tmp.file("od.csv"), tmp.file("pop.csv"));
    CHECK(net.flow(1, 0) == 50.0);
    CHECK(net.flow(0, 1) == 0.0);
  }
  SUBCASE("population rows may come in any id order") {
    put(tmp.file("pop2.csv"), "id,name,population\n1,B,200\n0,A,100\n");
    put(tmp.file("od.csv"), "from,to,flow\nB,A,7\n");
    const auto net = load_network(tmp.file("od.csv"), tmp.file("pop2.csv"));
    CHECK(net.location(0).name == "A");
    CHECK(net.location(1).name == "B");
    CHECK(net.flow(0, 1) == 7.0);
  }
}

TEST_CASE("loader rejects malformed network files with line numbers") {
  TempDir tmp;
  put(tmp.file("pop.csv"), "id,name,population\n0,A,100\n1,B,200\n");

  SUBCASE("duplicate ordered pair") {
    put(tmp.file("od.csv"), "from,to,flow\nA,B,50\nA,B,60\n");
    const auto msg = error_message([&] {
      load_network(tmp.file("od.csv"), tmp.file("pop.csv"));
    });
    CHECK(msg.find(":3") != std::string::npos);
    CHECK(msg.find("duplicate pair") != std::string::npos);
  }
  SUBCASE("unknown location name") {
    put(tmp.file("od.csv"), "from,to,flow\nA,Z,50\n");
    const auto msg = error_message([&] {
      load_network(tmp.file("od.csv"), tmp.file("pop.csv"));
    });
    CHECK(msg.find(":2") != std::string::npos);
    CHECK(msg.find("Z") != std::string::npos);
  }
  SUBCASE("self flow") {
    put(tmp.file("od.csv"), "from,to,flow\nA,A,50\n");
    CHECK_THROWS_AS(load_network(tmp.file("od.csv"), tmp.file("pop.csv")),
                    InputError);
  }
  SUBCASE("negative flow") {
    put(tmp.file("od.csv"), "from,to,flow\nA,B,-1\n");
    CHECK_THROWS_AS(load_network(tmp.file("od.csv"), tmp.file("pop.csv")),
                    InputError);
  }
  SUBCASE("wrong field count") {
    put(tmp.file("od.csv"), "from,to,flow\nA,B\n");
    const auto msg = error_message([&] {
      load_network(tmp.file("od.csv"), tmp.file("pop.csv"));
    });
    CHECK(msg.find(":2") != std::string::npos);
  }
  SUBCASE("unparseable number") {
    put(tmp.file("od.csv"), "from,to,flow\nA,B,fifty\n");
    CHECK_THROWS_AS(load_network(tmp.file("od.csv"), tmp.file("pop.csv")),
                    InputError);
  }
  SUBCASE("blank interior line") {
    put(tmp.file("od.csv"), "from,to,flow\nA,B,50\n\nB,A,10\n");
    const auto msg = error_message([&] {
      load_network(tmp.file("od.csv"), tmp.file("pop.csv"));
    });
    CHECK(msg.find(":3") != std::string::npos);
  }
  SUBCASE("wrong header") {
    put(tmp.file("od.csv"), "src,dst,weight\nA,B,50\n");
    const auto msg = error_message([&] {
      load_network(tmp.file("od.csv"), tmp.file("pop.csv"));
    });
    CHECK(msg.find(":1") != std::string::npos);
  }
  SUBCASE("duplicate id") {
    put(tmp.file("bad_pop.csv"), "id,name,population\n0,A,100\n0,B,200\n");
    put(tmp.file("od.csv"), "from,to,flow\n");
    const auto msg = error_message([&] {
      load_network(tmp.file("od.csv"), tmp.file("bad_pop.csv"));
    });
    CHECK(msg.find(":3") != std::string::npos);
    CHECK(msg.find("duplicate id") != std::string::npos);
  }
  SUBCASE("duplicate name") {
    put(tmp.file("bad_pop.csv"), "id,name,population\n0,A,100\n1,A,200\n");
    put(tmp.file("od.csv"), "from,to,flow\n");
    CHECK_THROWS_AS(load_network(tmp.file("od.csv"), tmp.file("bad_pop.csv")),
                    InputError);
  }
  SUBCASE("non-contiguous ids") {
    put(tmp.file("bad_pop.csv"), "id,name,population\n0,A,100\n2,B,200\n");
    put(tmp.file("od.csv"), "from,to,flow\n");
    CHECK_THROWS_AS(load_network(tmp.file("od.csv"), tmp.file("bad_pop.csv")),
                    InputError);
  }
  SUBCASE("non-positive population") {
    put(tmp.file("bad_pop.csv"), "id,name,population\n0,A,0\n");
    put(tmp.file("od.csv"), "from,to,flow\n");
    CHECK_THROWS_AS(load_network(tmp.file("od.csv"), tmp.file("bad_pop.csv")),
                    InputError);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_network(tmp.file("nope.csv"), tmp.file("pop.csv")),
                    IoError);
  }
}

TEST_CASE("network write/load round-trip is exact") {
  TempDir tmp;
  const auto net = generate_random_network(12, 1e3, 1e6, 0.3, 5);
  write_network(net, tmp.file("od.csv"), tmp.file("pop.csv"));
  const auto back = load_network(tmp.file("od.csv"), tmp.file("pop.csv"));
  REQUIRE(back.size() == net.size());
  for (std::size_t i = 0; i < net.size(); ++i) {
    CHECK(back.location(i).name == net.location(i).name);
    CHECK(back.location(i).population == net.location(i).population);
  }
  CHECK(back.flows() == net.flows());
}

TEST_CASE("Estonia fixtures load with the documented initial state") {
  const auto net = load_network(kDataDir + "/estonia/od.csv",
                                kDataDir + "/estonia/population.csv");
  REQUIRE(net.size() == 15);

  std::size_t harju = net.size(), tartumaa = net.size(), saaremaa = net.size();
  for (std::size_t i = 0; i < net.size(); ++i) {
    if (net.location(i).name == "Harju") harju = i;
    if (net.location(i).name == "Tartumaa") tartumaa = i;
    if (net.location(i).name == "Saaremaa") saaremaa = i;
  }
  REQUIRE(harju < net.size());
  REQUIRE(tartumaa < net.size());
  REQUIRE(saaremaa < net.size());

  const auto state = load_initial_cases(kDataDir + "/estonia/cases.csv",
                                        "2020-03-11", net);
  CHECK(state.I[harju] == 13.0);
  CHECK(state.I[tartumaa] == 2.0);
  CHECK(state.I[saaremaa] == 2.0);
  for (std::size_t i = 0; i < net.size(); ++i) {
    if (i != harju && i != tartumaa && i != saaremaa) CHECK(state.I[i] == 0.0);
    CHECK(state.R[i] == 0.0);
    CHECK(state.S[i] + state.I[i] + state.R[i] ==
          net.location(i).population);
  }
}

TEST_CASE("case file validation") {
  TempDir tmp;
  put(tmp.file("pop.csv"), "id,name,population\n0,A,100\n1,B,200\n");
  put(tmp.file("od.csv"), "from,to,flow\n");
  const auto net = load_network(tmp.file("od.csv"), tmp.file("pop.csv"));

  SUBCASE("empty case file leaves everyone susceptible") {
    put(tmp.file("cases.csv"), "date,location,cumulative_cases\n");
    const auto state = load_initial_cases(tmp.file("cases.csv"), "2020-03-11", net);
    CHECK(state.S[0] == 100.0);
    CHECK(state.S[1] == 200.0);
    CHECK(state.I[0] == 0.0);
    CHECK(state.I[1] == 0.0);
  }
  SUBCASE("latest report at or before the cutoff wins") {
    put(tmp.file("cases.csv"),
        "date,location,cumulative_cases\n"
        "2020-03-01,A,1\n2020-03-05,A,4\n2020-03-12,A,9\n");
    const auto state = load_initial_cases(tmp.file("cases.csv"), "2020-03-11", net);
    CHECK(state.I[0] == 4.0);
    CHECK(state.S[0] == 96.0);
  }
  SUBCASE("cutoff outside file coverage") {
    put(tmp.file("cases.csv"),
        "date,location,cumulative_cases\n2020-03-01,A,1\n2020-03-05,A,4\n");
    CHECK_THROWS_AS(load_initial_cases(tmp.file("cases.csv"), "2020-02-01", net),
                    InputError);
    CHECK_THROWS_AS(load_initial_cases(tmp.file("cases.csv"), "2020-03-06", net),
                    InputError);
  }
  SUBCASE("non-monotone cumulative counts") {
    put(tmp.file("cases.csv"),
        "date,location,cumulative_cases\n2020-03-01,A,5\n2020-03-02,A,3\n");
    const auto msg = error_message([&] {
      load_case_records(tmp.file("cases.csv"));
    });
    CHECK(msg.find(":3") != std::string::npos);
    CHECK(msg.find("decrease") != std::string::npos);
  }
  SUBCASE("duplicate date for a location") {
    put(tmp.file("cases.csv"),
        "date,location,cumulative_cases\n2020-03-01,A,5\n2020-03-01,A,5\n");
    CHECK_THROWS_AS(load_case_records(tmp.file("cases.csv")), InputError);
  }
  SUBCASE("invalid date") {
    put(tmp.file("cases.csv"),
        "date,location,cumulative_cases\n2020-13-01,A,5\n");
    CHECK_THROWS_AS(load_case_records(tmp.file("cases.csv")), InputError);
  }
  SUBCASE("negative count") {
    put(tmp.file("cases.csv"),
        "date,location,cumulative_cases\n2020-03-01,A,-5\n");
    CHECK_THROWS_AS(load_case_records(tmp.file("cases.csv")), InputError);
  }
  SUBCASE("unknown location") {
    put(tmp.file("cases.csv"),
        "date,location,cumulative_cases\n2020-03-01,Z,5\n");
    const auto msg = error_message([&] {
      load_initial_cases(tmp.file("cases.csv"), "2020-03-01", net);
    });
    CHECK(msg.find(":2") != std::string::npos);
    CHECK(msg.find("Z") != std::string::npos);
  }
  SUBCASE("case count exceeding population") {
    put(tmp.file("cases.csv"),
        "date,location,cumulative_cases\n2020-03-01,A,101\n");
    CHECK_THROWS_AS(load_initial_cases(tmp.file("cases.csv"), "2020-03-01", net),
                    InputError);
  }
  SUBCASE("invalid cutoff") {
    put(tmp.file("cases.csv"),
        "date,location,cumulative_cases\n2020-03-01,A,1\n");
    CHECK_THROWS_AS(load_initial_cases(tmp.file("cases.csv"), "11/03/2020", net),
                    InputError);
  }
}

TEST_CASE("total cases accumulate the latest report per location") {
  const auto records = load_case_records(kDataDir + "/estonia/cases.csv");
  CHECK(total_cases_at(records, "2020-03-11") == 17);
  CHECK(total_cases_at(records, "2020-02-27") == 1);
  CHECK(total_cases_at(records, "2020-02-01") == 0);
  CHECK(total_cases_at(records, "2021-01-01") == 1175);
  CHECK_THROWS_AS(total_cases_at(records, "not-a-date"), InputError);
}

TEST_CASE("params_from_r0 solves beta from the classical ratio") {
  const auto params = params_from_r0(2.5, 0.2);
  CHECK(params.beta == 0.5);
  CHECK(params.mu == 0.2);
  CHECK(params.alpha == 1.0);
  CHECK(params.recovery_mode == RecoveryMode::Consistent);
  CHECK(params_from_r0(1.0, 0.3).beta == 0.3);
  CHECK_THROWS_AS(params_from_r0(2.5, 0.5), ConfigError);
  CHECK_THROWS_AS(params_from_r0(2.5, 0.0), ConfigError);
  CHECK_THROWS_AS(params_from_r0(-1.0, 0.2), ConfigError);
}

TEST_CASE("trajectory CSV round-trips to 12 significant digits") {
  TempDir tmp;
  const auto net = generate_random_network(4, 1e3, 1e5, 0.05, 9);
  CompartmentState initial;
  initial.S.resize(4);
  initial.I.resize(4);
  initial.R.assign(4, 0.0);
  for (std::size_t i = 0; i < 4; ++i) {
    const double N = net.locations()[i].population;
    initial.I[i] = 0.01 * N;
    initial.S[i] = N - initial.I[i];
  }
  const auto traj =
      simulate(net, {0.5, 0.2, 1.0}, initial, {Scheme::RK4, 0.1, 20.0});
  write_trajectory(traj, tmp.file("traj.csv"));
  const auto back = read_trajectory(tmp.file("traj.csv"), 4);
  REQUIRE(back.states.size() == traj.states.size());
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    CHECK(std::abs(back.states[k].t - traj.states[k].t) <=
          1e-11 * std::max(1.0, std::abs(traj.states[k].t)));
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(std::abs(back.states[k].S[i] - traj.states[k].S[i]) <=
            1e-11 * std::max(1.0, traj.states[k].S[i]));
      CHECK(std::abs(back.states[k].I[i] - traj.states[k].I[i]) <=
            1e-11 * std::max(1.0, traj.states[k].I[i]));
      CHECK(std::abs(back.states[k].R[i] - traj.states[k].R[i]) <=
            1e-11 * std::max(1.0, traj.states[k].R[i]));
    }
  }
}

TEST_CASE("aggregate CSV has one row per sampled state") {
  TempDir tmp;
  Trajectory traj;
  for (int k = 0; k < 2; ++k) {
    CompartmentState state;
    state.t = 0.1 * k;
    state.S = {90.0 - k};
    state.I = {10.0};
    state.R = {static_cast<double>(k)};
    traj.states.push_back(state);
  }
  write_aggregate(traj, tmp.file("agg.csv"));
  const auto content = slurp(tmp.file("agg.csv"));
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < content.size()) {
    const auto pos = content.find('\n', start);
    lines.push_back(content.substr(start, pos - start));
    start = pos + 1;
  }
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "t,S_total,I_total,R_total,s_frac,i_frac,r_frac");
  CHECK(lines[1] == "0,90,10,0,0.9,0.1,0");
  CHECK(lines[2] == "0.1,89,10,1,0.89,0.1,0.01");
}

TEST_CASE("aggregate fractions stay within the unit interval") {
  TempDir tmp;
  const auto net = generate_random_network(6, 1e3, 1e5, 0.05, 3);
  CompartmentState initial;
  initial.S.resize(6);
  initial.I.resize(6);
  initial.R.assign(6, 0.0);
  for (std::size_t i = 0; i < 6; ++i) {
    const double N = net.locations()[i].population;
    initial.I[i] = 0.001 * N;
    initial.S[i] = N - initial.I[i];
  }
  const auto traj =
      simulate(net, {0.5, 0.2, 1.0}, initial, {Scheme::RK4, 0.1, 50.0});
  write_aggregate(traj, tmp.file("agg.csv"));
  const auto content = slurp(tmp.file("agg.csv"));
  std::size_t start = content.find('\n') + 1;
  while (start < content.size()) {
    const auto end = content.find('\n', start);
    const std::string line = content.substr(start, end - start);
    start = end + 1;
    std::vector<double> fields;
    std::size_t fstart = 0;
    while (fstart <= line.size()) {
      const auto fend = line.find(',', fstart);
      fields.push_back(std::stod(line.substr(fstart, fend - fstart)));
      if (fend == std::string::npos) break;
      fstart = fend + 1;
    }
    REQUIRE(fields.size() == 7);
    for (std::size_t f = 4; f < 7; ++f) {
      CHECK(fields[f] >= 0.0);
      CHECK(fields[f] <= 1.0);
    }
  }
}

TEST_CASE("sweep CSV lists every cell under the documented header") {
  TempDir tmp;
  std::vector<SweepCell> cells(2);
  cells[0] = {1.0, 0.0, {0.25, 40.0, 0.9, 0.0}};
  cells[1] = {1.0, 10.0, {0.2, 45.0, 0.72, 20.0}};
  write_sweep(cells, tmp.file("sweep.csv"));
  const auto content = slurp(tmp.file("sweep.csv"));
  CHECK(content ==
        "alpha,percentile,peak_fraction,peak_day,attack_rate,reduction_pct\n"
        "1,0,0.25,40,0.9,0\n"
        "1,10,0.2,45,0.72,20\n");
}

TEST_CASE("scenario files parse into full configurations") {
  TempDir tmp;
  SUBCASE("synthetic network with a strategy seed") {
    put(tmp.file("s.json"), R"({
      "network": {"type": "synthetic", "n": 16, "population_min": 10000,
                  "population_max": 1000000, "flow_fraction": 0.01, "rng_seed": 42},
      "params": {"beta": 0.5, "mu": 0.2, "alpha": 0.5},
      "seed": {"type": "strategy", "strategy": "weakest", "fraction": 0.001},
      "quarantine": {"percentile": 10},
      "integrator": {"scheme": "euler", "dt": 0.05, "horizon": 120}
    })");
    const auto config = load_scenario(tmp.file("s.json"));
    const auto* spec = std::get_if<SyntheticNetworkSpec>(&config.network);
    REQUIRE(spec != nullptr);
    CHECK(spec->n == 16);
    CHECK(spec->population_min == 10000.0);
    CHECK(spec->population_max == 1000000.0);
    CHECK(spec->flow_fraction == 0.01);
    CHECK(spec->rng_seed == 42);
    CHECK(config.params.beta == 0.5);
    CHECK(config.params.mu == 0.2);
    CHECK(config.params.alpha == 0.5);
    CHECK(config.params.recovery_mode == RecoveryMode::Consistent);
    const auto* seed = std::get_if<StrategySeed>(&config.seed);
    REQUIRE(seed != nullptr);
    CHECK(seed->strategy.variant == SeedVariant::WeakestConnected);
    CHECK(seed->fraction == 0.001);
    CHECK(config.quarantine.percentile == 10.0);
    CHECK(config.integrator.scheme == Scheme::Euler);
    CHECK(config.integrator.dt == 0.05);
    CHECK(config.integrator.horizon == 120.0);

    const auto net = realize_network(config);
    CHECK(net.size() == 16);
    const auto state = realize_initial_state(config, net);
    const auto expected = seed_state(
        net, select_seed(net, {SeedVariant::WeakestConnected, 0}), 0.001);
    CHECK(state.S == expected.S);
    CHECK(state.I == expected.I);
  }
  SUBCASE("file network with explicit seed counts, relative paths") {
    put(tmp.file("pop.csv"), "id,name,population\n0,A,100\n1,B,200\n");
    put(tmp.file("od.csv"), "from,to,flow\nA,B,5\n");
    put(tmp.file("s.json"), R"({
      "network": {"type": "files", "od": "od.csv", "population": "pop.csv"},
      "params": {"beta": 0.5, "mu": 0.2, "recovery_mode": "paper_literal"},
      "seed": {"type": "explicit", "infected": {"B": 20}}
    })");
    const auto config = load_scenario(tmp.file("s.json"));
    CHECK(config.params.recovery_mode == RecoveryMode::PaperLiteral);
    CHECK(config.params.alpha == 1.0);
    CHECK(config.quarantine.percentile == 0.0);
    CHECK(config.integrator.scheme == Scheme::RK4);
    const auto net = realize_network(config);
    REQUIRE(net.size() == 2);
    const auto state = realize_initial_state(config, net);
    CHECK(state.I[1] == 20.0);
    CHECK(state.S[1] == 180.0);
    CHECK(state.I[0] == 0.0);
    CHECK(state.S[0] == 100.0);
  }
  SUBCASE("defaults for optional sections") {
    put(tmp.file("s.json"), R"({
      "network": {"type": "synthetic", "n": 4, "population_min": 1000,
                  "population_max": 2000},
      "params": {"beta": 0.4, "mu": 0.1}
    })");
    const auto config = load_scenario(tmp.file("s.json"));
    const auto* spec = std::get_if<SyntheticNetworkSpec>(&config.network);
    REQUIRE(spec != nullptr);
    CHECK(spec->flow_fraction == 0.01);
    CHECK(spec->rng_seed == 0);
    const auto* seed = std::get_if<StrategySeed>(&config.seed);
    REQUIRE(seed != nullptr);
    CHECK(seed->strategy.variant == SeedVariant::RandomLocation);
    CHECK(seed->fraction == 0.001);
    CHECK(config.integrator.dt == 0.1);
    CHECK(config.integrator.horizon == 300.0);
  }
}

TEST_CASE("scenario validation rejects malformed documents") {
  TempDir tmp;
  SUBCASE("unknown top-level key") {
    put(tmp.file("s.json"), R"({
      "network": {"type": "synthetic", "n": 4, "population_min": 1, "population_max": 2},
      "params": {"beta": 0.4, "mu": 0.1},
      "extra": 1
    })");
    const auto msg = error_message([&] { load_scenario(tmp.file("s.json")); });
    CHECK(msg.find("unknown key 'extra'") != std::string::npos);
  }
  SUBCASE("unknown nested key") {
    put(tmp.file("s.json"), R"({
      "network": {"type": "synthetic", "n": 4, "population_min": 1, "population_max": 2},
      "params": {"beta": 0.4, "mu": 0.1, "gamma": 0.3}
    })");
    const auto msg = error_message([&] { load_scenario(tmp.file("s.json")); });
    CHECK(msg.find("unknown key 'gamma'") != std::string::npos);
  }
  SUBCASE("missing required key") {
    put(tmp.file("s.json"), R"({
      "network": {"type": "synthetic", "n": 4, "population_min": 1, "population_max": 2},
      "params": {"mu": 0.1}
    })");
    const auto msg = error_message([&] { load_scenario(tmp.file("s.json")); });
    CHECK(msg.find("missing required key 'beta'") != std::string::npos);
  }
  SUBCASE("bad enum value") {
    put(tmp.file("s.json"), R"({
      "network": {"type": "synthetic", "n": 4, "population_min": 1, "population_max": 2},
      "params": {"beta": 0.4, "mu": 0.1},
      "seed": {"type": "strategy", "strategy": "hub"}
    })");
    CHECK_THROWS_AS(load_scenario(tmp.file("s.json")), InputError);
  }
  SUBCASE("syntax error") {
    put(tmp.file("s.json"), "{ not json");
    CHECK_THROWS_AS(load_scenario(tmp.file("s.json")), InputError);
  }
  SUBCASE("out-of-range params surface as config errors") {
    put(tmp.file("s.json"), R"({
      "network": {"type": "synthetic", "n": 4, "population_min": 1, "population_max": 2},
      "params": {"beta": 1.4, "mu": 0.1}
    })");
    CHECK_THROWS_AS(load_scenario(tmp.file("s.json")), ConfigError);
  }
  SUBCASE("percentile out of range") {
    put(tmp.file("s.json"), R"({
      "network": {"type": "synthetic", "n": 4, "population_min": 1, "population_max": 2},
      "params": {"beta": 0.4, "mu": 0.1},
      "quarantine": {"percentile": 150}
    })");
    CHECK_THROWS_AS(load_scenario(tmp.file("s.json")), InputError);
  }
  SUBCASE("explicit seed above population") {
    put(tmp.file("pop.csv"), "id,name,population\n0,A,100\n");
    put(tmp.file("od.csv"), "from,to,flow\n");
    put(tmp.file("s.json"), R"({
      "network": {"type": "files", "od": "od.csv", "population": "pop.csv"},
      "params": {"beta": 0.4, "mu": 0.1},
      "seed": {"type": "explicit", "infected": {"A": 200}}
    })");
    const auto config = load_scenario(tmp.file("s.json"));
    const auto net = realize_network(config);
    CHECK_THROWS_AS(realize_initial_state(config, net), InputError);
  }
  SUBCASE("explicit seed with unknown location") {
    put(tmp.file("pop.csv"), "id,name,population\n0,A,100\n");
    put(tmp.file("od.csv"), "from,to,flow\n");
    put(tmp.file("s.json"), R"({
      "network": {"type": "files", "od": "od.csv", "population": "pop.csv"},
      "params": {"beta": 0.4, "mu": 0.1},
      "seed": {"type": "explicit", "infected": {"Q": 1}}
    })");
    const auto config = load_scenario(tmp.file("s.json"));
    const auto net = realize_network(config);
    CHECK_THROWS_AS(realize_initial_state(config, net), InputError);
  }
  SUBCASE("missing scenario file names the path") {
    const auto msg = error_message([&] { load_scenario(tmp.file("gone.json")); });
    CHECK(msg.find("gone.json") != std::string::npos);
  }
}

TEST_CASE("bundled scenario examples load") {
  const auto synthetic = load_scenario(kDataDir + "/scenario_synthetic.json");
  CHECK(std::holds_alternative<SyntheticNetworkSpec>(synthetic.network));
  const auto estonia = load_scenario(kDataDir + "/estonia/scenario.json");
  CHECK(std::holds_alternative<NetworkFiles>(estonia.network));
  const auto net = realize_network(estonia);
  CHECK(net.size() == 15);
  const auto state = realize_initial_state(estonia, net);
  double infected = 0.0;
  for (double x : state.I) infected += x;
  CHECK(infected == 17.0);
}

TEST_CASE("date helpers") {
  CHECK(valid_iso_date("2020-03-11"));
  CHECK(valid_iso_date("2020-02-29"));
  CHECK_FALSE(valid_iso_date("2021-02-29"));
  CHECK_FALSE(valid_iso_date("2020-13-01"));
  CHECK_FALSE(valid_iso_date("2020-02-30"));
  CHECK_FALSE(valid_iso_date("2020-3-11"));
  CHECK_FALSE(valid_iso_date("20200311"));
  CHECK_FALSE(valid_iso_date("2020/03/11"));

  CHECK(iso_date_add("2020-03-11", 0) == "2020-03-11");
  CHECK(iso_date_add("2020-03-11", 20) == "2020-03-31");
  CHECK(iso_date_add("2020-03-11", 21) == "2020-04-01");
  CHECK(iso_date_add("2020-02-27", 3) == "2020-03-01");
  CHECK(iso_date_add("2020-03-11", -13) == "2020-02-27");
  CHECK_THROWS_AS(iso_date_add("garbage", 1), InputError);
}

TEST_CASE("number formatting") {
  CHECK(format_exact(0.1) == "0.1");
  CHECK(format_exact(598059.0) == "598059");
  CHECK(std::stod(format_exact(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(format_sig12(3.0 * 0.1) == "0.3");
  CHECK(format_sig12(0.0) == "0");
}

TEST_CASE("atomic writes replace the target or fail cleanly") {
  TempDir tmp;
  write_file_atomic(tmp.file("out.txt"), "hello\n");
  CHECK(slurp(tmp.file("out.txt")) == "hello\n");
  write_file_atomic(tmp.file("out.txt"), "replaced\n");
  CHECK(slurp(tmp.file("out.txt")) == "replaced\n");
  CHECK_THROWS_AS(
      write_file_atomic((tmp.path / "missing" / "out.txt").string(), "x"),
      IoError);
  CHECK_FALSE(fs::exists(tmp.path / "out.txt.tmp"));
}
