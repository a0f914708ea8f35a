#include "gwloc/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "gwloc/io.hpp"
#include "gwloc/metrics.hpp"

namespace gwloc {

namespace {

// Marks errors that stem from the invocation itself rather than the data.
class UsageError : public Error {
 public:
  using Error::Error;
};

template <class T>
T to_number(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    T v{};
    if constexpr (std::is_same_v<T, double>) {
      v = std::stod(value, &used);
    } else if constexpr (std::is_same_v<T, std::uint64_t>) {
      v = std::stoull(value, &used);
    } else if constexpr (std::is_same_v<T, std::int64_t>) {
      v = std::stoll(value, &used);
    } else {
      v = static_cast<T>(std::stoi(value, &used));
    }
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::logic_error&) {
    throw InvalidConfig(fmt::format("bad value '{}' for {}", value, key));
  }
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true" || value == "yes" || value == "on") return true;
  if (value == "0" || value == "false" || value == "no" || value == "off") return false;
  throw InvalidConfig(fmt::format("bad boolean '{}' for {}", value, key));
}

template <class T, class F>
std::string join(const std::vector<T>& items, F&& fmt_one) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ',';
    out += fmt_one(items[i]);
  }
  return out;
}

}  // namespace

std::uint64_t default_seed() {
  if (const char* env = std::getenv("GWLOC_SEED")) {
    try {
      return to_number<std::uint64_t>("GWLOC_SEED", env);
    } catch (const InvalidConfig&) {
    }
  }
  return 1;
}

void apply_config(ExperimentConfig& cfg, const std::map<std::string, std::string>& kv) {
  auto& mc = cfg.method_configs;
  for (const auto& [key, value] : kv) {
    if (key == "scenarios") {
      cfg.scenarios.clear();
      for (const auto& s : split_list(value)) cfg.scenarios.push_back(parse_scenario(s));
    } else if (key == "densities") {
      cfg.densities.clear();
      for (const auto& d : split_list(value)) cfg.densities.push_back(to_number<int>(key, d));
    } else if (key == "methods") {
      cfg.methods.clear();
      for (const auto& m : split_list(value)) cfg.methods.push_back(parse_method(m));
    } else if (key == "m") {
      cfg.m = to_number<int>(key, value);
    } else if (key == "replications") {
      cfg.replications = to_number<int>(key, value);
    } else if (key == "seed") {
      cfg.seed = to_number<std::uint64_t>(key, value);
    } else if (key == "jobs") {
      cfg.jobs = to_number<int>(key, value);
    } else if (key == "record_runtime") {
      cfg.record_runtime = to_bool(key, value);
    } else if (key == "radius") {
      cfg.topology.area_radius = to_number<double>(key, value);
    } else if (key == "range") {
      cfg.transmission_range = to_number<double>(key, value);
    } else if (key == "scale_radius") {
      cfg.scale_radius = to_bool(key, value);
    } else if (key == "reference_density") {
      cfg.reference_density = to_number<int>(key, value);
    } else if (key == "node_count_mode") {
      if (value == "fixed") {
        cfg.topology.node_count_mode = NodeCountMode::Fixed;
      } else if (value == "poisson") {
        cfg.topology.node_count_mode = NodeCountMode::Poisson;
      } else {
        throw InvalidConfig(fmt::format("node_count_mode must be fixed or poisson, got '{}'", value));
      }
    } else if (key == "min_separation") {
      cfg.topology.min_separation = to_number<double>(key, value);
    } else if (key == "cluster_separation") {
      cfg.topology.cluster_separation = to_number<double>(key, value);
    } else if (key == "sigma_fraction") {
      cfg.topology.gaussian_sigma_fraction = to_number<double>(key, value);
    } else if (key == "cluster_count") {
      cfg.topology.cluster_count = to_number<int>(key, value);
    } else if (key == "cluster_fraction") {
      cfg.topology.cluster_fraction = to_number<double>(key, value);
    } else if (key == "cluster_radius") {
      cfg.topology.cluster_radius = to_number<double>(key, value);
    } else if (key == "max_topology_attempts") {
      cfg.max_topology_attempts = to_number<int>(key, value);
    } else if (key == "ws") {
      cfg.capacity.ws = to_number<double>(key, value);
    } else if (key == "wg") {
      cfg.capacity.wg = to_number<double>(key, value);
    } else if (key == "kmeans_replications") {
      mc.kmeans_replications = to_number<int>(key, value);
    } else if (key == "kmedoids_replications") {
      mc.kmedoids_replications = to_number<int>(key, value);
    } else if (key == "ga_population") {
      mc.ga.population_size = to_number<int>(key, value);
    } else if (key == "ga_generations") {
      mc.ga.generations = to_number<int>(key, value);
    } else if (key == "mutation_prob") {
      const double p = to_number<double>(key, value);
      mc.ga.mutation_prob = mc.kga.ga.mutation_prob = mc.kmga.ga.mutation_prob = p;
    } else if (key == "kga_t") {
      mc.kga.t = to_number<int>(key, value);
    } else if (key == "kga_replications") {
      mc.kga.clustering_replications = to_number<int>(key, value);
    } else if (key == "kga_generations") {
      mc.kga.ga.generations = to_number<int>(key, value);
    } else if (key == "kmga_t") {
      mc.kmga.t = to_number<int>(key, value);
    } else if (key == "kmga_replications") {
      mc.kmga.clustering_replications = to_number<int>(key, value);
    } else if (key == "kmga_generations") {
      mc.kmga.ga.generations = to_number<int>(key, value);
    } else if (key == "exact_budget") {
      mc.exact.node_budget = to_number<std::int64_t>(key, value);
    } else {
      throw InvalidConfig(fmt::format("unknown config key '{}'", key));
    }
  }
}

std::string describe_config(const ExperimentConfig& cfg) {
  const auto& mc = cfg.method_configs;
  const auto& t = cfg.topology;
  std::string s;
  auto line = [&s](std::string_view key, const auto& value) { s += fmt::format("{}={}\n", key, value); };
  line("scenarios", join(cfg.scenarios, [](Scenario x) { return std::string(scenario_name(x)); }));
  line("densities", join(cfg.densities, [](int d) { return std::to_string(d); }));
  line("methods", join(cfg.methods, [](Method x) { return std::string(method_name(x)); }));
  line("m", cfg.m);
  line("replications", cfg.replications);
  line("seed", cfg.seed);
  line("jobs", cfg.jobs);
  line("record_runtime", cfg.record_runtime ? "true" : "false");
  line("radius", format_double(t.area_radius));
  line("range", format_double(cfg.transmission_range));
  line("scale_radius", cfg.scale_radius ? "true" : "false");
  line("reference_density", cfg.reference_density);
  line("node_count_mode", t.node_count_mode == NodeCountMode::Fixed ? "fixed" : "poisson");
  if (t.min_separation) line("min_separation", format_double(*t.min_separation));
  line("cluster_separation", format_double(t.cluster_separation));
  line("sigma_fraction", format_double(t.gaussian_sigma_fraction));
  line("cluster_count", t.cluster_count);
  line("cluster_fraction", format_double(t.cluster_fraction));
  line("cluster_radius", format_double(t.cluster_radius));
  line("max_topology_attempts", cfg.max_topology_attempts);
  line("ws", format_double(cfg.capacity.ws));
  line("wg", format_double(cfg.capacity.wg));
  line("kmeans_replications", mc.kmeans_replications);
  line("kmedoids_replications", mc.kmedoids_replications);
  line("ga_population", mc.ga.population_size);
  line("ga_generations", mc.ga.generations);
  line("mutation_prob", format_double(mc.ga.mutation_prob));
  line("kga_t", mc.kga.t);
  line("kga_replications", mc.kga.clustering_replications);
  line("kga_generations", mc.kga.ga.generations);
  line("kmga_t", mc.kmga.t);
  line("kmga_replications", mc.kmga.clustering_replications);
  line("kmga_generations", mc.kmga.ga.generations);
  line("exact_budget", mc.exact.node_budget);
  return s;
}

namespace {

struct GenOptions {
  std::string scenario = "uniform";
  int density = 310;
  std::uint64_t seed = 1;
  double radius = 1000.0;
  double range = 200.0;
  std::string mode = "fixed";
  double cluster_fraction = 0.5;
  int cluster_count = 6;
  std::string out;
};

struct PlaceOptions {
  std::string in;
  std::string method;
  int m = 4;
  std::uint64_t seed = 1;
  double range = 200.0;
  std::string out;
  std::string edges_out;
  MethodConfigs configs;
  int replications = -1;  // overrides every clustering replication count when set
  int t = -1;
  int generations = -1;
  int population = -1;
  double mutation = -1.0;
};

struct EvalOptions {
  std::string in;
  std::string placement;
  std::string gateways;
  double range = 200.0;
  std::string mode = "n-minus-m";
  double ws = 1.0;
  double wg = 100.0;
};

struct ExperimentOptions {
  std::string config;
  std::vector<std::string> overrides;
  std::string out_dir = ".";
  std::string prefix = "experiment";
  int jobs = -1;
  bool no_timing = false;
};

struct ReportOptions {
  std::string in;
  std::string summary_out;
};

int cmd_gen(const GenOptions& o, std::ostream& out) {
  TopologyConfig cfg;
  cfg.scenario = parse_scenario(o.scenario);
  cfg.density = o.density;
  cfg.seed = o.seed;
  cfg.area_radius = o.radius;
  cfg.cluster_fraction = o.cluster_fraction;
  cfg.cluster_count = o.cluster_count;
  if (o.mode == "poisson") {
    cfg.node_count_mode = NodeCountMode::Poisson;
  } else if (o.mode != "fixed") {
    throw UsageError(fmt::format("--mode must be fixed or poisson, got '{}'", o.mode));
  }
  try {
    cfg.validate();
  } catch (const InvalidConfig& e) {
    throw UsageError(e.what());
  }

  fmt::print(out, "# gen scenario={} density={} mode={} seed={} radius={} range={}\n", scenario_name(cfg.scenario),
             cfg.density, o.mode, cfg.seed, format_double(cfg.area_radius), format_double(o.range));
  const Topology topo = generate_topology(cfg);
  const auto violation = validate_topology(topo);
  const bool connected = is_fully_connected(build_graph(topo, o.range));
  if (o.out.empty()) {
    write_topology(out, topo);
  } else {
    write_topology(o.out, topo);
  }
  fmt::print(out, "cells={} connected={} separation_ok={} checksum={:016x}\n", topo.size(), connected ? "yes" : "no",
             violation ? "no" : "yes", topology_checksum(topo));
  return exit_code::kOk;
}

int cmd_place(PlaceOptions o, std::ostream& out) {
  const Method method = parse_method(o.method);
  auto& mc = o.configs;
  if (o.replications > 0) {
    mc.kmeans_replications = mc.kmedoids_replications = o.replications;
    mc.kga.clustering_replications = mc.kmga.clustering_replications = o.replications;
  }
  if (o.t > 0) mc.kga.t = mc.kmga.t = o.t;
  if (o.generations >= 0) mc.ga.generations = mc.kga.ga.generations = mc.kmga.ga.generations = o.generations;
  if (o.population > 0) mc.ga.population_size = o.population;
  if (o.mutation >= 0.0) mc.ga.mutation_prob = mc.kga.ga.mutation_prob = mc.kmga.ga.mutation_prob = o.mutation;

  const Topology topo = read_topology(o.in);
  fmt::print(out, "# place in={} method={} m={} seed={} range={} cells={}\n", o.in, method_name(method), o.m, o.seed,
             format_double(o.range), topo.size());
  const ConnectivityGraph g = build_graph(topo, o.range);
  if (!is_fully_connected(g)) throw NotConnected("topology graph is not connected at this range");
  if (!o.edges_out.empty()) {
    std::ofstream edges(o.edges_out);
    write_edge_list(edges, g);
  }

  Rng rng(o.seed);
  const auto start = std::chrono::steady_clock::now();
  const MethodOutcome outcome = run_method(method, topo, g, o.m, mc, rng);
  const double runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const auto& p = outcome.placement;
  const double anh_value = anh(p, DenominatorMode::NMinusM).anh;
  const double bnc_value = bnc(anh_value, topo.size(), o.m).capacity;
  if (!o.out.empty()) write_placement(o.out, p, method_name(method), anh_value);
  fmt::print(out, "gateways={}\n", join(p.gateways, [](CellId id) { return std::to_string(id); }));
  if (method == Method::Exact) fmt::print(out, "certified_optimal={}\n", outcome.certified_optimal ? 1 : 0);
  fmt::print(out, "method,anh,bnc_gbps,runtime_s\n{},{},{},{}\n", method_name(method), format_double(anh_value),
             format_double(bnc_value), format_double(runtime));
  return exit_code::kOk;
}

int cmd_eval(const EvalOptions& o, std::ostream& out) {
  DenominatorMode mode;
  if (o.mode == "n-minus-m") {
    mode = DenominatorMode::NMinusM;
  } else if (o.mode == "n") {
    mode = DenominatorMode::N;
  } else {
    throw UsageError(fmt::format("--denominator must be n-minus-m or n, got '{}'", o.mode));
  }
  if (o.placement.empty() == o.gateways.empty()) throw UsageError("give exactly one of --placement or --gateways");

  const Topology topo = read_topology(o.in);
  const ConnectivityGraph g = build_graph(topo, o.range);
  std::vector<CellId> gateways;
  if (!o.placement.empty()) {
    gateways = read_placement(o.placement).gateways;
  } else {
    for (const auto& id : split_list(o.gateways)) gateways.push_back(to_number<int>("--gateways", id));
  }
  const Placement p = assign_to_gateways(g, gateways);
  const AnhResult a = anh(p, mode);
  fmt::print(out, "# eval in={} cells={} gateways={} denominator={}\n", o.in, topo.size(),
             join(p.gateways, [](CellId id) { return std::to_string(id); }), o.mode);
  fmt::print(out, "total_hops,anh,bnc_gbps\n{},{},{}\n", a.total_hops, format_double(a.anh),
             format_double(bnc(a.anh, topo.size(), p.m(), {o.ws, o.wg}).capacity));
  return exit_code::kOk;
}

void write_outputs(const ExperimentOptions& o, std::span<const Record> records,
                   std::span<const MethodSummary> summaries) {
  const std::filesystem::path dir(o.out_dir);
  std::filesystem::create_directories(dir);
  {
    std::ofstream raw(dir / (o.prefix + "_raw.csv"));
    write_records(raw, records);
  }
  if (summaries.empty()) return;
  std::ofstream summary(dir / (o.prefix + "_summary.csv"));
  write_summary(summary, summaries);
  std::ofstream anh_series(dir / (o.prefix + "_anh_series.csv"));
  write_anh_series(anh_series, summaries);
  std::ofstream bnc_series(dir / (o.prefix + "_bnc_series.csv"));
  write_bnc_series(bnc_series, summaries);
}

int cmd_experiment(const ExperimentOptions& o, std::ostream& out, std::ostream& err) {
  ExperimentConfig cfg;
  cfg.seed = default_seed();
  try {
    if (!o.config.empty()) {
      std::ifstream in(o.config);
      if (!in) throw InvalidConfig(fmt::format("cannot open config '{}'", o.config));
      apply_config(cfg, parse_key_values(in));
    }
    std::map<std::string, std::string> kv;
    for (const auto& item : o.overrides) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw InvalidConfig(fmt::format("--set expects key=value, got '{}'", item));
      kv[item.substr(0, eq)] = item.substr(eq + 1);
    }
    apply_config(cfg, kv);
    if (o.jobs >= 0) cfg.jobs = o.jobs;
    if (o.no_timing) cfg.record_runtime = false;
    cfg.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }

  fmt::print(out, "# resolved configuration (per-run seeds derive from seed via the seed schedule)\n{}",
             describe_config(cfg));
  try {
    const ExperimentResult result = run_experiment(cfg);
    write_outputs(o, result.records, result.summaries);
    print_summary_table(out, result.summaries);
  } catch (const ExperimentFailure& e) {
    write_outputs(o, e.partial_records(), {});
    fmt::print(err, "experiment failed: {}\n{} completed records kept in {}\n", e.what(), e.partial_records().size(),
               (std::filesystem::path(o.out_dir) / (o.prefix + "_raw.csv")).string());
    return exit_code::kFailure;
  }
  return exit_code::kOk;
}

int cmd_report(const ReportOptions& o, std::ostream& out) {
  std::ifstream in(o.in);
  if (!in) throw ParseError(fmt::format("cannot open '{}'", o.in));
  const auto records = read_records(in);
  const auto rows = summarize(records);
  if (!o.summary_out.empty()) {
    std::ofstream summary(o.summary_out);
    write_summary(summary, rows);
  }
  print_summary_table(out, rows);
  return exit_code::kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gateway placement for multi-hop wireless backhaul", "gwloc"};
  app.require_subcommand(1);

  GenOptions gen_o;
  gen_o.seed = default_seed();
  auto* gen = app.add_subcommand("gen", "Generate a small-cell topology");
  gen->add_option("--scenario", gen_o.scenario, "uniform | gaussian | cluster");
  gen->add_option("--density", gen_o.density, "Cell count (fixed) or mean count (poisson)");
  gen->add_option("--seed", gen_o.seed, "Random seed (default $GWLOC_SEED or 1)");
  gen->add_option("--radius", gen_o.radius, "Service area radius in meters");
  gen->add_option("--range", gen_o.range, "Transmission range used for the connectivity report");
  gen->add_option("--mode", gen_o.mode, "fixed | poisson");
  gen->add_option("--cluster-fraction", gen_o.cluster_fraction, "Share of cells placed in clusters");
  gen->add_option("--cluster-count", gen_o.cluster_count, "Number of clusters");
  gen->add_option("--out", gen_o.out, "Output file (default: standard output)");

  PlaceOptions place_o;
  place_o.seed = default_seed();
  auto* place = app.add_subcommand("place", "Place gateways on a topology");
  place->add_option("--in", place_o.in, "Topology file")->required();
  place->add_option("--method", place_o.method, "baseline | kmeans | kmedoids | ga | kga | kmga | exact")->required();
  place->add_option("--m", place_o.m, "Number of gateways")->check(CLI::PositiveNumber);
  place->add_option("--seed", place_o.seed, "Random seed (default $GWLOC_SEED or 1)");
  place->add_option("--range", place_o.range, "Transmission range in meters");
  place->add_option("--out", place_o.out, "Placement dump file");
  place->add_option("--edges-out", place_o.edges_out, "Write the connectivity edge list here");
  place->add_option("--replications", place_o.replications, "Clustering replications");
  place->add_option("--t", place_o.t, "Candidates per cluster (kga, kmga)");
  place->add_option("--generations", place_o.generations, "GA generations");
  place->add_option("--population", place_o.population, "Standalone GA population");
  place->add_option("--mutation", place_o.mutation, "Per-gene mutation probability");
  place->add_option("--budget", place_o.configs.exact.node_budget, "Exact solver node budget");

  EvalOptions eval_o;
  auto* eval = app.add_subcommand("eval", "Evaluate ANH and capacity of a gateway set");
  eval->add_option("--in", eval_o.in, "Topology file")->required();
  eval->add_option("--placement", eval_o.placement, "Placement dump to read gateways from");
  eval->add_option("--gateways", eval_o.gateways, "Comma-separated gateway cell ids");
  eval->add_option("--range", eval_o.range, "Transmission range in meters");
  eval->add_option("--denominator", eval_o.mode, "n-minus-m | n");
  eval->add_option("--ws", eval_o.ws, "Small-cell link capacity (Gbps)");
  eval->add_option("--wg", eval_o.wg, "Gateway fiber capacity (Gbps)");

  ExperimentOptions exp_o;
  auto* experiment = app.add_subcommand("experiment", "Run a Monte Carlo experiment");
  experiment->add_option("--config", exp_o.config, "key=value config file");
  experiment->add_option("--set", exp_o.overrides, "Override a config key (key=value), repeatable");
  experiment->add_option("--out-dir", exp_o.out_dir, "Directory for output files");
  experiment->add_option("--prefix", exp_o.prefix, "Output file name prefix");
  experiment->add_option("--jobs", exp_o.jobs, "Worker threads (default: available parallelism)");
  experiment->add_flag("--no-timing", exp_o.no_timing, "Record runtime_s as 0 for byte-reproducible output");

  ReportOptions report_o;
  auto* report = app.add_subcommand("report", "Summarize a raw-record file");
  report->add_option("--in", report_o.in, "Raw-record file")->required();
  report->add_option("--summary-out", report_o.summary_out, "Write the summary CSV here");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return exit_code::kUsage;
  }

  try {
    if (gen->parsed()) return cmd_gen(gen_o, out);
    if (place->parsed()) return cmd_place(place_o, out);
    if (eval->parsed()) return cmd_eval(eval_o, out);
    if (experiment->parsed()) return cmd_experiment(exp_o, out, err);
    if (report->parsed()) return cmd_report(report_o, out);
  } catch (const UsageError& e) {
    fmt::print(err, "usage error: {}\n", e.what());
    return exit_code::kUsage;
  } catch (const InvalidConfig& e) {
    fmt::print(err, "invalid input: {}\n", e.what());
    return exit_code::kUsage;
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return exit_code::kFailure;
  }
  return exit_code::kUsage;
}

}  // namespace gwloc
