#include "gwloc/harness.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <istream>
#include <map>
#include <ostream>
#include <tuple>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "gwloc/io.hpp"

namespace gwloc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t combine(std::uint64_t h, std::uint64_t v) { return splitmix64(h ^ splitmix64(v)); }

constexpr std::uint64_t kTopologyTag = 0x70706f6c6f6779ULL;

}  // namespace

double ExperimentConfig::radius_for(int density) const {
  if (!scale_radius) return topology.area_radius;
  return topology.area_radius * std::sqrt(static_cast<double>(density) / reference_density);
}

void ExperimentConfig::validate() const {
  if (scenarios.empty()) throw InvalidConfig("no scenarios selected");
  if (densities.empty()) throw InvalidConfig("no densities selected");
  if (methods.empty()) throw InvalidConfig("no methods selected");
  if (m < 1) throw InvalidConfig("m must be >= 1");
  if (replications < 2) throw InvalidConfig("replications must be >= 2 for a confidence interval");
  for (int d : densities) {
    if (d <= m) throw InvalidConfig(fmt::format("density {} must exceed m = {}", d, m));
  }
  if (scale_radius && reference_density < 1) throw InvalidConfig("reference_density must be >= 1");
  if (max_topology_attempts < 1) throw InvalidConfig("max_topology_attempts must be >= 1");
  if (!(transmission_range > 0.0)) throw InvalidConfig("transmission range must be positive");
  capacity.validate();
}

Interval confidence_interval(std::span<const double> samples) {
  const auto n = samples.size();
  if (n < 2) throw TooFewSamples(fmt::format("confidence interval needs at least 2 samples, got {}", n));
  double sum = 0.0;
  for (double s : samples) sum += s;
  const double mean = sum / n;
  double ss = 0.0;
  for (double s : samples) ss += (s - mean) * (s - mean);
  const double sd = std::sqrt(ss / (n - 1));
  const double half = 1.96 * sd / std::sqrt(static_cast<double>(n));
  return {mean, mean - half, mean + half};
}

std::uint64_t seed_schedule(std::uint64_t master, Scenario scenario, int density, int replication,
                            std::optional<Method> method) {
  std::uint64_t h = splitmix64(master);
  h = combine(h, static_cast<std::uint64_t>(scenario));
  h = combine(h, static_cast<std::uint64_t>(density));
  h = combine(h, static_cast<std::uint64_t>(replication));
  h = combine(h, method ? static_cast<std::uint64_t>(*method) + 1 : kTopologyTag);
  return h;
}

std::uint64_t topology_seed(std::uint64_t master, Scenario scenario, int density, int replication, int attempt) {
  const std::uint64_t base = seed_schedule(master, scenario, density, replication);
  return attempt == 0 ? base : combine(base, static_cast<std::uint64_t>(attempt));
}

Topology connected_topology(const ExperimentConfig& cfg, Scenario scenario, int density, int replication) {
  TopologyConfig tc = cfg.topology;
  tc.scenario = scenario;
  tc.density = density;
  tc.area_radius = cfg.radius_for(density);
  for (int attempt = 0; attempt < cfg.max_topology_attempts; ++attempt) {
    tc.seed = topology_seed(cfg.seed, scenario, density, replication, attempt);
    Topology topo = generate_topology(tc);
    // Poisson draws can fall to m or below; such a topology cannot host the experiment.
    if (topo.size() <= cfg.m) continue;
    // Topologies with an unreachable pair are discarded and replaced.
    if (is_fully_connected(build_graph(topo, cfg.transmission_range))) return topo;
  }
  throw Error(fmt::format("no connected topology within {} attempts", cfg.max_topology_attempts));
}

namespace {

struct WorkItem {
  Scenario scenario;
  int density;
  int replication;
};

std::vector<Record> run_replication(const ExperimentConfig& cfg, const WorkItem& item) {
  const Topology topo = connected_topology(cfg, item.scenario, item.density, item.replication);
  const ConnectivityGraph g = build_graph(topo, cfg.transmission_range);
  const std::uint64_t checksum = topology_checksum(topo);

  std::vector<Record> out;
  out.reserve(cfg.methods.size());
  for (Method method : cfg.methods) {
    Rng rng(seed_schedule(cfg.seed, item.scenario, item.density, item.replication, method));
    const auto start = std::chrono::steady_clock::now();
    MethodOutcome outcome = run_method(method, topo, g, cfg.m, cfg.method_configs, rng);
    const auto stop = std::chrono::steady_clock::now();

    Record r;
    r.scenario = item.scenario;
    r.density = item.density;
    r.replication = item.replication;
    r.method = method;
    r.n_cells = topo.size();
    r.m = cfg.m;
    r.total_hops = outcome.placement.total_hops();
    r.anh = anh(outcome.placement, DenominatorMode::NMinusM).anh;
    r.bnc_gbps = bnc(r.anh, r.n_cells, cfg.m, cfg.capacity).capacity;
    r.runtime_s = cfg.record_runtime ? std::chrono::duration<double>(stop - start).count() : 0.0;
    r.certified_optimal = method == Method::Exact && outcome.certified_optimal;
    r.topology_checksum = checksum;
    out.push_back(r);
  }
  return out;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<WorkItem> items;
  for (Scenario s : cfg.scenarios)
    for (int d : cfg.densities)
      for (int r = 0; r < cfg.replications; ++r) items.push_back({s, d, r});

  std::vector<std::vector<Record>> slots(items.size());
  std::vector<std::exception_ptr> errors(items.size());
  const int jobs = cfg.jobs > 0 ? cfg.jobs : omp_get_max_threads();
  const auto count = static_cast<std::ptrdiff_t>(items.size());

#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    try {
      slots[k] = run_replication(cfg, items[k]);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }

  ExperimentResult result;
  std::string failure;
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (errors[k]) {
      if (failure.empty()) {
        try {
          std::rethrow_exception(errors[k]);
        } catch (const std::exception& e) {
          failure = fmt::format("scenario={} density={} replication={}: {}", scenario_name(items[k].scenario),
                                items[k].density, items[k].replication, e.what());
        }
      }
      continue;
    }
    result.records.insert(result.records.end(), slots[k].begin(), slots[k].end());
  }
  if (!failure.empty()) throw ExperimentFailure(failure, std::move(result.records));
  result.summaries = summarize(result.records);
  return result;
}

std::vector<MethodSummary> summarize(std::span<const Record> records) {
  using Key = std::tuple<Scenario, int, Method>;
  std::vector<Key> order;
  std::map<Key, std::vector<const Record*>> groups;
  for (const Record& r : records) {
    Key key{r.scenario, r.density, r.method};
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(&r);
  }

  std::vector<MethodSummary> rows;
  for (const Key& key : order) {
    const auto& group = groups[key];
    std::vector<double> a, b, t;
    MethodSummary s;
    std::tie(s.scenario, s.density, s.method) = key;
    s.samples = static_cast<int>(group.size());
    for (const Record* r : group) {
      a.push_back(r->anh);
      b.push_back(r->bnc_gbps);
      t.push_back(r->runtime_s);
      s.certified += r->certified_optimal ? 1 : 0;
    }
    s.anh = confidence_interval(a);
    s.bnc = confidence_interval(b);
    s.runtime = confidence_interval(t);
    rows.push_back(s);
  }

  for (auto& row : rows) {
    if (row.method == Method::Exact) continue;
    auto exact = std::find_if(rows.begin(), rows.end(), [&](const MethodSummary& e) {
      return e.method == Method::Exact && e.scenario == row.scenario && e.density == row.density;
    });
    if (exact == rows.end()) continue;
    row.gap_vs_exact_pct = 100.0 * (row.anh.mean - exact->anh.mean) / exact->anh.mean;
    if (exact->runtime.mean > 0.0) row.runtime_saving_pct = 100.0 * (1.0 - row.runtime.mean / exact->runtime.mean);
  }
  return rows;
}

void write_records(std::ostream& out, std::span<const Record> records) {
  out << "scenario,density,replication,method,anh,bnc_gbps,runtime_s,certified_optimal,topology_checksum,n_cells,m\n";
  for (const Record& r : records) {
    fmt::print(out, "{},{},{},{},{},{},{},{},{:016x},{},{}\n", scenario_name(r.scenario), r.density, r.replication,
               method_name(r.method), format_double(r.anh), format_double(r.bnc_gbps), format_double(r.runtime_s),
               r.certified_optimal ? 1 : 0, r.topology_checksum, r.n_cells, r.m);
  }
}

std::vector<Record> read_records(std::istream& in) {
  std::vector<Record> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.rfind("scenario,", 0) == 0) continue;
    const auto f = split_list(line);
    if (f.size() != 11) throw ParseError(fmt::format("records line {}: expected 11 fields, got {}", lineno, f.size()));
    try {
      Record r;
      r.scenario = parse_scenario(f[0]);
      r.density = std::stoi(f[1]);
      r.replication = std::stoi(f[2]);
      r.method = parse_method(f[3]);
      r.anh = std::stod(f[4]);
      r.bnc_gbps = std::stod(f[5]);
      r.runtime_s = std::stod(f[6]);
      r.certified_optimal = f[7] == "1";
      r.topology_checksum = std::stoull(f[8], nullptr, 16);
      r.n_cells = std::stoi(f[9]);
      r.m = std::stoi(f[10]);
      r.total_hops = std::lround(r.anh * (r.n_cells - r.m));
      out.push_back(r);
    } catch (const std::logic_error&) {
      throw ParseError(fmt::format("records line {}: malformed field", lineno));
    }
  }
  return out;
}

namespace {

std::string optional_field(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

}  // namespace

void write_summary(std::ostream& out, std::span<const MethodSummary> rows) {
  out << "scenario,density,method,samples,anh_mean,anh_ci_low,anh_ci_high,bnc_mean,bnc_ci_low,bnc_ci_high,"
         "runtime_mean,runtime_ci_low,runtime_ci_high,gap_vs_exact_pct,runtime_saving_pct,certified\n";
  for (const auto& s : rows) {
    fmt::print(out, "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", scenario_name(s.scenario), s.density,
               method_name(s.method), s.samples, format_double(s.anh.mean), format_double(s.anh.low),
               format_double(s.anh.high), format_double(s.bnc.mean), format_double(s.bnc.low),
               format_double(s.bnc.high), format_double(s.runtime.mean), format_double(s.runtime.low),
               format_double(s.runtime.high), optional_field(s.gap_vs_exact_pct), optional_field(s.runtime_saving_pct),
               s.certified);
  }
}

namespace {

void write_series(std::ostream& out, std::span<const MethodSummary> rows, Interval MethodSummary::*field) {
  std::vector<const MethodSummary*> sorted;
  for (const auto& r : rows) sorted.push_back(&r);
  std::stable_sort(sorted.begin(), sorted.end(), [](const MethodSummary* a, const MethodSummary* b) {
    return std::tie(a->scenario, a->method, a->density) < std::tie(b->scenario, b->method, b->density);
  });
  out << "scenario,method,density,mean,ci_low,ci_high\n";
  for (const auto* r : sorted) {
    const Interval& v = r->*field;
    fmt::print(out, "{},{},{},{},{},{}\n", scenario_name(r->scenario), method_name(r->method), r->density,
               format_double(v.mean), format_double(v.low), format_double(v.high));
  }
}

}  // namespace

void write_anh_series(std::ostream& out, std::span<const MethodSummary> rows) { write_series(out, rows, &MethodSummary::anh); }
void write_bnc_series(std::ostream& out, std::span<const MethodSummary> rows) { write_series(out, rows, &MethodSummary::bnc); }

void print_summary_table(std::ostream& out, std::span<const MethodSummary> rows) {
  fmt::print(out, "{:<9} {:>7} {:<9} {:>6} {:>15} {:>8} {:>19} {:>11} {:>8} {:>9}\n", "scenario", "density", "method",
             "ANH", "ANH 95% CI", "BNC", "BNC 95% CI", "runtime_s", "gap_%", "saving_%");
  for (const auto& s : rows) {
    fmt::print(out, "{:<9} {:>7} {:<9} {:>6.3f} {:>15} {:>8.2f} {:>19} {:>11.4f} {:>8} {:>9}\n",
               scenario_name(s.scenario), s.density, method_name(s.method), s.anh.mean,
               fmt::format("{:.3f}-{:.3f}", s.anh.low, s.anh.high), s.bnc.mean,
               fmt::format("{:.2f}-{:.2f}", s.bnc.low, s.bnc.high), s.runtime.mean,
               s.gap_vs_exact_pct ? fmt::format("{:.2f}", *s.gap_vs_exact_pct) : "-",
               s.runtime_saving_pct ? fmt::format("{:.2f}", *s.runtime_saving_pct) : "-");
  }
}

}  // namespace gwloc
