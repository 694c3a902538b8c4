#include "soro/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>

#include "soro/errors.hpp"
#include "soro/lower_bound.hpp"
#include "soro/oblivious.hpp"
#include "soro/path.hpp"
#include "soro/sampler.hpp"
#include "soro/solver.hpp"

namespace soro {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.graph_kind == "hypercube") {
    if (cfg.dim < 1) throw ValidationError("hypercube needs dim >= 1");
  } else if (cfg.graph_kind == "gadget-c") {
    if (cfg.n < 1 || cfg.k < 1) throw ValidationError("gadget-c needs n >= 1, k >= 1");
  } else if (cfg.graph_kind == "gadget-g") {
    if (cfg.n < 2) throw ValidationError("gadget-g needs n >= 2");
  } else if (cfg.graph_kind == "file") {
    if (cfg.graph_file.empty())
      throw ValidationError("graph kind 'file' needs graph_file");
  } else {
    throw ValidationError("unknown graph kind: " + cfg.graph_kind);
  }
  parse_backend_kind(cfg.backend);
  if (cfg.alphas.empty()) throw ValidationError("alphas must not be empty");
  for (int a : cfg.alphas)
    if (a < 1) throw ValidationError("alphas must be >= 1");
  if (!(cfg.density >= 0 && cfg.density <= 1))
    throw ValidationError("density must lie in [0, 1]");
  if (cfg.demand_kind == "file") {
    if (cfg.demand_file.empty())
      throw ValidationError("demand kind 'file' needs demand_file");
  } else if (cfg.demand_kind != "permutation" && cfg.demand_kind != "density" &&
             cfg.demand_kind != "adversarial") {
    throw ValidationError("unknown demand kind: " + cfg.demand_kind);
  }
  if (cfg.trials < 1) throw ValidationError("trials must be >= 1");
  if (!(cfg.eps > 0 && cfg.eps <= 0.5))
    throw ValidationError("eps must lie in (0, 1/2]");
}

Graph build_graph(const ExperimentConfig& cfg, std::string& id) {
  if (cfg.graph_kind == "hypercube") {
    id = "hypercube(" + std::to_string(cfg.dim) + ")";
    return hypercube(cfg.dim);
  }
  if (cfg.graph_kind == "gadget-c") {
    id = "gadget-c(" + std::to_string(cfg.n) + "," + std::to_string(cfg.k) + ")";
    return gadget_c(cfg.n, cfg.k);
  }
  if (cfg.graph_kind == "gadget-g") {
    id = "gadget-g(" + std::to_string(cfg.n) + ")";
    return gadget_g(cfg.n);
  }
  id = cfg.graph_file;
  return load_graph_file(cfg.graph_file);
}

// Proves the unit-assignment space fits the enumeration budget with a cheap
// capped path count before invoking the integral solver; the column stays
// empty instead of ever being approximated.
std::optional<int> integral_if_feasible(const Graph& g, const Demand& d) {
  constexpr std::size_t kProbeCap = 64;
  double log_budget = 0;
  const double log_max = std::log(1e7);
  for (const DemandEntry& entry : d.entries()) {
    double rounded = std::round(entry.amount);
    if (std::abs(entry.amount - rounded) > 1e-9 || rounded < 1) return std::nullopt;
    std::size_t count = 0;
    bool complete = for_each_simple_path(
        g, entry.s, entry.t, [&](const Path&) { return ++count <= kProbeCap; });
    if (!complete || count == 0) return std::nullopt;
    log_budget += rounded * std::log(double(count));
    if (log_budget > log_max + 1e-9) return std::nullopt;
  }
  return optimal_integral_congestion(g, d).congestion;
}

double median_ratio(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    auto bad = [&](const std::string& what) {
      return ValidationError("config line " + std::to_string(lineno) + ": " + what);
    };
    auto read_number = [&](auto& out) {
      if (!(ls >> out)) throw bad("malformed value for " + key);
    };
    if (key == "graph") {
      read_number(cfg.graph_kind);
    } else if (key == "dim") {
      read_number(cfg.dim);
    } else if (key == "n") {
      read_number(cfg.n);
    } else if (key == "k") {
      read_number(cfg.k);
    } else if (key == "graph_file") {
      read_number(cfg.graph_file);
    } else if (key == "backend") {
      read_number(cfg.backend);
    } else if (key == "sampling") {
      std::string mode;
      read_number(mode);
      if (mode == "alpha")
        cfg.plus_cut = false;
      else if (mode == "alpha-plus-cut")
        cfg.plus_cut = true;
      else
        throw bad("sampling must be alpha or alpha-plus-cut");
    } else if (key == "alphas") {
      cfg.alphas.clear();
      int a;
      while (ls >> a) cfg.alphas.push_back(a);
      if (!ls.eof()) throw bad("malformed value for alphas");
      if (cfg.alphas.empty()) throw bad("alphas needs at least one value");
    } else if (key == "demand") {
      read_number(cfg.demand_kind);
    } else if (key == "density") {
      read_number(cfg.density);
    } else if (key == "demand_file") {
      read_number(cfg.demand_file);
    } else if (key == "trials") {
      read_number(cfg.trials);
    } else if (key == "seed") {
      read_number(cfg.seed);
    } else if (key == "eps") {
      read_number(cfg.eps);
    } else if (key == "out") {
      read_number(cfg.out_prefix);
    } else {
      throw bad("unknown config key: " + key);
    }
    std::string extra;
    if (ls >> extra) throw bad("trailing tokens after " + key);
  }
  validate_config(cfg);
  return cfg;
}

ExperimentConfig load_experiment_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_experiment_config(buf.str());
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  validate_config(cfg);
  std::string id;
  Graph g = build_graph(cfg, id);
  auto shared = std::make_shared<const Graph>(g);

  std::unique_ptr<Routing> backend;
  switch (parse_backend_kind(cfg.backend)) {
    case BackendKind::valiant:
      backend = std::make_unique<ValiantRouting>(shared);
      break;
    case BackendKind::spuniform:
      backend = std::make_unique<ShortestPathUniformRouting>(shared);
      break;
    case BackendKind::optimal:
      backend = std::make_unique<ExplicitRouting>(
          exhaustive_optimal_oblivious(g, cfg.eps).routing);
      break;
  }

  // Non-adversarial demands depend on the trial index only, so sparsity
  // levels see identical (paired) demands.
  std::vector<Demand> trial_demands;
  if (cfg.demand_kind != "adversarial") {
    Demand from_file;
    if (cfg.demand_kind == "file") from_file = load_demand_file(cfg.demand_file);
    for (int trial = 0; trial < cfg.trials; ++trial) {
      if (cfg.demand_kind == "file") {
        trial_demands.push_back(from_file);
        continue;
      }
      Rng rng(derive_seed(cfg.seed, 0xD, std::uint64_t(trial)));
      trial_demands.push_back(cfg.demand_kind == "permutation"
                                  ? random_permutation_demand(g.vertex_count(), rng)
                                  : random_zero_one_demand(g.vertex_count(),
                                                           cfg.density, rng));
    }
  }

  std::vector<int> alphas = cfg.alphas;
  std::sort(alphas.begin(), alphas.end());
  alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());

  ExperimentResult result;
  for (int alpha : alphas) {
    for (int trial = 0; trial < cfg.trials; ++trial) {
      auto started = std::chrono::steady_clock::now();
      std::uint64_t cell_seed =
          derive_seed(cfg.seed, std::uint64_t(alpha), std::uint64_t(trial));
      std::string cell = "alpha " + std::to_string(alpha) + " trial " +
                         std::to_string(trial) + " on " + id + ": ";
      try {
        PathSystem sample =
            cfg.plus_cut ? alpha_plus_cut_sample(*backend, g, alpha, cell_seed)
                         : alpha_sample(*backend, alpha, cell_seed);
        Demand d = cfg.demand_kind == "adversarial"
                       ? adversarial_demand(sample, g, alpha).demand
                       : trial_demands[trial];

        ExperimentRow row;
        row.graph_id = id;
        row.alpha = alpha;
        row.trial = trial;
        row.seed = cell_seed;
        row.demand_size = d.size();
        if (d.empty()) {
          row.opt_integral = 0;
          row.ratio = 1.0;
        } else {
          SolveResult frac = min_congestion_fractional(sample, d, g, cfg.eps);
          row.frac_congestion = frac.achieved;
          row.opt_fractional = optimal_fractional_congestion(g, d, cfg.eps).achieved;
          row.opt_integral = integral_if_feasible(g, d);
          row.ratio = row.frac_congestion / row.opt_fractional;
          row.dilation = congestion(frac.routing, d).dilation;
          row.cong_plus_dil = row.frac_congestion + row.dilation;
        }
        row.wall_seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - started)
                               .count();
        result.rows.push_back(std::move(row));
      } catch (const SolverError& e) {
        throw SolverError(cell + e.what());
      } catch (const ValidationError& e) {
        throw ValidationError(cell + e.what());
      }
    }
  }

  for (int alpha : alphas) {
    std::vector<double> ratios;
    double max_ratio = 0;
    for (const ExperimentRow& row : result.rows) {
      if (row.alpha != alpha) continue;
      ratios.push_back(row.ratio);
      max_ratio = std::max(max_ratio, row.ratio);
    }
    result.summary.push_back({alpha, median_ratio(std::move(ratios)), max_ratio});
  }

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int pts = 0;
  for (const AlphaSummary& s : result.summary) {
    if (s.median_ratio <= 0) continue;
    double x = s.alpha, y = std::log(s.median_ratio);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++pts;
  }
  if (pts >= 2) result.slope = (pts * sxy - sx * sy) / (pts * sxx - sx * sx);
  return result;
}

std::string rows_csv(const std::vector<ExperimentRow>& rows) {
  std::string out =
      "# soro rows v1\n"
      "graph,alpha,trial,seed,demand_size,frac_congestion,opt_fractional,"
      "opt_integral,ratio,dilation,cong_plus_dil,wall_seconds\n";
  for (const ExperimentRow& r : rows) {
    out += r.graph_id + ',' + std::to_string(r.alpha) + ',' +
           std::to_string(r.trial) + ',' + std::to_string(r.seed) + ',' +
           fmt(r.demand_size) + ',' + fmt(r.frac_congestion) + ',' +
           fmt(r.opt_fractional) + ',';
    if (r.opt_integral) out += std::to_string(*r.opt_integral);
    out += ',' + fmt(r.ratio) + ',' + std::to_string(r.dilation) + ',' +
           fmt(r.cong_plus_dil) + ',' + fmt(r.wall_seconds) + '\n';
  }
  return out;
}

std::string summary_csv(const ExperimentResult& result) {
  std::string out = "# soro summary v1\n# slope " + fmt(result.slope) +
                    "\nalpha,median_ratio,max_ratio\n";
  for (const AlphaSummary& s : result.summary) {
    out += std::to_string(s.alpha) + ',' + fmt(s.median_ratio) + ',' +
           fmt(s.max_ratio) + '\n';
  }
  return out;
}

void write_experiment_csv(const ExperimentResult& result,
                          const std::string& prefix) {
  std::ofstream rows(prefix + "rows.csv");
  if (!rows) throw ValidationError("cannot write " + prefix + "rows.csv");
  rows << rows_csv(result.rows);
  std::ofstream summary(prefix + "summary.csv");
  if (!summary) throw ValidationError("cannot write " + prefix + "summary.csv");
  summary << summary_csv(result);
}

std::vector<TailPoint> tail_test(const Routing& r, const Demand& d,
                                 const std::vector<double>& gammas, int trials,
                                 std::uint64_t seed) {
  if (trials < 1) throw ValidationError("tail_test needs trials >= 1");
  std::vector<double> mu = exact_edge_loads(r, d);
  std::vector<int> exceed(gammas.size(), 0);
  std::vector<double> loads(mu.size());
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng(derive_seed(seed, std::uint64_t(trial)));
    std::fill(loads.begin(), loads.end(), 0.0);
    for (const DemandEntry& entry : d.entries()) {
      Path p = r.sample_path(entry.s, entry.t, rng);
      for (int e : p.edge_ids()) loads[e] += entry.amount;
    }
    double worst = 0;
    for (double l : loads) worst = std::max(worst, l);
    for (std::size_t i = 0; i < gammas.size(); ++i)
      if (worst > gammas[i]) ++exceed[i];
  }

  std::vector<TailPoint> out;
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    TailPoint point;
    point.gamma = gammas[i];
    point.exceedance = double(exceed[i]) / trials;
    double total = 0;
    for (double m : mu) {
      if (m <= 0) continue;  // load is always 0; the edge never exceeds
      if (gammas[i] > 0 && gammas[i] >= 2 * m)
        total += std::exp(-gammas[i] * std::log(gammas[i] / m) / 4);
      else
        total += 1;  // bound inapplicable for this edge
      if (total >= 1) break;
    }
    point.chernoff = std::min(1.0, total);
    out.push_back(point);
  }
  return out;
}

}  // namespace soro
