#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "soro/demand.hpp"
#include "soro/graph.hpp"
#include "soro/routing.hpp"

namespace soro {

// Sparsity-sweep experiment description. Parsed from flat key-value text,
// one "key value" pair per line, '#' comments allowed:
//
//   graph    hypercube | gadget-c | gadget-g | file   (with dim / n,k / graph_file)
//   backend  valiant | optimal | spuniform
//   sampling alpha | alpha-plus-cut
//   alphas   <list, e.g. "1 2 4 8">
//   demand   permutation | density | adversarial | file   (with density / demand_file)
//   trials   <int >= 1>
//   seed     <uint64 master seed>
//   eps      <solver accuracy, (0, 1/2]>
//   out      <output path prefix>
struct ExperimentConfig {
  std::string graph_kind = "hypercube";
  int dim = 3;
  int n = 0;
  int k = 0;
  std::string graph_file;
  std::string backend = "spuniform";
  bool plus_cut = false;
  std::vector<int> alphas = {1};
  std::string demand_kind = "permutation";
  double density = 0.5;
  std::string demand_file;
  int trials = 1;
  std::uint64_t seed = 0;
  double eps = 0.05;
  std::string out_prefix;
};

ExperimentConfig parse_experiment_config(const std::string& text);
ExperimentConfig load_experiment_config_file(const std::string& path);

// One (alpha, trial) cell. Ordering and all values except wall_seconds are
// deterministic functions of the config; trial demands are seeded by the
// trial index alone, so sparsity levels are compared on paired demands.
struct ExperimentRow {
  std::string graph_id;
  int alpha = 0;
  int trial = 0;
  std::uint64_t seed = 0;  // the cell's sampling seed
  double demand_size = 0;
  double frac_congestion = 0;  // adaptive optimum over the sampled paths
  double opt_fractional = 0;   // adaptive optimum over all paths
  std::optional<int> opt_integral;  // empty when enumeration is infeasible
  double ratio = 0;                 // frac_congestion / opt_fractional
  int dilation = 0;
  double cong_plus_dil = 0;
  double wall_seconds = 0;  // always the last column
};

struct AlphaSummary {
  int alpha = 0;
  double median_ratio = 0;
  double max_ratio = 0;
};

struct ExperimentResult {
  std::vector<ExperimentRow> rows;     // sorted by (alpha, trial)
  std::vector<AlphaSummary> summary;   // one per alpha, ascending
  double slope = 0;  // least-squares slope of log(median ratio) vs alpha
};

ExperimentResult run_experiment(const ExperimentConfig& cfg);

// CSV emission; schema version pinned in the leading comment line.
std::string rows_csv(const std::vector<ExperimentRow>& rows);
std::string summary_csv(const ExperimentResult& result);

// Writes <prefix>rows.csv and <prefix>summary.csv.
void write_experiment_csv(const ExperimentResult& result,
                          const std::string& prefix);

struct TailPoint {
  double gamma = 0;
  double exceedance = 0;  // fraction of trials where some edge load > gamma
  double chernoff = 0;    // union bound over edges, capped at 1
};

// Empirical load-tail probe: each trial routes every demand entry over one
// path drawn from r and records whether any edge load exceeds gamma. The
// chernoff column reports sum_e exp(-gamma * ln(gamma / mu_e) / 4) over
// edges with gamma >= 2 * mu_e (1 when the bound does not apply), where
// mu_e is the exact expected load.
std::vector<TailPoint> tail_test(const Routing& r, const Demand& d,
                                 const std::vector<double>& gammas, int trials,
                                 std::uint64_t seed);

}  // namespace soro
