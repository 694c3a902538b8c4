#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "soro/demand.hpp"
#include "soro/graph.hpp"
#include "soro/path.hpp"
#include "soro/rng.hpp"

namespace soro {

struct WeightedPath {
  Path path;
  double weight;
};

// Per-pair path distribution. Explicit routings store the distribution;
// generative ones (oblivious backends) sample from it and can reproduce it
// exactly on request, though possibly at enumeration cost.
class Routing {
 public:
  virtual ~Routing() = default;
  virtual int vertex_count() const = 0;
  virtual int edge_count() const = 0;
  virtual bool defined(int s, int t) const = 0;
  virtual Path sample_path(int s, int t, Rng& rng) const = 0;
  // Exact distribution of sample_path(s, t): weights sum to 1.
  virtual std::vector<WeightedPath> pair_distribution(int s, int t) const = 0;

  // Pr[sampled path uses edge e], from the exact distribution.
  double edge_hit_probability(int s, int t, int e) const;
};

// Weighted path lists per pair; weights are nonnegative and sum to 1 within
// 1e-9 per pair. Pairs keep insertion order; an absent pair is an error,
// never an implicit default.
class ExplicitRouting final : public Routing {
 public:
  ExplicitRouting() = default;
  ExplicitRouting(int vertex_count, int edge_count)
      : n_(vertex_count), m_(edge_count) {}

  // Validates endpoints, weight range, the per-pair sum, and path
  // uniqueness. Replaces any previous distribution for the pair.
  void set_pair(int s, int t, std::vector<WeightedPath> dist);
  const std::vector<WeightedPath>& distribution(int s, int t) const;
  const std::vector<PairKey>& pairs() const { return order_; }
  PathSystem support() const;  // paths with weight > 0

  int vertex_count() const override { return n_; }
  int edge_count() const override { return m_; }
  bool defined(int s, int t) const override;
  Path sample_path(int s, int t, Rng& rng) const override;
  std::vector<WeightedPath> pair_distribution(int s, int t) const override;

 private:
  int n_ = 0, m_ = 0;
  std::vector<PairKey> order_;
  std::map<PairKey, std::vector<WeightedPath>> dist_;
};

struct CongestionReport {
  std::vector<double> edge_load;  // cong(r, d, e) per edge
  double max_congestion = 0;
  int dilation = 0;  // longest positive-weight path over supp(d)
  std::optional<double> ratio_vs_baseline;
};

// cong(r, d, e) = sum over pairs of d(s,t) * Pr[e on r(s,t)]; every support
// pair of d must be defined in r.
CongestionReport congestion(const ExplicitRouting& r, const Demand& d);
CongestionReport congestion(const ExplicitRouting& r, const Demand& d,
                            double baseline_opt);

// Demand-weighted mixture: routes d1 + d2 with edge loads exactly the sum of
// the two argument loads. Pairs carried by only one routing keep that
// routing's distribution; if both define a pair identically it is reused
// unchanged.
std::pair<Demand, ExplicitRouting> combine_routings(const Demand& d1,
                                                    const ExplicitRouting& r1,
                                                    const Demand& d2,
                                                    const ExplicitRouting& r2);

struct BoundsCheck {
  bool pass = true;
  std::string violated;  // "lower" or "upper" when pass is false
  double max_congestion = 0;
  double lower = 0, upper = 0;
};

// size(d)/m <= cong(r, d) <= size(d) sanity check.
BoundsCheck congestion_bounds_check(const ExplicitRouting& r, const Demand& d,
                                    const Graph& g);

// Exact edge loads for any routing via pair distributions.
std::vector<double> exact_edge_loads(const Routing& r, const Demand& d);

struct MonteCarloCongestion {
  double max_mean_load = 0;
  double standard_error = 0;  // of the maximizing edge's mean
  int trials = 0;
};

// Estimates cong(r, d) by sampling one path per support pair per trial.
MonteCarloCongestion monte_carlo_congestion(const Routing& r, const Demand& d,
                                            int trials, std::uint64_t seed);

// Routing text format: path lines with a trailing weight,
// "path <s> <t> : <v1> ... <vk> w=<weight>", order-preserving.
ExplicitRouting load_routing(const std::string& text, const Graph& g);
std::string save_routing(const ExplicitRouting& r);
ExplicitRouting load_routing_file(const std::string& path, const Graph& g);
void save_routing_file(const ExplicitRouting& r, const std::string& path);

}  // namespace soro
