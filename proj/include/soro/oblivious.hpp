#pragma once

#include <memory>
#include <string>
#include <vector>

#include "soro/graph.hpp"
#include "soro/routing.hpp"

namespace soro {

enum class BackendKind { valiant, optimal, spuniform };

BackendKind parse_backend_kind(const std::string& name);
std::string backend_kind_name(BackendKind kind);

// Valiant's trick on a hypercube: route s -> w -> t through a uniformly
// random intermediate w, each leg greedily fixing differing bits from the
// least significant up; any cycle the two legs create is erased at the first
// revisit. Per-pair distributions are exact (enumeration over the 2^dim
// intermediates), so edge hit probabilities carry no sampling error.
class ValiantRouting final : public Routing {
 public:
  // g must be bytewise identical to hypercube(dim) for some dim.
  explicit ValiantRouting(std::shared_ptr<const Graph> g);

  int dim() const { return dim_; }
  int vertex_count() const override { return graph_->vertex_count(); }
  int edge_count() const override { return graph_->edge_count(); }
  bool defined(int s, int t) const override;
  Path sample_path(int s, int t, Rng& rng) const override;
  std::vector<WeightedPath> pair_distribution(int s, int t) const override;

  // The loop-erased bit-fixing route for a fixed intermediate.
  Path route_via(int s, int w, int t) const;

 private:
  std::shared_ptr<const Graph> graph_;
  int dim_;
};

// Uniform distribution over all shortest s-t paths, counted per edge so
// parallel edges yield distinct paths. BFS tables are built per source on
// first use and memoized; the class is cheap to build but, like all
// backends, meant for single-threaded use.
class ShortestPathUniformRouting final : public Routing {
 public:
  explicit ShortestPathUniformRouting(std::shared_ptr<const Graph> g);

  int vertex_count() const override { return graph_->vertex_count(); }
  int edge_count() const override { return graph_->edge_count(); }
  bool defined(int s, int t) const override;
  Path sample_path(int s, int t, Rng& rng) const override;
  // Enumerates every shortest path; cost is proportional to their number.
  std::vector<WeightedPath> pair_distribution(int s, int t) const override;

 private:
  struct BfsTable {
    std::vector<int> dist;
    std::vector<double> count;  // shortest-path counts, parallel edges included
  };
  const BfsTable& table(int s) const;

  std::shared_ptr<const Graph> graph_;
  mutable std::map<int, BfsTable> tables_;
};

// Explicit routing minimizing, within factor (1 + eps), the worst ratio
// cong(R, d) / opt(d) over the restricted adversary: every single-pair
// demand (scaled by 1 / cut(s,t)) plus the uniform all-pairs demand. Uses
// exhaustive per-pair path enumeration, so it requires a global simple-path
// count of at most 200000.
struct ExhaustiveOptimalResult {
  ExplicitRouting routing;
  double competitiveness = 0;  // certified worst ratio over the adversary
  int iterations = 0;
};
ExhaustiveOptimalResult exhaustive_optimal_oblivious(const Graph& g, double eps,
                                                     int max_iterations = 200000);

inline constexpr std::size_t kExhaustivePathCap = 200000;

// Generative backends are persisted as a small descriptor instead of a path
// list. Formats:
//   backend valiant          backend spuniform
//   dim <dim>
std::string save_backend_descriptor(const ValiantRouting& r);
std::string save_backend_descriptor(const ShortestPathUniformRouting& r);
bool is_backend_descriptor(const std::string& text);
// Self-contained kinds only (valiant); spuniform needs the graph overload.
std::unique_ptr<Routing> load_backend_descriptor(const std::string& text);
std::unique_ptr<Routing> load_backend_descriptor(const std::string& text,
                                                 const Graph& g);

// Dispatch on content: descriptor or explicit routing file.
std::unique_ptr<Routing> load_any_routing_file(const std::string& path,
                                               const Graph& g);

}  // namespace soro
