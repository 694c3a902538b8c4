#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "soro/graph.hpp"

namespace soro {

using PairKey = std::pair<int, int>;

// Simple path in a fixed graph. Identity is the edge-id sequence, so two
// routes through different parallel edges are different paths even though
// they visit the same vertices.
class Path {
 public:
  // Resolves consecutive vertices to edges; with parallel edges the lowest
  // edge id wins (the text format cannot express the difference).
  static Path from_vertices(const Graph& g, std::vector<int> vertices);
  static Path from_edges(const Graph& g, int source, std::vector<int> edge_ids);

  const std::vector<int>& vertices() const { return vertices_; }
  const std::vector<int>& edge_ids() const { return edge_ids_; }
  int source() const { return vertices_.front(); }
  int target() const { return vertices_.back(); }
  int hops() const { return static_cast<int>(edge_ids_.size()); }
  bool uses_edge(int e) const;

  bool operator==(const Path& o) const {
    return edge_ids_ == o.edge_ids_ && vertices_ == o.vertices_;
  }
  bool operator<(const Path& o) const {
    return vertices_ != o.vertices_ ? vertices_ < o.vertices_
                                    : edge_ids_ < o.edge_ids_;
  }

 private:
  Path() = default;
  std::vector<int> vertices_;
  std::vector<int> edge_ids_;
};

// Per-pair sets of candidate paths; pairs and paths keep insertion order and
// paths are unique within a pair. Looking up an absent pair is an error, not
// an empty set.
class PathSystem {
 public:
  // false if the path was already present.
  bool add(int s, int t, Path p);
  bool add(Path p) {
    int s = p.source(), t = p.target();
    return add(s, t, std::move(p));
  }
  bool has_pair(int s, int t) const;
  const std::vector<Path>& paths(int s, int t) const;
  const std::vector<PairKey>& pairs() const { return order_; }
  int pair_count() const { return static_cast<int>(order_.size()); }

  // Largest per-pair set size; 0 for an empty system.
  int sparsity() const;
  bool alpha_sparse(int alpha) const;
  bool alpha_plus_cut_sparse(int alpha, const Graph& g) const;

 private:
  std::vector<PairKey> order_;
  std::map<PairKey, std::vector<Path>> sets_;
};

// Text format: one line per path, "path <s> <t> : <v1> ... <vk>", 1-based,
// order-preserving.
PathSystem load_path_system(const std::string& text, const Graph& g);
std::string save_path_system(const PathSystem& ps);
PathSystem load_path_system_file(const std::string& path, const Graph& g);
void save_path_system_file(const PathSystem& ps, const std::string& path);

// Depth-first enumeration of all simple s-t paths in edge-id order. fn
// returning false aborts the walk. Returns false when aborted.
bool for_each_simple_path(const Graph& g, int s, int t,
                          const std::function<bool(const Path&)>& fn);

// All simple s-t paths; throws ValidationError when more than cap exist.
std::vector<Path> all_simple_paths(const Graph& g, int s, int t,
                                   std::size_t cap = SIZE_MAX);

}  // namespace soro
