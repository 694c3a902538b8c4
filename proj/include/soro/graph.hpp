#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace soro {

// Value of a minimum edge cut; always a nonnegative integer on
// unit-capacity multigraphs.
using CutValue = int;

// Undirected connected multigraph with a stable edge order. Parallel edges
// are allowed, self-loops are not. Vertices are 0-based in the API; the text
// format is 1-based.
class Graph {
 public:
  Graph(int vertex_count, std::vector<std::pair<int, int>> edges,
        std::vector<std::string> labels = {});

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::pair<int, int>& edge(int e) const { return edges_[e]; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  // (neighbor, edge id), sorted by edge id.
  const std::vector<std::pair<int, int>>& neighbors(int v) const {
    return adj_[v];
  }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }

  // Ids of all edges between u and v, ascending. Empty if none.
  std::vector<int> edge_ids(int u, int v) const;

  const std::string& label(int v) const { return labels_[v]; }
  void set_label(int v, std::string tag);

 private:
  int n_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<std::pair<int, int>>> adj_;
  std::vector<std::string> labels_;
};

// Text format:
//   graph <n> <m>
//   <u> <v>          (m lines, 1-based endpoints)
//   label <v> <tag>  (optional)
Graph load_graph(const std::string& text);
std::string save_graph(const Graph& g);
Graph load_graph_file(const std::string& path);
void save_graph_file(const Graph& g, const std::string& path);

// Boolean hypercube on 2^dim vertices; vertex ids are the bit patterns.
// Edge order: for each vertex u ascending, for each bit b ascending, the
// edge {u, u + 2^b} whenever bit b of u is zero. 1 <= dim <= 14.
Graph hypercube(int dim);

// Dimension of a graph that is bytewise identical (same vertex ids and edge
// order) to a generated hypercube, or nullopt.
std::optional<int> hypercube_dimension(const Graph& g);

// Two (n+1)-vertex stars whose centers are joined through k middle vertices.
// Vertex order: left center, n left leaves, right center, n right leaves,
// k middle vertices. Edge order: left star, right star, then the two-edge
// middle routes. Labels: v1, V1, v2, V2, K.
Graph gadget_c(int n, int k);

// floor(log2 n) copies of gadget_c(n, k_alpha) with k_alpha =
// floor(n^(1/(2 alpha))), alpha = 1..floor(log2 n). Copies sit consecutively
// in vertex order; the bridges (copy i's left center to copy i+1's left
// center) come last in edge order. Labels carry a "c<alpha>:" prefix.
Graph gadget_g(int n);

int gadget_g_copies(int n);          // floor(log2 n)
int gadget_g_k(int n, int alpha);    // floor(n^(1/(2 alpha)))

// Named vertices of gadget_c, recovered from labels. `copy` selects the
// "c<copy>:" prefix used by gadget_g; 0 means unprefixed labels.
struct GadgetRoles {
  int left_center = -1;
  int right_center = -1;
  std::vector<int> left_leaves;
  std::vector<int> right_leaves;
  std::vector<int> middles;
};
GadgetRoles gadget_roles(const Graph& g, int copy = 0);

// Minimum number of edges whose removal separates s from t (unit-capacity
// max-flow). min_cut(v, v) = 0.
CutValue min_cut(const Graph& g, int s, int t);

}  // namespace soro
