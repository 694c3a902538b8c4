#include "soro/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <queue>
#include <sstream>

#include "soro/errors.hpp"

namespace soro {

namespace {

bool connected(int n, const std::vector<std::vector<std::pair<int, int>>>& adj) {
  std::vector<char> seen(n, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (auto [u, e] : adj[v]) {
      (void)e;
      if (!seen[u]) {
        seen[u] = 1;
        ++reached;
        q.push(u);
      }
    }
  }
  return reached == n;
}

}  // namespace

Graph::Graph(int vertex_count, std::vector<std::pair<int, int>> edges,
             std::vector<std::string> labels)
    : n_(vertex_count), edges_(std::move(edges)), labels_(std::move(labels)) {
  if (n_ < 2) throw ValidationError("graph needs at least 2 vertices");
  adj_.assign(n_, {});
  for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
    auto [u, v] = edges_[e];
    if (u < 0 || u >= n_ || v < 0 || v >= n_)
      throw ValidationError("edge endpoint out of range");
    if (u == v) throw ValidationError("self-loops are not allowed");
    adj_[u].push_back({v, e});
    adj_[v].push_back({u, e});
  }
  if (labels_.empty()) labels_.assign(n_, "");
  if (static_cast<int>(labels_.size()) != n_)
    throw ValidationError("label count does not match vertex count");
  if (!connected(n_, adj_)) throw ValidationError("graph is not connected");
}

std::vector<int> Graph::edge_ids(int u, int v) const {
  std::vector<int> ids;
  for (auto [w, e] : adj_[u])
    if (w == v) ids.push_back(e);
  std::sort(ids.begin(), ids.end());
  return ids;
}

void Graph::set_label(int v, std::string tag) {
  if (v < 0 || v >= n_) throw ValidationError("label vertex out of range");
  labels_[v] = std::move(tag);
}

Graph load_graph(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int n = -1, m = -1;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::pair<int, std::string>> labels;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;  // blank line
    if (head == "graph") {
      if (n != -1) throw ValidationError("duplicate graph header");
      if (!(ls >> n >> m) || n < 0 || m < 0)
        throw ValidationError("malformed graph header at line " +
                              std::to_string(lineno));
    } else if (head == "label") {
      int v;
      std::string tag;
      if (!(ls >> v >> tag))
        throw ValidationError("malformed label at line " +
                              std::to_string(lineno));
      labels.push_back({v, tag});
    } else {
      int u, v;
      std::istringstream es(line);
      if (!(es >> u >> v))
        throw ValidationError("malformed edge at line " +
                              std::to_string(lineno));
      if (n == -1) throw ValidationError("edge before graph header");
      if (u < 1 || u > n || v < 1 || v > n)
        throw ValidationError("edge endpoint out of range at line " +
                              std::to_string(lineno));
      edges.push_back({u - 1, v - 1});
    }
  }
  if (n == -1) throw ValidationError("missing graph header");
  if (static_cast<int>(edges.size()) != m)
    throw ValidationError("edge count does not match header");
  Graph g(n, std::move(edges));
  for (auto& [v, tag] : labels) {
    if (v < 1 || v > n) throw ValidationError("label vertex out of range");
    g.set_label(v - 1, tag);
  }
  return g;
}

std::string save_graph(const Graph& g) {
  std::ostringstream out;
  out << "graph " << g.vertex_count() << " " << g.edge_count() << "\n";
  for (auto [u, v] : g.edges()) out << u + 1 << " " << v + 1 << "\n";
  for (int v = 0; v < g.vertex_count(); ++v)
    if (!g.label(v).empty()) out << "label " << v + 1 << " " << g.label(v) << "\n";
  return out.str();
}

Graph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open graph file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_graph(buf.str());
}

void save_graph_file(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write graph file: " + path);
  out << save_graph(g);
}

Graph hypercube(int dim) {
  if (dim < 1 || dim > 14)
    throw ValidationError("hypercube dimension must be in [1, 14]");
  int n = 1 << dim;
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(n / 2) * dim);
  for (int u = 0; u < n; ++u)
    for (int b = 0; b < dim; ++b)
      if (!(u & (1 << b))) edges.push_back({u, u | (1 << b)});
  return Graph(n, std::move(edges));
}

std::optional<int> hypercube_dimension(const Graph& g) {
  int n = g.vertex_count();
  int dim = 0;
  while ((1 << dim) < n && dim < 15) ++dim;
  if ((1 << dim) != n || dim < 1 || dim > 14) return std::nullopt;
  Graph h = hypercube(dim);
  if (g.edges() != h.edges()) return std::nullopt;
  return dim;
}

Graph gadget_c(int n, int k) {
  if (n < 1 || k < 1) throw ValidationError("gadget_c needs n >= 1, k >= 1");
  int v1 = 0;
  int v2 = n + 1;
  int total = 2 * n + 2 + k;
  std::vector<std::pair<int, int>> edges;
  edges.reserve(2 * n + 2 * k);
  std::vector<std::string> labels(total);
  labels[v1] = "v1";
  labels[v2] = "v2";
  for (int i = 0; i < n; ++i) {
    edges.push_back({v1, 1 + i});
    labels[1 + i] = "V1";
  }
  for (int i = 0; i < n; ++i) {
    edges.push_back({v2, n + 2 + i});
    labels[n + 2 + i] = "V2";
  }
  for (int i = 0; i < k; ++i) {
    int u = 2 * n + 2 + i;
    edges.push_back({v1, u});
    edges.push_back({u, v2});
    labels[u] = "K";
  }
  return Graph(total, std::move(edges), std::move(labels));
}

int gadget_g_copies(int n) {
  if (n < 2) throw ValidationError("gadget_g needs n >= 2");
  int c = 0;
  while ((1LL << (c + 1)) <= n) ++c;
  return c;
}

int gadget_g_k(int n, int alpha) {
  // floor(n^(1/(2 alpha))): largest k with k^(2 alpha) <= n, computed with
  // exact integer arithmetic to dodge floating-point edge cases.
  auto pow_leq = [](long long k, int e, long long bound) {
    long long acc = 1;
    for (int i = 0; i < e; ++i) {
      if (acc > bound / k) return false;
      acc *= k;
    }
    return acc <= bound;
  };
  int k = 1;
  while (pow_leq(k + 1, 2 * alpha, n)) ++k;
  return k;
}

Graph gadget_g(int n) {
  int copies = gadget_g_copies(n);
  std::vector<std::pair<int, int>> edges;
  std::vector<std::string> labels;
  std::vector<int> copy_v1;
  int base = 0;
  for (int alpha = 1; alpha <= copies; ++alpha) {
    Graph c = gadget_c(n, gadget_g_k(n, alpha));
    copy_v1.push_back(base);
    for (auto [u, v] : c.edges()) edges.push_back({base + u, base + v});
    for (int v = 0; v < c.vertex_count(); ++v)
      labels.push_back("c" + std::to_string(alpha) + ":" + c.label(v));
    base += c.vertex_count();
  }
  for (int i = 0; i + 1 < copies; ++i)
    edges.push_back({copy_v1[i], copy_v1[i + 1]});
  return Graph(base, std::move(edges), std::move(labels));
}

GadgetRoles gadget_roles(const Graph& g, int copy) {
  std::string prefix = copy > 0 ? "c" + std::to_string(copy) + ":" : "";
  GadgetRoles roles;
  for (int v = 0; v < g.vertex_count(); ++v) {
    const std::string& tag = g.label(v);
    if (tag.compare(0, prefix.size(), prefix) != 0) continue;
    std::string role = tag.substr(prefix.size());
    if (role == "v1")
      roles.left_center = v;
    else if (role == "v2")
      roles.right_center = v;
    else if (role == "V1")
      roles.left_leaves.push_back(v);
    else if (role == "V2")
      roles.right_leaves.push_back(v);
    else if (role == "K")
      roles.middles.push_back(v);
  }
  if (roles.left_center < 0 || roles.right_center < 0 ||
      roles.left_leaves.empty() || roles.right_leaves.empty() ||
      roles.middles.empty())
    throw ValidationError("graph labels do not describe a two-star gadget");
  return roles;
}

CutValue min_cut(const Graph& g, int s, int t) {
  int n = g.vertex_count();
  if (s < 0 || s >= n || t < 0 || t >= n)
    throw ValidationError("min_cut endpoint out of range");
  if (s == t) return 0;
  // Unit-capacity max-flow, BFS augmenting paths. Each undirected edge
  // becomes an arc pair; arc i and i^1 are mutual reverses.
  int m = g.edge_count();
  std::vector<int> cap(2 * m, 1);
  std::vector<int> head(2 * m);
  std::vector<std::vector<int>> out(n);
  for (int e = 0; e < m; ++e) {
    auto [u, v] = g.edge(e);
    head[2 * e] = v;
    head[2 * e + 1] = u;
    out[u].push_back(2 * e);
    out[v].push_back(2 * e + 1);
  }
  int flow = 0;
  std::vector<int> prev_arc(n);
  for (;;) {
    std::fill(prev_arc.begin(), prev_arc.end(), -1);
    prev_arc[s] = -2;
    std::queue<int> q;
    q.push(s);
    while (!q.empty() && prev_arc[t] == -1) {
      int v = q.front();
      q.pop();
      for (int a : out[v]) {
        if (cap[a] > 0 && prev_arc[head[a]] == -1) {
          prev_arc[head[a]] = a;
          q.push(head[a]);
        }
      }
    }
    if (prev_arc[t] == -1) break;
    for (int v = t; v != s;) {
      int a = prev_arc[v];
      cap[a] -= 1;
      cap[a ^ 1] += 1;
      v = head[a ^ 1];
    }
    ++flow;
  }
  return flow;
}

}  // namespace soro
