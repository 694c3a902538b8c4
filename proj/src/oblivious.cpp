#include "soro/oblivious.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <queue>
#include <sstream>

#include "soro/errors.hpp"
#include "soro/solver.hpp"

namespace soro {

BackendKind parse_backend_kind(const std::string& name) {
  if (name == "valiant") return BackendKind::valiant;
  if (name == "optimal") return BackendKind::optimal;
  if (name == "spuniform") return BackendKind::spuniform;
  throw ValidationError("unknown backend kind: " + name);
}

std::string backend_kind_name(BackendKind kind) {
  switch (kind) {
    case BackendKind::valiant: return "valiant";
    case BackendKind::optimal: return "optimal";
    case BackendKind::spuniform: return "spuniform";
  }
  throw ValidationError("unknown backend kind");
}

// ---------------------------------------------------------------------------
// Valiant

ValiantRouting::ValiantRouting(std::shared_ptr<const Graph> g)
    : graph_(std::move(g)) {
  auto dim = hypercube_dimension(*graph_);
  if (!dim)
    throw ValidationError("valiant routing needs a generated hypercube");
  dim_ = *dim;
}

bool ValiantRouting::defined(int s, int t) const {
  int n = graph_->vertex_count();
  return s != t && s >= 0 && t >= 0 && s < n && t < n;
}

namespace {

// Append the greedy bit-fixing walk from `from` to `to`, least significant
// differing bit first. `from` itself is assumed already present.
void bit_fix_walk(int from, int to, std::vector<int>& walk) {
  int cur = from;
  int diff = cur ^ to;
  while (diff) {
    int bit = diff & -diff;
    cur ^= bit;
    diff ^= bit;
    walk.push_back(cur);
  }
}

// Keep the walk's last visit structure: on a revisit, drop the cycle that
// closed at the first occurrence.
std::vector<int> loop_erase(const std::vector<int>& walk) {
  std::vector<int> out;
  std::map<int, int> position;
  for (int v : walk) {
    auto it = position.find(v);
    if (it != position.end()) {
      while (static_cast<int>(out.size()) > it->second + 1) {
        position.erase(out.back());
        out.pop_back();
      }
    } else {
      position[v] = static_cast<int>(out.size());
      out.push_back(v);
    }
  }
  return out;
}

}  // namespace

Path ValiantRouting::route_via(int s, int w, int t) const {
  std::vector<int> walk{s};
  bit_fix_walk(s, w, walk);
  bit_fix_walk(w, t, walk);
  return Path::from_vertices(*graph_, loop_erase(walk));
}

Path ValiantRouting::sample_path(int s, int t, Rng& rng) const {
  if (!defined(s, t)) throw ValidationError("pair undefined for valiant routing");
  int w = static_cast<int>(rng.next_below(graph_->vertex_count()));
  return route_via(s, w, t);
}

std::vector<WeightedPath> ValiantRouting::pair_distribution(int s, int t) const {
  if (!defined(s, t)) throw ValidationError("pair undefined for valiant routing");
  int n = graph_->vertex_count();
  std::map<std::vector<int>, int> counts;  // vertex sequence -> multiplicity
  for (int w = 0; w < n; ++w) ++counts[route_via(s, w, t).vertices()];
  std::vector<WeightedPath> dist;
  dist.reserve(counts.size());
  for (const auto& [verts, count] : counts)
    dist.push_back({Path::from_vertices(*graph_, verts),
                    static_cast<double>(count) / n});
  return dist;
}

// ---------------------------------------------------------------------------
// Uniform shortest paths

ShortestPathUniformRouting::ShortestPathUniformRouting(
    std::shared_ptr<const Graph> g)
    : graph_(std::move(g)) {}

bool ShortestPathUniformRouting::defined(int s, int t) const {
  int n = graph_->vertex_count();
  return s != t && s >= 0 && t >= 0 && s < n && t < n;
}

const ShortestPathUniformRouting::BfsTable& ShortestPathUniformRouting::table(
    int s) const {
  auto it = tables_.find(s);
  if (it != tables_.end()) return it->second;
  BfsTable tab;
  int n = graph_->vertex_count();
  tab.dist.assign(n, -1);
  tab.count.assign(n, 0.0);
  tab.dist[s] = 0;
  tab.count[s] = 1.0;
  std::queue<int> q;
  q.push(s);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (auto [u, e] : graph_->neighbors(v)) {
      (void)e;
      if (tab.dist[u] == -1) {
        tab.dist[u] = tab.dist[v] + 1;
        q.push(u);
      }
      if (tab.dist[u] == tab.dist[v] + 1) tab.count[u] += tab.count[v];
    }
  }
  return tables_.emplace(s, std::move(tab)).first->second;
}

Path ShortestPathUniformRouting::sample_path(int s, int t, Rng& rng) const {
  if (!defined(s, t))
    throw ValidationError("pair undefined for shortest-path routing");
  const BfsTable& tab = table(s);
  // Walk backwards from t, picking each predecessor edge with probability
  // proportional to the shortest-path count behind it; this is exactly the
  // uniform distribution over shortest paths.
  std::vector<int> edges;
  int at = t;
  while (at != s) {
    double total = 0;
    for (auto [u, e] : graph_->neighbors(at)) {
      (void)e;
      if (tab.dist[u] == tab.dist[at] - 1) total += tab.count[u];
    }
    double x = rng.next_double() * total;
    double acc = 0;
    int chosen_u = -1, chosen_e = -1;
    for (auto [u, e] : graph_->neighbors(at)) {
      if (tab.dist[u] != tab.dist[at] - 1) continue;
      acc += tab.count[u];
      chosen_u = u;
      chosen_e = e;
      if (x < acc) break;
    }
    edges.push_back(chosen_e);
    at = chosen_u;
  }
  std::reverse(edges.begin(), edges.end());
  return Path::from_edges(*graph_, s, std::move(edges));
}

std::vector<WeightedPath> ShortestPathUniformRouting::pair_distribution(
    int s, int t) const {
  if (!defined(s, t))
    throw ValidationError("pair undefined for shortest-path routing");
  const BfsTable& tab = table(s);
  std::vector<WeightedPath> dist;
  std::vector<int> edges;
  // Forward DFS along the BFS DAG in edge order.
  auto walk = [&](auto&& self, int at) -> void {
    if (at == t) {
      dist.push_back({Path::from_edges(*graph_, s, edges), 0.0});
      return;
    }
    for (auto [u, e] : graph_->neighbors(at)) {
      if (tab.dist[u] != tab.dist[at] + 1 || tab.dist[u] > tab.dist[t]) continue;
      edges.push_back(e);
      self(self, u);
      edges.pop_back();
    }
  };
  walk(walk, s);
  for (WeightedPath& wp : dist) wp.weight = 1.0 / dist.size();
  return dist;
}

// ---------------------------------------------------------------------------
// Descriptors

std::string save_backend_descriptor(const ValiantRouting& r) {
  std::ostringstream out;
  out << "backend valiant\n" << "dim " << r.dim() << "\n";
  return out.str();
}

std::string save_backend_descriptor(const ShortestPathUniformRouting&) {
  return "backend spuniform\n";
}

bool is_backend_descriptor(const std::string& text) {
  std::istringstream in(text);
  std::string tok;
  return static_cast<bool>(in >> tok) && tok == "backend";
}

namespace {

std::string descriptor_kind(const std::string& text) {
  std::istringstream in(text);
  std::string head, kind;
  if (!(in >> head >> kind) || head != "backend")
    throw ValidationError("malformed backend descriptor");
  return kind;
}

std::unique_ptr<Routing> load_valiant_descriptor(const std::string& text) {
  std::istringstream in(text);
  std::string head, kind, key;
  int dim;
  in >> head >> kind;
  if (!(in >> key >> dim) || key != "dim")
    throw ValidationError("valiant descriptor is missing its dimension");
  auto g = std::make_shared<const Graph>(hypercube(dim));
  return std::make_unique<ValiantRouting>(std::move(g));
}

}  // namespace

std::unique_ptr<Routing> load_backend_descriptor(const std::string& text) {
  std::string kind = descriptor_kind(text);
  if (kind == "valiant") return load_valiant_descriptor(text);
  if (kind == "spuniform")
    throw ValidationError("spuniform descriptor needs the graph overload");
  throw ValidationError("unknown backend descriptor kind: " + kind);
}

std::unique_ptr<Routing> load_backend_descriptor(const std::string& text,
                                                 const Graph& g) {
  std::string kind = descriptor_kind(text);
  if (kind == "valiant") return load_valiant_descriptor(text);
  if (kind == "spuniform")
    return std::make_unique<ShortestPathUniformRouting>(
        std::make_shared<const Graph>(g));
  throw ValidationError("unknown backend descriptor kind: " + kind);
}

// ---------------------------------------------------------------------------
// Restricted-adversary optimal routing

ExhaustiveOptimalResult exhaustive_optimal_oblivious(const Graph& g, double eps,
                                                     int max_iterations) {
  if (!(eps > 0) || eps > 0.5) {
    throw ValidationError("eps must lie in (0, 1/2], got " + std::to_string(eps));
  }
  if (max_iterations < 1) throw ValidationError("iteration budget must be positive");
  const int n = g.vertex_count();
  const int m = g.edge_count();

  struct PairInfo {
    int s, t;
    double cut;
    std::vector<Path> paths;
  };
  std::vector<PairInfo> info;
  std::size_t total_paths = 0;
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) {
      if (s == t) continue;
      std::vector<Path> paths =
          all_simple_paths(g, s, t, kExhaustivePathCap - total_paths);
      total_paths += paths.size();
      info.push_back({s, t, double(min_cut(g, s, t)), std::move(paths)});
    }
  }
  const int pair_count = int(info.size());

  auto build_routing = [&](const std::vector<std::vector<double>>& counts,
                           double rounds) {
    ExplicitRouting r(n, m);
    for (int i = 0; i < pair_count; ++i) {
      std::vector<WeightedPath> dist;
      for (std::size_t j = 0; j < info[i].paths.size(); ++j) {
        if (counts[i][j] > 0) {
          dist.push_back({info[i].paths[j], counts[i][j] / rounds});
        }
      }
      r.set_pair(info[i].s, info[i].t, dist);
    }
    return r;
  };

  // Worst payoff of the finished routing over the restricted adversary:
  // per-pair demands normalized by their cut, plus the uniform demand
  // normalized by its optimum.
  auto restricted_ratio = [&](const ExplicitRouting& r, double opt_uniform) {
    std::vector<double> uniform_load(m, 0.0);
    double worst = 0;
    for (const PairInfo& pi : info) {
      for (const WeightedPath& wp : r.distribution(pi.s, pi.t)) {
        for (int e : wp.path.edge_ids()) uniform_load[e] += wp.weight;
      }
      for (int e = 0; e < m; ++e) {
        double hit = 0;
        for (const WeightedPath& wp : r.distribution(pi.s, pi.t)) {
          if (wp.path.uses_edge(e)) hit += wp.weight;
        }
        worst = std::max(worst, pi.cut * hit);
      }
    }
    for (int e = 0; e < m; ++e) {
      worst = std::max(worst, uniform_load[e] / opt_uniform);
    }
    return worst;
  };

  bool all_single = true;
  for (const PairInfo& pi : info) {
    if (pi.paths.size() != 1) all_single = false;
  }

  Demand uniform;
  for (const PairInfo& pi : info) uniform.set(pi.s, pi.t, 1.0);

  if (all_single) {
    std::vector<std::vector<double>> counts(pair_count,
                                            std::vector<double>(1, 1.0));
    ExplicitRouting r = build_routing(counts, 1.0);
    double opt_uniform = congestion(r, uniform).max_congestion;  // unique routing
    double ratio = restricted_ratio(r, opt_uniform);
    return {std::move(r), ratio, 0};
  }

  // Normalize the uniform demand by a certified lower bound on its optimal
  // congestion, so the reported competitiveness upper-bounds the true ratio.
  const double inner_eps = std::min(eps / 2, 0.05);
  const double opt_uniform =
      optimal_fractional_congestion(g, uniform, inner_eps).achieved /
      (1 + inner_eps);

  // Hedge over (demand, edge) experts versus per-pair best-response paths.
  const int experts = (pair_count + 1) * m;
  std::vector<double> weights(experts, 1.0);
  std::vector<double> payload(experts, 0.0);
  std::vector<double> acc(experts, 0.0);
  std::vector<std::vector<double>> counts;
  for (const PairInfo& pi : info) counts.emplace_back(pi.paths.size(), 0.0);

  const double spread_slack = 1 + eps / 8;
  std::vector<double> hit(m, 0.0);
  std::vector<double> lens;
  double lb_best = 0;
  int window_rounds = 0;
  int next_restart = 32;

  for (int iter = 1; iter <= max_iterations; ++iter) {
    double wsum = 0;
    for (double w : weights) wsum += w;
    std::fill(payload.begin(), payload.end(), 0.0);
    double round_value = 0;

    for (int i = 0; i < pair_count; ++i) {
      const PairInfo& pi = info[i];
      // Path cost = payoff this pair hands the current adversary mixture.
      lens.assign(pi.paths.size(), 0.0);
      double best_len = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < pi.paths.size(); ++j) {
        for (int e : pi.paths[j].edge_ids()) {
          lens[j] += pi.cut * weights[i * m + e] +
                     weights[pair_count * m + e] / opt_uniform;
        }
        best_len = std::min(best_len, lens[j]);
      }
      round_value += best_len / wsum;

      int qualifying = 0;
      for (double len : lens) {
        if (len <= best_len * spread_slack) ++qualifying;
      }
      std::fill(hit.begin(), hit.end(), 0.0);
      for (std::size_t j = 0; j < pi.paths.size(); ++j) {
        if (lens[j] <= best_len * spread_slack) {
          counts[i][j] += 1.0 / qualifying;
          for (int e : pi.paths[j].edge_ids()) hit[e] += 1.0 / qualifying;
        }
      }
      for (int e = 0; e < m; ++e) {
        if (hit[e] > 0) {
          payload[i * m + e] = pi.cut * hit[e];
          payload[pair_count * m + e] += hit[e] / opt_uniform;
        }
      }
    }

    lb_best = std::max(lb_best, round_value);
    ++window_rounds;
    double ub = 0;
    double rho = 0;
    for (int x = 0; x < experts; ++x) {
      acc[x] += payload[x];
      ub = std::max(ub, acc[x] / window_rounds);
      rho = std::max(rho, payload[x]);
    }
    if (ub <= (1 + eps) * lb_best + 1e-12) {
      ExplicitRouting r = build_routing(counts, window_rounds);
      double ratio = restricted_ratio(r, opt_uniform);
      return {std::move(r), ratio, iter};
    }

    double scale = eps / (4.0 * rho);
    double top = 0;
    for (int x = 0; x < experts; ++x) {
      weights[x] *= std::exp(scale * payload[x]);
      top = std::max(top, weights[x]);
    }
    if (top > 1e100) {
      for (double& w : weights) w /= top;
    }
    if (iter == next_restart) {
      std::fill(acc.begin(), acc.end(), 0.0);
      for (auto& c : counts) std::fill(c.begin(), c.end(), 0.0);
      window_rounds = 0;
      next_restart *= 4;
    }
  }
  throw SolverError("no competitive-ratio certificate within the iteration budget");
}

std::unique_ptr<Routing> load_any_routing_file(const std::string& path,
                                               const Graph& g) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open routing file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  if (is_backend_descriptor(text)) {
    auto r = load_backend_descriptor(text, g);
    if (r->vertex_count() != g.vertex_count() ||
        r->edge_count() != g.edge_count())
      throw ValidationError("backend descriptor does not match the graph");
    return r;
  }
  return std::make_unique<ExplicitRouting>(load_routing(text, g));
}

}  // namespace soro
