#include "soro/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <queue>
#include <string>
#include <utility>

#include "soro/errors.hpp"
#include "soro/rng.hpp"

namespace soro {

namespace {

constexpr double kCertSlack = 1e-12;

void check_eps(double eps) {
  if (!(eps > 0) || eps > 0.5) {
    throw ValidationError("eps must lie in (0, 1/2], got " + std::to_string(eps));
  }
}

std::string pair_name(const PairKey& key) {
  return "(" + std::to_string(key.first + 1) + ", " + std::to_string(key.second + 1) + ")";
}

// Shared state of the congestion game: edge weights move by multiplicative
// updates against the current round's loads, the averaged flow over the
// current window gives the upper bound, and the best round value over the
// normalized weights gives the lower bound.
struct GameState {
  explicit GameState(int m, double eps_in)
      : eps(eps_in), weights(m, 1.0), window_loads(m, 0.0), round_loads(m, 0.0) {}

  double eps;
  std::vector<double> weights;
  std::vector<double> window_loads;
  std::vector<double> round_loads;
  int window_rounds = 0;
  int next_restart = 32;
  double lb_best = 0;

  void begin_round() { std::fill(round_loads.begin(), round_loads.end(), 0.0); }

  double weight_sum() const {
    double s = 0;
    for (double w : weights) s += w;
    return s;
  }

  // Folds the round into the window average and the dual bound; returns the
  // certified upper bound for the window so far.
  double end_round(double round_value) {
    lb_best = std::max(lb_best, round_value / weight_sum());
    ++window_rounds;
    double ub = 0;
    for (std::size_t e = 0; e < weights.size(); ++e) {
      window_loads[e] += round_loads[e];
      ub = std::max(ub, window_loads[e] / window_rounds);
    }
    return ub;
  }

  bool certified(double ub) const { return ub <= (1 + eps) * lb_best + kCertSlack; }

  void update_weights() {
    double rho = 0;
    for (double l : round_loads) rho = std::max(rho, l);
    if (rho <= 0) return;
    double scale = eps / (4.0 * rho);
    double top = 0;
    for (std::size_t e = 0; e < weights.size(); ++e) {
      weights[e] *= std::exp(scale * round_loads[e]);
      top = std::max(top, weights[e]);
    }
    if (top > 1e100) {
      for (double& w : weights) w /= top;
    }
  }

  // True when the caller should reset window accumulators (geometric
  // restarts keep the average tracking the converged play, not the early
  // exploration).
  bool take_restart(int iter) {
    if (iter != next_restart) return false;
    std::fill(window_loads.begin(), window_loads.end(), 0.0);
    window_rounds = 0;
    next_restart *= 4;
    return true;
  }
};

SolveResult empty_result(const Graph& g) {
  SolveResult res{ExplicitRouting(g.vertex_count(), g.edge_count()), 0.0, {}, 0};
  return res;
}

std::vector<double> normalized(const std::vector<double>& w) {
  double s = 0;
  for (double v : w) s += v;
  std::vector<double> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = s > 0 ? w[i] / s : 0.0;
  return out;
}

}  // namespace

SolveResult min_congestion_fractional(const PathSystem& p, const Demand& d,
                                      const Graph& g, double eps,
                                      int max_iterations) {
  check_eps(eps);
  if (max_iterations < 1) throw ValidationError("iteration budget must be positive");
  if (d.entries().empty()) return empty_result(g);

  const int m = g.edge_count();
  std::vector<PairKey> pairs;
  std::vector<double> amounts;
  std::vector<std::vector<const Path*>> candidates;
  for (const DemandEntry& entry : d.entries()) {
    PairKey key{entry.s, entry.t};
    if (!p.has_pair(entry.s, entry.t)) {
      throw ValidationError("path system has no paths for demanded pair " + pair_name(key));
    }
    pairs.push_back(key);
    amounts.push_back(entry.amount);
    std::vector<const Path*> cand;
    for (const Path& path : p.paths(entry.s, entry.t)) cand.push_back(&path);
    candidates.push_back(std::move(cand));
  }

  auto build_routing = [&](const std::vector<std::vector<double>>& counts,
                           int rounds) {
    ExplicitRouting r(g.vertex_count(), m);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      std::vector<WeightedPath> dist;
      for (std::size_t j = 0; j < candidates[i].size(); ++j) {
        if (counts[i][j] > 0) {
          dist.push_back({*candidates[i][j], counts[i][j] / rounds});
        }
      }
      r.set_pair(pairs[i].first, pairs[i].second, dist);
    }
    return r;
  };

  bool all_single = true;
  for (const auto& cand : candidates) {
    if (cand.size() != 1) all_single = false;
  }
  if (all_single) {
    std::vector<std::vector<double>> counts(pairs.size(), std::vector<double>(1, 1.0));
    ExplicitRouting r = build_routing(counts, 1);
    double achieved = congestion(r, d).max_congestion;
    return {std::move(r), achieved, {}, 0};
  }

  GameState game(m, eps);
  // Each round a pair spreads its demand over its paths with weight
  // exp(-4 (len/best - 1) / eps): a smooth best response, so near-ties keep
  // sharing load instead of flapping between extremes (a hard threshold
  // locks single-hop parallel routes into a cycle whose average never
  // certifies). The dual bound still uses the exact minimum, so the
  // certificate is unaffected by how the primal spreads.
  std::vector<std::vector<double>> counts;
  std::vector<double> lens;
  std::vector<double> shares;
  counts.reserve(pairs.size());
  for (const auto& cand : candidates) counts.emplace_back(cand.size(), 0.0);

  for (int iter = 1; iter <= max_iterations; ++iter) {
    game.begin_round();
    double round_value = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      lens.assign(candidates[i].size(), 0.0);
      double best_len = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < candidates[i].size(); ++j) {
        for (int e : candidates[i][j]->edge_ids()) lens[j] += game.weights[e];
        best_len = std::min(best_len, lens[j]);
      }
      round_value += amounts[i] * best_len;
      shares.assign(candidates[i].size(), 1.0);
      double total = 0;
      for (std::size_t j = 0; j < candidates[i].size(); ++j) {
        if (best_len > 0) {
          shares[j] = std::exp(-4.0 * (lens[j] / best_len - 1.0) / eps);
        }
        total += shares[j];
      }
      for (std::size_t j = 0; j < candidates[i].size(); ++j) {
        double frac = shares[j] / total;
        if (frac <= 0) continue;
        counts[i][j] += frac;
        for (int e : candidates[i][j]->edge_ids()) {
          game.round_loads[e] += amounts[i] * frac;
        }
      }
    }
    double ub = game.end_round(round_value);
    if (game.certified(ub)) {
      ExplicitRouting r = build_routing(counts, game.window_rounds);
      double achieved = congestion(r, d).max_congestion;
      return {std::move(r), achieved, normalized(game.weights), iter};
    }
    game.update_weights();
    if (game.take_restart(iter)) {
      for (auto& c : counts) std::fill(c.begin(), c.end(), 0.0);
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "no (1+%.3g)-certificate after %d iterations (lb %.6g)", eps,
                max_iterations, game.lb_best);
  throw SolverError(buf);
}

namespace {

// Shortest path tree under the current edge weights; parent_edge[v] is the
// edge that finalized v. Relaxation scans adjacency in edge order and keeps
// strict improvements only, so the tree is deterministic.
struct DijkstraTree {
  std::vector<double> dist;
  std::vector<int> parent_edge;
  std::vector<int> parent_vertex;
};

DijkstraTree dijkstra(const Graph& g, int source, const std::vector<double>& w) {
  const int n = g.vertex_count();
  DijkstraTree tree{std::vector<double>(n, std::numeric_limits<double>::infinity()),
                    std::vector<int>(n, -1), std::vector<int>(n, -1)};
  tree.dist[source] = 0;
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> queue;
  queue.push({0.0, source});
  std::vector<char> done(n, 0);
  while (!queue.empty()) {
    auto [dist_u, u] = queue.top();
    queue.pop();
    if (done[u]) continue;
    done[u] = 1;
    for (const auto& [v, e] : g.neighbors(u)) {
      double cand = dist_u + w[e];
      if (cand < tree.dist[v]) {
        tree.dist[v] = cand;
        tree.parent_edge[v] = e;
        tree.parent_vertex[v] = u;
        queue.push({cand, v});
      }
    }
  }
  return tree;
}

Path tree_path(const Graph& g, const DijkstraTree& tree, int s, int t) {
  std::vector<int> verts;
  std::vector<int> edges;
  for (int v = t; v != s; v = tree.parent_vertex[v]) {
    verts.push_back(v);
    edges.push_back(tree.parent_edge[v]);
  }
  verts.push_back(s);
  std::reverse(verts.begin(), verts.end());
  std::reverse(edges.begin(), edges.end());
  return Path::from_edges(g, verts.front(), edges);
}

}  // namespace

SolveResult optimal_fractional_congestion(const Graph& g, const Demand& d,
                                          double eps, int max_iterations) {
  check_eps(eps);
  if (max_iterations < 1) throw ValidationError("iteration budget must be positive");
  if (d.entries().empty()) return empty_result(g);

  const int m = g.edge_count();
  std::vector<PairKey> pairs;
  std::vector<double> amounts;
  std::vector<std::vector<int>> by_source_index(g.vertex_count());
  for (const DemandEntry& entry : d.entries()) {
    by_source_index[entry.s].push_back(int(pairs.size()));
    pairs.push_back({entry.s, entry.t});
    amounts.push_back(entry.amount);
  }

  // Columns generated so far, per pair, keyed by edge sequence.
  std::vector<std::vector<Path>> columns(pairs.size());
  std::vector<std::map<std::vector<int>, int>> column_index(pairs.size());
  std::vector<std::vector<double>> counts(pairs.size());

  GameState game(m, eps);
  std::vector<double> lens;
  std::vector<double> shares;
  for (int iter = 1; iter <= max_iterations; ++iter) {
    game.begin_round();
    double round_value = 0;
    for (int s = 0; s < g.vertex_count(); ++s) {
      if (by_source_index[s].empty()) continue;
      DijkstraTree tree = dijkstra(g, s, game.weights);
      for (int i : by_source_index[s]) {
        Path path = tree_path(g, tree, s, pairs[i].second);
        double best_len = tree.dist[pairs[i].second];
        round_value += amounts[i] * best_len;
        auto [it, fresh] =
            column_index[i].try_emplace(path.edge_ids(), int(columns[i].size()));
        if (fresh) {
          columns[i].push_back(path);
          counts[i].push_back(0.0);
        }
        (void)it;
        // Smooth response over the pooled columns, as in the fixed-system
        // solver; the freshly priced column always carries the top share.
        lens.assign(columns[i].size(), 0.0);
        shares.assign(columns[i].size(), 1.0);
        double total = 0;
        for (std::size_t j = 0; j < columns[i].size(); ++j) {
          for (int e : columns[i][j].edge_ids()) lens[j] += game.weights[e];
          if (best_len > 0) {
            shares[j] = std::exp(-4.0 * (lens[j] / best_len - 1.0) / eps);
          }
          total += shares[j];
        }
        for (std::size_t j = 0; j < columns[i].size(); ++j) {
          double frac = shares[j] / total;
          if (frac <= 0) continue;
          counts[i][j] += frac;
          for (int e : columns[i][j].edge_ids()) {
            game.round_loads[e] += amounts[i] * frac;
          }
        }
      }
    }
    double ub = game.end_round(round_value);
    if (game.certified(ub)) {
      ExplicitRouting r(g.vertex_count(), m);
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        std::vector<WeightedPath> dist;
        for (std::size_t j = 0; j < columns[i].size(); ++j) {
          if (counts[i][j] > 0) {
            dist.push_back({columns[i][j], counts[i][j] / game.window_rounds});
          }
        }
        r.set_pair(pairs[i].first, pairs[i].second, dist);
      }
      double achieved = congestion(r, d).max_congestion;
      return {std::move(r), achieved, normalized(game.weights), iter};
    }
    game.update_weights();
    if (game.take_restart(iter)) {
      for (auto& c : counts) std::fill(c.begin(), c.end(), 0);
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "no (1+%.3g)-certificate after %d iterations (lb %.6g)", eps,
                max_iterations, game.lb_best);
  throw SolverError(buf);
}

namespace {

constexpr double kIntegralityTol = 1e-9;
constexpr double kEnumerationBudget = 1e7;

int integral_amount(const DemandEntry& entry) {
  double rounded = std::round(entry.amount);
  if (std::abs(entry.amount - rounded) > kIntegralityTol || rounded < 1) {
    throw ValidationError("demand must be integral and positive for pair (" +
                          std::to_string(entry.s + 1) + ", " +
                          std::to_string(entry.t + 1) + ")");
  }
  return int(rounded);
}

struct IntegralSearch {
  explicit IntegralSearch(const Graph& graph)
      : loads(graph.edge_count(), 0) {}

  std::vector<std::vector<Path>> paths;  // per pair, enumeration order
  std::vector<int> units;                // per pair, d(s,t)
  std::vector<int> loads;
  std::vector<std::vector<int>> choice;       // per pair, path index per unit
  std::vector<std::vector<int>> best_choice;  // first assignment achieving best
  int best = std::numeric_limits<int>::max();

  void place(std::size_t pair_idx, int unit, int min_path, int running_max) {
    if (running_max >= best) return;  // can only get worse
    if (pair_idx == paths.size()) {
      best = running_max;
      best_choice = choice;
      return;
    }
    if (unit == units[pair_idx]) {
      place(pair_idx + 1, 0, 0, running_max);
      return;
    }
    // Units within a pair are interchangeable: forcing non-decreasing path
    // indices enumerates each multiset once.
    for (int j = min_path; j < int(paths[pair_idx].size()); ++j) {
      int new_max = running_max;
      for (int e : paths[pair_idx][j].edge_ids()) {
        new_max = std::max(new_max, ++loads[e]);
      }
      if (new_max < best) {
        choice[pair_idx][unit] = j;
        place(pair_idx, unit + 1, j, new_max);
      }
      for (int e : paths[pair_idx][j].edge_ids()) --loads[e];
    }
  }
};

}  // namespace

IntegralOpt optimal_integral_congestion(const Graph& g, const Demand& d) {
  if (d.entries().empty()) {
    return {0, ExplicitRouting(g.vertex_count(), g.edge_count())};
  }
  std::vector<DemandEntry> entries(d.entries().begin(), d.entries().end());
  std::sort(entries.begin(), entries.end(), [](const DemandEntry& a, const DemandEntry& b) {
    return std::make_pair(a.s, a.t) < std::make_pair(b.s, b.t);
  });

  IntegralSearch search(g);
  double log_budget = 0;
  const double log_max = std::log(kEnumerationBudget);
  for (const DemandEntry& entry : entries) {
    int units = integral_amount(entry);
    // Cap the per-pair enumeration by what the remaining budget allows, so
    // oversized instances fail fast instead of enumerating millions first.
    double allowed =
        std::floor(std::exp((log_max - log_budget) / units) + 1e-9);
    if (allowed < 1) {
      throw ValidationError("assignment space exceeds enumeration budget");
    }
    std::vector<Path> paths = all_simple_paths(
        g, entry.s, entry.t, std::size_t(std::min(allowed, kEnumerationBudget)));
    log_budget += units * std::log(double(paths.size()));
    if (log_budget > log_max + 1e-9) {
      throw ValidationError("assignment space exceeds enumeration budget");
    }
    search.units.push_back(units);
    search.choice.emplace_back(units, 0);
    search.paths.push_back(std::move(paths));
  }
  search.place(0, 0, 0, 0);

  ExplicitRouting routing(g.vertex_count(), g.edge_count());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    std::vector<int> per_path(search.paths[i].size(), 0);
    for (int j : search.best_choice[i]) ++per_path[j];
    std::vector<WeightedPath> dist;
    for (std::size_t j = 0; j < per_path.size(); ++j) {
      if (per_path[j] > 0) {
        dist.push_back({search.paths[i][j], double(per_path[j]) / search.units[i]});
      }
    }
    routing.set_pair(entries[i].s, entries[i].t, dist);
  }
  return {search.best, std::move(routing)};
}

WeakRouteResult greedy_cut_weak_route(const Graph& g, const SampledSystem& sample,
                                      const Demand& d, double gamma) {
  if (!(gamma >= 0)) throw ValidationError("gamma must be nonnegative");
  const int m = g.edge_count();

  // Flattened (pair, path) slots carrying the initial weights
  // d(s,t) * count / draws.
  std::vector<PairKey> pairs;
  std::vector<std::vector<const Path*>> slot_paths;
  std::vector<std::vector<double>> weight;
  std::vector<std::vector<std::pair<int, int>>> through_edge(m);
  for (const DemandEntry& entry : d.entries()) {
    if (!sample.paths.has_pair(entry.s, entry.t)) {
      throw ValidationError("sampled system has no paths for demanded pair (" +
                            std::to_string(entry.s + 1) + ", " +
                            std::to_string(entry.t + 1) + ")");
    }
    const std::vector<Path>& paths = sample.paths.paths(entry.s, entry.t);
    const std::vector<int>& mult = sample.multiplicities.at({entry.s, entry.t});
    double draws = sample.draws(entry.s, entry.t);
    int pair_idx = int(pairs.size());
    pairs.push_back({entry.s, entry.t});
    std::vector<const Path*> sp;
    std::vector<double> w;
    for (std::size_t j = 0; j < paths.size(); ++j) {
      sp.push_back(&paths[j]);
      w.push_back(entry.amount * mult[j] / draws);
      for (int e : paths[j].edge_ids()) {
        through_edge[e].push_back({pair_idx, int(j)});
      }
    }
    slot_paths.push_back(std::move(sp));
    weight.push_back(std::move(w));
  }

  WeakRouteResult result;
  for (int e = 0; e < m; ++e) {
    double load = 0;
    for (const auto& [i, j] : through_edge[e]) load += weight[i][j];
    if (load > gamma + 1e-12) {
      result.cut_edges.push_back(e);
      for (const auto& [i, j] : through_edge[e]) {
        result.deleted_mass += weight[i][j];
        weight[i][j] = 0;
      }
    }
  }

  result.routing = ExplicitRouting(g.vertex_count(), m);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    double kept = 0;
    for (double w : weight[i]) kept += w;
    if (kept <= 0) continue;
    result.subdemand.set(pairs[i].first, pairs[i].second, kept);
    std::vector<WeightedPath> dist;
    for (std::size_t j = 0; j < weight[i].size(); ++j) {
      if (weight[i][j] > 0) dist.push_back({*slot_paths[i][j], weight[i][j] / kept});
    }
    result.routing.set_pair(pairs[i].first, pairs[i].second, dist);
  }
  return result;
}

WeakToStrongResult weak_to_strong(const PathSystem& p, const Demand& d,
                                  const Graph& g, const WeakRouter& weak) {
  const int m = g.edge_count();
  WeakToStrongResult result;
  result.routing = ExplicitRouting(g.vertex_count(), m);
  if (d.entries().empty()) return result;

  const double total = d.size();
  const int max_rounds = int(std::ceil(std::log(double(m)) / std::log(1.5))) + 1;
  Demand current = d;
  while (!current.entries().empty() && current.size() > total / m + 1e-12) {
    if (result.rounds >= max_rounds) {
      throw SolverError("weak routing did not contract within the round bound");
    }
    WeakRouteResult round = weak(current);
    ++result.rounds;
    if (!dominated_by(round.subdemand, current)) {
      throw ValidationError("weak router routed demand it was not given");
    }
    if (round.subdemand.size() < current.size() / 2 - 1e-9) {
      throw ValidationError("weak router routed less than half the demand");
    }
    Demand settled;
    ExplicitRouting settled_routing(g.vertex_count(), m);
    for (const DemandEntry& entry : current.entries()) {
      if (round.subdemand.amount(entry.s, entry.t) >= entry.amount / 4) {
        settled.set(entry.s, entry.t, entry.amount);
        settled_routing.set_pair(entry.s, entry.t,
                                 round.routing.distribution(entry.s, entry.t));
      }
    }
    Demand rest;
    for (const DemandEntry& entry : current.entries()) {
      if (!settled.contains(entry.s, entry.t)) rest.set(entry.s, entry.t, entry.amount);
    }
    auto [merged_d, merged_r] =
        combine_routings(result.routed, result.routing, settled, settled_routing);
    result.routed = std::move(merged_d);
    result.routing = std::move(merged_r);
    current = std::move(rest);
  }

  if (!current.entries().empty()) {
    ExplicitRouting leftover(g.vertex_count(), m);
    for (const DemandEntry& entry : current.entries()) {
      if (!p.has_pair(entry.s, entry.t)) {
        throw ValidationError("path system has no paths for demanded pair (" +
                              std::to_string(entry.s + 1) + ", " +
                              std::to_string(entry.t + 1) + ")");
      }
      leftover.set_pair(entry.s, entry.t,
                        {{p.paths(entry.s, entry.t).front(), 1.0}});
    }
    auto [merged_d, merged_r] =
        combine_routings(result.routed, result.routing, current, leftover);
    result.routed = std::move(merged_d);
    result.routing = std::move(merged_r);
    ++result.rounds;
  }
  return result;
}

BucketRouteResult special_bucket_route(const Demand& d, const Graph& g,
                                       int alpha, const SpecialRouter& special) {
  if (alpha < 1) throw ValidationError("alpha must be at least 1");
  const int n = g.vertex_count();
  const int m = g.edge_count();
  const double cap = double(n) * n * m;
  const int levels = int(std::ceil(std::log2(double(n) * n * m))) + 1;

  BucketRouteResult result;
  result.max_buckets = 2 * levels;
  result.routing = ExplicitRouting(n, m);
  if (d.entries().empty()) return result;

  std::map<int, Demand> buckets;  // bucket index -> sub-demand
  for (const DemandEntry& entry : d.entries()) {
    if (entry.amount < 1 - 1e-9 || entry.amount > cap + 1e-9) {
      throw ValidationError("demand entries must lie in [1, n^2 m]");
    }
    double cnt = alpha + min_cut(g, entry.s, entry.t);
    int bucket = int(std::floor(std::log2(entry.amount / cnt))) + levels + 1;
    if (bucket < 1 || bucket > 2 * levels) {
      throw ValidationError("demand ratio falls outside the bucket range");
    }
    buckets[bucket].set(entry.s, entry.t, entry.amount);
  }

  Demand merged;
  for (auto& [bucket, sub] : buckets) {
    (void)bucket;
    Demand dominating;
    for (const DemandEntry& entry : sub.entries()) {
      dominating.set(entry.s, entry.t,
                     double(alpha) + min_cut(g, entry.s, entry.t));
    }
    ExplicitRouting sub_routing = special(dominating);
    auto [next_d, next_r] = combine_routings(merged, result.routing, sub, sub_routing);
    merged = std::move(next_d);
    result.routing = std::move(next_r);
    ++result.buckets_used;
  }
  return result;
}

RoundResult randomized_round(const ExplicitRouting& r, const Demand& d,
                             int max_retries, std::uint64_t seed) {
  if (max_retries < 1) throw ValidationError("max_retries must be positive");
  const int m = r.edge_count();
  const double bound =
      2 * congestion(r, d).max_congestion + 3 * std::log(double(m));

  std::vector<int> units;
  for (const DemandEntry& entry : d.entries()) units.push_back(integral_amount(entry));

  double best_seen = std::numeric_limits<double>::infinity();
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    Rng rng(derive_seed(seed, std::uint64_t(attempt)));
    ExplicitRouting rounded(r.vertex_count(), m);
    std::size_t idx = 0;
    for (const DemandEntry& entry : d.entries()) {
      const std::vector<WeightedPath>& dist = r.distribution(entry.s, entry.t);
      std::vector<int> counts(dist.size(), 0);
      for (int u = 0; u < units[idx]; ++u) {
        // Inverse CDF over the pair's distribution, same convention as
        // ExplicitRouting::sample_path but tracking the index.
        double x = rng.next_double();
        double acc = 0;
        std::size_t chosen = dist.size() - 1;
        for (std::size_t j = 0; j < dist.size(); ++j) {
          acc += dist[j].weight;
          if (x < acc) {
            chosen = j;
            break;
          }
        }
        ++counts[chosen];
      }
      std::vector<WeightedPath> kept;
      for (std::size_t j = 0; j < dist.size(); ++j) {
        if (counts[j] > 0) {
          kept.push_back({dist[j].path, double(counts[j]) / units[idx]});
        }
      }
      rounded.set_pair(entry.s, entry.t, kept);
      ++idx;
    }
    double achieved = congestion(rounded, d).max_congestion;
    best_seen = std::min(best_seen, achieved);
    if (achieved <= bound + 1e-9) {
      return {std::move(rounded), achieved, attempt};
    }
  }
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "rounding failed after %d attempts; best congestion %.6g exceeds bound %.6g",
                max_retries, best_seen, bound);
  throw SolverError(buf);
}

}  // namespace soro
