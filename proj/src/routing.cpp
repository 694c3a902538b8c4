#include "soro/routing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "soro/errors.hpp"

namespace soro {

namespace {
constexpr double kWeightTol = 1e-9;

std::string pair_name(int s, int t) {
  return "(" + std::to_string(s + 1) + ", " + std::to_string(t + 1) + ")";
}
}  // namespace

double Routing::edge_hit_probability(int s, int t, int e) const {
  double p = 0;
  for (const WeightedPath& wp : pair_distribution(s, t))
    if (wp.path.uses_edge(e)) p += wp.weight;
  return p;
}

void ExplicitRouting::set_pair(int s, int t, std::vector<WeightedPath> dist) {
  if (s == t || s < 0 || t < 0 || s >= n_ || t >= n_)
    throw ValidationError("routing pair endpoints out of range");
  if (dist.empty())
    throw ValidationError("routing pair " + pair_name(s, t) + " has no paths");
  double total = 0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const WeightedPath& wp = dist[i];
    if (wp.path.source() != s || wp.path.target() != t)
      throw ValidationError("routing path endpoints do not match pair " +
                            pair_name(s, t));
    if (wp.weight < -kWeightTol)
      throw ValidationError("negative path weight for pair " + pair_name(s, t));
    for (std::size_t j = 0; j < i; ++j)
      if (dist[j].path == wp.path)
        throw ValidationError("duplicate path in distribution for pair " +
                              pair_name(s, t));
    total += wp.weight;
  }
  if (std::abs(total - 1.0) > kWeightTol)
    throw ValidationError("path weights for pair " + pair_name(s, t) +
                          " sum to " + std::to_string(total) + ", expected 1");
  for (WeightedPath& wp : dist) wp.weight = std::max(wp.weight, 0.0);
  if (dist_.find({s, t}) == dist_.end()) order_.push_back({s, t});
  dist_[{s, t}] = std::move(dist);
}

const std::vector<WeightedPath>& ExplicitRouting::distribution(int s, int t) const {
  auto it = dist_.find({s, t});
  if (it == dist_.end())
    throw ValidationError("routing does not cover pair " + pair_name(s, t));
  return it->second;
}

PathSystem ExplicitRouting::support() const {
  PathSystem ps;
  for (auto [s, t] : order_)
    for (const WeightedPath& wp : dist_.at({s, t}))
      if (wp.weight > 0) ps.add(s, t, wp.path);
  return ps;
}

bool ExplicitRouting::defined(int s, int t) const {
  return dist_.find({s, t}) != dist_.end();
}

Path ExplicitRouting::sample_path(int s, int t, Rng& rng) const {
  const std::vector<WeightedPath>& dist = distribution(s, t);
  double x = rng.next_double();
  double acc = 0;
  for (const WeightedPath& wp : dist) {
    acc += wp.weight;
    if (x < acc) return wp.path;
  }
  return dist.back().path;  // guard against rounding at the top end
}

std::vector<WeightedPath> ExplicitRouting::pair_distribution(int s, int t) const {
  return distribution(s, t);
}

static CongestionReport congestion_impl(const ExplicitRouting& r,
                                        const Demand& d,
                                        std::optional<double> baseline) {
  CongestionReport rep;
  rep.edge_load.assign(r.edge_count(), 0.0);
  for (const DemandEntry& e : d.entries()) {
    const std::vector<WeightedPath>& dist = r.distribution(e.s, e.t);
    for (const WeightedPath& wp : dist) {
      if (wp.weight <= 0) continue;
      rep.dilation = std::max(rep.dilation, wp.path.hops());
      for (int edge : wp.path.edge_ids())
        rep.edge_load[edge] += e.amount * wp.weight;
    }
  }
  for (double load : rep.edge_load)
    rep.max_congestion = std::max(rep.max_congestion, load);
  if (baseline) rep.ratio_vs_baseline = rep.max_congestion / *baseline;
  return rep;
}

CongestionReport congestion(const ExplicitRouting& r, const Demand& d) {
  return congestion_impl(r, d, std::nullopt);
}

CongestionReport congestion(const ExplicitRouting& r, const Demand& d,
                            double baseline_opt) {
  return congestion_impl(r, d, baseline_opt);
}

std::pair<Demand, ExplicitRouting> combine_routings(const Demand& d1,
                                                    const ExplicitRouting& r1,
                                                    const Demand& d2,
                                                    const ExplicitRouting& r2) {
  if (r1.vertex_count() != r2.vertex_count() ||
      r1.edge_count() != r2.edge_count())
    throw ValidationError("cannot combine routings over different graphs");
  for (const DemandEntry& e : d1.entries())
    if (!r1.defined(e.s, e.t))
      throw ValidationError("first routing does not cover its demand");
  for (const DemandEntry& e : d2.entries())
    if (!r2.defined(e.s, e.t))
      throw ValidationError("second routing does not cover its demand");

  Demand d = d1;
  for (const DemandEntry& e : d2.entries()) d.add(e.s, e.t, e.amount);

  ExplicitRouting out(r1.vertex_count(), r1.edge_count());
  auto identical = [](const std::vector<WeightedPath>& a,
                      const std::vector<WeightedPath>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!(a[i].path == b[i].path) || a[i].weight != b[i].weight) return false;
    return true;
  };

  std::vector<PairKey> keys = r1.pairs();
  for (PairKey key : r2.pairs())
    if (!r1.defined(key.first, key.second)) keys.push_back(key);

  for (auto [s, t] : keys) {
    bool in1 = r1.defined(s, t), in2 = r2.defined(s, t);
    if (in1 && !in2) {
      out.set_pair(s, t, r1.distribution(s, t));
      continue;
    }
    if (!in1 && in2) {
      out.set_pair(s, t, r2.distribution(s, t));
      continue;
    }
    const auto& dist1 = r1.distribution(s, t);
    const auto& dist2 = r2.distribution(s, t);
    double w1 = d1.amount(s, t), w2 = d2.amount(s, t);
    if (identical(dist1, dist2) || w1 + w2 <= 0) {
      out.set_pair(s, t, dist1);
      continue;
    }
    // Mixture weighted by the demands, merging shared paths.
    std::vector<WeightedPath> mixed = dist1;
    for (WeightedPath& wp : mixed) wp.weight *= w1 / (w1 + w2);
    for (const WeightedPath& wp : dist2) {
      bool found = false;
      for (WeightedPath& mp : mixed)
        if (mp.path == wp.path) {
          mp.weight += wp.weight * w2 / (w1 + w2);
          found = true;
          break;
        }
      if (!found) mixed.push_back({wp.path, wp.weight * w2 / (w1 + w2)});
    }
    out.set_pair(s, t, std::move(mixed));
  }
  return {std::move(d), std::move(out)};
}

BoundsCheck congestion_bounds_check(const ExplicitRouting& r, const Demand& d,
                                    const Graph& g) {
  BoundsCheck check;
  check.max_congestion = congestion(r, d).max_congestion;
  check.lower = d.size() / g.edge_count();
  check.upper = d.size();
  if (check.max_congestion < check.lower - kWeightTol) {
    check.pass = false;
    check.violated = "lower";
  } else if (check.max_congestion > check.upper + kWeightTol) {
    check.pass = false;
    check.violated = "upper";
  }
  return check;
}

std::vector<double> exact_edge_loads(const Routing& r, const Demand& d) {
  std::vector<double> load(r.edge_count(), 0.0);
  for (const DemandEntry& e : d.entries()) {
    for (const WeightedPath& wp : r.pair_distribution(e.s, e.t))
      for (int edge : wp.path.edge_ids()) load[edge] += e.amount * wp.weight;
  }
  return load;
}

MonteCarloCongestion monte_carlo_congestion(const Routing& r, const Demand& d,
                                            int trials, std::uint64_t seed) {
  if (trials < 1) throw ValidationError("monte carlo needs at least one trial");
  int m = r.edge_count();
  std::vector<double> sum(m, 0.0), sumsq(m, 0.0), load(m, 0.0);
  Rng rng(derive_seed(seed, 0x6d63));
  for (int trial = 0; trial < trials; ++trial) {
    std::fill(load.begin(), load.end(), 0.0);
    for (const DemandEntry& e : d.entries()) {
      Path p = r.sample_path(e.s, e.t, rng);
      for (int edge : p.edge_ids()) load[edge] += e.amount;
    }
    for (int e = 0; e < m; ++e) {
      sum[e] += load[e];
      sumsq[e] += load[e] * load[e];
    }
  }
  MonteCarloCongestion out;
  out.trials = trials;
  int argmax = 0;
  for (int e = 0; e < m; ++e)
    if (sum[e] > sum[argmax]) argmax = e;
  out.max_mean_load = sum[argmax] / trials;
  double var = sumsq[argmax] / trials - out.max_mean_load * out.max_mean_load;
  out.standard_error = std::sqrt(std::max(var, 0.0) / trials);
  return out;
}

ExplicitRouting load_routing(const std::string& text, const Graph& g) {
  std::istringstream in(text);
  std::string line;
  std::vector<PairKey> order;
  std::map<PairKey, std::vector<WeightedPath>> dists;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head != "path")
      throw ValidationError("expected a path line at line " +
                            std::to_string(lineno));
    int s, t;
    std::string colon;
    if (!(ls >> s >> t >> colon) || colon != ":")
      throw ValidationError("malformed path line " + std::to_string(lineno));
    std::vector<int> verts;
    double weight = -1;
    std::string tok;
    while (ls >> tok) {
      if (tok.rfind("w=", 0) == 0) {
        weight = std::stod(tok.substr(2));
        break;
      }
      verts.push_back(std::stoi(tok) - 1);
    }
    if (weight < 0)
      throw ValidationError("path line " + std::to_string(lineno) +
                            " is missing its weight");
    if (verts.empty() || verts.front() != s - 1 || verts.back() != t - 1)
      throw ValidationError("path endpoints do not match its pair at line " +
                            std::to_string(lineno));
    PairKey key{s - 1, t - 1};
    if (dists.find(key) == dists.end()) order.push_back(key);
    dists[key].push_back({Path::from_vertices(g, std::move(verts)), weight});
  }
  ExplicitRouting r(g.vertex_count(), g.edge_count());
  for (PairKey key : order)
    r.set_pair(key.first, key.second, std::move(dists[key]));
  return r;
}

std::string save_routing(const ExplicitRouting& r) {
  std::ostringstream out;
  char buf[64];
  for (auto [s, t] : r.pairs())
    for (const WeightedPath& wp : r.distribution(s, t)) {
      out << "path " << s + 1 << " " << t + 1 << " :";
      for (int v : wp.path.vertices()) out << " " << v + 1;
      std::snprintf(buf, sizeof buf, "%.17g", wp.weight);
      out << " w=" << buf << "\n";
    }
  return out.str();
}

ExplicitRouting load_routing_file(const std::string& path, const Graph& g) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open routing file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_routing(buf.str(), g);
}

void save_routing_file(const ExplicitRouting& r, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write routing file: " + path);
  out << save_routing(r);
}

}  // namespace soro
