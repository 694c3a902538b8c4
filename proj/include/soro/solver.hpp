#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "soro/demand.hpp"
#include "soro/graph.hpp"
#include "soro/path.hpp"
#include "soro/routing.hpp"
#include "soro/sampler.hpp"

namespace soro {

struct SolveResult {
  ExplicitRouting routing;
  double achieved = 0;                // max congestion of `routing` on the demand
  std::vector<double> dual_weights;   // final normalized edge weights (diagnostic)
  int iterations = 0;
};

inline constexpr int kDefaultSolverBudget = 200000;

// Distribute each pair's demand over its candidate paths so the maximum
// edge congestion is within (1 + eps) of optimal for the fixed path system.
// Multiplicative weights on edges against smoothed per-pair best responses
// (demand spread as exp(-4 (len/best - 1) / eps) over the candidates, step
// eps/4 on loads normalized by the round maximum); stops when the averaged
// flow and the best dual bound certify the ratio, throws SolverError if the
// budget runs out first. eps in (0, 1/2].
SolveResult min_congestion_fractional(const PathSystem& p, const Demand& d,
                                      const Graph& g, double eps,
                                      int max_iterations = kDefaultSolverBudget);

// Same game over all simple paths: columns are generated lazily by shortest
// path pricing under the current edge weights, so only paths an optimal
// solution could use are ever materialized.
SolveResult optimal_fractional_congestion(const Graph& g, const Demand& d,
                                          double eps,
                                          int max_iterations = kDefaultSolverBudget);

struct IntegralOpt {
  int congestion = 0;
  ExplicitRouting routing;
};

// Exact optimum over routings that split each d(s,t) into whole units on
// simple paths. Exhaustive assignment with branch-and-bound on the running
// maximum, expanding pairs lexicographically and paths by index (so ties
// resolve to the lexicographically first assignment). Requires integral d
// and product over pairs of (simple path count)^d(s,t) at most 10^7.
IntegralOpt optimal_integral_congestion(const Graph& g, const Demand& d);

struct WeakRouteResult {
  Demand subdemand;          // d' = what survived, pairwise <= d
  ExplicitRouting routing;   // defined exactly on supp(d')
  double deleted_mass = 0;   // size(d) - size(d')
  std::vector<int> cut_edges;
};

// One pass of the greedy edge-cutting process: start from the sampled draw
// multiplicities as path weights (scaled so each pair carries d(s,t)), walk
// the edges in graph order, and zero every path through an edge whose
// current load exceeds gamma. The survivors form a routing of d' with
// congestion at most gamma.
WeakRouteResult greedy_cut_weak_route(const Graph& g, const SampledSystem& sample,
                                      const Demand& d, double gamma);

// Weak router: routes at least half of any sub-demand's mass, never more
// than the pair's demand.
using WeakRouter = std::function<WeakRouteResult(const Demand&)>;

struct WeakToStrongResult {
  Demand routed;             // equals the input demand on success
  ExplicitRouting routing;
  int rounds = 0;            // weak calls, plus one if the residual was used
};

// Drives a weak router to a routing of all of d: pairs that kept at least a
// quarter of their demand are routed in full on that round's routing, the
// rest are retried; once at most size(d)/m remains, each leftover pair rides
// the first path of p. At most ceil(log_{3/2} m) weak rounds are needed.
// Throws ValidationError if the weak router breaks its contract.
WeakToStrongResult weak_to_strong(const PathSystem& p, const Demand& d,
                                  const Graph& g, const WeakRouter& weak);

// Router for special demands: given a demand whose entries are the pair
// draw budgets, produce an explicit routing covering its support.
using SpecialRouter = std::function<ExplicitRouting(const Demand&)>;

struct BucketRouteResult {
  ExplicitRouting routing;
  int buckets_used = 0;
  int max_buckets = 0;  // 2 * (ceil(log2(n^2 m)) + 1)
};

// Routes an arbitrary demand with entries in {0} and [1, n^2 m] by splitting
// the pairs into at most 2l dyadic buckets of d(s,t) / (alpha + cut(s,t)),
// routing each bucket with the special router on its dominating special
// demand, and merging demand-weighted. Edge loads of the result are exactly
// the sums of the per-bucket loads.
BucketRouteResult special_bucket_route(const Demand& d, const Graph& g,
                                       int alpha, const SpecialRouter& special);

struct RoundResult {
  ExplicitRouting routing;  // integral on d: every weight times d(s,t) is whole
  double achieved = 0;
  int retries = 0;          // index of the successful attempt
};

// Samples d(s,t) paths per pair from r and keeps the empirical distribution
// if its congestion is at most 2 * cong(r, d) + 3 ln m, retrying with fresh
// randomness otherwise. Throws SolverError when max_retries attempts fail.
RoundResult randomized_round(const ExplicitRouting& r, const Demand& d,
                             int max_retries, std::uint64_t seed);

}  // namespace soro
