#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "soro/graph.hpp"
#include "soro/path.hpp"
#include "soro/routing.hpp"

namespace soro {

// A sampled path system together with the with-replacement draw
// multiplicities that produced it; counts align with the per-pair path
// order and sum to the pair's draw budget.
struct SampledSystem {
  PathSystem paths;
  std::map<PairKey, std::vector<int>> multiplicities;

  int draws(int s, int t) const;  // total draws made for the pair
};

// alpha independent draws from r for every ordered pair of distinct
// vertices, deduplicated into a set. Each pair's stream is seeded with
// derive_seed(seed, s, t): pairs are mutually independent and the whole
// result is reproducible bytewise from (r, alpha, seed).
SampledSystem alpha_sample_counts(const Routing& r, int alpha,
                                  std::uint64_t seed);
PathSystem alpha_sample(const Routing& r, int alpha, std::uint64_t seed);

// Same, with alpha + min_cut(g, s, t) draws per pair.
SampledSystem alpha_plus_cut_sample_counts(const Routing& r, const Graph& g,
                                           int alpha, std::uint64_t seed);
PathSystem alpha_plus_cut_sample(const Routing& r, const Graph& g, int alpha,
                                 std::uint64_t seed);

// Sidecar text format for multiplicities: one line per stored path,
// "mult <s> <t> <path-index> <count>", 1-based pair, 0-based index aligned
// with the path file's per-pair order.
std::string save_multiplicities(const SampledSystem& s);
SampledSystem attach_multiplicities(PathSystem paths, const std::string& text);

}  // namespace soro
