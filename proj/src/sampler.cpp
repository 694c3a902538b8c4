#include "soro/sampler.hpp"

#include <sstream>

#include "soro/errors.hpp"
#include "soro/rng.hpp"

namespace soro {

int SampledSystem::draws(int s, int t) const {
  auto it = multiplicities.find({s, t});
  if (it == multiplicities.end())
    throw ValidationError("no multiplicities for pair (" +
                          std::to_string(s + 1) + ", " + std::to_string(t + 1) +
                          ")");
  int total = 0;
  for (int c : it->second) total += c;
  return total;
}

namespace {

// draws_for(s, t) decides the per-pair budget; everything else is shared
// between the plain and the cut-augmented sampler.
template <typename DrawCount>
SampledSystem sample_impl(const Routing& r, std::uint64_t seed,
                          DrawCount draws_for) {
  SampledSystem out;
  int n = r.vertex_count();
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      if (s == t) continue;
      if (!r.defined(s, t))
        throw ValidationError("cannot sample: routing leaves pair (" +
                              std::to_string(s + 1) + ", " +
                              std::to_string(t + 1) + ") undefined");
      int budget = draws_for(s, t);
      Rng rng(derive_seed(seed, static_cast<std::uint64_t>(s),
                          static_cast<std::uint64_t>(t)));
      std::vector<int>& counts = out.multiplicities[{s, t}];
      for (int i = 0; i < budget; ++i) {
        Path p = r.sample_path(s, t, rng);
        int idx = -1;
        if (out.paths.has_pair(s, t)) {
          const std::vector<Path>& have = out.paths.paths(s, t);
          for (int j = 0; j < static_cast<int>(have.size()); ++j)
            if (have[j] == p) {
              idx = j;
              break;
            }
        }
        if (idx < 0) {
          out.paths.add(s, t, std::move(p));
          idx = static_cast<int>(counts.size());
          counts.push_back(0);
        }
        ++counts[idx];
      }
    }
  return out;
}

}  // namespace

SampledSystem alpha_sample_counts(const Routing& r, int alpha,
                                  std::uint64_t seed) {
  if (alpha < 1) throw ValidationError("alpha must be at least 1");
  return sample_impl(r, seed, [alpha](int, int) { return alpha; });
}

PathSystem alpha_sample(const Routing& r, int alpha, std::uint64_t seed) {
  return alpha_sample_counts(r, alpha, seed).paths;
}

SampledSystem alpha_plus_cut_sample_counts(const Routing& r, const Graph& g,
                                           int alpha, std::uint64_t seed) {
  if (alpha < 1) throw ValidationError("alpha must be at least 1");
  if (g.vertex_count() != r.vertex_count() || g.edge_count() != r.edge_count())
    throw ValidationError("graph does not match the routing");
  return sample_impl(
      r, seed, [&g, alpha](int s, int t) { return alpha + min_cut(g, s, t); });
}

PathSystem alpha_plus_cut_sample(const Routing& r, const Graph& g, int alpha,
                                 std::uint64_t seed) {
  return alpha_plus_cut_sample_counts(r, g, alpha, seed).paths;
}

std::string save_multiplicities(const SampledSystem& s) {
  std::ostringstream out;
  for (auto [a, b] : s.paths.pairs()) {
    const std::vector<int>& counts = s.multiplicities.at({a, b});
    for (int i = 0; i < static_cast<int>(counts.size()); ++i)
      out << "mult " << a + 1 << " " << b + 1 << " " << i << " " << counts[i]
          << "\n";
  }
  return out.str();
}

SampledSystem attach_multiplicities(PathSystem paths, const std::string& text) {
  SampledSystem out;
  out.paths = std::move(paths);
  for (auto [s, t] : out.paths.pairs())
    out.multiplicities[{s, t}].assign(out.paths.paths(s, t).size(), 0);
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    int s, t, idx, count;
    if (head != "mult" || !(ls >> s >> t >> idx >> count) || count < 1)
      throw ValidationError("malformed multiplicity line " +
                            std::to_string(lineno));
    auto it = out.multiplicities.find({s - 1, t - 1});
    if (it == out.multiplicities.end() || idx < 0 ||
        idx >= static_cast<int>(it->second.size()))
      throw ValidationError("multiplicity line " + std::to_string(lineno) +
                            " does not match the path system");
    it->second[idx] = count;
  }
  for (auto& [key, counts] : out.multiplicities)
    for (int c : counts)
      if (c == 0)
        throw ValidationError("path without a positive multiplicity for pair (" +
                              std::to_string(key.first + 1) + ", " +
                              std::to_string(key.second + 1) + ")");
  return out;
}

}  // namespace soro
