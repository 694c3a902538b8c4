#pragma once

// Shorthand constructors for tests.

#include <initializer_list>
#include <vector>

#include "soro/path.hpp"
#include "soro/routing.hpp"

namespace soro::testing {

inline Path make_path(const Graph& g, std::initializer_list<int> verts) {
  return Path::from_vertices(g, std::vector<int>(verts));
}

// Routing that puts all weight on one path per pair.
inline ExplicitRouting single_path_routing(
    const Graph& g, const std::vector<std::vector<int>>& paths) {
  ExplicitRouting r(g.vertex_count(), g.edge_count());
  for (const auto& verts : paths) {
    Path p = Path::from_vertices(g, verts);
    r.set_pair(p.source(), p.target(), {{p, 1.0}});
  }
  return r;
}

// Even split over the given vertex sequences, all for one pair.
inline ExplicitRouting even_split_routing(
    const Graph& g, const std::vector<std::vector<int>>& paths) {
  ExplicitRouting r(g.vertex_count(), g.edge_count());
  std::vector<WeightedPath> dist;
  for (const auto& verts : paths)
    dist.push_back({Path::from_vertices(g, verts), 1.0 / paths.size()});
  int s = dist.front().path.source();
  int t = dist.front().path.target();
  r.set_pair(s, t, std::move(dist));
  return r;
}

}  // namespace soro::testing
