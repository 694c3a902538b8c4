#include "soro/path.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "soro/errors.hpp"

namespace soro {

Path Path::from_vertices(const Graph& g, std::vector<int> vertices) {
  if (vertices.size() < 2)
    throw ValidationError("a path needs at least two vertices");
  Path p;
  p.edge_ids_.reserve(vertices.size() - 1);
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    std::vector<int> ids = g.edge_ids(vertices[i], vertices[i + 1]);
    if (ids.empty())
      throw ValidationError("path uses a non-edge " +
                            std::to_string(vertices[i] + 1) + "-" +
                            std::to_string(vertices[i + 1] + 1));
    p.edge_ids_.push_back(ids.front());
  }
  p.vertices_ = std::move(vertices);
  std::set<int> uniq(p.vertices_.begin(), p.vertices_.end());
  if (uniq.size() != p.vertices_.size())
    throw ValidationError("path revisits a vertex");
  return p;
}

Path Path::from_edges(const Graph& g, int source, std::vector<int> edge_ids) {
  if (edge_ids.empty()) throw ValidationError("a path needs at least one edge");
  Path p;
  p.vertices_.push_back(source);
  int at = source;
  for (int e : edge_ids) {
    if (e < 0 || e >= g.edge_count())
      throw ValidationError("path edge id out of range");
    auto [u, v] = g.edge(e);
    if (u == at)
      at = v;
    else if (v == at)
      at = u;
    else
      throw ValidationError("path edges do not chain");
    p.vertices_.push_back(at);
  }
  p.edge_ids_ = std::move(edge_ids);
  std::set<int> uniq(p.vertices_.begin(), p.vertices_.end());
  if (uniq.size() != p.vertices_.size())
    throw ValidationError("path revisits a vertex");
  return p;
}

bool Path::uses_edge(int e) const {
  return std::find(edge_ids_.begin(), edge_ids_.end(), e) != edge_ids_.end();
}

bool PathSystem::add(int s, int t, Path p) {
  if (s == t) throw ValidationError("path system pairs need s != t");
  if (p.source() != s || p.target() != t)
    throw ValidationError("path endpoints do not match its pair");
  auto it = sets_.find({s, t});
  if (it == sets_.end()) {
    order_.push_back({s, t});
    sets_[{s, t}].push_back(std::move(p));
    return true;
  }
  for (const Path& q : it->second)
    if (q == p) return false;
  it->second.push_back(std::move(p));
  return true;
}

bool PathSystem::has_pair(int s, int t) const {
  return sets_.find({s, t}) != sets_.end();
}

const std::vector<Path>& PathSystem::paths(int s, int t) const {
  auto it = sets_.find({s, t});
  if (it == sets_.end())
    throw ValidationError("path system has no pair (" + std::to_string(s + 1) +
                          ", " + std::to_string(t + 1) + ")");
  return it->second;
}

int PathSystem::sparsity() const {
  int widest = 0;
  for (const auto& [key, set] : sets_)
    widest = std::max(widest, static_cast<int>(set.size()));
  return widest;
}

bool PathSystem::alpha_sparse(int alpha) const { return sparsity() <= alpha; }

bool PathSystem::alpha_plus_cut_sparse(int alpha, const Graph& g) const {
  for (const auto& [key, set] : sets_)
    if (static_cast<int>(set.size()) > alpha + min_cut(g, key.first, key.second))
      return false;
  return true;
}

PathSystem load_path_system(const std::string& text, const Graph& g) {
  std::istringstream in(text);
  std::string line;
  PathSystem ps;
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
    int v;
    while (ls >> v) {
      if (v < 1 || v > g.vertex_count())
        throw ValidationError("path vertex out of range at line " +
                              std::to_string(lineno));
      verts.push_back(v - 1);
    }
    if (verts.empty() || verts.front() != s - 1 || verts.back() != t - 1)
      throw ValidationError("path endpoints do not match its pair at line " +
                            std::to_string(lineno));
    ps.add(s - 1, t - 1, Path::from_vertices(g, std::move(verts)));
  }
  return ps;
}

std::string save_path_system(const PathSystem& ps) {
  std::ostringstream out;
  for (auto [s, t] : ps.pairs())
    for (const Path& p : ps.paths(s, t)) {
      out << "path " << s + 1 << " " << t + 1 << " :";
      for (int v : p.vertices()) out << " " << v + 1;
      out << "\n";
    }
  return out.str();
}

PathSystem load_path_system_file(const std::string& path, const Graph& g) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open path file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_path_system(buf.str(), g);
}

void save_path_system_file(const PathSystem& ps, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write path file: " + path);
  out << save_path_system(ps);
}

namespace {

bool dfs_paths(const Graph& g, int at, int t, std::vector<int>& verts,
               std::vector<int>& edges, std::vector<char>& on_path,
               const std::function<bool(const Path&)>& fn) {
  if (at == t) {
    return fn(Path::from_edges(g, verts.front(), edges));
  }
  for (auto [u, e] : g.neighbors(at)) {
    if (on_path[u]) continue;
    on_path[u] = 1;
    verts.push_back(u);
    edges.push_back(e);
    bool keep_going = dfs_paths(g, u, t, verts, edges, on_path, fn);
    edges.pop_back();
    verts.pop_back();
    on_path[u] = 0;
    if (!keep_going) return false;
  }
  return true;
}

}  // namespace

bool for_each_simple_path(const Graph& g, int s, int t,
                          const std::function<bool(const Path&)>& fn) {
  if (s == t) throw ValidationError("simple path enumeration needs s != t");
  std::vector<int> verts{s}, edges;
  std::vector<char> on_path(g.vertex_count(), 0);
  on_path[s] = 1;
  return dfs_paths(g, s, t, verts, edges, on_path, fn);
}

std::vector<Path> all_simple_paths(const Graph& g, int s, int t,
                                   std::size_t cap) {
  std::vector<Path> out;
  bool done = for_each_simple_path(g, s, t, [&](const Path& p) {
    if (out.size() >= cap) return false;
    out.push_back(p);
    return true;
  });
  if (!done)
    throw ValidationError("simple path count exceeds cap of " +
                          std::to_string(cap));
  return out;
}

}  // namespace soro
