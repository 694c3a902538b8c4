#include "soro/lower_bound.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "soro/errors.hpp"
#include "soro/routing.hpp"
#include "soro/solver.hpp"

namespace soro {

namespace {

constexpr double kAttackEps = 0.05;

std::string pair_name(int s, int t) {
  return "(" + std::to_string(s + 1) + ", " + std::to_string(t + 1) + ")";
}

// Largest k with k^(2 alpha) <= n, i.e. floor(n^(1/(2 alpha))): the middle
// count at which pigeonhole counting stops guaranteeing a concentrated set.
int expected_k(int n, int alpha) {
  int k = 1;
  while (true) {
    long long pow = 1;
    bool over = false;
    for (int i = 0; i < 2 * alpha && !over; ++i) {
      pow *= (k + 1);
      if (pow > n) over = true;
    }
    if (over) return k;
    ++k;
  }
}

}  // namespace

std::map<PairKey, std::vector<int>> hitting_sets(const PathSystem& p,
                                                 const Graph& g, int alpha,
                                                 int copy) {
  if (alpha < 1) throw ValidationError("alpha must be at least 1");
  GadgetRoles roles = gadget_roles(g, copy);
  std::set<int> middle_set(roles.middles.begin(), roles.middles.end());
  const int target_size = std::min<int>(alpha, int(roles.middles.size()));

  std::map<PairKey, std::vector<int>> out;
  for (int s : roles.left_leaves) {
    for (int t : roles.right_leaves) {
      if (!p.has_pair(s, t)) {
        throw ValidationError("system does not cover leaf pair " + pair_name(s, t));
      }
      const std::vector<Path>& paths = p.paths(s, t);
      if (int(paths.size()) > alpha) {
        throw ValidationError("pair " + pair_name(s, t) + " stores " +
                              std::to_string(paths.size()) +
                              " paths, more than alpha = " + std::to_string(alpha));
      }
      std::vector<int> f;
      for (const Path& path : paths) {
        int first_middle = -1;
        for (int v : path.vertices()) {
          if (middle_set.count(v)) {
            first_middle = v;
            break;
          }
        }
        if (first_middle < 0) {
          throw ValidationError("a stored path for " + pair_name(s, t) +
                                " avoids every middle vertex");
        }
        if (std::find(f.begin(), f.end(), first_middle) == f.end()) {
          f.push_back(first_middle);
        }
      }
      // Pad with the smallest-index unused middles; middles are in vertex
      // order already.
      for (int mid : roles.middles) {
        if (int(f.size()) >= target_size) break;
        if (std::find(f.begin(), f.end(), mid) == f.end()) f.push_back(mid);
      }
      std::sort(f.begin(), f.end());
      out.emplace(PairKey{s, t}, std::move(f));
    }
  }
  return out;
}

AttackCertificate adversarial_demand(const PathSystem& p, const Graph& g,
                                     int alpha, int copy) {
  GadgetRoles roles = gadget_roles(g, copy);
  const int k = int(roles.middles.size());
  const int n_leaves = int(roles.left_leaves.size());

  AttackCertificate cert;
  cert.alpha = alpha;
  cert.k = k;
  cert.copy = copy;
  cert.claimed_ratio = double(k) / alpha;

  int pigeonhole_k = expected_k(n_leaves, alpha);
  if (pigeonhole_k != k) {
    cert.warnings.push_back(
        "gadget has k = " + std::to_string(k) + " but pigeonhole counting expects k = " +
        std::to_string(pigeonhole_k) + " for n = " + std::to_string(n_leaves) +
        ", alpha = " + std::to_string(alpha));
  }

  std::map<PairKey, std::vector<int>> f = hitting_sets(p, g, alpha, copy);

  // f(s): the most frequent f(s, t), ties to the lexicographically smallest.
  std::map<int, std::vector<int>> f_of_s;
  for (int s : roles.left_leaves) {
    std::map<std::vector<int>, int> freq;
    for (int t : roles.right_leaves) ++freq[f.at({s, t})];
    const std::vector<int>* best = nullptr;
    int best_count = 0;
    for (const auto& [set, count] : freq) {
      if (count > best_count) {  // map order makes ties lexicographic
        best = &set;
        best_count = count;
      }
    }
    f_of_s.emplace(s, *best);
  }

  // S': the most frequent f(s), same tie-break.
  std::map<std::vector<int>, int> s_freq;
  for (const auto& [s, set] : f_of_s) ++s_freq[set];
  const std::vector<int>* best_set = nullptr;
  int best_count = 0;
  for (const auto& [set, count] : s_freq) {
    if (count > best_count) {
      best_set = &set;
      best_count = count;
    }
  }
  cert.hitting_set = *best_set;

  std::vector<int> candidates;  // left leaves with f(s) = S', vertex order
  for (int s : roles.left_leaves) {
    if (f_of_s.at(s) == cert.hitting_set) candidates.push_back(s);
  }
  if (int(candidates.size()) < k) {
    throw ValidationError(
        "pigeonhole failed: only " + std::to_string(candidates.size()) +
        " of " + std::to_string(n_leaves) + " left leaves share the densest "
        "hitting set (need " + std::to_string(k) + "); distinct sets: " +
        std::to_string(s_freq.size()));
  }
  candidates.resize(k);  // the k smallest such leaves

  // Kuhn's augmenting-path matching of candidates into right leaves over
  // pairs with f(s,t) = S'.
  std::map<int, std::vector<int>> adj;
  for (int s : candidates) {
    for (int t : roles.right_leaves) {
      if (f.at({s, t}) == cert.hitting_set) adj[s].push_back(t);
    }
  }
  std::map<int, int> matched_to;  // right leaf -> left leaf
  auto try_augment = [&](auto&& self, int s, std::set<int>& visited) -> bool {
    for (int t : adj[s]) {
      if (visited.count(t)) continue;
      visited.insert(t);
      auto it = matched_to.find(t);
      if (it == matched_to.end() || self(self, it->second, visited)) {
        matched_to[t] = s;
        return true;
      }
    }
    return false;
  };
  for (int s : candidates) {
    std::set<int> visited;
    if (!try_augment(try_augment, s, visited)) {
      throw ValidationError(
          "bipartite matching incomplete at leaf " + std::to_string(s + 1) +
          ": the sampled system does not concentrate enough for a full matching "
          "(candidates " + std::to_string(candidates.size()) + ", hitting set size " +
          std::to_string(cert.hitting_set.size()) + ")");
    }
  }
  std::map<int, int> match_of_s;  // order by left leaf for determinism
  for (const auto& [t, s] : matched_to) match_of_s[s] = t;
  for (const auto& [s, t] : match_of_s) {
    cert.matching.push_back({s, t});
    cert.demand.set(s, t, 1.0);
  }

  // opt_Z(d) = 1 exactly: the disjoint star-middle-star witness has max load
  // 1, and each matched source leaf pushes its whole unit across a single
  // star edge, so no routing does better.
  ExplicitRouting witness(g.vertex_count(), g.edge_count());
  for (int i = 0; i < k; ++i) {
    auto [ws, wt] = cert.matching[i];
    Path route = Path::from_vertices(
        g, {ws, roles.left_center, roles.middles[i], roles.right_center, wt});
    witness.set_pair(ws, wt, {{route, 1.0}});
  }
  double opt = 0;
  for (double l : exact_edge_loads(witness, cert.demand)) opt = std::max(opt, l);
  double achieved = min_congestion_fractional(p, cert.demand, g, kAttackEps).achieved;
  cert.verified_ratio = achieved / opt;
  return cert;
}

CertificateCheck verify_certificate(const AttackCertificate& cert,
                                    const PathSystem& p, const Graph& g,
                                    double eps) {
  auto fail = [](std::string why) { return CertificateCheck{false, std::move(why)}; };

  GadgetRoles roles;
  try {
    roles = gadget_roles(g, cert.copy);
  } catch (const ValidationError& e) {
    return fail(std::string("gadget roles: ") + e.what());
  }

  if (cert.alpha < 1 || cert.k < 1) return fail("alpha and k must be positive");
  if (std::abs(cert.claimed_ratio - double(cert.k) / cert.alpha) > 1e-12) {
    return fail("claimed ratio is not k / alpha");
  }

  DemandClass cls = classify(cert.demand, g, cert.alpha);
  if (!cls.permutation) return fail("demand is not a permutation demand");
  if (cert.demand.support_size() != cert.k) return fail("demand size is not k");

  if (int(cert.matching.size()) != cert.k) return fail("matching does not have k pairs");
  std::set<int> seen_s, seen_t;
  std::set<int> left(roles.left_leaves.begin(), roles.left_leaves.end());
  std::set<int> right(roles.right_leaves.begin(), roles.right_leaves.end());
  std::set<int> middles(roles.middles.begin(), roles.middles.end());
  for (const auto& [s, t] : cert.matching) {
    if (!seen_s.insert(s).second || !seen_t.insert(t).second) {
      return fail("matching repeats a leaf");
    }
    if (!left.count(s) || !right.count(t)) {
      return fail("matching endpoints are not left/right leaves");
    }
    if (std::abs(cert.demand.amount(s, t) - 1.0) > 1e-12) {
      return fail("demand does not carry one unit on a matched pair");
    }
  }

  std::size_t expected_size = std::min<std::size_t>(cert.alpha, roles.middles.size());
  if (cert.hitting_set.size() != expected_size ||
      !std::is_sorted(cert.hitting_set.begin(), cert.hitting_set.end())) {
    return fail("hitting set is not a sorted set of min(alpha, k) vertices");
  }
  std::set<int> sprime;
  for (int v : cert.hitting_set) {
    if (!middles.count(v)) return fail("hitting set contains a non-middle vertex");
    if (!sprime.insert(v).second) return fail("hitting set repeats a vertex");
  }

  for (const auto& [s, t] : cert.matching) {
    if (!p.has_pair(s, t)) return fail("system does not cover matched pair");
    for (const Path& path : p.paths(s, t)) {
      bool hits = false;
      for (int v : path.vertices()) {
        if (sprime.count(v)) {
          hits = true;
          break;
        }
      }
      if (!hits) return fail("a stored path for a matched pair avoids the hitting set");
    }
  }

  // Integral optimum is exactly 1: route the i-th matched pair through the
  // i-th middle (disjoint stars on both sides force at least 1 regardless).
  if (cert.k > int(roles.middles.size())) return fail("k exceeds the middle count");
  try {
    ExplicitRouting witness(g.vertex_count(), g.edge_count());
    for (int i = 0; i < cert.k; ++i) {
      auto [s, t] = cert.matching[i];
      Path route = Path::from_vertices(
          g, {s, roles.left_center, roles.middles[i], roles.right_center, t});
      witness.set_pair(s, t, {{route, 1.0}});
    }
    double worst = 0;
    for (double l : exact_edge_loads(witness, cert.demand)) {
      worst = std::max(worst, l);
    }
    if (std::abs(worst - 1.0) > 1e-9) {
      return fail("disjoint witness routing does not achieve congestion 1");
    }
  } catch (const ValidationError& e) {
    return fail(std::string("disjoint witness routing: ") + e.what());
  }

  double achieved;
  try {
    achieved = min_congestion_fractional(p, cert.demand, g, eps).achieved;
  } catch (const std::exception& e) {
    return fail(std::string("adaptive congestion solve: ") + e.what());
  }
  if (achieved < (1 - eps) * cert.claimed_ratio - 1e-9) {
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "adaptive congestion %.6g is below (1-eps) * %.6g", achieved,
                  cert.claimed_ratio);
    return fail(buf);
  }
  return {true, ""};
}

std::string save_certificate(const AttackCertificate& cert) {
  std::ostringstream out;
  char buf[64];
  out << "certificate\n";
  out << "copy " << cert.copy << "\n";
  out << "alpha " << cert.alpha << "\n";
  out << "k " << cert.k << "\n";
  std::snprintf(buf, sizeof buf, "%.17g", cert.claimed_ratio);
  out << "claimed_ratio " << buf << "\n";
  std::snprintf(buf, sizeof buf, "%.17g", cert.verified_ratio);
  out << "verified_ratio " << buf << "\n";
  out << "hitting_set";
  for (int v : cert.hitting_set) out << " " << v + 1;
  out << "\n";
  for (const auto& [s, t] : cert.matching) {
    out << "match " << s + 1 << " " << t + 1 << "\n";
  }
  for (const std::string& w : cert.warnings) out << "warning " << w << "\n";
  return out.str();
}

AttackCertificate load_certificate(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "certificate") {
    throw ValidationError("certificate file must start with 'certificate'");
  }
  AttackCertificate cert;
  bool have_hitting = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (head == "copy") {
      if (!(ls >> cert.copy)) throw ValidationError("malformed copy line");
    } else if (head == "alpha") {
      if (!(ls >> cert.alpha)) throw ValidationError("malformed alpha line");
    } else if (head == "k") {
      if (!(ls >> cert.k)) throw ValidationError("malformed k line");
    } else if (head == "claimed_ratio") {
      if (!(ls >> cert.claimed_ratio)) throw ValidationError("malformed claimed_ratio line");
    } else if (head == "verified_ratio") {
      if (!(ls >> cert.verified_ratio)) throw ValidationError("malformed verified_ratio line");
    } else if (head == "hitting_set") {
      int v;
      while (ls >> v) cert.hitting_set.push_back(v - 1);
      have_hitting = true;
    } else if (head == "match") {
      int s, t;
      if (!(ls >> s >> t)) throw ValidationError("malformed match line");
      cert.matching.push_back({s - 1, t - 1});
      cert.demand.set(s - 1, t - 1, 1.0);
    } else if (head == "warning") {
      std::string rest;
      std::getline(ls, rest);
      if (!rest.empty() && rest.front() == ' ') rest.erase(rest.begin());
      cert.warnings.push_back(rest);
    } else {
      throw ValidationError("unknown certificate line: " + head);
    }
  }
  if (!have_hitting || cert.matching.empty()) {
    throw ValidationError("certificate is missing its hitting set or matching");
  }
  return cert;
}

AttackCertificate load_certificate_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open certificate file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_certificate(buf.str());
}

void save_certificate_file(const AttackCertificate& cert, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open certificate file for writing: " + path);
  out << save_certificate(cert);
}

}  // namespace soro
