#include "soro/sampler.hpp"

#include <cmath>
#include <memory>

#include "doctest.h"
#include "soro/errors.hpp"
#include "soro/oblivious.hpp"
#include "support/builders.hpp"

using namespace soro;

namespace {

std::shared_ptr<const Graph> cube(int dim) {
  return std::make_shared<const Graph>(hypercube(dim));
}

// Explicit routing on the 2-vertex line covering both ordered pairs.
ExplicitRouting line_routing(const Graph& line) {
  ExplicitRouting r(2, 1);
  r.set_pair(0, 1, {{Path::from_vertices(line, {0, 1}), 1.0}});
  r.set_pair(1, 0, {{Path::from_vertices(line, {1, 0}), 1.0}});
  return r;
}

}  // namespace

TEST_CASE("sampling a single-path routing returns that path for any alpha") {
  Graph line = load_graph("graph 2 1\n1 2\n");
  ExplicitRouting r = line_routing(line);
  for (int alpha : {1, 3, 7}) {
    SampledSystem s = alpha_sample_counts(r, alpha, 99);
    CHECK(s.paths.pair_count() == 2);
    REQUIRE(s.paths.paths(0, 1).size() == 1);
    CHECK(s.paths.paths(0, 1)[0].vertices() == std::vector<int>{0, 1});
    CHECK(s.multiplicities.at({0, 1}) == std::vector<int>{alpha});
    CHECK(s.draws(0, 1) == alpha);
  }
}

TEST_CASE("alpha = 1 yields a 1-sparse system over all ordered pairs") {
  ValiantRouting r(cube(3));
  PathSystem ps = alpha_sample(r, 1, 4242);
  CHECK(ps.pair_count() == 8 * 7);
  CHECK(ps.sparsity() == 1);
  CHECK(ps.alpha_sparse(1));
}

TEST_CASE("alpha-sampling respects the sparsity bound for every pair and seed") {
  ValiantRouting r(cube(3));
  for (std::uint64_t seed : {1ull, 2ull, 3ull, 55ull, 1234567ull}) {
    SampledSystem s = alpha_sample_counts(r, 4, seed);
    CHECK(s.paths.pair_count() == 56);
    CHECK(s.paths.alpha_sparse(4));
    for (auto [a, b] : s.paths.pairs()) {
      CHECK(s.paths.paths(a, b).size() >= 1);
      CHECK(s.draws(a, b) == 4);  // multiplicities account for every draw
    }
  }
}

TEST_CASE("alpha-sampling is reproducible bytewise") {
  ValiantRouting r(cube(3));
  SampledSystem a = alpha_sample_counts(r, 4, 2025);
  SampledSystem b = alpha_sample_counts(r, 4, 2025);
  CHECK(save_path_system(a.paths) == save_path_system(b.paths));
  CHECK(save_multiplicities(a) == save_multiplicities(b));
  SampledSystem c = alpha_sample_counts(r, 4, 2026);
  CHECK(save_path_system(a.paths) != save_path_system(c.paths));
}

TEST_CASE("different seeds draw independently") {
  // Sum of per-pair overlaps between two seeds, compared to the exact
  // expectation under independence; the variance bound treats paths as
  // independent which is conservative for these negatively associated
  // indicators.
  ValiantRouting r(cube(5));
  const int alpha = 2;
  SampledSystem s1 = alpha_sample_counts(r, alpha, 101);
  SampledSystem s2 = alpha_sample_counts(r, alpha, 202);
  double observed = 0, expected = 0, variance = 0;
  for (auto [s, t] : s1.paths.pairs()) {
    for (const Path& p : s1.paths.paths(s, t))
      for (const Path& q : s2.paths.paths(s, t))
        if (p == q) observed += 1;
    for (const WeightedPath& wp : r.pair_distribution(s, t)) {
      double hit = 1.0 - std::pow(1.0 - wp.weight, alpha);
      expected += hit * hit;
      variance += hit * hit * (1.0 - hit * hit);
    }
  }
  CHECK(std::abs(observed - expected) <= 3.0 * std::sqrt(variance));
}

TEST_CASE("cut-augmented sampling draws alpha + cut times") {
  // On a tree every cut is 1 and the sampled set is a singleton.
  Graph line = load_graph("graph 2 1\n1 2\n");
  ExplicitRouting r = line_routing(line);
  for (int alpha : {1, 2, 5}) {
    SampledSystem s = alpha_plus_cut_sample_counts(r, line, alpha, 7);
    CHECK(s.draws(0, 1) == alpha + 1);
    CHECK(s.paths.paths(0, 1).size() == 1);
    CHECK(s.paths.alpha_plus_cut_sparse(alpha, line));
  }

  // gadget_c(4,2): cut(v1, v2) = 2, so alpha = 2 makes 4 draws.
  auto g = std::make_shared<const Graph>(gadget_c(4, 2));
  GadgetRoles roles = gadget_roles(*g);
  ShortestPathUniformRouting sp(g);
  SampledSystem s = alpha_plus_cut_sample_counts(sp, *g, 2, 11);
  CHECK(s.draws(roles.left_center, roles.right_center) == 4);
  CHECK(s.paths.alpha_plus_cut_sparse(2, *g));

  // Two triangles joined by a perfect matching: cross cut is 3.
  auto two = std::make_shared<const Graph>(load_graph(
      "graph 6 9\n1 2\n1 3\n2 3\n4 5\n4 6\n5 6\n1 4\n2 5\n3 6\n"));
  ShortestPathUniformRouting sp2(two);
  SampledSystem cross = alpha_plus_cut_sample_counts(sp2, *two, 1, 13);
  CHECK(min_cut(*two, 0, 3) == 3);
  CHECK(cross.draws(0, 3) == 1 + 3);
}

TEST_CASE("sampled paths come from the routing's support") {
  ValiantRouting r(cube(3));
  SampledSystem s = alpha_sample_counts(r, 3, 31337);
  Rng pick(5);
  for (int rep = 0; rep < 10; ++rep) {
    auto [a, b] = s.paths.pairs()[pick.next_below(s.paths.pairs().size())];
    auto dist = r.pair_distribution(a, b);
    for (const Path& p : s.paths.paths(a, b)) {
      bool found = false;
      for (const WeightedPath& wp : dist)
        if (wp.path == p) found = true;
      CHECK(found);
    }
  }
}

TEST_CASE("sampling an incomplete explicit routing fails") {
  Graph line = load_graph("graph 3 2\n1 2\n2 3\n");
  ExplicitRouting r(3, 2);
  r.set_pair(0, 1, {{Path::from_vertices(line, {0, 1}), 1.0}});
  CHECK_THROWS_AS(alpha_sample(r, 1, 5), ValidationError);
  ValiantRouting v(cube(2));
  CHECK_THROWS_AS(alpha_sample(v, 0, 5), ValidationError);
}

TEST_CASE("multiplicity sidecars round-trip") {
  ValiantRouting r(cube(2));
  SampledSystem s = alpha_sample_counts(r, 3, 77);
  std::string paths_text = save_path_system(s.paths);
  std::string mult_text = save_multiplicities(s);

  Graph g = hypercube(2);
  SampledSystem back =
      attach_multiplicities(load_path_system(paths_text, g), mult_text);
  CHECK(save_path_system(back.paths) == paths_text);
  CHECK(save_multiplicities(back) == mult_text);
  for (auto [a, b] : back.paths.pairs()) CHECK(back.draws(a, b) == 3);

  CHECK_THROWS_AS(attach_multiplicities(back.paths, "mult 1 2 9 1\n"),
                  ValidationError);
  CHECK_THROWS_AS(attach_multiplicities(back.paths, "mult 1 2 0 0\n"),
                  ValidationError);
  // Missing lines leave a path with no draws.
  CHECK_THROWS_AS(attach_multiplicities(back.paths, ""), ValidationError);
}
