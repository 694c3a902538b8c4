#include "soro/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "soro/demand.hpp"
#include "soro/graph.hpp"
#include "soro/lower_bound.hpp"
#include "soro/oblivious.hpp"
#include "soro/path.hpp"
#include "soro/routing.hpp"
#include "soro/sampler.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

CliResult cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = soro::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(bool(in));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Shared scratch directory, fresh per test run.
const fs::path& scratch() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "soro_cli_scratch";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string first_value(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(key + " ", 0) == 0) return line.substr(key.size() + 1);
  }
  return "";
}

}  // namespace

TEST_CASE("cli gen writes loadable graphs and validates its arguments") {
  fs::path h3 = scratch() / "h3.graph";
  CliResult r = cli({"gen", "--kind", "hypercube", "--dim", "3", "--out", h3.string()});
  CHECK(r.code == 0);
  CHECK(soro::hypercube_dimension(soro::load_graph_file(h3.string())) == 3);

  fs::path c42 = scratch() / "c42.graph";
  CHECK(cli({"gen", "--kind", "gadget-c", "--n", "4", "--k", "2", "--out",
             c42.string()}).code == 0);
  soro::GadgetRoles roles = soro::gadget_roles(soro::load_graph_file(c42.string()));
  CHECK(roles.left_leaves.size() == 4);
  CHECK(roles.middles.size() == 2);

  fs::path g16 = scratch() / "g16.graph";
  CHECK(cli({"gen", "--kind", "gadget-g", "--n", "16", "--out", g16.string()}).code == 0);
  CHECK(soro::gadget_roles(soro::load_graph_file(g16.string()), 1).middles.size() == 4);

  // Semantic misuse is exit 2; argument-parser misuse is exit 1.
  CliResult no_dim = cli({"gen", "--kind", "hypercube", "--out", h3.string()});
  CHECK(no_dim.code == 2);
  CHECK(!no_dim.err.empty());
  CHECK(cli({"gen", "--kind", "wedge", "--out", h3.string()}).code == 1);
  CHECK(cli({"gen", "--kind", "hypercube", "--dim", "3"}).code == 1);
  CHECK(cli({"frobnicate"}).code == 1);
  CHECK(cli({}).code == 1);

  CliResult help = cli({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("gen") != std::string::npos);
  CHECK(help.out.find("attack") != std::string::npos);
}

TEST_CASE("cli sample is seed-deterministic and matches the library") {
  fs::path g = scratch() / "h3.graph";
  cli({"gen", "--kind", "hypercube", "--dim", "3", "--out", g.string()});
  fs::path r = scratch() / "valiant.backend";
  CliResult ob = cli({"oblivious", "--graph", g.string(), "--backend", "valiant",
                      "--out", r.string()});
  CHECK(ob.code == 0);
  CHECK(slurp(r) == "backend valiant\ndim 3\n");

  auto run_sample = [&](const std::string& tag, const std::string& seed) {
    fs::path paths = scratch() / (tag + ".paths");
    fs::path mults = scratch() / (tag + ".mults");
    CliResult res = cli({"sample", "--graph", g.string(), "--routing", r.string(),
                         "--alpha", "2", "--seed", seed, "--out", paths.string(),
                         "--mults", mults.string()});
    CHECK(res.code == 0);
    return std::pair{slurp(paths), slurp(mults)};
  };
  auto [p1, m1] = run_sample("s1", "7");
  auto [p2, m2] = run_sample("s2", "7");
  auto [p3, m3] = run_sample("s3", "8");
  CHECK(p1 == p2);
  CHECK(m1 == m2);
  CHECK(p1 != p3);

  // Thin wrapper: identical bytes to the direct library calls.
  auto cube = std::make_shared<const soro::Graph>(soro::hypercube(3));
  soro::ValiantRouting direct(cube);
  soro::SampledSystem ss = soro::alpha_sample_counts(direct, 2, 7);
  CHECK(p1 == soro::save_path_system(ss.paths));
  CHECK(m1 == soro::save_multiplicities(ss));

  // --plus-cut switches the draw budget.
  fs::path plus = scratch() / "plus.paths";
  CHECK(cli({"sample", "--graph", g.string(), "--routing", r.string(), "--alpha",
             "2", "--plus-cut", "--seed", "7", "--out", plus.string()}).code == 0);
  soro::SampledSystem pc = soro::alpha_plus_cut_sample_counts(direct, *cube, 2, 7);
  CHECK(slurp(plus) == soro::save_path_system(pc.paths));

  // --seed is mandatory for sampling.
  CHECK(cli({"sample", "--graph", g.string(), "--routing", r.string(), "--alpha",
             "2", "--out", plus.string()}).code == 1);
}

TEST_CASE("cli pipeline runs the gadget attack end to end") {
  fs::path g = scratch() / "c164.graph";
  REQUIRE(cli({"gen", "--kind", "gadget-c", "--n", "16", "--k", "4", "--out",
               g.string()}).code == 0);

  fs::path backend = scratch() / "sp.backend";
  REQUIRE(cli({"oblivious", "--graph", g.string(), "--backend", "spuniform",
               "--out", backend.string()}).code == 0);
  CHECK(slurp(backend) == "backend spuniform\n");

  fs::path paths = scratch() / "c164.paths";
  REQUIRE(cli({"sample", "--graph", g.string(), "--routing", backend.string(),
               "--alpha", "1", "--seed", "7", "--out", paths.string()}).code == 0);

  fs::path cert = scratch() / "c164.cert";
  fs::path dem = scratch() / "c164.demand";
  CliResult attack = cli({"attack", "--graph", g.string(), "--paths",
                          paths.string(), "--alpha", "1", "--out", cert.string(),
                          "--demand-out", dem.string()});
  CHECK(attack.code == 0);
  CHECK(first_value(attack.out, "claimed_ratio") == "4");
  CHECK(std::stod(first_value(attack.out, "verified_ratio")) ==
        doctest::Approx(4.0).epsilon(1e-12));
  CHECK(soro::load_certificate_file(cert.string()).k == 4);

  CliResult verify = cli({"verify", "--cert", cert.string(), "--paths",
                          paths.string(), "--graph", g.string()});
  CHECK(verify.code == 0);
  CHECK(verify.out == "ok\n");

  // The integral optimum of the certificate demand prints exactly 1.
  CliResult opt_z = cli({"opt", "--graph", g.string(), "--demand", dem.string(),
                         "--integral"});
  CHECK(opt_z.code == 0);
  CHECK(opt_z.out == "1\n");
  CliResult opt_f = cli({"opt", "--graph", g.string(), "--demand", dem.string()});
  CHECK(opt_f.code == 0);
  double frac = std::stod(opt_f.out);
  CHECK(frac >= 1.0 - 1e-9);
  CHECK(frac <= 1.05 + 1e-9);

  fs::path routed = scratch() / "c164.routing";
  CliResult route = cli({"route", "--graph", g.string(), "--paths", paths.string(),
                         "--demand", dem.string(), "--eps", "0.05", "--out",
                         routed.string()});
  CHECK(route.code == 0);
  CHECK(first_value(route.out, "achieved") == "4");
  CHECK(first_value(route.out, "dilation") == "4");
  CHECK(first_value(route.out, "iterations") == "0");
  CHECK(first_value(route.out, "routing") == routed.string());
  soro::Graph loaded = soro::load_graph_file(g.string());
  soro::ExplicitRouting rr = soro::load_routing_file(routed.string(), loaded);
  soro::Demand d = soro::load_demand_file(dem.string());
  CHECK(soro::congestion(rr, d).max_congestion == 4.0);

  fs::path rounded = scratch() / "c164.rounded";
  CliResult round = cli({"round", "--graph", g.string(), "--routing",
                         routed.string(), "--demand", dem.string(), "--seed", "3",
                         "--out", rounded.string()});
  CHECK(round.code == 0);
  CHECK(first_value(round.out, "achieved") == "4");
  CHECK(first_value(round.out, "retries") == "0");

  // A tampered claim is rejected through the same entry point.
  std::string cert_text = slurp(cert);
  auto pos = cert_text.find("claimed_ratio 4");
  REQUIRE(pos != std::string::npos);
  cert_text.replace(pos, 15, "claimed_ratio 3");
  fs::path bad_cert = scratch() / "bad.cert";
  std::ofstream(bad_cert) << cert_text;
  CliResult bad = cli({"verify", "--cert", bad_cert.string(), "--paths",
                       paths.string(), "--graph", g.string()});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("failed") != std::string::npos);
}

TEST_CASE("cli exit codes distinguish failure classes") {
  CHECK(cli({"opt", "--graph", "/nonexistent.graph", "--demand",
             "/nonexistent.demand"}).code == 2);

  // Triangle: a direct edge plus a two-hop detour, optimum 1/2.
  soro::Graph tri(3, {{0, 1}, {0, 2}, {1, 2}});
  fs::path g = scratch() / "tri.graph";
  soro::save_graph_file(tri, g.string());
  soro::PathSystem p;
  p.add(soro::Path::from_edges(tri, 0, {0}));
  p.add(soro::Path::from_edges(tri, 0, {1, 2}));
  fs::path paths = scratch() / "tri.paths";
  soro::save_path_system_file(p, paths.string());
  soro::Demand d;
  d.set(0, 1, 1.0);
  fs::path dem = scratch() / "tri.demand";
  soro::save_demand_file(d, dem.string());
  fs::path out = scratch() / "tri.routing";

  CliResult starved = cli({"route", "--graph", g.string(), "--paths",
                           paths.string(), "--demand", dem.string(), "--budget",
                           "1", "--out", out.string()});
  CHECK(starved.code == 3);
  CHECK(!starved.err.empty());

  CliResult solved = cli({"route", "--graph", g.string(), "--paths",
                          paths.string(), "--demand", dem.string(), "--out",
                          out.string()});
  CHECK(solved.code == 0);
  double achieved = std::stod(first_value(solved.out, "achieved"));
  CHECK(achieved >= 0.5 - 1e-9);
  CHECK(achieved <= 0.5 * 1.05 + 1e-9);

  CHECK(cli({"opt", "--graph", g.string(), "--demand", dem.string(), "--eps",
             "0.7"}).code == 2);
  soro::Demand frac_d;
  frac_d.set(0, 1, 2.5);
  fs::path frac_dem = scratch() / "frac.demand";
  soro::save_demand_file(frac_d, frac_dem.string());
  CHECK(cli({"opt", "--graph", g.string(), "--demand", frac_dem.string(),
             "--integral"}).code == 2);
}

TEST_CASE("cli oblivious optimal backend writes an explicit routing") {
  fs::path g = scratch() / "h2.graph";
  cli({"gen", "--kind", "hypercube", "--dim", "2", "--out", g.string()});
  fs::path out = scratch() / "h2.opt";
  CliResult res = cli({"oblivious", "--graph", g.string(), "--backend", "optimal",
                       "--eps", "0.1", "--out", out.string()});
  CHECK(res.code == 0);
  double comp = std::stod(first_value(res.out, "competitiveness"));
  CHECK(comp >= 1.0);
  CHECK(comp <= 4.0 / 3 * 1.1 * 1.06);

  soro::Graph cube = soro::load_graph_file(g.string());
  soro::ExplicitRouting r = soro::load_routing_file(out.string(), cube);
  CHECK(r.pair_distribution(0, 3).size() == 2);

  // Complete graph on 9 vertices exceeds the exhaustive path cap.
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < 9; ++u)
    for (int v = u + 1; v < 9; ++v) edges.push_back({u, v});
  fs::path k9 = scratch() / "k9.graph";
  soro::save_graph_file(soro::Graph(9, std::move(edges)), k9.string());
  CHECK(cli({"oblivious", "--graph", k9.string(), "--backend", "optimal", "--out",
             out.string()}).code == 2);
}

TEST_CASE("cli experiment emits the summary and csv files") {
  fs::path prefix = scratch() / "exp_";
  fs::path cfg = scratch() / "exp.cfg";
  std::ofstream(cfg) << "graph hypercube\n"
                        "dim 2\n"
                        "backend spuniform\n"
                        "alphas 1 2\n"
                        "demand permutation\n"
                        "trials 2\n"
                        "seed 42\n"
                        "eps 0.1\n"
                        "out " << prefix.string() << "\n";
  CliResult res = cli({"experiment", "--config", cfg.string()});
  CHECK(res.code == 0);
  CHECK(res.out.rfind("# soro summary v1\n", 0) == 0);
  CHECK(slurp(prefix.string() + "summary.csv") == res.out);
  std::string rows = slurp(prefix.string() + "rows.csv");
  CHECK(rows.rfind("# soro rows v1\n", 0) == 0);
  // Header comment + column row + one line per (alpha, trial) cell.
  CHECK(std::count(rows.begin(), rows.end(), '\n') == 6);

  CHECK(cli({"experiment", "--config", "/nonexistent.cfg"}).code == 2);
}
