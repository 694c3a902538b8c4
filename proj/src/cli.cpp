#include "soro/cli.hpp"

#include <cstdio>
#include <fstream>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "soro/demand.hpp"
#include "soro/errors.hpp"
#include "soro/graph.hpp"
#include "soro/harness.hpp"
#include "soro/lower_bound.hpp"
#include "soro/oblivious.hpp"
#include "soro/path.hpp"
#include "soro/routing.hpp"
#include "soro/sampler.hpp"
#include "soro/solver.hpp"

namespace soro {
namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw ValidationError("cannot write file: " + path);
  f << text;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"sparse path-system routing toolkit", "soro"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "Generate a benchmark graph file");
  std::string gen_kind, gen_out;
  int gen_dim = 0, gen_n = 0, gen_k = 0;
  gen->add_option("--kind", gen_kind, "hypercube, gadget-c or gadget-g")
      ->required()
      ->check(CLI::IsMember({"hypercube", "gadget-c", "gadget-g"}));
  gen->add_option("--dim", gen_dim, "hypercube dimension");
  gen->add_option("--n", gen_n, "leaves per side (gadgets)");
  gen->add_option("--k", gen_k, "middle vertices (gadget-c)");
  gen->add_option("--out", gen_out, "graph file to write")->required();

  auto* ob = app.add_subcommand("oblivious",
                                "Build an oblivious routing backend");
  std::string ob_graph, ob_backend, ob_out;
  double ob_eps = 0.05;
  ob->add_option("--graph", ob_graph, "graph file")->required();
  ob->add_option("--backend", ob_backend, "valiant, spuniform or optimal")
      ->required()
      ->check(CLI::IsMember({"valiant", "spuniform", "optimal"}));
  ob->add_option("--eps", ob_eps, "accuracy for the optimal backend");
  ob->add_option("--out", ob_out, "routing file to write")->required();

  auto* sm = app.add_subcommand("sample",
                                "Sample a sparse path system from a backend");
  std::string sm_graph, sm_routing, sm_out, sm_mults;
  int sm_alpha = 1;
  std::uint64_t sm_seed = 0;
  bool sm_plus = false;
  sm->add_option("--graph", sm_graph, "graph file")->required();
  sm->add_option("--routing", sm_routing, "backend routing file")->required();
  sm->add_option("--alpha", sm_alpha, "paths kept per pair")->required();
  sm->add_flag("--plus-cut", sm_plus, "add the cut-scaled extra draws");
  sm->add_option("--seed", sm_seed, "sampling seed")->required();
  sm->add_option("--out", sm_out, "path system file to write")->required();
  sm->add_option("--mults", sm_mults, "optional multiplicity sidecar to write");

  auto* rt = app.add_subcommand(
      "route", "Spread a demand over a fixed path system near-optimally");
  std::string rt_graph, rt_paths, rt_demand, rt_out;
  double rt_eps = 0.05;
  int rt_budget = kDefaultSolverBudget;
  rt->add_option("--graph", rt_graph, "graph file")->required();
  rt->add_option("--paths", rt_paths, "path system file")->required();
  rt->add_option("--demand", rt_demand, "demand file")->required();
  rt->add_option("--eps", rt_eps, "congestion accuracy");
  rt->add_option("--budget", rt_budget, "solver iteration budget");
  rt->add_option("--out", rt_out, "routing file to write")->required();

  auto* rd = app.add_subcommand("round",
                                "Round a fractional routing to whole units");
  std::string rd_graph, rd_routing, rd_demand, rd_out;
  int rd_retries = 50;
  std::uint64_t rd_seed = 0;
  rd->add_option("--graph", rd_graph, "graph file")->required();
  rd->add_option("--routing", rd_routing, "fractional routing file")->required();
  rd->add_option("--demand", rd_demand, "demand file")->required();
  rd->add_option("--retries", rd_retries, "attempts before giving up");
  rd->add_option("--seed", rd_seed, "rounding seed")->required();
  rd->add_option("--out", rd_out, "routing file to write")->required();

  auto* op = app.add_subcommand(
      "opt", "Print the unrestricted optimal congestion of a demand");
  std::string op_graph, op_demand;
  bool op_integral = false;
  double op_eps = 0.05;
  op->add_option("--graph", op_graph, "graph file")->required();
  op->add_option("--demand", op_demand, "demand file")->required();
  op->add_flag("--integral", op_integral, "exact whole-unit optimum");
  op->add_option("--eps", op_eps, "accuracy of the fractional solve");

  auto* at = app.add_subcommand(
      "attack", "Build the adversarial demand for a sampled gadget system");
  std::string at_graph, at_paths, at_out, at_demand_out;
  int at_alpha = 1, at_copy = 0;
  at->add_option("--graph", at_graph, "gadget graph file")->required();
  at->add_option("--paths", at_paths, "sampled path system file")->required();
  at->add_option("--alpha", at_alpha, "sparsity the system claims")->required();
  at->add_option("--copy", at_copy, "gadget copy (0 = unprefixed labels)");
  at->add_option("--out", at_out, "certificate file to write")->required();
  at->add_option("--demand-out", at_demand_out, "optional demand file to write");

  auto* vf = app.add_subcommand("verify",
                                "Re-check an attack certificate from scratch");
  std::string vf_cert, vf_paths, vf_graph;
  double vf_eps = 0.05;
  vf->add_option("--cert", vf_cert, "certificate file")->required();
  vf->add_option("--paths", vf_paths, "sampled path system file")->required();
  vf->add_option("--graph", vf_graph, "gadget graph file")->required();
  vf->add_option("--eps", vf_eps, "slack allowed on the re-solve");

  auto* ex = app.add_subcommand("experiment",
                                "Run a config-driven sparsity sweep");
  std::string ex_config;
  ex->add_option("--config", ex_config, "experiment config file")->required();

  // Build a plain argv so parsing matches the command line exactly.
  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.push_back("soro");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  argv.reserve(storage.size());
  for (std::string& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  try {
    if (gen->parsed()) {
      Graph g = [&] {
        if (gen_kind == "hypercube") {
          if (gen_dim < 1)
            throw ValidationError("gen --kind hypercube needs --dim >= 1");
          return hypercube(gen_dim);
        }
        if (gen_kind == "gadget-c") {
          if (gen_n < 1 || gen_k < 1)
            throw ValidationError("gen --kind gadget-c needs --n and --k");
          return gadget_c(gen_n, gen_k);
        }
        if (gen_n < 2) throw ValidationError("gen --kind gadget-g needs --n >= 2");
        return gadget_g(gen_n);
      }();
      save_graph_file(g, gen_out);
      out << "graph " << gen_out << "\n";
    } else if (ob->parsed()) {
      Graph g = load_graph_file(ob_graph);
      switch (parse_backend_kind(ob_backend)) {
        case BackendKind::valiant: {
          ValiantRouting r(std::make_shared<const Graph>(g));
          write_text_file(ob_out, save_backend_descriptor(r));
          break;
        }
        case BackendKind::spuniform: {
          ShortestPathUniformRouting r(std::make_shared<const Graph>(g));
          write_text_file(ob_out, save_backend_descriptor(r));
          break;
        }
        case BackendKind::optimal: {
          ExhaustiveOptimalResult res = exhaustive_optimal_oblivious(g, ob_eps);
          save_routing_file(res.routing, ob_out);
          out << "competitiveness " << fmt(res.competitiveness) << "\n";
          break;
        }
      }
      out << "routing " << ob_out << "\n";
    } else if (sm->parsed()) {
      Graph g = load_graph_file(sm_graph);
      std::unique_ptr<Routing> r = load_any_routing_file(sm_routing, g);
      SampledSystem ss = sm_plus
                             ? alpha_plus_cut_sample_counts(*r, g, sm_alpha, sm_seed)
                             : alpha_sample_counts(*r, sm_alpha, sm_seed);
      save_path_system_file(ss.paths, sm_out);
      if (!sm_mults.empty()) write_text_file(sm_mults, save_multiplicities(ss));
      out << "pairs " << ss.paths.pairs().size() << "\npaths " << sm_out << "\n";
    } else if (rt->parsed()) {
      Graph g = load_graph_file(rt_graph);
      PathSystem p = load_path_system_file(rt_paths, g);
      Demand d = load_demand_file(rt_demand);
      SolveResult res = min_congestion_fractional(p, d, g, rt_eps, rt_budget);
      save_routing_file(res.routing, rt_out);
      CongestionReport rep = congestion(res.routing, d);
      out << "achieved " << fmt(res.achieved) << "\n"
          << "dilation " << rep.dilation << "\n"
          << "iterations " << res.iterations << "\n"
          << "routing " << rt_out << "\n";
    } else if (rd->parsed()) {
      Graph g = load_graph_file(rd_graph);
      ExplicitRouting r = load_routing_file(rd_routing, g);
      Demand d = load_demand_file(rd_demand);
      RoundResult res = randomized_round(r, d, rd_retries, rd_seed);
      save_routing_file(res.routing, rd_out);
      out << "achieved " << fmt(congestion(res.routing, d).max_congestion) << "\n"
          << "retries " << res.retries << "\n"
          << "routing " << rd_out << "\n";
    } else if (op->parsed()) {
      Graph g = load_graph_file(op_graph);
      Demand d = load_demand_file(op_demand);
      if (op_integral) {
        out << optimal_integral_congestion(g, d).congestion << "\n";
      } else {
        out << fmt(optimal_fractional_congestion(g, d, op_eps).achieved) << "\n";
      }
    } else if (at->parsed()) {
      Graph g = load_graph_file(at_graph);
      PathSystem p = load_path_system_file(at_paths, g);
      AttackCertificate cert = adversarial_demand(p, g, at_alpha, at_copy);
      save_certificate_file(cert, at_out);
      if (!at_demand_out.empty()) save_demand_file(cert.demand, at_demand_out);
      out << "claimed_ratio " << fmt(cert.claimed_ratio) << "\n"
          << "verified_ratio " << fmt(cert.verified_ratio) << "\n"
          << "certificate " << at_out << "\n";
      for (const std::string& w : cert.warnings) err << "warning: " << w << "\n";
    } else if (vf->parsed()) {
      Graph g = load_graph_file(vf_graph);
      PathSystem p = load_path_system_file(vf_paths, g);
      AttackCertificate cert = load_certificate_file(vf_cert);
      CertificateCheck check = verify_certificate(cert, p, g, vf_eps);
      if (!check.ok) {
        err << "failed: " << check.failed << "\n";
        return 2;
      }
      out << "ok\n";
    } else if (ex->parsed()) {
      ExperimentConfig cfg = load_experiment_config_file(ex_config);
      ExperimentResult res = run_experiment(cfg);
      if (!cfg.out_prefix.empty()) write_experiment_csv(res, cfg.out_prefix);
      out << summary_csv(res);
    }
  } catch (const SolverError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace soro
