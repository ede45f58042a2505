#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "blowup/blowup_opt.hpp"
#include "blowup/canonical.hpp"
#include "blowup/cli.hpp"
#include "blowup/density.hpp"
#include "blowup/errors.hpp"
#include "blowup/graph_io.hpp"
#include "blowup/lemma_lab.hpp"
#include "blowup/search.hpp"
#include "blowup/weighted.hpp"
#include "report.hpp"

namespace blowup {

namespace {

using cli::Json;

WeightedGraph load_weighted(const std::string& graph_path, const std::string& weights_path) {
  Graph g = read_graph_file(graph_path);
  if (weights_path.empty()) return WeightedGraph::uniform(std::move(g));
  Measure m = parse_measure_json(read_text_file(weights_path), g.order());
  return WeightedGraph(std::move(g), std::move(m));
}

Json k_json(const BlowupVector& k) { return Json(k.values()); }

Json outcome_json(const DichotomyOutcome& outcome) {
  Json doc;
  if (const auto* x = std::get_if<ExceptionSet>(&outcome)) {
    doc["outcome"] = "exception_set";
    doc["x"] = cli::vertices_json(x->x);
  } else {
    const auto& y = std::get<MismatchWitness>(outcome);
    doc["outcome"] = "mismatch";
    doc["y1"] = cli::vertices_json(y.y1);
    doc["y2"] = cli::vertices_json(y.y2);
  }
  return doc;
}

Json bound_json(const BoundCheck& c) {
  Json doc;
  doc["event"] = c.event;
  doc["empirical"] = c.empirical;
  doc["bound"] = c.bound;
  doc["samples"] = c.samples;
  doc["hits"] = c.hits;
  doc["confidence_slack"] = c.confidence_slack;
  doc["passed"] = c.passed;
  return doc;
}

ScanMode parse_mode(const std::string& mode) {
  return mode == "induced" ? ScanMode::induced : ScanMode::strong;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Blow-up densities, weighted graph distances and extremal search"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  std::function<int()> action;

  std::string graph, core, pattern, target, weights, weights_b, graph_b, mode = "strong", format = "text";
  std::string gamma = "1/4", epsilon, checkpoint;
  std::vector<std::size_t> k_values, psi_values, n_values;
  std::size_t h = 1, n = 1, restarts = 8, samples = 100000, jobs = 1, grid = 16, r = 6, ell = 1, s = 1;
  std::size_t vertex = 0;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  const std::vector<std::string> modes{"strong", "induced"};

  auto add_k = [&](CLI::App* sub) {
    sub->add_option("--k", k_values, "Multiplicities, comma separated")->delimiter(',')->required();
  };
  auto blowup_vector = [&] {
    return k_values.empty() ? BlowupVector() : BlowupVector(k_values);
  };

  auto* blowup_cmd = app.add_subcommand("blowup", "Blow up a core graph");
  blowup_cmd->add_option("--core", core, "Core graph file")->required();
  add_k(blowup_cmd);
  blowup_cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "graph6"}));
  blowup_cmd->callback([&] {
    action = [&] {
      const Graph g = blow_up(read_graph_file(core), blowup_vector());
      out << (format == "graph6" ? write_graph6(g) + "\n" : write_edge_list(g));
      return 0;
    };
  });

  auto* reduce_cmd = app.add_subcommand("reduce", "Twin-free factor of a graph");
  reduce_cmd->add_option("--graph", graph, "Graph file")->required();
  reduce_cmd->callback([&] {
    action = [&] {
      const TwinDecomposition t = twin_free_factor(read_graph_file(graph));
      Json doc;
      doc["core_order"] = t.core.order();
      doc["core"] = write_graph6(t.core);
      doc["k"] = k_json(t.multiplicities);
      doc["class_of"] = cli::vertices_json(t.class_of);
      out << cli::format_json(doc) << '\n';
      return 0;
    };
  });

  auto* aut_cmd = app.add_subcommand("aut", "Automorphism group");
  aut_cmd->add_option("--graph", graph, "Graph file")->required();
  aut_cmd->callback([&] {
    action = [&] {
      const auto group = automorphisms(read_graph_file(graph));
      Json doc;
      doc["count"] = group.size();
      doc["automorphisms"] = Json::array();
      for (const auto& sigma : group) doc["automorphisms"].push_back(cli::vertices_json(sigma));
      out << cli::format_json(doc) << '\n';
      return 0;
    };
  });

  auto* density_cmd = app.add_subcommand("density", "Strong-hom or induced density");
  density_cmd->add_option("--pattern", pattern, "Pattern graph file")->required();
  density_cmd->add_option("--target", target, "Target graph file")->required();
  density_cmd->add_option("--weights", weights, "Target weights (JSON)");
  density_cmd->add_option("--mode", mode, "strong or induced")->check(CLI::IsMember(modes));
  density_cmd->callback([&] {
    action = [&] {
      const Graph p = read_graph_file(pattern);
      Rational value;
      if (mode == "induced") {
        if (!weights.empty()) throw PreconditionError("induced density takes no weights");
        value = induced_density(p, read_graph_file(target));
      } else {
        value = strong_hom_density(p, load_weighted(target, weights));
      }
      out << to_string(value) << '\n';
      return 0;
    };
  });

  auto* d1_cmd = app.add_subcommand("d1", "d1 distance between weighted graphs");
  d1_cmd->add_option("--a", graph, "First graph file")->required();
  d1_cmd->add_option("--b", graph_b, "Second graph file")->required();
  d1_cmd->add_option("--weights-a", weights, "Weights of the first graph");
  d1_cmd->add_option("--weights-b", weights_b, "Weights of the second graph");
  d1_cmd->add_option("--grid", grid, "Step grid for the local search")->check(CLI::PositiveNumber);
  d1_cmd->callback([&] {
    action = [&] {
      const D1Result d = d1_distance(load_weighted(graph, weights), load_weighted(graph_b, weights_b), grid);
      Json doc;
      doc["upper"] = cli::rational_json(d.upper);
      doc["certified_exact"] = d.certified_exact;
      out << cli::format_json(doc) << '\n';
      return 0;
    };
  });

  auto* regular_cmd = app.add_subcommand("regular", "Regularity of a vertex against a reference graph");
  regular_cmd->add_option("--graph", graph, "Graph G")->required();
  regular_cmd->add_option("--reference", graph_b, "Graph F on the same vertices")->required();
  regular_cmd->add_option("--weights", weights, "Shared weights (JSON)");
  regular_cmd->add_option("--vertex", vertex, "Queried vertex of G")->required();
  regular_cmd->add_option("--epsilon", epsilon, "Regularity threshold");
  regular_cmd->callback([&] {
    action = [&] {
      const WeightedGraph gw = load_weighted(graph, weights);
      const Graph f = read_graph_file(graph_b);
      const RegularityReport rep = regularity(static_cast<Vertex>(vertex), gw.graph(), f, gw.measure());
      Json doc;
      doc["vertex"] = rep.vertex;
      doc["witness"] = rep.witness ? Json(*rep.witness) : Json(nullptr);
      doc["discrepancy"] = cli::rational_json(rep.discrepancy);
      if (!epsilon.empty()) doc["regular"] = rep.discrepancy <= parse_rational(epsilon);
      out << cli::format_json(doc) << '\n';
      return 0;
    };
  });

  auto* optimize_cmd = app.add_subcommand("optimize", "Optimal blow-up weights on the simplex");
  optimize_cmd->add_option("--core", core, "Twin-free core graph")->required();
  add_k(optimize_cmd);
  optimize_cmd->add_option("--h", h, "Blow-up factor")->check(CLI::PositiveNumber);
  optimize_cmd->add_option("--restarts", restarts, "Random starting points");
  optimize_cmd->add_option("--seed", seed, "Random seed");
  optimize_cmd->add_option("--tol", tol, "First-order tolerance")->check(CLI::PositiveNumber);
  optimize_cmd->callback([&] {
    action = [&] {
      OptimizeOptions opt;
      opt.restarts = restarts;
      opt.seed = seed;
      opt.tol = tol;
      const OptimizationResult res = optimize_nu(read_graph_file(core), blowup_vector(), h, opt);
      Json doc;
      doc["argmax"] = cli::vector_json(res.argmax);
      doc["value"] = res.value;
      if (res.exact_value) doc["exact_value"] = cli::rational_json(*res.exact_value);
      doc["residual"] = res.first_order_residual;
      doc["balanced"] = res.balanced;
      doc["used_closed_form"] = res.used_closed_form;
      doc["converged"] = res.converged;
      doc["restarts"] = res.restarts;
      out << cli::format_json(doc) << '\n';
      if (!res.converged) {
        err << "optimize: residual above tolerance after the iteration cap\n";
        return static_cast<int>(kExitNotConverged);
      }
      return 0;
    };
  });

  auto* balanced_cmd = app.add_subcommand("balanced", "Balanced test via twin factorization");
  balanced_cmd->add_option("--graph", graph, "Graph file")->required();
  balanced_cmd->callback([&] {
    action = [&] {
      const TwinDecomposition t = twin_free_factor(read_graph_file(graph));
      Json doc;
      doc["balanced"] = is_invariant(t.core, t.multiplicities);
      doc["core_order"] = t.core.order();
      doc["k"] = k_json(t.multiplicities);
      out << cli::format_json(doc) << '\n';
      return 0;
    };
  });

  auto* dichotomy_cmd = app.add_subcommand("dichotomy", "Exception set or mismatch witness for a map");
  dichotomy_cmd->add_option("--core", core, "Twin-free core graph")->required();
  add_k(dichotomy_cmd);
  dichotomy_cmd->add_option("--n", n, "Blow-up factor of G")->check(CLI::PositiveNumber);
  dichotomy_cmd->add_option("--psi", psi_values, "Image of every vertex of G")->delimiter(',')->required();
  dichotomy_cmd->add_option("--gamma", gamma, "Rational gamma > 0");
  dichotomy_cmd->callback([&] {
    action = [&] {
      const VertexMap psi(psi_values.begin(), psi_values.end());
      const Rational g = parse_rational(gamma);
      const BlowupVector kv = blowup_vector();
      Json doc = outcome_json(dichotomy(read_graph_file(core), kv, n, psi, g));
      doc["threshold"] = cli::rational_json(dichotomy_threshold(kv, n, g));
      out << cli::format_json(doc) << '\n';
      return 0;
    };
  });

  auto* bound_cmd = app.add_subcommand("check-bound", "Monte Carlo check of subgraph probability bounds");
  bound_cmd->require_subcommand(1);
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--graph", graph, "Graph J")->required();
    sub->add_option("--weights", weights, "Weights of J (JSON)");
    sub->add_option("--r", r, "Sample size, at most 12");
    sub->add_option("--samples", samples, "Number of samples");
    sub->add_option("--seed", seed, "Random seed");
    sub->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  };
  auto* biclique_cmd = bound_cmd->add_subcommand("biclique", "K_{l,l} bound");
  add_common(biclique_cmd);
  biclique_cmd->add_option("--ell", ell, "Biclique side");
  biclique_cmd->callback([&] {
    action = [&] {
      out << cli::format_json(bound_json(check_biclique_bound(load_weighted(graph, weights), r, ell, samples, seed, jobs)))
          << '\n';
      return 0;
    };
  });
  auto* star_cmd = bound_cmd->add_subcommand("star", "Degree bound");
  add_common(star_cmd);
  star_cmd->add_option("--s", s, "Degree threshold");
  star_cmd->callback([&] {
    action = [&] {
      out << cli::format_json(bound_json(check_star_bound(load_weighted(graph, weights), r, s, samples, seed, jobs)))
          << '\n';
      return 0;
    };
  });

  auto* scan_cmd = app.add_subcommand("scan", "Exhaustive extremal scan over all graphs on n vertices");
  scan_cmd->add_option("--core", core, "Twin-free core graph")->required();
  add_k(scan_cmd);
  scan_cmd->add_option("--h", h, "Blow-up factor")->check(CLI::PositiveNumber);
  scan_cmd->add_option("--n", n, "Order of the scanned graphs");
  scan_cmd->add_option("--mode", mode, "strong or induced")->check(CLI::IsMember(modes));
  scan_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  scan_cmd->add_option("--checkpoint", checkpoint, "Resumable progress file");
  scan_cmd->add_option("--restarts", restarts, "Optimizer restarts");
  scan_cmd->add_option("--seed", seed, "Optimizer seed");
  scan_cmd->callback([&] {
    action = [&] {
      ScanOptions opt;
      opt.mode = parse_mode(mode);
      opt.jobs = jobs;
      opt.restarts = restarts;
      opt.seed = seed;
      if (!checkpoint.empty()) opt.checkpoint = checkpoint;
      const ScanResult res = extremal_scan(read_graph_file(core), blowup_vector(), h, n, opt);
      Json doc;
      doc["n"] = res.n;
      doc["mode"] = mode;
      doc["target"] = write_graph6(res.target);
      doc["best_value"] = cli::rational_json(res.best_value);
      doc["witnesses"] = Json::array();
      for (const auto& w : res.witnesses) doc["witnesses"].push_back(write_graph6(w));
      doc["blowup_value"] = res.blowup_value ? cli::rational_json(*res.blowup_value) : Json(nullptr);
      doc["sup_simplex"] = res.sup_simplex;
      doc["blowup_inducibility"] = res.blowup_inducibility;
      doc["classes_scanned"] = res.classes_scanned;
      out << cli::format_json(doc) << '\n';
      return 0;
    };
  });

  auto* evidence_cmd = app.add_subcommand("evidence", "Whether extremal induced witnesses are blow-ups");
  evidence_cmd->add_option("--core", core, "Twin-free core graph")->required();
  add_k(evidence_cmd);
  evidence_cmd->add_option("--h", h, "Blow-up factor")->check(CLI::PositiveNumber);
  evidence_cmd->add_option("--n", n_values, "Orders to scan")->delimiter(',')->required();
  evidence_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  evidence_cmd->callback([&] {
    action = [&] {
      ScanOptions opt;
      opt.jobs = jobs;
      Json rows = Json::array();
      for (const auto& row : report_inducibility_evidence(read_graph_file(core), blowup_vector(), h, n_values, opt)) {
        Json doc;
        doc["n"] = row.n;
        doc["feasible"] = row.feasible;
        doc["best_value"] = row.best_value ? cli::rational_json(*row.best_value) : Json(nullptr);
        doc["witnesses"] = Json::array();
        for (const auto& w : row.witnesses) {
          Json item;
          item["graph6"] = write_graph6(w.graph);
          item["is_blowup"] = w.is_blowup;
          doc["witnesses"].push_back(item);
        }
        rows.push_back(doc);
      }
      out << cli::format_json(rows) << '\n';
      return 0;
    };
  });

  auto* selftest_cmd = app.add_subcommand("selftest", "Cross-module consistency checks");
  selftest_cmd->callback([&] {
    action = [&] { return run_selftest(out) == 0 ? 0 : 1; };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << e.what() << '\n';
    return kExitUsage;
  }

  try {
    return action();
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  }
}

}  // namespace blowup
