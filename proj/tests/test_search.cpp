#include <filesystem>
#include <set>
#include <stdexcept>
#include <string>

#include "blowup/canonical.hpp"
#include "blowup/errors.hpp"
#include "blowup/graph_io.hpp"
#include "blowup/search.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace blowup;

TEST_CASE("class counts for small orders") {
  const std::size_t expected[] = {1, 2, 4, 11, 34, 156};
  for (std::size_t n = 1; n <= 6; ++n) {
    const std::vector<Graph> graphs = enumerate_graphs(n);
    CHECK(graphs.size() == expected[n - 1]);
    std::set<std::string> codes;
    for (const Graph& g : graphs) {
      CHECK(g.order() == n);
      CHECK(canonical_form(g) == g);
      codes.insert(write_graph6(g));
    }
    CHECK(codes.size() == graphs.size());
  }
  CHECK(oracle::class_representatives(5).size() == 34);
  CHECK_THROWS_AS(enumerate_graphs(0), PreconditionError);
  CHECK_THROWS_AS(enumerate_graphs(10), PreconditionError);
}

TEST_CASE("canonical children of a parent are distinct and restore it") {
  for (const Graph& parent : enumerate_graphs(4)) {
    std::set<std::string> codes;
    for (const Graph& child : canonical_children(parent)) {
      CHECK(child.order() == 5);
      CHECK(codes.insert(write_graph6(child)).second);
    }
  }
}

TEST_CASE("scan_value") {
  const Graph c4 = complete_bipartite(2, 2);
  CHECK(scan_value(c4, c4, ScanMode::induced) == 1);
  CHECK(scan_value(complete_graph(2), complete_graph(2), ScanMode::strong) == Rational(1, 2));
}

TEST_CASE("induced scan finds C4 on four vertices") {
  ScanOptions options;
  options.mode = ScanMode::induced;
  const ScanResult r = extremal_scan(complete_graph(2), {1, 1}, 2, 4, options);
  CHECK(r.best_value == 1);
  REQUIRE(r.witnesses.size() == 1);
  CHECK(is_isomorphic(r.witnesses[0], cycle_graph(4)));
  CHECK(r.classes_scanned == 11);
  REQUIRE(r.blowup_value.has_value());
  CHECK(*r.blowup_value == 1);
}

TEST_CASE("scan with a single-vertex core") {
  for (ScanMode mode : {ScanMode::strong, ScanMode::induced}) {
    ScanOptions options;
    options.mode = mode;
    const ScanResult r = extremal_scan(complete_graph(1), {1}, 2, 4, options);
    CHECK(r.best_value == 1);
    bool empty_found = false;
    for (const Graph& w : r.witnesses) empty_found = empty_found || w.edge_count() == 0;
    CHECK(empty_found);
  }
}

TEST_CASE("scan is independent of jobs and resumes from a checkpoint") {
  const auto dir = std::filesystem::temp_directory_path() / "blowup_scan_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "scan.json";
  std::filesystem::remove(path);

  ScanOptions base;
  base.block = 8;
  const ScanResult fresh = extremal_scan(path_graph(3).complement(), {1, 1, 1}, 1, 6, base);

  ScanOptions parallel = base;
  parallel.jobs = 3;
  const ScanResult threaded = extremal_scan(path_graph(3).complement(), {1, 1, 1}, 1, 6, parallel);
  CHECK(threaded.best_value == fresh.best_value);
  CHECK(threaded.witnesses == fresh.witnesses);

  ScanOptions interrupted = base;
  interrupted.checkpoint = path;
  std::size_t seen = 0;
  interrupted.observer = [&](const Graph&, const Rational&) {
    if (++seen == 100) throw std::runtime_error("stop");
  };
  CHECK_THROWS_AS(extremal_scan(path_graph(3).complement(), {1, 1, 1}, 1, 6, interrupted), std::runtime_error);
  CHECK(std::filesystem::exists(path));

  ScanOptions resumed = base;
  resumed.checkpoint = path;
  const ScanResult after = extremal_scan(path_graph(3).complement(), {1, 1, 1}, 1, 6, resumed);
  CHECK(after.best_value == fresh.best_value);
  CHECK(after.witnesses == fresh.witnesses);
  CHECK(after.classes_scanned == 156);

  CHECK_THROWS_AS(extremal_scan(complete_graph(2), {1, 1}, 1, 6, resumed), PreconditionError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("scan rejects bad orders") {
  CHECK_THROWS_AS(extremal_scan(complete_graph(2), {1, 1}, 1, 10), PreconditionError);
  CHECK_THROWS_AS(extremal_scan(complete_graph(2), {1, 1}, 1, 0), PreconditionError);
}

TEST_CASE("inducibility evidence") {
  const std::vector<EvidenceRow> rows = report_inducibility_evidence(complete_graph(2), {1, 1}, 2, {3, 4, 5});
  REQUIRE(rows.size() == 3);
  CHECK_FALSE(rows[0].feasible);
  CHECK_FALSE(rows[0].best_value.has_value());
  CHECK(rows[1].feasible);
  REQUIRE(rows[1].witnesses.size() == 1);
  CHECK(rows[1].witnesses[0].is_blowup);
  for (const EvidenceWitness& w : rows[2].witnesses) {
    const TwinDecomposition t = twin_free_factor(w.graph);
    CHECK(w.is_blowup == is_isomorphic(t.core, complete_graph(2)));
  }
}
