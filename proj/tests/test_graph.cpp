#include <algorithm>
#include <random>
#include <set>

#include "blowup/canonical.hpp"
#include "blowup/errors.hpp"
#include "blowup/graph.hpp"
#include "blowup/graph_io.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace blowup;

TEST_CASE("blow_up layout and edge counts") {
  CHECK(blow_up(complete_graph(1), {3}) == empty_graph(3));
  for (std::size_t h = 1; h <= 4; ++h) CHECK(blow_up(complete_graph(2), {h, h}) == complete_bipartite(h, h));
  const Graph c10 = blow_up(cycle_graph(5), {2, 2, 2, 2, 2});
  CHECK(c10.order() == 10);
  CHECK(c10.edge_count() == 20);
  CHECK(blow_up_projection({2, 1, 3}) == VertexMap{0, 0, 1, 2, 2, 2});
  CHECK_THROWS_AS(BlowupVector({1, 0}), PreconditionError);
  CHECK_THROWS_AS(blow_up(complete_graph(2), {1}), PreconditionError);
}

TEST_CASE("twin_free_factor") {
  for (std::size_t h = 1; h <= 4; ++h) {
    const TwinDecomposition t = twin_free_factor(complete_bipartite(h, h));
    CHECK(t.core == complete_graph(2));
    CHECK(t.multiplicities == BlowupVector{h, h});
  }
  const TwinDecomposition star = twin_free_factor(star_graph(2));
  CHECK(star.core == complete_graph(2));
  CHECK(star.multiplicities == BlowupVector{1, 2});
  const TwinDecomposition c5 = twin_free_factor(cycle_graph(5));
  CHECK(c5.core == cycle_graph(5));
  CHECK(c5.multiplicities == BlowupVector::ones(5));
  CHECK(c5.class_of == identity_map(5));
}

TEST_CASE("is_strong_hom") {
  CHECK(is_strong_hom(identity_map(5), cycle_graph(5), cycle_graph(5)));
  CHECK(is_strong_hom({0, 1, 0}, path_graph(3), complete_graph(2)));
  CHECK_FALSE(is_strong_hom({0, 1, 0, 1}, path_graph(4), complete_graph(2)));
}

TEST_CASE("strong homs from twin-free sources are injective") {
  std::mt19937_64 rng(11);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Graph h = oracle::random_graph(3 + trial % 2, rng);
    if (!h.twin_free()) continue;
    const Graph g = oracle::random_graph(5, rng);
    VertexMap phi(h.order(), 0);
    while (true) {
      if (is_strong_hom(phi, h, g)) {
        ++checked;
        CHECK(std::set<Vertex>(phi.begin(), phi.end()).size() == h.order());
      }
      std::size_t i = 0;
      while (i < phi.size() && ++phi[i] == 5) phi[i++] = 0;
      if (i == phi.size()) break;
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("automorphisms against permutation brute force") {
  CHECK(automorphisms(complete_graph(3)).size() == 6);
  CHECK(automorphism_count(cycle_graph(5)) == 10);
  CHECK(automorphism_count(star_graph(2)) == 2);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const Graph g = oracle::random_graph(1 + trial % 6, rng);
    auto expected = oracle::all_isomorphisms(g, g);
    std::sort(expected.begin(), expected.end());
    CHECK(automorphisms(g) == expected);
  }
}

TEST_CASE("canonical forms separate the 11 classes on 4 vertices") {
  std::set<std::string> forms;
  for (std::uint64_t code = 0; code < 64; ++code) forms.insert(write_graph6(canonical_form(oracle::from_code(4, code))));
  CHECK(forms.size() == 11);
}

TEST_CASE("canonical form is a labeling invariant") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 8;
    const Graph g = oracle::random_graph(n, rng, 0.4);
    VertexMap perm = identity_map(n);
    std::shuffle(perm.begin(), perm.end(), rng);
    const Graph relabeled = g.permuted(perm);
    CHECK(canonical_form(g) == canonical_form(relabeled));
    const CanonicalLabeling lab = canonical_labeling(g);
    CHECK(g.permuted(lab.order) == lab.form);
    CHECK(is_isomorphic(g, relabeled));
  }
}

TEST_CASE("is_isomorphic examples") {
  CHECK(is_isomorphic(cycle_graph(4), complete_bipartite(2, 2)));
  CHECK_FALSE(is_isomorphic(path_graph(4), star_graph(3)));
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 80; ++trial) {
    const Graph a = oracle::random_graph(5, rng), b = oracle::random_graph(5, rng);
    CHECK(is_isomorphic(a, b) == oracle::isomorphic(a, b));
  }
}

TEST_CASE("for_each_isomorphism honors compatibility") {
  const Graph k2 = complete_graph(2);
  std::vector<VertexMap> seen;
  for_each_isomorphism(
      k2, k2, [&](const VertexMap& m) {
        seen.push_back(m);
        return true;
      },
      [](Vertex u, Vertex t) { return u == t; });
  CHECK(seen == std::vector<VertexMap>{{0, 1}});
}

TEST_CASE("graph6 round trip") {
  CHECK(write_graph6(Graph(0)) == "?");
  CHECK(write_graph6(complete_graph(2)) == "A_");
  CHECK(write_graph6(cycle_graph(5)) == "Dhc");
  CHECK(parse_graph6(">>graph6<<Dhc") == cycle_graph(5));
  std::mt19937_64 rng(3);
  for (std::size_t n : {1, 7, 30, 62, 63, 64, 100}) {
    const Graph g = oracle::random_graph(n, rng, 0.3);
    CHECK(parse_graph6(write_graph6(g)) == g);
  }
  CHECK_THROWS_AS(parse_graph6("A"), ParseError);
}

TEST_CASE("edge list round trip and errors") {
  const Graph g = parse_edge_list("# path\nn 3\n0 1\n\n1 2\n");
  CHECK(g == path_graph(3));
  CHECK(parse_edge_list(write_edge_list(cycle_graph(6))) == cycle_graph(6));
  CHECK(parse_graph("n 2\n0 1\n") == complete_graph(2));
  CHECK(parse_graph("A_\n") == complete_graph(2));
  CHECK_THROWS_AS(parse_edge_list("n 2\n0 2\n"), ParseError);
  CHECK_THROWS_AS(parse_edge_list("n 2\n1 1\n"), ParseError);
  CHECK_THROWS_AS(parse_edge_list("0 1\n"), ParseError);
}
