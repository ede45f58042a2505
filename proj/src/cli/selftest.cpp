#include <functional>
#include <ostream>
#include <random>
#include <string>

#include "blowup/blowup_opt.hpp"
#include "blowup/canonical.hpp"
#include "blowup/cli.hpp"
#include "blowup/density.hpp"
#include "blowup/search.hpp"

namespace blowup {

namespace {

// Sum over all |V(g)|^|V(h)| maps.
Rational all_maps_density(const Graph& h, const WeightedGraph& gw) {
  const std::size_t p = h.order(), n = gw.order();
  VertexMap phi(p, 0);
  Rational total = 0;
  while (true) {
    if (is_strong_hom(phi, h, gw.graph())) {
      Rational w = 1;
      for (Vertex t : phi) w *= gw.measure()[t];
      total += w;
    }
    std::size_t i = 0;
    while (i < p && ++phi[i] == n) phi[i++] = 0;
    if (i == p) break;
  }
  return total;
}

Measure random_measure(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<unsigned long> draw(1, 9);
  RationalVector m(static_cast<Eigen::Index>(n));
  for (auto& x : m) x = draw(rng);
  return Measure(RationalVector(m / m.sum()));
}

Graph random_graph(std::size_t n, std::mt19937_64& rng) {
  Graph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng() & 1U) g.set_edge(u, v);
  return g;
}

bool closed_form_matches() {
  for (std::size_t order = 1; order <= 3; ++order)
    for (const Graph& core : enumerate_graphs(order)) {
      if (!core.twin_free()) continue;
      BlowupVector k(std::vector<std::size_t>(order, 1));
      const BlowupVector k2 = BlowupVector(std::vector<std::size_t>(order, 1)).scaled(2);
      for (const auto& kv : {k, k2}) {
        const Measure m = Measure::proportional(kv);
        const Rational closed = blowup_self_density(core, kv, 1, m);
        if (closed != strong_hom_density(blow_up(core, kv), WeightedGraph(core, m))) return false;
      }
    }
  return true;
}

bool density_matches_brute_force() {
  std::mt19937_64 rng(1);
  for (std::size_t hn = 1; hn <= 3; ++hn)
    for (const Graph& h : enumerate_graphs(hn))
      for (const Graph& g : enumerate_graphs(3)) {
        const WeightedGraph gw(g, random_measure(3, rng));
        if (strong_hom_density(h, gw) != all_maps_density(h, gw)) return false;
      }
  return true;
}

bool averaging_identity() {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = random_graph(4, rng), h = random_graph(3, rng);
    const WeightedGraph gw(g, random_measure(4, rng));
    const PartiallyLabeledGraph f(h, {0});
    Rational avg = 0;
    for (Vertex t = 0; t < 4; ++t) avg += gw.measure()[t] * labeled_density(f, {t}, gw);
    if (avg != strong_hom_density(h, gw)) return false;
  }
  return true;
}

bool derivative_identity() {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = random_graph(4, rng), h = random_graph(3, rng);
    RationalVector w = random_measure(4, rng).masses();
    const Vertex v0 = static_cast<Vertex>(rng() % 4);
    // Derivative in w(v0) of the interpolating polynomial through d + 1 nodes.
    const std::size_t d = h.order();
    const Rational x0 = w[v0];
    std::vector<Rational> nodes, values;
    for (std::size_t i = 0; i <= d; ++i) {
      RationalVector wi = w;
      wi[v0] = x0 + Rational(static_cast<unsigned long>(i + 1));
      nodes.push_back(wi[v0]);
      values.push_back(polynomial_eval(h, g, wi));
    }
    Rational derivative = 0;
    for (std::size_t i = 0; i <= d; ++i) {
      Rational basis = 1, slope = 0;
      for (std::size_t j = 0; j <= d; ++j) {
        if (j == i) continue;
        basis *= (x0 - nodes[j]) / (nodes[i] - nodes[j]);
        slope += 1 / (x0 - nodes[j]);
      }
      derivative += values[i] * basis * slope;
    }
    if (derivative != quantum_polynomial_eval(boundary(h), {v0}, g, w)) return false;
  }
  return true;
}

bool factor_round_trip() {
  for (std::size_t order = 1; order <= 4; ++order)
    for (const Graph& core : enumerate_graphs(order)) {
      if (!core.twin_free()) continue;
      std::vector<std::size_t> k(order, 1);
      k[0] = 3;
      const TwinDecomposition t = twin_free_factor(blow_up(core, BlowupVector(k)));
      if (!is_isomorphic(t.core, core) || t.multiplicities.l1_norm() != order + 2) return false;
    }
  return true;
}

}  // namespace

int run_selftest(std::ostream& out) {
  const std::vector<std::pair<std::string, std::function<bool()>>> checks{
      {"closed form equals enumerated density", closed_form_matches},
      {"backtracking density equals all-maps sum", density_matches_brute_force},
      {"averaging over labeled extensions", averaging_identity},
      {"vertex-weight derivative equals boundary density", derivative_identity},
      {"blow-up and twin factorization round trip", factor_round_trip},
  };
  int failures = 0;
  for (const auto& [name, check] : checks) {
    const bool ok = check();
    failures += ok ? 0 : 1;
    out << (ok ? "[ok]   " : "[FAIL] ") << name << '\n';
  }
  return failures;
}

}  // namespace blowup
