#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "blowup/graph.hpp"
#include "blowup/measure.hpp"
#include "blowup/weighted.hpp"

namespace blowup {

/// psi restricted to V(G) - x is a strong homomorphism.
struct ExceptionSet {
  std::vector<Vertex> x;
};

/// Every pair (y1, y2) has A_G(y1,y2) != A_core(psi(y1), psi(y2)).
struct MismatchWitness {
  std::vector<Vertex> y1;
  std::vector<Vertex> y2;
};

using DichotomyOutcome = std::variant<ExceptionSet, MismatchWitness>;

/// Splits psi: V(blow_up(core, n k)) -> V(core) into one of the two cases
/// above. Ties resolve to the smallest index. For gamma > 1 the exception
/// set is all of V(G).
DichotomyOutcome dichotomy(const Graph& core, const BlowupVector& k, std::size_t n, const VertexMap& psi,
                           const Rational& gamma);

/// gamma * alpha(mu_k) / |V(core)| * |V(G)|, the witness size guarantee.
Rational dichotomy_threshold(const BlowupVector& k, std::size_t n, const Rational& gamma);

struct BoundCheck {
  std::string event;
  double empirical = 0;
  double bound = 0;
  std::size_t samples = 0;
  std::size_t hits = 0;
  double confidence_slack = 0;
  bool passed = false;
};

/// Samples of r i.i.d. mu-vertices; counts those whose positions contain
/// K_{ell,ell}. Bound 3^r delta^ell with delta = s(K2; j).
BoundCheck check_biclique_bound(const WeightedGraph& j, std::size_t r, std::size_t ell, std::size_t samples,
                                std::uint64_t seed, std::size_t jobs = 1);

/// Same sampling; event is a position of degree >= s inside the sample.
/// Bound 3^r delta eps^(s-1) with eps the largest neighborhood mass.
BoundCheck check_star_bound(const WeightedGraph& j, std::size_t r, std::size_t s, std::size_t samples,
                            std::uint64_t seed, std::size_t jobs = 1);

/// Samples per shard; each shard draws from its own (seed, shard) stream.
inline constexpr std::size_t kShardSamples = 4096;

struct ClosenessReport {
  Rational density;
  Rational threshold;
  bool hypothesis_holds = false;
  std::optional<D1Result> distance;
};

/// Compares s(core^(h k); gw) with half of s(core^(h k); core^(k)) and,
/// when it is at least that large, reports d1(gw, core^{mu_k}).
ClosenessReport closeness_probe(const Graph& core, const BlowupVector& k, std::size_t h, const WeightedGraph& gw);

}  // namespace blowup
