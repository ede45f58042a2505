#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "blowup/graph.hpp"

namespace blowup {

/// Ordered partition of a vertex set into cells.
using OrderedPartition = std::vector<std::vector<Vertex>>;

/// Coarsest equitable refinement of `cells`: every vertex of a cell has the
/// same number of neighbors in every other cell. The resulting cell order
/// depends only on the isomorphism type of (g, cells).
OrderedPartition refine(const Graph& g, OrderedPartition cells);

struct CanonicalLabeling {
  /// order[i] is the vertex of g placed at position i of the canonical form.
  VertexMap order;
  Graph form;
};

/// Individualization-refinement search for the labeling whose upper-triangle
/// adjacency bits are lexicographically least. Automorphisms found along the
/// way (and all twin transpositions) prune equivalent branches.
CanonicalLabeling canonical_labeling(const Graph& g);

Graph canonical_form(const Graph& g);

bool is_isomorphic(const Graph& g1, const Graph& g2);

/// Called for each isomorphism; return false to stop the search.
using IsomorphismVisitor = std::function<bool(const VertexMap&)>;
/// Extra admissibility test for mapping u in g1 to t in g2.
using VertexCompatibility = std::function<bool(Vertex u, Vertex t)>;

/// Visits every isomorphism g1 -> g2 (subject to `compatible`) in
/// lexicographic order of the image vectors.
void for_each_isomorphism(const Graph& g1, const Graph& g2, const IsomorphismVisitor& visit,
                          const VertexCompatibility& compatible = {});

std::optional<VertexMap> find_isomorphism(const Graph& g1, const Graph& g2);

/// Aut(g), sorted lexicographically. Intended for graphs of at most ~12 vertices.
std::vector<VertexMap> automorphisms(const Graph& g);

std::size_t automorphism_count(const Graph& g);

}  // namespace blowup
