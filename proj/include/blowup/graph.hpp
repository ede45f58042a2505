#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace blowup {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Total map V(H) -> V(G); entry i is the image of vertex i.
using VertexMap = std::vector<Vertex>;

/// Finite simple undirected graph. Each vertex owns a packed bit row of
/// its neighborhood, so neighborhood comparisons cost O(n / 64).
class Graph {
 public:
  using Word = std::uint64_t;

  Graph() = default;
  explicit Graph(std::size_t order);
  Graph(std::size_t order, std::span<const Edge> edges);
  Graph(std::size_t order, std::initializer_list<Edge> edges);

  std::size_t order() const { return order_; }
  std::size_t words() const { return words_; }

  bool adjacent(Vertex u, Vertex v) const {
    return (bits_[u * words_ + (v >> 6)] >> (v & 63)) & 1U;
  }

  /// Sets or clears the edge uv. Loops are rejected.
  void set_edge(Vertex u, Vertex v, bool present = true);
  void toggle_edge(Vertex u, Vertex v) { set_edge(u, v, !adjacent(u, v)); }

  std::span<const Word> row(Vertex v) const {
    return {bits_.data() + v * words_, words_};
  }

  std::size_t degree(Vertex v) const;
  std::size_t edge_count() const;
  /// Edges as (u, v) with u < v, in lexicographic order.
  std::vector<Edge> edges() const;
  std::vector<std::size_t> degree_sequence() const;

  bool twins(Vertex u, Vertex v) const;
  bool twin_free() const;

  /// Subgraph induced on `vertices`; vertex i of the result is vertices[i].
  Graph induced(std::span<const Vertex> vertices) const;
  /// Relabeled copy where vertex i of the result is vertex order[i] here.
  Graph permuted(std::span<const Vertex> order) const;
  /// Copy with one extra vertex joined to `neighbors`.
  Graph with_vertex(std::span<const Vertex> neighbors) const;
  Graph without_vertex(Vertex v) const;
  Graph complement() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::size_t order_ = 0;
  std::size_t words_ = 0;
  std::vector<Word> bits_;
};

Graph empty_graph(std::size_t n);
Graph complete_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph path_graph(std::size_t n);
Graph complete_bipartite(std::size_t a, std::size_t b);
Graph star_graph(std::size_t leaves);

/// Positive multiplicity per vertex of a core graph.
class BlowupVector {
 public:
  BlowupVector() = default;
  /// Throws PreconditionError if any entry is zero.
  explicit BlowupVector(std::vector<std::size_t> multiplicities);
  BlowupVector(std::initializer_list<std::size_t> multiplicities)
      : BlowupVector(std::vector<std::size_t>(multiplicities)) {}

  static BlowupVector ones(std::size_t n) {
    return BlowupVector(std::vector<std::size_t>(n, 1));
  }

  std::size_t size() const { return values_.size(); }
  std::size_t operator[](std::size_t v) const { return values_[v]; }
  const std::vector<std::size_t>& values() const { return values_; }
  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  std::size_t l1_norm() const;
  BlowupVector scaled(std::size_t h) const;
  /// sigma(k)(v) = k(sigma(v)).
  BlowupVector composed(const VertexMap& sigma) const;

  friend bool operator==(const BlowupVector&, const BlowupVector&) = default;

 private:
  std::vector<std::size_t> values_;
};

struct TwinDecomposition {
  Graph core;
  BlowupVector multiplicities;
  /// Core vertex of every original vertex (the canonical strong hom).
  VertexMap class_of;
};

/// Replaces core vertex v by k(v) independent copies. Copies of vertex 0
/// come first, then copies of vertex 1, and so on.
Graph blow_up(const Graph& core, const BlowupVector& k);

/// The canonical projection V(blow_up(core, k)) -> V(core).
VertexMap blow_up_projection(const BlowupVector& k);

/// Quotient by the twin relation. Core vertices are ordered by the smallest
/// original vertex of each class.
TwinDecomposition twin_free_factor(const Graph& g);

bool is_strong_hom(const VertexMap& phi, const Graph& h, const Graph& g);

VertexMap identity_map(std::size_t n);
VertexMap compose(const VertexMap& outer, const VertexMap& inner);
VertexMap inverse(const VertexMap& permutation);

}  // namespace blowup
