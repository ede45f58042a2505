#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "blowup/graph.hpp"
#include "blowup/measure.hpp"
#include "blowup/scalar.hpp"

namespace blowup {

/// Fixes the image of one pattern vertex during homomorphism enumeration.
struct Pin {
  Vertex source;
  Vertex image;
};

/// Sum over strong homomorphisms psi: pattern -> target that agree with
/// `pins` of the product of weights[psi(v)] over the unpinned vertices.
/// Enumeration is backtracking over candidate bitmasks, most constrained
/// vertex first; it never walks the full |V(target)|^|V(pattern)| space.
template <typename Scalar>
Scalar strong_hom_sum(const Graph& pattern, const Graph& target, const Vector<Scalar>& weights,
                      std::span<const Pin> pins = {});

extern template Rational strong_hom_sum<Rational>(const Graph&, const Graph&, const Vector<Rational>&,
                                                  std::span<const Pin>);
extern template double strong_hom_sum<double>(const Graph&, const Graph&, const Vector<double>&,
                                              std::span<const Pin>);

Natural count_strong_homs(const Graph& pattern, const Graph& target);
/// Injective strong homomorphisms.
Natural count_embeddings(const Graph& pattern, const Graph& target);

/// Number of vertex subsets S with g[S] isomorphic to h. Uses subset
/// enumeration up to 10 target vertices and embeddings / |Aut(h)| beyond.
Natural count_induced(const Graph& h, const Graph& g);
Natural count_induced_by_subsets(const Graph& h, const Graph& g);
Natural count_induced_by_embeddings(const Graph& h, const Graph& g);

/// count_induced(h, g) / C(|V(g)|, |V(h)|). Requires |V(h)| <= |V(g)|.
Rational induced_density(const Graph& h, const Graph& g);

/// s(h; g^mu): probability that an independent mu-random map is a strong hom.
Rational strong_hom_density(const Graph& h, const WeightedGraph& gw);

/// Polynomial extension of strong_hom_density in arbitrary nonnegative
/// vertex weights (they need not sum to 1).
Rational polynomial_eval(const Graph& h, const Graph& g, const RationalVector& w);

class PartiallyLabeledGraph {
 public:
  /// labeled[i] is the vertex carrying label i + 1.
  PartiallyLabeledGraph(Graph graph, std::vector<Vertex> labeled);

  const Graph& graph() const { return graph_; }
  const std::vector<Vertex>& labeled() const { return labeled_; }
  std::size_t label_count() const { return labeled_.size(); }

 private:
  Graph graph_;
  std::vector<Vertex> labeled_;
};

/// s(f, phi; g^mu) where phi[i] is the image of label i + 1.
Rational labeled_density(const PartiallyLabeledGraph& f, const VertexMap& phi, const WeightedGraph& gw);
Rational labeled_polynomial_eval(const PartiallyLabeledGraph& f, const VertexMap& phi, const Graph& g,
                                 const RationalVector& w);

struct QuantumTerm {
  Rational coefficient;
  PartiallyLabeledGraph graph;
};

/// Formal rational combination of k-partially labeled graphs sharing k.
class QuantumGraph {
 public:
  explicit QuantumGraph(std::size_t label_count) : label_count_(label_count) {}

  void add(Rational coefficient, PartiallyLabeledGraph graph);

  std::size_t label_count() const { return label_count_; }
  const std::vector<QuantumTerm>& terms() const { return terms_; }

 private:
  std::size_t label_count_;
  std::vector<QuantumTerm> terms_;
};

Rational quantum_density(const QuantumGraph& f, const VertexMap& phi, const WeightedGraph& gw);
Rational quantum_polynomial_eval(const QuantumGraph& f, const VertexMap& phi, const Graph& g,
                                 const RationalVector& w);

/// Sum over u of h with u carrying label 1.
QuantumGraph boundary(const Graph& h);

}  // namespace blowup
