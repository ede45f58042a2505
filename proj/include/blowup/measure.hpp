#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "blowup/graph.hpp"
#include "blowup/scalar.hpp"

namespace blowup {

/// Probability measure on {0..n-1} with every mass strictly positive.
class Measure {
 public:
  /// Throws PreconditionError unless all masses are positive and sum to 1.
  explicit Measure(RationalVector masses);

  static Measure uniform(std::size_t n);
  /// mu_k(v) = k(v) / |k|_1.
  static Measure proportional(const BlowupVector& k);

  std::size_t size() const { return static_cast<std::size_t>(masses_.size()); }
  const Rational& operator[](std::size_t v) const { return masses_[static_cast<Eigen::Index>(v)]; }
  const RationalVector& masses() const { return masses_; }
  Eigen::VectorXd to_double() const { return blowup::to_double(masses_); }

  friend bool operator==(const Measure& a, const Measure& b) {
    return a.masses_.size() == b.masses_.size() && a.masses_ == b.masses_;
  }

 private:
  RationalVector masses_;
};

/// Graph with a measure on its vertices (G^mu).
class WeightedGraph {
 public:
  WeightedGraph(Graph graph, Measure measure);

  static WeightedGraph uniform(Graph graph);

  const Graph& graph() const { return graph_; }
  const Measure& measure() const { return measure_; }
  std::size_t order() const { return graph_.order(); }

 private:
  Graph graph_;
  Measure measure_;
};

/// Weight files: a JSON object mapping vertex index strings to "p/q".
/// `order` is the number of vertices the measure must cover.
Measure parse_measure_json(std::string_view text, std::size_t order);
std::string write_measure_json(const Measure& m);

}  // namespace blowup
