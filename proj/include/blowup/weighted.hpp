#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "blowup/graph.hpp"
#include "blowup/measure.hpp"
#include "blowup/scalar.hpp"

namespace blowup {

/// alpha(mu): the smallest mass.
Rational alpha(const Measure& m);

/// Twin-free core of a weighted graph with each twin class collapsed to
/// one vertex carrying the class mass. Strong-hom densities are unchanged.
struct WeightedQuotient {
  WeightedGraph core;
  VertexMap class_of;
};

WeightedQuotient quotient(const WeightedGraph& gw);

struct ClassMatch {
  Vertex vertex;
  Rational mass1;
  Rational mass2;
};

struct EquivalenceWitness {
  /// Isomorphism between the two cores.
  VertexMap iso;
  std::vector<ClassMatch> classes;
};

/// A core isomorphism preserving class masses, if one exists.
std::optional<EquivalenceWitness> are_equivalent(const WeightedGraph& a, const WeightedGraph& b);

/// Sum over ordered pairs of mu(u) mu(v) |A1(u,v) - A2(u,v)|.
/// Throws PreconditionError unless both graphs share order and measure.
Rational d1_commensurable(const WeightedGraph& a, const WeightedGraph& b);

struct D1Result {
  Rational upper;
  bool certified_exact = false;
};

/// d1 as a minimum over couplings of the two class-mass vectors. Exact when
/// both cores have at most 3 vertices; otherwise an upper bound from local
/// mass-transfer search whose step candidates include multiples of 1/grid.
D1Result d1_distance(const WeightedGraph& a, const WeightedGraph& b, std::size_t grid = 16);

/// Quadratic objective of a coupling: sum over cell pairs of
/// M(i,j) M(i',j') |A1(i,i') - A2(j,j')|.
Rational coupling_cost(const Graph& core1, const Graph& core2, const Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>& m);

struct RegularityReport {
  Vertex vertex;
  std::optional<Vertex> witness;
  Rational discrepancy;
};

/// Smallest mu-mass of {u : A_g(v0,u) != A_f(v,u)} over v in f, with the
/// smallest minimizing v as witness.
RegularityReport regularity(Vertex v0, const Graph& g, const Graph& f, const Measure& m);

struct ContinuityGap {
  Rational lhs;
  Rational rhs;
};

/// lhs = |s(h; a) - s(h; b)|, rhs = |V(h)|^2 d1(a, b) for commensurable a, b.
ContinuityGap continuity_gap(const Graph& h, const WeightedGraph& a, const WeightedGraph& b);

}  // namespace blowup
