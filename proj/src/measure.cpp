#include "blowup/measure.hpp"

#include <json.hpp>

#include "blowup/errors.hpp"

namespace blowup {

Measure::Measure(RationalVector masses) : masses_(std::move(masses)) {
  if (masses_.size() == 0) throw PreconditionError("a measure needs at least one point");
  for (const auto& m : masses_)
    if (sgn(m) <= 0) throw PreconditionError("measure masses must be strictly positive");
  if (masses_.sum() != 1) throw PreconditionError("measure masses must sum to 1");
}

Measure Measure::uniform(std::size_t n) {
  if (n == 0) throw PreconditionError("a measure needs at least one point");
  return Measure(RationalVector::Constant(static_cast<Eigen::Index>(n), Rational(1, n)));
}

Measure Measure::proportional(const BlowupVector& k) {
  RationalVector m(static_cast<Eigen::Index>(k.size()));
  const Rational total(k.l1_norm());
  for (std::size_t v = 0; v < k.size(); ++v) m[static_cast<Eigen::Index>(v)] = Rational(k[v]) / total;
  return Measure(std::move(m));
}

WeightedGraph::WeightedGraph(Graph graph, Measure measure)
    : graph_(std::move(graph)), measure_(std::move(measure)) {
  if (graph_.order() != measure_.size())
    throw PreconditionError("measure must have one mass per vertex");
}

WeightedGraph WeightedGraph::uniform(Graph graph) {
  Measure m = Measure::uniform(graph.order());
  return WeightedGraph(std::move(graph), std::move(m));
}

Measure parse_measure_json(std::string_view text, std::size_t order) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("weights: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("weights: expected a JSON object");
  RationalVector masses(static_cast<Eigen::Index>(order));
  std::vector<bool> seen(order, false);
  for (const auto& [key, value] : doc.items()) {
    std::size_t v = 0;
    try {
      std::size_t used = 0;
      v = std::stoul(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw ParseError("weights: invalid vertex key '" + key + "'");
    }
    if (v >= order) throw ParseError("weights: vertex " + key + " out of range");
    if (!value.is_string()) throw ParseError("weights: mass of vertex " + key + " must be a \"p/q\" string");
    masses[static_cast<Eigen::Index>(v)] = parse_rational(value.get<std::string>());
    seen[v] = true;
  }
  for (std::size_t v = 0; v < order; ++v)
    if (!seen[v]) throw ParseError("weights: missing mass for vertex " + std::to_string(v));
  try {
    return Measure(std::move(masses));
  } catch (const PreconditionError& e) {
    throw ParseError(std::string("weights: ") + e.what());
  }
}

std::string write_measure_json(const Measure& m) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  for (std::size_t v = 0; v < m.size(); ++v) doc[std::to_string(v)] = to_string(m[v]);
  return doc.dump();
}

}  // namespace blowup
