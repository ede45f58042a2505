#include "blowup/density.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "blowup/canonical.hpp"
#include "blowup/errors.hpp"

namespace blowup {

namespace {

using Word = Graph::Word;

template <typename Scalar>
struct VectorWeights {
  const Vector<Scalar>& w;
  Scalar at(Vertex t) const { return w[static_cast<Eigen::Index>(t)]; }
  Scalar sum(std::span<const Word> mask) const {
    Scalar s(0);
    for (std::size_t i = 0; i < mask.size(); ++i)
      for (Word m = mask[i]; m; m &= m - 1) s += at(static_cast<Vertex>(64 * i + std::countr_zero(m)));
    return s;
  }
};

template <typename Scalar>
struct UnitWeights {
  Scalar at(Vertex) const { return Scalar(1); }
  Scalar sum(std::span<const Word> mask) const {
    std::size_t c = 0;
    for (Word m : mask) c += static_cast<std::size_t>(std::popcount(m));
    return Scalar(static_cast<unsigned long>(c));
  }
};

// Backtracking over candidate masks. A free vertex u may go to t iff for
// every placed v: adj(u, v) == adj(t, image(v)), and t != image(v) when
// injective. Non-adjacent pattern vertices may share an image.
template <typename Scalar, typename Weights>
class HomSum {
 public:
  HomSum(const Graph& pattern, const Graph& target, Weights weights, std::span<const Pin> pins, bool injective)
      : p_(pattern), g_(target), w_(std::move(weights)), injective_(injective),
        image_(pattern.order(), 0), placed_(pattern.order(), false) {
    for (auto [u, t] : pins) {
      if (u >= p_.order() || t >= g_.order()) throw PreconditionError("pin out of range");
      if (placed_[u]) throw PreconditionError("vertex pinned twice");
      placed_[u] = true;
      image_[u] = t;
      fixed_.push_back(u);
    }
    plan();
  }

  Scalar run() {
    for (std::size_t i = 0; i < fixed_.size(); ++i)
      for (std::size_t j = i + 1; j < fixed_.size(); ++j) {
        const Vertex a = fixed_[i], b = fixed_[j];
        const Vertex ta = image_[a], tb = image_[b];
        if (injective_ && ta == tb) return Scalar(0);
        if (p_.adjacent(a, b) != (ta != tb && g_.adjacent(ta, tb))) return Scalar(0);
      }
    if (g_.order() == 0) return order_.empty() ? Scalar(1) : Scalar(0);
    mask_.assign((order_.size() + 1) * g_.words(), 0);
    return recurse(0);
  }

 private:
  void plan() {
    std::vector<bool> chosen = placed_;
    while (order_.size() + fixed_.size() < p_.order()) {
      Vertex best = 0;
      long best_links = -1;
      std::size_t best_degree = 0;
      for (Vertex u = 0; u < p_.order(); ++u) {
        if (chosen[u]) continue;
        long links = 0;
        for (Vertex v = 0; v < p_.order(); ++v)
          if (chosen[v] && p_.adjacent(u, v)) ++links;
        const std::size_t d = p_.degree(u);
        if (best_links < 0 || d > best_degree || (d == best_degree && links > best_links)) {
          best = u;
          best_links = links;
          best_degree = d;
        }
      }
      chosen[best] = true;
      order_.push_back(best);
    }
  }

  std::span<Word> mask(std::size_t depth) { return {mask_.data() + depth * g_.words(), g_.words()}; }

  void candidates(Vertex u, std::size_t depth) {
    auto m = mask(depth);
    const std::size_t n = g_.order();
    std::fill(m.begin(), m.end(), ~Word(0));
    if (n % 64) m.back() = (Word(1) << (n % 64)) - 1;
    auto restrict_by = [&](Vertex v) {
      const auto row = g_.row(image_[v]);
      if (p_.adjacent(u, v)) {
        for (std::size_t i = 0; i < m.size(); ++i) m[i] &= row[i];
      } else {
        for (std::size_t i = 0; i < m.size(); ++i) m[i] &= ~row[i];
      }
      if (injective_) m[image_[v] >> 6] &= ~(Word(1) << (image_[v] & 63));
    };
    for (Vertex v : fixed_) restrict_by(v);
    for (std::size_t d = 0; d < depth; ++d) restrict_by(order_[d]);
  }

  Scalar recurse(std::size_t depth) {
    if (depth == order_.size()) return Scalar(1);
    const Vertex u = order_[depth];
    candidates(u, depth);
    auto m = mask(depth);
    if (depth + 1 == order_.size()) return w_.sum(m);
    Scalar total(0);
    for (std::size_t i = 0; i < m.size(); ++i)
      for (Word bits = m[i]; bits; bits &= bits - 1) {
        const auto t = static_cast<Vertex>(64 * i + std::countr_zero(bits));
        image_[u] = t;
        Scalar rest = recurse(depth + 1);
        if (rest != Scalar(0)) total += w_.at(t) * rest;
      }
    return total;
  }

  const Graph& p_;
  const Graph& g_;
  Weights w_;
  bool injective_;
  VertexMap image_;
  std::vector<bool> placed_;
  std::vector<Vertex> fixed_;
  std::vector<Vertex> order_;
  std::vector<Word> mask_;
};

// Counts fit in 64 bits when n^p < 2^63.
bool fits_u64(std::size_t pattern_order, std::size_t target_order) {
  return target_order <= 1 ||
         static_cast<double>(pattern_order) * std::log2(static_cast<double>(target_order)) < 62.0;
}

Natural count(const Graph& pattern, const Graph& target, bool injective) {
  if (fits_u64(pattern.order(), target.order())) {
    HomSum<std::uint64_t, UnitWeights<std::uint64_t>> sum(pattern, target, {}, {}, injective);
    const std::uint64_t c = sum.run();
    return Natural(std::to_string(c));
  }
  HomSum<Natural, UnitWeights<Natural>> sum(pattern, target, {}, {}, injective);
  return sum.run();
}

void check_weights(const Graph& g, const RationalVector& w) {
  if (static_cast<std::size_t>(w.size()) != g.order())
    throw PreconditionError("weight vector must have one entry per target vertex");
  for (const auto& x : w)
    if (sgn(x) < 0) throw PreconditionError("weights must be nonnegative");
}

std::vector<Pin> pins_for(const PartiallyLabeledGraph& f, const VertexMap& phi, const Graph& g) {
  if (phi.size() != f.label_count()) throw PreconditionError("label map has the wrong length");
  std::vector<Pin> pins;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    if (phi[i] >= g.order()) throw PreconditionError("label image out of range");
    pins.push_back({f.labeled()[i], phi[i]});
  }
  return pins;
}

}  // namespace

template <typename Scalar>
Scalar strong_hom_sum(const Graph& pattern, const Graph& target, const Vector<Scalar>& weights,
                      std::span<const Pin> pins) {
  if (static_cast<std::size_t>(weights.size()) != target.order())
    throw PreconditionError("weight vector must have one entry per target vertex");
  HomSum<Scalar, VectorWeights<Scalar>> sum(pattern, target, VectorWeights<Scalar>{weights}, pins, false);
  return sum.run();
}

template Rational strong_hom_sum<Rational>(const Graph&, const Graph&, const Vector<Rational>&,
                                           std::span<const Pin>);
template double strong_hom_sum<double>(const Graph&, const Graph&, const Vector<double>&, std::span<const Pin>);

Natural count_strong_homs(const Graph& pattern, const Graph& target) { return count(pattern, target, false); }

Natural count_embeddings(const Graph& pattern, const Graph& target) { return count(pattern, target, true); }

Natural count_induced_by_subsets(const Graph& h, const Graph& g) {
  const std::size_t k = h.order(), n = g.order();
  if (k > n) return 0;
  const Graph target = canonical_form(h);
  const std::size_t edges = h.edge_count();
  Natural total = 0;
  std::vector<Vertex> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = static_cast<Vertex>(i);
  while (true) {
    const Graph sub = g.induced(pick);
    if (sub.edge_count() == edges && canonical_form(sub) == target) ++total;
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return total;
}

Natural count_induced_by_embeddings(const Graph& h, const Graph& g) {
  if (h.order() > g.order()) return 0;
  return count_embeddings(h, g) / Natural(static_cast<unsigned long>(automorphism_count(h)));
}

Natural count_induced(const Graph& h, const Graph& g) {
  return g.order() <= 10 ? count_induced_by_subsets(h, g) : count_induced_by_embeddings(h, g);
}

Rational induced_density(const Graph& h, const Graph& g) {
  if (h.order() > g.order()) throw PreconditionError("pattern has more vertices than the target");
  return ratio(count_induced(h, g), binomial(g.order(), h.order()));
}

Rational strong_hom_density(const Graph& h, const WeightedGraph& gw) {
  return strong_hom_sum<Rational>(h, gw.graph(), gw.measure().masses());
}

Rational polynomial_eval(const Graph& h, const Graph& g, const RationalVector& w) {
  check_weights(g, w);
  return strong_hom_sum<Rational>(h, g, w);
}

PartiallyLabeledGraph::PartiallyLabeledGraph(Graph graph, std::vector<Vertex> labeled)
    : graph_(std::move(graph)), labeled_(std::move(labeled)) {
  std::vector<bool> seen(graph_.order(), false);
  for (Vertex v : labeled_) {
    if (v >= graph_.order()) throw PreconditionError("labeled vertex out of range");
    if (seen[v]) throw PreconditionError("labeled vertices must be distinct");
    seen[v] = true;
  }
}

Rational labeled_polynomial_eval(const PartiallyLabeledGraph& f, const VertexMap& phi, const Graph& g,
                                 const RationalVector& w) {
  check_weights(g, w);
  const auto pins = pins_for(f, phi, g);
  return strong_hom_sum<Rational>(f.graph(), g, w, pins);
}

Rational labeled_density(const PartiallyLabeledGraph& f, const VertexMap& phi, const WeightedGraph& gw) {
  const auto pins = pins_for(f, phi, gw.graph());
  return strong_hom_sum<Rational>(f.graph(), gw.graph(), gw.measure().masses(), pins);
}

void QuantumGraph::add(Rational coefficient, PartiallyLabeledGraph graph) {
  if (graph.label_count() != label_count_)
    throw PreconditionError("all terms of a quantum graph need the same number of labels");
  terms_.push_back({std::move(coefficient), std::move(graph)});
}

Rational quantum_polynomial_eval(const QuantumGraph& f, const VertexMap& phi, const Graph& g,
                                 const RationalVector& w) {
  Rational total = 0;
  for (const auto& term : f.terms()) total += term.coefficient * labeled_polynomial_eval(term.graph, phi, g, w);
  return total;
}

Rational quantum_density(const QuantumGraph& f, const VertexMap& phi, const WeightedGraph& gw) {
  Rational total = 0;
  for (const auto& term : f.terms()) total += term.coefficient * labeled_density(term.graph, phi, gw);
  return total;
}

QuantumGraph boundary(const Graph& h) {
  QuantumGraph q(1);
  for (Vertex u = 0; u < h.order(); ++u) q.add(1, PartiallyLabeledGraph(h, {u}));
  return q;
}

}  // namespace blowup
