#include "blowup/graph.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <string>

#include "blowup/errors.hpp"

namespace blowup {

Graph::Graph(std::size_t order)
    : order_(order), words_((order + 63) / 64), bits_(order * words_, 0) {}

Graph::Graph(std::size_t order, std::span<const Edge> edges) : Graph(order) {
  for (auto [u, v] : edges) set_edge(u, v);
}

Graph::Graph(std::size_t order, std::initializer_list<Edge> edges)
    : Graph(order, std::span<const Edge>(edges.begin(), edges.size())) {}

void Graph::set_edge(Vertex u, Vertex v, bool present) {
  if (u >= order_ || v >= order_)
    throw PreconditionError("edge endpoint out of range");
  if (u == v) throw PreconditionError("loops are not allowed");
  const Word bu = Word{1} << (u & 63), bv = Word{1} << (v & 63);
  if (present) {
    bits_[u * words_ + (v >> 6)] |= bv;
    bits_[v * words_ + (u >> 6)] |= bu;
  } else {
    bits_[u * words_ + (v >> 6)] &= ~bv;
    bits_[v * words_ + (u >> 6)] &= ~bu;
  }
}

std::size_t Graph::degree(Vertex v) const {
  std::size_t d = 0;
  for (Word w : row(v)) d += std::popcount(w);
  return d;
}

std::size_t Graph::edge_count() const {
  std::size_t total = 0;
  for (Word w : bits_) total += std::popcount(w);
  return total / 2;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  for (Vertex u = 0; u < order_; ++u)
    for (Vertex v = u + 1; v < order_; ++v)
      if (adjacent(u, v)) out.emplace_back(u, v);
  return out;
}

std::vector<std::size_t> Graph::degree_sequence() const {
  std::vector<std::size_t> d(order_);
  for (Vertex v = 0; v < order_; ++v) d[v] = degree(v);
  std::sort(d.begin(), d.end(), std::greater<>());
  return d;
}

bool Graph::twins(Vertex u, Vertex v) const {
  auto a = row(u), b = row(v);
  return std::equal(a.begin(), a.end(), b.begin());
}

bool Graph::twin_free() const {
  for (Vertex u = 0; u < order_; ++u)
    for (Vertex v = u + 1; v < order_; ++v)
      if (twins(u, v)) return false;
  return true;
}

Graph Graph::induced(std::span<const Vertex> vertices) const {
  Graph sub(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      if (adjacent(vertices[i], vertices[j]))
        sub.set_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
  return sub;
}

Graph Graph::permuted(std::span<const Vertex> order) const {
  if (order.size() != order_) throw PreconditionError("permutation size mismatch");
  return induced(order);
}

Graph Graph::with_vertex(std::span<const Vertex> neighbors) const {
  Graph g(order_ + 1);
  for (auto [u, v] : edges()) g.set_edge(u, v);
  for (Vertex u : neighbors) g.set_edge(u, static_cast<Vertex>(order_));
  return g;
}

Graph Graph::without_vertex(Vertex v) const {
  std::vector<Vertex> keep;
  keep.reserve(order_ - 1);
  for (Vertex u = 0; u < order_; ++u)
    if (u != v) keep.push_back(u);
  return induced(keep);
}

Graph Graph::complement() const {
  Graph c(order_);
  for (Vertex u = 0; u < order_; ++u)
    for (Vertex v = u + 1; v < order_; ++v)
      if (!adjacent(u, v)) c.set_edge(u, v);
  return c;
}

Graph empty_graph(std::size_t n) { return Graph(n); }

Graph complete_graph(std::size_t n) { return Graph(n).complement(); }

Graph cycle_graph(std::size_t n) {
  Graph g(n);
  if (n < 3) throw PreconditionError("cycle needs at least 3 vertices");
  for (Vertex v = 0; v < n; ++v) g.set_edge(v, static_cast<Vertex>((v + 1) % n));
  return g;
}

Graph path_graph(std::size_t n) {
  Graph g(n);
  for (Vertex v = 0; v + 1 < n; ++v) g.set_edge(v, v + 1);
  return g;
}

Graph complete_bipartite(std::size_t a, std::size_t b) {
  Graph g(a + b);
  for (Vertex u = 0; u < a; ++u)
    for (Vertex v = 0; v < b; ++v) g.set_edge(u, static_cast<Vertex>(a + v));
  return g;
}

Graph star_graph(std::size_t leaves) { return complete_bipartite(1, leaves); }

BlowupVector::BlowupVector(std::vector<std::size_t> multiplicities)
    : values_(std::move(multiplicities)) {
  for (std::size_t m : values_)
    if (m < 1) throw PreconditionError("blow-up multiplicities must be >= 1");
}

std::size_t BlowupVector::l1_norm() const {
  return std::accumulate(values_.begin(), values_.end(), std::size_t{0});
}

BlowupVector BlowupVector::scaled(std::size_t h) const {
  if (h < 1) throw PreconditionError("blow-up factor must be >= 1");
  std::vector<std::size_t> out(values_);
  for (auto& m : out) m *= h;
  return BlowupVector(std::move(out));
}

BlowupVector BlowupVector::composed(const VertexMap& sigma) const {
  std::vector<std::size_t> out(values_.size());
  for (std::size_t v = 0; v < out.size(); ++v) out[v] = values_[sigma[v]];
  return BlowupVector(std::move(out));
}

VertexMap blow_up_projection(const BlowupVector& k) {
  VertexMap pi;
  pi.reserve(k.l1_norm());
  for (std::size_t v = 0; v < k.size(); ++v)
    pi.insert(pi.end(), k[v], static_cast<Vertex>(v));
  return pi;
}

Graph blow_up(const Graph& core, const BlowupVector& k) {
  if (k.size() != core.order())
    throw PreconditionError("blow-up vector must have one entry per core vertex");
  const VertexMap pi = blow_up_projection(k);
  Graph g(pi.size());
  for (Vertex a = 0; a < pi.size(); ++a)
    for (Vertex b = a + 1; b < pi.size(); ++b)
      if (core.adjacent(pi[a], pi[b])) g.set_edge(a, b);
  return g;
}

TwinDecomposition twin_free_factor(const Graph& g) {
  std::map<std::vector<Graph::Word>, Vertex> class_by_row;
  std::vector<Vertex> representative;
  std::vector<std::size_t> sizes;
  VertexMap class_of(g.order());
  for (Vertex v = 0; v < g.order(); ++v) {
    auto r = g.row(v);
    std::vector<Graph::Word> key(r.begin(), r.end());
    auto [it, inserted] = class_by_row.try_emplace(std::move(key),
                                                   static_cast<Vertex>(representative.size()));
    if (inserted) {
      representative.push_back(v);
      sizes.push_back(0);
    }
    class_of[v] = it->second;
    ++sizes[it->second];
  }
  return {g.induced(representative), BlowupVector(std::move(sizes)), std::move(class_of)};
}

bool is_strong_hom(const VertexMap& phi, const Graph& h, const Graph& g) {
  if (phi.size() != h.order()) return false;
  for (Vertex x : phi)
    if (x >= g.order()) return false;
  for (Vertex u = 0; u < h.order(); ++u)
    for (Vertex v = u + 1; v < h.order(); ++v) {
      const bool target = phi[u] != phi[v] && g.adjacent(phi[u], phi[v]);
      if (h.adjacent(u, v) != target) return false;
    }
  return true;
}

VertexMap identity_map(std::size_t n) {
  VertexMap id(n);
  std::iota(id.begin(), id.end(), Vertex{0});
  return id;
}

VertexMap compose(const VertexMap& outer, const VertexMap& inner) {
  VertexMap out(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i) out[i] = outer[inner[i]];
  return out;
}

VertexMap inverse(const VertexMap& permutation) {
  VertexMap inv(permutation.size());
  for (std::size_t i = 0; i < permutation.size(); ++i)
    inv[permutation[i]] = static_cast<Vertex>(i);
  return inv;
}

}  // namespace blowup
