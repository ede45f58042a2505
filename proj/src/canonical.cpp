#include "blowup/canonical.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace blowup {

namespace {

using Word = Graph::Word;

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

bool fixes_pointwise(const VertexMap& gen, const std::vector<Vertex>& points) {
  return std::all_of(points.begin(), points.end(), [&](Vertex p) { return gen[p] == p; });
}

// Upper-triangle adjacency bits, column by column, packed MSB-first so that
// comparing the word vectors compares the bit strings lexicographically.
std::vector<Word> encode(const Graph& g, const VertexMap& order) {
  const std::size_t n = order.size();
  const std::size_t bits = n * (n - (n > 0 ? 1 : 0)) / 2;
  std::vector<Word> code((bits + 63) / 64, 0);
  std::size_t pos = 0;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i, ++pos)
      if (g.adjacent(order[i], order[j])) code[pos / 64] |= Word{1} << (63 - pos % 64);
  return code;
}

class CanonicalSearch {
 public:
  explicit CanonicalSearch(const Graph& g) : g_(g) { add_twin_generators(); }

  CanonicalLabeling run() {
    OrderedPartition root;
    if (g_.order() > 0) root.push_back(identity_map(g_.order()));
    std::vector<Vertex> prefix;
    search(refine(g_, std::move(root)), prefix);
    return {best_order_, g_.permuted(best_order_)};
  }

 private:
  void add_twin_generators() {
    const std::size_t n = g_.order();
    auto add_classes = [&](auto&& same) {
      std::vector<bool> seen(n, false);
      for (Vertex u = 0; u < n; ++u) {
        if (seen[u]) continue;
        Vertex last = u;
        for (Vertex v = u + 1; v < n; ++v) {
          if (seen[v] || !same(u, v)) continue;
          seen[v] = true;
          VertexMap swap = identity_map(n);
          std::swap(swap[last], swap[v]);
          generators_.push_back(std::move(swap));
          last = v;
        }
      }
    };
    add_classes([&](Vertex u, Vertex v) { return g_.twins(u, v); });
    add_classes([&](Vertex u, Vertex v) {
      if (!g_.adjacent(u, v)) return false;
      for (Vertex w = 0; w < n; ++w)
        if (w != u && w != v && g_.adjacent(u, w) != g_.adjacent(v, w)) return false;
      return true;
    });
  }

  void search(const OrderedPartition& cells, std::vector<Vertex>& prefix) {
    auto target = std::find_if(cells.begin(), cells.end(),
                               [](const auto& c) { return c.size() > 1; });
    if (target == cells.end()) {
      leaf(cells);
      return;
    }
    const std::size_t t = static_cast<std::size_t>(target - cells.begin());
    std::vector<Vertex> tried;
    for (Vertex v : cells[t]) {
      if (!tried.empty() && equivalent_to_tried(v, tried, prefix)) continue;
      tried.push_back(v);
      OrderedPartition child;
      child.reserve(cells.size() + 1);
      for (std::size_t c = 0; c < cells.size(); ++c) {
        if (c != t) {
          child.push_back(cells[c]);
          continue;
        }
        child.push_back({v});
        std::vector<Vertex> rest;
        for (Vertex w : cells[c])
          if (w != v) rest.push_back(w);
        child.push_back(std::move(rest));
      }
      prefix.push_back(v);
      search(refine(g_, std::move(child)), prefix);
      prefix.pop_back();
    }
  }

  bool equivalent_to_tried(Vertex v, const std::vector<Vertex>& tried,
                           const std::vector<Vertex>& prefix) const {
    UnionFind orbits(g_.order());
    bool any = false;
    for (const auto& gen : generators_) {
      if (!fixes_pointwise(gen, prefix)) continue;
      any = true;
      for (Vertex x = 0; x < gen.size(); ++x) orbits.unite(x, gen[x]);
    }
    if (!any) return false;
    const std::size_t root = orbits.find(v);
    return std::any_of(tried.begin(), tried.end(),
                       [&](Vertex w) { return orbits.find(w) == root; });
  }

  void leaf(const OrderedPartition& cells) {
    VertexMap order;
    order.reserve(cells.size());
    for (const auto& c : cells) order.push_back(c.front());
    auto code = encode(g_, order);
    if (!have_best_ || code < best_code_) {
      have_best_ = true;
      best_code_ = std::move(code);
      best_order_ = std::move(order);
    } else if (code == best_code_) {
      // best_order_[i] -> order[i] is an automorphism.
      VertexMap gen(g_.order());
      for (std::size_t i = 0; i < order.size(); ++i) gen[best_order_[i]] = order[i];
      if (gen != identity_map(g_.order()) &&
          std::find(generators_.begin(), generators_.end(), gen) == generators_.end())
        generators_.push_back(std::move(gen));
    }
  }

  const Graph& g_;
  std::vector<VertexMap> generators_;
  bool have_best_ = false;
  std::vector<Word> best_code_;
  VertexMap best_order_;
};

}  // namespace

OrderedPartition refine(const Graph& g, OrderedPartition cells) {
  const std::size_t n = g.order();
  const std::size_t words = g.words();
  while (true) {
    const std::size_t c_count = cells.size();
    std::vector<Word> masks(c_count * words, 0);
    for (std::size_t c = 0; c < c_count; ++c)
      for (Vertex v : cells[c]) masks[c * words + (v >> 6)] |= Word{1} << (v & 63);

    std::vector<std::uint32_t> signature(n * c_count, 0);
    for (Vertex v = 0; v < n; ++v) {
      auto row = g.row(v);
      for (std::size_t c = 0; c < c_count; ++c) {
        std::uint32_t count = 0;
        for (std::size_t w = 0; w < words; ++w)
          count += static_cast<std::uint32_t>(std::popcount(row[w] & masks[c * words + w]));
        signature[v * c_count + c] = count;
      }
    }
    auto sig_less = [&](Vertex a, Vertex b) {
      return std::lexicographical_compare(
          signature.begin() + a * c_count, signature.begin() + (a + 1) * c_count,
          signature.begin() + b * c_count, signature.begin() + (b + 1) * c_count);
    };
    auto sig_equal = [&](Vertex a, Vertex b) {
      return std::equal(signature.begin() + a * c_count, signature.begin() + (a + 1) * c_count,
                        signature.begin() + b * c_count);
    };

    OrderedPartition next;
    next.reserve(c_count);
    for (auto& cell : cells) {
      if (cell.size() == 1) {
        next.push_back(std::move(cell));
        continue;
      }
      std::stable_sort(cell.begin(), cell.end(), sig_less);
      std::size_t start = 0;
      for (std::size_t i = 1; i <= cell.size(); ++i) {
        if (i == cell.size() || !sig_equal(cell[start], cell[i])) {
          next.emplace_back(cell.begin() + start, cell.begin() + i);
          start = i;
        }
      }
    }
    if (next.size() == c_count) return next;
    cells = std::move(next);
  }
}

CanonicalLabeling canonical_labeling(const Graph& g) { return CanonicalSearch(g).run(); }

Graph canonical_form(const Graph& g) { return canonical_labeling(g).form; }

bool is_isomorphic(const Graph& g1, const Graph& g2) {
  if (g1.order() != g2.order() || g1.edge_count() != g2.edge_count()) return false;
  if (g1.degree_sequence() != g2.degree_sequence()) return false;
  return canonical_form(g1) == canonical_form(g2);
}

void for_each_isomorphism(const Graph& g1, const Graph& g2, const IsomorphismVisitor& visit,
                          const VertexCompatibility& compatible) {
  const std::size_t n = g1.order();
  if (n != g2.order() || g1.edge_count() != g2.edge_count()) return;

  // Refine the disjoint union so colors are comparable across the two graphs.
  Graph joint(2 * n);
  for (auto [u, v] : g1.edges()) joint.set_edge(u, v);
  for (auto [u, v] : g2.edges())
    joint.set_edge(static_cast<Vertex>(u + n), static_cast<Vertex>(v + n));
  OrderedPartition root;
  if (n > 0) root.push_back(identity_map(2 * n));
  const OrderedPartition cells = refine(joint, std::move(root));
  std::vector<std::size_t> color(2 * n);
  for (std::size_t c = 0; c < cells.size(); ++c) {
    std::size_t left = 0;
    for (Vertex v : cells[c]) {
      color[v] = c;
      left += v < n ? 1 : 0;
    }
    if (2 * left != cells[c].size()) return;
  }

  VertexMap image(n);
  std::vector<bool> used(n, false);
  bool stop = false;
  auto extend = [&](auto&& self, Vertex u) -> void {
    if (u == n) {
      stop = !visit(image);
      return;
    }
    for (Vertex t = 0; t < n && !stop; ++t) {
      if (used[t] || color[u] != color[t + n]) continue;
      if (compatible && !compatible(u, t)) continue;
      bool ok = true;
      for (Vertex w = 0; w < u && ok; ++w) ok = g1.adjacent(u, w) == g2.adjacent(t, image[w]);
      if (!ok) continue;
      used[t] = true;
      image[u] = t;
      self(self, u + 1);
      used[t] = false;
    }
  };
  extend(extend, 0);
}

std::optional<VertexMap> find_isomorphism(const Graph& g1, const Graph& g2) {
  std::optional<VertexMap> found;
  for_each_isomorphism(g1, g2, [&](const VertexMap& m) {
    found = m;
    return false;
  });
  return found;
}

std::vector<VertexMap> automorphisms(const Graph& g) {
  std::vector<VertexMap> out;
  for_each_isomorphism(g, g, [&](const VertexMap& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

std::size_t automorphism_count(const Graph& g) {
  std::size_t count = 0;
  for_each_isomorphism(g, g, [&](const VertexMap&) {
    ++count;
    return true;
  });
  return count;
}

}  // namespace blowup
