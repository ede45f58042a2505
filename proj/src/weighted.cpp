#include "blowup/weighted.hpp"

#include <algorithm>
#include <numeric>

#include "blowup/canonical.hpp"
#include "blowup/density.hpp"
#include "blowup/errors.hpp"

namespace blowup {

using RationalMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;

namespace {

void require_commensurable(const WeightedGraph& a, const WeightedGraph& b) {
  if (a.order() != b.order() || !(a.measure() == b.measure()))
    throw PreconditionError("weighted graphs are not commensurable");
}

struct Coupling {
  const Graph& g1;
  const Graph& g2;
  RationalVector rows;
  RationalVector cols;

  Eigen::Index p() const { return rows.size(); }
  Eigen::Index q() const { return cols.size(); }

  bool diff(Eigen::Index i, Eigen::Index j, Eigen::Index i2, Eigen::Index j2) const {
    const bool e1 = i != i2 && g1.adjacent(static_cast<Vertex>(i), static_cast<Vertex>(i2));
    const bool e2 = j != j2 && g2.adjacent(static_cast<Vertex>(j), static_cast<Vertex>(j2));
    return e1 != e2;
  }
};

// Solves the KKT system of min M^T D M on a fixed support and returns the
// support values when they are uniquely determined and positive.
std::optional<RationalMatrix> face_candidate(const Coupling& c, const std::vector<std::pair<int, int>>& support) {
  const auto s = static_cast<Eigen::Index>(support.size());
  const Eigen::Index p = c.p(), q = c.q();
  const Eigen::Index unknowns = s + p + q;
  const Eigen::Index equations = s + p + q;
  RationalMatrix a = RationalMatrix::Zero(equations, unknowns + 1);
  for (Eigen::Index r = 0; r < s; ++r) {
    auto [i, j] = support[static_cast<std::size_t>(r)];
    for (Eigen::Index t = 0; t < s; ++t) {
      auto [i2, j2] = support[static_cast<std::size_t>(t)];
      if (c.diff(i, j, i2, j2)) a(r, t) = 2;
    }
    a(r, s + i) = -1;
    a(r, s + p + j) = -1;
  }
  for (Eigen::Index t = 0; t < s; ++t) {
    auto [i, j] = support[static_cast<std::size_t>(t)];
    a(s + i, t) = 1;
    a(s + p + j, t) = 1;
  }
  for (Eigen::Index i = 0; i < p; ++i) a(s + i, unknowns) = c.rows[i];
  for (Eigen::Index j = 0; j < q; ++j) a(s + p + j, unknowns) = c.cols[j];

  // Reduced row echelon form.
  std::vector<Eigen::Index> pivot_col;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < unknowns && row < equations; ++col) {
    Eigen::Index pr = row;
    while (pr < equations && sgn(a(pr, col)) == 0) ++pr;
    if (pr == equations) continue;
    if (pr != row) a.row(pr).swap(a.row(row));
    const Rational inv = 1 / a(row, col);
    for (Eigen::Index k = 0; k <= unknowns; ++k) a(row, k) *= inv;
    for (Eigen::Index r = 0; r < equations; ++r) {
      if (r == row || sgn(a(r, col)) == 0) continue;
      const Rational f = a(r, col);
      for (Eigen::Index k = 0; k <= unknowns; ++k) a(r, k) -= f * a(row, k);
    }
    pivot_col.push_back(col);
    ++row;
  }
  for (Eigen::Index r = row; r < equations; ++r)
    if (sgn(a(r, unknowns)) != 0) return std::nullopt;

  std::vector<bool> is_pivot(static_cast<std::size_t>(unknowns), false);
  for (auto col : pivot_col) is_pivot[static_cast<std::size_t>(col)] = true;
  RationalMatrix m = RationalMatrix::Zero(p, q);
  for (Eigen::Index t = 0; t < s; ++t)
    if (!is_pivot[static_cast<std::size_t>(t)]) return std::nullopt;
  for (std::size_t r = 0; r < pivot_col.size(); ++r) {
    const Eigen::Index col = pivot_col[r];
    if (col >= s) continue;
    for (Eigen::Index k = 0; k < unknowns; ++k)
      if (!is_pivot[static_cast<std::size_t>(k)] && sgn(a(static_cast<Eigen::Index>(r), k)) != 0)
        return std::nullopt;
    const Rational& x = a(static_cast<Eigen::Index>(r), unknowns);
    if (sgn(x) <= 0) return std::nullopt;
    auto [i, j] = support[static_cast<std::size_t>(col)];
    m(i, j) = x;
  }
  return m;
}

Rational exact_minimum(const Coupling& c) {
  const int p = static_cast<int>(c.p()), q = static_cast<int>(c.q());
  const int cells = p * q;
  std::optional<Rational> best;
  for (unsigned mask = 1; mask < (1U << cells); ++mask) {
    std::vector<std::pair<int, int>> support;
    for (int t = 0; t < cells; ++t)
      if (mask & (1U << t)) support.emplace_back(t / q, t % q);
    auto m = face_candidate(c, support);
    if (!m) continue;
    Rational v = coupling_cost(c.g1, c.g2, *m);
    if (!best || v < *best) best = v;
  }
  return *best;
}

// Vertex of the transportation polytope filling columns in `order`.
RationalMatrix northwest_corner(const Coupling& c, const std::vector<Eigen::Index>& order) {
  RationalMatrix m = RationalMatrix::Zero(c.p(), c.q());
  RationalVector rows = c.rows, cols = c.cols;
  Eigen::Index i = 0;
  std::size_t t = 0;
  while (i < c.p() && t < order.size()) {
    const Eigen::Index j = order[t];
    const Rational x = std::min(rows[i], cols[j]);
    m(i, j) += x;
    rows[i] -= x;
    cols[j] -= x;
    if (sgn(rows[i]) == 0) ++i;
    if (sgn(cols[j]) == 0) ++t;
  }
  return m;
}

// Exact cost change of M + t E for the 2x2 cycle E = e(i,j) + e(i2,j2) - e(i,j2) - e(i2,j).
RationalMatrix cycle(Eigen::Index p, Eigen::Index q, Eigen::Index i, Eigen::Index j, Eigen::Index i2,
                     Eigen::Index j2) {
  RationalMatrix e = RationalMatrix::Zero(p, q);
  e(i, j) = 1;
  e(i2, j2) = 1;
  e(i, j2) = -1;
  e(i2, j) = -1;
  return e;
}

Rational bilinear(const Coupling& c, const RationalMatrix& x, const RationalMatrix& y) {
  Rational total = 0;
  for (Eigen::Index i = 0; i < c.p(); ++i)
    for (Eigen::Index j = 0; j < c.q(); ++j) {
      if (sgn(x(i, j)) == 0) continue;
      for (Eigen::Index i2 = 0; i2 < c.p(); ++i2)
        for (Eigen::Index j2 = 0; j2 < c.q(); ++j2)
          if (sgn(y(i2, j2)) != 0 && c.diff(i, j, i2, j2)) total += x(i, j) * y(i2, j2);
    }
  return total;
}

Rational local_search(const Coupling& c, RationalMatrix m, std::size_t grid) {
  Rational value = coupling_cost(c.g1, c.g2, m);
  for (int iter = 0; iter < 1000; ++iter) {
    Rational best_value = value;
    RationalMatrix best_m;
    for (Eigen::Index i = 0; i < c.p(); ++i)
      for (Eigen::Index i2 = 0; i2 < c.p(); ++i2)
        for (Eigen::Index j = 0; j < c.q(); ++j)
          for (Eigen::Index j2 = 0; j2 < c.q(); ++j2) {
            if (i == i2 || j == j2) continue;
            const Rational t_max = std::min(m(i, j2), m(i2, j));
            if (sgn(t_max) <= 0) continue;
            const RationalMatrix e = cycle(c.p(), c.q(), i, j, i2, j2);
            const Rational lin = 2 * bilinear(c, e, m);
            const Rational quad = bilinear(c, e, e);
            std::vector<Rational> steps{t_max};
            for (std::size_t g = 1; g < grid; ++g) steps.push_back(t_max * ratio(g, grid));
            if (sgn(quad) > 0) {
              Rational t = -lin / (2 * quad);
              if (sgn(t) > 0 && t < t_max) steps.push_back(t);
            }
            for (const auto& t : steps) {
              const Rational v = value + t * lin + t * t * quad;
              if (v < best_value) {
                best_value = v;
                best_m = m + t * e;
              }
            }
          }
    if (best_value == value) break;
    value = best_value;
    m = best_m;
  }
  return value;
}

}  // namespace

Rational alpha(const Measure& m) { return m.masses().minCoeff(); }

WeightedQuotient quotient(const WeightedGraph& gw) {
  TwinDecomposition t = twin_free_factor(gw.graph());
  RationalVector mass = RationalVector::Zero(static_cast<Eigen::Index>(t.core.order()));
  for (std::size_t v = 0; v < gw.order(); ++v) mass[t.class_of[v]] += gw.measure()[v];
  return {WeightedGraph(std::move(t.core), Measure(std::move(mass))), std::move(t.class_of)};
}

std::optional<EquivalenceWitness> are_equivalent(const WeightedGraph& a, const WeightedGraph& b) {
  const WeightedQuotient qa = quotient(a), qb = quotient(b);
  const Graph& ca = qa.core.graph();
  const Graph& cb = qb.core.graph();
  if (ca.order() != cb.order() || ca.edge_count() != cb.edge_count()) return std::nullopt;
  const Measure& ma = qa.core.measure();
  const Measure& mb = qb.core.measure();
  std::optional<EquivalenceWitness> out;
  for_each_isomorphism(
      ca, cb,
      [&](const VertexMap& iso) {
        EquivalenceWitness w{iso, {}};
        for (Vertex v = 0; v < ca.order(); ++v) w.classes.push_back({v, ma[v], mb[iso[v]]});
        out = std::move(w);
        return false;
      },
      [&](Vertex u, Vertex t) { return ma[u] == mb[t]; });
  return out;
}

Rational d1_commensurable(const WeightedGraph& a, const WeightedGraph& b) {
  require_commensurable(a, b);
  const Measure& m = a.measure();
  Rational total = 0;
  for (Vertex u = 0; u < a.order(); ++u)
    for (Vertex v = u + 1; v < a.order(); ++v)
      if (a.graph().adjacent(u, v) != b.graph().adjacent(u, v)) total += m[u] * m[v];
  return 2 * total;
}

Rational coupling_cost(const Graph& core1, const Graph& core2, const RationalMatrix& m) {
  Coupling c{core1, core2, RationalVector(), RationalVector()};
  c.rows = RationalVector::Zero(m.rows());
  c.cols = RationalVector::Zero(m.cols());
  return bilinear(c, m, m);
}

D1Result d1_distance(const WeightedGraph& a, const WeightedGraph& b, std::size_t grid) {
  if (grid == 0) throw PreconditionError("grid must be positive");
  if (are_equivalent(a, b)) return {Rational(0), true};
  const WeightedQuotient qa = quotient(a), qb = quotient(b);
  Coupling c{qa.core.graph(), qb.core.graph(), qa.core.measure().masses(), qb.core.measure().masses()};
  if (c.p() <= 3 && c.q() <= 3) return {exact_minimum(c), true};

  std::optional<Rational> best;
  auto consider = [&](RationalMatrix start) {
    Rational v = local_search(c, std::move(start), grid);
    if (!best || v < *best) best = v;
  };
  consider(c.rows * c.cols.transpose());
  std::vector<Eigen::Index> order(static_cast<std::size_t>(c.q()));
  std::iota(order.begin(), order.end(), 0);
  int starts = 0;
  do {
    consider(northwest_corner(c, order));
  } while (++starts < 120 && std::next_permutation(order.begin(), order.end()));
  return {*best, false};
}

RegularityReport regularity(Vertex v0, const Graph& g, const Graph& f, const Measure& m) {
  if (g.order() != f.order() || m.size() != g.order())
    throw PreconditionError("graphs are not commensurable under the measure");
  if (v0 >= g.order()) throw PreconditionError("vertex out of range");
  RegularityReport report{v0, std::nullopt, Rational(1)};
  for (Vertex v = 0; v < f.order(); ++v) {
    Rational d = 0;
    for (Vertex u = 0; u < g.order(); ++u)
      if (g.adjacent(v0, u) != f.adjacent(v, u)) d += m[u];
    if (!report.witness || d < report.discrepancy) {
      report.witness = v;
      report.discrepancy = d;
    }
  }
  return report;
}

ContinuityGap continuity_gap(const Graph& h, const WeightedGraph& a, const WeightedGraph& b) {
  const Rational d = d1_commensurable(a, b);
  const Rational lhs = abs(strong_hom_density(h, a) - strong_hom_density(h, b));
  const auto n = static_cast<unsigned long>(h.order());
  return {lhs, Rational(n * n) * d};
}

}  // namespace blowup
