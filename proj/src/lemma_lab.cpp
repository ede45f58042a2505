#include "blowup/lemma_lab.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

#include "blowup/blowup_opt.hpp"
#include "blowup/density.hpp"
#include "blowup/errors.hpp"

namespace blowup {

namespace {

using Mask = std::uint32_t;

std::vector<Vertex> intersect(const VertexMap& pi, Vertex v, const VertexMap& psi, Vertex t) {
  std::vector<Vertex> out;
  for (Vertex w = 0; w < pi.size(); ++w)
    if (pi[w] == v && psi[w] == t) out.push_back(w);
  return out;
}

// Adjacency among sample positions; equal vertices are non-adjacent.
std::vector<Mask> sample_adjacency(const Graph& g, const std::vector<Vertex>& z) {
  std::vector<Mask> adj(z.size(), 0);
  for (std::size_t a = 0; a < z.size(); ++a)
    for (std::size_t b = a + 1; b < z.size(); ++b)
      if (z[a] != z[b] && g.adjacent(z[a], z[b])) {
        adj[a] |= Mask(1) << b;
        adj[b] |= Mask(1) << a;
      }
  return adj;
}

bool has_biclique(const std::vector<Mask>& adj, std::size_t ell) {
  const std::size_t r = adj.size();
  if (ell == 0) return true;
  if (2 * ell > r) return false;
  std::vector<std::size_t> pick(ell);
  for (std::size_t i = 0; i < ell; ++i) pick[i] = i;
  const Mask all = r == 32 ? ~Mask(0) : (Mask(1) << r) - 1;
  while (true) {
    Mask common = all;
    for (std::size_t i : pick) common &= adj[i];
    if (static_cast<std::size_t>(std::popcount(common)) >= ell) return true;
    std::size_t i = ell;
    while (i > 0 && pick[i - 1] == r - ell + i - 1) --i;
    if (i == 0) return false;
    ++pick[i - 1];
    for (std::size_t j = i; j < ell; ++j) pick[j] = pick[j - 1] + 1;
  }
}

bool has_star(const std::vector<Mask>& adj, std::size_t s) {
  return std::any_of(adj.begin(), adj.end(),
                     [s](Mask m) { return static_cast<std::size_t>(std::popcount(m)) >= s; });
}

Rational edge_density(const WeightedGraph& j) {
  return strong_hom_density(complete_graph(2), j);
}

Rational max_neighborhood_mass(const WeightedGraph& j) {
  Rational best = 0;
  for (Vertex v = 0; v < j.order(); ++v) {
    Rational m = 0;
    for (Vertex u = 0; u < j.order(); ++u)
      if (j.graph().adjacent(u, v)) m += j.measure()[u];
    best = std::max(best, m);
  }
  return best;
}

template <typename Event>
BoundCheck monte_carlo(const WeightedGraph& j, std::size_t r, std::size_t samples, std::uint64_t seed,
                       std::size_t jobs, const Rational& bound, std::string name, Event event) {
  if (r > 12) throw PreconditionError("r must be at most 12");
  if (samples < 100) throw PreconditionError("at least 100 samples are required");
  const Eigen::VectorXd w = j.measure().to_double();
  const std::size_t shards = (samples + kShardSamples - 1) / kShardSamples;
  std::vector<std::size_t> hits(shards, 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    std::vector<Vertex> z(r);
    for (std::size_t shard; (shard = next++) < shards;) {
      std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                        static_cast<std::uint32_t>(shard)};
      std::mt19937_64 rng(seq);
      std::discrete_distribution<Vertex> draw(w.begin(), w.end());
      const std::size_t count = std::min(kShardSamples, samples - shard * kShardSamples);
      for (std::size_t i = 0; i < count; ++i) {
        for (auto& v : z) v = draw(rng);
        if (event(sample_adjacency(j.graph(), z))) ++hits[shard];
      }
    }
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(jobs, shards));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  BoundCheck check;
  check.event = std::move(name);
  check.samples = samples;
  for (std::size_t h : hits) check.hits += h;
  check.empirical = static_cast<double>(check.hits) / static_cast<double>(samples);
  check.bound = to_double(bound);
  const double b = std::clamp(check.bound, 0.0, 1.0);
  check.confidence_slack = 3 * std::sqrt(b * (1 - b) / static_cast<double>(samples)) + 1.0 / static_cast<double>(samples);
  check.passed = check.empirical <= check.bound + check.confidence_slack;
  return check;
}

}  // namespace

Rational dichotomy_threshold(const BlowupVector& k, std::size_t n, const Rational& gamma) {
  const Measure mu_k = Measure::proportional(k);
  const Rational order(static_cast<unsigned long>(n * k.l1_norm()));
  return gamma * alpha(mu_k) / Rational(static_cast<unsigned long>(k.size())) * order;
}

DichotomyOutcome dichotomy(const Graph& core, const BlowupVector& k, std::size_t n, const VertexMap& psi,
                           const Rational& gamma) {
  if (!core.twin_free()) throw PreconditionError("core must be twin-free");
  if (k.size() != core.order()) throw PreconditionError("k must have one entry per core vertex");
  if (n == 0) throw PreconditionError("n must be positive");
  if (sgn(gamma) <= 0) throw PreconditionError("gamma must be positive");
  const BlowupVector nk = k.scaled(n);
  const VertexMap pi = blow_up_projection(nk);
  if (psi.size() != pi.size()) throw PreconditionError("psi must be defined on every vertex of the blow-up");
  for (Vertex t : psi)
    if (t >= core.order()) throw PreconditionError("psi maps outside the core");
  const auto size = static_cast<Vertex>(pi.size());
  if (gamma > 1) {
    ExceptionSet all;
    for (Vertex w = 0; w < size; ++w) all.x.push_back(w);
    return all;
  }

  const std::size_t kc = core.order();
  // counts[v][t] = |pi^-1(v) cap psi^-1(t)|
  std::vector<std::vector<std::size_t>> counts(kc, std::vector<std::size_t>(kc, 0));
  for (Vertex w = 0; w < size; ++w) ++counts[pi[w]][psi[w]];
  VertexMap sigma(kc);
  for (Vertex v = 0; v < kc; ++v)
    sigma[v] = static_cast<Vertex>(std::max_element(counts[v].begin(), counts[v].end()) - counts[v].begin());

  for (Vertex v1 = 0; v1 < kc; ++v1)
    for (Vertex v2 = v1 + 1; v2 < kc; ++v2) {
      const bool image = sigma[v1] != sigma[v2] && core.adjacent(sigma[v1], sigma[v2]);
      if (core.adjacent(v1, v2) != image)
        return MismatchWitness{intersect(pi, v1, psi, sigma[v1]), intersect(pi, v2, psi, sigma[v2])};
    }

  // sigma is an automorphism; compare pi with sigma^-1 o psi.
  const VertexMap sigma_inv = inverse(sigma);
  const VertexMap normalized = compose(sigma_inv, psi);
  auto away_fraction = [&](Vertex v) {
    const std::size_t block = nk[v];
    return ratio(static_cast<unsigned long>(block - counts[v][sigma[v]]), static_cast<unsigned long>(block));
  };
  bool close = true;
  for (Vertex v = 0; v < kc; ++v) close = close && away_fraction(v) <= gamma;
  if (close) {
    ExceptionSet out;
    for (Vertex w = 0; w < size; ++w)
      if (normalized[w] != pi[w]) out.x.push_back(w);
    return out;
  }
  for (Vertex v0 = 0; v0 < kc; ++v0) {
    if (away_fraction(v0) < gamma) continue;
    Vertex v1 = v0 == 0 ? 1 : 0;
    for (Vertex t = 0; t < kc; ++t)
      if (t != v0 && counts[v0][sigma[t]] > counts[v0][sigma[v1]]) v1 = t;
    Vertex v2 = 0;
    while (core.adjacent(v0, v2) == core.adjacent(v1, v2)) ++v2;
    return MismatchWitness{intersect(pi, v0, psi, sigma[v1]), intersect(pi, v2, psi, sigma[v2])};
  }
  throw std::logic_error("dichotomy: no case applied");
}

BoundCheck check_biclique_bound(const WeightedGraph& j, std::size_t r, std::size_t ell, std::size_t samples,
                                std::uint64_t seed, std::size_t jobs) {
  const Rational bound = pow(Rational(3), r) * pow(edge_density(j), ell);
  return monte_carlo(j, r, samples, seed, jobs, bound, "K_{" + std::to_string(ell) + "," + std::to_string(ell) + "}",
                     [ell](const std::vector<Mask>& adj) { return has_biclique(adj, ell); });
}

BoundCheck check_star_bound(const WeightedGraph& j, std::size_t r, std::size_t s, std::size_t samples,
                            std::uint64_t seed, std::size_t jobs) {
  if (s == 0) throw PreconditionError("s must be at least 1");
  const Rational bound = pow(Rational(3), r) * edge_density(j) * pow(max_neighborhood_mass(j), s - 1);
  return monte_carlo(j, r, samples, seed, jobs, bound, "degree >= " + std::to_string(s),
                     [s](const std::vector<Mask>& adj) { return has_star(adj, s); });
}

ClosenessReport closeness_probe(const Graph& core, const BlowupVector& k, std::size_t h, const WeightedGraph& gw) {
  const Graph pattern = blow_up(core, k.scaled(h));
  ClosenessReport report;
  report.density = strong_hom_density(pattern, quotient(gw).core);
  report.threshold = blowup_self_density(core, k, h, Measure::proportional(k)) / 2;
  report.hypothesis_holds = report.density >= report.threshold;
  if (report.hypothesis_holds)
    report.distance = d1_distance(gw, WeightedGraph(core, Measure::proportional(k)));
  return report;
}

}  // namespace blowup
