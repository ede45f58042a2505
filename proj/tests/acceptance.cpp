// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "blowup/blowup_opt.hpp"
#include "blowup/canonical.hpp"
#include "blowup/density.hpp"
#include "blowup/graph_io.hpp"
#include "blowup/lemma_lab.hpp"
#include "blowup/search.hpp"
#include "blowup/weighted.hpp"
#include "oracles.hpp"

using namespace blowup;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;
};

std::vector<Graph> twin_free_cores(std::size_t max_order) {
  std::vector<Graph> cores;
  for (std::size_t n = 1; n <= max_order; ++n)
    for (const Graph& g : oracle::class_representatives(n))
      if (oracle::twin_free(g)) cores.push_back(g);
  return cores;
}

/// Every vector in {lo..hi}^n, lexicographic.
std::vector<BlowupVector> all_vectors(std::size_t n, std::size_t lo, std::size_t hi) {
  std::vector<BlowupVector> out;
  std::vector<std::size_t> v(n, lo);
  while (true) {
    out.emplace_back(v);
    std::size_t i = 0;
    while (i < n && ++v[i] > hi) v[i++] = lo;
    if (i == n) break;
  }
  return out;
}

bool oracle_invariant(const Graph& core, const BlowupVector& k) {
  for (const VertexMap& sigma : oracle::all_isomorphisms(core, core))
    for (Vertex v = 0; v < core.order(); ++v)
      if (k[sigma[v]] != k[v]) return false;
  return true;
}

std::string str(std::size_t x) { return std::to_string(x); }

Outcome density_oracle() {
  std::mt19937_64 rng(101);
  std::size_t checks = 0, mismatches = 0;
  std::vector<Graph> patterns;
  for (std::size_t p = 1; p <= 3; ++p)
    for (std::uint64_t code = 0; code < (1U << (p * (p - 1) / 2)); ++code) patterns.push_back(oracle::from_code(p, code));
  for (std::size_t n = 1; n <= 4; ++n)
    for (const Graph& g : oracle::class_representatives(n)) {
      std::set<std::vector<Rational>> used;
      while (used.size() < std::min<std::size_t>(3, n == 1 ? 1 : 3)) {
        const RationalVector m = oracle::random_masses(n, rng);
        if (!used.insert(std::vector<Rational>(m.begin(), m.end())).second) continue;
        const WeightedGraph gw(g, Measure(m));
        for (const Graph& h : patterns) {
          ++checks;
          if (strong_hom_density(h, gw) != oracle::all_maps_sum(h, g, m)) ++mismatches;
        }
      }
    }
  return {mismatches == 0, str(checks) + " comparisons, " + str(mismatches) + " mismatches"};
}

Outcome closed_form() {
  std::mt19937_64 rng(102);
  std::size_t checks = 0, mismatches = 0;
  for (const Graph& core : twin_free_cores(4))
    for (const BlowupVector& k : all_vectors(core.order(), 1, 2))
      for (std::size_t h = 1; h <= 2; ++h) {
        const Graph pattern = blow_up(core, k.scaled(h));
        for (const Measure& m : {Measure::proportional(k), Measure(oracle::random_masses(core.order(), rng))}) {
          ++checks;
          if (blowup_self_density(core, k, h, m) != strong_hom_density(pattern, WeightedGraph(core, m))) ++mismatches;
        }
      }
  return {mismatches == 0, str(checks) + " comparisons, " + str(mismatches) + " mismatches"};
}

Outcome averaging_and_derivative() {
  std::mt19937_64 rng(103);
  std::size_t avg_fail = 0, der_fail = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t p = 1 + rng() % 4, n = 1 + rng() % 5;
    const Graph h = oracle::random_graph(p, rng);
    const std::size_t labels = 1 + rng() % std::min<std::size_t>(2, p);
    VertexMap vertices = identity_map(p);
    std::shuffle(vertices.begin(), vertices.end(), rng);
    vertices.resize(labels);
    const PartiallyLabeledGraph f(h, vertices);
    const WeightedGraph gw(oracle::random_graph(n, rng), Measure(oracle::random_masses(n, rng)));
    Rational average = 0;
    VertexMap phi(labels, 0);
    while (true) {
      Rational weight = 1;
      for (Vertex t : phi) weight *= gw.measure()[t];
      average += weight * labeled_density(f, phi, gw);
      std::size_t i = 0;
      while (i < labels && ++phi[i] == n) phi[i++] = 0;
      if (i == labels) break;
    }
    if (average != strong_hom_density(h, gw)) ++avg_fail;
  }
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t p = 1 + rng() % 4, n = 1 + rng() % 5;
    const Graph h = oracle::random_graph(p, rng), g = oracle::random_graph(n, rng);
    RationalVector w(static_cast<Eigen::Index>(n));
    for (auto& x : w) x = ratio(static_cast<unsigned long>(rng() % 6), static_cast<unsigned long>(1 + rng() % 7));
    const Vertex v0 = static_cast<Vertex>(rng() % n);
    const Rational x0 = w[v0];
    std::vector<Rational> nodes, values;
    for (std::size_t i = 0; i <= p; ++i) {
      RationalVector wi = w;
      wi[v0] = x0 + Rational(static_cast<unsigned long>(i + 1));
      nodes.push_back(wi[v0]);
      values.push_back(polynomial_eval(h, g, wi));
    }
    if (oracle::interpolated_derivative(nodes, values, x0) != quantum_polynomial_eval(boundary(h), {v0}, g, w))
      ++der_fail;
  }
  return {avg_fail == 0 && der_fail == 0,
          "averaging 200 instances, " + str(avg_fail) + " failures; derivative 100 instances, " + str(der_fail) +
              " failures"};
}

Outcome amgm() {
  std::mt19937_64 rng(104);
  std::size_t violations = 0, equalities = 0, bad_equalities = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng() % 5;
    RationalVector a(static_cast<Eigen::Index>(n));
    for (auto& x : a) x = static_cast<unsigned long>(1 + rng() % 5);
    const ExponentVector e(a);
    const Measure best = amgm_maximizer(e);
    const Rational top = p_eval(e, best);
    const std::size_t plant = rng() % 10000;
    for (std::size_t s = 0; s < 10000; ++s) {
      const Measure mu = s == plant ? best : Measure(oracle::random_masses(n, rng, 1000));
      const Rational value = p_eval(e, mu);
      if (value > top) ++violations;
      if (value == top) {
        ++equalities;
        if (!(mu == best)) ++bad_equalities;
      } else if (mu == best) {
        ++bad_equalities;
      }
    }
  }
  return {violations == 0 && bad_equalities == 0,
          "500000 samples, " + str(violations) + " violations, " + str(equalities) + " equalities, " +
              str(bad_equalities) + " equalities away from mu_a"};
}

Outcome continuity() {
  std::mt19937_64 rng(105);
  std::size_t violations = 0, lhs_mismatch = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + rng() % 4;
    const RationalVector m = oracle::random_masses(n, rng);
    const WeightedGraph a(oracle::random_graph(n, rng), Measure(m)), b(oracle::random_graph(n, rng), Measure(m));
    const Graph h = oracle::random_graph(1 + rng() % 4, rng);
    const ContinuityGap gap = continuity_gap(h, a, b);
    if (gap.lhs > gap.rhs) ++violations;
    if (gap.lhs != abs(oracle::all_maps_sum(h, a.graph(), m) - oracle::all_maps_sum(h, b.graph(), m))) ++lhs_mismatch;
  }
  return {violations == 0 && lhs_mismatch == 0,
          "500 pairs, " + str(violations) + " violations, " + str(lhs_mismatch) + " lhs mismatches"};
}

Outcome balanced_characterization() {
  std::vector<std::size_t> hs{1, 2, 3, 4, 5, 6, 7, 8};
  std::size_t invariant_cases = 0, other_cases = 0, failures = 0;
  std::string first_failure;
  for (const Graph& core : twin_free_cores(4))
    for (const BlowupVector& k : all_vectors(core.order(), 1, 2)) {
      const auto rows = critical_point_test(core, k, hs);
      OptimizeOptions options;
      options.closed_form_shortcut = false;
      bool ok;
      if (oracle_invariant(core, k)) {
        ++invariant_cases;
        ok = true;
        for (const auto& row : rows) {
          ok = ok && row.critical;
          const double at_mu_k = to_double(blowup_self_density(core, k, row.h, Measure::proportional(k)));
          const double found = optimize_nu(core, k, row.h, options).value;
          ok = ok && std::abs(found - at_mu_k) <= 1e-9 * at_mu_k;
        }
      } else {
        ++other_cases;
        ok = false;
        for (const auto& row : rows) {
          if (!row.exactly_critical) {
            ok = true;
            break;
          }
          const double at_mu_k = to_double(blowup_self_density(core, k, row.h, Measure::proportional(k)));
          if (optimize_nu(core, k, row.h, options).value >= at_mu_k * (1 + 1e-9)) {
            ok = true;
            break;
          }
        }
      }
      if (!ok) {
        ++failures;
        if (first_failure.empty()) first_failure = "; first failure core " + write_graph6(core);
      }
    }
  return {failures == 0, str(invariant_cases) + " invariant and " + str(other_cases) + " non-invariant (core, k), " +
                             str(failures) + " failures" + first_failure};
}

Outcome worked_instance() {
  const OptimizationResult r = optimize_nu(complete_graph(2), {1, 2}, 1);
  double scan = 0;
  for (long i = 1; i < 100000; ++i) {
    const double x = static_cast<double>(i) * 1e-5, y = 1 - x;
    scan = std::max(scan, x * y * y + x * x * y);
  }
  const Rational at_mu_k = blowup_self_density(complete_graph(2), {1, 2}, 1, Measure::proportional({1, 2}));
  const bool ok = std::abs(r.value - 0.25) <= 1e-12 && std::abs(scan - 0.25) <= 1e-9 && at_mu_k == Rational(2, 9);
  char buf[160];
  std::snprintf(buf, sizeof buf, "optimizer %.17g, grid %.17g, value at mu_k %s", r.value, scan,
                to_string(at_mu_k).c_str());
  return {ok, buf};
}

Outcome dichotomy_verifier() {
  std::mt19937_64 rng(108);
  std::vector<Graph> cores = twin_free_cores(4);
  cores.erase(cores.begin());  // K1 admits only the constant map.
  const Rational gammas[] = {Rational(1, 8), Rational(1, 4), Rational(1, 2)};
  std::size_t failures = 0, exceptions = 0, witnesses = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Graph& core = cores[rng() % cores.size()];
    std::vector<std::size_t> kv(core.order());
    for (auto& x : kv) x = 1 + rng() % 2;
    const BlowupVector k(kv);
    const std::size_t n = 1 + rng() % 3;
    VertexMap psi = blow_up_projection(k.scaled(n));
    const auto autos = oracle::all_isomorphisms(core, core);
    psi = compose(autos[rng() % autos.size()], psi);
    switch (trial % 3) {
      case 0:
        break;
      case 1:
        for (std::size_t i = 0, flips = 1 + rng() % 3; i < flips; ++i)
          psi[rng() % psi.size()] = static_cast<Vertex>(rng() % core.order());
        break;
      default:
        for (auto& t : psi) t = static_cast<Vertex>(rng() % core.order());
    }
    const Rational& gamma = gammas[rng() % 3];
    const DichotomyOutcome out = dichotomy(core, k, n, psi, gamma);
    (std::holds_alternative<ExceptionSet>(out) ? exceptions : witnesses)++;
    if (!oracle::dichotomy_outcome_valid(core, k, n, psi, gamma, out)) ++failures;
  }
  return {failures == 0, "1000 instances (" + str(exceptions) + " exception sets, " + str(witnesses) +
                             " mismatch witnesses), " + str(failures) + " failures"};
}

Outcome monte_carlo() {
  std::mt19937_64 rng(109);
  std::size_t failed_biclique = 0, failed_star = 0, nontrivial = 0, hits = 0;
  // Sparse graphs and r close to the event size keep most bounds below 1.
  std::uniform_real_distribution<double> density(0.03, 0.2);
  for (std::uint64_t i = 0; i < 50; ++i) {
    const std::size_t n = 6 + rng() % 3;
    const WeightedGraph j(oracle::random_graph(n, rng, density(rng)), Measure(oracle::random_masses(n, rng)));
    const std::size_t ell = 1 + rng() % 3, s = 2 + rng() % 2;
    const BoundCheck b = check_biclique_bound(j, 2 * ell + rng() % 2, ell, 100000, i);
    const BoundCheck st = check_star_bound(j, s + 1 + rng() % 2, s, 100000, 1000 + i);
    failed_biclique += b.passed ? 0 : 1;
    failed_star += st.passed ? 0 : 1;
    nontrivial += (b.bound < 1 ? 1 : 0) + (st.bound < 1 ? 1 : 0);
    hits += b.hits + st.hits;
  }
  return {failed_biclique == 0 && failed_star == 0,
          "biclique 50 instances, " + str(failed_biclique) + " failures; star 50 instances, " + str(failed_star) +
              " failures; " + str(nontrivial) + " of 100 bounds below 1, " + str(hits) + " event hits"};
}

Outcome enumeration_counts() {
  std::string counts;
  bool ok = true;
  for (std::size_t n = 1; n <= 7; ++n) {
    const std::vector<Graph> generated = enumerate_graphs(n);
    const std::vector<Graph> reps = oracle::class_representatives(n);
    std::set<std::string> forms;
    for (const Graph& g : generated) forms.insert(write_graph6(g));
    bool covered = true;
    for (const Graph& g : reps) covered = covered && forms.count(write_graph6(canonical_form(g))) == 1;
    ok = ok && generated.size() == reps.size() && forms.size() == generated.size() && covered &&
         oracle::burnside_count(n) == reps.size();
    counts += (n > 1 ? "," : "") + str(generated.size());
  }
  return {ok, "counts " + counts};
}

Outcome scan_consistency() {
  const Graph k2 = complete_graph(2);
  std::size_t blowups = 0, mismatches = 0;
  ScanOptions options;
  options.observer = [&](const Graph& g, const Rational& value) {
    const TwinDecomposition t = twin_free_factor(g);
    if (t.core.order() != 2 || t.core.edge_count() != 1) return;
    ++blowups;
    RationalVector m(2);
    for (Eigen::Index v = 0; v < 2; ++v) m[v] = ratio(static_cast<unsigned long>(t.multiplicities[v]), 8UL);
    if (value != blowup_self_density(k2, {1, 1}, 2, Measure(m))) ++mismatches;
  };
  const ScanResult one = extremal_scan(k2, {1, 1}, 2, 8, options);
  ScanOptions parallel;
  parallel.jobs = 2;
  const ScanResult two = extremal_scan(k2, {1, 1}, 2, 8, parallel);
  const bool same = one.best_value == two.best_value && one.witnesses == two.witnesses;
  std::string witness;
  for (const Graph& w : one.witnesses) witness += " " + write_graph6(w);
  return {mismatches == 0 && blowups == 4 && same && one.classes_scanned == 12346,
          str(one.classes_scanned) + " classes, " + str(blowups) + " blow-ups checked, " + str(mismatches) +
              " mismatches, best " + to_string(one.best_value) + " at" + witness +
              (same ? ", identical for jobs 1 and 2" : ", differs across jobs")};
}

Outcome round_trip() {
  std::size_t checks = 0, failures = 0;
  for (const Graph& core : twin_free_cores(5))
    for (const BlowupVector& k : all_vectors(core.order(), 1, 3)) {
      ++checks;
      const Graph g = blow_up(core, k);
      const TwinDecomposition t = twin_free_factor(g);
      bool ok = false;
      for (const VertexMap& theta : oracle::all_isomorphisms(t.core, core)) {
        bool match = true;
        for (Vertex v = 0; v < core.order(); ++v) match = match && t.multiplicities[v] == k[theta[v]];
        if (match) ok = true;
      }
      const VertexMap pi = blow_up_projection(k);
      for (Vertex a = 0; a < g.order() && ok; ++a)
        for (Vertex b = 0; b < g.order() && ok; ++b) ok = (t.class_of[a] == t.class_of[b]) == (pi[a] == pi[b]);
      if (!ok) ++failures;
    }
  return {failures == 0, str(checks) + " (core, k) pairs, " + str(failures) + " failures"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"density oracle equivalence", density_oracle},
      {"closed-form self density", closed_form},
      {"averaging and derivative identities", averaging_and_derivative},
      {"AM-GM maximizer", amgm},
      {"continuity bound", continuity},
      {"balanced characterization", balanced_characterization},
      {"worked unbalanced instance", worked_instance},
      {"dichotomy verifier", dichotomy_verifier},
      {"Monte Carlo bounds", monte_carlo},
      {"enumeration counts", enumeration_counts},
      {"extremal scan consistency", scan_consistency},
      {"round-trip factorization", round_trip},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += outcome.passed ? 0 : 1;
    std::printf("[%s] %2zu %s: %s (%.1fs)\n", outcome.passed ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                outcome.detail.c_str(), seconds);
    std::fflush(stdout);
  }
  return failed;
}
