#include "blowup/blowup_opt.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "blowup/canonical.hpp"
#include "blowup/errors.hpp"

namespace blowup {

namespace {

constexpr double kFloor = 1e-12;

Eigen::VectorXd renormalized(Eigen::VectorXd mu) {
  mu = mu.cwiseMax(kFloor);
  return mu / mu.sum();
}

Eigen::VectorXd proportional(const BlowupVector& k) {
  Eigen::VectorXd mu(static_cast<Eigen::Index>(k.size()));
  for (std::size_t v = 0; v < k.size(); ++v) mu[static_cast<Eigen::Index>(v)] = static_cast<double>(k[v]);
  return mu / mu.sum();
}

bool lex_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

struct Ascent {
  Eigen::VectorXd mu;
  double log_f;
  double residual;
};

Ascent ascend(const BlowupObjective& f, Eigen::VectorXd mu, const OptimizeOptions& opt) {
  mu = renormalized(std::move(mu));
  double lf = f.log_value(mu);
  Eigen::VectorXd g = tangent_projection<double>(f.log_gradient(mu));
  double step = 1.0 / std::max(1.0, g.norm());
  for (std::size_t it = 0; it < opt.max_iterations; ++it) {
    if (g.lpNorm<Eigen::Infinity>() <= opt.tol) break;
    double t = step;
    bool accepted = false;
    Eigen::VectorXd cand;
    double lc = lf;
    for (int halving = 0; halving < 80; ++halving, t *= 0.5) {
      cand = renormalized(mu + t * g);
      lc = f.log_value(cand);
      if (std::isfinite(lc) && lc >= lf + 1e-4 * g.dot(cand - mu) && lc >= lf) {
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    const Eigen::VectorXd next_g = tangent_projection<double>(f.log_gradient(cand));
    const Eigen::VectorXd s = cand - mu;
    const double sy = s.dot(next_g - g);
    step = sy < 0 ? s.squaredNorm() / -sy : 2 * t;
    mu = std::move(cand);
    lf = lc;
    g = next_g;
  }
  return {mu, lf, g.lpNorm<Eigen::Infinity>()};
}

}  // namespace

ExponentVector::ExponentVector(RationalVector exponents) : a_(std::move(exponents)) {
  for (const auto& x : a_)
    if (sgn(x) < 0) throw PreconditionError("exponents must be nonnegative");
}

ExponentVector ExponentVector::from_blowup(const BlowupVector& k, std::size_t h) {
  RationalVector a(static_cast<Eigen::Index>(k.size()));
  for (std::size_t v = 0; v < k.size(); ++v)
    a[static_cast<Eigen::Index>(v)] = Rational(static_cast<unsigned long>(h * k[v]));
  return ExponentVector(std::move(a));
}

bool ExponentVector::integral() const {
  return std::all_of(a_.begin(), a_.end(), [](const Rational& x) { return x.get_den() == 1; });
}

Rational p_eval(const ExponentVector& a, const Measure& m) {
  if (a.size() != m.size()) throw PreconditionError("exponent and measure sizes differ");
  if (!a.integral()) throw PreconditionError("exact evaluation needs integer exponents");
  Rational p = 1;
  for (std::size_t v = 0; v < a.size(); ++v) p *= pow(m[v], a[v].get_num().get_ui());
  return p;
}

double p_eval(const ExponentVector& a, const Eigen::VectorXd& m) {
  if (a.size() != static_cast<std::size_t>(m.size())) throw PreconditionError("exponent and measure sizes differ");
  double p = 1;
  for (std::size_t v = 0; v < a.size(); ++v) p *= std::pow(m[static_cast<Eigen::Index>(v)], a[v].get_d());
  return p;
}

Measure amgm_maximizer(const ExponentVector& a) {
  if (a.size() == 0) throw PreconditionError("empty exponent vector");
  for (const auto& x : a.values())
    if (x < 1) throw PreconditionError("AM-GM maximizer needs every exponent >= 1");
  return Measure(a.values() / a.values().sum());
}

BlowupObjective::BlowupObjective(const Graph& core, const BlowupVector& k, std::size_t h) : k_(k), h_(h) {
  if (!core.twin_free()) throw PreconditionError("core must be twin-free");
  if (k.size() != core.order()) throw PreconditionError("k must have one entry per core vertex");
  if (h == 0) throw PreconditionError("h must be positive");
  for (const auto& sigma : automorphisms(core)) {
    const BlowupVector sk = k.composed(sigma);
    std::vector<unsigned long> row(k.size());
    for (std::size_t v = 0; v < k.size(); ++v) row[v] = static_cast<unsigned long>(h * sk[v]);
    exponents_.push_back(std::move(row));
  }
  exponent_matrix_.resize(static_cast<Eigen::Index>(exponents_.size()), static_cast<Eigen::Index>(k.size()));
  for (std::size_t s = 0; s < exponents_.size(); ++s)
    for (std::size_t v = 0; v < k.size(); ++v)
      exponent_matrix_(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(v)) =
          static_cast<double>(exponents_[s][v]);
}

template <typename Scalar>
Scalar BlowupObjective::value(const Vector<Scalar>& mu) const {
  if (static_cast<std::size_t>(mu.size()) != dimension()) throw PreconditionError("measure has the wrong size");
  Scalar total(0);
  for (const auto& row : exponents_) {
    Scalar p(1);
    for (std::size_t v = 0; v < row.size(); ++v) {
      if constexpr (std::is_same_v<Scalar, Rational>)
        p *= pow(mu[static_cast<Eigen::Index>(v)], row[v]);
      else
        p *= std::pow(mu[static_cast<Eigen::Index>(v)], static_cast<double>(row[v]));
    }
    total += p;
  }
  return total;
}

template Rational BlowupObjective::value<Rational>(const Vector<Rational>&) const;
template double BlowupObjective::value<double>(const Vector<double>&) const;

RationalVector BlowupObjective::gradient(const RationalVector& mu) const {
  if (static_cast<std::size_t>(mu.size()) != dimension()) throw PreconditionError("measure has the wrong size");
  RationalVector g = RationalVector::Zero(mu.size());
  for (const auto& row : exponents_) {
    Rational p = 1;
    for (std::size_t v = 0; v < row.size(); ++v) p *= pow(mu[static_cast<Eigen::Index>(v)], row[v]);
    for (std::size_t v = 0; v < row.size(); ++v)
      g[static_cast<Eigen::Index>(v)] += Rational(row[v]) * p / mu[static_cast<Eigen::Index>(v)];
  }
  return g;
}

Eigen::VectorXd BlowupObjective::gradient(const Eigen::VectorXd& mu) const {
  if (static_cast<std::size_t>(mu.size()) != dimension()) throw PreconditionError("measure has the wrong size");
  const Eigen::VectorXd logs = exponent_matrix_ * mu.array().log().matrix();
  const Eigen::VectorXd p = logs.array().exp().matrix();
  return (exponent_matrix_.transpose() * p).cwiseQuotient(mu);
}

double BlowupObjective::log_value(const Eigen::VectorXd& mu) const {
  const Eigen::VectorXd logs = exponent_matrix_ * mu.array().log().matrix();
  const double top = logs.maxCoeff();
  return top + std::log((logs.array() - top).exp().sum());
}

Eigen::VectorXd BlowupObjective::log_gradient(const Eigen::VectorXd& mu) const {
  const Eigen::VectorXd logs = exponent_matrix_ * mu.array().log().matrix();
  Eigen::VectorXd w = (logs.array() - logs.maxCoeff()).exp().matrix();
  w /= w.sum();
  return (exponent_matrix_.transpose() * w).cwiseQuotient(mu);
}

Rational blowup_self_density(const Graph& core, const BlowupVector& k, std::size_t h, const Measure& m) {
  return BlowupObjective(core, k, h).value<Rational>(m.masses());
}

Eigen::VectorXd blowup_self_gradient(const Graph& core, const BlowupVector& k, std::size_t h, const Measure& m) {
  return BlowupObjective(core, k, h).gradient(m.to_double());
}

bool is_invariant(const Graph& core, const BlowupVector& k) {
  if (k.size() != core.order()) throw PreconditionError("k must have one entry per core vertex");
  for (const auto& sigma : automorphisms(core))
    if (!(k.composed(sigma) == k)) return false;
  return true;
}

bool is_balanced(const Graph& g) {
  const TwinDecomposition t = twin_free_factor(g);
  return is_invariant(t.core, t.multiplicities);
}

OptimizationResult optimize_nu(const Graph& core, const BlowupVector& k, std::size_t h,
                               const OptimizeOptions& options) {
  const BlowupObjective f(core, k, h);
  if (f.dimension() == 0) throw PreconditionError("core must have at least one vertex");
  OptimizationResult result;
  result.balanced = is_invariant(core, k);

  if (result.balanced && options.closed_form_shortcut) {
    const Measure mu_k = Measure::proportional(k);
    result.argmax = mu_k.to_double();
    result.exact_value = f.value<Rational>(mu_k.masses());
    result.value = to_double(*result.exact_value);
    result.first_order_residual = tangent_projection<double>(f.log_gradient(result.argmax)).lpNorm<Eigen::Infinity>();
    result.converged = true;
    result.used_closed_form = true;
    return result;
  }

  const auto n = static_cast<Eigen::Index>(f.dimension());
  const Eigen::VectorXd mu_k = proportional(k);
  std::vector<Eigen::VectorXd> starts{mu_k, Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n))};
  std::set<std::vector<std::size_t>> seen{k.values()};
  for (const auto& sigma : automorphisms(core)) {
    const BlowupVector sk = k.composed(sigma);
    if (!seen.insert(sk.values()).second) continue;
    const Eigen::VectorXd mu_s = proportional(sk);
    starts.push_back(mu_s);
    starts.push_back((mu_k + mu_s) / 2);
  }
  for (std::size_t r = 0; r < options.restarts; ++r) {
    std::seed_seq seq{static_cast<std::uint32_t>(options.seed), static_cast<std::uint32_t>(options.seed >> 32),
                      static_cast<std::uint32_t>(r)};
    std::mt19937_64 rng(seq);
    std::gamma_distribution<double> gamma(1.0, 1.0);
    Eigen::VectorXd d(n);
    for (Eigen::Index v = 0; v < n; ++v) d[v] = gamma(rng);
    starts.push_back(d / d.sum());
  }

  std::optional<Ascent> best;
  for (const auto& start : starts) {
    Ascent run = ascend(f, start, options);
    if (!best) {
      best = std::move(run);
      continue;
    }
    const double gap = run.log_f - best->log_f;
    if (gap > 1e-12 || (std::abs(gap) <= 1e-12 && lex_less(run.mu, best->mu))) best = std::move(run);
  }
  result.argmax = best->mu;
  result.value = f.value<double>(best->mu);
  result.restarts = starts.size();
  result.first_order_residual = best->residual;
  result.converged = best->residual <= options.tol;
  return result;
}

std::vector<CriticalityRow> critical_point_test(const Graph& core, const BlowupVector& k,
                                                const std::vector<std::size_t>& h_range) {
  const Measure mu_k = Measure::proportional(k);
  std::vector<CriticalityRow> rows;
  for (std::size_t h : h_range) {
    const BlowupObjective f(core, k, h);
    const RationalVector g = f.gradient(mu_k.masses());
    const Rational value = f.value<Rational>(mu_k.masses());
    const RationalVector tangent = tangent_projection<Rational>(g);
    CriticalityRow row;
    row.h = h;
    row.tangent_gradient = to_double(tangent);
    row.exactly_critical = std::all_of(tangent.begin(), tangent.end(), [](const Rational& x) { return sgn(x) == 0; });
    RationalVector relative = tangent / value;
    row.relative_norm = 0;
    for (const auto& x : relative) row.relative_norm = std::max(row.relative_norm, std::abs(x.get_d()));
    row.critical = row.relative_norm <= 1e-9;
    rows.push_back(std::move(row));
  }
  return rows;
}

Rational inducibility_from_sup(const Graph& f, const Rational& sup_s) {
  if (sgn(sup_s) < 0 || sup_s > 1) throw PreconditionError("supremum must lie in [0, 1]");
  Rational r = sup_s / Rational(static_cast<unsigned long>(automorphism_count(f)));
  return r;
}

}  // namespace blowup
