#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "blowup/graph.hpp"
#include "blowup/measure.hpp"
#include "blowup/scalar.hpp"

namespace blowup {

/// Nonnegative rational exponent per vertex.
class ExponentVector {
 public:
  explicit ExponentVector(RationalVector exponents);
  /// h * k.
  static ExponentVector from_blowup(const BlowupVector& k, std::size_t h = 1);

  std::size_t size() const { return static_cast<std::size_t>(a_.size()); }
  const Rational& operator[](std::size_t v) const { return a_[static_cast<Eigen::Index>(v)]; }
  const RationalVector& values() const { return a_; }
  bool integral() const;

 private:
  RationalVector a_;
};

/// p_a(mu) = prod mu(v)^a(v). The exact overload requires integer exponents.
Rational p_eval(const ExponentVector& a, const Measure& m);
double p_eval(const ExponentVector& a, const Eigen::VectorXd& m);

/// mu_a = a / |a|_1, the maximizer of p_a. Rejects entries below 1.
Measure amgm_maximizer(const ExponentVector& a);

/// s(core^(h k); core^mu) = sum over sigma in Aut(core) of p_{h sigma(k)}(mu),
/// with precomputed automorphisms and exponent rows.
class BlowupObjective {
 public:
  /// Rejects cores with twins and k of the wrong length.
  BlowupObjective(const Graph& core, const BlowupVector& k, std::size_t h);

  std::size_t dimension() const { return k_.size(); }
  std::size_t automorphism_count() const { return exponents_.size(); }
  const BlowupVector& k() const { return k_; }
  std::size_t h() const { return h_; }
  /// Row sigma holds h * k(sigma(v)).
  const std::vector<std::vector<unsigned long>>& exponents() const { return exponents_; }

  template <typename Scalar>
  Scalar value(const Vector<Scalar>& mu) const;

  RationalVector gradient(const RationalVector& mu) const;
  Eigen::VectorXd gradient(const Eigen::VectorXd& mu) const;
  /// log f and its gradient, stable for large exponents.
  double log_value(const Eigen::VectorXd& mu) const;
  Eigen::VectorXd log_gradient(const Eigen::VectorXd& mu) const;

 private:
  BlowupVector k_;
  std::size_t h_;
  std::vector<std::vector<unsigned long>> exponents_;
  Eigen::MatrixXd exponent_matrix_;
};

extern template Rational BlowupObjective::value<Rational>(const Vector<Rational>&) const;
extern template double BlowupObjective::value<double>(const Vector<double>&) const;

Rational blowup_self_density(const Graph& core, const BlowupVector& k, std::size_t h, const Measure& m);
Eigen::VectorXd blowup_self_gradient(const Graph& core, const BlowupVector& k, std::size_t h, const Measure& m);

/// True iff k(sigma(v)) = k(v) for every automorphism sigma of the core.
bool is_invariant(const Graph& core, const BlowupVector& k);
/// is_invariant of the twin-free factor of g.
bool is_balanced(const Graph& g);

/// Removes the component along the all-ones direction.
template <typename Scalar>
Vector<Scalar> tangent_projection(const Vector<Scalar>& g) {
  const Scalar mean = g.sum() / Scalar(static_cast<long>(g.size()));
  return g - Vector<Scalar>::Constant(g.size(), mean);
}

struct OptimizeOptions {
  std::size_t restarts = 8;
  double tol = 1e-9;
  std::uint64_t seed = 0;
  std::size_t max_iterations = 100000;
  /// Return mu_k directly when k is invariant.
  bool closed_form_shortcut = true;
};

struct OptimizationResult {
  Eigen::VectorXd argmax;
  double value = 0;
  std::optional<Rational> exact_value;
  std::size_t restarts = 0;
  /// Max norm of the tangent gradient divided by the value.
  double first_order_residual = 0;
  bool converged = false;
  bool balanced = false;
  bool used_closed_form = false;
};

/// Projected gradient ascent on log f over the open simplex from mu_k,
/// uniform, each mu_{sigma(k)}, midpoints toward them and seeded Dirichlet
/// draws. The best run wins; ties go to the lexicographically smaller argmax.
OptimizationResult optimize_nu(const Graph& core, const BlowupVector& k, std::size_t h,
                               const OptimizeOptions& options = {});

struct CriticalityRow {
  std::size_t h;
  Eigen::VectorXd tangent_gradient;
  double relative_norm;
  bool critical;
  /// All partial derivatives at mu_k are equal as exact rationals.
  bool exactly_critical;
};

/// First-order check of mu_k for each h, with threshold 1e-9 relative.
std::vector<CriticalityRow> critical_point_test(const Graph& core, const BlowupVector& k,
                                                const std::vector<std::size_t>& h_range);

/// sup_s / |Aut(f)|. Requires 0 <= sup_s <= 1.
Rational inducibility_from_sup(const Graph& f, const Rational& sup_s);

}  // namespace blowup
