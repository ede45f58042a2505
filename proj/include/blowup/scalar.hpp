#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include <Eigen/Core>
#include <gmpxx.h>

namespace Eigen {

// Exact rationals as an Eigen scalar. Only the arithmetic reductions
// (sum, prod, cwiseProduct, minCoeff) are used; no decompositions.
template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  using Real = mpq_class;
  using NonInteger = mpq_class;
  using Nested = mpq_class;
  using Literal = mpq_class;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace blowup {

using Rational = mpq_class;
using Natural = mpz_class;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RationalVector = Vector<Rational>;

/// Lowest-terms `p/q` (or `p` when the denominator is 1).
std::string to_string(const Rational& q);

/// Parses `p/q`, `p`, or a finite decimal such as `0.25`.
Rational parse_rational(std::string_view text);

/// num / den in lowest terms. Throws on a zero denominator.
Rational ratio(const Natural& num, const Natural& den);

/// Exact integer power with a nonnegative exponent.
Rational pow(const Rational& base, unsigned long exponent);

Natural binomial(std::size_t n, std::size_t k);

inline double to_double(const Rational& q) { return q.get_d(); }

inline Eigen::VectorXd to_double(const RationalVector& v) {
  return v.unaryExpr([](const Rational& q) { return q.get_d(); });
}

}  // namespace blowup
