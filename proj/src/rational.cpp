#include "blowup/errors.hpp"
#include "blowup/scalar.hpp"

#include <cctype>

namespace blowup {

std::string to_string(const Rational& q) {
  Rational c(q);
  c.canonicalize();
  return c.get_str();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Natural parse_natural(std::string_view s, std::string_view whole) {
  if (!all_digits(s))
    throw ParseError("invalid rational '" + std::string(whole) + "'");
  return Natural(std::string(s));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational result;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Natural num = parse_natural(s.substr(0, slash), text);
    Natural den = parse_natural(s.substr(slash + 1), text);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    result = Rational(num, den);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac_part = s.substr(dot + 1);
    if (int_part.empty() && frac_part.empty())
      throw ParseError("invalid rational '" + std::string(text) + "'");
    Natural ip = int_part.empty() ? Natural(0) : parse_natural(int_part, text);
    Natural fp = frac_part.empty() ? Natural(0) : parse_natural(frac_part, text);
    Natural scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac_part.size());
    result = Rational(ip * scale + fp, scale);
  } else {
    result = Rational(parse_natural(s, text));
  }
  result.canonicalize();
  return negative ? Rational(-result) : result;
}

Rational ratio(const Natural& num, const Natural& den) {
  if (den == 0) throw PreconditionError("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational pow(const Rational& base, unsigned long exponent) {
  Natural num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Natural binomial(std::size_t n, std::size_t k) {
  Natural r;
  if (k > n) return 0;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace blowup
