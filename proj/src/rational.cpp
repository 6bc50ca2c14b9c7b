#include "daniell/rational.hpp"

#include <stdexcept>

namespace daniell {

Rational rat(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational q(static_cast<long>(num), static_cast<long>(den));
  q.canonicalize();
  return q;
}

namespace {

mpz_class parse_integer(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty integer in rational");
  const bool plus = s[0] == '+';
  std::size_t i = (plus || s[0] == '-') ? 1 : 0;
  if (i == s.size()) throw std::invalid_argument("sign without digits in rational");
  for (std::size_t j = i; j < s.size(); ++j)
    if (s[j] < '0' || s[j] > '9')
      throw std::invalid_argument("invalid rational literal: \"" + s + "\"");
  return mpz_class(plus ? s.substr(1) : s, 10);
}

}  // namespace

Rational rat_parse(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_integer(text));
  mpz_class num = parse_integer(text.substr(0, slash));
  mpz_class den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator: \"" + text + "\"");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string rat_str(const Rational& q) { return q.get_str(); }

Rational rat_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

Rational pow2(std::int64_t e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e < 0 ? -e : e));
  return e >= 0 ? Rational(p) : Rational(mpz_class(1), p);
}

Rational rat_pow(const Rational& q, std::int64_t e) {
  if (e < 0) throw std::invalid_argument("rat_pow: negative exponent");
  Rational acc(1), base(q);
  std::int64_t n = e;
  while (n > 0) {
    if (n & 1) acc *= base;
    base *= base;
    n >>= 1;
  }
  return acc;
}

}  // namespace daniell
