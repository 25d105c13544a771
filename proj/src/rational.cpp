#include "banarith/rational.hpp"

#include <cctype>

#include "banarith/error.hpp"

namespace banarith {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain:
      return "domain";
    case ErrorKind::Unsupported:
      return "unsupported";
    case ErrorKind::Validation:
      return "validation";
    case ErrorKind::NotInIdeal:
      return "not-in-ideal";
    case ErrorKind::Internal:
      return "internal";
  }
  return "internal";
}

std::string to_string(const Rational& q) { return q.get_num().get_str() + "/" + q.get_den().get_str(); }

std::string to_string(const Integer& n) { return n.get_str(); }

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Integer parse_signed(std::string_view text, std::string_view whole) {
  std::string_view digits = text;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (!all_digits(digits)) {
    fail(ErrorKind::Validation, "malformed number '" + std::string(whole) + "'");
  }
  std::string s(text);
  if (s.front() == '+') s.erase(0, 1);
  return Integer(s, 10);
}

}  // namespace

Integer parse_integer(std::string_view text) { return parse_signed(text, text); }

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_signed(text, text));
  Integer num = parse_signed(text.substr(0, slash), text);
  std::string_view den_text = text.substr(slash + 1);
  if (!all_digits(den_text)) {
    fail(ErrorKind::Validation, "malformed denominator in '" + std::string(text) + "'");
  }
  Integer den(std::string(den_text), 10);
  if (den == 0) fail(ErrorKind::Validation, "zero denominator in '" + std::string(text) + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational pow(const Rational& base, long exponent) {
  if (exponent < 0) {
    require(base != 0, ErrorKind::Domain, "negative power of zero");
    Rational inv = 1 / base;
    return pow(inv, -exponent);
  }
  Rational result;
  mpz_pow_ui(result.get_num_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(result.get_den_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  result.canonicalize();
  return result;
}

Integer pow(const Integer& base, unsigned long exponent) {
  Integer result;
  mpz_pow_ui(result.get_mpz_t(), base.get_mpz_t(), exponent);
  return result;
}

unsigned long valuation(const Integer& n, const Integer& p) {
  require(n != 0, ErrorKind::Domain, "valuation of zero");
  require(p >= 2, ErrorKind::Domain, "valuation base must be >= 2");
  Integer rest;
  return mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
}

bool is_prime(const Integer& n) { return n >= 2 && mpz_probab_prime_p(n.get_mpz_t(), 50) > 0; }

Rational fractional_part(const Rational& q) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return q - Rational(fl);
}

Rational distance_to_integer(const Rational& q) {
  Rational f = fractional_part(q);
  Rational g = 1 - f;
  return f < g ? f : g;
}

}  // namespace banarith
