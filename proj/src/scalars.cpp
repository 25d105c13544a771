#include "banarith/scalars.hpp"

#include <algorithm>

#include "banarith/error.hpp"

namespace banarith {

BaseRing BaseRing::integers() {
  BaseRing r;
  r.kind = RingKind::IntegersAbs;
  return r;
}

BaseRing BaseRing::rationals() {
  BaseRing r;
  r.kind = RingKind::RationalsAbs;
  return r;
}

namespace {

std::vector<Integer> normalize_primes(std::vector<Integer> primes) {
  for (const auto& p : primes) {
    if (!is_prime(p)) fail(ErrorKind::Domain, "localization generator " + p.get_str() + " is not prime");
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  return primes;
}

}  // namespace

BaseRing BaseRing::trivial(std::vector<Integer> inverted_primes) {
  BaseRing r;
  r.kind = RingKind::TrivialNorm;
  r.inverted_primes = normalize_primes(std::move(inverted_primes));
  r.local_norm = LocalNorm::Trivial;
  return r;
}

BaseRing BaseRing::localized(std::vector<Integer> inverted_primes, LocalNorm norm) {
  BaseRing r;
  r.kind = RingKind::LocalizedIntegers;
  r.inverted_primes = normalize_primes(std::move(inverted_primes));
  r.local_norm = norm;
  return r;
}

BaseRing BaseRing::padic(const Integer& p, const Rational& radius) {
  if (!is_prime(p)) fail(ErrorKind::Domain, "p-adic ring needs a prime, got " + p.get_str());
  require(radius > 0 && radius < 1, ErrorKind::Domain, "p-adic radius must lie in (0, 1)");
  BaseRing r;
  r.kind = RingKind::PAdicScaled;
  r.prime = p;
  r.radius = radius;
  return r;
}

BaseRing BaseRing::circle(const Integer& denominator_bound) {
  require(denominator_bound >= 1, ErrorKind::Domain, "circle denominator bound must be >= 1");
  BaseRing r;
  r.kind = RingKind::CircleQuotient;
  r.denominator_bound = denominator_bound;
  return r;
}

bool BaseRing::ultrametric() const {
  switch (kind) {
    case RingKind::TrivialNorm:
    case RingKind::PAdicScaled:
      return true;
    case RingKind::LocalizedIntegers:
      return local_norm == LocalNorm::Trivial;
    default:
      return false;
  }
}

bool BaseRing::has_multiplication() const { return kind != RingKind::CircleQuotient; }

bool BaseRing::contains(const Rational& q) const {
  switch (kind) {
    case RingKind::IntegersAbs:
      return is_integer(q);
    case RingKind::RationalsAbs:
      return true;
    case RingKind::TrivialNorm:
    case RingKind::LocalizedIntegers: {
      Integer den = q.get_den();
      for (const auto& p : inverted_primes) {
        Integer rest;
        mpz_remove(rest.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
        den = rest;
      }
      return den == 1;
    }
    case RingKind::PAdicScaled:
      return q.get_den() % prime != 0;
    case RingKind::CircleQuotient:
      return denominator_bound % q.get_den() == 0;
  }
  return false;
}

std::string BaseRing::name() const {
  switch (kind) {
    case RingKind::IntegersAbs:
      return "integers";
    case RingKind::RationalsAbs:
      return "rationals";
    case RingKind::TrivialNorm:
      return "trivial";
    case RingKind::LocalizedIntegers:
      return "localized";
    case RingKind::PAdicScaled:
      return "padic";
    case RingKind::CircleQuotient:
      return "circle";
  }
  return "unknown";
}

NormValue::NormValue(Rational lo, Rational hi) : lower(std::move(lo)), upper(std::move(hi)) {
  if (lower < 0 || lower > upper)
    fail(ErrorKind::Internal, "malformed norm enclosure [" + to_string(lower) + ", " + to_string(upper) + "]");
}

NormValue operator+(const NormValue& a, const NormValue& b) { return NormValue(a.lower + b.lower, a.upper + b.upper); }

NormValue operator*(const NormValue& a, const NormValue& b) { return NormValue(a.lower * b.lower, a.upper * b.upper); }

NormValue operator*(const Rational& k, const NormValue& a) {
  require(k >= 0, ErrorKind::Domain, "norm enclosures scale by non-negative factors only");
  return NormValue(k * a.lower, k * a.upper);
}

NormValue join(const NormValue& a, const NormValue& b) {
  return NormValue(max(a.lower, b.lower), max(a.upper, b.upper));
}

Scalar::Scalar(BaseRing ring, Rational value) : ring_(std::move(ring)), value_(std::move(value)) {
  if (ring_.kind == RingKind::CircleQuotient) value_ = fractional_part(value_);
  if (!ring_.contains(value_)) {
    fail(ErrorKind::Unsupported, to_string(value_) + " is not representable in ring " + ring_.name());
  }
}

namespace {

void require_same_ring(const Scalar& a, const Scalar& b) {
  if (!(a.ring() == b.ring()))
    fail(ErrorKind::Domain, "scalar arithmetic across rings " + a.ring().name() + " and " + b.ring().name());
}

}  // namespace

Scalar operator+(const Scalar& a, const Scalar& b) {
  require_same_ring(a, b);
  return Scalar(a.ring(), a.value() + b.value());
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  require_same_ring(a, b);
  return Scalar(a.ring(), a.value() - b.value());
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  require_same_ring(a, b);
  if (!a.ring().has_multiplication())
    fail(ErrorKind::Unsupported, "ring " + a.ring().name() + " has no multiplication");
  return Scalar(a.ring(), a.value() * b.value());
}

Scalar Scalar::operator-() const { return Scalar(ring_, -value_); }

Rational norm_of(const BaseRing& ring, const Rational& value) {
  if (!ring.contains(value)) {
    fail(ErrorKind::Unsupported, to_string(value) + " is not representable in ring " + ring.name());
  }
  if (value == 0) return 0;
  switch (ring.kind) {
    case RingKind::IntegersAbs:
    case RingKind::RationalsAbs:
      return abs(value);
    case RingKind::TrivialNorm:
      return 1;
    case RingKind::LocalizedIntegers:
      return ring.local_norm == LocalNorm::Abs ? abs(value) : Rational(1);
    case RingKind::PAdicScaled:
      return pow(ring.radius, static_cast<long>(valuation(value.get_num(), ring.prime)));
    case RingKind::CircleQuotient:
      return distance_to_integer(value);
  }
  fail(ErrorKind::Unsupported, "unsupported ring kind");
}

NormValue norm(const Scalar& a) { return NormValue::exact(norm_of(a.ring(), a.value())); }

NormValue scale_norm(const NormValue& x, const Rational& r) {
  if (r <= 0) fail(ErrorKind::Domain, "scaling factor must be positive, got " + to_string(r));
  return NormValue(x.lower * r, x.upper * r);
}

bool AxiomReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const AxiomCheck& c) { return !c.applicable || c.passed; });
}

AxiomReport check_ring_axioms(const BaseRing& ring, std::span<const Scalar> samples) {
  for (const auto& s : samples) {
    require(s.ring() == ring, ErrorKind::Domain, "sample from a different ring");
  }
  AxiomReport report;

  AxiomCheck zero;
  zero.axiom = "norm(0) = 0";
  zero.passed = norm_of(ring, 0) == 0;
  report.checks.push_back(zero);

  AxiomCheck definite;
  definite.axiom = "norm(a) = 0 implies a = 0";
  for (const auto& a : samples) {
    if (!a.is_zero() && norm(a).upper == 0) {
      definite.passed = false;
      definite.witness_a = a.value();
      break;
    }
  }
  report.checks.push_back(definite);

  AxiomCheck triangle;
  triangle.axiom = "norm(a+b) <= norm(a) + norm(b)";
  AxiomCheck strong;
  strong.axiom = "norm(a+b) <= max(norm(a), norm(b))";
  strong.applicable = ring.ultrametric();
  AxiomCheck submult;
  submult.axiom = "norm(ab) <= C norm(a) norm(b)";
  submult.applicable = ring.has_multiplication();
  submult.detail = "C = " + to_string(ring.submult_constant);

  auto record = [](AxiomCheck& check, const Scalar& a, const Scalar& b) {
    if (!check.passed) return;
    check.passed = false;
    check.witness_a = a.value();
    check.witness_b = b.value();
  };

  for (const auto& a : samples) {
    const Rational na = norm(a).upper;
    for (const auto& b : samples) {
      const Rational nb = norm(b).upper;
      const Scalar sum = a + b;
      const Rational ns = norm(sum).upper;
      if (ns > na + nb) record(triangle, a, b);
      if (strong.applicable && ns > max(na, nb)) record(strong, a, b);
      if (submult.applicable && norm(a * b).upper > ring.submult_constant * na * nb) {
        record(submult, a, b);
      }
    }
  }
  report.checks.push_back(triangle);
  report.checks.push_back(strong);
  report.checks.push_back(submult);
  return report;
}

NormValue exp_enclosure(const Rational& x, unsigned terms) {
  require(x >= 0, ErrorKind::Domain, "exp_enclosure expects x >= 0");
  require(terms >= 1, ErrorKind::Domain, "exp_enclosure needs at least one term");
  Rational partial = 0;
  Rational term = 1;  // x^k / k!
  for (unsigned k = 0; k < terms; ++k) {
    partial += term;
    term *= x;
    term /= (k + 1);
  }
  // term is now x^n/n!; the remainder is at most term * e^x.
  if (term >= 1) fail(ErrorKind::Domain, "too few terms for a finite bound on e^" + to_string(x));
  return NormValue(partial, partial / (1 - term));
}

Rational exp_upper_bound(const Rational& x, const Rational& width) {
  require(width > 0, ErrorKind::Domain, "width must be positive");
  for (unsigned terms = 1;; ++terms) {
    Rational term = 1;
    for (unsigned k = 1; k <= terms; ++k) term = term * x / k;
    if (term >= 1) continue;
    NormValue e = exp_enclosure(x, terms);
    if (e.width() <= width) return e.upper;
  }
}

}  // namespace banarith
