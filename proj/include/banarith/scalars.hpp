#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "banarith/rational.hpp"

namespace banarith {

enum class RingKind {
  IntegersAbs,
  RationalsAbs,
  TrivialNorm,        // 0/1-valued norm on a localization S^{-1}Z
  LocalizedIntegers,  // S^{-1}Z with either the usual or the trivial norm
  PAdicScaled,        // Z with |a p^n| = r^n, r = p^{-eps}
  CircleQuotient,     // R/Z, represented by the subgroup (1/N)Z/Z
};

enum class LocalNorm { Abs, Trivial };

/// Tag of a supported Banach ring. Only the fields relevant to `kind` are
/// meaningful; use the named constructors.
struct BaseRing {
  RingKind kind = RingKind::RationalsAbs;
  std::vector<Integer> inverted_primes;  // generators of S (TrivialNorm, LocalizedIntegers)
  LocalNorm local_norm = LocalNorm::Abs;
  Integer prime = 0;              // PAdicScaled
  Rational radius = 0;            // PAdicScaled, in (0, 1)
  Integer denominator_bound = 0;  // CircleQuotient: denominators divide it, so elements form (1/N)Z/Z
  Rational submult_constant = 1;

  static BaseRing integers();
  static BaseRing rationals();
  static BaseRing trivial(std::vector<Integer> inverted_primes = {});
  static BaseRing localized(std::vector<Integer> inverted_primes, LocalNorm norm);
  static BaseRing padic(const Integer& p, const Rational& r);
  static BaseRing circle(const Integer& denominator_bound);

  /// True when the norm satisfies the strong triangle inequality.
  bool ultrametric() const;
  /// True when the ring carries a multiplication (R/Z does not).
  bool has_multiplication() const;
  /// Whether q is a representable element.
  bool contains(const Rational& q) const;
  std::string name() const;

  friend bool operator==(const BaseRing&, const BaseRing&) = default;
};

/// Closed rational interval enclosing a norm.
struct NormValue {
  Rational lower = 0;
  Rational upper = 0;

  NormValue() = default;
  NormValue(Rational lo, Rational hi);
  static NormValue exact(const Rational& q) { return NormValue(q, q); }

  bool is_exact() const { return lower == upper; }
  bool contains(const Rational& q) const { return lower <= q && q <= upper; }
  Rational width() const { return upper - lower; }

  friend bool operator==(const NormValue&, const NormValue&) = default;
};

NormValue operator+(const NormValue& a, const NormValue& b);
NormValue operator*(const NormValue& a, const NormValue& b);
NormValue operator*(const Rational& k, const NormValue& a);
/// Enclosure of max(x, y) for x in a, y in b.
NormValue join(const NormValue& a, const NormValue& b);

/// An exact element of a BaseRing. Circle elements are normalized to [0, 1).
class Scalar {
 public:
  Scalar(BaseRing ring, Rational value);

  const BaseRing& ring() const { return ring_; }
  const Rational& value() const { return value_; }
  bool is_zero() const { return value_ == 0; }

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  Scalar operator-() const;

  friend bool operator==(const Scalar&, const Scalar&) = default;

 private:
  BaseRing ring_;
  Rational value_;
};

/// Exact norm of a representable value of `ring`.
Rational norm_of(const BaseRing& ring, const Rational& value);

NormValue norm(const Scalar& a);

/// Norm in the rescaled module M_r: both bounds multiplied by r > 0.
NormValue scale_norm(const NormValue& x, const Rational& r);

struct AxiomCheck {
  std::string axiom;
  bool applicable = true;
  bool passed = true;
  std::optional<Rational> witness_a;
  std::optional<Rational> witness_b;
  std::string detail;
};

struct AxiomReport {
  std::vector<AxiomCheck> checks;
  bool all_passed() const;
};

/// Exhaustive check of the norm axioms over all pairs of samples.
AxiomReport check_ring_axioms(const BaseRing& ring, std::span<const Scalar> samples);

/// Enclosure of e^x for rational x >= 0 from the Taylor polynomial with
/// `terms` terms: e^x lies in [S, S / (1 - x^n/n!)] once x^n/n! < 1.
NormValue exp_enclosure(const Rational& x, unsigned terms);

/// Rational upper bound for e^x whose enclosure width is at most `width`.
Rational exp_upper_bound(const Rational& x, const Rational& width = Rational(1, 1000000));

}  // namespace banarith
