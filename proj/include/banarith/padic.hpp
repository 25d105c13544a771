#pragma once

#include <vector>

#include "banarith/disks.hpp"
#include "banarith/scalars.hpp"

namespace banarith {

/// Z{x/r} / (x - p), the scaled p-adic integers with |a p^n| = r^n.
struct PadicPresentation {
  Integer p;
  Rational r;
  long working_degree = 16;

  static PadicPresentation make(const Integer& p, const Rational& r, long working_degree = 16);
  PolydiskAlgebra algebra() const;
  BaseRing ring() const { return BaseRing::padic(p, r); }
};

struct DivisionResult {
  Series quotient;
  Rational quotient_norm;
  Rational dividend_norm;
  Rational bound;  // ||b|| / (p - r)
  bool bound_holds = false;
  bool remultiplies = false;  // (x - p) a == b
};

/// Solves (x - p) a = b for b in the ideal; throws NotInIdealError otherwise.
DivisionResult divide_by_x_minus_p(const Series& b, const PadicPresentation& pres);

/// Base-p digits of |n| (least significant first, first digit nonzero)
/// shifted by s = v_p(n).
struct PadicExpansion {
  std::vector<long> digits;
  long shift = 0;
  bool negative = false;
  Rational norm;        // r^s
  Rational lift_norm;   // l1 norm of the canonical lift sum b_i x^{s+i}
  Rational lift_bound;  // (p - 1)/(1 - r) r^s
  bool bound_holds = true;
};

PadicExpansion padic_expand(const Integer& n, const PadicPresentation& pres);

/// Coefficients (ascending) of the canonical lift of n.
std::vector<Integer> canonical_lift(const PadicExpansion& e);

struct QuotientNormReport {
  NormValue bounds;
  std::vector<Integer> best_lift;  // ascending coefficients, best_lift(p) = n
  Rational expansion_bound;
};

/// Residue lower bound r^{v_p(n)} and the exact minimum of ||f|| over integer
/// lifts f(p) = n of degree at most `search_degree` (the canonical lift is
/// always part of the search space).
QuotientNormReport quotient_norm_bounds(const Integer& n, const PadicPresentation& pres, long search_degree);

struct BezoutWitness {
  Integer a;  // a p^n + b q^n = 1
  Integer b;
  Rational bound;  // p^{-n} + q^{-n}
  bool verified = false;
};

BezoutWitness bezout_orthogonality(const Integer& p, const Integer& q, unsigned long n);

/// Norm on Z^r1_p (x) Z^r2_p: the p-adic norm at radius min(r1, r2).
BaseRing zp_tensor_norm(const Integer& p, const Rational& r1, const Rational& r2);

struct S1Report {
  Rational partial;          // sum_{i<=N} p^{-(i+1)} p^{-i}
  NormValue enclosure;       // partial plus geometric tail
  Rational limit;            // p / (p^2 - 1)
  Rational alternate_value;  // 1 / (p - 1), the other closed form in circulation
  bool discrepancy = false;  // limit != alternate_value
  bool annihilated = false;  // (x - p) kills every coefficient below the boundary
  Rational boundary_norm;    // norm of the surviving x^{N+1} term
};

/// The element (1/p) sum (x/p)^i of S^1{px}, truncated at degree N.
S1Report s1_kernel_element_norm(const Integer& p, long N);

}  // namespace banarith
