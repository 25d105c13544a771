#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "banarith/linalg.hpp"
#include "banarith/scalars.hpp"

namespace banarith {

/// Labels of basis elements. One-dimensional index sets use length-1 indices.
using Index = std::vector<long>;

enum class NormMode { SumL1, SupLinf };

const char* to_string(NormMode mode);

/// Closed form for a weight function beyond its explicit table, valid for
/// indices i >= from.
struct TailRule {
  enum class Kind { Geometric, Polynomial, TableConst };

  Kind kind = Kind::TableConst;
  long from = 0;
  Rational scale = 1;  // Geometric: scale * base^i
  Rational base = 1;
  std::vector<Rational> coeffs;  // Polynomial: sum c_k i^k (or its reciprocal)
  bool reciprocal = false;
  Rational value = 1;  // TableConst

  static TailRule geometric(Rational base, Rational scale = 1, long from = 0);
  static TailRule polynomial(std::vector<Rational> coeffs, long from = 0, bool reciprocal = false);
  static TailRule constant(long from, Rational value);

  Rational at(long i) const;
  /// Rule for 1/w(i).
  TailRule inverted() const;

  friend bool operator==(const TailRule&, const TailRule&) = default;
};

/// Strictly positive weights: an explicit table plus an optional tail rule
/// for one-dimensional indices.
class WeightFunction {
 public:
  WeightFunction() = default;
  explicit WeightFunction(std::map<Index, Rational> table, std::optional<TailRule> tail = std::nullopt);

  static WeightFunction constant(const Rational& value);
  static WeightFunction geometric(const Rational& base);
  static WeightFunction from_rule(const TailRule& rule);
  /// values[k] becomes the weight of index {first + k}.
  static WeightFunction from_values(const std::vector<Rational>& values, long first = 0);

  bool defined_at(const Index& index) const;
  Rational at(const Index& index) const;
  Rational at(long i) const { return at(Index{i}); }

  const std::map<Index, Rational>& table() const { return table_; }
  const std::optional<TailRule>& tail() const { return tail_; }

  WeightFunction reciprocal() const;

  friend bool operator==(const WeightFunction&, const WeightFunction&) = default;

 private:
  std::map<Index, Rational> table_;
  std::optional<TailRule> tail_;
};

/// Psi order on the window [first, last]: a(i) <= b(i) everywhere.
bool pointwise_leq(const WeightFunction& a, const WeightFunction& b, long first, long last);

/// Upsilon order on the window [first, last]: indices where a(i) < b(i)
/// fails. a < b in the Upsilon sense when this exceptional set is finite.
std::vector<long> strict_order_exceptions(const WeightFunction& a, const WeightFunction& b, long first, long last);

/// A weighted l1 coproduct or l-infinity product of copies of the base ring
/// over a finite index set.
struct SpaceDescriptor {
  BaseRing ring;
  std::string label;
  std::vector<Index> indices;
  WeightFunction weights;
  NormMode mode = NormMode::SumL1;

  void validate() const;
  std::size_t dimension() const { return indices.size(); }
  Rational weight(std::size_t position) const { return weights.at(indices.at(position)); }
};

/// Norm of a coordinate vector (aligned with d.indices).
Rational vector_norm(const SpaceDescriptor& d, const std::vector<Rational>& coords);
/// Norm of the functional v -> sum alpha_j v_j on d.
Rational functional_norm(const SpaceDescriptor& d, const std::vector<Rational>& alpha);

struct WeightedSeqElement {
  std::map<Index, Scalar> coeffs;
  WeightFunction weights;
  NormMode mode = NormMode::SumL1;
  /// Enclosure of the norm of the part of the element outside `coeffs`.
  NormValue tail;
};

NormValue seq_norm(const WeightedSeqElement& v);

/// Weight-reciprocal dual. l1 becomes l-infinity; applied to an
/// l-infinity descriptor the finite-stage predual is returned.
SpaceDescriptor dual_descriptor(const SpaceDescriptor& d);

SpaceDescriptor tensor_l1(const SpaceDescriptor& a, const SpaceDescriptor& b);

/// Degree-n symmetric power of a finite l1 descriptor; indices of the
/// result are exponent vectors in descending lexicographic order.
SpaceDescriptor sym_power(const SpaceDescriptor& v, unsigned n);

/// alpha(i) = 1 + sum_{k <= min(i, K)} psi_k(i), with psi_1 = list[0].
Rational dominating_weight_at(const std::vector<WeightFunction>& list, long i);

/// Tabulates alpha on [1, horizon]; when every input ends in a constant
/// tail the result carries the matching constant tail rule.
WeightFunction dominate_weights(const std::vector<WeightFunction>& list, long horizon = 64);

struct InterchangeReport {
  std::vector<Rational> phi2;
  std::vector<Rational> phi2_doubled;  // 2^k phi2(k)
  Rational iota_norm;                  // l1-of-sup into sup-of-l1 at phi2
  Rational pi_norm;                    // sup-of-l1 at phi2 into l1-of-sup at phi2'
  Rational pi_bound;                   // sum_{k=1}^{K} 2^{-k}
  Rational f_norm;
  Rational g_norm;
  bool iota_after_pi_is_g = false;
  bool pi_after_iota_is_f = false;
  bool iota_natural = false;  // g o iota = iota' o f
  bool pi_natural = false;    // pi' o g = f' o pi
  bool all_hold() const;
};

/// Interchange maps between the l1-over-s of sup-over-k space and the
/// sup-over-k of l1-over-s space on a finite K x S grid. Row k of
/// `base_norms` holds the norms of the basis elements of W^(k) (empty: all 1).
InterchangeReport interchange_maps(const std::vector<Rational>& r_s,
                                   const std::vector<std::vector<Rational>>& base_norms, const WeightFunction& phi2);

struct DiagonalMap {
  SpaceDescriptor domain;
  std::vector<Rational> entries;
};

struct CoproductKernel {
  SpaceDescriptor kernel;  // indices (summand, original index...)
  Matrix basis;            // columns, in coordinates of the whole coproduct
  bool agrees = false;     // per-summand kernels span the kernel of the whole map
};

CoproductKernel kernel_of_coproduct_map(const std::vector<DiagonalMap>& maps);

}  // namespace banarith
