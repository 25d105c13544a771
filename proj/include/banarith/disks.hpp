#pragma once

#include <map>
#include <optional>
#include <vector>

#include "banarith/scalars.hpp"
#include "banarith/spaces.hpp"

namespace banarith {

enum class DiskMode { Arch, NonArch };

const char* to_string(DiskMode mode);

/// R{x_1/r_1, ..., x_n/r_n}, optionally with the psi-weighted norm
/// sum |a_J| r^J psi(|J|).
struct PolydiskAlgebra {
  BaseRing ring;
  std::vector<Rational> radii;
  DiskMode mode = DiskMode::Arch;
  std::optional<WeightFunction> psi;

  static PolydiskAlgebra make(BaseRing ring, std::vector<Rational> radii, DiskMode mode = DiskMode::Arch,
                              std::optional<WeightFunction> psi = std::nullopt);

  void validate() const;
  std::size_t arity() const { return radii.size(); }
  /// r^J psi(|J|).
  Rational monomial_weight(const Index& j) const;

  friend bool operator==(const PolydiskAlgebra&, const PolydiskAlgebra&) = default;
};

/// A polynomial part plus an upper bound `tail` on the norm of the
/// remainder. The remainder may share monomials with the polynomial part.
struct Series {
  PolydiskAlgebra algebra;
  std::map<Index, Rational> coeffs;  // no stored zeros
  Rational tail = 0;

  explicit Series(PolydiskAlgebra alg) : algebra(std::move(alg)) {}
  static Series monomial(const PolydiskAlgebra& alg, const Index& j, const Rational& c = 1);
  static Series from_dense(const PolydiskAlgebra& alg, const std::vector<Rational>& coeffs);

  void set(const Index& j, const Rational& c);
  Rational coeff(const Index& j) const;
  long degree() const;  // max total degree, -1 for the zero polynomial
  bool is_zero() const { return coeffs.empty() && tail == 0; }

  friend bool operator==(const Series&, const Series&) = default;
};

long total_degree(const Index& j);

/// Norm of the polynomial part alone (exact).
Rational polynomial_norm(const Series& f);
NormValue series_norm(const Series& f);

Series add(const Series& f, const Series& g);
Series sub(const Series& f, const Series& g);

/// Product with tail propagation; terms of total degree above
/// `max_degree` are discarded into the tail.
Series mul(const Series& f, const Series& g, std::optional<long> max_degree = std::nullopt);

Series restrict(const Series& f, const std::vector<Rational>& smaller_radii);

/// Element of the coproduct over i >= 0 of R{x/(r + 1/i)} with weight psi(i);
/// slot 0 uses the radius r + 1.
struct SeriesFamily {
  Rational r;
  WeightFunction psi;
  std::vector<Series> slots;
};

PolydiskAlgebra family_slot_algebra(const BaseRing& ring, const Rational& r, long i);
SeriesFamily make_family(const BaseRing& ring, const Rational& r, const WeightFunction& psi,
                         const std::vector<std::vector<Rational>>& dense_slots);
Rational family_norm(const SeriesFamily& v);

struct DeltaResult {
  SeriesFamily family;
  Rational family_norm;
  Rational source_norm;
  Rational constant;         // the supplied E
  Rational required;         // max (1 + 1/(jr))^j over the support
  bool bound_holds = false;  // family_norm <= E * source_norm
};

/// delta(sum a_j x^j) = (a_i x^i)_i. E must be a rational upper bound for e^{1/r}.
DeltaResult delta_map(const Series& f, const Rational& E);

struct SigmaResult {
  Series value;
  Rational source_norm;
  Rational target_norm;
  bool non_expanding = false;
};

SigmaResult sigma_map(const SeriesFamily& v, const PolydiskAlgebra& target);

SeriesFamily id_minus_shift(const SeriesFamily& v);

struct PairingReport {
  Rational value;
  Rational left;   // sum |a_I| rho^{-I}
  Rational right;  // sum |b_J| rho^{J}
  Rational bound;  // C * left * right
  bool holds = false;
};

PairingReport pairing(const Series& f, const Series& g, const std::vector<Rational>& rho,
                      const std::vector<Rational>& r);

struct ComparisonReport {
  Rational l1_at_s;
  Rational sup_at_t;
  Rational factor;  // prod 1/(1 - s_k/t_k)
  Rational rhs;
  bool holds = false;
};

ComparisonReport compare_norms(const Series& f, const std::vector<Rational>& s, const std::vector<Rational>& t);

enum class RadiusDirection { Increasing, Decreasing };

struct RadiusFamily {
  std::vector<PolydiskAlgebra> members;
  RadiusDirection direction = RadiusDirection::Decreasing;

  void validate() const;
};

}  // namespace banarith
