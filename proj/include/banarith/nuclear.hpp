#pragma once

#include <optional>
#include <string>
#include <vector>

#include "banarith/disks.hpp"
#include "banarith/linalg.hpp"
#include "banarith/spaces.hpp"

namespace banarith {

enum class ActionKind { Diagonal, ColumnFinite, Shift, Composite };

const char* to_string(ActionKind kind);

/// A map between finite presentations, stored as a codomain x domain matrix.
struct BoundedMap {
  SpaceDescriptor domain;
  SpaceDescriptor codomain;
  ActionKind action = ActionKind::ColumnFinite;
  Matrix matrix;
  NormValue bound;  // enclosure of the operator norm

  static BoundedMap diagonal(const SpaceDescriptor& domain, const SpaceDescriptor& codomain,
                             const std::vector<Rational>& entries);
  static BoundedMap column_finite(const SpaceDescriptor& domain, const SpaceDescriptor& codomain, const Matrix& matrix);
  /// e_i -> e_{i+1}; the last basis vector goes to 0.
  static BoundedMap shift(const SpaceDescriptor& domain, const SpaceDescriptor& codomain);
  /// maps[0] applied first.
  static BoundedMap composite(const std::vector<BoundedMap>& maps);
};

/// Operator norm enclosure; exact whenever the domain is an l1 space or the
/// domain is small enough for vertex enumeration.
NormValue operator_norm(const SpaceDescriptor& domain, const SpaceDescriptor& codomain, const Matrix& m);

/// Same ring, indices, weights and mode.
bool same_space(const SpaceDescriptor& a, const SpaceDescriptor& b);

struct CertTerm {
  std::vector<Rational> w;      // codomain coordinates
  std::vector<Rational> alpha;  // functional on the domain
};

/// f = sum_s w_s alpha_s(-) on the finite presentation, plus `tail`, an upper
/// enclosure for the nuclear norm of whatever lies beyond it.
struct NuclearCert {
  SpaceDescriptor domain;
  SpaceDescriptor codomain;
  std::vector<CertTerm> terms;
  NormValue tail;
  NormValue L;

  Matrix reproduce() const;
};

Rational term_norm(const NuclearCert& c, const CertTerm& t);
/// Recomputes L = sum ||w_s|| ||alpha_s|| + tail.
NormValue cert_norm(const NuclearCert& c);
NuclearCert make_cert(const SpaceDescriptor& domain, const SpaceDescriptor& codomain, std::vector<CertTerm> terms,
                      const NormValue& tail = NormValue());
bool reproduces(const NuclearCert& c, const Matrix& m);
/// Terms of both certs side by side (same spaces); L is subadditive.
NuclearCert concat_certs(const NuclearCert& a, const NuclearCert& b);

enum class Verdict { Nuclear, NotNuclear, Unknown };

const char* to_string(Verdict v);

/// t_i = K q^i P(i) / Q(i) for i >= from, P and Q with non-negative coefficients.
struct TermForm {
  Rational K = 1;
  Rational q = 1;
  std::vector<Rational> P{1};
  std::vector<Rational> Q{1};
  long from = 0;

  static TermForm from_rule(const TailRule& rule);
  Rational at(long i) const;
  TermForm inverse() const;
  friend TermForm operator*(const TermForm& a, const TermForm& b);
};

struct TailVerdict {
  Verdict verdict = Verdict::Unknown;
  NormValue sum;  // enclosure of sum_{i > N} t_i when verdict is Nuclear
  std::string reason;
};

/// Rigorous analysis of sum_{i > N} t_i.
TailVerdict analyse_tail(const TermForm& form, long N);

struct SeriesVerdict {
  Verdict verdict = Verdict::Unknown;
  Rational partial;     // sum_{i <= N}
  NormValue enclosure;  // of the full sum, meaningful for Nuclear
  std::string reason;
};

/// Nuclear norm of the diagonal map x^i -> a_i x^i from R{x/tau} to R{x/rho}.
/// Entries beyond the explicit list follow `rule` (absent: zero).
SeriesVerdict nuclear_norm_diagonal(const std::vector<Rational>& entries, const std::optional<TailRule>& rule,
                                    const Rational& tau, const Rational& rho, long N);

/// One term per nonzero column: w = column j, alpha = e_j^*.
NuclearCert build_cert(const BoundedMap& map);

struct L1Decomposition {
  SpaceDescriptor middle;  // l1 coproduct with m(s) = ||w_s||
  NuclearCert p;
  BoundedMap c;
  bool reassembles = false;  // c o p equals the certified map
  bool c_non_expanding = false;
  bool p_bounded = false;  // ||p(e_j)|| <= L ||e_j|| on every basis vector
};

L1Decomposition decompose_through_l1(const NuclearCert& cert);

struct LinfDecomposition {
  SpaceDescriptor middle;  // l-infinity product with m(s) = ||w_s|| / L
  BoundedMap c;
  NuclearCert p;
  bool reassembles = false;  // p o c equals the certified map
  bool c_non_expanding = false;
  bool weights_consistent = false;  // m(s) L = ||w_s||
};

LinfDecomposition decompose_through_linf(const NuclearCert& cert);

enum class Side { Pre, Post };

struct CertComposition {
  NuclearCert cert;
  Rational bound;  // ||g|| L
  bool bound_holds = false;
};

CertComposition compose_cert(const NuclearCert& cert, const BoundedMap& g, Side side);

struct CertTensor {
  NuclearCert cert;
  Rational bound;  // L_A L_B
  bool bound_holds = false;
};

CertTensor tensor_cert(const NuclearCert& a, const NuclearCert& b);

struct PsiPhiResult {
  SeriesVerdict series;
  std::optional<NuclearCert> cert;
};

/// The identity on coefficients R{x/r}^psi -> R{x/r}^phi.
PsiPhiResult psi_phi_nuclear(const WeightFunction& psi, const WeightFunction& phi, const Rational& r, long N);

/// Degree <= max_degree truncation of a polydisk algebra as a weighted space.
SpaceDescriptor disk_space(const PolydiskAlgebra& alg, long max_degree);

/// Restriction R{x/tau} -> R{x/rho} (rho < tau coordinatewise) truncated at
/// total degree N, with the exact geometric remainder as tail.
NuclearCert restriction_cert(const PolydiskAlgebra& from, const std::vector<Rational>& rho, long N);

/// One certificate per transition map of a radius family (larger radius to smaller).
std::vector<NuclearCert> transition_certs(const RadiusFamily& family, long N);

}  // namespace banarith
