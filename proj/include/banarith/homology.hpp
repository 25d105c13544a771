#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "banarith/disks.hpp"
#include "banarith/linalg.hpp"
#include "banarith/spaces.hpp"

namespace banarith {

/// Cochain complex of finite-dimensional Q-spaces; differentials[k] maps
/// degree min_degree + k to degree min_degree + k + 1.
struct ChainComplex {
  int min_degree = 0;
  std::vector<std::size_t> dims;
  std::vector<Matrix> differentials;
  std::vector<std::vector<std::string>> labels;  // one label per basis vector

  int max_degree() const { return min_degree + static_cast<int>(dims.size()) - 1; }
  std::size_t dim(int degree) const;
  /// Differential leaving `degree` (a zero matrix outside the stored range).
  Matrix differential(int degree) const;
  void validate_shapes() const;
  /// Exact check of d o d = 0; returns the first failing degree or none.
  bool d_squared_zero(int* failing_degree = nullptr) const;
};

/// Index-category arrow i -> j with transition V_j -> V_i.
struct Arrow {
  std::size_t from = 0;
  std::size_t to = 0;
  Matrix transition;
};

/// An inverse system over a finite poset. transitions holds every
/// comparable pair i < j; identities are implicit.
struct FiniteDiagram {
  std::vector<std::string> labels;
  std::vector<SpaceDescriptor> spaces;
  std::map<std::pair<std::size_t, std::size_t>, Matrix> transitions;

  /// Closes the generating arrows under composition; throws Validation if
  /// two paths disagree.
  static FiniteDiagram from_generators(std::vector<std::string> labels, std::vector<SpaceDescriptor> spaces,
                                       const std::vector<Arrow>& generators);

  std::size_t size() const { return labels.size(); }
  bool leq(std::size_t i, std::size_t j) const;
  /// V_j -> V_i for i <= j.
  Matrix transition(std::size_t i, std::size_t j) const;
  /// Partial order, shapes and functoriality (exact).
  void validate() const;
  /// Every transition is non-expanding on basis vectors.
  bool non_expanding() const;
  /// Composable chains i_0 <= ... <= i_n (strict when reduced), sorted by labels.
  std::vector<std::vector<std::size_t>> chains(std::size_t n, bool reduced) const;
};

/// Roos complex R^0 -> ... -> R^{max_chain_len}. With `reduced` identity
/// arrows are dropped from chains.
ChainComplex roos_complex(const FiniteDiagram& d, std::size_t max_chain_len, bool reduced = false);

/// V_1 <- V_2 <- ... <- V_N; maps[i] : spaces[i + 1] -> spaces[i].
struct TowerDiagram {
  std::vector<SpaceDescriptor> spaces;
  std::vector<Matrix> maps;

  void validate() const;
  /// The tower as a diagram over 1 < 2 < ... < N with labels V001, V002, ...
  FiniteDiagram diagram() const;
};

struct ShiftLimit {
  Matrix id_minus_s;                       // prod_{i<=N} V_i -> prod_{i<N} V_i
  Matrix kernel;                           // columns
  std::vector<Rational> component_bounds;  // per component, against the psi weights
  bool weights_ok = false;
};

/// lim V_i = ker(id - s), with the per-component bound for weights
/// psi(i)^{-1} -> (1/2) psi(i+1)^{-1}. Throws Validation if a transition expands.
ShiftLimit limit_via_shift(const TowerDiagram& t, const WeightFunction& psi);

/// Cech data over Q. Tuples w index A_w; the empty tuple is A itself.
/// faces[(w, l)] : A_{w without position l} -> A_w.
struct CoverSpec {
  std::size_t cover_size = 0;
  std::map<std::vector<std::size_t>, std::size_t> dims;
  std::map<std::pair<std::vector<std::size_t>, std::size_t>, Matrix> faces;
  std::size_t module_rank = 1;  // M = A^m
  bool ordered = false;         // all tuples with repeats instead of increasing ones

  std::vector<std::vector<std::size_t>> tuples(std::size_t length) const;
  /// Cosimplicial identities d^j d^i = d^i d^{j-1} (i < j) for tuples up to `max_length`.
  void validate(std::size_t max_length) const;
};

/// Every A_w = A with identity faces.
CoverSpec identity_cover(std::size_t base_dim, std::size_t cover_size, std::size_t module_rank = 1,
                         bool ordered = false, std::size_t max_length = 4);

/// Augmented Cech complex M -> prod M (x) A_i -> ... up to degree max_degree.
ChainComplex cech_complex(const CoverSpec& c, std::size_t max_degree);

/// Cover of Z by Z[1/p] for the given primes, truncated at denominators
/// dividing (prod p)^exponent.
struct LocalizationCover {
  std::vector<Integer> primes;
  unsigned exponent = 5;

  static LocalizationCover make(std::vector<Integer> primes, unsigned exponent);
  /// Rank-one rational shadow of the lattices, as Cech data.
  CoverSpec spec(std::size_t module_rank = 1) const;
  /// Whether x lies in the truncated lattice of Z[1/p_i] (i = -1: Z itself,
  /// i = cover size: the full truncated intersection ring).
  bool in_lattice(const Rational& x, long i) const;
  /// Two-member covers: x = b - c with b in Z[1/p_0], c in Z[1/p_1], via Bezout.
  std::pair<Rational, Rational> bezout_preimage(const Rational& x) const;
};

struct Cohomology {
  std::size_t dimension = 0;
  std::size_t kernel_dim = 0;
  std::size_t image_dim = 0;
  Matrix basis;  // representatives, as columns
};

Cohomology truncated_cohomology(const ChainComplex& k, int degree);

struct SplitReport {
  bool sigma_delta = true;   // sigma o delta = id on monomials
  bool sigma_shift = true;   // sigma o (id - s) = 0 on zero-padded families
  bool delta_bound = true;   // ||delta f|| <= E ||f||
  bool dual_weights = true;  // f -> (f_i - f_{i+1}) non-expanding for the dual weights
  std::string witness;       // first failing basis vector or functional
  std::size_t checked = 0;
  bool all_hold() const { return sigma_delta && sigma_shift && delta_bound && dual_weights; }
};

/// Checks the splitting identities on every monomial up to max_degree and
/// the dual-kernel weights on `samples` pseudorandom functionals.
SplitReport split_check(const Rational& r, const WeightFunction& psi, long max_degree, const Rational& E,
                        std::size_t samples, std::uint64_t seed);

}  // namespace banarith
