#include <map>
#include <string>
#include <vector>

#include "banarith/error.hpp"
#include "banarith/homology.hpp"
#include "support.hpp"

using namespace banarith;
using namespace banarith::testing;

namespace {

SpaceDescriptor line(const std::vector<Rational>& weights, const std::string& label) {
  SpaceDescriptor d;
  d.ring = BaseRing::rationals();
  d.label = label;
  std::map<Index, Rational> table;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    d.indices.push_back(Index{static_cast<long>(k)});
    table[Index{static_cast<long>(k)}] = weights[k];
  }
  d.weights = WeightFunction(table);
  return d;
}

Matrix scalar(const Rational& x) { return Matrix::from_rows({{x}}, 1); }

std::size_t h(const ChainComplex& k, int degree) { return truncated_cohomology(k, degree).dimension; }

ChainComplex two_term(const Matrix& d) {
  ChainComplex k;
  k.dims = {d.cols(), d.rows()};
  k.differentials = {d};
  return k;
}

// Z <-2- Z <-2- ... with weights 1, 2, 4, ... so that every map is non-expanding.
TowerDiagram doubling_tower(std::size_t length) {
  TowerDiagram t;
  for (std::size_t i = 0; i < length; ++i) {
    t.spaces.push_back(line({pow(Rational(2), static_cast<long>(i))}, "V" + std::to_string(i + 1)));
    if (i) t.maps.push_back(scalar(2));
  }
  return t;
}

}  // namespace

TEST_CASE("roos complex of a single object") {
  const FiniteDiagram d = FiniteDiagram::from_generators({"A"}, {line({1, 1}, "A")}, {});
  const ChainComplex k = roos_complex(d, 1);
  CHECK(k.dim(0) == 2);
  CHECK(k.differential(0).is_zero());
  CHECK(h(k, 0) == 2);
}

TEST_CASE("roos complex of one identity arrow") {
  const FiniteDiagram d = FiniteDiagram::from_generators({"A", "B"}, {line({1}, "A"), line({1}, "B")}, {{0, 1, scalar(1)}});
  for (bool reduced : {false, true}) {
    const ChainComplex k = roos_complex(d, 2, reduced);
    CHECK(k.d_squared_zero());
    CHECK(h(k, 0) == 1);
    CHECK(h(k, 1) == 0);
  }
}

TEST_CASE("roos complex of a finite doubling tower") {
  const TowerDiagram t = doubling_tower(3);
  for (bool reduced : {false, true}) {
    const ChainComplex k = roos_complex(t.diagram(), 2, reduced);
    CHECK(k.d_squared_zero());
    CHECK(h(k, 0) == 1);
    CHECK(h(k, 1) == 0);
  }
}

TEST_CASE("non-functorial diagrams are rejected") {
  const std::vector<SpaceDescriptor> spaces = {line({1}, "A"), line({1}, "B"), line({1}, "C")};
  try {
    FiniteDiagram::from_generators({"A", "B", "C"}, spaces, {{0, 1, scalar(1)}, {1, 2, scalar(1)}, {0, 2, scalar(2)}});
    FAIL("expected a validation error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Validation);
    CHECK(std::string(e.what()).find("triangle") != std::string::npos);
  }
  CHECK_THROWS_AS(FiniteDiagram::from_generators({"A", "B"}, {spaces[0], spaces[1]}, {{0, 1, scalar(1)}, {1, 0, scalar(1)}}),
                  Error);
}

TEST_CASE("chains are enumerated with and without identities") {
  const FiniteDiagram d = FiniteDiagram::from_generators({"A", "B"}, {line({1}, "A"), line({1}, "B")}, {{0, 1, scalar(1)}});
  // A, B; AA, AB, BB; AB only when reduced.
  CHECK(d.chains(0, false).size() == 2);
  CHECK(d.chains(1, false).size() == 3);
  CHECK(d.chains(1, true).size() == 1);
  CHECK(d.chains(2, true).empty());
}

TEST_CASE("limit via the shift map") {
  TowerDiagram constant;
  for (int i = 0; i < 3; ++i) constant.spaces.push_back(line({1, 1}, "V" + std::to_string(i + 1)));
  constant.maps = {Matrix::identity(2), Matrix::identity(2)};
  const ShiftLimit c = limit_via_shift(constant, WeightFunction::constant(1));
  CHECK(c.kernel.cols() == 2);
  CHECK(same_column_space(c.kernel, Matrix::from_columns({{1, 0, 1, 0, 1, 0}, {0, 1, 0, 1, 0, 1}}, 6)));

  const ShiftLimit two = limit_via_shift(doubling_tower(2), WeightFunction::constant(1));
  CHECK(two.kernel.cols() == 1);
  CHECK(same_column_space(two.kernel, Matrix::from_columns({{2, 1}}, 2)));
  CHECK(two.id_minus_s == Matrix::from_rows({{1, -2}}, 2));

  const WeightFunction psi({{Index{0}, 1}}, TailRule::polynomial({0, 1}, 1));
  const ShiftLimit weighted = limit_via_shift(doubling_tower(4), psi);
  CHECK(weighted.weights_ok);
  for (const auto& b : weighted.component_bounds) CHECK(b <= 1);

  TowerDiagram expanding = doubling_tower(2);
  expanding.maps[0] = scalar(3);
  CHECK_THROWS_AS(limit_via_shift(expanding, WeightFunction::constant(1)), Error);
}

TEST_CASE("cech complex of identity covers is exact") {
  for (std::size_t size = 1; size <= 3; ++size) {
    const ChainComplex k = cech_complex(identity_cover(2, size, 1, false, 3), 2);
    CHECK(k.d_squared_zero());
    for (int deg = -1; deg < 2; ++deg) CHECK(h(k, deg) == 0);
  }
}

TEST_CASE("cech complex of the localization cover") {
  const LocalizationCover cover = LocalizationCover::make({2, 3}, 5);
  for (std::size_t rank_m : {1u, 2u}) {
    const ChainComplex k = cech_complex(cover.spec(rank_m), 1);
    CHECK(k.d_squared_zero());
    CHECK(k.dim(-1) == rank_m);
    CHECK(h(k, -1) == 0);
    CHECK(h(k, 0) == 0);
  }
  CHECK(cover.in_lattice(q("5/32"), 0));
  CHECK_FALSE(cover.in_lattice(q("5/64"), 0));
  CHECK_FALSE(cover.in_lattice(q("1/3"), 0));
  CHECK(cover.in_lattice(q("1/243"), 1));
  CHECK(cover.in_lattice(q("1/7776"), 2));
  CHECK(cover.in_lattice(3, -1));
  CHECK_FALSE(cover.in_lattice(q("1/2"), -1));
  for (const Rational& x : {q("1/6"), q("5/7776"), q("-13/72"), Rational(0)}) {
    const auto [b, c] = cover.bezout_preimage(x);
    CHECK(b - c == x);
    CHECK(cover.in_lattice(b, 0));
    CHECK(cover.in_lattice(c, 1));
  }
  CHECK_THROWS_AS(LocalizationCover::make({2, 4}, 5), Error);
}

TEST_CASE("broken simplicial identities are reported") {
  CoverSpec c = identity_cover(1, 2, 1, false, 3);
  CHECK_NOTHROW(c.validate(3));
  c.faces.at({{0, 1}, 0}) = scalar(2);
  try {
    c.validate(3);
    FAIL("expected a validation error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Validation);
    CHECK(std::string(e.what()).find("simplicial identity fails") != std::string::npos);
  }
}

TEST_CASE("truncated cohomology examples") {
  ChainComplex zero;
  zero.dims = {0, 0};
  zero.differentials = {Matrix(0, 0)};
  CHECK(h(zero, 0) == 0);
  CHECK(h(zero, 1) == 0);
  const ChainComplex id = two_term(scalar(1));
  CHECK(h(id, 0) == 0);
  CHECK(h(id, 1) == 0);
  const ChainComplex koszul = two_term(scalar(0));
  CHECK(h(koszul, 0) == 1);
  CHECK(h(koszul, 1) == 1);
  CHECK(h(koszul, 5) == 0);
}

TEST_CASE("truncated cohomology satisfies rank-nullity") {
  Rng rng(41);
  for (int t = 0; t < 100; ++t) {
    // d1 d0 = 0 by building d0 from the kernel of a random d1.
    const std::size_t n0 = static_cast<std::size_t>(uniform(rng, 1, 3)), n1 = static_cast<std::size_t>(uniform(rng, 1, 4)),
                      n2 = static_cast<std::size_t>(uniform(rng, 1, 3));
    Matrix d1(n2, n1);
    for (std::size_t i = 0; i < n2; ++i)
      for (std::size_t j = 0; j < n1; ++j) d1(i, j) = uniform(rng, 0, 1) ? Rational(0) : random_rational(rng, 3, 2);
    const Matrix ker = nullspace(d1);
    Matrix d0(n1, n0);
    for (std::size_t j = 0; j < n0 && j < ker.cols(); ++j) {
      const long c = uniform(rng, 0, 2);
      for (std::size_t i = 0; i < n1; ++i) d0(i, j) = ker(i, j) * c;
    }
    ChainComplex k;
    k.dims = {n0, n1, n2};
    k.differentials = {d0, d1};
    REQUIRE(k.d_squared_zero());
    const Cohomology c = truncated_cohomology(k, 1);
    CHECK(c.kernel_dim == n1 - rank(d1));
    CHECK(c.image_dim == rank(d0));
    CHECK(c.dimension == c.kernel_dim - c.image_dim);
    CHECK(c.basis.cols() == c.dimension);
    if (c.dimension) CHECK((d1 * c.basis).is_zero());
  }
}

TEST_CASE("d squared detects a broken complex") {
  ChainComplex k;
  k.dims = {1, 1, 1};
  k.differentials = {scalar(1), scalar(1)};
  int failing = -100;
  CHECK_FALSE(k.d_squared_zero(&failing));
  CHECK(failing == 0);
  k.differentials = {scalar(1)};
  CHECK_THROWS_AS(k.validate_shapes(), Error);
}

TEST_CASE("split_check") {
  const SplitReport unit = split_check(1, WeightFunction::constant(1), 50, exp_upper_bound(1), 0, 0);
  CHECK(unit.all_hold());
  CHECK(unit.checked > 0);
  const WeightFunction psi({{Index{0}, 1}}, TailRule::polynomial({0, 1}, 1));
  const SplitReport weighted = split_check(q("1/2"), psi, 30, exp_upper_bound(2), 25, 7);
  CHECK(weighted.all_hold());
  CHECK(weighted.witness.empty());
  const SplitReport again = split_check(q("1/2"), psi, 30, exp_upper_bound(2), 25, 7);
  CHECK(again.checked == weighted.checked);
  const SplitReport small = split_check(q("1/2"), psi, 30, 2, 0, 0);
  CHECK_FALSE(small.delta_bound);
  CHECK(small.sigma_shift);
  CHECK_FALSE(small.witness.empty());
}
