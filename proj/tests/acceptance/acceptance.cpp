#include "acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "banarith/disks.hpp"
#include "banarith/error.hpp"
#include "banarith/homology.hpp"
#include "banarith/nuclear.hpp"
#include "banarith/padic.hpp"
#include "banarith/spaces.hpp"

namespace banarith::acceptance {

namespace {

using Rng = std::mt19937_64;

struct Outcome {
  bool ok = true;
  std::string detail;
  std::size_t cases = 0;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
  void check(bool cond, const std::string& why) {
    ++cases;
    if (!cond) fail(why);
  }
};

long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

Rational random_rational(Rng& rng, long num_bound, long den_bound) {
  Rational q(uniform(rng, -num_bound, num_bound), uniform(rng, 1, den_bound));
  q.canonicalize();
  return q;
}

Rational random_positive(Rng& rng, long num_bound, long den_bound) {
  Rational q(uniform(rng, 1, num_bound), uniform(rng, 1, den_bound));
  q.canonicalize();
  return q;
}

const Rational kTwoToMinus40 = pow(Rational(2), -40);

// Criterion 1: exhaustive division grid against the re-multiplication oracle.
Outcome division_constant() {
  Outcome out;
  for (long p : {2L, 3L, 5L}) {
    for (const Rational& r : {Rational(1, 4), Rational(1, 2), Rational(3, 4)}) {
      const PadicPresentation pres = PadicPresentation::make(p, r);
      const PolydiskAlgebra alg = pres.algebra();
      std::vector<Rational> rpow(8, 1);
      for (std::size_t i = 1; i < rpow.size(); ++i) rpow[i] = rpow[i - 1] * r;
      std::vector<long> a(6, -2);
      for (;;) {
        std::vector<long> b(7, 0);
        for (std::size_t i = 0; i < 6; ++i) {
          b[i] -= p * a[i];
          b[i + 1] += a[i];
        }
        Rational norm_a = 0, norm_b = 0;
        for (std::size_t i = 0; i < 6; ++i) norm_a += std::labs(a[i]) * rpow[i];
        for (std::size_t i = 0; i < 7; ++i) norm_b += std::labs(b[i]) * rpow[i];
        std::vector<Rational> bq(b.begin(), b.end());
        const DivisionResult d = divide_by_x_minus_p(Series::from_dense(alg, bq), pres);
        bool same = true;
        for (std::size_t i = 0; i < 6; ++i) same = same && d.quotient.coeff(Index{static_cast<long>(i)}) == a[i];
        same = same && d.quotient.degree() <= 5;
        auto tag = [&] {
          std::ostringstream t;
          t << "p=" << p << " r=" << to_string(r) << " a=(";
          for (long c : a) t << c << ",";
          return t.str() + ")";
        };
        const bool bounded = norm_a <= norm_b / (Rational(p) - r);
        const bool agrees = d.bound_holds && d.remultiplies && d.quotient_norm == norm_a;
        out.check(same, same ? "" : "quotient differs from a at " + tag());
        out.check(bounded, bounded ? "" : "||a|| > ||b||/(p-r) at " + tag());
        out.check(agrees, agrees ? "" : "library report disagrees at " + tag());
        std::size_t k = 0;
        while (k < 6 && a[k] == 2) a[k++] = -2;
        if (k == 6) break;
        ++a[k];
      }
    }
  }
  if (out.ok) out.detail = std::to_string(out.cases / 3) + " divisions exact";
  return out;
}

// Criterion 2: expansion lift bound against a digit-by-digit oracle.
Outcome expansion_lift_bound() {
  Outcome out;
  const Rational r(1, 2);
  for (long p : {2L, 3L, 5L}) {
    const PadicPresentation pres = PadicPresentation::make(p, r);
    const Rational bound_const = Rational(p - 1) / (1 - r);
    for (long n = -10000; n <= 10000; ++n) {
      if (n == 0) continue;
      long m = std::labs(n), s = 0;
      while (m % p == 0) {
        m /= p;
        ++s;
      }
      std::vector<long> digits;
      Rational lift = 0;
      for (long i = 0; m != 0; ++i, m /= p) {
        digits.push_back(m % p);
        lift += (m % p) * pow(r, s + i);
      }
      const PadicExpansion e = padic_expand(n, pres);
      const std::string tag = "n=" + std::to_string(n) + " p=" + std::to_string(p);
      out.check(e.digits == digits && e.shift == s && e.norm == pow(r, s), "expansion differs from oracle at " + tag);
      out.check(lift <= bound_const * pow(r, s), "lift norm exceeds (p-1)/(1-r) r^s at " + tag);
      out.check(e.lift_norm == lift && e.bound_holds, "library lift report disagrees at " + tag);
    }
  }
  if (out.ok) out.detail = std::to_string(out.cases / 3) + " expansions within the bound";
  return out;
}

// Criterion 3: unit diagonal closed form 1/(1 - rho/tau) and divergence at rho = tau.
Outcome nuclearity_closed_form() {
  Outcome out;
  const TailRule ones = TailRule::constant(0, 1);
  const SeriesVerdict v = nuclear_norm_diagonal({}, ones, 1, Rational(1, 2), 64);
  out.check(v.verdict == Verdict::Nuclear, "rho < tau not certified nuclear");
  out.check(v.enclosure.contains(2),
            "enclosure [" + to_string(v.enclosure.lower) + ", " + to_string(v.enclosure.upper) + "] misses 2");
  out.check(v.enclosure.width() <= kTwoToMinus40, "enclosure wider than 2^-40");
  const SeriesVerdict d = nuclear_norm_diagonal({}, ones, 1, 1, 64);
  out.check(d.verdict == Verdict::NotNuclear, "rho = tau did not report divergence");
  if (out.ok) out.detail = "L in [2 - 2^-65, 2 + w], w <= 2^-40; rho = tau diverges";
  return out;
}

// Criterion 4: psi/phi summability.
Outcome psi_phi_criterion() {
  Outcome out;
  const WeightFunction psi = WeightFunction::geometric(4), phi = WeightFunction::constant(1);
  const PsiPhiResult r = psi_phi_nuclear(psi, phi, Rational(1, 2), 64);
  out.check(r.series.verdict == Verdict::Nuclear && r.cert.has_value(), "no certificate for phi = 1, psi = 4^j");
  out.check(r.series.enclosure.contains(Rational(4, 3)), "enclosure misses 4/3");
  out.check(r.series.enclosure.width() <= kTwoToMinus40, "enclosure wider than 2^-40");
  if (r.cert) out.check(r.cert->L == r.series.enclosure, "certificate L differs from the series enclosure");
  const PsiPhiResult same = psi_phi_nuclear(psi, psi, Rational(1, 2), 64);
  out.check(same.series.verdict == Verdict::NotNuclear && !same.cert, "phi = psi did not report divergence");
  if (out.ok) out.detail = "L encloses 4/3 within 2^-40; phi = psi diverges";
  return out;
}

WeightFunction psi_identity() { return WeightFunction({{Index{0}, Rational(1)}}, TailRule::polynomial({0, 1}, 1)); }

// Criterion 5: sigma o delta = id and sigma o (id - s) = 0 on every monomial up to degree 50.
Outcome splitting_identities() {
  Outcome out;
  for (const Rational& r : {Rational(1, 2), Rational(1)}) {
    for (int which = 0; which < 2; ++which) {
      const WeightFunction psi = which ? psi_identity() : WeightFunction::constant(1);
      const std::string tag = "r=" + to_string(r) + (which ? " psi(i)=i" : " psi=1");
      const SplitReport s = split_check(r, psi, 50, exp_upper_bound(1 / r), 0, 0);
      out.check(s.sigma_delta, "sigma o delta != id at " + tag + ": " + s.witness);
      out.check(s.sigma_shift, "sigma o (id - s) != 0 at " + tag + ": " + s.witness);
      // Structural oracle: delta puts a_j x^j in slot j and nothing else.
      const PolydiskAlgebra alg = PolydiskAlgebra::make(BaseRing::rationals(), {r}, DiskMode::Arch, psi);
      for (long j = 0; j <= 50; ++j) {
        const DeltaResult d = delta_map(Series::monomial(alg, Index{j}), exp_upper_bound(1 / r));
        bool ok = true;
        for (std::size_t i = 0; i < d.family.slots.size(); ++i) {
          const auto& c = d.family.slots[i].coeffs;
          ok =
              ok && (static_cast<long>(i) == j ? c.size() == 1 && c.count(Index{j}) && c.at(Index{j}) == 1 : c.empty());
        }
        out.check(ok, "delta(x^" + std::to_string(j) + ") misplaced at " + tag);
      }
    }
  }
  if (out.ok) out.detail = "both identities exact on 51 monomials x 4 settings";
  return out;
}

// Criterion 6: ||delta f|| <= E ||f|| with an independent norm oracle.
Outcome delta_bound(std::uint64_t seed) {
  Outcome out;
  Rng rng(seed);
  for (const Rational& r : {Rational(1, 2), Rational(1)}) {
    const Rational E = exp_upper_bound(1 / r);
    out.check(exp_enclosure(1 / r, 60).lower <= E, "E below a Taylor lower bound for e^{1/r}");
    const PolydiskAlgebra alg = PolydiskAlgebra::make(BaseRing::rationals(), {r});
    for (int t = 0; t < 100; ++t) {
      const long deg = uniform(rng, 0, 100);
      std::vector<Rational> c(static_cast<std::size_t>(deg) + 1);
      for (auto& x : c) x = uniform(rng, 0, 3) == 0 ? Rational(0) : random_rational(rng, 50, 20);
      const Series f = Series::from_dense(alg, c);
      Rational src = 0, fam = 0;
      for (long i = 0; i <= deg; ++i) {
        const Rational a = abs(c[static_cast<std::size_t>(i)]);
        src += a * pow(r, i);
        fam += a * pow(r + Rational(1, std::max(i, 1L)), i);
      }
      const DeltaResult d = delta_map(f, E);
      const std::string tag = "r=" + to_string(r) + " sample " + std::to_string(t);
      out.check(fam <= E * src, "oracle bound fails at " + tag);
      out.check(d.family_norm == fam && d.source_norm == src && d.bound_holds,
                "library delta report disagrees at " + tag);
    }
  }
  if (out.ok) out.detail = "200 samples within E ||f||";
  return out;
}

// Criterion 7: Bezout witnesses and collapse of the bound.
Outcome orthogonality_collapse() {
  Outcome out;
  const std::pair<long, long> pairs[] = {{2, 3}, {2, 5}, {3, 5}};
  for (const auto& [p, q] : pairs) {
    for (unsigned long n = 1; n <= 20; ++n) {
      const BezoutWitness w = bezout_orthogonality(p, q, n);
      const Integer pn = pow(Integer(p), n), qn = pow(Integer(q), n);
      const std::string tag = "(" + std::to_string(p) + "," + std::to_string(q) + ") n=" + std::to_string(n);
      out.check(w.a * pn + w.b * qn == 1 && w.verified, "Bezout identity fails at " + tag);
      out.check(w.bound == Rational(1) / Rational(pn) + Rational(1) / Rational(qn), "bound formula differs at " + tag);
      if (n == 20) out.check(w.bound < Rational(1, 1000000), "bound at n = 20 not below 1e-6 for " + tag);
    }
  }
  if (out.ok) out.detail = "60 witnesses exact; n=20 bounds < 1e-6";
  return out;
}

// Criterion 8: dual weights reciprocal and involutive.
Outcome duality_weights(std::uint64_t seed) {
  Outcome out;
  Rng rng(seed);
  for (int t = 0; t < 1000; ++t) {
    const long n = uniform(rng, 1, 8);
    SpaceDescriptor d;
    d.ring = BaseRing::rationals();
    d.label = "T" + std::to_string(t);
    std::map<Index, Rational> table;
    for (long i = 0; i < n; ++i) {
      d.indices.push_back(Index{i});
      table[Index{i}] = random_positive(rng, 100, 100);
    }
    d.weights = WeightFunction(table);
    const SpaceDescriptor dual = dual_descriptor(d);
    const SpaceDescriptor back = dual_descriptor(dual);
    bool reciprocal = dual.mode == NormMode::SupLinf && dual.indices == d.indices;
    bool involutive = back.mode == NormMode::SumL1 && back.indices == d.indices;
    for (std::size_t k = 0; k < d.dimension(); ++k) {
      reciprocal = reciprocal && dual.weight(k) * d.weight(k) == 1;
      involutive = involutive && back.weight(k) == d.weight(k);
    }
    out.check(reciprocal, "dual weights not reciprocal for table " + std::to_string(t));
    out.check(involutive, "dual not involutive for table " + std::to_string(t));
  }
  if (out.ok) out.detail = "1000 tables";
  return out;
}

Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long bound) {
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = uniform(rng, -bound, bound);
  return m;
}

Matrix inverse(const Matrix& g) {
  const std::size_t n = g.rows();
  const Matrix r = rref(hconcat(g, Matrix::identity(n)));
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = r(i, n + j);
  return inv;
}

SpaceDescriptor line_space(const std::vector<Rational>& weights, const std::string& label) {
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

FiniteDiagram random_diagram(Rng& rng) {
  const long n = uniform(rng, 1, 5);
  std::vector<std::string> labels;
  std::vector<SpaceDescriptor> spaces;
  std::vector<Arrow> arrows;
  const bool conjugate = uniform(rng, 0, 1) == 1;
  const std::size_t common = static_cast<std::size_t>(uniform(rng, 1, 3));
  std::vector<Matrix> G;
  for (long i = 0; i < n; ++i) {
    labels.push_back(std::string(1, static_cast<char>('A' + i)));
    const std::size_t dim = conjugate ? common : static_cast<std::size_t>(uniform(rng, 1, 3));
    spaces.push_back(line_space(std::vector<Rational>(dim, 1), labels.back()));
    if (conjugate) {
      Matrix g;
      do g = random_matrix(rng, dim, dim, 2);
      while (rank(g) < dim);
      G.push_back(g);
    }
  }
  if (conjugate) {
    // Any DAG works: T(i, j) = G_i G_j^{-1} composes along every path.
    for (long i = 0; i < n; ++i)
      for (long j = i + 1; j < n; ++j)
        if (uniform(rng, 0, 1))
          arrows.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), G[i] * inverse(G[j])});
  } else {
    // A forest has unique paths, so closure is automatically functorial.
    for (long j = 1; j < n; ++j) {
      const long parent = uniform(rng, -1, j - 1);
      if (parent < 0) continue;
      const auto pi = static_cast<std::size_t>(parent), ji = static_cast<std::size_t>(j);
      arrows.push_back({pi, ji, random_matrix(rng, spaces[pi].dimension(), spaces[ji].dimension(), 2)});
    }
  }
  return FiniteDiagram::from_generators(labels, spaces, arrows);
}

TowerDiagram random_tower(Rng& rng) {
  const long N = uniform(rng, 1, 6);
  TowerDiagram t;
  std::vector<Rational> w;
  for (long k = uniform(rng, 1, 3); k > 0; --k) w.push_back(random_positive(rng, 5, 5));
  t.spaces.push_back(line_space(w, "V1"));
  for (long i = 1; i < N; ++i) {
    const std::size_t dim = static_cast<std::size_t>(uniform(rng, 1, 3));
    const Matrix m = random_matrix(rng, t.spaces.back().dimension(), dim, 2);
    std::vector<Rational> weights;
    for (std::size_t b = 0; b < dim; ++b) {
      // Weight at least the image norm keeps the transition non-expanding.
      const Rational image = vector_norm(t.spaces.back(), m.column(b));
      weights.push_back(image > 0 ? image * uniform(rng, 1, 2) : random_positive(rng, 5, 5));
    }
    t.spaces.push_back(line_space(weights, "V" + std::to_string(i + 1)));
    t.maps.push_back(m);
  }
  return t;
}

// Criterion 9: Roos d^2 = 0 and H^0 = lim via the shift presentation.
Outcome roos_and_limits(std::uint64_t seed) {
  Outcome out;
  Rng rng(seed);
  for (int t = 0; t < 200; ++t) {
    const FiniteDiagram D = random_diagram(rng);
    const bool reduced = uniform(rng, 0, 1) == 1;
    const ChainComplex k = roos_complex(D, 3, reduced);
    bool zero = true;
    for (std::size_t n = 0; n + 1 < k.differentials.size(); ++n)
      zero = zero && (k.differentials[n + 1] * k.differentials[n]).is_zero();
    out.check(zero, "d o d != 0 on random diagram " + std::to_string(t));
  }
  for (int t = 0; t < 50; ++t) {
    const TowerDiagram tower = random_tower(rng);
    const ShiftLimit lim = limit_via_shift(tower, WeightFunction::constant(1));
    for (bool reduced : {false, true}) {
      const ChainComplex k = roos_complex(tower.diagram(), 1, reduced);
      const Matrix h0 = nullspace(k.differential(0));
      out.check(same_column_space(h0, lim.kernel),
                "H^0 differs from ker(id - s) on tower " + std::to_string(t) + (reduced ? " (reduced)" : ""));
    }
  }
  if (out.ok) out.detail = "200 diagrams with d^2 = 0; 50 towers with H^0 = ker(id - s)";
  return out;
}

bool denominator_divides(const Rational& x, const Integer& bound) { return bound % x.get_den() == 0; }

// Criterion 10: identity covers are exact; the {Z[1/2], Z[1/3]} cover against a lattice oracle.
Outcome cech_exactness() {
  Outcome out;
  for (std::size_t size = 1; size <= 3; ++size)
    for (std::size_t base = 1; base <= 2; ++base)
      for (std::size_t rank_m = 1; rank_m <= 2; ++rank_m)
        for (bool ordered : {false, true})
          for (std::size_t top = 0; top <= 3; ++top) {
            const ChainComplex k = cech_complex(identity_cover(base, size, rank_m, ordered, top + 1), top);
            for (int deg = -1; deg < static_cast<int>(top); ++deg) {
              out.check(truncated_cohomology(k, deg).dimension == 0,
                        "identity cover not exact: size " + std::to_string(size) + " degree " + std::to_string(deg));
            }
          }

  const LocalizationCover cover = LocalizationCover::make({2, 3}, 5);
  for (std::size_t rank_m : {1u, 2u}) {
    const ChainComplex k = cech_complex(cover.spec(rank_m), 1);
    out.check(k.d_squared_zero(), "Cech d o d != 0 for the localization cover");
    out.check(truncated_cohomology(k, -1).dimension == 0 && truncated_cohomology(k, 0).dimension == 0,
              "rational shadow of the localization cover is not exact (rank " + std::to_string(rank_m) + ")");
  }
  // Lattice oracle. L0 = 2^-5 Z, L1 = 3^-5 Z, L01 = 6^-5 Z, all in the box |x| <= 1 (|x0| <= 2 for preimages).
  const Integer P = 32, Q = 243, PQ = 7776;
  std::vector<Rational> l0, l1;
  for (long m = -2 * 32; m <= 2 * 32; ++m) l0.push_back(Rational(m, 32));
  for (long m = -243; m <= 243; ++m) l1.push_back(Rational(m, 243));
  for (auto& x : l0) x.canonicalize();
  for (auto& x : l1) x.canonicalize();
  // H^0: pairs agreeing in both lattices are exactly the integers of the box.
  std::size_t agreeing = 0;
  for (const auto& x : l1) {
    if (abs(x) > 1 || !denominator_divides(x, P)) continue;
    ++agreeing;
    out.check(is_integer(x), "non-integer " + to_string(x) + " in L0 and L1");
  }
  out.check(agreeing == 3, "H^0 of the box is not {-1, 0, 1}");
  // H^1: every x in L01 is x0 - x1 with x0 in L0, x1 in L1.
  std::size_t surjective = 0;
  for (long m = -7776; m <= 7776; ++m) {
    Rational x(m, PQ);
    x.canonicalize();
    bool found = false;
    for (const auto& x0 : l0) {
      if (denominator_divides(x0 - x, Q)) {
        found = true;
        break;
      }
    }
    const auto [b, c] = cover.bezout_preimage(x);
    const bool bezout_ok = denominator_divides(b, P) && denominator_divides(c, Q) && b - c == x;
    out.check(found && bezout_ok, "no preimage for " + to_string(x));
    surjective += found && bezout_ok;
  }
  if (out.ok)
    out.detail = "identity covers exact; H^0 = {-1,0,1}, " + std::to_string(surjective) + " lattice points hit";
  return out;
}

Series random_poly(Rng& rng, const PolydiskAlgebra& alg, long max_deg) {
  Series f(alg);
  const long terms = uniform(rng, 0, 6);
  for (long t = 0; t < terms; ++t) {
    Index j;
    for (std::size_t k = 0; k < alg.arity(); ++k) j.push_back(uniform(rng, 0, max_deg));
    f.set(j, random_rational(rng, 20, 6));
  }
  return f;
}

// Criterion 11: the pairing estimate against a direct oracle.
Outcome pairing_estimate(std::uint64_t seed) {
  Outcome out;
  Rng rng(seed);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = static_cast<std::size_t>(uniform(rng, 1, 2));
    std::vector<Rational> r, rho;
    for (std::size_t k = 0; k < n; ++k) {
      r.push_back(random_positive(rng, 6, 4));
      rho.push_back(r.back() + random_positive(rng, 3, 4));
    }
    const Series f = random_poly(rng, PolydiskAlgebra::make(BaseRing::rationals(), rho), 5);
    const Series g = random_poly(rng, PolydiskAlgebra::make(BaseRing::rationals(), rho), 5);
    Rational value = 0, left = 0, right = 0;
    for (const auto& [j, a] : f.coeffs) {
      Rational w = 1;
      for (std::size_t k = 0; k < n; ++k) w *= pow(rho[k], -j[k]);
      left += abs(a) * w;
      auto it = g.coeffs.find(j);
      if (it != g.coeffs.end()) value += a * it->second;
    }
    for (const auto& [j, b] : g.coeffs) {
      Rational w = 1;
      for (std::size_t k = 0; k < n; ++k) w *= pow(rho[k], j[k]);
      right += abs(b) * w;
    }
    const PairingReport p = pairing(f, g, rho, r);
    out.check(abs(value) <= left * right, "pairing estimate fails on sample " + std::to_string(t));
    out.check(p.value == value && p.left == left && p.right == right && p.holds,
              "library pairing disagrees on sample " + std::to_string(t));
  }
  if (out.ok) out.detail = "500 pairs";
  return out;
}

// Criterion 12: l1 at s <= prod 1/(1 - s/t) sup at t, and tightness on the geometric family.
Outcome norm_sandwich(std::uint64_t seed) {
  Outcome out;
  Rng rng(seed);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = static_cast<std::size_t>(uniform(rng, 1, 2));
    std::vector<Rational> s, tt;
    for (std::size_t k = 0; k < n; ++k) {
      s.push_back(random_positive(rng, 6, 6));
      tt.push_back(s.back() + random_positive(rng, 4, 6));
    }
    const Series f = random_poly(rng, PolydiskAlgebra::make(BaseRing::rationals(), tt), 8);
    Rational l1 = 0, sup = 0, factor = 1;
    for (std::size_t k = 0; k < n; ++k) factor /= 1 - s[k] / tt[k];
    for (const auto& [j, a] : f.coeffs) {
      Rational ws = 1, wt = 1;
      for (std::size_t k = 0; k < n; ++k) {
        ws *= pow(s[k], j[k]);
        wt *= pow(tt[k], j[k]);
      }
      l1 += abs(a) * ws;
      sup = max(sup, abs(a) * wt);
    }
    const ComparisonReport c = compare_norms(f, s, tt);
    out.check(l1 <= factor * sup, "sandwich fails on sample " + std::to_string(t));
    out.check(c.l1_at_s == l1 && c.sup_at_t == sup && c.factor == factor && c.holds,
              "library comparison disagrees on sample " + std::to_string(t));
  }
  const PolydiskAlgebra one = PolydiskAlgebra::make(BaseRing::rationals(), {Rational(1)});
  for (long N = 1; N <= 40; ++N) {
    const Series f = Series::from_dense(one, std::vector<Rational>(static_cast<std::size_t>(N) + 1, 1));
    const ComparisonReport c = compare_norms(f, {Rational(1, 2)}, {Rational(1)});
    const Rational gap = c.rhs - c.l1_at_s;
    out.check(c.l1_at_s == 2 - pow(Rational(2), -N) && gap >= 0 && gap <= pow(Rational(2), -N),
              "geometric family gap exceeds 2^-N at N=" + std::to_string(N));
  }
  if (out.ok) out.detail = "500 series; geometric family within 2^-N for N <= 40";
  return out;
}

// Criterion 13: the four interchange identities, plus sampled norm bounds from a direct oracle.
Outcome interchange(std::uint64_t seed) {
  Outcome out;
  Rng rng(seed);
  std::size_t vertex_checked = 0;
  for (int t = 0; t < 40; ++t) {
    const std::size_t K = static_cast<std::size_t>(uniform(rng, 1, 6));
    const std::size_t S = static_cast<std::size_t>(uniform(rng, 1, 6));
    std::vector<Rational> r_s;
    for (std::size_t s = 0; s < S; ++s) r_s.push_back(random_positive(rng, 4, 8));
    std::vector<std::vector<Rational>> base(K, std::vector<Rational>(S));
    for (auto& row : base)
      for (auto& c : row) c = random_positive(rng, 3, 3);
    std::map<Index, Rational> phi_table;
    for (std::size_t k = 1; k <= K; ++k) phi_table[Index{static_cast<long>(k)}] = random_positive(rng, 5, 2);
    const WeightFunction phi(phi_table);
    const InterchangeReport rep = interchange_maps(r_s, base, phi);
    const std::string tag = std::to_string(K) + "x" + std::to_string(S) + " grid " + std::to_string(t);
    out.check(rep.all_hold(), "interchange identity fails on " + tag);
    out.check(rep.iota_norm <= 1 && rep.pi_norm <= rep.pi_bound, "interchange bound fails on " + tag);
    // A: sum_s sup_k, B: sup_k sum_s, A': A with 2^k phi.
    auto normA = [&](const std::vector<std::vector<Rational>>& x, bool doubled) {
      Rational total = 0;
      for (std::size_t s = 0; s < S; ++s) {
        Rational m = 0;
        for (std::size_t k = 0; k < K; ++k) {
          Rational w = base[k][s] * r_s[s] / phi.at(static_cast<long>(k) + 1);
          if (doubled) w /= pow(Rational(2), static_cast<long>(k) + 1);
          m = max(m, abs(x[k][s]) * w);
        }
        total += m;
      }
      return total;
    };
    auto normB = [&](const std::vector<std::vector<Rational>>& x) {
      Rational best = 0;
      for (std::size_t k = 0; k < K; ++k) {
        Rational sum = 0;
        for (std::size_t s = 0; s < S; ++s)
          sum += abs(x[k][s]) * base[k][s] * r_s[s] / phi.at(static_cast<long>(k) + 1);
        best = max(best, sum);
      }
      return best;
    };
    // Brute-force vertex oracle for the exact norms.
    auto wB = [&](std::size_t k, std::size_t s) -> Rational {
      return base[k][s] * r_s[s] / phi.at(static_cast<long>(k) + 1);
    };
    Rational iota_oracle = 0, pi_oracle = 0;
    for (std::size_t s = 0; s < S; ++s) {
      std::vector<std::vector<Rational>> x(K, std::vector<Rational>(S, 0));
      for (std::size_t k = 0; k < K; ++k) x[k][s] = 1 / wB(k, s);
      iota_oracle = max(iota_oracle, normB(x));
    }
    out.check(rep.iota_norm == iota_oracle, "iota norm differs from the vertex oracle on " + tag);
    if (std::pow(static_cast<double>(S), static_cast<double>(K)) <= 4096) {
      std::vector<std::size_t> choice(K, 0);
      for (;;) {
        std::vector<std::vector<Rational>> x(K, std::vector<Rational>(S, 0));
        for (std::size_t k = 0; k < K; ++k) x[k][choice[k]] = 1 / wB(k, choice[k]);
        pi_oracle = max(pi_oracle, normA(x, true));
        std::size_t k = 0;
        while (k < K && ++choice[k] == S) choice[k++] = 0;
        if (k == K) break;
      }
      ++vertex_checked;
      out.check(rep.pi_norm == pi_oracle, "pi norm differs from the vertex oracle on " + tag);
    }
    for (int v = 0; v < 20; ++v) {
      std::vector<std::vector<Rational>> x(K, std::vector<Rational>(S));
      for (auto& row : x)
        for (auto& c : row) c = random_rational(rng, 9, 4);
      out.check(normB(x) <= normA(x, false), "iota expands a sampled vector on " + tag);
      out.check(normA(x, true) <= rep.pi_bound * normB(x), "pi exceeds 1 - 2^-K on a sampled vector of " + tag);
    }
  }
  if (out.ok)
    out.detail = "40 grids up to 6x6; identities exact; pi norm matches the vertex oracle on " +
                 std::to_string(vertex_checked) + " grids";
  return out;
}

// Criterion 14: S^1 partial sums monotone and converging; discrepancy flagged.
Outcome s1_example() {
  Outcome out;
  for (long p : {2L, 3L, 5L, 7L}) {
    const Rational P(p);
    const Rational limit = P / (P * P - 1);
    Rational previous = -1, oracle = 0;
    for (long N = 0; N <= 30; ++N) {
      oracle += pow(P, -(2 * N + 1));
      const S1Report s = s1_kernel_element_norm(p, N);
      const std::string tag = "p=" + std::to_string(p) + " N=" + std::to_string(N);
      out.check(s.partial == oracle, "partial sum differs from the summation oracle at " + tag);
      out.check(s.partial > previous, "partial sums not increasing at " + tag);
      out.check(s.enclosure.contains(limit) && s.limit == limit, "enclosure misses p/(p^2-1) at " + tag);
      out.check(s.annihilated, "(x - p) does not annihilate the truncation at " + tag);
      out.check(s.discrepancy && s.alternate_value == 1 / (P - 1), "discrepancy with 1/(p-1) not flagged at " + tag);
      if (N == 30) out.check(s.enclosure.width() <= kTwoToMinus40, "enclosure not converged at " + tag);
      previous = s.partial;
    }
  }
  if (out.ok) out.detail = "limit p/(p^2-1) enclosed; 1/(p-1) flagged as a discrepancy";
  return out;
}

struct Definition {
  const char* name;
  double budget;
  std::function<Outcome(std::uint64_t)> run;
};

const std::vector<Definition>& definitions() {
  static const std::vector<Definition> s = {
      {"division constant 1/(p-r)", 5, [](std::uint64_t) { return division_constant(); }},
      {"expansion lift bound", 5, [](std::uint64_t) { return expansion_lift_bound(); }},
      {"nuclearity closed form", 1, [](std::uint64_t) { return nuclearity_closed_form(); }},
      {"psi/phi criterion", 1, [](std::uint64_t) { return psi_phi_criterion(); }},
      {"splitting identities", 2, [](std::uint64_t) { return splitting_identities(); }},
      {"delta bound", 2, delta_bound},
      {"orthogonality collapse", 1, [](std::uint64_t) { return orthogonality_collapse(); }},
      {"duality weights", 1, duality_weights},
      {"Roos d^2 = 0 and lim agreement", 10, roos_and_limits},
      {"Cech exactness oracle", 10, [](std::uint64_t) { return cech_exactness(); }},
      {"pairing estimate", 2, pairing_estimate},
      {"norm comparison sandwich", 2, norm_sandwich},
      {"interchange maps", 2, interchange},
      {"S^1 example", 1, [](std::uint64_t) { return s1_example(); }},
  };
  return s;
}

}  // namespace

CriterionResult run_criterion(int id, std::uint64_t seed) {
  require(id >= 1 && id <= kCriterionCount, ErrorKind::Domain, "no acceptance criterion " + std::to_string(id));
  const Definition& def = definitions()[static_cast<std::size_t>(id - 1)];
  CriterionResult r;
  r.id = id;
  r.name = def.name;
  r.budget_seconds = def.budget;
  const auto start = std::chrono::steady_clock::now();
  try {
    const Outcome o = def.run(seed + static_cast<std::uint64_t>(id));
    r.correct = o.ok;
    r.detail = o.detail;
  } catch (const std::exception& e) {
    r.correct = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CriterionResult> run_all(std::uint64_t seed) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id, seed));
  return out;
}

std::string format_line(const CriterionResult& r) {
  char timing[64];
  std::snprintf(timing, sizeof timing, "(%.2f s, budget %.0f s)", r.seconds, r.budget_seconds);
  std::string line = std::string(r.passed() ? "PASS" : "FAIL") + "  " + (r.id < 10 ? " " : "") + std::to_string(r.id) +
                     "  " + r.name + "  " + timing + "  " + r.detail;
  if (r.correct && !r.within_budget()) line += "  [over time budget]";
  return line;
}

}  // namespace banarith::acceptance
