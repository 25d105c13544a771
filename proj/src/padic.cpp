#include "banarith/padic.hpp"

#include <algorithm>
#include <map>

#include "banarith/error.hpp"

namespace banarith {

PadicPresentation PadicPresentation::make(const Integer& p, const Rational& r, long working_degree) {
  if (!is_prime(p)) fail(ErrorKind::Domain, to_string(p) + " is not prime");
  require(r > 0 && r < 1, ErrorKind::Domain, "radius must lie in (0, 1)");
  require(working_degree >= 0, ErrorKind::Domain, "working degree must be non-negative");
  return PadicPresentation{p, r, working_degree};
}

PolydiskAlgebra PadicPresentation::algebra() const {
  return PolydiskAlgebra::make(BaseRing::integers(), {r}, DiskMode::Arch);
}

namespace {

Rational evaluate_at(const Series& b, const Integer& p) {
  Rational v = 0;
  for (const auto& [j, c] : b.coeffs) v += c * Rational(pow(p, static_cast<unsigned long>(j[0])));
  return v;
}

}  // namespace

DivisionResult divide_by_x_minus_p(const Series& b, const PadicPresentation& pres) {
  require(b.algebra.arity() == 1, ErrorKind::Domain, "division by x - p needs one variable");
  require(b.algebra.mode == DiskMode::Arch, ErrorKind::Domain, "division by x - p uses the l1 norm");
  require(b.algebra.radii[0] == pres.r, ErrorKind::Domain, "series radius differs from the presentation");
  require(b.tail == 0, ErrorKind::Domain, "division needs an exact polynomial (nonzero tail)");
  for (const auto& [j, c] : b.coeffs) {
    if (!is_integer(c)) fail(ErrorKind::Domain, "division needs integer coefficients, got " + to_string(c));
  }
  const Rational at_p = evaluate_at(b, pres.p);
  if (at_p != 0) throw NotInIdealError(at_p);

  const PolydiskAlgebra alg = pres.algebra();
  Series b_int(alg);
  for (const auto& [j, c] : b.coeffs) b_int.set(j, c);

  // a_i = -sum_{j<=i} b_j p^{-(i-j+1)}, computed as -(sum_{j<=i} b_j p^j) / p^{i+1}.
  DivisionResult out{Series(alg), 0, 0, 0, false, false};
  const long deg = b.degree();
  Integer partial = 0;
  Integer pk = 1;
  for (long i = 0; i < deg; ++i) {
    partial += Integer(b.coeff(Index{i}).get_num()) * pk;
    pk *= pres.p;
    require(partial % pk == 0, ErrorKind::Internal, "non-integral quotient coefficient");
    out.quotient.set(Index{i}, Rational(Integer(-partial / pk)));
  }

  // (x - p) a has coefficients a_{i-1} - p a_i.
  out.remultiplies = true;
  for (long i = 0; i <= std::max(deg, 0L); ++i) {
    const Rational lhs =
        (i > 0 ? out.quotient.coeff(Index{i - 1}) : Rational(0)) - Rational(pres.p) * out.quotient.coeff(Index{i});
    out.remultiplies = out.remultiplies && lhs == b_int.coeff(Index{i});
  }
  out.quotient_norm = polynomial_norm(out.quotient);
  out.dividend_norm = polynomial_norm(b_int);
  out.bound = out.dividend_norm / (Rational(pres.p) - pres.r);
  out.bound_holds = out.quotient_norm <= out.bound;
  return out;
}

PadicExpansion padic_expand(const Integer& n, const PadicPresentation& pres) {
  PadicExpansion e;
  e.norm = 0;
  e.lift_norm = 0;
  e.lift_bound = 0;
  if (n == 0) return e;
  e.negative = n < 0;
  Integer m = abs(n);
  e.shift = static_cast<long>(valuation(m, pres.p));
  m /= pow(pres.p, static_cast<unsigned long>(e.shift));
  while (m != 0) {
    e.digits.push_back(Integer(m % pres.p).get_si());
    m /= pres.p;
  }
  e.norm = pow(pres.r, e.shift);
  for (std::size_t i = 0; i < e.digits.size(); ++i) {
    e.lift_norm += e.digits[i] * pow(pres.r, e.shift + static_cast<long>(i));
  }
  e.lift_bound = (Rational(pres.p) - 1) / (1 - pres.r) * e.norm;
  e.bound_holds = e.lift_norm <= e.lift_bound;
  return e;
}

std::vector<Integer> canonical_lift(const PadicExpansion& e) {
  std::vector<Integer> f(static_cast<std::size_t>(e.shift) + e.digits.size(), 0);
  for (std::size_t i = 0; i < e.digits.size(); ++i) {
    f[static_cast<std::size_t>(e.shift) + i] = e.negative ? -e.digits[i] : e.digits[i];
  }
  return f;
}

namespace {

Rational lift_cost(const std::vector<Integer>& f, const Rational& r) {
  Rational c = 0;
  Rational w = 1;
  for (const auto& a : f) {
    c += Rational(abs(a)) * w;
    w *= r;
  }
  return c;
}

// Exact minimum of ||g|| over integer polynomials g of degree <= depth with
// g(p) = m, memoized on (m, depth).
class LiftSearch {
 public:
  LiftSearch(const Integer& p, const Rational& r) : p_(p), r_(r) {}

  std::pair<Rational, std::vector<Integer>> solve(const Integer& m, long depth) {
    const auto key = std::make_pair(m.get_str(), depth);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;

    // Seed: low base-p digits of |m| with the remaining quotient on top.
    std::vector<Integer> best;
    {
      Integer rest = abs(m);
      for (long i = 0; i < depth && rest != 0; ++i) {
        best.push_back(Integer(rest % p_));
        rest /= p_;
      }
      if (rest != 0) {
        best.resize(static_cast<std::size_t>(depth), 0);
        best.push_back(rest);
      }
      if (m < 0)
        for (auto& a : best) a = -a;
    }
    Rational best_cost = lift_cost(best, r_);

    if (depth > 0 && m != 0) {
      Integer residue = m % p_;
      if (residue < 0) residue += p_;
      // Candidates for the constant term in order of increasing |f0|.
      Integer up = residue, down = residue - p_;
      for (;;) {
        const bool take_up = abs(up) <= abs(down);
        const Integer f0 = take_up ? up : down;
        if (Rational(abs(f0)) >= best_cost) break;
        if (take_up)
          up += p_;
        else
          down -= p_;
        const Integer next = (m - f0) / p_;
        auto [sub_cost, sub] = solve(next, depth - 1);
        const Rational total = Rational(abs(f0)) + r_ * sub_cost;
        if (total < best_cost) {
          best_cost = total;
          best.assign(1, f0);
          best.insert(best.end(), sub.begin(), sub.end());
        }
      }
    }
    while (!best.empty() && best.back() == 0) best.pop_back();
    auto result = std::make_pair(best_cost, best);
    memo_.emplace(key, result);
    return result;
  }

 private:
  Integer p_;
  Rational r_;
  std::map<std::pair<std::string, long>, std::pair<Rational, std::vector<Integer>>> memo_;
};

}  // namespace

QuotientNormReport quotient_norm_bounds(const Integer& n, const PadicPresentation& pres, long search_degree) {
  require(n != 0, ErrorKind::Domain, "quotient norm bounds need n != 0");
  require(search_degree >= 0, ErrorKind::Domain, "search degree must be non-negative");
  const PadicExpansion e = padic_expand(n, pres);
  QuotientNormReport rep;
  rep.expansion_bound = e.lift_bound;
  rep.best_lift = canonical_lift(e);
  Rational upper = e.lift_norm;
  LiftSearch search(pres.p, pres.r);
  auto [cost, lift] = search.solve(n, search_degree);
  if (cost < upper) {
    upper = cost;
    rep.best_lift = lift;
  }
  rep.bounds = NormValue(e.norm, upper);
  return rep;
}

BezoutWitness bezout_orthogonality(const Integer& p, const Integer& q, unsigned long n) {
  require(is_prime(p) && is_prime(q), ErrorKind::Domain, "bezout_orthogonality needs primes");
  require(p != q, ErrorKind::Domain, "bezout_orthogonality needs distinct primes");
  require(n >= 1, ErrorKind::Domain, "exponent must be at least 1");
  const Integer pn = pow(p, n);
  const Integer qn = pow(q, n);
  BezoutWitness w;
  Integer g;
  mpz_gcdext(g.get_mpz_t(), w.a.get_mpz_t(), w.b.get_mpz_t(), pn.get_mpz_t(), qn.get_mpz_t());
  w.verified = g == 1 && w.a * pn + w.b * qn == 1;
  w.bound = Rational(1, 1) / Rational(pn) + Rational(1, 1) / Rational(qn);
  return w;
}

BaseRing zp_tensor_norm(const Integer& p, const Rational& r1, const Rational& r2) {
  require(r1 > 0 && r1 < 1 && r2 > 0 && r2 < 1, ErrorKind::Domain, "radii must lie in (0, 1)");
  return BaseRing::padic(p, min(r1, r2));
}

S1Report s1_kernel_element_norm(const Integer& p, long N) {
  require(p >= 2, ErrorKind::Domain, "s1 example needs p >= 2");
  require(N >= 0, ErrorKind::Domain, "truncation must be non-negative");
  const BaseRing circle = BaseRing::circle(pow(p, static_cast<unsigned long>(N + 1)));
  const Rational P(p);
  S1Report rep;
  std::vector<Rational> c;
  for (long i = 0; i <= N; ++i) {
    c.push_back(pow(P, -(i + 1)));
    rep.partial += norm_of(circle, c.back()) * pow(P, -i);
  }
  const Rational tail = pow(P, -(2 * N + 3)) / (1 - pow(P, -2));
  rep.enclosure = NormValue(rep.partial, rep.partial + tail);
  rep.limit = P / (P * P - 1);
  rep.alternate_value = 1 / (P - 1);
  rep.discrepancy = rep.limit != rep.alternate_value;

  // (x - p) sum c_i x^i: coefficient of x^k is c_{k-1} - p c_k, read in R/Z.
  rep.annihilated = distance_to_integer(-P * c[0]) == 0;
  for (long k = 1; k <= N; ++k) {
    if (distance_to_integer(c[k - 1] - P * c[k]) != 0) rep.annihilated = false;
  }
  rep.boundary_norm = distance_to_integer(c[N]) * pow(P, -(N + 1));
  return rep;
}

}  // namespace banarith
