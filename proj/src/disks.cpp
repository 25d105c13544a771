#include "banarith/disks.hpp"

#include <algorithm>

#include "banarith/error.hpp"

namespace banarith {

const char* to_string(DiskMode mode) { return mode == DiskMode::Arch ? "arch" : "nonarch"; }

PolydiskAlgebra PolydiskAlgebra::make(BaseRing ring, std::vector<Rational> radii, DiskMode mode,
                                      std::optional<WeightFunction> psi) {
  PolydiskAlgebra a{std::move(ring), std::move(radii), mode, std::move(psi)};
  a.validate();
  return a;
}

void PolydiskAlgebra::validate() const {
  for (const auto& r : radii) require(r > 0, ErrorKind::Domain, "polydisk radii must be positive");
  if (psi) {
    // Spot-check the first values; psi is indexed by total degree.
    Rational prev = 0;
    for (long j = 0; j <= 64 && psi->defined_at(Index{j}); ++j) {
      const Rational v = psi->at(j);
      require(v >= 1, ErrorKind::Domain, "psi must be >= 1");
      require(v >= prev, ErrorKind::Domain, "psi must be non-decreasing");
      prev = v;
    }
  }
}

long total_degree(const Index& j) {
  long d = 0;
  for (auto e : j) d += e;
  return d;
}

Rational PolydiskAlgebra::monomial_weight(const Index& j) const {
  require(j.size() == radii.size(), ErrorKind::Domain, "multi-index arity does not match the algebra");
  Rational w = 1;
  for (std::size_t k = 0; k < j.size(); ++k) {
    require(j[k] >= 0, ErrorKind::Domain, "negative exponent in multi-index");
    w *= pow(radii[k], j[k]);
  }
  if (psi) w *= psi->at(total_degree(j));
  return w;
}

Series Series::monomial(const PolydiskAlgebra& alg, const Index& j, const Rational& c) {
  Series s(alg);
  s.set(j, c);
  return s;
}

Series Series::from_dense(const PolydiskAlgebra& alg, const std::vector<Rational>& coeffs) {
  require(alg.arity() == 1, ErrorKind::Domain, "dense coefficient lists need a one-variable algebra");
  Series s(alg);
  for (std::size_t i = 0; i < coeffs.size(); ++i) s.set(Index{static_cast<long>(i)}, coeffs[i]);
  return s;
}

void Series::set(const Index& j, const Rational& c) {
  require(j.size() == algebra.arity(), ErrorKind::Domain, "multi-index arity does not match the algebra");
  for (auto e : j) require(e >= 0, ErrorKind::Domain, "negative exponent in multi-index");
  if (c == 0) {
    coeffs.erase(j);
    return;
  }
  if (!algebra.ring.contains(c))
    fail(ErrorKind::Unsupported, to_string(c) + " is not representable in ring " + algebra.ring.name());
  coeffs[j] = c;
}

Rational Series::coeff(const Index& j) const {
  auto it = coeffs.find(j);
  return it == coeffs.end() ? Rational(0) : it->second;
}

long Series::degree() const {
  long d = -1;
  for (const auto& [j, c] : coeffs) d = std::max(d, total_degree(j));
  return d;
}

Rational polynomial_norm(const Series& f) {
  Rational total = 0;
  const bool arch = f.algebra.mode == DiskMode::Arch;
  if (f.algebra.arity() == 1 && !f.algebra.psi) {
    // Keys ascend, so r^j is carried from one term to the next.
    const Rational& r = f.algebra.radii[0];
    Rational rj = 1;
    long at = 0;
    for (const auto& [j, c] : f.coeffs) {
      rj *= pow(r, j[0] - at);
      at = j[0];
      const Rational term = norm_of(f.algebra.ring, c) * rj;
      total = arch ? total + term : max(total, term);
    }
    return total;
  }
  for (const auto& [j, c] : f.coeffs) {
    const Rational term = norm_of(f.algebra.ring, c) * f.algebra.monomial_weight(j);
    total = arch ? total + term : max(total, term);
  }
  return total;
}

NormValue series_norm(const Series& f) {
  const Rational body = polynomial_norm(f);
  const Rational& t = f.tail;
  if (f.algebra.mode == DiskMode::NonArch && f.algebra.ring.ultrametric()) {
    const Rational lower = t < body ? body : Rational(0);
    return NormValue(lower, max(body, t));
  }
  return NormValue(max(Rational(0), body - t), body + t);
}

namespace {

void require_same_algebra(const Series& f, const Series& g) {
  require(f.algebra.arity() == g.algebra.arity(), ErrorKind::Domain, "series arity mismatch");
  require(f.algebra == g.algebra, ErrorKind::Domain, "series live in different algebras");
}

Rational combine_tails(const PolydiskAlgebra& alg, const Rational& a, const Rational& b) {
  if (alg.mode == DiskMode::NonArch && alg.ring.ultrametric()) return max(a, b);
  return a + b;
}

}  // namespace

Series add(const Series& f, const Series& g) {
  require_same_algebra(f, g);
  Series out = f;
  for (const auto& [j, c] : g.coeffs) out.set(j, out.coeff(j) + c);
  out.tail = combine_tails(f.algebra, f.tail, g.tail);
  return out;
}

Series sub(const Series& f, const Series& g) {
  require_same_algebra(f, g);
  Series out = f;
  for (const auto& [j, c] : g.coeffs) out.set(j, out.coeff(j) - c);
  out.tail = combine_tails(f.algebra, f.tail, g.tail);
  return out;
}

Series mul(const Series& f, const Series& g, std::optional<long> max_degree) {
  require_same_algebra(f, g);
  const PolydiskAlgebra& alg = f.algebra;
  if (!alg.ring.has_multiplication())
    fail(ErrorKind::Unsupported, "ring " + alg.ring.name() + " has no multiplication");
  require(!alg.psi, ErrorKind::Unsupported, "psi-weighted algebras are multiplied only as modules");
  const bool ultra = alg.mode == DiskMode::NonArch && alg.ring.ultrametric();
  require(!(alg.mode == DiskMode::NonArch && !ultra && (f.tail != 0 || g.tail != 0)), ErrorKind::Domain,
          "sup-norm tails cannot be propagated over a non-ultrametric ring");

  std::map<Index, Rational> full;
  for (const auto& [i, a] : f.coeffs) {
    for (const auto& [j, b] : g.coeffs) {
      Index k(i.size());
      for (std::size_t t = 0; t < i.size(); ++t) k[t] = i[t] + j[t];
      full[k] += a * b;
    }
  }
  Series out(alg);
  Rational discarded = 0;
  for (const auto& [k, c] : full) {
    if (c == 0) continue;
    if (max_degree && total_degree(k) > *max_degree) {
      const Rational term = norm_of(alg.ring, c) * alg.monomial_weight(k);
      discarded = alg.mode == DiskMode::Arch ? discarded + term : max(discarded, term);
      continue;
    }
    out.set(k, c);
  }
  if (f.tail == 0 && g.tail == 0) {
    out.tail = discarded;
    return out;
  }
  const Rational f0 = polynomial_norm(f);
  const Rational g0 = polynomial_norm(g);
  const Rational& C = alg.ring.submult_constant;
  if (ultra) {
    out.tail = max(C * max(max(f0 * g.tail, f.tail * g0), f.tail * g.tail), discarded);
  } else {
    out.tail = C * (f0 * g.tail + f.tail * g0 + f.tail * g.tail) + discarded;
  }
  return out;
}

Series restrict(const Series& f, const std::vector<Rational>& smaller_radii) {
  require(smaller_radii.size() == f.algebra.arity(), ErrorKind::Domain, "radius vector arity mismatch");
  for (std::size_t k = 0; k < smaller_radii.size(); ++k) {
    require(smaller_radii[k] > 0, ErrorKind::Domain, "radii must be positive");
    if (!(smaller_radii[k] <= f.algebra.radii[k]))
      fail(ErrorKind::Domain,
           "restriction to a larger radius " + to_string(smaller_radii[k]) + " > " + to_string(f.algebra.radii[k]));
  }
  Series out = f;
  out.algebra.radii = smaller_radii;
  return out;
}

PolydiskAlgebra family_slot_algebra(const BaseRing& ring, const Rational& r, long i) {
  require(i >= 0, ErrorKind::Domain, "family slots are indexed from 0");
  return PolydiskAlgebra::make(ring, {r + Rational(1, std::max(i, 1L))}, DiskMode::Arch);
}

SeriesFamily make_family(const BaseRing& ring, const Rational& r, const WeightFunction& psi,
                         const std::vector<std::vector<Rational>>& dense_slots) {
  SeriesFamily v{r, psi, {}};
  v.slots.reserve(dense_slots.size());
  for (std::size_t i = 0; i < dense_slots.size(); ++i) {
    v.slots.push_back(Series::from_dense(family_slot_algebra(ring, r, static_cast<long>(i)), dense_slots[i]));
  }
  return v;
}

Rational family_norm(const SeriesFamily& v) {
  Rational total = 0;
  for (std::size_t i = 0; i < v.slots.size(); ++i) {
    require(v.slots[i].tail == 0, ErrorKind::Domain, "family operations need tail-free components");
    if (v.slots[i].coeffs.empty()) continue;
    total += v.psi.at(static_cast<long>(i)) * polynomial_norm(v.slots[i]);
  }
  return total;
}

DeltaResult delta_map(const Series& f, const Rational& E) {
  const PolydiskAlgebra& alg = f.algebra;
  require(alg.arity() == 1, ErrorKind::Domain, "delta is defined for one variable");
  require(alg.mode == DiskMode::Arch, ErrorKind::Domain, "delta is defined for the l1 norm");
  require(f.tail == 0, ErrorKind::Domain, "delta needs a tail-free series");
  const Rational r = alg.radii[0];
  const WeightFunction psi = alg.psi.value_or(WeightFunction::constant(1));

  DeltaResult out;
  out.constant = E;
  out.required = 1;
  for (const auto& [j, c] : f.coeffs) {
    if (j[0] >= 1) out.required = max(out.required, pow(1 + 1 / (j[0] * r), j[0]));
  }
  if (!(E >= out.required))
    fail(ErrorKind::Domain, "constant " + to_string(E) + " is below sup (1 + 1/(jr))^j = " + to_string(out.required));

  out.family.r = r;
  out.family.psi = psi;
  const long deg = f.degree();
  out.family.slots.reserve(static_cast<std::size_t>(deg + 1));
  for (long i = 0; i <= deg; ++i) {
    Series slot(family_slot_algebra(alg.ring, r, i));
    slot.set(Index{i}, f.coeff(Index{i}));
    out.family.slots.push_back(std::move(slot));
  }
  out.family_norm = family_norm(out.family);
  out.source_norm = polynomial_norm(f);
  out.bound_holds = out.family_norm <= E * out.source_norm;
  return out;
}

SigmaResult sigma_map(const SeriesFamily& v, const PolydiskAlgebra& target) {
  require(target.arity() == 1, ErrorKind::Domain, "sigma targets a one-variable algebra");
  SigmaResult out{Series(target), 0, 0, false};
  for (const auto& slot : v.slots) {
    require(slot.algebra.arity() == 1, ErrorKind::Domain, "family components must have one variable");
    for (const auto& [j, c] : slot.coeffs) out.value.set(j, out.value.coeff(j) + c);
  }
  out.source_norm = family_norm(v);
  out.target_norm = polynomial_norm(out.value);
  out.non_expanding = out.target_norm <= out.source_norm;
  return out;
}

SeriesFamily id_minus_shift(const SeriesFamily& v) {
  SeriesFamily out{v.r, v.psi, {}};
  out.slots.reserve(v.slots.size());
  for (std::size_t i = 0; i < v.slots.size(); ++i) {
    require(v.slots[i].tail == 0, ErrorKind::Domain, "family operations need tail-free components");
    const PolydiskAlgebra& alg = v.slots[i].algebra;
    const Rational radius = v.r + Rational(1, std::max(static_cast<long>(i), 1L));
    Series slot(alg.arity() == 1 && alg.radii[0] == radius && alg.mode == DiskMode::Arch && !alg.psi
                    ? alg
                    : family_slot_algebra(alg.ring, v.r, static_cast<long>(i)));
    slot.coeffs = v.slots[i].coeffs;
    if (i > 0) {
      for (const auto& [j, c] : v.slots[i - 1].coeffs) slot.set(j, slot.coeff(j) - c);
    }
    out.slots.push_back(std::move(slot));
  }
  return out;
}

PairingReport pairing(const Series& f, const Series& g, const std::vector<Rational>& rho,
                      const std::vector<Rational>& r) {
  const std::size_t n = f.algebra.arity();
  require(g.algebra.arity() == n && rho.size() == n && r.size() == n, ErrorKind::Domain, "pairing arity mismatch");
  require(f.algebra.ring == g.algebra.ring, ErrorKind::Domain, "pairing across rings");
  require(f.tail == 0 && g.tail == 0, ErrorKind::Domain, "pairing needs tail-free truncations");
  for (std::size_t k = 0; k < n; ++k) {
    require(r[k] > 0, ErrorKind::Domain, "radii must be positive");
    require(rho[k] > r[k], ErrorKind::Domain, "pairing needs rho > r in every coordinate");
  }
  const BaseRing& ring = f.algebra.ring;
  auto rho_pow = [&](const Index& j, bool inverse) {
    Rational w = 1;
    for (std::size_t k = 0; k < n; ++k) w *= pow(rho[k], inverse ? -j[k] : j[k]);
    return w;
  };
  PairingReport rep;
  rep.value = 0;
  for (const auto& [j, a] : f.coeffs) {
    rep.value += a * g.coeff(j);
    rep.left += norm_of(ring, a) * rho_pow(j, true);
  }
  for (const auto& [j, b] : g.coeffs) rep.right += norm_of(ring, b) * rho_pow(j, false);
  rep.bound = ring.submult_constant * rep.left * rep.right;
  rep.holds = norm_of(ring, rep.value) <= rep.bound;
  return rep;
}

ComparisonReport compare_norms(const Series& f, const std::vector<Rational>& s, const std::vector<Rational>& t) {
  const std::size_t n = f.algebra.arity();
  require(s.size() == n && t.size() == n, ErrorKind::Domain, "radius vector arity mismatch");
  require(f.tail == 0, ErrorKind::Domain, "norm comparison needs a tail-free series");
  ComparisonReport rep;
  rep.factor = 1;
  for (std::size_t k = 0; k < n; ++k) {
    require(s[k] > 0, ErrorKind::Domain, "radii must be positive");
    require(s[k] < t[k], ErrorKind::Domain, "comparison needs s < t in every coordinate");
    rep.factor /= 1 - s[k] / t[k];
  }
  for (const auto& [j, a] : f.coeffs) {
    Rational ws = 1, wt = 1;
    for (std::size_t k = 0; k < n; ++k) {
      ws *= pow(s[k], j[k]);
      wt *= pow(t[k], j[k]);
    }
    const Rational na = norm_of(f.algebra.ring, a);
    rep.l1_at_s += na * ws;
    rep.sup_at_t = max(rep.sup_at_t, na * wt);
  }
  rep.rhs = rep.factor * rep.sup_at_t;
  rep.holds = rep.l1_at_s <= rep.rhs;
  return rep;
}

void RadiusFamily::validate() const {
  for (const auto& m : members) m.validate();
  for (std::size_t i = 1; i < members.size(); ++i) {
    const auto& a = members[i - 1];
    const auto& b = members[i];
    require(a.ring == b.ring && a.arity() == b.arity() && a.mode == b.mode, ErrorKind::Validation,
            "radius family members must share ring, arity and mode");
    for (std::size_t k = 0; k < a.arity(); ++k) {
      const bool ok = direction == RadiusDirection::Increasing ? a.radii[k] < b.radii[k] : a.radii[k] > b.radii[k];
      if (!ok) fail(ErrorKind::Validation, "radius family is not strictly monotone at member " + std::to_string(i));
    }
  }
}

}  // namespace banarith
