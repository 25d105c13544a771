#include "banarith/nuclear.hpp"

#include <algorithm>
#include <functional>

#include "banarith/error.hpp"

namespace banarith {

const char* to_string(ActionKind kind) {
  switch (kind) {
    case ActionKind::Diagonal:
      return "diagonal";
    case ActionKind::ColumnFinite:
      return "column-finite";
    case ActionKind::Shift:
      return "shift";
    case ActionKind::Composite:
      return "composite";
  }
  return "unknown";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Nuclear:
      return "nuclear";
    case Verdict::NotNuclear:
      return "not-nuclear";
    case Verdict::Unknown:
      return "unknown";
  }
  return "unknown";
}

bool same_space(const SpaceDescriptor& a, const SpaceDescriptor& b) {
  if (!(a.ring == b.ring) || a.mode != b.mode || a.indices != b.indices) return false;
  for (std::size_t j = 0; j < a.dimension(); ++j)
    if (a.weight(j) != b.weight(j)) return false;
  return true;
}

namespace {

bool rational_abs_ring(const BaseRing& ring) {
  return ring.kind == RingKind::IntegersAbs || ring.kind == RingKind::RationalsAbs;
}

Rational abs_norm(const SpaceDescriptor& d, const std::vector<Rational>& v) {
  Rational total = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Rational term = abs(v[i]) * d.weight(i);
    total = d.mode == NormMode::SumL1 ? total + term : max(total, term);
  }
  return total;
}

constexpr std::size_t kMaxEnumeratedDimension = 16;

}  // namespace

NormValue operator_norm(const SpaceDescriptor& domain, const SpaceDescriptor& codomain, const Matrix& m) {
  require(m.rows() == codomain.dimension() && m.cols() == domain.dimension(), ErrorKind::Domain,
          "matrix shape does not match the spaces");
  const Rational& C = codomain.ring.submult_constant;
  Rational lower = 0;
  Rational sum = 0;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    const Rational ratio = vector_norm(codomain, m.column(j)) / domain.weight(j);
    lower = max(lower, ratio);
    sum += ratio;
  }
  if (domain.mode == NormMode::SumL1) return NormValue(lower, C * lower);

  // Sup-norm domain: the unit ball has the sign vectors as vertices.
  if (rational_abs_ring(domain.ring) && rational_abs_ring(codomain.ring) && m.cols() <= kMaxEnumeratedDimension) {
    const std::size_t n = m.cols();
    Rational best = 0;
    const std::size_t count = n == 0 ? 1 : (std::size_t{1} << (n - 1));
    for (std::size_t mask = 0; mask < count; ++mask) {
      std::vector<Rational> x(n);
      for (std::size_t j = 0; j < n; ++j) {
        const bool negative = j > 0 && ((mask >> (j - 1)) & 1);
        x[j] = (negative ? -1 : 1) / domain.weight(j);
      }
      best = max(best, abs_norm(codomain, apply_matrix(m, x)));
    }
    return NormValue(best, C * best);
  }
  return NormValue(lower, max(lower, C * sum));
}

BoundedMap BoundedMap::diagonal(const SpaceDescriptor& domain, const SpaceDescriptor& codomain,
                                const std::vector<Rational>& entries) {
  require(domain.dimension() == entries.size() && codomain.dimension() == entries.size(), ErrorKind::Domain,
          "diagonal map needs equal dimensions");
  Matrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  BoundedMap out = column_finite(domain, codomain, m);
  out.action = ActionKind::Diagonal;
  return out;
}

BoundedMap BoundedMap::column_finite(const SpaceDescriptor& domain, const SpaceDescriptor& codomain,
                                     const Matrix& matrix) {
  domain.validate();
  codomain.validate();
  BoundedMap out{domain, codomain, ActionKind::ColumnFinite, matrix, NormValue()};
  out.bound = operator_norm(domain, codomain, matrix);
  return out;
}

BoundedMap BoundedMap::shift(const SpaceDescriptor& domain, const SpaceDescriptor& codomain) {
  Matrix m(codomain.dimension(), domain.dimension());
  for (std::size_t i = 0; i < domain.dimension() && i + 1 < codomain.dimension(); ++i) m(i + 1, i) = 1;
  BoundedMap out = column_finite(domain, codomain, m);
  out.action = ActionKind::Shift;
  return out;
}

BoundedMap BoundedMap::composite(const std::vector<BoundedMap>& maps) {
  require(!maps.empty(), ErrorKind::Domain, "composite of no maps");
  Matrix m = maps.front().matrix;
  for (std::size_t i = 1; i < maps.size(); ++i) {
    if (!same_space(maps[i - 1].codomain, maps[i].domain))
      fail(ErrorKind::Domain, "composite maps are not composable at position " + std::to_string(i));
    m = maps[i].matrix * m;
  }
  BoundedMap out = column_finite(maps.front().domain, maps.back().codomain, m);
  out.action = ActionKind::Composite;
  return out;
}

Matrix NuclearCert::reproduce() const {
  Matrix m(codomain.dimension(), domain.dimension());
  for (const auto& t : terms) {
    for (std::size_t i = 0; i < t.w.size(); ++i) {
      if (t.w[i] == 0) continue;
      for (std::size_t j = 0; j < t.alpha.size(); ++j)
        if (t.alpha[j] != 0) m(i, j) += t.w[i] * t.alpha[j];
    }
  }
  return m;
}

Rational term_norm(const NuclearCert& c, const CertTerm& t) {
  return vector_norm(c.codomain, t.w) * functional_norm(c.domain, t.alpha);
}

NormValue cert_norm(const NuclearCert& c) {
  Rational finite = 0;
  for (const auto& t : c.terms) finite += term_norm(c, t);
  return NormValue(finite + c.tail.lower, finite + c.tail.upper);
}

NuclearCert make_cert(const SpaceDescriptor& domain, const SpaceDescriptor& codomain, std::vector<CertTerm> terms,
                      const NormValue& tail) {
  for (const auto& t : terms) {
    require(t.w.size() == codomain.dimension(), ErrorKind::Domain, "certificate vector has the wrong length");
    require(t.alpha.size() == domain.dimension(), ErrorKind::Domain, "certificate functional has the wrong length");
  }
  NuclearCert c{domain, codomain, std::move(terms), tail, NormValue()};
  c.L = cert_norm(c);
  return c;
}

bool reproduces(const NuclearCert& c, const Matrix& m) { return c.reproduce() == m; }

NuclearCert concat_certs(const NuclearCert& a, const NuclearCert& b) {
  require(same_space(a.domain, b.domain) && same_space(a.codomain, b.codomain), ErrorKind::Domain,
          "certificates live on different spaces");
  std::vector<CertTerm> terms = a.terms;
  terms.insert(terms.end(), b.terms.begin(), b.terms.end());
  return make_cert(a.domain, a.codomain, std::move(terms), a.tail + b.tail);
}

namespace {

Rational poly_eval(const std::vector<Rational>& p, long i) {
  Rational v = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * i + *it;
  return v;
}

long poly_degree(const std::vector<Rational>& p) {
  for (long d = static_cast<long>(p.size()) - 1; d >= 0; --d)
    if (p[static_cast<std::size_t>(d)] != 0) return d;
  return -1;
}

std::vector<Rational> poly_mul(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

}  // namespace

TermForm TermForm::from_rule(const TailRule& rule) {
  TermForm f;
  f.from = rule.from;
  switch (rule.kind) {
    case TailRule::Kind::Geometric:
      f.K = rule.scale;
      f.q = rule.base;
      break;
    case TailRule::Kind::Polynomial:
      (rule.reciprocal ? f.Q : f.P) = rule.coeffs;
      break;
    case TailRule::Kind::TableConst:
      f.K = rule.value;
      break;
  }
  return f;
}

Rational TermForm::at(long i) const { return K * pow(q, i) * poly_eval(P, i) / poly_eval(Q, i); }

TermForm TermForm::inverse() const {
  TermForm f = *this;
  f.K = 1 / K;
  f.q = 1 / q;
  std::swap(f.P, f.Q);
  return f;
}

TermForm operator*(const TermForm& a, const TermForm& b) {
  TermForm f;
  f.K = a.K * b.K;
  f.q = a.q * b.q;
  f.P = poly_mul(a.P, b.P);
  f.Q = poly_mul(a.Q, b.Q);
  f.from = std::max(a.from, b.from);
  return f;
}

TailVerdict analyse_tail(const TermForm& form, long N) {
  const long start = N + 1;
  require(start >= form.from, ErrorKind::Validation, "tail rule does not cover the indices after the truncation");
  require(form.K > 0 && form.q > 0, ErrorKind::Domain, "term form needs positive constants");
  const long dp = poly_degree(form.P);
  const long dq = poly_degree(form.Q);
  TailVerdict v;
  if (form.q > 1) {
    v.verdict = Verdict::NotNuclear;
    v.reason = "terms grow geometrically with ratio " + to_string(form.q);
    return v;
  }
  if (form.q == 1) {
    if (dp >= dq) {
      v.verdict = Verdict::NotNuclear;
      v.reason = "terms do not tend to zero";
    } else {
      v.reason = "terms decay only polynomially; no tail bound";
    }
    return v;
  }
  const Rational first = form.at(start);
  if (dp <= 0 && dq <= 0) {
    v.verdict = Verdict::Nuclear;
    v.sum = NormValue::exact(first / (1 - form.q));
    v.reason = "geometric closed form";
    return v;
  }
  // t_{i+1}/t_i <= q ((i+1)/i)^deg P for i >= start, since Q is non-decreasing.
  const Rational theta = form.q * pow(1 + Rational(1, start), dp);
  if (theta < 1) {
    v.verdict = Verdict::Nuclear;
    v.sum = NormValue(first, first / (1 - theta));
    v.reason = "ratio bound " + to_string(theta);
    return v;
  }
  v.reason = "ratio bound " + to_string(theta) + " is not below 1; increase the truncation";
  return v;
}

SeriesVerdict nuclear_norm_diagonal(const std::vector<Rational>& entries, const std::optional<TailRule>& rule,
                                    const Rational& tau, const Rational& rho, long N) {
  require(tau > 0 && rho > 0, ErrorKind::Domain, "radii must be positive");
  require(N >= 0, ErrorKind::Domain, "truncation must be non-negative");
  const Rational q = rho / tau;
  const long M = std::max(N, static_cast<long>(entries.size()) - 1);
  SeriesVerdict out;
  for (long i = 0; i <= M; ++i) {
    Rational a = 0;
    if (i < static_cast<long>(entries.size())) {
      a = entries[static_cast<std::size_t>(i)];
    } else if (rule) {
      if (i < rule->from) fail(ErrorKind::Validation, "diagonal entry undefined at index " + std::to_string(i));
      a = rule->at(i);
    }
    out.partial += abs(a) * pow(q, i);
  }
  if (!rule) {
    out.verdict = Verdict::Nuclear;
    out.enclosure = NormValue::exact(out.partial);
    out.reason = "finitely many nonzero entries";
    return out;
  }
  TermForm geometric;
  geometric.q = q;
  const TailVerdict tail = analyse_tail(TermForm::from_rule(*rule) * geometric, M);
  out.verdict = tail.verdict;
  out.reason = tail.reason;
  out.enclosure =
      tail.verdict == Verdict::Nuclear ? NormValue::exact(out.partial) + tail.sum : NormValue::exact(out.partial);
  return out;
}

NuclearCert build_cert(const BoundedMap& map) {
  std::vector<CertTerm> terms;
  for (std::size_t j = 0; j < map.matrix.cols(); ++j) {
    auto col = map.matrix.column(j);
    if (std::all_of(col.begin(), col.end(), [](const Rational& x) { return x == 0; })) continue;
    std::vector<Rational> alpha(map.matrix.cols(), 0);
    alpha[j] = 1;
    terms.push_back({std::move(col), std::move(alpha)});
  }
  return make_cert(map.domain, map.codomain, std::move(terms));
}

namespace {

bool is_zero_vector(const std::vector<Rational>& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

std::vector<CertTerm> nonzero_terms(const NuclearCert& cert) {
  std::vector<CertTerm> out;
  for (const auto& t : cert.terms)
    if (!is_zero_vector(t.w) && !is_zero_vector(t.alpha)) out.push_back(t);
  return out;
}

SpaceDescriptor middle_space(const BaseRing& ring, const std::vector<Rational>& weights, NormMode mode,
                             const std::string& label) {
  SpaceDescriptor d;
  d.ring = ring;
  d.label = label;
  d.mode = mode;
  std::map<Index, Rational> table;
  for (std::size_t s = 0; s < weights.size(); ++s) {
    d.indices.push_back(Index{static_cast<long>(s)});
    table[Index{static_cast<long>(s)}] = weights[s];
  }
  d.weights = WeightFunction(std::move(table));
  return d;
}

std::vector<Rational> unit_vector(std::size_t n, std::size_t i) {
  std::vector<Rational> e(n, 0);
  e[i] = 1;
  return e;
}

}  // namespace

L1Decomposition decompose_through_l1(const NuclearCert& cert) {
  const auto terms = nonzero_terms(cert);
  std::vector<Rational> m;
  for (const auto& t : terms) {
    m.push_back(vector_norm(cert.codomain, t.w));
    require(m.back() > 0, ErrorKind::Internal, "nonzero certificate vector with zero norm");
  }
  L1Decomposition out;
  out.middle = middle_space(cert.codomain.ring, m, NormMode::SumL1, "l1-middle");
  std::vector<CertTerm> p_terms;
  std::vector<std::vector<Rational>> cols;
  for (std::size_t s = 0; s < terms.size(); ++s) {
    p_terms.push_back({unit_vector(terms.size(), s), terms[s].alpha});
    cols.push_back(terms[s].w);
  }
  out.p = make_cert(cert.domain, out.middle, std::move(p_terms), cert.tail);
  out.c = BoundedMap::column_finite(out.middle, cert.codomain, Matrix::from_columns(cols, cert.codomain.dimension()));
  out.reassembles = out.c.matrix * out.p.reproduce() == cert.reproduce();
  out.c_non_expanding = out.c.bound.upper <= 1;
  const Matrix pm = out.p.reproduce();
  const Rational L = cert_norm(cert).upper;
  out.p_bounded = true;
  for (std::size_t j = 0; j < cert.domain.dimension(); ++j) {
    if (vector_norm(out.middle, pm.column(j)) > L * cert.domain.weight(j)) out.p_bounded = false;
  }
  return out;
}

LinfDecomposition decompose_through_linf(const NuclearCert& cert) {
  const auto terms = nonzero_terms(cert);
  const Rational L = cert_norm(cert).upper;
  require(terms.empty() || L > 0, ErrorKind::Validation, "nonzero certificate with L = 0");
  std::vector<Rational> m;
  std::vector<Rational> wn;
  for (const auto& t : terms) {
    wn.push_back(vector_norm(cert.codomain, t.w));
    m.push_back(wn.back() / L);
  }
  LinfDecomposition out;
  out.middle = middle_space(cert.codomain.ring, m, NormMode::SupLinf, "linf-middle");
  std::vector<std::vector<Rational>> rows;
  std::vector<CertTerm> p_terms;
  for (std::size_t s = 0; s < terms.size(); ++s) {
    rows.push_back(terms[s].alpha);
    p_terms.push_back({terms[s].w, unit_vector(terms.size(), s)});
  }
  out.c = BoundedMap::column_finite(cert.domain, out.middle, Matrix::from_rows(rows, cert.domain.dimension()));
  out.p = make_cert(out.middle, cert.codomain, std::move(p_terms), cert.tail);
  out.reassembles = out.p.reproduce() * out.c.matrix == cert.reproduce();
  out.c_non_expanding = out.c.bound.upper <= 1;
  out.weights_consistent = true;
  for (std::size_t s = 0; s < m.size(); ++s)
    if (m[s] * L != wn[s]) out.weights_consistent = false;
  return out;
}

CertComposition compose_cert(const NuclearCert& cert, const BoundedMap& g, Side side) {
  std::vector<CertTerm> terms;
  CertComposition out;
  const Rational gn = g.bound.upper;
  if (side == Side::Post) {
    require(same_space(g.domain, cert.codomain), ErrorKind::Domain, "post-composed map has the wrong domain");
    for (const auto& t : cert.terms) {
      auto w = apply_matrix(g.matrix, t.w);
      if (!is_zero_vector(w)) terms.push_back({std::move(w), t.alpha});
    }
    out.cert = make_cert(cert.domain, g.codomain, std::move(terms), gn * cert.tail);
  } else {
    require(same_space(g.codomain, cert.domain), ErrorKind::Domain, "pre-composed map has the wrong codomain");
    const Matrix gt = g.matrix.transpose();
    for (const auto& t : cert.terms) {
      auto alpha = apply_matrix(gt, t.alpha);
      if (!is_zero_vector(alpha)) terms.push_back({t.w, std::move(alpha)});
    }
    out.cert = make_cert(g.domain, cert.codomain, std::move(terms), gn * cert.tail);
  }
  out.bound = gn * cert.L.upper;
  out.bound_holds = out.cert.L.upper <= out.bound;
  return out;
}

CertTensor tensor_cert(const NuclearCert& a, const NuclearCert& b) {
  const SpaceDescriptor domain = tensor_l1(a.domain, b.domain);
  const SpaceDescriptor codomain = tensor_l1(a.codomain, b.codomain);
  std::vector<CertTerm> terms;
  for (const auto& s : a.terms) {
    for (const auto& t : b.terms) {
      CertTerm u;
      for (const auto& x : s.w)
        for (const auto& y : t.w) u.w.push_back(x * y);
      for (const auto& x : s.alpha)
        for (const auto& y : t.alpha) u.alpha.push_back(x * y);
      if (!is_zero_vector(u.w) && !is_zero_vector(u.alpha)) terms.push_back(std::move(u));
    }
  }
  Rational fa = 0, fb = 0;
  for (const auto& s : a.terms) fa += term_norm(a, s);
  for (const auto& t : b.terms) fb += term_norm(b, t);
  const NormValue tail(a.tail.lower * (fb + b.tail.lower) + fa * b.tail.lower,
                       a.tail.upper * (fb + b.tail.upper) + fa * b.tail.upper);
  CertTensor out;
  out.cert = make_cert(domain, codomain, std::move(terms), tail);
  out.bound = a.L.upper * b.L.upper;
  out.bound_holds = out.cert.L.upper <= out.bound;
  return out;
}

namespace {

SpaceDescriptor weighted_line(const Rational& r, const WeightFunction& w, long M, const std::string& label) {
  std::vector<Rational> weights;
  for (long i = 0; i <= M; ++i) weights.push_back(pow(r, i) * w.at(i));
  SpaceDescriptor d = middle_space(BaseRing::rationals(), weights, NormMode::SumL1, label);
  return d;
}

}  // namespace

PsiPhiResult psi_phi_nuclear(const WeightFunction& psi, const WeightFunction& phi, const Rational& r, long N) {
  require(r > 0, ErrorKind::Domain, "radius must be positive");
  require(N >= 0, ErrorKind::Domain, "truncation must be non-negative");
  PsiPhiResult out;
  long M = N;
  for (const auto* w : {&psi, &phi}) {
    for (const auto& [idx, v] : w->table())
      if (idx.size() == 1) M = std::max(M, idx[0]);
  }
  std::optional<TermForm> form;
  if (psi.tail() && phi.tail()) {
    form = TermForm::from_rule(*phi.tail()) * TermForm::from_rule(*psi.tail()).inverse();
    M = std::max(M, form->from - 1);
  }
  std::vector<CertTerm> terms;
  for (long i = 0; i <= M; ++i) {
    const Rational a = psi.at(i), b = phi.at(i);
    require(a > 0 && b > 0, ErrorKind::Domain, "psi and phi must be positive");
    out.series.partial += b / a;
  }
  if (!form) {
    out.series.reason = "psi or phi has no tail rule";
    out.series.enclosure = NormValue::exact(out.series.partial);
    return out;
  }
  const TailVerdict tail = analyse_tail(*form, M);
  out.series.verdict = tail.verdict;
  out.series.reason = tail.reason;
  if (tail.verdict != Verdict::Nuclear) {
    out.series.enclosure = NormValue::exact(out.series.partial);
    return out;
  }
  out.series.enclosure = NormValue::exact(out.series.partial) + tail.sum;
  const SpaceDescriptor domain = weighted_line(r, psi, M, "R{x/r}^psi");
  const SpaceDescriptor codomain = weighted_line(r, phi, M, "R{x/r}^phi");
  for (long i = 0; i <= M; ++i) {
    terms.push_back({unit_vector(static_cast<std::size_t>(M + 1), static_cast<std::size_t>(i)),
                     unit_vector(static_cast<std::size_t>(M + 1), static_cast<std::size_t>(i))});
  }
  out.cert = make_cert(domain, codomain, std::move(terms), tail.sum);
  return out;
}

SpaceDescriptor disk_space(const PolydiskAlgebra& alg, long max_degree) {
  require(max_degree >= 0, ErrorKind::Domain, "truncation degree must be non-negative");
  SpaceDescriptor d;
  d.ring = alg.ring;
  d.mode = alg.mode == DiskMode::Arch ? NormMode::SumL1 : NormMode::SupLinf;
  d.label = "disk";
  std::map<Index, Rational> table;
  Index j(alg.arity(), 0);
  std::function<void(std::size_t, long)> rec = [&](std::size_t pos, long left) {
    if (pos == j.size()) {
      table[j] = alg.monomial_weight(j);
      return;
    }
    for (long e = 0; e <= left; ++e) {
      j[pos] = e;
      rec(pos + 1, left - e);
    }
    j[pos] = 0;
  };
  rec(0, max_degree);
  for (const auto& [idx, w] : table) d.indices.push_back(idx);
  d.weights = WeightFunction(std::move(table));
  return d;
}

NuclearCert restriction_cert(const PolydiskAlgebra& from, const std::vector<Rational>& rho, long N) {
  require(rho.size() == from.arity(), ErrorKind::Domain, "radius vector arity mismatch");
  Rational full = 1;
  for (std::size_t k = 0; k < rho.size(); ++k) {
    require(rho[k] > 0 && rho[k] < from.radii[k], ErrorKind::Domain,
            "restriction certificates need 0 < rho < tau in every coordinate");
    full /= 1 - rho[k] / from.radii[k];
  }
  PolydiskAlgebra to = from;
  to.radii = rho;
  const SpaceDescriptor domain = disk_space(from, N);
  const SpaceDescriptor codomain = disk_space(to, N);
  std::vector<CertTerm> terms;
  Rational partial = 0;
  for (std::size_t i = 0; i < domain.dimension(); ++i) {
    terms.push_back({unit_vector(domain.dimension(), i), unit_vector(domain.dimension(), i)});
    partial += codomain.weight(i) / domain.weight(i);
  }
  return make_cert(domain, codomain, std::move(terms), NormValue::exact(full - partial));
}

std::vector<NuclearCert> transition_certs(const RadiusFamily& family, long N) {
  family.validate();
  std::vector<NuclearCert> out;
  for (std::size_t i = 0; i + 1 < family.members.size(); ++i) {
    const auto& a = family.members[i];
    const auto& b = family.members[i + 1];
    if (family.direction == RadiusDirection::Increasing) {
      out.push_back(restriction_cert(b, a.radii, N));
    } else {
      out.push_back(restriction_cert(a, b.radii, N));
    }
  }
  return out;
}

}  // namespace banarith
