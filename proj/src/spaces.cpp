#include "banarith/spaces.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "banarith/error.hpp"

namespace banarith {

const char* to_string(NormMode mode) { return mode == NormMode::SumL1 ? "sum" : "sup"; }

TailRule TailRule::geometric(Rational base, Rational scale, long from) {
  require(base > 0 && scale > 0, ErrorKind::Domain, "geometric weights need positive base and scale");
  TailRule t;
  t.kind = Kind::Geometric;
  t.base = std::move(base);
  t.scale = std::move(scale);
  t.from = from;
  return t;
}

TailRule TailRule::polynomial(std::vector<Rational> coeffs, long from, bool reciprocal) {
  require(from >= 0, ErrorKind::Domain, "polynomial weights start at a non-negative index");
  bool positive = false;
  for (const auto& c : coeffs) {
    require(c >= 0, ErrorKind::Domain, "polynomial weight coefficients must be non-negative");
    if (c > 0) positive = true;
  }
  require(positive, ErrorKind::Domain, "polynomial weight is identically zero");
  require(from > 0 || coeffs.front() > 0, ErrorKind::Domain, "polynomial weight vanishes at index 0");
  TailRule t;
  t.kind = Kind::Polynomial;
  t.coeffs = std::move(coeffs);
  t.from = from;
  t.reciprocal = reciprocal;
  return t;
}

TailRule TailRule::constant(long from, Rational value) {
  require(value > 0, ErrorKind::Domain, "constant weight must be positive");
  TailRule t;
  t.kind = Kind::TableConst;
  t.from = from;
  t.value = std::move(value);
  return t;
}

Rational TailRule::at(long i) const {
  require(i >= from, ErrorKind::Internal, "tail rule evaluated below its starting index");
  switch (kind) {
    case Kind::Geometric:
      return scale * pow(base, i);
    case Kind::Polynomial: {
      Rational v = 0;
      for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * i + *it;
      return reciprocal ? 1 / v : v;
    }
    case Kind::TableConst:
      return value;
  }
  fail(ErrorKind::Internal, "unknown tail rule");
}

TailRule TailRule::inverted() const {
  TailRule t = *this;
  switch (kind) {
    case Kind::Geometric:
      t.base = 1 / base;
      t.scale = 1 / scale;
      break;
    case Kind::Polynomial:
      t.reciprocal = !reciprocal;
      break;
    case Kind::TableConst:
      t.value = 1 / value;
      break;
  }
  return t;
}

WeightFunction::WeightFunction(std::map<Index, Rational> table, std::optional<TailRule> tail)
    : table_(std::move(table)), tail_(std::move(tail)) {
  for (const auto& [idx, w] : table_) {
    require(w > 0, ErrorKind::Domain, "weights must be strictly positive");
    if (tail_ && idx.size() == 1 && idx[0] >= tail_->from) {
      if (tail_->at(idx[0]) != w)
        fail(ErrorKind::Validation, "weight table disagrees with its tail rule at index " + std::to_string(idx[0]));
    }
  }
}

WeightFunction WeightFunction::constant(const Rational& value) {
  return WeightFunction({}, TailRule::constant(0, value));
}

WeightFunction WeightFunction::geometric(const Rational& base) { return WeightFunction({}, TailRule::geometric(base)); }

WeightFunction WeightFunction::from_rule(const TailRule& rule) { return WeightFunction({}, rule); }

WeightFunction WeightFunction::from_values(const std::vector<Rational>& values, long first) {
  std::map<Index, Rational> table;
  for (std::size_t k = 0; k < values.size(); ++k) table[Index{first + static_cast<long>(k)}] = values[k];
  return WeightFunction(std::move(table));
}

bool WeightFunction::defined_at(const Index& index) const {
  if (table_.count(index)) return true;
  return tail_ && index.size() == 1 && index[0] >= tail_->from;
}

Rational WeightFunction::at(const Index& index) const {
  auto it = table_.find(index);
  if (it != table_.end()) return it->second;
  if (tail_ && index.size() == 1 && index[0] >= tail_->from) return tail_->at(index[0]);
  std::string label;
  for (auto i : index) label += (label.empty() ? "" : ",") + std::to_string(i);
  fail(ErrorKind::Validation, "weight undefined at index (" + label + ")");
}

WeightFunction WeightFunction::reciprocal() const {
  std::map<Index, Rational> table;
  for (const auto& [idx, w] : table_) table[idx] = 1 / w;
  std::optional<TailRule> tail;
  if (tail_) tail = tail_->inverted();
  return WeightFunction(std::move(table), std::move(tail));
}

bool pointwise_leq(const WeightFunction& a, const WeightFunction& b, long first, long last) {
  for (long i = first; i <= last; ++i)
    if (a.at(i) > b.at(i)) return false;
  return true;
}

std::vector<long> strict_order_exceptions(const WeightFunction& a, const WeightFunction& b, long first, long last) {
  std::vector<long> out;
  for (long i = first; i <= last; ++i)
    if (!(a.at(i) < b.at(i))) out.push_back(i);
  return out;
}

void SpaceDescriptor::validate() const {
  std::set<Index> seen;
  for (const auto& idx : indices) {
    if (!seen.insert(idx).second) fail(ErrorKind::Validation, "duplicate index in space " + label);
    if (weights.at(idx) <= 0) fail(ErrorKind::Validation, "non-positive weight in space " + label);
  }
}

Rational vector_norm(const SpaceDescriptor& d, const std::vector<Rational>& coords) {
  require(coords.size() == d.dimension(), ErrorKind::Domain, "coordinate vector has wrong length");
  Rational total = 0;
  for (std::size_t j = 0; j < coords.size(); ++j) {
    if (coords[j] == 0) continue;
    const Rational term = norm_of(d.ring, coords[j]) * d.weight(j);
    total = d.mode == NormMode::SumL1 ? total + term : max(total, term);
  }
  return total;
}

Rational functional_norm(const SpaceDescriptor& d, const std::vector<Rational>& alpha) {
  require(alpha.size() == d.dimension(), ErrorKind::Domain, "functional has wrong length");
  // On an l1 space the norm is the weighted sup; on a finite sup space it is
  // the weighted sum, or the weighted max when the base norm is ultrametric.
  const bool use_sum = d.mode == NormMode::SupLinf && !d.ring.ultrametric();
  Rational total = 0;
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    if (alpha[j] == 0) continue;
    const Rational term = norm_of(d.ring, alpha[j]) / d.weight(j);
    total = use_sum ? total + term : max(total, term);
  }
  return total;
}

NormValue seq_norm(const WeightedSeqElement& v) {
  Rational body = 0;
  for (const auto& [idx, c] : v.coeffs) {
    const Rational term = norm(c).upper * v.weights.at(idx);
    body = v.mode == NormMode::SumL1 ? body + term : max(body, term);
  }
  if (v.mode == NormMode::SumL1) return NormValue(body + v.tail.lower, body + v.tail.upper);
  return join(NormValue::exact(body), v.tail);
}

SpaceDescriptor dual_descriptor(const SpaceDescriptor& d) {
  SpaceDescriptor out = d;
  out.weights = d.weights.reciprocal();
  out.mode = d.mode == NormMode::SumL1 ? NormMode::SupLinf : NormMode::SumL1;
  const std::string prefix = "dual(";
  if (d.label.rfind(prefix, 0) == 0 && d.label.back() == ')') {
    out.label = d.label.substr(prefix.size(), d.label.size() - prefix.size() - 1);
  } else {
    out.label = prefix + d.label + ")";
  }
  return out;
}

SpaceDescriptor tensor_l1(const SpaceDescriptor& a, const SpaceDescriptor& b) {
  if (!(a.ring == b.ring))
    fail(ErrorKind::Domain, "tensor of spaces over different rings " + a.ring.name() + " and " + b.ring.name());
  require(a.mode == NormMode::SumL1 && b.mode == NormMode::SumL1, ErrorKind::Domain,
          "tensor_l1 needs two l1 coproducts");
  SpaceDescriptor out;
  out.ring = a.ring;
  out.label = a.label + "(x)" + b.label;
  out.mode = NormMode::SumL1;
  std::map<Index, Rational> table;
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    for (std::size_t j = 0; j < b.dimension(); ++j) {
      Index idx = a.indices[i];
      idx.insert(idx.end(), b.indices[j].begin(), b.indices[j].end());
      table[idx] = a.weight(i) * b.weight(j);
      out.indices.push_back(std::move(idx));
    }
  }
  out.weights = WeightFunction(std::move(table));
  return out;
}

SpaceDescriptor sym_power(const SpaceDescriptor& v, unsigned n) {
  require(v.mode == NormMode::SumL1, ErrorKind::Domain, "sym_power needs an l1 coproduct");
  const std::size_t d = v.dimension();
  SpaceDescriptor out;
  out.ring = v.ring;
  out.label = "Sym^" + std::to_string(n) + "(" + v.label + ")";
  out.mode = NormMode::SumL1;
  std::map<Index, Rational> table;
  Index exps(d, 0);
  // Exponent vectors summing to n, first coordinate largest first.
  std::function<void(std::size_t, long, Rational)> rec = [&](std::size_t pos, long left, Rational w) {
    if (pos + 1 >= d) {
      if (d == 0) {
        if (left != 0) return;
      } else {
        exps[pos] = left;
        w *= pow(v.weight(pos), left);
      }
      table[exps] = w;
      out.indices.push_back(exps);
      return;
    }
    for (long e = left; e >= 0; --e) {
      exps[pos] = e;
      rec(pos + 1, left - e, w * pow(v.weight(pos), e));
    }
  };
  rec(0, static_cast<long>(n), Rational(1));
  out.weights = WeightFunction(std::move(table));
  return out;
}

namespace {

void require_integer_positive(const WeightFunction& w, long i) {
  const Rational v = w.at(i);
  if (!(v > 0 && is_integer(v)))
    fail(ErrorKind::Domain,
         "dominated weights must be positive integers; got " + to_string(v) + " at " + std::to_string(i));
}

}  // namespace

Rational dominating_weight_at(const std::vector<WeightFunction>& list, long i) {
  require(!list.empty(), ErrorKind::Domain, "dominate_weights needs at least one weight function");
  require(i >= 1, ErrorKind::Domain, "dominating weights are indexed from 1");
  Rational alpha = 1;
  const long top = std::min<long>(i, static_cast<long>(list.size()));
  for (long k = 1; k <= top; ++k) {
    require_integer_positive(list[k - 1], i);
    alpha += list[k - 1].at(i);
  }
  return alpha;
}

WeightFunction dominate_weights(const std::vector<WeightFunction>& list, long horizon) {
  require(!list.empty(), ErrorKind::Domain, "dominate_weights needs at least one weight function");
  require(horizon >= 1, ErrorKind::Domain, "horizon must be at least 1");
  const long K = static_cast<long>(list.size());
  bool constant_tails = true;
  long from = K;
  Rational tail_value = 1;
  for (const auto& w : list) {
    if (!w.tail() || w.tail()->kind != TailRule::Kind::TableConst) {
      constant_tails = false;
      break;
    }
    from = std::max(from, w.tail()->from);
    tail_value += w.tail()->value;
  }
  std::map<Index, Rational> table;
  if (constant_tails) {
    for (long i = 1; i < from; ++i) table[Index{i}] = dominating_weight_at(list, i);
    for (const auto& w : list) require_integer_positive(w, from);
    return WeightFunction(std::move(table), TailRule::constant(std::max(from, 1L), tail_value));
  }
  for (long i = 1; i <= horizon; ++i) table[Index{i}] = dominating_weight_at(list, i);
  return WeightFunction(std::move(table));
}

bool InterchangeReport::all_hold() const {
  return iota_after_pi_is_g && pi_after_iota_is_f && iota_natural && pi_natural && iota_norm <= 1 &&
         pi_norm <= pi_bound && f_norm <= 1 && g_norm <= 1;
}

namespace {

// Weights a[k][s] of a K x S grid; `sum_of_sup` selects sum over s of sup
// over k, otherwise sup over k of sum over s.
struct Grid {
  std::vector<std::vector<Rational>> a;
  bool sum_of_sup = true;
};

Rational grid_norm(const Grid& g, const std::vector<std::vector<Rational>>& x) {
  const std::size_t K = g.a.size();
  const std::size_t S = K ? g.a[0].size() : 0;
  Rational total = 0;
  if (g.sum_of_sup) {
    for (std::size_t s = 0; s < S; ++s) {
      Rational m = 0;
      for (std::size_t k = 0; k < K; ++k) m = max(m, abs(x[k][s]) * g.a[k][s]);
      total += m;
    }
  } else {
    for (std::size_t k = 0; k < K; ++k) {
      Rational m = 0;
      for (std::size_t s = 0; s < S; ++s) m += abs(x[k][s]) * g.a[k][s];
      total = max(total, m);
    }
  }
  return total;
}

// Exact norm of the coefficient identity from `from` to `to`: the target
// norm is convex, so its maximum on the unit ball is reached at a vertex.
Rational identity_operator_norm(const Grid& from, const Grid& to) {
  const std::size_t K = from.a.size();
  const std::size_t S = K ? from.a[0].size() : 0;
  if (K == 0 || S == 0) return 0;
  std::vector<std::vector<Rational>> x(K, std::vector<Rational>(S, 0));
  Rational best = 0;
  if (from.sum_of_sup) {
    for (std::size_t s = 0; s < S; ++s) {
      for (auto& row : x) std::fill(row.begin(), row.end(), 0);
      for (std::size_t k = 0; k < K; ++k) x[k][s] = 1 / from.a[k][s];
      best = max(best, grid_norm(to, x));
    }
    return best;
  }
  // Vertices put 1/a(k, s_k) at one s_k per row k. Write c(k, s) = to/from.
  auto c = [&](std::size_t k, std::size_t s) -> Rational { return to.a[k][s] / from.a[k][s]; };
  if (!to.sum_of_sup) {
    for (std::size_t k = 0; k < K; ++k)
      for (std::size_t s = 0; s < S; ++s) best = max(best, c(k, s));
    return best;
  }
  // Target sum_s max_{k : s_k = s} c(k, s): rows sharing a column only count
  // once, so the maximum is a maximum-weight matching of rows to columns.
  require(K <= 20, ErrorKind::Domain, "grid has too many rows for the matching search");
  std::vector<Rational> dp(std::size_t{1} << K, Rational(-1));
  dp[0] = 0;
  for (std::size_t s = 0; s < S; ++s) {
    std::vector<Rational> next = dp;
    for (std::size_t mask = 0; mask < dp.size(); ++mask) {
      if (dp[mask] < 0) continue;
      for (std::size_t k = 0; k < K; ++k) {
        if (mask >> k & 1) continue;
        const std::size_t m2 = mask | std::size_t{1} << k;
        next[m2] = max(next[m2], dp[mask] + c(k, s));
      }
    }
    dp = std::move(next);
  }
  for (const auto& v : dp) best = max(best, v);
  return best;
}

}  // namespace

InterchangeReport interchange_maps(const std::vector<Rational>& r_s,
                                   const std::vector<std::vector<Rational>>& base_norms, const WeightFunction& phi2) {
  const std::size_t S = r_s.size();
  const std::size_t K = base_norms.empty() ? 0 : base_norms.size();
  require(S > 0, ErrorKind::Domain, "interchange grid needs at least one s");
  const std::size_t rows = K ? K : 1;
  for (const auto& r : r_s) require(r > 0, ErrorKind::Domain, "r_s must be positive");

  InterchangeReport rep;
  auto weights_at = [&](const std::vector<Rational>& phi) {
    std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(S));
    for (std::size_t k = 0; k < rows; ++k) {
      for (std::size_t s = 0; s < S; ++s) {
        const Rational c = K ? base_norms[k].at(s) : Rational(1);
        require(c > 0, ErrorKind::Domain, "base norms must be positive");
        a[k][s] = c * r_s[s] / phi[k];
      }
    }
    return a;
  };
  if (K) {
    for (const auto& row : base_norms)
      require(row.size() == S, ErrorKind::Domain, "base norm rows must have one entry per s");
  }
  std::vector<Rational> phi(rows), phi_d(rows), phi_dd(rows);
  for (std::size_t k = 0; k < rows; ++k) {
    const long kk = static_cast<long>(k) + 1;
    phi[k] = phi2.at(kk);
    require(phi[k] > 0, ErrorKind::Domain, "phi2 must be positive");
    phi_d[k] = pow(Rational(2), kk) * phi[k];
    phi_dd[k] = pow(Rational(2), kk) * phi_d[k];
  }
  rep.phi2 = phi;
  rep.phi2_doubled = phi_d;

  const Grid A{weights_at(phi), true}, B{weights_at(phi), false};
  const Grid A1{weights_at(phi_d), true}, B1{weights_at(phi_d), false};
  const Grid A2{weights_at(phi_dd), true};
  rep.iota_norm = identity_operator_norm(A, B);
  rep.pi_norm = identity_operator_norm(B, A1);
  rep.f_norm = identity_operator_norm(A, A1);
  rep.g_norm = identity_operator_norm(B, B1);
  rep.pi_bound = 1 - pow(Rational(1, 2), static_cast<long>(rows));
  // The next-level pi' must also respect the geometric estimate.
  const Rational pi_next = identity_operator_norm(B1, A2);

  // Every map is the identity on coefficients; compose the matrices.
  const std::size_t n = rows * S;
  const Matrix id = Matrix::identity(n);
  const Matrix iota = id, pi = id, f = id, g = id;
  rep.iota_after_pi_is_g = iota * pi == g;
  rep.pi_after_iota_is_f = pi * iota == f;
  rep.iota_natural = g * iota == iota * f;
  rep.pi_natural = pi * g == f * pi && pi_next <= rep.pi_bound;
  return rep;
}

CoproductKernel kernel_of_coproduct_map(const std::vector<DiagonalMap>& maps) {
  CoproductKernel out;
  out.kernel.label = "ker";
  out.kernel.mode = NormMode::SumL1;
  if (!maps.empty()) out.kernel.ring = maps.front().domain.ring;
  std::size_t total = 0;
  for (const auto& m : maps) {
    require(m.entries.size() == m.domain.dimension(), ErrorKind::Domain,
            "diagonal map has the wrong number of entries");
    require(m.domain.ring == out.kernel.ring, ErrorKind::Domain, "summands over different rings");
    total += m.entries.size();
  }
  // Per-summand kernels, concatenated.
  std::map<Index, Rational> table;
  std::vector<std::vector<Rational>> cols;
  Matrix whole(total, total);
  std::size_t offset = 0;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    const auto& m = maps[i];
    for (std::size_t j = 0; j < m.entries.size(); ++j) {
      whole(offset + j, offset + j) = m.entries[j];
      if (m.entries[j] != 0) continue;
      Index idx{static_cast<long>(i)};
      idx.insert(idx.end(), m.domain.indices[j].begin(), m.domain.indices[j].end());
      table[idx] = m.domain.weight(j);
      out.kernel.indices.push_back(idx);
      std::vector<Rational> e(total, 0);
      e[offset + j] = 1;
      cols.push_back(std::move(e));
    }
    offset += m.entries.size();
  }
  out.kernel.weights = WeightFunction(std::move(table));
  out.basis = Matrix::from_columns(cols, total);
  out.agrees = same_column_space(out.basis, nullspace(whole));
  return out;
}

}  // namespace banarith
