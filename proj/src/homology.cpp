#include "banarith/homology.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <random>

#include "banarith/error.hpp"
#include "banarith/nuclear.hpp"

namespace banarith {

std::size_t ChainComplex::dim(int degree) const {
  if (degree < min_degree || degree > max_degree()) return 0;
  return dims[static_cast<std::size_t>(degree - min_degree)];
}

Matrix ChainComplex::differential(int degree) const {
  const int k = degree - min_degree;
  if (k >= 0 && k < static_cast<int>(differentials.size())) return differentials[static_cast<std::size_t>(k)];
  return Matrix(dim(degree + 1), dim(degree));
}

void ChainComplex::validate_shapes() const {
  require(dims.empty() ? differentials.empty() : differentials.size() + 1 == dims.size(), ErrorKind::Validation,
          "complex needs one differential between consecutive degrees");
  for (std::size_t k = 0; k < differentials.size(); ++k) {
    if (!(differentials[k].cols() == dims[k] && differentials[k].rows() == dims[k + 1]))
      fail(ErrorKind::Validation, "differential " + std::to_string(k) + " has the wrong shape");
  }
}

bool ChainComplex::d_squared_zero(int* failing_degree) const {
  validate_shapes();
  for (std::size_t k = 0; k + 1 < differentials.size(); ++k) {
    if (!(differentials[k + 1] * differentials[k]).is_zero()) {
      if (failing_degree) *failing_degree = min_degree + static_cast<int>(k);
      return false;
    }
  }
  return true;
}

namespace {

std::string triangle_name(const FiniteDiagram& d, std::size_t i, std::size_t j, std::size_t k) {
  return d.labels[i] + " -> " + d.labels[j] + " -> " + d.labels[k];
}

}  // namespace

FiniteDiagram FiniteDiagram::from_generators(std::vector<std::string> labels, std::vector<SpaceDescriptor> spaces,
                                             const std::vector<Arrow>& generators) {
  require(labels.size() == spaces.size(), ErrorKind::Validation, "one space per object");
  FiniteDiagram d{std::move(labels), std::move(spaces), {}};
  const std::size_t n = d.size();
  for (const auto& a : generators) {
    require(a.from < n && a.to < n, ErrorKind::Validation, "arrow endpoint out of range");
    require(a.from != a.to, ErrorKind::Validation, "identity arrows are implicit");
    auto [it, inserted] = d.transitions.emplace(std::make_pair(a.from, a.to), a.transition);
    if (!inserted && !(it->second == a.transition))
      fail(ErrorKind::Validation, "conflicting transitions for " + d.labels[a.from] + " -> " + d.labels[a.to]);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    const auto snapshot = d.transitions;
    for (const auto& [ij, tij] : snapshot) {
      for (const auto& [jk, tjk] : snapshot) {
        if (ij.second != jk.first) continue;
        if (ij.first == jk.second)
          fail(ErrorKind::Validation, "order relation has a cycle through " + d.labels[ij.first]);
        const Matrix composite = tij * tjk;
        const auto key = std::make_pair(ij.first, jk.second);
        auto it = d.transitions.find(key);
        if (it == d.transitions.end()) {
          d.transitions.emplace(key, composite);
          changed = true;
        } else if (!(it->second == composite)) {
          fail(ErrorKind::Validation, "non-functorial triangle " + triangle_name(d, ij.first, ij.second, jk.second));
        }
      }
    }
  }
  d.validate();
  return d;
}

bool FiniteDiagram::leq(std::size_t i, std::size_t j) const { return i == j || transitions.count({i, j}) > 0; }

Matrix FiniteDiagram::transition(std::size_t i, std::size_t j) const {
  if (i == j) return Matrix::identity(spaces[i].dimension());
  auto it = transitions.find({i, j});
  if (it == transitions.end()) fail(ErrorKind::Domain, "no arrow " + labels[i] + " -> " + labels[j]);
  return it->second;
}

void FiniteDiagram::validate() const {
  require(labels.size() == spaces.size(), ErrorKind::Validation, "one space per object");
  for (const auto& [ij, t] : transitions) {
    const auto [i, j] = ij;
    require(i < size() && j < size() && i != j, ErrorKind::Validation, "malformed arrow");
    if (!(t.rows() == spaces[i].dimension() && t.cols() == spaces[j].dimension()))
      fail(ErrorKind::Validation, "transition " + labels[i] + " -> " + labels[j] + " has the wrong shape");
    if (transitions.count({j, i}))
      fail(ErrorKind::Validation, "order relation is not antisymmetric at " + labels[i] + ", " + labels[j]);
  }
  for (const auto& [ij, tij] : transitions) {
    for (const auto& [jk, tjk] : transitions) {
      if (ij.second != jk.first) continue;
      auto it = transitions.find({ij.first, jk.second});
      if (!(it != transitions.end() && it->second == tij * tjk))
        fail(ErrorKind::Validation, "non-functorial triangle " + triangle_name(*this, ij.first, ij.second, jk.second));
    }
  }
}

bool FiniteDiagram::non_expanding() const {
  for (const auto& [ij, t] : transitions) {
    if (operator_norm(spaces[ij.second], spaces[ij.first], t).upper > 1) return false;
  }
  return true;
}

std::vector<std::vector<std::size_t>> FiniteDiagram::chains(std::size_t n, bool reduced) const {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  std::function<void()> rec = [&]() {
    if (cur.size() == n + 1) {
      out.push_back(cur);
      return;
    }
    for (std::size_t k = 0; k < size(); ++k) {
      if (!cur.empty()) {
        if (!leq(cur.back(), k)) continue;
        if (reduced && cur.back() == k) continue;
      }
      cur.push_back(k);
      rec();
      cur.pop_back();
    }
  };
  rec();
  std::sort(out.begin(), out.end(), [this](const auto& a, const auto& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [this](std::size_t x, std::size_t y) { return labels[x] < labels[y]; });
  });
  return out;
}

namespace {

std::string chain_label(const FiniteDiagram& d, const std::vector<std::size_t>& c) {
  std::string s;
  for (std::size_t k = 0; k < c.size(); ++k) s += (k ? ">" : "") + d.labels[c[k]];
  return s;
}

void add_block(Matrix& m, std::size_t row, std::size_t col, const Matrix& block, const Rational& sign) {
  for (std::size_t i = 0; i < block.rows(); ++i)
    for (std::size_t j = 0; j < block.cols(); ++j)
      if (block(i, j) != 0) m(row + i, col + j) += sign * block(i, j);
}

}  // namespace

ChainComplex roos_complex(const FiniteDiagram& d, std::size_t max_chain_len, bool reduced) {
  d.validate();
  require(max_chain_len >= 1, ErrorKind::Domain, "max_chain_len must be at least 1");
  ChainComplex k;
  k.min_degree = 0;
  std::vector<std::vector<std::vector<std::size_t>>> chains;
  std::vector<std::map<std::vector<std::size_t>, std::size_t>> offsets;
  for (std::size_t n = 0; n <= max_chain_len; ++n) {
    chains.push_back(d.chains(n, reduced));
    std::map<std::vector<std::size_t>, std::size_t> off;
    std::size_t total = 0;
    std::vector<std::string> labels;
    for (const auto& c : chains.back()) {
      off[c] = total;
      const std::size_t dim = d.spaces[c[0]].dimension();
      for (std::size_t b = 0; b < dim; ++b) labels.push_back(chain_label(d, c) + ":" + std::to_string(b));
      total += dim;
    }
    offsets.push_back(std::move(off));
    k.dims.push_back(total);
    k.labels.push_back(std::move(labels));
  }
  for (std::size_t n = 0; n < max_chain_len; ++n) {
    Matrix m(k.dims[n + 1], k.dims[n]);
    for (const auto& beta : chains[n + 1]) {
      const std::size_t row = offsets[n + 1].at(beta);
      const std::size_t i0 = beta[0];
      const Matrix id = Matrix::identity(d.spaces[i0].dimension());
      // First face: apply the transition V_{i1} -> V_{i0}.
      std::vector<std::size_t> face(beta.begin() + 1, beta.end());
      add_block(m, row, offsets[n].at(face), d.transition(i0, beta[1]), 1);
      // Inner faces compose adjacent arrows; the last face drops the final arrow.
      for (std::size_t l = 1; l <= n + 1; ++l) {
        face = beta;
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(l));
        add_block(m, row, offsets[n].at(face), id, l % 2 ? -1 : 1);
      }
    }
    k.differentials.push_back(std::move(m));
  }
  return k;
}

void TowerDiagram::validate() const {
  require(!spaces.empty(), ErrorKind::Validation, "tower needs at least one space");
  require(maps.size() + 1 == spaces.size(), ErrorKind::Validation, "tower needs one map per consecutive pair");
  for (std::size_t i = 0; i < maps.size(); ++i) {
    if (!(maps[i].rows() == spaces[i].dimension() && maps[i].cols() == spaces[i + 1].dimension()))
      fail(ErrorKind::Validation, "tower map " + std::to_string(i + 1) + " has the wrong shape");
  }
}

FiniteDiagram TowerDiagram::diagram() const {
  validate();
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "V%03zu", i + 1);
    labels.emplace_back(buf);
  }
  std::vector<Arrow> gens;
  for (std::size_t i = 0; i < maps.size(); ++i) gens.push_back({i, i + 1, maps[i]});
  return FiniteDiagram::from_generators(std::move(labels), spaces, gens);
}

ShiftLimit limit_via_shift(const TowerDiagram& t, const WeightFunction& psi) {
  t.validate();
  const std::size_t N = t.spaces.size();
  for (std::size_t i = 0; i + 1 < N; ++i) {
    const auto& src = t.spaces[i + 1];
    for (std::size_t b = 0; b < src.dimension(); ++b) {
      const Rational image = vector_norm(t.spaces[i], t.maps[i].column(b));
      if (!(image <= src.weight(b)))
        fail(ErrorKind::Validation, "transition " + std::to_string(i + 2) + " -> " + std::to_string(i + 1) +
                                        " expands basis vector " + std::to_string(b));
    }
  }
  std::vector<std::size_t> off(N + 1, 0);
  for (std::size_t i = 0; i < N; ++i) off[i + 1] = off[i] + t.spaces[i].dimension();
  ShiftLimit out;
  out.id_minus_s = Matrix(off[N - 1], off[N]);
  for (std::size_t i = 0; i + 1 < N; ++i) {
    add_block(out.id_minus_s, off[i], off[i], Matrix::identity(t.spaces[i].dimension()), 1);
    add_block(out.id_minus_s, off[i], off[i + 1], t.maps[i], -1);
  }
  out.kernel = nullspace(out.id_minus_s);
  out.weights_ok = true;
  for (std::size_t i = 0; i + 1 < N; ++i) {
    const long k = static_cast<long>(i) + 1;
    const Rational s_norm = operator_norm(t.spaces[i + 1], t.spaces[i], t.maps[i]).upper;
    const Rational bound = psi.at(k) / psi.at(k + 1) / 2 + s_norm / 2;
    out.component_bounds.push_back(bound);
    if (bound > 1) out.weights_ok = false;
  }
  return out;
}

std::vector<std::vector<std::size_t>> CoverSpec::tuples(std::size_t length) const {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  std::function<void()> rec = [&]() {
    if (cur.size() == length) {
      out.push_back(cur);
      return;
    }
    const std::size_t start = (ordered || cur.empty()) ? 0 : cur.back() + 1;
    for (std::size_t k = start; k < cover_size; ++k) {
      cur.push_back(k);
      rec();
      cur.pop_back();
    }
  };
  rec();
  return out;
}

namespace {

std::vector<std::size_t> drop(const std::vector<std::size_t>& w, std::size_t l) {
  std::vector<std::size_t> out = w;
  out.erase(out.begin() + static_cast<std::ptrdiff_t>(l));
  return out;
}

std::string tuple_name(const std::vector<std::size_t>& w) {
  std::string s = "(";
  for (std::size_t k = 0; k < w.size(); ++k) s += (k ? "," : "") + std::to_string(w[k]);
  return s + ")";
}

}  // namespace

void CoverSpec::validate(std::size_t max_length) const {
  require(dims.count({}), ErrorKind::Validation, "cover data needs the base algebra (empty tuple)");
  for (std::size_t len = 1; len <= max_length; ++len) {
    for (const auto& w : tuples(len)) {
      if (!dims.count(w)) fail(ErrorKind::Validation, "missing cover data for tuple " + tuple_name(w));
      for (std::size_t l = 0; l < len; ++l) {
        auto it = faces.find({w, l});
        if (it == faces.end())
          fail(ErrorKind::Validation, "missing face " + std::to_string(l) + " of tuple " + tuple_name(w));
        if (!(it->second.rows() == dims.at(w) && it->second.cols() == dims.at(drop(w, l))))
          fail(ErrorKind::Validation,
               "face " + std::to_string(l) + " of tuple " + tuple_name(w) + " has the wrong shape");
      }
      for (std::size_t j = 1; j < len; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
          const Matrix lhs = faces.at({w, j}) * faces.at({drop(w, j), i});
          const Matrix rhs = faces.at({w, i}) * faces.at({drop(w, i), j - 1});
          if (!(lhs == rhs))
            fail(ErrorKind::Validation, "simplicial identity fails at tuple " + tuple_name(w) + " for faces (" +
                                            std::to_string(i) + ", " + std::to_string(j) + ")");
        }
      }
    }
  }
}

CoverSpec identity_cover(std::size_t base_dim, std::size_t cover_size, std::size_t module_rank, bool ordered,
                         std::size_t max_length) {
  CoverSpec c;
  c.cover_size = cover_size;
  c.module_rank = module_rank;
  c.ordered = ordered;
  c.dims[{}] = base_dim;
  const Matrix id = Matrix::identity(base_dim);
  for (std::size_t len = 1; len <= max_length; ++len) {
    for (const auto& w : c.tuples(len)) {
      c.dims[w] = base_dim;
      for (std::size_t l = 0; l < len; ++l) c.faces[{w, l}] = id;
    }
  }
  return c;
}

ChainComplex cech_complex(const CoverSpec& c, std::size_t max_degree) {
  c.validate(max_degree + 1);
  const std::size_t m = c.module_rank;
  ChainComplex k;
  k.min_degree = -1;
  std::vector<std::vector<std::vector<std::size_t>>> tuples;
  std::vector<std::map<std::vector<std::size_t>, std::size_t>> offsets;
  for (std::size_t len = 0; len <= max_degree + 1; ++len) {
    tuples.push_back(c.tuples(len));
    std::map<std::vector<std::size_t>, std::size_t> off;
    std::size_t total = 0;
    std::vector<std::string> labels;
    for (const auto& w : tuples.back()) {
      off[w] = total;
      for (std::size_t t = 0; t < m; ++t)
        for (std::size_t b = 0; b < c.dims.at(w); ++b)
          labels.push_back(tuple_name(w) + ":" + std::to_string(t) + "." + std::to_string(b));
      total += c.dims.at(w) * m;
    }
    offsets.push_back(std::move(off));
    k.dims.push_back(total);
    k.labels.push_back(std::move(labels));
  }
  for (std::size_t len = 0; len <= max_degree; ++len) {
    Matrix d(k.dims[len + 1], k.dims[len]);
    for (const auto& w : tuples[len + 1]) {
      for (std::size_t l = 0; l <= len; ++l) {
        const auto face = drop(w, l);
        const Matrix& f = c.faces.at({w, l});
        for (std::size_t t = 0; t < m; ++t) {
          add_block(d, offsets[len + 1].at(w) + t * c.dims.at(w), offsets[len].at(face) + t * c.dims.at(face), f,
                    l % 2 ? -1 : 1);
        }
      }
    }
    k.differentials.push_back(std::move(d));
  }
  return k;
}

LocalizationCover LocalizationCover::make(std::vector<Integer> primes, unsigned exponent) {
  require(!primes.empty(), ErrorKind::Domain, "cover needs at least one prime");
  require(exponent >= 1, ErrorKind::Domain, "exponent must be at least 1");
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (!is_prime(primes[i])) fail(ErrorKind::Domain, to_string(primes[i]) + " is not prime");
    for (std::size_t j = 0; j < i; ++j) require(primes[i] != primes[j], ErrorKind::Domain, "primes must be distinct");
  }
  return LocalizationCover{std::move(primes), exponent};
}

CoverSpec LocalizationCover::spec(std::size_t module_rank) const {
  return identity_cover(1, primes.size(), module_rank, false, primes.size());
}

bool LocalizationCover::in_lattice(const Rational& x, long i) const {
  Integer allowed = 1;
  const long n = static_cast<long>(primes.size());
  require(i >= -1 && i <= n, ErrorKind::Domain, "lattice index out of range");
  if (i == n) {
    for (const auto& p : primes) allowed *= pow(p, exponent);
  } else if (i >= 0) {
    allowed = pow(primes[static_cast<std::size_t>(i)], exponent);
  }
  return allowed % x.get_den() == 0;
}

std::pair<Rational, Rational> LocalizationCover::bezout_preimage(const Rational& x) const {
  require(primes.size() == 2, ErrorKind::Domain, "Bezout preimages are defined for two-member covers");
  if (!in_lattice(x, 2)) fail(ErrorKind::Domain, to_string(x) + " is outside the truncated lattice");
  Integer P = 1, Q = 1;
  Integer den = x.get_den();
  while (den % primes[0] == 0) {
    den /= primes[0];
    P *= primes[0];
  }
  Q = den;
  Integer g, u, v;
  mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), P.get_mpz_t(), Q.get_mpz_t());
  require(g == 1, ErrorKind::Internal, "Bezout coefficients for coprime powers");
  // x = a (uP + vQ) / (PQ) = a v / P + a u / Q.
  const Integer a = x.get_num();
  Rational b(Integer(a * v), P);
  Rational c(Integer(-a * u), Q);
  b.canonicalize();
  c.canonicalize();
  return {b, c};
}

Cohomology truncated_cohomology(const ChainComplex& k, int degree) {
  const Matrix d_out = k.differential(degree);
  const Matrix d_in = k.differential(degree - 1);
  const Matrix ker = nullspace(d_out);
  Matrix span = column_basis(d_in);
  Cohomology h;
  h.kernel_dim = ker.cols();
  h.image_dim = span.cols();
  std::vector<std::vector<Rational>> reps;
  std::size_t r = rank(span);
  for (std::size_t j = 0; j < ker.cols(); ++j) {
    const Matrix col = Matrix::from_columns({ker.column(j)}, ker.rows());
    Matrix extended = hconcat(span, col);
    const std::size_t r2 = rank(extended);
    if (r2 > r) {
      span = std::move(extended);
      r = r2;
      reps.push_back(ker.column(j));
    }
  }
  h.dimension = reps.size();
  h.basis = Matrix::from_columns(reps, k.dim(degree));
  return h;
}

namespace {

Rational functional_norm_at(const std::vector<Rational>& f, const Rational& rho) {
  Rational best = 0;
  for (std::size_t j = 0; j < f.size(); ++j) best = max(best, abs(f[j]) * pow(rho, -static_cast<long>(j)));
  return best;
}

}  // namespace

SplitReport split_check(const Rational& r, const WeightFunction& psi, long max_degree, const Rational& E,
                        std::size_t samples, std::uint64_t seed) {
  require(max_degree >= 0, ErrorKind::Domain, "max_degree must be non-negative");
  const BaseRing ring = BaseRing::rationals();
  const PolydiskAlgebra alg = PolydiskAlgebra::make(ring, {r}, DiskMode::Arch, psi);
  SplitReport rep;
  auto note = [&rep](bool& flag, const std::string& what) {
    if (flag && rep.witness.empty()) rep.witness = what;
    flag = false;
  };
  for (long j = 0; j <= max_degree; ++j) {
    const Series f = Series::monomial(alg, Index{j});
    ++rep.checked;
    try {
      const DeltaResult d = delta_map(f, E);
      if (!d.bound_holds) note(rep.delta_bound, "delta bound at x^" + std::to_string(j));
      if (!(sigma_map(d.family, alg).value.coeffs == f.coeffs))
        note(rep.sigma_delta, "sigma o delta at x^" + std::to_string(j));
    } catch (const Error&) {
      note(rep.delta_bound, "constant E too small at x^" + std::to_string(j));
    }
  }
  // Families with slots 0..D+1; the last slot stays zero.
  const std::size_t slots = static_cast<std::size_t>(max_degree) + 2;
  std::vector<PolydiskAlgebra> slot_alg;
  for (std::size_t i = 0; i < slots; ++i) slot_alg.push_back(family_slot_algebra(ring, r, static_cast<long>(i)));
  for (std::size_t i = 0; i + 1 < slots; ++i) {
    for (long j = 0; j <= max_degree; ++j) {
      SeriesFamily v{r, psi, {}};
      v.slots.reserve(slots);
      for (std::size_t s = 0; s < slots; ++s) v.slots.emplace_back(slot_alg[s]);
      v.slots[i].set(Index{j}, 1);
      ++rep.checked;
      if (!sigma_map(id_minus_shift(v), alg).value.coeffs.empty()) {
        note(rep.sigma_shift, "sigma o (id - s) at slot " + std::to_string(i) + ", x^" + std::to_string(j));
      }
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-20, 20), den(1, 10);
  const std::size_t length = 6;
  const std::size_t width = static_cast<std::size_t>(std::min<long>(max_degree, 10)) + 1;
  for (std::size_t s = 0; s < samples; ++s) {
    std::vector<std::vector<Rational>> f(length, std::vector<Rational>(width));
    for (auto& row : f)
      for (auto& x : row) x = Rational(num(rng), den(rng));
    for (auto& row : f)
      for (auto& x : row) x.canonicalize();
    for (std::size_t i = 0; i + 1 < length; ++i) {
      const long k = static_cast<long>(i);
      const Rational rho_i = r + Rational(1, std::max(k, 1L));
      const Rational rho_next = r + Rational(1, std::max(k + 1, 1L));
      std::vector<Rational> diff(width);
      for (std::size_t j = 0; j < width; ++j) diff[j] = f[i][j] - f[i + 1][j];
      const Rational lhs = functional_norm_at(diff, rho_i) / (2 * psi.at(k + 1));
      const Rational rhs =
          max(functional_norm_at(f[i], rho_i) / psi.at(k), functional_norm_at(f[i + 1], rho_next) / psi.at(k + 1));
      ++rep.checked;
      if (lhs > rhs)
        note(rep.dual_weights, "dual weights at sample " + std::to_string(s) + ", slot " + std::to_string(i));
    }
  }
  return rep;
}

}  // namespace banarith
