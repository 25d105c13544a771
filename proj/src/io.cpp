#include "banarith/io.hpp"

#include <algorithm>

namespace banarith::io {

namespace {

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(ErrorKind::Validation, where + " must be an object");
  auto it = j.find(key);
  if (it == j.end()) fail(ErrorKind::Validation, where + " is missing \"" + key + "\"");
  return *it;
}

bool has(const Json& j, const char* key) { return j.is_object() && j.contains(key); }

const Json& array_at(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(ErrorKind::Validation, where + " must be an array");
  return j;
}

bool bool_from(const Json& j, const std::string& where) {
  if (!j.is_boolean()) fail(ErrorKind::Validation, where + " must be a boolean");
  return j.get<bool>();
}

std::string string_from(const Json& j, const std::string& where) {
  if (!j.is_string()) fail(ErrorKind::Validation, where + " must be a string");
  return j.get<std::string>();
}

Index index_from(const Json& j, const std::string& where) {
  Index idx;
  if (j.is_number_integer()) return Index{long_from(j, where)};
  for (const auto& e : array_at(j, where)) idx.push_back(long_from(e, where));
  return idx;
}

Json index_json(const Index& idx) {
  Json a = Json::array();
  for (long v : idx) a.push_back(v);
  return a;
}

std::vector<Integer> integers_from(const Json& j, const std::string& where) {
  std::vector<Integer> out;
  for (const auto& e : array_at(j, where)) out.push_back(integer_from(e, where));
  return out;
}

Json integers_json(const std::vector<Integer>& v) {
  Json a = Json::array();
  for (const auto& n : v) a.push_back(to_json(n));
  return a;
}

NormMode norm_mode_from(const Json& j) {
  const std::string s = string_from(j, "mode");
  if (s == "sum" || s == "l1") return NormMode::SumL1;
  if (s == "sup" || s == "linf") return NormMode::SupLinf;
  fail(ErrorKind::Validation, "unknown norm mode \"" + s + "\"");
}

DiskMode disk_mode_from(const Json& j) {
  const std::string s = string_from(j, "mode");
  if (s == "arch") return DiskMode::Arch;
  if (s == "nonarch") return DiskMode::NonArch;
  fail(ErrorKind::Validation, "unknown disk mode \"" + s + "\"");
}

Json coeff_list(const std::map<Index, Rational>& coeffs) {
  Json a = Json::array();
  for (const auto& [idx, c] : coeffs) a.push_back({{"idx", index_json(idx)}, {"val", to_json(c)}});
  return a;
}

}  // namespace

Json to_json(const Rational& q) { return to_string(q); }

Rational rational_from(const Json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
      fail(ErrorKind::Validation, where + ": " + e.what());
    }
  }
  if (j.is_number_integer()) {
    return j.is_number_unsigned() ? Rational(Integer(std::to_string(j.get<unsigned long long>())))
                                  : Rational(Integer(std::to_string(j.get<long long>())));
  }
  if (j.is_number_float()) fail(ErrorKind::Validation, where + ": floating-point numbers are not accepted");
  fail(ErrorKind::Validation, where + " must be a \"num/den\" string");
}

Json to_json(const Integer& n) {
  if (n.fits_slong_p()) return n.get_si();
  return n.get_str();
}

Integer integer_from(const Json& j, const std::string& where) {
  const Rational q = rational_from(j, where);
  if (!is_integer(q)) fail(ErrorKind::Validation, where + " must be an integer");
  return q.get_num();
}

long long_from(const Json& j, const std::string& where) {
  const Integer n = integer_from(j, where);
  if (!n.fits_slong_p()) fail(ErrorKind::Validation, where + " is out of range");
  return n.get_si();
}

std::vector<Rational> rationals_from(const Json& j, const std::string& where) {
  std::vector<Rational> out;
  for (const auto& e : array_at(j, where)) out.push_back(rational_from(e, where));
  return out;
}

Json to_json(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& q : v) a.push_back(to_json(q));
  return a;
}

Json to_json(const BaseRing& ring) {
  Json j;
  switch (ring.kind) {
    case RingKind::IntegersAbs:
    case RingKind::RationalsAbs:
      break;
    case RingKind::TrivialNorm:
      if (!ring.inverted_primes.empty()) j["primes"] = integers_json(ring.inverted_primes);
      break;
    case RingKind::LocalizedIntegers:
      j["primes"] = integers_json(ring.inverted_primes);
      j["norm"] = ring.local_norm == LocalNorm::Abs ? "abs" : "trivial";
      break;
    case RingKind::PAdicScaled:
      j["p"] = to_json(ring.prime);
      j["r"] = to_json(ring.radius);
      break;
    case RingKind::CircleQuotient:
      j["denominator_bound"] = to_json(ring.denominator_bound);
      break;
  }
  if (ring.submult_constant != 1) j["C"] = to_json(ring.submult_constant);
  if (j.is_null()) return ring.name();
  j["kind"] = ring.name();
  return j;
}

BaseRing ring_from(const Json& j) {
  const std::string kind = j.is_string() ? j.get<std::string>() : string_from(field(j, "kind", "ring"), "ring kind");
  BaseRing ring;
  if (kind == "integers") {
    ring = BaseRing::integers();
  } else if (kind == "rationals") {
    ring = BaseRing::rationals();
  } else if (kind == "trivial") {
    ring = BaseRing::trivial(has(j, "primes") ? integers_from(j["primes"], "ring primes") : std::vector<Integer>{});
  } else if (kind == "localized") {
    const std::string norm = has(j, "norm") ? string_from(j["norm"], "ring norm") : "abs";
    require(norm == "abs" || norm == "trivial", ErrorKind::Validation, "ring norm must be \"abs\" or \"trivial\"");
    ring = BaseRing::localized(integers_from(field(j, "primes", "ring"), "ring primes"),
                               norm == "abs" ? LocalNorm::Abs : LocalNorm::Trivial);
  } else if (kind == "padic") {
    ring =
        BaseRing::padic(integer_from(field(j, "p", "ring"), "ring p"), rational_from(field(j, "r", "ring"), "ring r"));
  } else if (kind == "circle") {
    ring = BaseRing::circle(integer_from(field(j, "denominator_bound", "ring"), "ring denominator_bound"));
  } else {
    fail(ErrorKind::Validation, "unknown ring \"" + kind + "\"");
  }
  if (has(j, "C")) {
    ring.submult_constant = rational_from(j["C"], "ring C");
    require(ring.submult_constant > 0, ErrorKind::Validation, "ring C must be positive");
  }
  return ring;
}

Json to_json(const Scalar& s) {
  const BaseRing& ring = s.ring();
  if (ring.kind == RingKind::PAdicScaled && is_integer(s.value()) && ring.submult_constant == 1) {
    Json j{{"ring", "padic"}, {"p", to_json(ring.prime)}, {"r", to_json(ring.radius)}};
    Integer m = abs(s.value()).get_num();
    Json digits = Json::array();
    long shift = 0;
    if (m != 0) {
      shift = static_cast<long>(valuation(m, ring.prime));
      m /= pow(ring.prime, static_cast<unsigned long>(shift));
      while (m != 0) {
        digits.push_back(Integer(m % ring.prime).get_si());
        m /= ring.prime;
      }
    }
    j["digits"] = digits;
    j["shift"] = shift;
    if (s.value() < 0) j["negative"] = true;
    return j;
  }
  return Json{{"ring", to_json(ring)}, {"num", s.value().get_num().get_str()}, {"den", s.value().get_den().get_str()}};
}

Scalar scalar_from(const Json& j) {
  if (j.is_string() || j.is_number()) return Scalar(BaseRing::rationals(), rational_from(j, "scalar"));
  const Json& r = field(j, "ring", "scalar");
  if (r.is_string() && r.get<std::string>() == "padic") {
    const Integer p = integer_from(field(j, "p", "scalar"), "scalar p");
    const BaseRing ring = BaseRing::padic(p, rational_from(field(j, "r", "scalar"), "scalar r"));
    const Json& digits = array_at(field(j, "digits", "scalar"), "scalar digits");
    const long shift = long_from(field(j, "shift", "scalar"), "scalar shift");
    require(shift >= 0, ErrorKind::Validation, "p-adic shift must be non-negative");
    Integer value = 0, place = pow(p, static_cast<unsigned long>(shift));
    for (std::size_t k = 0; k < digits.size(); ++k) {
      const Integer d = integer_from(digits[k], "scalar digit");
      require(d >= 0 && d < p, ErrorKind::Validation, "p-adic digit out of range [0, p - 1]");
      require(k > 0 || d != 0, ErrorKind::Validation, "leading p-adic digit must be nonzero");
      value += d * place;
      place *= p;
    }
    require(!digits.empty() || shift == 0, ErrorKind::Validation, "zero has shift 0");
    const bool negative = has(j, "negative") && bool_from(j["negative"], "scalar negative");
    return Scalar(ring, Rational(negative ? Integer(-value) : value));
  }
  const BaseRing ring = ring_from(r);
  const Integer num = integer_from(field(j, "num", "scalar"), "scalar num");
  const Integer den = integer_from(field(j, "den", "scalar"), "scalar den");
  require(den > 0, ErrorKind::Validation, "scalar den must be positive");
  Rational q(num, den);
  q.canonicalize();
  return Scalar(ring, q);
}

Json to_json(const NormValue& v) {
  if (v.is_exact()) return to_json(v.lower);
  return Json{{"lower", to_json(v.lower)}, {"upper", to_json(v.upper)}};
}

NormValue norm_from(const Json& j) {
  if (!j.is_object()) {
    const Rational q = rational_from(j, "norm");
    require(q >= 0, ErrorKind::Validation, "norms are non-negative");
    return NormValue::exact(q);
  }
  const Rational lo = rational_from(field(j, "lower", "norm"), "norm lower");
  const Rational hi = rational_from(field(j, "upper", "norm"), "norm upper");
  require(lo >= 0 && lo <= hi, ErrorKind::Validation, "norm enclosure needs 0 <= lower <= upper");
  return NormValue(lo, hi);
}

Json to_json(const TailRule& rule) {
  Json j;
  switch (rule.kind) {
    case TailRule::Kind::Geometric:
      j = {{"kind", "geometric"}, {"base", to_json(rule.base)}};
      if (rule.scale != 1) j["scale"] = to_json(rule.scale);
      if (rule.from != 0) j["from"] = rule.from;
      break;
    case TailRule::Kind::Polynomial:
      j = {{"kind", "polynomial"}, {"coeffs", to_json(rule.coeffs)}};
      if (rule.from != 0) j["from"] = rule.from;
      if (rule.reciprocal) j["reciprocal"] = true;
      break;
    case TailRule::Kind::TableConst:
      j = {{"kind", "table-const"}, {"from", rule.from}, {"value", to_json(rule.value)}};
      break;
  }
  return j;
}

TailRule tail_rule_from(const Json& j) {
  const std::string kind = string_from(field(j, "kind", "tail rule"), "tail rule kind");
  const long from = has(j, "from") ? long_from(j["from"], "tail rule from") : 0;
  if (kind == "geometric") {
    const Rational scale = has(j, "scale") ? rational_from(j["scale"], "tail rule scale") : Rational(1);
    return TailRule::geometric(rational_from(field(j, "base", "tail rule"), "tail rule base"), scale, from);
  }
  if (kind == "polynomial") {
    const bool reciprocal = has(j, "reciprocal") && bool_from(j["reciprocal"], "tail rule reciprocal");
    return TailRule::polynomial(rationals_from(field(j, "coeffs", "tail rule"), "tail rule coeffs"), from, reciprocal);
  }
  if (kind == "table-const") {
    return TailRule::constant(from, rational_from(field(j, "value", "tail rule"), "tail rule value"));
  }
  fail(ErrorKind::Validation, "unknown tail rule kind \"" + kind + "\"");
}

Json to_json(const WeightFunction& w) {
  Json j{{"table", coeff_list(w.table())}};
  if (w.tail()) j["tail"] = to_json(*w.tail());
  return j;
}

WeightFunction weight_function_from(const Json& j) {
  if (j.is_string() || j.is_number()) return WeightFunction::constant(rational_from(j, "weight"));
  if (j.is_array()) return WeightFunction::from_values(rationals_from(j, "weights"));
  require(j.is_object(), ErrorKind::Validation, "weight function must be a constant, an array or an object");
  std::map<Index, Rational> table;
  if (has(j, "table")) {
    for (const auto& e : array_at(j["table"], "weight table")) {
      const Index idx = index_from(field(e, "idx", "weight table entry"), "weight index");
      require(!table.count(idx), ErrorKind::Validation, "duplicate weight index");
      table[idx] = rational_from(field(e, "val", "weight table entry"), "weight value");
    }
  }
  if (has(j, "values")) {
    const long first = has(j, "first") ? long_from(j["first"], "weights first") : 0;
    const auto values = rationals_from(j["values"], "weight values");
    for (std::size_t k = 0; k < values.size(); ++k) {
      const Index idx{first + static_cast<long>(k)};
      require(!table.count(idx), ErrorKind::Validation, "duplicate weight index");
      table[idx] = values[k];
    }
  }
  std::optional<TailRule> tail;
  if (has(j, "tail")) tail = tail_rule_from(j["tail"]);
  return WeightFunction(std::move(table), tail);
}

Json to_json(const SpaceDescriptor& d) {
  Json indices = Json::array();
  Json weights = Json::array();
  for (std::size_t k = 0; k < d.dimension(); ++k) {
    indices.push_back(index_json(d.indices[k]));
    weights.push_back(to_json(d.weight(k)));
  }
  Json j{{"ring", to_json(d.ring)},
         {"label", d.label},
         {"mode", to_string(d.mode)},
         {"indices", indices},
         {"weights", weights}};
  if (d.weights.tail()) j["tail"] = to_json(*d.weights.tail());
  return j;
}

SpaceDescriptor space_from(const Json& j) {
  require(j.is_object(), ErrorKind::Validation, "space must be an object");
  SpaceDescriptor d;
  d.ring = has(j, "ring") ? ring_from(j["ring"]) : BaseRing::rationals();
  d.label = has(j, "label") ? string_from(j["label"], "space label") : "";
  d.mode = has(j, "mode") ? norm_mode_from(j["mode"]) : NormMode::SumL1;
  const Json& w = field(j, "weights", "space");
  if (has(j, "indices")) {
    for (const auto& e : array_at(j["indices"], "space indices")) d.indices.push_back(index_from(e, "space index"));
  } else {
    require(w.is_array(), ErrorKind::Validation, "space without indices needs a weight array");
    for (std::size_t k = 0; k < w.size(); ++k) d.indices.push_back(Index{static_cast<long>(k)});
  }
  std::optional<TailRule> tail;
  if (has(j, "tail")) tail = tail_rule_from(j["tail"]);
  if (w.is_array()) {
    require(w.size() == d.indices.size(), ErrorKind::Validation, "space needs one weight per index");
    std::map<Index, Rational> table;
    for (std::size_t k = 0; k < w.size(); ++k) {
      require(!table.count(d.indices[k]), ErrorKind::Validation, "duplicate space index");
      table[d.indices[k]] = rational_from(w[k], "space weight");
    }
    // Entries the tail rule already determines are kept implicit.
    if (tail) {
      for (auto it = table.begin(); it != table.end();) {
        const bool implied = it->first.size() == 1 && it->first[0] >= tail->from;
        if (implied)
          require(tail->at(it->first[0]) == it->second, ErrorKind::Validation,
                  "space weight disagrees with its tail rule");
        it = implied ? table.erase(it) : std::next(it);
      }
    }
    d.weights = WeightFunction(std::move(table), tail);
  } else {
    require(!tail, ErrorKind::Validation, "give the tail inside the weight function");
    d.weights = weight_function_from(w);
  }
  d.validate();
  return d;
}

Json to_json(const WeightedSeqElement& v) {
  Json coeffs = Json::array();
  for (const auto& [idx, s] : v.coeffs) coeffs.push_back({{"idx", index_json(idx)}, {"val", to_json(s)}});
  return Json{
      {"coeffs", coeffs}, {"weights", to_json(v.weights)}, {"mode", to_string(v.mode)}, {"tail", to_json(v.tail)}};
}

WeightedSeqElement seq_element_from(const Json& j) {
  WeightedSeqElement v;
  const BaseRing ring = has(j, "ring") ? ring_from(j["ring"]) : BaseRing::rationals();
  for (const auto& e : array_at(field(j, "coeffs", "element"), "element coeffs")) {
    const Index idx = index_from(field(e, "idx", "element coefficient"), "element index");
    const Json& val = field(e, "val", "element coefficient");
    Scalar s = val.is_object() ? scalar_from(val) : Scalar(ring, rational_from(val, "element value"));
    require(v.coeffs.emplace(idx, s).second, ErrorKind::Validation, "duplicate element index");
  }
  v.weights = weight_function_from(field(j, "weights", "element"));
  v.mode = has(j, "mode") ? norm_mode_from(j["mode"]) : NormMode::SumL1;
  v.tail = has(j, "tail") ? norm_from(j["tail"]) : NormValue();
  return v;
}

Json to_json(const PolydiskAlgebra& a) {
  Json j{{"ring", to_json(a.ring)}, {"radii", to_json(a.radii)}, {"mode", to_string(a.mode)}};
  if (a.psi) j["psi"] = to_json(*a.psi);
  return j;
}

PolydiskAlgebra algebra_from(const Json& j) {
  const BaseRing ring = has(j, "ring") ? ring_from(j["ring"]) : BaseRing::rationals();
  const auto radii = rationals_from(field(j, "radii", "algebra"), "radii");
  const DiskMode mode = has(j, "mode") ? disk_mode_from(j["mode"]) : DiskMode::Arch;
  std::optional<WeightFunction> psi;
  if (has(j, "psi") && !j["psi"].is_null()) psi = weight_function_from(j["psi"]);
  return PolydiskAlgebra::make(ring, radii, mode, psi);
}

Json to_json(const Series& f) {
  Json j = to_json(f.algebra);
  j["coeffs"] = coeff_list(f.coeffs);
  j["tail"] = to_json(f.tail);
  return j;
}

namespace {

void read_coeffs(Series& f, const Json& j) {
  if (!has(j, "coeffs")) return;
  const Json& c = j["coeffs"];
  require(c.is_array(), ErrorKind::Validation, "series coeffs must be an array");
  const bool dense = std::all_of(c.begin(), c.end(), [](const Json& e) { return !e.is_object(); });
  if (dense) {
    require(f.algebra.arity() == 1 || c.empty(), ErrorKind::Validation, "dense coefficient lists need one variable");
    for (std::size_t k = 0; k < c.size(); ++k) f.set(Index{static_cast<long>(k)}, rational_from(c[k], "coefficient"));
    return;
  }
  std::map<Index, bool> seen;
  for (const auto& e : c) {
    const Index idx = index_from(field(e, "idx", "series coefficient"), "series index");
    require(idx.size() == f.algebra.arity(), ErrorKind::Validation, "series index has the wrong arity");
    require(std::all_of(idx.begin(), idx.end(), [](long v) { return v >= 0; }), ErrorKind::Validation,
            "series exponents must be non-negative");
    require(!seen[idx], ErrorKind::Validation, "duplicate series index");
    seen[idx] = true;
    f.set(idx, rational_from(field(e, "val", "series coefficient"), "coefficient"));
  }
}

}  // namespace

Series series_from(const Json& j) {
  require(j.is_object(), ErrorKind::Validation, "series must be an object");
  Series f(algebra_from(j));
  read_coeffs(f, j);
  if (has(j, "tail")) {
    f.tail = rational_from(j["tail"], "series tail");
    require(f.tail >= 0, ErrorKind::Validation, "series tail must be non-negative");
  }
  return f;
}

Json to_json(const SeriesFamily& v) {
  Json slots = Json::array();
  BaseRing ring = BaseRing::rationals();
  for (const auto& s : v.slots) {
    slots.push_back({{"coeffs", coeff_list(s.coeffs)}, {"tail", to_json(s.tail)}});
    ring = s.algebra.ring;
  }
  return Json{{"r", to_json(v.r)}, {"psi", to_json(v.psi)}, {"ring", to_json(ring)}, {"slots", slots}};
}

SeriesFamily family_from(const Json& j) {
  SeriesFamily v;
  v.r = rational_from(field(j, "r", "family"), "family r");
  require(v.r > 0, ErrorKind::Validation, "family radius must be positive");
  v.psi = has(j, "psi") ? weight_function_from(j["psi"]) : WeightFunction::constant(1);
  const BaseRing ring = has(j, "ring") ? ring_from(j["ring"]) : BaseRing::rationals();
  const Json& slots = array_at(field(j, "slots", "family"), "family slots");
  for (std::size_t i = 0; i < slots.size(); ++i) {
    Series s(family_slot_algebra(ring, v.r, static_cast<long>(i)));
    if (slots[i].is_array()) {
      read_coeffs(s, Json{{"coeffs", slots[i]}});
    } else {
      require(!has(slots[i], "radii"), ErrorKind::Validation, "family slots take their radius from the family");
      read_coeffs(s, slots[i]);
      if (has(slots[i], "tail")) s.tail = rational_from(slots[i]["tail"], "slot tail");
    }
    v.slots.push_back(std::move(s));
  }
  return v;
}

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(to_json(m.row(i)));
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

Matrix matrix_from(const Json& j) {
  const Json* entries = &j;
  std::size_t rows = 0, cols = 0;
  if (j.is_object()) {
    rows = static_cast<std::size_t>(long_from(field(j, "rows", "matrix"), "matrix rows"));
    cols = static_cast<std::size_t>(long_from(field(j, "cols", "matrix"), "matrix cols"));
    entries = &field(j, "entries", "matrix");
    require(entries->size() == rows, ErrorKind::Validation, "matrix has the wrong number of rows");
  } else {
    require(j.is_array() && !j.empty(), ErrorKind::Validation, "bare matrices must be non-empty arrays of rows");
    rows = j.size();
    cols = array_at(j[0], "matrix row").size();
  }
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto row = rationals_from((*entries)[i], "matrix row");
    if (row.size() != cols) fail(ErrorKind::Validation, "matrix row " + std::to_string(i) + " has the wrong length");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = row[c];
  }
  return m;
}

Json to_json(const BoundedMap& m) {
  return Json{{"domain", to_json(m.domain)},
              {"codomain", to_json(m.codomain)},
              {"action", to_string(m.action)},
              {"matrix", to_json(m.matrix)},
              {"bound", to_json(m.bound)}};
}

BoundedMap bounded_map_from(const Json& j) {
  const std::string action = has(j, "action") ? string_from(j["action"], "map action") : "column-finite";
  if (action == "composite") {
    std::vector<BoundedMap> maps;
    for (const auto& e : array_at(field(j, "maps", "map"), "map list")) maps.push_back(bounded_map_from(e));
    return BoundedMap::composite(maps);
  }
  const SpaceDescriptor domain = space_from(field(j, "domain", "map"));
  const SpaceDescriptor codomain = has(j, "codomain") ? space_from(j["codomain"]) : domain;
  if (action == "diagonal") {
    return BoundedMap::diagonal(domain, codomain, rationals_from(field(j, "entries", "map"), "map entries"));
  }
  if (action == "shift") return BoundedMap::shift(domain, codomain);
  if (action != "column-finite") fail(ErrorKind::Validation, "unknown map action \"" + action + "\"");
  return BoundedMap::column_finite(domain, codomain, matrix_from(field(j, "matrix", "map")));
}

Json to_json(const NuclearCert& c) {
  Json terms = Json::array();
  for (const auto& t : c.terms) terms.push_back({{"w", to_json(t.w)}, {"alpha", to_json(t.alpha)}});
  return Json{{"domain", to_json(c.domain)},
              {"codomain", to_json(c.codomain)},
              {"terms", terms},
              {"tail", to_json(c.tail)},
              {"L", to_json(c.L)}};
}

NuclearCert cert_from(const Json& j) {
  const SpaceDescriptor domain = space_from(field(j, "domain", "certificate"));
  const SpaceDescriptor codomain = space_from(field(j, "codomain", "certificate"));
  std::vector<CertTerm> terms;
  for (const auto& t : array_at(field(j, "terms", "certificate"), "certificate terms")) {
    terms.push_back({rationals_from(field(t, "w", "certificate term"), "term w"),
                     rationals_from(field(t, "alpha", "certificate term"), "term alpha")});
  }
  const NormValue tail = has(j, "tail") ? norm_from(j["tail"]) : NormValue();
  NuclearCert c;
  try {
    c = make_cert(domain, codomain, std::move(terms), tail);
  } catch (const Error& e) {
    fail(ErrorKind::Validation, e.what());
  }
  if (has(j, "L")) {
    if (!(norm_from(j["L"]) == c.L))
      fail(ErrorKind::Validation, "certificate L disagrees with its terms (recomputed " + to_json(c.L).dump() + ")");
  }
  return c;
}

Json to_json(const SeriesVerdict& v) {
  return Json{{"verdict", to_string(v.verdict)},
              {"partial", to_json(v.partial)},
              {"enclosure", to_json(v.enclosure)},
              {"reason", v.reason}};
}

Json to_json(const ChainComplex& k) {
  Json diffs = Json::array();
  for (const auto& d : k.differentials) diffs.push_back(to_json(d));
  return Json{{"min_degree", k.min_degree}, {"dims", k.dims}, {"differentials", diffs}, {"labels", k.labels}};
}

ChainComplex complex_from(const Json& j) {
  ChainComplex k;
  k.min_degree = static_cast<int>(has(j, "min_degree") ? long_from(j["min_degree"], "min_degree") : 0);
  for (const auto& d : array_at(field(j, "dims", "complex"), "dims"))
    k.dims.push_back(static_cast<std::size_t>(long_from(d, "dim")));
  for (const auto& d : array_at(field(j, "differentials", "complex"), "differentials"))
    k.differentials.push_back(matrix_from(d));
  if (has(j, "labels")) {
    for (const auto& row : array_at(j["labels"], "labels")) {
      std::vector<std::string> labels;
      for (const auto& l : array_at(row, "labels")) labels.push_back(string_from(l, "label"));
      k.labels.push_back(std::move(labels));
    }
  }
  k.validate_shapes();
  return k;
}

FiniteDiagram diagram_from(const Json& j) {
  std::vector<std::string> labels;
  std::vector<SpaceDescriptor> spaces;
  std::map<std::string, std::size_t> position;
  for (const auto& o : array_at(field(j, "objects", "diagram"), "diagram objects")) {
    labels.push_back(string_from(field(o, "label", "object"), "object label"));
    if (!position.emplace(labels.back(), labels.size() - 1).second)
      fail(ErrorKind::Validation, "duplicate object label \"" + labels.back() + "\"");
    spaces.push_back(space_from(field(o, "space", "object")));
  }
  std::vector<Arrow> arrows;
  if (has(j, "arrows")) {
    for (const auto& a : array_at(j["arrows"], "diagram arrows")) {
      const std::string from = string_from(field(a, "from", "arrow"), "arrow from");
      const std::string to = string_from(field(a, "to", "arrow"), "arrow to");
      if (!(position.count(from) && position.count(to)))
        fail(ErrorKind::Validation, "arrow " + from + " -> " + to + " names an unknown object");
      arrows.push_back({position[from], position[to], matrix_from(field(a, "matrix", "arrow"))});
    }
  }
  return FiniteDiagram::from_generators(std::move(labels), std::move(spaces), arrows);
}

TowerDiagram tower_from(const Json& j) {
  TowerDiagram t;
  for (const auto& s : array_at(field(j, "spaces", "tower"), "tower spaces")) t.spaces.push_back(space_from(s));
  for (const auto& m : array_at(field(j, "maps", "tower"), "tower maps")) t.maps.push_back(matrix_from(m));
  t.validate();
  return t;
}

CoverSpec cover_from(const Json& j) {
  if (has(j, "identity")) {
    const Json& o = j["identity"];
    return identity_cover(
        static_cast<std::size_t>(long_from(field(o, "base_dim", "identity cover"), "base_dim")),
        static_cast<std::size_t>(long_from(field(o, "cover_size", "identity cover"), "cover_size")),
        has(o, "module_rank") ? static_cast<std::size_t>(long_from(o["module_rank"], "module_rank")) : 1,
        has(o, "ordered") && bool_from(o["ordered"], "ordered"),
        has(o, "max_length") ? static_cast<std::size_t>(long_from(o["max_length"], "max_length")) : 4);
  }
  if (has(j, "localization")) {
    const Json& o = j["localization"];
    const long exponent = has(o, "exponent") ? long_from(o["exponent"], "exponent") : 5;
    require(exponent >= 1, ErrorKind::Validation, "exponent must be at least 1");
    const auto cover = LocalizationCover::make(integers_from(field(o, "primes", "localization cover"), "primes"),
                                               static_cast<unsigned>(exponent));
    return cover.spec(has(o, "module_rank") ? static_cast<std::size_t>(long_from(o["module_rank"], "module_rank")) : 1);
  }
  CoverSpec c;
  c.cover_size = static_cast<std::size_t>(long_from(field(j, "cover_size", "cover"), "cover_size"));
  c.module_rank = has(j, "module_rank") ? static_cast<std::size_t>(long_from(j["module_rank"], "module_rank")) : 1;
  c.ordered = has(j, "ordered") && bool_from(j["ordered"], "ordered");
  c.dims[{}] = static_cast<std::size_t>(long_from(field(j, "base_dim", "cover"), "base_dim"));
  for (const auto& t : array_at(field(j, "tuples", "cover"), "cover tuples")) {
    std::vector<std::size_t> w;
    for (const auto& e : array_at(field(t, "tuple", "cover tuple"), "tuple")) {
      const long v = long_from(e, "tuple entry");
      require(v >= 0 && static_cast<std::size_t>(v) < c.cover_size, ErrorKind::Validation, "tuple entry out of range");
      w.push_back(static_cast<std::size_t>(v));
    }
    require(!w.empty(), ErrorKind::Validation, "the base algebra is given by base_dim");
    c.dims[w] = static_cast<std::size_t>(long_from(field(t, "dim", "cover tuple"), "dim"));
    const Json& faces = array_at(field(t, "faces", "cover tuple"), "faces");
    require(faces.size() == w.size(), ErrorKind::Validation, "one face map per tuple position");
    for (std::size_t l = 0; l < w.size(); ++l) c.faces[{w, l}] = matrix_from(faces[l]);
  }
  return c;
}

Position position_of(const std::string& text, std::size_t byte) {
  Position p;
  p.byte = byte;
  // byte is 1-based and names the offending character.
  const std::size_t end = std::min(byte, text.size() + 1);
  for (std::size_t k = 0; k + 1 < end; ++k) {
    if (text[k] == '\n') {
      ++p.line;
      p.column = 1;
    } else {
      ++p.column;
    }
  }
  return p;
}

Json error_document(ErrorKind kind, const std::string& message, const std::optional<Position>& position) {
  Json e{{"kind", to_string(kind)}, {"message", message}};
  if (position) e["position"] = {{"byte", position->byte}, {"line", position->line}, {"column", position->column}};
  return Json{{"error", e}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace banarith::io
