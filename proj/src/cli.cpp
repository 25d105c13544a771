#include "banarith/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "acceptance.hpp"
#include "banarith/padic.hpp"

namespace banarith::cli {

using io::Json;

namespace {

constexpr std::uint64_t kDefaultSeed = 1;

bool has(const Json& d, const char* key) { return d.contains(key); }

Rational rat(const Json& d, const char* key) { return io::rational_from(d.at(key), key); }
Integer integer(const Json& d, const char* key) { return io::integer_from(d.at(key), key); }
long whole(const Json& d, const char* key) { return io::long_from(d.at(key), key); }
std::vector<Rational> rats(const Json& d, const char* key) { return io::rationals_from(d.at(key), key); }

long whole_or(const Json& d, const char* key, long fallback) { return has(d, key) ? whole(d, key) : fallback; }

bool flag(const Json& d, const char* key) {
  if (!has(d, key)) return false;
  if (!d.at(key).is_boolean()) fail(ErrorKind::Validation, std::string(key) + " must be a boolean");
  return d.at(key).get<bool>();
}

std::string text(const Json& d, const char* key, const std::string& fallback) {
  if (!has(d, key)) return fallback;
  if (!d.at(key).is_string()) fail(ErrorKind::Validation, std::string(key) + " must be a string");
  return d.at(key).get<std::string>();
}

unsigned long positive(long v, const char* what) {
  if (v < 0) fail(ErrorKind::Validation, std::string(what) + " must be non-negative");
  return static_cast<unsigned long>(v);
}

Json integers_json(const std::vector<Integer>& v) {
  Json a = Json::array();
  for (const auto& n : v) a.push_back(io::to_json(n));
  return a;
}

PadicPresentation presentation(const Json& d) {
  return PadicPresentation::make(integer(d, "p"), rat(d, "r"), whole_or(d, "working_degree", 16));
}

Json l1_json(const L1Decomposition& x) {
  return Json{{"through", "l1"},         {"middle", io::to_json(x.middle)}, {"p", io::to_json(x.p)},
              {"c", io::to_json(x.c)},   {"reassembles", x.reassembles},    {"c_non_expanding", x.c_non_expanding},
              {"p_bounded", x.p_bounded}};
}

Json linf_json(const LinfDecomposition& x) {
  return Json{{"through", "linf"},
              {"middle", io::to_json(x.middle)},
              {"c", io::to_json(x.c)},
              {"p", io::to_json(x.p)},
              {"reassembles", x.reassembles},
              {"c_non_expanding", x.c_non_expanding},
              {"weights_consistent", x.weights_consistent}};
}

Json cohomology_table(const ChainComplex& k, int first, int last) {
  Json rows = Json::array();
  for (int deg = first; deg <= last; ++deg) {
    const Cohomology h = truncated_cohomology(k, deg);
    rows.push_back(
        {{"degree", deg}, {"dimension", h.dimension}, {"kernel_dim", h.kernel_dim}, {"image_dim", h.image_dim}});
  }
  return rows;
}

Json d_squared_json(const ChainComplex& k) {
  int failing = 0;
  const bool ok = k.d_squared_zero(&failing);
  Json j{{"d_squared_zero", ok}};
  if (!ok) j["failing_degree"] = failing;
  return j;
}

// Series inputs for padic division: a full series or a dense coefficient list over Z{x/r}.
Series dividend(const Json& b, const PadicPresentation& pres) {
  if (b.is_array()) return Series::from_dense(pres.algebra(), io::rationals_from(b, "b"));
  Json full = b;
  if (!full.contains("radii")) full["radii"] = Json::array({io::to_json(pres.r)});
  if (!full.contains("ring")) full["ring"] = "integers";
  return io::series_from(full);
}

using Handler = std::function<Json(const Json&, const Context&)>;

struct Entry {
  SubcommandInfo info;
  Handler handler;
  std::function<std::string(const Json&)> text;  // table rendering for --format text
  bool reports_pass = false;                     // "passed": false maps to kExitCheckFailed
};

std::string acceptance_text(const Json& doc) {
  std::ostringstream out;
  for (const auto& c : doc.at("criteria")) {
    out << (c.at("passed").get<bool>() ? "PASS" : "FAIL") << "  " << c.at("id").get<int>() << "  "
        << c.at("name").get<std::string>() << "  " << c.at("detail").get<std::string>() << "\n";
  }
  out << (doc.at("passed").get<bool>() ? "all criteria passed" : "some criteria failed") << "\n";
  return out.str();
}

std::string replay_text(const Json& doc) {
  std::ostringstream out;
  for (const auto& w : doc.at("warnings")) out << "warning: " << w.get<std::string>() << "\n";
  for (const auto& e : doc.at("entries")) {
    out << (e.at("passed").get<bool>() ? "PASS" : "FAIL") << "  " << e.at("name").get<std::string>();
    if (!e.at("reason").get<std::string>().empty()) out << "  " << e.at("reason").get<std::string>();
    out << "\n";
  }
  out << (doc.at("passed").get<bool>() ? "corpus replay passed" : "corpus replay failed") << "\n";
  return out.str();
}

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = [] {
    std::vector<Entry> t;
    auto add = [&t](SubcommandInfo info, Handler h) { t.push_back({std::move(info), std::move(h), nullptr, false}); };

    // scalars
    add({"scalar norm", {"norm"}, {"scalar"}, {}, "", false, false, "norm of a scalar"},
        [](const Json& d, const Context&) {
          return Json{{"norm", io::to_json(norm(io::scalar_from(d.at("scalar"))))}};
        });
    add({"scalar scale", {"scale_norm"}, {"norm", "r"}, {}, "", false, false, "norm in the rescaled module M_r"},
        [](const Json& d, const Context&) {
          const Rational r = rat(d, "r");
          require(r > 0, ErrorKind::Domain, "scale factor must be positive");
          return Json{{"norm", io::to_json(scale_norm(io::norm_from(d.at("norm")), r))}};
        });
    add({"scalar axioms",
         {"check_ring_axioms"},
         {"ring", "samples"},
         {},
         "",
         false,
         false,
         "norm axioms on a sample grid"},
        [](const Json& d, const Context&) {
          const BaseRing ring = io::ring_from(d.at("ring"));
          std::vector<Scalar> samples;
          for (const auto& s : d.at("samples")) {
            samples.push_back(s.is_object() ? io::scalar_from(s) : Scalar(ring, io::rational_from(s, "sample")));
            require(samples.back().ring() == ring, ErrorKind::Validation, "sample from a different ring");
          }
          const AxiomReport rep = check_ring_axioms(ring, samples);
          Json checks = Json::array();
          for (const auto& c : rep.checks) {
            Json j{{"axiom", c.axiom}, {"applicable", c.applicable}, {"passed", c.passed}, {"detail", c.detail}};
            if (c.witness_a) {
              j["witness"] = Json::array({io::to_json(*c.witness_a)});
              if (c.witness_b) j["witness"].push_back(io::to_json(*c.witness_b));
            }
            checks.push_back(j);
          }
          return Json{{"ring", io::to_json(ring)}, {"all_passed", rep.all_passed()}, {"checks", checks}};
        });

    // spaces
    add({"space seq-norm", {"seq_norm"}, {"element"}, {}, "", false, false, "norm of a weighted sequence element"},
        [](const Json& d, const Context&) {
          return Json{{"norm", io::to_json(seq_norm(io::seq_element_from(d.at("element"))))}};
        });
    add({"space dual", {"dual_descriptor"}, {"space"}, {}, "", false, false, "weight-reciprocal dual"},
        [](const Json& d, const Context&) {
          return Json{{"space", io::to_json(dual_descriptor(io::space_from(d.at("space"))))}};
        });
    add({"space tensor", {"tensor_l1"}, {"a", "b"}, {}, "", false, false, "completed l1 tensor product"},
        [](const Json& d, const Context&) {
          return Json{{"space", io::to_json(tensor_l1(io::space_from(d.at("a")), io::space_from(d.at("b"))))}};
        });
    add({"space sym", {"sym_power"}, {"space", "n"}, {}, "", false, false, "symmetric power"},
        [](const Json& d, const Context&) {
          return Json{{"space", io::to_json(sym_power(io::space_from(d.at("space")),
                                                      static_cast<unsigned>(positive(whole(d, "n"), "n"))))}};
        });
    add({"space dominate", {"dominate_weights"}, {"weights"}, {}, "horizon", false, false, "dominating weight"},
        [](const Json& d, const Context&) {
          std::vector<WeightFunction> list;
          require(d.at("weights").is_array(), ErrorKind::Validation, "weights must be an array");
          for (const auto& w : d.at("weights")) list.push_back(io::weight_function_from(w));
          const long horizon = whole_or(d, "horizon", 64);
          require(horizon >= 1, ErrorKind::Validation, "horizon must be positive");
          return Json{{"alpha", io::to_json(dominate_weights(list, horizon))}};
        });
    add({"space interchange",
         {"interchange_maps"},
         {"r_s", "phi2"},
         {"base_norms"},
         "",
         false,
         false,
         "interchange maps on a finite grid"},
        [](const Json& d, const Context&) {
          std::vector<std::vector<Rational>> base;
          if (has(d, "base_norms")) {
            require(d.at("base_norms").is_array(), ErrorKind::Validation, "base_norms must be an array");
            for (const auto& row : d.at("base_norms")) base.push_back(io::rationals_from(row, "base_norms"));
          }
          const InterchangeReport r = interchange_maps(rats(d, "r_s"), base, io::weight_function_from(d.at("phi2")));
          return Json{{"phi2", io::to_json(r.phi2)},
                      {"phi2_doubled", io::to_json(r.phi2_doubled)},
                      {"iota_norm", io::to_json(r.iota_norm)},
                      {"pi_norm", io::to_json(r.pi_norm)},
                      {"pi_bound", io::to_json(r.pi_bound)},
                      {"f_norm", io::to_json(r.f_norm)},
                      {"g_norm", io::to_json(r.g_norm)},
                      {"iota_after_pi_is_g", r.iota_after_pi_is_g},
                      {"pi_after_iota_is_f", r.pi_after_iota_is_f},
                      {"iota_natural", r.iota_natural},
                      {"pi_natural", r.pi_natural},
                      {"all_hold", r.all_hold()}};
        });
    add({"space kernel",
         {"kernel_of_coproduct_map"},
         {"maps"},
         {},
         "",
         false,
         false,
         "kernel of a coproduct of diagonal maps"},
        [](const Json& d, const Context&) {
          std::vector<DiagonalMap> maps;
          require(d.at("maps").is_array(), ErrorKind::Validation, "maps must be an array");
          for (const auto& m : d.at("maps")) {
            require(m.is_object() && m.contains("domain") && m.contains("entries"), ErrorKind::Validation,
                    "each map needs domain and entries");
            maps.push_back({io::space_from(m.at("domain")), io::rationals_from(m.at("entries"), "entries")});
          }
          const CoproductKernel k = kernel_of_coproduct_map(maps);
          return Json{{"kernel", io::to_json(k.kernel)}, {"basis", io::to_json(k.basis)}, {"agrees", k.agrees}};
        });

    // disks
    add({"norm",
         {"series_norm"},
         {},
         {"series", "radii", "mode", "coeffs", "tail", "psi", "ring"},
         "",
         false,
         false,
         "norm of a series (the document itself or its \"series\" field)"},
        [](const Json& d, const Context&) {
          const Json& s = has(d, "series") ? d.at("series") : d;
          require(!has(d, "series") || d.size() == 1, ErrorKind::Validation,
                  "give either a series or a \"series\" field");
          return Json{{"norm", io::to_json(series_norm(io::series_from(s)))}};
        });
    add({"disk mul", {"mul"}, {"f", "g"}, {}, "max_degree", false, false, "product with tail propagation"},
        [](const Json& d, const Context&) {
          const Series f = io::series_from(d.at("f")), g = io::series_from(d.at("g"));
          std::optional<long> cap;
          if (has(d, "max_degree")) cap = whole(d, "max_degree");
          const Series fg = mul(f, g, cap);
          const Rational bound = f.algebra.ring.submult_constant * series_norm(f).upper * series_norm(g).upper;
          return Json{{"product", io::to_json(fg)},
                      {"norm", io::to_json(series_norm(fg))},
                      {"bound", io::to_json(bound)},
                      {"submultiplicative", series_norm(fg).upper <= bound}};
        });
    add({"disk restrict", {"restrict"}, {"series", "radii"}, {}, "", false, false, "restriction to smaller radii"},
        [](const Json& d, const Context&) {
          const Series g = restrict(io::series_from(d.at("series")), rats(d, "radii"));
          return Json{{"series", io::to_json(g)}, {"norm", io::to_json(series_norm(g))}};
        });
    add({"disk delta", {"delta_map"}, {"series"}, {"E"}, "", false, false, "the map delta into the family coproduct"},
        [](const Json& d, const Context&) {
          const Series f = io::series_from(d.at("series"));
          require(f.algebra.arity() == 1, ErrorKind::Domain, "delta needs one variable");
          const Rational E = has(d, "E") ? rat(d, "E") : exp_upper_bound(1 / f.algebra.radii[0]);
          const DeltaResult r = delta_map(f, E);
          return Json{{"family", io::to_json(r.family)},           {"family_norm", io::to_json(r.family_norm)},
                      {"source_norm", io::to_json(r.source_norm)}, {"constant", io::to_json(r.constant)},
                      {"required", io::to_json(r.required)},       {"bound_holds", r.bound_holds}};
        });
    add({"disk sigma", {"sigma_map"}, {"family"}, {"target"}, "", false, false, "summation of a family"},
        [](const Json& d, const Context&) {
          const SeriesFamily v = io::family_from(d.at("family"));
          PolydiskAlgebra target =
              has(d, "target")
                  ? io::algebra_from(d.at("target"))
                  : PolydiskAlgebra::make(v.slots.empty() ? BaseRing::rationals() : v.slots[0].algebra.ring, {v.r});
          const SigmaResult r = sigma_map(v, target);
          return Json{{"series", io::to_json(r.value)},
                      {"source_norm", io::to_json(r.source_norm)},
                      {"target_norm", io::to_json(r.target_norm)},
                      {"non_expanding", r.non_expanding}};
        });
    add({"disk shift", {"id_minus_shift"}, {"family"}, {}, "", false, false, "the map id - s on a family"},
        [](const Json& d, const Context&) {
          return Json{{"family", io::to_json(id_minus_shift(io::family_from(d.at("family"))))}};
        });
    add({"disk pair", {"pairing"}, {"f", "g", "rho", "r"}, {}, "", false, false, "dagger/open-disk pairing estimate"},
        [](const Json& d, const Context&) {
          const PairingReport p =
              pairing(io::series_from(d.at("f")), io::series_from(d.at("g")), rats(d, "rho"), rats(d, "r"));
          return Json{{"value", io::to_json(p.value)},
                      {"left", io::to_json(p.left)},
                      {"right", io::to_json(p.right)},
                      {"bound", io::to_json(p.bound)},
                      {"holds", p.holds}};
        });
    add({"disk compare", {"compare_norms"}, {"series", "s", "t"}, {}, "", false, false, "l1 at s against sup at t"},
        [](const Json& d, const Context&) {
          const ComparisonReport c = compare_norms(io::series_from(d.at("series")), rats(d, "s"), rats(d, "t"));
          return Json{{"l1_at_s", io::to_json(c.l1_at_s)},
                      {"sup_at_t", io::to_json(c.sup_at_t)},
                      {"factor", io::to_json(c.factor)},
                      {"rhs", io::to_json(c.rhs)},
                      {"holds", c.holds}};
        });

    // padic
    add({"padic divide",
         {"divide_by_x_minus_p"},
         {"p", "r", "b"},
         {"working_degree"},
         "",
         false,
         false,
         "division by x - p"},
        [](const Json& d, const Context&) {
          const PadicPresentation pres = presentation(d);
          const DivisionResult r = divide_by_x_minus_p(dividend(d.at("b"), pres), pres);
          return Json{{"quotient", io::to_json(r.quotient)},
                      {"quotient_norm", io::to_json(r.quotient_norm)},
                      {"dividend_norm", io::to_json(r.dividend_norm)},
                      {"bound", io::to_json(r.bound)},
                      {"bound_holds", r.bound_holds},
                      {"remultiplies", r.remultiplies}};
        });
    add({"padic expand", {"padic_expand"}, {"n", "p", "r"}, {}, "", false, false, "p-adic expansion and lift bound"},
        [](const Json& d, const Context&) {
          const PadicExpansion e = padic_expand(integer(d, "n"), presentation(d));
          return Json{{"digits", e.digits},
                      {"shift", e.shift},
                      {"negative", e.negative},
                      {"norm", io::to_json(e.norm)},
                      {"lift", integers_json(canonical_lift(e))},
                      {"lift_norm", io::to_json(e.lift_norm)},
                      {"lift_bound", io::to_json(e.lift_bound)},
                      {"bound_holds", e.bound_holds}};
        });
    add({"padic qnorm",
         {"quotient_norm_bounds"},
         {"n", "p", "r"},
         {},
         "search_degree",
         false,
         false,
         "quotient norm enclosure"},
        [](const Json& d, const Context&) {
          const QuotientNormReport q =
              quotient_norm_bounds(integer(d, "n"), presentation(d), whole_or(d, "search_degree", 8));
          return Json{{"bounds", io::to_json(q.bounds)},
                      {"best_lift", integers_json(q.best_lift)},
                      {"expansion_bound", io::to_json(q.expansion_bound)}};
        });
    add({"padic bezout",
         {"bezout_orthogonality"},
         {"p", "q", "n"},
         {},
         "",
         false,
         false,
         "Bezout orthogonality witness"},
        [](const Json& d, const Context&) {
          const BezoutWitness w = bezout_orthogonality(integer(d, "p"), integer(d, "q"), positive(whole(d, "n"), "n"));
          return Json{{"a", io::to_json(w.a)},
                      {"b", io::to_json(w.b)},
                      {"bound", io::to_json(w.bound)},
                      {"verified", w.verified}};
        });
    add({"padic tensor-norm",
         {"zp_tensor_norm"},
         {"p", "r1", "r2"},
         {},
         "",
         false,
         false,
         "norm on a tensor of scaled p-adics"},
        [](const Json& d, const Context&) {
          return Json{{"ring", io::to_json(zp_tensor_norm(integer(d, "p"), rat(d, "r1"), rat(d, "r2")))}};
        });
    add({"padic s1", {"s1_kernel_element_norm"}, {"p"}, {}, "N", false, false, "the circle example"},
        [](const Json& d, const Context&) {
          const S1Report s = s1_kernel_element_norm(integer(d, "p"), whole_or(d, "N", 16));
          return Json{{"partial", io::to_json(s.partial)},
                      {"enclosure", io::to_json(s.enclosure)},
                      {"limit", io::to_json(s.limit)},
                      {"alternate_value", io::to_json(s.alternate_value)},
                      {"discrepancy", s.discrepancy},
                      {"annihilated", s.annihilated},
                      {"boundary_norm", io::to_json(s.boundary_norm)}};
        });

    // nuclear
    add({"nuclear check-diag",
         {"nuclear_norm_diagonal"},
         {"entries", "tau", "rho"},
         {"rule"},
         "N",
         false,
         false,
         "nuclear norm of a diagonal restriction"},
        [](const Json& d, const Context&) {
          std::optional<TailRule> rule;
          if (has(d, "rule")) rule = io::tail_rule_from(d.at("rule"));
          return Json{{"result", io::to_json(nuclear_norm_diagonal(rats(d, "entries"), rule, rat(d, "tau"),
                                                                   rat(d, "rho"), whole_or(d, "N", 64)))}};
        });
    add({"nuclear cert", {"build_cert"}, {"map"}, {}, "", false, false, "certificate of a column-finite map"},
        [](const Json& d, const Context&) {
          const BoundedMap m = io::bounded_map_from(d.at("map"));
          const NuclearCert c = build_cert(m);
          return Json{{"cert", io::to_json(c)}, {"reproduces", reproduces(c, m.matrix)}};
        });
    add({"nuclear decompose",
         {"decompose_through_l1", "decompose_through_linf"},
         {"cert"},
         {"through"},
         "",
         false,
         false,
         "factorization through an l1 coproduct or l-infinity product"},
        [](const Json& d, const Context&) {
          const NuclearCert c = io::cert_from(d.at("cert"));
          const std::string through = text(d, "through", "l1");
          if (through == "l1") return l1_json(decompose_through_l1(c));
          require(through == "linf", ErrorKind::Validation, "through must be \"l1\" or \"linf\"");
          return linf_json(decompose_through_linf(c));
        });
    add({"nuclear compose",
         {"compose_cert"},
         {"cert", "map", "side"},
         {},
         "",
         false,
         false,
         "pre- or post-composition of a certificate"},
        [](const Json& d, const Context&) {
          const std::string side = text(d, "side", "");
          require(side == "pre" || side == "post", ErrorKind::Validation, "side must be \"pre\" or \"post\"");
          const CertComposition c = compose_cert(io::cert_from(d.at("cert")), io::bounded_map_from(d.at("map")),
                                                 side == "pre" ? Side::Pre : Side::Post);
          return Json{{"cert", io::to_json(c.cert)}, {"bound", io::to_json(c.bound)}, {"bound_holds", c.bound_holds}};
        });
    add({"nuclear tensor", {"tensor_cert"}, {"a", "b"}, {}, "", false, false, "tensor product of certificates"},
        [](const Json& d, const Context&) {
          const CertTensor c = tensor_cert(io::cert_from(d.at("a")), io::cert_from(d.at("b")));
          return Json{{"cert", io::to_json(c.cert)}, {"bound", io::to_json(c.bound)}, {"bound_holds", c.bound_holds}};
        });
    add({"nuclear psi-phi",
         {"psi_phi_nuclear"},
         {"psi", "phi", "r"},
         {},
         "N",
         false,
         false,
         "nuclearity of R{x/r}^psi -> R{x/r}^phi"},
        [](const Json& d, const Context&) {
          const PsiPhiResult r =
              psi_phi_nuclear(io::weight_function_from(d.at("psi")), io::weight_function_from(d.at("phi")), rat(d, "r"),
                              whole_or(d, "N", 64));
          Json j{{"result", io::to_json(r.series)}};
          if (r.cert) j["cert"] = io::to_json(*r.cert);
          return j;
        });
    add({"nuclear restriction",
         {"restriction_cert"},
         {"algebra", "rho"},
         {},
         "N",
         false,
         false,
         "certificate of a disk restriction"},
        [](const Json& d, const Context&) {
          return Json{{"cert", io::to_json(restriction_cert(io::algebra_from(d.at("algebra")), rats(d, "rho"),
                                                            whole_or(d, "N", 8)))}};
        });
    add({"nuclear family",
         {"transition_certs"},
         {"members"},
         {"direction"},
         "N",
         false,
         false,
         "certificates for the transition maps of a radius family"},
        [](const Json& d, const Context&) {
          RadiusFamily fam;
          require(d.at("members").is_array(), ErrorKind::Validation, "members must be an array");
          for (const auto& m : d.at("members")) fam.members.push_back(io::algebra_from(m));
          const std::string dir = text(d, "direction", "decreasing");
          require(dir == "increasing" || dir == "decreasing", ErrorKind::Validation,
                  "direction must be \"increasing\" or \"decreasing\"");
          fam.direction = dir == "increasing" ? RadiusDirection::Increasing : RadiusDirection::Decreasing;
          Json certs = Json::array();
          for (const auto& c : transition_certs(fam, whole_or(d, "N", 8))) certs.push_back(io::to_json(c));
          return Json{{"certs", certs}};
        });

    // homology
    add({"roos build",
         {"roos_complex"},
         {"diagram"},
         {"reduced"},
         "max_chain_len",
         false,
         false,
         "Roos complex of a diagram"},
        [](const Json& d, const Context&) {
          const FiniteDiagram D = io::diagram_from(d.at("diagram"));
          const long len = whole_or(d, "max_chain_len", 2);
          require(len >= 1, ErrorKind::Validation, "max_chain_len must be at least 1");
          return Json{{"complex", io::to_json(roos_complex(D, static_cast<std::size_t>(len), flag(d, "reduced")))}};
        });
    add({"roos check",
         {},
         {"diagram"},
         {"reduced"},
         "max_chain_len",
         false,
         false,
         "functoriality, non-expansion, d^2 = 0 and cohomology of a Roos complex"},
        [](const Json& d, const Context&) {
          const FiniteDiagram D = io::diagram_from(d.at("diagram"));
          const long len = whole_or(d, "max_chain_len", 2);
          require(len >= 1, ErrorKind::Validation, "max_chain_len must be at least 1");
          const ChainComplex k = roos_complex(D, static_cast<std::size_t>(len), flag(d, "reduced"));
          Json j = d_squared_json(k);
          j["functorial"] = true;
          j["non_expanding"] = D.non_expanding();
          j["cohomology"] = cohomology_table(k, 0, static_cast<int>(len) - 1);
          return j;
        });
    add({"cech build", {"cech_complex"}, {"cover"}, {}, "max_degree", false, false, "augmented Cech complex"},
        [](const Json& d, const Context&) {
          const long deg = whole_or(d, "max_degree", 2);
          require(deg >= 0, ErrorKind::Validation, "max_degree must be non-negative");
          return Json{
              {"complex", io::to_json(cech_complex(io::cover_from(d.at("cover")), static_cast<std::size_t>(deg)))}};
        });
    add({"cech check", {}, {"cover"}, {}, "max_degree", false, false, "simplicial identities, d^2 = 0 and cohomology"},
        [](const Json& d, const Context&) {
          const long deg = whole_or(d, "max_degree", 2);
          require(deg >= 0, ErrorKind::Validation, "max_degree must be non-negative");
          const ChainComplex k = cech_complex(io::cover_from(d.at("cover")), static_cast<std::size_t>(deg));
          Json j = d_squared_json(k);
          j["simplicial"] = true;
          j["cohomology"] = cohomology_table(k, -1, static_cast<int>(deg) - 1);
          return j;
        });
    add({"tower lim", {"limit_via_shift"}, {"tower"}, {"psi"}, "", false, false, "limit of a tower as ker(id - s)"},
        [](const Json& d, const Context&) {
          const WeightFunction psi =
              has(d, "psi") ? io::weight_function_from(d.at("psi")) : WeightFunction::constant(1);
          const ShiftLimit l = limit_via_shift(io::tower_from(d.at("tower")), psi);
          return Json{{"id_minus_s", io::to_json(l.id_minus_s)},
                      {"kernel", io::to_json(l.kernel)},
                      {"dimension", l.kernel.cols()},
                      {"component_bounds", io::to_json(l.component_bounds)},
                      {"weights_ok", l.weights_ok}};
        });
    add({"cohomology",
         {"truncated_cohomology"},
         {"complex", "degree"},
         {},
         "",
         false,
         false,
         "cohomology of a complex over Q"},
        [](const Json& d, const Context&) {
          const ChainComplex k = io::complex_from(d.at("complex"));
          int failing = 0;
          if (!k.d_squared_zero(&failing))
            fail(ErrorKind::Validation, "d o d != 0 at degree " + std::to_string(failing));
          const Cohomology h = truncated_cohomology(k, static_cast<int>(whole(d, "degree")));
          return Json{{"dimension", h.dimension},
                      {"kernel_dim", h.kernel_dim},
                      {"image_dim", h.image_dim},
                      {"basis", io::to_json(h.basis)}};
        });
    add({"split check",
         {"split_check"},
         {"r"},
         {"psi", "E", "samples"},
         "max_degree",
         true,
         false,
         "splitting identities and dual weights"},
        [](const Json& d, const Context& ctx) {
          const Rational r = rat(d, "r");
          require(r > 0, ErrorKind::Domain, "radius must be positive");
          const WeightFunction psi =
              has(d, "psi") ? io::weight_function_from(d.at("psi")) : WeightFunction::constant(1);
          const Rational E = has(d, "E") ? rat(d, "E") : exp_upper_bound(1 / r);
          const SplitReport s =
              split_check(r, psi, whole_or(d, "max_degree", 50), E, positive(whole_or(d, "samples", 20), "samples"),
                          ctx.seed.value_or(kDefaultSeed));
          return Json{{"sigma_delta", s.sigma_delta},   {"sigma_shift", s.sigma_shift}, {"delta_bound", s.delta_bound},
                      {"dual_weights", s.dual_weights}, {"witness", s.witness},         {"checked", s.checked},
                      {"all_hold", s.all_hold()}};
        });

    // orchestration
    t.push_back({{"corpus replay",
                  {"corpus_replay"},
                  {},
                  {"directory"},
                  "",
                  false,
                  false,
                  "replay the example corpus (default: $BANARITH_CORPUS)"},
                 [](const Json& d, const Context&) {
                   std::string dir = text(d, "directory", "");
                   if (dir.empty()) {
                     const char* env = std::getenv("BANARITH_CORPUS");
                     require(env && *env, ErrorKind::Validation,
                             "no corpus directory given and BANARITH_CORPUS is unset");
                     dir = env;
                   }
                   return to_json(corpus_replay(dir));
                 },
                 replay_text,
                 true});
    t.push_back({{"suite acceptance", {"acceptance_suite"}, {}, {}, "", true, false, "run the acceptance criteria"},
                 [](const Json&, const Context& ctx) {
                   Json rows = Json::array();
                   bool all = true;
                   for (const auto& r : acceptance::run_all(ctx.seed.value_or(kDefaultSeed))) {
                     rows.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed()}, {"detail", r.detail}});
                     all = all && r.passed();
                   }
                   return Json{{"criteria", rows}, {"passed", all}};
                 },
                 acceptance_text,
                 true});
    return t;
  }();
  return table;
}

const Entry* find_entry(const std::string& name) {
  for (const auto& e : entries())
    if (e.info.name == name) return &e;
  return nullptr;
}

RunResult error_result(ErrorKind kind, const std::string& message,
                       const std::optional<io::Position>& pos = std::nullopt) {
  return {kind == ErrorKind::Internal ? kExitInternal : kExitValidation,
          io::dump(io::error_document(kind, message, pos))};
}

void check_schema(const SubcommandInfo& info, const Json& doc) {
  std::set<std::string> allowed(info.required.begin(), info.required.end());
  allowed.insert(info.optional.begin(), info.optional.end());
  if (!info.truncation_field.empty()) allowed.insert(info.truncation_field);
  for (const auto& key : info.required)
    if (!doc.contains(key)) fail(ErrorKind::Validation, info.name + ": missing field \"" + key + "\"");
  if (info.accepts_any_field) return;
  for (const auto& [key, value] : doc.items())
    if (!allowed.count(key)) fail(ErrorKind::Validation, info.name + ": unknown field \"" + key + "\"");
}

RunResult dispatch(const Entry& entry, const JobSpec& job) {
  require(job.format == "json" || job.format == "text", ErrorKind::Validation, "format must be \"json\" or \"text\"");
  if (job.format != "json" && !entry.text) fail(ErrorKind::Validation, entry.info.name + " only emits json");
  Json doc;
  const bool blank =
      std::all_of(job.input_text.begin(), job.input_text.end(), [](unsigned char c) { return std::isspace(c); });
  if (blank) {
    doc = Json::object();
  } else {
    try {
      doc = Json::parse(job.input_text);
    } catch (const Json::parse_error& e) {
      return error_result(ErrorKind::Validation, std::string("malformed JSON: ") + e.what(),
                          io::position_of(job.input_text, e.byte));
    }
  }
  require(doc.is_object(), ErrorKind::Validation, "input document must be a JSON object");
  for (const auto& [key, value] : job.params) {
    Json parsed = Json::parse(value, nullptr, false);
    doc[key] = parsed.is_discarded() ? Json(value) : parsed;
  }
  if (job.truncation) {
    require(*job.truncation > 0, ErrorKind::Validation, "--truncation must be positive");
    if (entry.info.truncation_field.empty()) fail(ErrorKind::Validation, entry.info.name + " takes no truncation");
    doc[entry.info.truncation_field] = *job.truncation;
  }
  if (job.seed && !entry.info.uses_seed) fail(ErrorKind::Validation, entry.info.name + " takes no seed");
  check_schema(entry.info, doc);
  Context ctx{job.seed, job.format};
  const Json out = entry.handler(doc, ctx);
  RunResult r;
  r.output = job.format == "text" ? entry.text(out) : io::dump(out);
  if (entry.reports_pass && !out.at("passed").get<bool>()) r.exit_code = kExitCheckFailed;
  return r;
}

}  // namespace

const std::vector<SubcommandInfo>& registry() {
  static const std::vector<SubcommandInfo> infos = [] {
    std::vector<SubcommandInfo> v;
    for (const auto& e : entries()) v.push_back(e.info);
    return v;
  }();
  return infos;
}

const SubcommandInfo* find_subcommand(const std::string& name) {
  const Entry* e = find_entry(name);
  return e ? &e->info : nullptr;
}

RunResult run(const JobSpec& job) {
  RunResult result;
  const Entry* entry = find_entry(job.subcommand);
  if (!entry) {
    result = error_result(ErrorKind::Validation, "unknown subcommand \"" + job.subcommand + "\"");
  } else {
    try {
      result = dispatch(*entry, job);
    } catch (const NotInIdealError& e) {
      Json doc = io::error_document(e.kind(), e.what());
      doc["error"]["remainder"] = io::to_json(e.remainder());
      result = {kExitValidation, io::dump(doc)};
    } catch (const Error& e) {
      result = error_result(e.kind(), e.what());
    } catch (const Json::exception& e) {
      result = error_result(ErrorKind::Validation, e.what());
    } catch (const std::exception& e) {
      result = error_result(ErrorKind::Internal, e.what());
    }
  }
  if (!job.output_path.empty() && job.output_path != "-") {
    std::ofstream out(job.output_path, std::ios::binary);
    out << result.output;
    if (!out) return error_result(ErrorKind::Internal, "cannot write " + job.output_path);
  }
  return result;
}

bool ReplayReport::passed() const {
  return std::all_of(entries.begin(), entries.end(), [](const ReplayEntry& e) { return e.passed; });
}

namespace {

std::optional<std::string> read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string first_difference(const std::string& got, const std::string& want) {
  std::istringstream a(got), b(want);
  std::string la, lb;
  for (std::size_t line = 1;; ++line) {
    const bool ha = static_cast<bool>(std::getline(a, la)), hb = static_cast<bool>(std::getline(b, lb));
    if (!ha && !hb) return "outputs differ";
    if (ha != hb || la != lb) return "first difference at line " + std::to_string(line);
  }
}

ReplayEntry replay_one(const std::filesystem::path& dir, const std::string& name) {
  ReplayEntry e{name, false, ""};
  const std::string input_name = name + ".input.json", expected_name = name + ".expected.json";
  const auto input = read_file(dir / input_name);
  if (!input) {
    e.reason = "cannot read " + input_name;
    return e;
  }
  const auto expected = read_file(dir / expected_name);
  if (!expected) {
    e.reason = "missing expected file " + expected_name;
    return e;
  }
  JobSpec job;
  int want_exit = kExitOk;
  try {
    const Json spec = Json::parse(*input);
    job.subcommand = spec.at("subcommand").get<std::string>();
    require(job.subcommand != "corpus replay", ErrorKind::Validation, "corpus entries cannot replay corpora");
    if (spec.contains("input_text"))
      job.input_text = spec.at("input_text").get<std::string>();
    else if (spec.contains("input"))
      job.input_text = spec.at("input").dump();
    if (spec.contains("truncation")) job.truncation = spec.at("truncation").get<long>();
    if (spec.contains("seed")) job.seed = spec.at("seed").get<std::uint64_t>();
    if (spec.contains("format")) job.format = spec.at("format").get<std::string>();
    if (spec.contains("params"))
      for (const auto& [k, v] : spec.at("params").items())
        job.params[k] = v.is_string() ? v.get<std::string>() : v.dump();
    if (spec.contains("exit")) want_exit = spec.at("exit").get<int>();
  } catch (const std::exception& ex) {
    e.reason = "malformed " + input_name + ": " + ex.what();
    return e;
  }
  const RunResult got = run(job);
  if (got.exit_code != want_exit) {
    e.reason = "exit code " + std::to_string(got.exit_code) + ", expected " + std::to_string(want_exit);
  } else if (got.output != *expected) {
    e.reason = "output differs from " + expected_name + " (" + first_difference(got.output, *expected) + ")";
  } else {
    e.passed = true;
  }
  return e;
}

}  // namespace

ReplayReport corpus_replay(const std::string& directory) {
  namespace fs = std::filesystem;
  ReplayReport rep;
  rep.directory = directory;
  if (!fs::is_directory(directory)) fail(ErrorKind::Validation, "corpus directory " + directory + " does not exist");
  std::set<std::string> inputs, expected;
  const std::string in_suffix = ".input.json", out_suffix = ".expected.json";
  for (const auto& f : fs::directory_iterator(directory)) {
    const std::string n = f.path().filename().string();
    auto ends = [&n](const std::string& s) {
      return n.size() > s.size() && n.compare(n.size() - s.size(), s.size(), s) == 0;
    };
    if (ends(in_suffix))
      inputs.insert(n.substr(0, n.size() - in_suffix.size()));
    else if (ends(out_suffix))
      expected.insert(n.substr(0, n.size() - out_suffix.size()));
  }
  if (inputs.empty()) rep.warnings.push_back("no corpus entries in " + directory);
  for (const auto& n : expected)
    if (!inputs.count(n)) rep.warnings.push_back("expected file without input: " + n + out_suffix);
  for (const auto& n : inputs) rep.entries.push_back(replay_one(directory, n));
  return rep;
}

Json to_json(const ReplayReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries) entries.push_back({{"name", e.name}, {"passed", e.passed}, {"reason", e.reason}});
  std::size_t failed = 0;
  for (const auto& e : r.entries) failed += e.passed ? 0 : 1;
  return Json{{"checked", r.entries.size()},
              {"failed", failed},
              {"entries", entries},
              {"warnings", r.warnings},
              {"passed", r.passed()}};
}

}  // namespace banarith::cli
