#include "prlab/json_io.hpp"

#include <string>

#include "prlab/errors.hpp"
#include "prlab/partition.hpp"

namespace prlab {
namespace {

const Json& need(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw invalid_config(std::string("missing field: ") + key);
  return *it;
}

int int_from(const Json& j, const char* key) {
  const Json& v = need(j, key);
  if (!v.is_number_integer()) throw invalid_config(std::string(key) + " must be an integer");
  return v.get<int>();
}

int int_or(const Json& j, const char* key, int fallback) {
  auto it = j.find(key);
  return it == j.end() ? fallback : it->get<int>();
}

Int int_scalar_from(const Json& j) {
  if (j.is_number_integer()) return Int(j.get<long long>());
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (const std::exception&) {
      throw invalid_config("not an integer literal: " + j.get<std::string>());
    }
  }
  throw invalid_config("expected an integer or a decimal string");
}

}  // namespace

Json json_of(const Rat& v) { return to_string(v); }
Json json_of(const Int& v) { return to_string(v); }

Rat rat_from(const Json& j) {
  if (j.is_number_integer()) return Rat(j.get<long long>());
  if (!j.is_string()) throw invalid_config("expected a rational as integer or string");
  std::string s = j.get<std::string>();
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int den(s.substr(slash + 1));
    if (den == 0) throw invalid_config("zero denominator: " + s);
    return Rat(Int(s.substr(0, slash)), den);
  } catch (const invalid_config&) {
    throw;
  } catch (const std::exception&) {
    throw invalid_config("not a rational literal: " + s);
  }
}

Json json_of(const Field& fld, Fe e) {
  if (fld.ell() == 1) return static_cast<std::uint64_t>(e);
  return Json(fld.digits(e));
}

Fe element_from(const Field& fld, const Json& j) {
  if (j.is_number_integer()) return fld.from_int(j.get<std::int64_t>());
  if (!j.is_array()) throw invalid_config("field element must be an integer or a digit array");
  std::vector<std::uint32_t> digits;
  for (const auto& d : j) {
    if (!d.is_number_integer() || d.get<std::int64_t>() < 0)
      throw invalid_config("element digits must be nonnegative integers");
    digits.push_back(d.get<std::uint32_t>());
  }
  return fld.element(digits);
}

Json json_of(const Field& fld, const Vec& v) {
  Json arr = Json::array();
  for (Fe e : v) arr.push_back(json_of(fld, e));
  return arr;
}

Vec vec_from(const Field& fld, const Json& j, int n) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(n))
    throw invalid_config("vector must be an array of length n");
  Vec v;
  for (const auto& e : j) v.push_back(element_from(fld, e));
  return v;
}

Json json_of(const Field& fld, std::span<const Vec> points) {
  Json arr = Json::array();
  for (const Vec& v : points) arr.push_back(json_of(fld, v));
  return arr;
}

std::vector<Vec> vecs_from(const Field& fld, const Json& j, int n) {
  if (!j.is_array()) throw invalid_config("expected an array of vectors");
  std::vector<Vec> pts;
  for (const auto& v : j) pts.push_back(vec_from(fld, v, n));
  return pts;
}

Json json_of(const FieldSpec& spec) {
  Json j{{"p", spec.p}, {"ell", spec.ell}};
  if (!spec.modulus.empty()) j["modulus"] = spec.modulus;
  return j;
}

FieldSpec field_spec_from(const Json& j) {
  FieldSpec spec;
  spec.p = static_cast<std::uint32_t>(int_from(j, "p"));
  spec.ell = static_cast<std::uint32_t>(int_or(j, "ell", 1));
  if (auto it = j.find("modulus"); it != j.end()) {
    if (!it->is_array()) throw invalid_config("modulus must be a coefficient array");
    for (const auto& c : *it) spec.modulus.push_back(c.get<std::uint32_t>());
  }
  return spec;
}

Json json_of(const PolyExpr& e) {
  switch (e.op()) {
    case PolyExpr::Op::constant:
      return Json{{"op", "const"}, {"value", e.constant_value()}};
    case PolyExpr::Op::coord:
      return Json{{"op", "coord"}, {"arg", e.arg_index()}, {"index", e.coord_index()}};
    case PolyExpr::Op::add:
      return Json{{"op", "add"}, {"left", json_of(e.left())}, {"right", json_of(e.right())}};
    case PolyExpr::Op::sub:
      return Json{{"op", "sub"}, {"left", json_of(e.left())}, {"right", json_of(e.right())}};
    case PolyExpr::Op::mul:
      return Json{{"op", "mul"}, {"left", json_of(e.left())}, {"right", json_of(e.right())}};
    case PolyExpr::Op::pow:
      return Json{{"op", "pow"}, {"base", json_of(e.left())}, {"exp", e.exponent()}};
  }
  throw invalid_config("unknown expression node");
}

PolyExpr poly_expr_from(const Json& j) {
  std::string op = need(j, "op").get<std::string>();
  if (op == "const") return PolyExpr::constant(need(j, "value").get<std::int64_t>());
  if (op == "coord") return PolyExpr::coord(int_from(j, "arg"), int_from(j, "index"));
  if (op == "add") return PolyExpr::add(poly_expr_from(need(j, "left")),
                                        poly_expr_from(need(j, "right")));
  if (op == "sub") return PolyExpr::sub(poly_expr_from(need(j, "left")),
                                        poly_expr_from(need(j, "right")));
  if (op == "mul") return PolyExpr::mul(poly_expr_from(need(j, "left")),
                                        poly_expr_from(need(j, "right")));
  if (op == "pow")
    return PolyExpr::pow(poly_expr_from(need(j, "base")),
                         need(j, "exp").get<unsigned>());
  throw invalid_config("unknown expression op: " + op);
}

Json json_of(const PolynomialSpec& spec) {
  return Json{{"m", spec.m}, {"expr", json_of(spec.expr)}};
}

PolynomialSpec polynomial_spec_from(const Json& j) {
  PolynomialSpec spec;
  spec.m = int_from(j, "m");
  spec.expr = poly_expr_from(need(j, "expr"));
  return spec;
}

Json json_of(const PropertySpec& spec) {
  Json j{{"kind", kind_name(spec.kind)},
         {"k", spec.k},
         {"field", json_of(spec.field)},
         {"n", spec.n}};
  if (!spec.coeffs.empty()) j["coeffs"] = spec.coeffs;
  if (spec.max_distinct != 0) j["max_distinct"] = spec.max_distinct;
  if (spec.g) j["identifier"] = json_of(*spec.g);
  return j;
}

PropertySpec property_spec_from(const Json& j) {
  PropertySpec spec;
  std::string kind = need(j, "kind").get<std::string>();
  auto parsed = kind_from_name(kind);
  if (!parsed) throw invalid_config("unknown property kind: " + kind);
  spec.kind = *parsed;
  spec.k = int_from(j, "k");
  spec.field = field_spec_from(need(j, "field"));
  spec.n = int_from(j, "n");
  if (auto it = j.find("coeffs"); it != j.end())
    for (const auto& c : *it) spec.coeffs.push_back(c.get<std::int64_t>());
  spec.max_distinct = int_or(j, "max_distinct", 0);
  if (auto it = j.find("identifier"); it != j.end()) spec.g = polynomial_spec_from(*it);
  return spec;
}

Json json_of(const PartitionLattice& lat, const PartitionFunction& f) {
  Json values = Json::object();
  for (std::size_t i = 0; i < lat.size(); ++i)
    if (f.values[i] != 0) values[format_partition(lat.partition(i))] = json_of(f.values[i]);
  return Json{{"k", f.k}, {"includes_top", f.includes_top}, {"values", values}};
}

PartitionFunction partition_function_from(const PartitionLattice& lat, const Json& j) {
  PartitionFunction f;
  f.k = int_or(j, "k", lat.k());
  if (f.k != lat.k()) throw invalid_config("partition function k does not match the lattice");
  f.values.assign(lat.size(), Rat(0));
  const Json& values = need(j, "values");
  if (!values.is_object()) throw invalid_config("values must map partition strings to scalars");
  bool saw_top = false;
  for (auto it = values.begin(); it != values.end(); ++it) {
    std::size_t idx = lat.index_of(parse_partition(it.key(), f.k));
    f.values[idx] = rat_from(it.value());
    saw_top = saw_top || (idx == lat.top() && f.values[idx] != 0);
  }
  if (auto it = j.find("includes_top"); it != j.end())
    f.includes_top = it->get<bool>();
  else
    f.includes_top = saw_top;
  if (!f.includes_top && saw_top)
    throw invalid_config("top value given but includes_top is false");
  return f;
}

Json json_of(const Field& fld, const ViolationList& v) {
  Json witnesses = Json::array();
  for (const auto& w : v.witnesses)
    witnesses.push_back(Json{{"tuple", json_of(fld, w.tuple)}, {"detail", w.detail}});
  return Json{{"count", v.count}, {"witnesses", witnesses}};
}

Json json_of(const Field& fld, const SemanticsReport& rep) {
  Json claims = Json::array();
  for (const auto& c : rep.claims)
    claims.push_back(Json{{"name", c.name},
                          {"fatal", c.fatal},
                          {"violations", json_of(fld, c.violations)}});
  return Json{{"mode", rep.mode},
              {"tuples_checked", rep.tuples_checked},
              {"claims", claims},
              {"pass", rep.pass}};
}

Json json_of(const Field& fld, const DecompositionReport& rep) {
  return Json{{"scalar", json_of(rep.scalar_rational)},
              {"scalar_mod_p", static_cast<std::uint64_t>(rep.scalar)},
              {"scalar_nonzero", rep.scalar_nonzero},
              {"tuples_checked", rep.tuples_checked},
              {"identity_violations", json_of(fld, rep.identity_violations)},
              {"identity_holds", rep.identity_holds},
              {"pass", rep.pass}};
}

Json json_of(const Field& fld, const DiagonalizationReport& rep) {
  return Json{{"cond1_constants_satisfy", rep.cond1_constants_satisfy},
              {"cond2_violations", json_of(fld, rep.cond2_violations)},
              {"cond3_violations", json_of(fld, rep.cond3_violations)},
              {"diagonal", json_of(rep.diagonal_rational)},
              {"diagonal_mod_p", static_cast<std::uint64_t>(rep.diagonal)},
              {"cond4_nonzero", rep.cond4_nonzero},
              {"tuples_checked", rep.tuples_checked},
              {"offdiagonal_violations", json_of(fld, rep.offdiagonal_violations)},
              {"diagonal_violations", json_of(fld, rep.diagonal_violations)},
              {"diagonal_nonzero", rep.diagonal_nonzero},
              {"pass", rep.pass}};
}

Json json_of(const BoundReport& rep) {
  Json inputs = Json::object();
  for (const auto& [key, value] : rep.inputs) inputs[key] = value;
  Json checks = Json::array();
  for (const auto& c : rep.cross_checks)
    checks.push_back(Json{{"description", c.description}, {"pass", c.pass}, {"detail", c.detail}});
  return Json{{"name", rep.name},
              {"inputs", inputs},
              {"value", json_of(rep.value)},
              {"formula", rep.formula},
              {"cross_checks", checks},
              {"flags", rep.flags},
              {"pass", rep.pass()}};
}

Json json_of(const GammaResult& rep) {
  return Json{{"p", rep.p},
              {"m", rep.m},
              {"x_lo", json_of(rep.x_lo)},
              {"x_hi", json_of(rep.x_hi)},
              {"x_probe", json_of(rep.x_probe)},
              {"upper", json_of(rep.upper)},
              {"probe_lower", json_of(rep.probe_lower)},
              {"upper_approx", rep.upper_approx()}};
}

Json json_of(const GammaExponent& rep) {
  Json c = Json::array();
  for (const auto& v : rep.c_rm) c.push_back(json_of(v));
  return Json{{"k", rep.k},
              {"m", rep.m},
              {"deg_g", rep.deg_g},
              {"q", rep.q},
              {"c_rm", c},
              {"coefficient", json_of(rep.coefficient)},
              {"gamma", json_of(rep.gamma)},
              {"monotone", rep.monotone},
              {"flags", rep.flags}};
}

Json json_of(const PolyRankBound& rep) {
  Json flags = Json::array();
  for (const auto& [r, exact] : rep.ceiling_flags)
    flags.push_back(Json{{"r", r}, {"exact_exponent", json_of(exact)}});
  return Json{{"value", json_of(rep.value)},
              {"simplified", json_of(rep.simplified)},
              {"d_r", rep.d_r},
              {"ceiling_flags", flags}};
}

Json json_of(const PosetLemmaReport& rep) {
  return Json{{"k", rep.k},
              {"r", rep.r},
              {"lemma_value", json_of(rep.lemma_value)},
              {"rank_count", json_of(rep.rank_count)},
              {"value_matches", rep.value_matches},
              {"reduced_matches", rep.reduced_matches},
              {"matrix_identity", rep.matrix_identity},
              {"matrix_checked", rep.matrix_checked},
              {"terms_used", rep.terms_used},
              {"pass", rep.pass}};
}

Json json_of(const HarmonicRecoveryReport& rep) {
  return Json{{"p", rep.p},
              {"full_sum", static_cast<std::uint64_t>(rep.full_sum)},
              {"harmonic_sum", static_cast<std::uint64_t>(rep.harmonic_sum)},
              {"matches_negated_mobius", rep.matches_negated_mobius}};
}

Json json_of(const Field& fld, const SearchResult& rep) {
  return Json{{"best_set", json_of(fld, rep.best_set)},
              {"size", rep.size},
              {"proof_status", rep.exact_optimal ? "exact-optimal" : "lower-bound-only"},
              {"nodes_explored", rep.nodes_explored},
              {"witness_check", rep.witness_check ? "pass" : "fail"},
              {"symmetry_applied", rep.symmetry_applied},
              {"point_order", rep.point_order},
              {"elapsed_seconds", rep.elapsed_seconds}};
}

Json json_of(const Field& fld, const SandwichReport& rep) {
  return Json{{"search", json_of(fld, rep.search)},
              {"bound_name", rep.bound_name},
              {"bound_value", json_of(rep.bound_value)},
              {"consistent", rep.consistent}};
}

Json json_of(const SearchConfig& config) {
  return Json{{"field", json_of(config.field)},
              {"n", config.n},
              {"property", json_of(config.property)},
              {"mode", search_mode_name(config.mode)},
              {"seed", config.seed},
              {"node_budget", config.node_budget},
              {"time_budget_seconds", config.time_budget_seconds},
              {"symmetry_reduction", config.symmetry_reduction},
              {"ordering", ordering_name(config.ordering)},
              {"max_points", config.max_points},
              {"restarts", config.restarts},
              {"threads", config.threads}};
}

SearchConfig search_config_from(const Json& j) {
  SearchConfig config;
  config.property = property_spec_from(need(j, "property"));
  config.field = j.contains("field") ? field_spec_from(need(j, "field"))
                                     : config.property.field;
  config.n = int_or(j, "n", config.property.n);
  if (auto it = j.find("mode"); it != j.end())
    config.mode = search_mode_from_name(it->get<std::string>());
  if (auto it = j.find("seed"); it != j.end()) config.seed = it->get<std::uint64_t>();
  if (auto it = j.find("node_budget"); it != j.end())
    config.node_budget = it->get<std::uint64_t>();
  if (auto it = j.find("time_budget_seconds"); it != j.end())
    config.time_budget_seconds = it->get<double>();
  if (auto it = j.find("symmetry_reduction"); it != j.end())
    config.symmetry_reduction = it->get<bool>();
  if (auto it = j.find("ordering"); it != j.end())
    config.ordering = ordering_from_name(it->get<std::string>());
  if (auto it = j.find("max_points"); it != j.end())
    config.max_points = it->get<std::size_t>();
  config.restarts = int_or(j, "restarts", config.restarts);
  config.threads = int_or(j, "threads", config.threads);
  return config;
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace prlab
