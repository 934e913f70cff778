#pragma once

#include <json.hpp>

#include "prlab/bounds.hpp"
#include "prlab/field.hpp"
#include "prlab/indicator.hpp"
#include "prlab/lattice.hpp"
#include "prlab/polynomial.hpp"
#include "prlab/property.hpp"
#include "prlab/search.hpp"
#include "prlab/verify.hpp"

namespace prlab {

using Json = nlohmann::ordered_json;  // insertion order keeps output stable

// Exact scalars travel as strings ("3", "-5/2"); never through doubles.
Json json_of(const Rat& v);
Json json_of(const Int& v);
Rat rat_from(const Json& j);

Json json_of(const Field& fld, Fe e);
Fe element_from(const Field& fld, const Json& j);
Json json_of(const Field& fld, const Vec& v);
Vec vec_from(const Field& fld, const Json& j, int n);
Json json_of(const Field& fld, std::span<const Vec> points);
std::vector<Vec> vecs_from(const Field& fld, const Json& j, int n);

Json json_of(const FieldSpec& spec);
FieldSpec field_spec_from(const Json& j);

Json json_of(const PolyExpr& e);
PolyExpr poly_expr_from(const Json& j);
Json json_of(const PolynomialSpec& spec);
PolynomialSpec polynomial_spec_from(const Json& j);

Json json_of(const PropertySpec& spec);
PropertySpec property_spec_from(const Json& j);

// Values keyed by partition strings ("1|2 3"); rationals as strings.
Json json_of(const PartitionLattice& lat, const PartitionFunction& f);
PartitionFunction partition_function_from(const PartitionLattice& lat, const Json& j);

Json json_of(const Field& fld, const ViolationList& v);
Json json_of(const Field& fld, const SemanticsReport& rep);
Json json_of(const Field& fld, const DecompositionReport& rep);
Json json_of(const Field& fld, const DiagonalizationReport& rep);
Json json_of(const BoundReport& rep);
Json json_of(const GammaResult& rep);
Json json_of(const GammaExponent& rep);
Json json_of(const PolyRankBound& rep);
Json json_of(const PosetLemmaReport& rep);
Json json_of(const HarmonicRecoveryReport& rep);
Json json_of(const Field& fld, const SearchResult& rep);
Json json_of(const Field& fld, const SandwichReport& rep);
Json json_of(const SearchConfig& config);
SearchConfig search_config_from(const Json& j);

// FNV-1a over the serialized text; the manifest digest.
std::uint64_t fnv1a64(std::string_view text);

}  // namespace prlab
