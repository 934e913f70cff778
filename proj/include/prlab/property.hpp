#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "prlab/field.hpp"
#include "prlab/polynomial.hpp"

namespace prlab {

// Tuple properties with both a semantic predicate and a tensor realization.
// The two are implemented independently and cross-checked; divergences are
// findings, not bugs, so tensor_value never consults property_holds.
enum class PropertyKind {
  // Arity k: the last entry is the corner; the property asks for distinct
  // entries whose differences from the corner are mutually orthogonal.
  k_right_corner,
  // Arity 3, angle at the first entry: <y-x, z-x> = 0, all distinct.
  right_angle_triple,
  // Arity 3, angle at the first entry: 2<x-y, x-z> a nonzero square (acute)
  // or a nonsquare (obtuse), all distinct.
  acute_angle,
  obtuse_angle,
  // Arity k: a_1 x_1 + ... + a_k x_k = 0 coordinatewise; sum a_i = 0 so
  // constant tuples always solve it.
  balanced_linear_equation,
  // Arity k: distinct points, every ordered triple of distinct indices
  // forming a right angle at its middle point.
  right_k_configuration,
  // Arity k: all pairwise squared distances equal.
  equal_squared_distances,
  // Arity k: <x_i, x_j> = 0 for all i <= j (self-orthogonality included).
  pairwise_orthogonal,
  // Arity k: user polynomial g vanishing on every increasing m-subtuple.
  identifier,
};

std::string kind_name(PropertyKind kind);
std::optional<PropertyKind> kind_from_name(const std::string& name);

struct PropertySpec {
  PropertyKind kind = PropertyKind::balanced_linear_equation;
  int k = 3;  // tuple arity
  FieldSpec field;
  int n = 1;  // dimension
  std::vector<std::int64_t> coeffs;  // balanced_linear_equation only
  int max_distinct = 0;  // balanced forbidden-tuple cap; 0 means k
  std::optional<PolynomialSpec> g;   // identifier only
};

// Structural checks: arity bounds, coefficient balance, identifier shape.
void validate_property(const PropertySpec& spec, const Field& fld);

// Semantic truth of the property on one tuple, straight from the defining
// quantifiers. This is the oracle side.
bool property_holds(const PropertySpec& spec, const Field& fld, std::span<const Vec> tuple);

// Exact field value of the property's tensor on one tuple.
Fe tensor_value(const PropertySpec& spec, const Field& fld, std::span<const Vec> tuple);

// The tuples a set must not contain, per each source theorem's quantification:
// balanced equations forbid non-constant solutions with at most max_distinct
// values; kinds with distinctness built into the predicate forbid exactly
// their satisfying tuples; the remaining kinds forbid distinct satisfying
// tuples.
bool forbidden_tuple(const PropertySpec& spec, const Field& fld, std::span<const Vec> tuple);

// Static hint; search additionally confirms by sampling before fixing a point.
bool translation_invariant_kind(PropertyKind kind);

// Memoizing wrapper around tensor_value for grid sweeps. Not safe for
// concurrent use; give each thread its own instance.
class TensorEval {
 public:
  TensorEval(const PropertySpec& spec, const Field& fld) : spec_(&spec), fld_(&fld) {}
  Fe operator()(std::span<const Vec> tuple);
  std::size_t memo_size() const { return memo_.size(); }

 private:
  const PropertySpec* spec_;
  const Field* fld_;
  std::map<std::vector<Fe>, Fe> memo_;  // keyed by the flattened tuple
};

}  // namespace prlab
