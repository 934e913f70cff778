#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "prlab/bounds.hpp"
#include "prlab/field.hpp"
#include "prlab/property.hpp"

namespace prlab {

enum class SearchMode { exact, greedy, random_restart };
enum class PointOrdering { lex, degree };

SearchMode search_mode_from_name(const std::string& name);
std::string search_mode_name(SearchMode mode);
PointOrdering ordering_from_name(const std::string& name);
std::string ordering_name(PointOrdering ordering);

struct SearchConfig {
  FieldSpec field;
  int n = 1;
  PropertySpec property;
  SearchMode mode = SearchMode::exact;
  std::uint64_t seed = 0;
  // Split evenly across subtree tasks so budget cuts stay deterministic.
  std::uint64_t node_budget = 50'000'000;
  double time_budget_seconds = 0;  // 0 disables the wall-clock cutoff
  bool symmetry_reduction = true;
  PointOrdering ordering = PointOrdering::lex;
  std::size_t max_points = 200;  // ceiling on q^n for exact mode
  int restarts = 32;             // random_restart only
  int threads = 0;               // 0 = available parallelism
};

struct AvoidanceCheck {
  bool pass = true;
  std::vector<Vec> witness;  // first forbidden tuple when pass is false
};

struct SearchResult {
  std::vector<Vec> best_set;  // sorted by enumeration index
  std::size_t size = 0;
  bool exact_optimal = false;
  std::uint64_t nodes_explored = 0;
  bool witness_check = false;  // best_set re-verified from scratch
  bool symmetry_applied = false;
  std::vector<std::size_t> point_order;  // visit order actually used
  double elapsed_seconds = 0;
};

// Scans every k-tuple drawn from `points` (with repetition) against the
// property's forbidden-tuple quantification.
AvoidanceCheck check_avoids(const PropertySpec& spec, const Field& fld,
                            std::span<const Vec> points, std::uint64_t budget = 10'000'000);

// Only tuples that use the newest point (the last entry) are scanned; valid
// when the remaining points are already known to avoid the property.
AvoidanceCheck check_avoids_incremental(const PropertySpec& spec, const Field& fld,
                                        std::span<const Vec> points);

// Empirical translation invariance: property values unchanged under a common
// shift of random tuples. Gates the fix-zero symmetry reduction.
bool sampled_translation_invariance(const PropertySpec& spec, const Field& fld, int n,
                                    std::uint64_t seed, int samples = 64);

// Exact mode: include-first depth-first branch and bound over the recorded
// point order, greedy seed, optional fix-zero reduction. Result is a pure
// function of the config: subtree tasks carry independent budget slices and
// are merged by (size, lexicographically smallest witness) in task order.
SearchResult max_avoiding_set(const SearchConfig& config);

// Complete include/exclude enumeration of all subsets, cut only when a
// forbidden tuple already appeared. No bounding, ordering, or symmetry: the
// independent oracle for exact mode on tiny spaces.
SearchResult max_avoiding_set_naive(const SearchConfig& config);

struct SandwichReport {
  SearchResult search;
  std::string bound_name;
  Rat bound_value;
  bool consistent = false;
};

// Fails loudly (check_failure) when a found set exceeds the claimed bound:
// that would be a reproducible refutation, not a soft warning.
SandwichReport sandwich_report(const SearchConfig& config, const BoundReport& bound);

}  // namespace prlab
