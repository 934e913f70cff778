#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "prlab/indicator.hpp"
#include "prlab/property.hpp"

namespace prlab {

struct Violation {
  std::vector<Vec> tuple;
  std::string detail;
};

// Counted violations with a capped witness list.
struct ViolationList {
  std::uint64_t count = 0;
  std::vector<Violation> witnesses;

  static constexpr std::size_t witness_cap = 10;
  void add(std::span<const Vec> tuple, std::string detail);
  bool empty() const { return count == 0; }
};

// One named per-kind claim about the tensor/predicate correspondence. Fatal
// claims are the correspondences the construction is supposed to guarantee;
// non-fatal ones are the documented quiet failure modes, where violations are
// reported as findings without failing the report.
struct ClaimResult {
  std::string name;
  bool fatal = true;
  ViolationList violations;
};

struct SemanticsReport {
  std::string mode;  // "exhaustive" or "sampled"
  std::uint64_t tuples_checked = 0;
  std::vector<ClaimResult> claims;
  bool pass = false;  // no fatal claim violated

  const ClaimResult* claim(const std::string& name) const;
};

enum class VerifyMode { exhaustive, sampled };

SemanticsReport verify_tensor_semantics(const PropertySpec& spec, const Field& fld,
                                        VerifyMode mode, std::uint64_t budget = 1'000'000,
                                        std::uint64_t seed = 0, std::uint64_t samples = 2000);

// I_f - T = scalar * delta_top on A^k, scalar = -sum_{pi<top} f(pi) mu(pi,top) - f(top).
// f must be defined on all of Pi_k (includes_top). Identity violations on
// non-constant tuples are exactly failures of "T equals f(partition) there".
struct DecompositionReport {
  Rat scalar_rational;
  Fe scalar = 0;
  bool scalar_nonzero = false;
  std::uint64_t tuples_checked = 0;
  ViolationList identity_violations;
  bool identity_holds = false;
  bool pass = false;
};

DecompositionReport verify_decomposition(const PartitionLattice& lat, const PartitionFunction& f,
                                         const PropertySpec& spec, const Field& fld,
                                         std::span<const Vec> a, std::uint64_t budget = 1'000'000);

// The four diagonalization hypotheses checked individually on A^k, plus the
// conclusion: I_f * T diagonal with every diagonal entry the predicted
// nonzero value. f excludes the top.
struct DiagonalizationReport {
  bool cond1_constants_satisfy = false;   // (x,...,x) satisfies the property
  ViolationList cond2_violations;         // T is not the 0/1 indicator of the property
  ViolationList cond3_violations;         // satisfied partition pi < top with f(pi) != 0
  Rat diagonal_rational;
  Fe diagonal = 0;
  bool cond4_nonzero = false;             // diagonal_value != 0 in the field
  std::uint64_t tuples_checked = 0;
  ViolationList offdiagonal_violations;   // (I_f t) nonzero off the diagonal
  ViolationList diagonal_violations;      // diagonal entry != diagonal_value * T(x,..,x)
  bool diagonal_nonzero = false;
  bool pass = false;
};

DiagonalizationReport verify_diagonalization(const PartitionLattice& lat,
                                             const PartitionFunction& f, const PropertySpec& spec,
                                             const Field& fld, std::span<const Vec> a,
                                             std::uint64_t budget = 1'000'000);

}  // namespace prlab
