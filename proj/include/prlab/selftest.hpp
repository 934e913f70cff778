#pragma once

#include <string>
#include <vector>

namespace prlab {

// Deliberate single-table corruptions; the identity checks must catch each.
enum class FaultTarget { none, mobius, order, stirling, bell };
FaultTarget fault_from_name(const std::string& name);
std::string fault_name(FaultTarget t);

struct CheckOutcome {
  std::string id;
  bool pass = false;
  std::string detail;  // empty on pass, failure reason otherwise
  double seconds = 0;
};

struct SelftestReport {
  std::string level;  // "quick" or "full"
  std::string fault;
  std::vector<CheckOutcome> checks;
  std::vector<std::string> failed;  // ids of failed checks
  bool pass = false;
};

// Quick runs the fast identity inventory; full additionally runs the heavy
// exhaustive suites (big lattices, grids, the F_3^3 search).
SelftestReport run_selftest(bool full, FaultTarget fault = FaultTarget::none);

}  // namespace prlab
