#pragma once

#include "prlab/ints.hpp"
#include "prlab/partition.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace prlab {

Int bell(int k);
Int stirling2(int n, int r);

// Test hooks: while enabled, the table is off by one for arguments large
// enough to matter (k >= 4), so counting cross-checks must catch it.
void set_bell_fault_for_tests(bool on);
void set_stirling_fault_for_tests(bool on);

// The lattice of set partitions of {1..k} under refinement, enumerated in a
// fixed linear extension: rank ascending (rank = k - blocks), ties broken by
// lexicographic growth string. Index 0 is the all-singletons bottom, the last
// index the one-block top.
//
// Order and Moebius tables are materialized when Bell(k) is small enough
// (automatic policy: Bell(k) <= 5000, i.e. k <= 8); larger lattices stay
// enumeration-only and pairwise operations fall back to direct computation.
class PartitionLattice {
 public:
  enum class Tables { automatic, full, none };

  explicit PartitionLattice(int k, Tables policy = Tables::automatic,
                            std::uint64_t enumeration_ceiling = default_enumeration_ceiling);

  static constexpr std::uint64_t default_enumeration_ceiling = 27'644'437;  // Bell(13)

  int k() const { return k_; }
  std::size_t size() const { return count_; }
  std::size_t bottom() const { return 0; }
  std::size_t top() const { return count_ - 1; }
  bool has_tables() const { return has_tables_; }

  SetPartition partition(std::size_t i) const;
  std::span<const std::uint8_t> rgs_view(std::size_t i) const;
  std::size_t index_of(const SetPartition& p) const;
  int rank_of(std::size_t i) const { return rank_[i]; }
  int block_count_of(std::size_t i) const { return k_ - rank_[i]; }

  // Indices of rank r occupy [rank_begin(r), rank_end(r)).
  std::size_t rank_begin(int r) const { return rank_offset_[static_cast<std::size_t>(r)]; }
  std::size_t rank_end(int r) const { return rank_offset_[static_cast<std::size_t>(r) + 1]; }

  // Refinement order. Uses the bitset when tables exist.
  bool leq(std::size_t a, std::size_t b) const;

  // Stored Moebius value mu(a, b); 0 when a and b are incomparable.
  // Values fit in int64 for every admissible k: |mu| <= (k-1)! <= 12!.
  std::int64_t mobius(std::size_t a, std::size_t b) const;

  struct DownEntry {
    std::uint32_t index;  // some a <= b
    std::int64_t mu;      // mu(a, b)
  };
  // All pairs (a, mu(a,b)) with a <= b, ascending in a. Requires tables.
  const std::vector<DownEntry>& down(std::size_t b) const;

  // Test hooks: deliberately corrupt a single table entry so that downstream
  // identity checks must detect the damage. Requires tables.
  void corrupt_mobius_entry_for_tests();
  void corrupt_order_bit_for_tests();

 private:
  void build_tables();
  bool leq_bit(std::size_t a, std::size_t b) const {
    std::size_t idx = a * count_ + b;
    return (leq_bits_[idx >> 6] >> (idx & 63)) & 1u;
  }

  int k_;
  std::size_t count_ = 0;
  std::vector<std::uint8_t> flat_;         // count_ * k_ growth strings
  std::vector<std::uint8_t> rank_;         // per index
  std::vector<std::size_t> rank_offset_;   // k_ + 1 entries
  bool has_tables_ = false;
  std::vector<std::uint64_t> leq_bits_;    // count_^2 bits, row-major in a
  std::vector<std::vector<DownEntry>> down_;
};

// Moebius value by the interval recursion, memoized per call over [a, b]:
// mu(a, a) = 1 and mu(a, b) = -sum_{a <= z < b} mu(a, z). Exact integers;
// requires tables (the interval is scanned through the order bitset).
Int mobius_recursive(const PartitionLattice& lat, std::size_t a, std::size_t b);

// Closed form on an interval: with b fixed, each block of b is split by a
// into some number l_i of blocks, and mu(a, b) = prod_i (-1)^(l_i - 1) (l_i - 1)!.
// Returns 0 when a does not refine b.
Int mobius_closed_form(const SetPartition& a, const SetPartition& b);

}  // namespace prlab
