#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace prlab {

// A set partition of {1..k}, stored as a restricted growth string over
// 0-based positions: a[0] = 0 and a[i] <= 1 + max(a[0..i-1]). Blocks are
// numbered in order of first appearance, so equal partitions have equal
// strings and lexicographic comparison is well defined.
class SetPartition {
 public:
  explicit SetPartition(std::vector<std::uint8_t> rgs);

  // Canonicalizes an arbitrary block-label assignment into a growth string.
  static SetPartition from_labels(std::span<const int> labels);

  static SetPartition bottom(int k);  // all singletons
  static SetPartition top(int k);     // one block

  int k() const { return static_cast<int>(a_.size()); }
  int block_count() const { return blocks_; }
  int rank() const { return k() - blocks_; }  // corank of the block count
  std::uint8_t block_of(int i) const { return a_[static_cast<std::size_t>(i)]; }
  const std::vector<std::uint8_t>& rgs() const { return a_; }

  bool is_bottom() const { return blocks_ == k(); }
  bool is_top() const { return blocks_ == 1; }

  // Blocks as sorted element lists (1-based elements), ordered by minimum.
  std::vector<std::vector<int>> blocks() const;

  friend bool operator==(const SetPartition& x, const SetPartition& y) { return x.a_ == y.a_; }
  friend bool operator!=(const SetPartition& x, const SetPartition& y) { return !(x == y); }
  friend bool operator<(const SetPartition& x, const SetPartition& y) { return x.a_ < y.a_; }

 private:
  std::vector<std::uint8_t> a_;
  int blocks_ = 0;
};

// True iff every block of a is contained in a block of b.
bool refines(const SetPartition& a, const SetPartition& b);

// Meet: blockwise intersection. Join: transitive closure of the union.
SetPartition meet(const SetPartition& a, const SetPartition& b);
SetPartition join(const SetPartition& a, const SetPartition& b);

// Text form "14|23": blocks separated by '|', each block the sorted element
// list, blocks ordered by minimum. Elements are concatenated digits for
// k <= 9; for k > 9 they must be comma-separated. Parsing ignores whitespace,
// accepts commas at any k, and validates that {1..k} is covered exactly once.
SetPartition parse_partition(const std::string& text, int k);
std::string format_partition(const SetPartition& p);

// Partition induced by positionwise equality of an arbitrary tuple.
template <typename Range>
SetPartition partition_of_tuple(const Range& values) {
  std::vector<int> labels;
  labels.reserve(values.size());
  int next = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    int lab = -1;
    for (std::size_t j = 0; j < i; ++j) {
      if (values[j] == values[i]) {
        lab = labels[j];
        break;
      }
    }
    labels.push_back(lab >= 0 ? lab : next++);
  }
  return SetPartition::from_labels(labels);
}

// Indicator of "constant on every block of pi".
template <typename Range>
bool tuple_respects(const SetPartition& pi, const Range& values) {
  if (static_cast<int>(values.size()) != pi.k()) return false;
  std::vector<int> first(static_cast<std::size_t>(pi.block_count()), -1);
  for (int i = 0; i < pi.k(); ++i) {
    int b = pi.block_of(i);
    if (first[b] < 0)
      first[b] = i;
    else if (!(values[static_cast<std::size_t>(first[b])] == values[static_cast<std::size_t>(i)]))
      return false;
  }
  return true;
}

}  // namespace prlab
