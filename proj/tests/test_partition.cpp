#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <vector>

#include "prlab/errors.hpp"
#include "prlab/partition.hpp"

using namespace prlab;

namespace {

// Reference refinement test straight from the block lists: every block of a
// must land inside a single block of b.
bool refines_oracle(const SetPartition& a, const SetPartition& b) {
  for (const auto& block : a.blocks()) {
    int target = b.block_of(block[0] - 1);
    for (int e : block)
      if (b.block_of(e - 1) != target) return false;
  }
  return true;
}

// All partitions of {1..k} by direct recursive placement, no growth strings.
void all_partitions_rec(int k, int i, std::vector<int>& labels, int next,
                        std::vector<SetPartition>& out) {
  if (i == k) {
    out.push_back(SetPartition::from_labels(labels));
    return;
  }
  for (int b = 0; b < next; ++b) {
    labels[static_cast<std::size_t>(i)] = b;
    all_partitions_rec(k, i + 1, labels, next, out);
  }
  labels[static_cast<std::size_t>(i)] = next;
  all_partitions_rec(k, i + 1, labels, next + 1, out);
}

std::vector<SetPartition> all_partitions(int k) {
  std::vector<SetPartition> out;
  std::vector<int> labels(static_cast<std::size_t>(k));
  all_partitions_rec(k, 0, labels, 0, out);
  return out;
}

}  // namespace

TEST_CASE("growth string validation") {
  CHECK_NOTHROW(SetPartition({0, 1, 0, 2}));
  CHECK_THROWS_AS(SetPartition({}), invalid_config);
  CHECK_THROWS_AS(SetPartition({1}), invalid_config);
  CHECK_THROWS_AS(SetPartition({0, 2}), invalid_config);
}

TEST_CASE("bottom and top") {
  for (int k = 1; k <= 6; ++k) {
    SetPartition bot = SetPartition::bottom(k);
    SetPartition top = SetPartition::top(k);
    CHECK(bot.is_bottom());
    CHECK(bot.block_count() == k);
    CHECK(bot.rank() == 0);
    CHECK(top.is_top());
    CHECK(top.block_count() == 1);
    CHECK(top.rank() == k - 1);
    CHECK(refines(bot, top));
  }
}

TEST_CASE("from_labels canonicalizes") {
  std::vector<int> odd_labels = {7, 3, 7, 9};
  SetPartition p = SetPartition::from_labels(odd_labels);
  CHECK(p.rgs() == std::vector<std::uint8_t>{0, 1, 0, 2});
  CHECK(p.block_count() == 3);
}

TEST_CASE("format and parse roundtrip") {
  SetPartition p({0, 1, 0, 2, 1});
  CHECK(format_partition(p) == "13|25|4");
  CHECK(parse_partition("13|25|4", 5) == p);
  CHECK(parse_partition("25|4|13", 5) == p);
  CHECK(parse_partition("3|1 2", 3) == SetPartition({0, 0, 1}));
  CHECK(format_partition(SetPartition::top(3)) == "123");

  for (const SetPartition& q : all_partitions(5))
    CHECK(parse_partition(format_partition(q), 5) == q);
}

TEST_CASE("parse rejects malformed input") {
  CHECK_THROWS_AS(parse_partition("12|2", 3), invalid_config);   // duplicate
  CHECK_THROWS_AS(parse_partition("12", 3), invalid_config);     // missing 3
  CHECK_THROWS_AS(parse_partition("124", 3), invalid_config);    // out of range
  CHECK_THROWS_AS(parse_partition("1||23", 3), invalid_config);  // empty block
  CHECK_THROWS_AS(parse_partition("1x|23", 3), invalid_config);
}

TEST_CASE("k > 9 uses comma elements") {
  std::string text = "1,11|2,3,4,5,6,7,8,9,10";
  SetPartition p = parse_partition(text, 11);
  CHECK(p.block_count() == 2);
  CHECK(format_partition(p) == text);
  CHECK_THROWS_AS(parse_partition("1234567891011", 11), invalid_config);
}

TEST_CASE("blocks are sorted and ordered by minimum") {
  SetPartition p = parse_partition("4|25|136", 6);
  auto blocks = p.blocks();
  REQUIRE(blocks.size() == 3);
  CHECK(blocks[0] == std::vector<int>{1, 3, 6});
  CHECK(blocks[1] == std::vector<int>{2, 5});
  CHECK(blocks[2] == std::vector<int>{4});
}

TEST_CASE("refinement matches the block-containment oracle") {
  auto parts = all_partitions(5);
  CHECK(parts.size() == 52);
  for (const auto& a : parts)
    for (const auto& b : parts) CHECK(refines(a, b) == refines_oracle(a, b));
}

TEST_CASE("meet and join are the lattice operations") {
  auto parts = all_partitions(4);
  for (const auto& a : parts) {
    for (const auto& b : parts) {
      SetPartition m = meet(a, b);
      SetPartition j = join(a, b);
      CHECK(refines(m, a));
      CHECK(refines(m, b));
      CHECK(refines(a, j));
      CHECK(refines(b, j));
      // Greatest lower / least upper: every other candidate is dominated.
      for (const auto& z : parts) {
        if (refines(z, a) && refines(z, b)) CHECK(refines(z, m));
        if (refines(a, z) && refines(b, z)) CHECK(refines(j, z));
      }
      CHECK(meet(a, b) == meet(b, a));
      CHECK(join(a, b) == join(b, a));
    }
  }
}

TEST_CASE("join closes chains transitively") {
  // 12|3 and 23|1 chain 1-2-3 into one block.
  SetPartition a = parse_partition("12|3", 3);
  SetPartition b = parse_partition("1|23", 3);
  CHECK(join(a, b) == SetPartition::top(3));
  CHECK(meet(a, b) == SetPartition::bottom(3));
}

TEST_CASE("partition_of_tuple groups equal positions") {
  std::vector<int> t = {7, 4, 7, 7, 4};
  SetPartition p = partition_of_tuple(t);
  CHECK(format_partition(p) == "134|25");
  std::vector<int> all_same = {2, 2, 2};
  CHECK(partition_of_tuple(all_same).is_top());
  std::vector<int> distinct = {1, 2, 3};
  CHECK(partition_of_tuple(distinct).is_bottom());
}

TEST_CASE("tuple_respects is constancy on blocks") {
  SetPartition p = parse_partition("13|2", 3);
  std::vector<int> good = {5, 9, 5};
  std::vector<int> bad = {5, 9, 6};
  CHECK(tuple_respects(p, good));
  CHECK_FALSE(tuple_respects(p, bad));
  // Every tuple respects the partition it induces and every refinement of it.
  std::vector<int> t = {1, 2, 1, 3};
  SetPartition pi = partition_of_tuple(t);
  CHECK(tuple_respects(pi, t));
  CHECK(tuple_respects(SetPartition::bottom(4), t));
}
