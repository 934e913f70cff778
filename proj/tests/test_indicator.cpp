#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <vector>

#include "prlab/errors.hpp"
#include "prlab/field.hpp"
#include "prlab/indicator.hpp"
#include "prlab/ints.hpp"
#include "prlab/lattice.hpp"
#include "prlab/partition.hpp"

using namespace prlab;

namespace {

// Test-local inversion: c_tau = sum over refinements, using refines() and the
// interval recursion only, no lattice tables.
std::vector<Rat> coefficients_oracle(const PartitionLattice& lat, const PartitionFunction& f) {
  std::vector<Rat> c(lat.size(), Rat(0));
  for (std::size_t t = 0; t + 1 < lat.size(); ++t)
    for (std::size_t p = 0; p < lat.size(); ++p)
      if (refines(lat.partition(p), lat.partition(t)))
        c[t] += f.at(p) * Rat(mobius_recursive(lat, p, t));
  return c;
}

// Direct definitional evaluation: sum the coefficients of the partitions the
// tuple respects.
Rat indicator_oracle(const PartitionLattice& lat, const PartitionFunction& f,
                     const std::vector<int>& tuple) {
  std::vector<Rat> c = coefficients_oracle(lat, f);
  Rat s = 0;
  for (std::size_t t = 0; t + 1 < lat.size(); ++t)
    if (tuple_respects(lat.partition(t), tuple)) s += c[t];
  return s;
}

PartitionFunction random_function(const PartitionLattice& lat, bool includes_top,
                                  std::mt19937_64& rng) {
  PartitionFunction f;
  f.k = lat.k();
  f.includes_top = includes_top;
  f.values.assign(lat.size(), Rat(0));
  std::uniform_int_distribution<int> num(-6, 6);
  std::uniform_int_distribution<int> den(1, 4);
  std::size_t limit = includes_top ? lat.size() : lat.size() - 1;
  for (std::size_t i = 0; i < limit; ++i) f.values[i] = Rat(num(rng), den(rng));
  return f;
}

Int stirling_oracle(int n, int r) {
  if (r < 0 || r > n) return 0;
  if (n == 0) return r == 0 ? 1 : 0;
  return Int(r) * stirling_oracle(n - 1, r) + stirling_oracle(n - 1, r - 1);
}

}  // namespace

TEST_CASE("partition function shape is validated") {
  PartitionLattice lat(3);
  PartitionFunction bad;
  bad.k = 3;
  bad.includes_top = true;
  bad.values.assign(2, Rat(0));
  CHECK_THROWS_AS(indicator_coefficients(lat, bad), invalid_config);

  PartitionFunction top_set;
  top_set.k = 3;
  top_set.includes_top = false;
  top_set.values.assign(lat.size(), Rat(0));
  top_set.values[lat.top()] = 1;
  CHECK_THROWS_AS(indicator_coefficients(lat, top_set), invalid_config);
}

TEST_CASE("coefficients match the refines-based inversion oracle") {
  std::mt19937_64 rng(20240817);
  for (int k = 2; k <= 4; ++k) {
    PartitionLattice lat(k);
    for (int trial = 0; trial < 25; ++trial) {
      PartitionFunction f = random_function(lat, trial % 2 == 0, rng);
      std::vector<Rat> got = indicator_coefficients(lat, f);
      std::vector<Rat> want = coefficients_oracle(lat, f);
      REQUIRE(got.size() == lat.size());
      for (std::size_t t = 0; t + 1 < lat.size(); ++t) CHECK(got[t] == want[t]);
      CHECK(got[lat.top()] == 0);  // top slot unused
    }
  }
}

TEST_CASE("literal evaluation matches the definitional oracle and the closed form") {
  std::mt19937_64 rng(987123);
  PartitionLattice lat(4);
  for (int trial = 0; trial < 20; ++trial) {
    PartitionFunction f = random_function(lat, true, rng);
    std::vector<Rat> coeffs = indicator_coefficients(lat, f);
    std::vector<int> tuple(4);
    for (tuple[0] = 0; tuple[0] < 3; ++tuple[0])
      for (tuple[1] = 0; tuple[1] < 3; ++tuple[1])
        for (tuple[2] = 0; tuple[2] < 3; ++tuple[2])
          for (tuple[3] = 0; tuple[3] < 3; ++tuple[3]) {
            Rat literal = evaluate_indicator(lat, coeffs, tuple);
            CHECK(literal == indicator_oracle(lat, f, tuple));
            CHECK(literal == indicator_value_closed(lat, f, tuple));
          }
  }
}

TEST_CASE("closed form needs the full domain only off the diagonal") {
  // With includes_top = false the closed form still answers on constant
  // tuples: that value is the diagonal, not f(top).
  PartitionLattice lat(3);
  PartitionFunction f = distinctness_generator(lat);
  std::vector<int> constant = {5, 5, 5};
  CHECK(indicator_value_closed(lat, f, constant) == diagonal_value(lat, f));
}

TEST_CASE("distinctness generator") {
  PartitionLattice lat(4);
  PartitionFunction f = distinctness_generator(lat);
  CHECK(f.at(lat.bottom()) == 1);
  for (std::size_t i = 1; i < lat.size(); ++i) CHECK(f.at(i) == 0);

  std::vector<Rat> coeffs = indicator_coefficients(lat, f);
  for (std::size_t t = 0; t + 1 < lat.size(); ++t)
    CHECK(coeffs[t] == Rat(mobius_recursive(lat, lat.bottom(), t)));

  std::vector<int> distinct = {3, 1, 4, 2};
  std::vector<int> repeat = {3, 1, 3, 2};
  std::vector<int> constant = {2, 2, 2, 2};
  CHECK(evaluate_indicator(lat, coeffs, distinct) == 1);
  CHECK(evaluate_indicator(lat, coeffs, repeat) == 0);
  CHECK(evaluate_indicator(lat, coeffs, constant) == 6);  // -mu(bottom, top) = 3!
  CHECK(diagonal_value(lat, f) == 6);

  PartitionLattice lat3(3);
  CHECK(diagonal_value(lat3, distinctness_generator(lat3)) == -2);
}

TEST_CASE("rank generator: support, coefficients, diagonal") {
  for (int k = 3; k <= 5; ++k) {
    PartitionLattice lat(k);
    for (int r = 0; r <= k - 2; ++r) {
      PartitionFunction f = rank_generator(lat, r);
      for (std::size_t i = 0; i + 1 < lat.size(); ++i)
        if (lat.rank_of(i) < r) CHECK(f.at(i) == 0);
      for (std::size_t i = lat.rank_begin(r); i < lat.rank_end(r); ++i) CHECK(f.at(i) == 1);

      // Coefficient support is exactly rank r, each with coefficient 1.
      std::vector<Rat> coeffs = indicator_coefficients(lat, f);
      for (std::size_t t = 0; t + 1 < lat.size(); ++t)
        CHECK(coeffs[t] == (lat.rank_of(t) == r ? Rat(1) : Rat(0)));

      // On constant tuples every rank-r term fires at once.
      CHECK(diagonal_value(lat, f) == Rat(stirling_oracle(k, k - r)));
    }
    CHECK_THROWS_AS(rank_generator(lat, -1), invalid_config);
    CHECK_THROWS_AS(rank_generator(lat, k - 1), invalid_config);
  }
}

TEST_CASE("rank generator counts respected partitions of fixed rank") {
  PartitionLattice lat(4);
  PartitionFunction f = rank_generator(lat, 1);
  std::vector<Rat> coeffs = indicator_coefficients(lat, f);
  // (a,a,b,c): exactly one rank-1 partition (12|3|4) groups it.
  std::vector<int> one_pair = {7, 7, 8, 9};
  CHECK(evaluate_indicator(lat, coeffs, one_pair) == 1);
  // (a,a,b,b): rank-1 partitions respected are 12|3|4 and 1|2|34.
  std::vector<int> two_pairs = {7, 7, 8, 8};
  CHECK(evaluate_indicator(lat, coeffs, two_pairs) == 2);
  // (a,a,a,b): 12, 13, 23 pairings inside the triple.
  std::vector<int> triple = {7, 7, 7, 8};
  CHECK(evaluate_indicator(lat, coeffs, triple) == 3);
  std::vector<int> distinct = {1, 2, 3, 4};
  CHECK(evaluate_indicator(lat, coeffs, distinct) == 0);
}

TEST_CASE("zero-set generator fills non-minimal support by the kill recursion") {
  PartitionLattice lat(4);
  std::vector<std::size_t> support;
  support.push_back(lat.bottom());
  for (std::size_t i = lat.rank_begin(2); i < lat.rank_end(2); ++i) support.push_back(i);
  std::map<std::size_t, Rat> minima;
  minima[lat.bottom()] = 1;
  PartitionFunction f = zero_set_generator(lat, support, minima);

  CHECK(f.at(lat.bottom()) == 1);
  for (std::size_t i = lat.rank_begin(1); i < lat.rank_end(1); ++i) CHECK(f.at(i) == 0);
  // Rank-1 slots vanish, so the recursion at rank 2 reduces to -mu(bottom, .).
  for (std::size_t i = lat.rank_begin(2); i < lat.rank_end(2); ++i)
    CHECK(f.at(i) == Rat(-mobius_recursive(lat, lat.bottom(), i)));

  // Coefficients vanish exactly on the non-minimal support.
  std::vector<Rat> coeffs = indicator_coefficients(lat, f);
  CHECK(coeffs[lat.bottom()] == 1);
  for (std::size_t i = lat.rank_begin(2); i < lat.rank_end(2); ++i) CHECK(coeffs[i] == 0);
}

TEST_CASE("zero-set generator validates its keying") {
  PartitionLattice lat(3);
  std::vector<std::size_t> support = {lat.bottom(), lat.rank_begin(1)};
  std::map<std::size_t, Rat> wrong_key;
  wrong_key[lat.rank_begin(1)] = 1;  // non-minimal: bottom is in the support
  CHECK_THROWS_AS(zero_set_generator(lat, support, wrong_key), invalid_config);
  std::map<std::size_t, Rat> missing;
  CHECK_THROWS_AS(zero_set_generator(lat, support, missing), invalid_config);
  std::vector<std::size_t> with_top = {lat.bottom(), lat.top()};
  std::map<std::size_t, Rat> bot_only{{lat.bottom(), Rat(1)}};
  CHECK_THROWS_AS(zero_set_generator(lat, with_top, bot_only), invalid_config);
  CHECK_THROWS_AS(zero_set_generator(lat, {}, bot_only), invalid_config);
}

TEST_CASE("reduce_mod") {
  Field f5(FieldSpec{5, 1, {}});
  CHECK(reduce_mod(f5, Rat(7)) == 2);
  CHECK(reduce_mod(f5, Rat(-1)) == 4);
  CHECK(reduce_mod(f5, Rat(1, 3)) == 2);   // 3 * 2 = 6 = 1
  CHECK(reduce_mod(f5, Rat(2, 3)) == 4);
  CHECK_THROWS_AS(reduce_mod(f5, Rat(1, 5)), invalid_config);
  CHECK_THROWS_AS(reduce_mod(f5, Rat(3, 10)), invalid_config);

  std::vector<Rat> cs = {Rat(1, 2), Rat(-1)};
  std::vector<Fe> rs = reduce_coefficients(f5, cs);
  REQUIRE(rs.size() == 2);
  CHECK(rs[0] == 3);  // 2 * 3 = 6 = 1
  CHECK(rs[1] == 4);
}

TEST_CASE("harmonic recovery equals the direct inverse sum") {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    HarmonicRecoveryReport rep = harmonic_sum_recovery(p);
    CHECK(rep.p == p);
    CHECK(rep.matches_negated_mobius);

    Field f(FieldSpec{p, 1, {}});
    Fe want = 0;
    for (Fe j = 2; j < p; ++j) want = f.add(want, f.inv(j));
    CHECK(rep.harmonic_sum == want);
    CHECK(rep.full_sum == want);
    CHECK(rep.full_sum == p - 1);  // the sum is -1 in F_p
  }
  CHECK_THROWS_AS(harmonic_sum_recovery(4), invalid_config);
  CHECK_THROWS_AS(harmonic_sum_recovery(13), invalid_config);
}

TEST_CASE("evaluate_indicator_mod agrees with exact evaluation reduced") {
  PartitionLattice lat(3);
  Field f7(FieldSpec{7, 1, {}});
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 10; ++trial) {
    PartitionFunction f = random_function(lat, true, rng);
    std::vector<Rat> coeffs = indicator_coefficients(lat, f);
    std::vector<Fe> mod = reduce_coefficients(f7, coeffs);
    std::vector<Fe> tuple(3);
    for (tuple[0] = 0; tuple[0] < 7; ++tuple[0])
      for (tuple[1] = 0; tuple[1] < 7; ++tuple[1])
        for (tuple[2] = 0; tuple[2] < 7; ++tuple[2])
          CHECK(evaluate_indicator_mod(lat, f7, mod, tuple) ==
                reduce_mod(f7, evaluate_indicator(lat, coeffs, tuple)));
  }
}
