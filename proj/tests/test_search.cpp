#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "prlab/bounds.hpp"
#include "prlab/errors.hpp"
#include "prlab/field.hpp"
#include "prlab/property.hpp"
#include "prlab/search.hpp"

using namespace prlab;

namespace {

FieldSpec fp(std::uint32_t p) { return FieldSpec{p, 1, {}}; }

PropertySpec cap_property(std::uint32_t p, int n) {
  PropertySpec spec;
  spec.kind = PropertyKind::balanced_linear_equation;
  spec.k = 3;
  spec.field = fp(p);
  spec.n = n;
  spec.coeffs = {1, 1, -2};
  return spec;
}

SearchConfig cap_config(std::uint32_t p, int n) {
  SearchConfig config;
  config.field = fp(p);
  config.n = n;
  config.property = cap_property(p, n);
  return config;
}

std::vector<Vec> scalar_points(std::initializer_list<Fe> vals) {
  std::vector<Vec> pts;
  for (Fe v : vals) pts.push_back(Vec{v});
  return pts;
}

}  // namespace

TEST_CASE("avoidance check: witnesses come out in enumeration order") {
  Field f3(fp(3));
  PropertySpec cap = cap_property(3, 1);

  AvoidanceCheck ok = check_avoids(cap, f3, scalar_points({0, 1}));
  CHECK(ok.pass);
  CHECK(ok.witness.empty());

  AvoidanceCheck bad = check_avoids(cap, f3, scalar_points({0, 1, 2}));
  CHECK_FALSE(bad.pass);
  REQUIRE(bad.witness.size() == 3);
  CHECK(bad.witness[0] == Vec{0});
  CHECK(bad.witness[1] == Vec{1});
  CHECK(bad.witness[2] == Vec{2});  // 0 + 1 = 2 * 2 in F_3

  CHECK(check_avoids(cap, f3, {}).pass);
  CHECK(check_avoids(cap, f3, scalar_points({2})).pass);  // constants never forbidden
}

TEST_CASE("avoidance check honors its budget") {
  Field f3(fp(3));
  CHECK_THROWS_AS(check_avoids(cap_property(3, 1), f3, scalar_points({0, 1, 2}), 26),
                  budget_exceeded);  // 27 tuples needed
  CHECK_NOTHROW(check_avoids(cap_property(3, 1), f3, scalar_points({0, 1}), 8));
}

TEST_CASE("incremental avoidance agrees with the full scan on growing sets") {
  Field f3(fp(3));
  PropertySpec cap = cap_property(3, 1);
  std::vector<Vec> pts = scalar_points({0, 1});
  CHECK(check_avoids_incremental(cap, f3, pts).pass);
  pts.push_back(Vec{2});
  AvoidanceCheck inc = check_avoids_incremental(cap, f3, pts);
  AvoidanceCheck full = check_avoids(cap, f3, pts);
  CHECK_FALSE(inc.pass);
  CHECK_FALSE(full.pass);
  REQUIRE(inc.witness.size() == 3);
  // The incremental witness must use the new point.
  bool uses_new = false;
  for (const Vec& v : inc.witness) uses_new = uses_new || v == Vec{2};
  CHECK(uses_new);
}

TEST_CASE("translation invariance sampling accepts shift-invariant kinds") {
  Field f3(fp(3));
  CHECK(sampled_translation_invariance(cap_property(3, 1), f3, 1, 7));
  CHECK(translation_invariant_kind(PropertyKind::balanced_linear_equation));
  CHECK(translation_invariant_kind(PropertyKind::acute_angle));
  CHECK_FALSE(translation_invariant_kind(PropertyKind::pairwise_orthogonal));
}

TEST_CASE("exact search: progression-free maximum in F_3 is 2") {
  SearchResult res = max_avoiding_set(cap_config(3, 1));
  CHECK(res.size == 2);
  CHECK(res.exact_optimal);
  CHECK(res.witness_check);
  CHECK(res.symmetry_applied);
  REQUIRE(res.best_set.size() == 2);
  CHECK(res.best_set[0] == Vec{0});
  CHECK(res.best_set[1] == Vec{1});
  CHECK(res.point_order.size() == 3);

  SearchResult naive = max_avoiding_set_naive(cap_config(3, 1));
  CHECK(naive.size == 2);
  CHECK(naive.exact_optimal);
  CHECK(naive.best_set == res.best_set);
}

TEST_CASE("exact search: progression-free maximum in F_5 is 2") {
  SearchResult res = max_avoiding_set(cap_config(5, 1));
  SearchResult naive = max_avoiding_set_naive(cap_config(5, 1));
  CHECK(res.size == 2);
  CHECK(naive.size == 2);
  CHECK(res.best_set == naive.best_set);
}

TEST_CASE("exact search: progression-free maximum in the plane over F_3 is 4") {
  SearchResult res = max_avoiding_set(cap_config(3, 2));
  CHECK(res.size == 4);
  CHECK(res.exact_optimal);
  CHECK(res.witness_check);

  SearchResult naive = max_avoiding_set_naive(cap_config(3, 2));
  CHECK(naive.size == 4);
  CHECK(naive.best_set == res.best_set);
}

TEST_CASE("determinism: thread count never changes the answer") {
  SearchConfig one = cap_config(3, 2);
  one.threads = 1;
  SearchConfig four = cap_config(3, 2);
  four.threads = 4;
  SearchResult a = max_avoiding_set(one);
  SearchResult b = max_avoiding_set(four);
  CHECK(a.size == b.size);
  CHECK(a.best_set == b.best_set);
  CHECK(a.nodes_explored == b.nodes_explored);
  CHECK(a.point_order == b.point_order);
  CHECK(a.exact_optimal == b.exact_optimal);

  SearchResult c = max_avoiding_set(four);
  CHECK(c.best_set == b.best_set);
  CHECK(c.nodes_explored == b.nodes_explored);
}

TEST_CASE("symmetry reduction changes work, not answers") {
  SearchConfig with = cap_config(3, 2);
  SearchConfig without = cap_config(3, 2);
  without.symmetry_reduction = false;
  SearchResult a = max_avoiding_set(with);
  SearchResult b = max_avoiding_set(without);
  CHECK(a.symmetry_applied);
  CHECK_FALSE(b.symmetry_applied);
  CHECK(a.size == b.size);
  CHECK(b.exact_optimal);
}

TEST_CASE("degree ordering is recorded and preserves the maximum") {
  SearchConfig lex = cap_config(3, 2);
  SearchConfig deg = cap_config(3, 2);
  deg.ordering = PointOrdering::degree;
  SearchResult a = max_avoiding_set(lex);
  SearchResult b = max_avoiding_set(deg);
  CHECK(a.size == b.size);
  CHECK(b.point_order.size() == 9);

  // The guard on the degree precomputation: 343^3 tuples is over the line.
  SearchConfig big;
  big.field = fp(7);
  big.n = 3;
  big.property = cap_property(7, 3);
  big.max_points = 400;
  big.ordering = PointOrdering::degree;
  CHECK_THROWS_AS(max_avoiding_set(big), invalid_config);
}

TEST_CASE("greedy and random restart modes") {
  SearchConfig greedy = cap_config(3, 2);
  greedy.mode = SearchMode::greedy;
  SearchResult g = max_avoiding_set(greedy);
  CHECK_FALSE(g.exact_optimal);
  CHECK(g.witness_check);
  CHECK(g.size <= 4);
  CHECK(g.size >= 1);

  SearchConfig rr = cap_config(3, 2);
  rr.mode = SearchMode::random_restart;
  rr.seed = 99;
  rr.restarts = 16;
  SearchResult r1 = max_avoiding_set(rr);
  SearchResult r2 = max_avoiding_set(rr);
  CHECK(r1.size == r2.size);
  CHECK(r1.best_set == r2.best_set);
  CHECK(r1.size >= g.size);  // the unshuffled greedy pass is restart zero's baseline
  CHECK_FALSE(r1.exact_optimal);

  SearchConfig bad = rr;
  bad.restarts = 0;
  CHECK_THROWS_AS(max_avoiding_set(bad), invalid_config);
}

TEST_CASE("node budget truncation is reported, not hidden") {
  SearchConfig tight = cap_config(3, 2);
  tight.node_budget = 4;  // split across tasks, exhausted immediately
  SearchResult res = max_avoiding_set(tight);
  CHECK_FALSE(res.exact_optimal);
  CHECK(res.witness_check);  // the greedy seed still verifies
  CHECK(res.size >= 1);
}

TEST_CASE("search validates its configuration") {
  SearchConfig bad_n = cap_config(3, 1);
  bad_n.n = 0;
  CHECK_THROWS_AS(max_avoiding_set(bad_n), invalid_config);

  SearchConfig too_big;
  too_big.field = fp(7);
  too_big.n = 3;  // 343 points > default ceiling 200
  too_big.property = cap_property(7, 3);
  CHECK_THROWS_AS(max_avoiding_set(too_big), invalid_config);

  SearchConfig naive_cap = cap_config(7, 2);  // 49 points: fine for exact,
  naive_cap.max_points = 50;                  // over the naive oracle's 30-point cap
  CHECK_THROWS_AS(max_avoiding_set_naive(naive_cap), invalid_config);
}

TEST_CASE("sandwich report: consistent bound and loud refutation") {
  SearchConfig config = cap_config(3, 2);
  BoundReport bound = bound_linear_equation(2, 3, 3, 3);
  SandwichReport rep = sandwich_report(config, bound);
  CHECK(rep.consistent);
  CHECK(rep.search.size == 4);
  CHECK(rep.bound_name == bound.name);
  CHECK(rep.bound_value == bound.value);
  CHECK(Rat(static_cast<std::uint64_t>(rep.search.size)) <= rep.bound_value);

  BoundReport fake;
  fake.name = "deliberately_false_bound";
  fake.value = Rat(1);
  CHECK_THROWS_AS(sandwich_report(config, fake), check_failure);
}
