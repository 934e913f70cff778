#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "prlab/errors.hpp"
#include "prlab/field.hpp"
#include "prlab/indicator.hpp"
#include "prlab/lattice.hpp"
#include "prlab/polynomial.hpp"
#include "prlab/property.hpp"
#include "prlab/verify.hpp"

using namespace prlab;

namespace {

FieldSpec fp(std::uint32_t p) { return FieldSpec{p, 1, {}}; }

PropertySpec balanced(std::uint32_t p, int n, std::vector<std::int64_t> coeffs) {
  PropertySpec spec;
  spec.kind = PropertyKind::balanced_linear_equation;
  spec.k = static_cast<int>(coeffs.size());
  spec.field = fp(p);
  spec.n = n;
  spec.coeffs = std::move(coeffs);
  return spec;
}

PropertySpec angles(PropertyKind kind, std::uint32_t p, int n, int k = 3) {
  PropertySpec spec;
  spec.kind = kind;
  spec.k = k;
  spec.field = fp(p);
  spec.n = n;
  return spec;
}

std::vector<Vec> tuple3(Vec x, Vec y, Vec z) { return {std::move(x), std::move(y), std::move(z)}; }

}  // namespace

TEST_CASE("polynomial expressions evaluate and track degree") {
  Field f7(fp(7));
  // g(x0, x1) = (x0[0] - x1[0])^2 + 3
  PolyExpr g = PolyExpr::add(
      PolyExpr::pow(PolyExpr::sub(PolyExpr::coord(0, 0), PolyExpr::coord(1, 0)), 2),
      PolyExpr::constant(3));
  CHECK(g.degree() == 2);
  CHECK(g.max_arg() == 1);
  CHECK(g.max_coord() == 0);
  std::vector<Vec> args = {{5}, {2}};
  CHECK(g.eval(f7, args) == (9 + 3) % 7);

  PolyExpr dot = dot_expr(0, 1, 2);
  std::vector<Vec> uv = {{1, 2}, {3, 4}};
  CHECK(dot.eval(f7, uv) == (3 + 8) % 7);
  CHECK(dot.degree() == 2);

  PolyExpr dd = diff_dot_expr(0, 1, 0, 2, 2);
  std::vector<Vec> xyz = {{0, 0}, {1, 0}, {0, 1}};
  CHECK(dd.eval(f7, xyz) == 0);  // orthogonal rays from the origin
}

TEST_CASE("built-in identifiers vanish where they should") {
  Field f5(fp(5));
  PolynomialSpec sq = squared_distance_identifier(2);
  CHECK(sq.m == 2);
  std::vector<Vec> same = {{1, 2}, {1, 2}};
  std::vector<Vec> diff = {{1, 2}, {1, 3}};
  CHECK(sq.expr.eval(f5, same) == 0);
  CHECK(sq.expr.eval(f5, diff) == 1);

  PolynomialSpec dd = distance_difference_identifier(2);
  CHECK(dd.m == 3);
  std::vector<Vec> chain = {{0, 0}, {1, 0}, {1, 1}};  // both gaps have length 1
  CHECK(dd.expr.eval(f5, chain) == 0);

  PolynomialSpec orth = orthogonality_identifier(2);
  CHECK(orth.m == 2);
  std::vector<Vec> perp = {{1, 0}, {0, 3}};
  CHECK(orth.expr.eval(f5, perp) == 0);
}

TEST_CASE("property validation rejects malformed specs") {
  Field f5(fp(5));
  PropertySpec unbalanced = balanced(5, 1, {1, 1, -1});
  CHECK_THROWS_AS(validate_property(unbalanced, f5), invalid_config);
  PropertySpec short_coeffs = balanced(5, 1, {1, -1});
  short_coeffs.k = 3;
  CHECK_THROWS_AS(validate_property(short_coeffs, f5), invalid_config);
  PropertySpec ident;
  ident.kind = PropertyKind::identifier;
  ident.k = 3;
  ident.field = fp(5);
  ident.g.reset();  // identifier without a polynomial
  CHECK_THROWS_AS(validate_property(ident, f5), invalid_config);
  PropertySpec angle = angles(PropertyKind::acute_angle, 5, 1);
  angle.k = 4;  // angles are ternary
  CHECK_THROWS_AS(validate_property(angle, f5), invalid_config);
}

TEST_CASE("balanced equation: predicate and tensor") {
  Field f5(fp(5));
  PropertySpec cap = balanced(5, 1, {1, 1, -2});
  validate_property(cap, f5);
  // x + y = 2z: three-term progressions. (1,3,2) solves, (1,2,0) does not.
  CHECK(property_holds(cap, f5, tuple3({1}, {3}, {2})));
  CHECK_FALSE(property_holds(cap, f5, tuple3({1}, {2}, {0})));
  CHECK(property_holds(cap, f5, tuple3({4}, {4}, {4})));  // constants always solve
  CHECK(tensor_value(cap, f5, tuple3({1}, {3}, {2})) == 1);
  CHECK(tensor_value(cap, f5, tuple3({1}, {2}, {0})) == 0);

  // Forbidden tuples are the non-constant solutions.
  CHECK_FALSE(forbidden_tuple(cap, f5, tuple3({4}, {4}, {4})));
  CHECK(forbidden_tuple(cap, f5, tuple3({1}, {3}, {2})));
  // max_distinct = 2 drops solutions using three values; x + y = 2z has no
  // two-valued non-constant solutions, so nothing is forbidden at that cap.
  PropertySpec capped = cap;
  capped.max_distinct = 2;
  CHECK_FALSE(forbidden_tuple(capped, f5, tuple3({1}, {3}, {2})));
  CHECK_FALSE(forbidden_tuple(capped, f5, tuple3({3}, {3}, {3})));
  CHECK_FALSE(forbidden_tuple(capped, f5, tuple3({0}, {4}, {2})));
}

TEST_CASE("angle tensors on scalar triples in F_5") {
  Field f5(fp(5));
  PropertySpec acute = angles(PropertyKind::acute_angle, 5, 1);
  PropertySpec obtuse = angles(PropertyKind::obtuse_angle, 5, 1);
  // 2(x-y)(x-z) for x,y,z = 0,1,2 is 2*1*2 = 4, a square: acute at x.
  auto t_acute = tuple3({0}, {1}, {2});
  CHECK(property_holds(acute, f5, t_acute));
  CHECK(tensor_value(acute, f5, t_acute) == 1);
  CHECK_FALSE(property_holds(obtuse, f5, t_acute));
  // 2(x-y)(x-z) for 0,1,4 is 2*4*1 = 3, a nonsquare: obtuse at x.
  auto t_obtuse = tuple3({0}, {1}, {4});
  CHECK(property_holds(obtuse, f5, t_obtuse));
  CHECK(tensor_value(obtuse, f5, t_obtuse) == 1);
  CHECK_FALSE(property_holds(acute, f5, t_obtuse));
  // The complementary class takes value 1 - 4 = -3 = 2 mod 5, not 0.
  CHECK(tensor_value(acute, f5, t_obtuse) == 2);
  CHECK(tensor_value(obtuse, f5, t_acute) == 2);
  // Coincident entries kill both tensors.
  CHECK(tensor_value(acute, f5, tuple3({0}, {0}, {2})) == 0);
  CHECK(tensor_value(acute, f5, tuple3({0}, {2}, {2})) == 0);
  CHECK(tensor_value(obtuse, f5, tuple3({3}, {3}, {3})) == 0);
}

TEST_CASE("right-angle tensor indicates distinct non-right triples") {
  Field f3(fp(3));
  PropertySpec right = angles(PropertyKind::right_angle_triple, 3, 2);
  std::vector<Vec> corner = {{0, 0}, {1, 0}, {0, 1}};  // right angle at the first entry
  CHECK(property_holds(right, f3, corner));
  CHECK(tensor_value(right, f3, corner) == 0);  // the tensor vanishes on the property
  std::vector<Vec> skew = {{0, 0}, {1, 0}, {1, 1}};  // <(1,0),(1,1)> = 1
  CHECK_FALSE(property_holds(right, f3, skew));
  CHECK(tensor_value(right, f3, skew) == 1);
  std::vector<Vec> coincident = {{0, 0}, {1, 0}, {1, 0}};
  CHECK(tensor_value(right, f3, coincident) == 0);
}

TEST_CASE("semantics verifier: acute angles in F_5, exhaustive") {
  Field f5(fp(5));
  SemanticsReport rep = verify_tensor_semantics(angles(PropertyKind::acute_angle, 5, 1), f5,
                                                VerifyMode::exhaustive);
  CHECK(rep.pass);
  CHECK(rep.mode == "exhaustive");
  CHECK(rep.tuples_checked == 125);
  const ClaimResult* iff = rep.claim("tensor_one_iff_property");
  REQUIRE(iff != nullptr);
  CHECK(iff->fatal);
  CHECK(iff->violations.empty());
  const ClaimResult* zo = rep.claim("tensor_zero_one");
  REQUIRE(zo != nullptr);
  CHECK_FALSE(zo->fatal);
  CHECK_FALSE(zo->violations.empty());
  CHECK(zo->violations.witnesses.size() <= ViolationList::witness_cap);
  CHECK(zo->violations.count >= zo->violations.witnesses.size());
}

TEST_CASE("semantics verifier: characteristic 3 collapses the gap value") {
  Field f3(fp(3));
  SemanticsReport rep = verify_tensor_semantics(angles(PropertyKind::acute_angle, 3, 1), f3,
                                                VerifyMode::exhaustive);
  CHECK(rep.pass);
  const ClaimResult* zo = rep.claim("tensor_zero_one");
  REQUIRE(zo != nullptr);
  CHECK(zo->violations.empty());  // -3 = 0 mod 3
}

TEST_CASE("semantics verifier: balanced claims are all fatal and pass") {
  Field f7(fp(7));
  SemanticsReport rep =
      verify_tensor_semantics(balanced(7, 1, {1, 2, -3}), f7, VerifyMode::exhaustive);
  CHECK(rep.pass);
  for (const auto& c : rep.claims) {
    CHECK(c.fatal);
    CHECK(c.violations.empty());
  }
}

TEST_CASE("semantics verifier: budget and sampling") {
  Field f7(fp(7));
  PropertySpec right = angles(PropertyKind::right_angle_triple, 7, 2);
  CHECK_THROWS_AS(
      verify_tensor_semantics(right, f7, VerifyMode::exhaustive, 1000),
      budget_exceeded);  // 49^3 tuples

  SemanticsReport a = verify_tensor_semantics(right, f7, VerifyMode::sampled, 1000000, 42, 500);
  SemanticsReport b = verify_tensor_semantics(right, f7, VerifyMode::sampled, 1000000, 42, 500);
  CHECK(a.tuples_checked == 500);
  CHECK(a.pass);
  CHECK(b.pass);
  REQUIRE(a.claims.size() == b.claims.size());
  for (std::size_t i = 0; i < a.claims.size(); ++i)
    CHECK(a.claims[i].violations.count == b.claims[i].violations.count);
}

TEST_CASE("decomposition: two points always split as indicator minus tensor") {
  PartitionLattice lat(3);
  Field f5(fp(5));
  PartitionFunction f = distinctness_generator(lat);
  f.includes_top = true;
  std::vector<Vec> two = {{0}, {1}};
  DecompositionReport rep =
      verify_decomposition(lat, f, angles(PropertyKind::acute_angle, 5, 1), f5, two);
  CHECK(rep.pass);
  CHECK(rep.identity_holds);
  CHECK(rep.scalar_rational == Rat(-2));  // -mu(bottom, top) with f(top) = 0
  CHECK(rep.scalar == 3);
  CHECK(rep.scalar_nonzero);
  CHECK(rep.tuples_checked == 8);
}

TEST_CASE("decomposition: all-acute line in the plane over F_3") {
  PartitionLattice lat(3);
  Field f3(fp(3));
  PartitionFunction f = distinctness_generator(lat);
  f.includes_top = true;
  std::vector<Vec> line = {{0, 0}, {1, 0}, {2, 0}};
  DecompositionReport rep =
      verify_decomposition(lat, f, angles(PropertyKind::acute_angle, 3, 2), f3, line);
  CHECK(rep.pass);
  CHECK(rep.identity_holds);
  CHECK(rep.scalar_rational == Rat(-2));
  CHECK(rep.scalar == 1);  // -2 mod 3
  CHECK(rep.tuples_checked == 27);
}

TEST_CASE("decomposition: honest failure on a set where the tensor is not the indicator") {
  // The triple below is distinct and obtuse at its first entry, so the acute
  // tensor takes -3 there while the distinctness indicator takes 1: the
  // identity cannot hold and the report must say so.
  PartitionLattice lat(3);
  Field f5(fp(5));
  PartitionFunction f = distinctness_generator(lat);
  f.includes_top = true;
  std::vector<Vec> col = {{0, 0}, {0, 1}, {0, 4}};  // 2<d1,d2> = 2*4 = 3, a nonsquare
  DecompositionReport rep =
      verify_decomposition(lat, f, angles(PropertyKind::acute_angle, 5, 2), f5, col);
  CHECK_FALSE(rep.identity_holds);
  CHECK_FALSE(rep.pass);
  CHECK_FALSE(rep.identity_violations.empty());
}

TEST_CASE("decomposition requires the full domain") {
  PartitionLattice lat(3);
  Field f5(fp(5));
  PartitionFunction f = distinctness_generator(lat);  // includes_top = false
  std::vector<Vec> two = {{0}, {1}};
  CHECK_THROWS_AS(
      verify_decomposition(lat, f, angles(PropertyKind::acute_angle, 5, 1), f5, two),
      invalid_config);
}

TEST_CASE("diagonalization: passing instance in F_5") {
  PartitionLattice lat(3);
  Field f5(fp(5));
  PartitionFunction f = distinctness_generator(lat);
  std::vector<Vec> a = {{0}, {1}};
  DiagonalizationReport rep =
      verify_diagonalization(lat, f, balanced(5, 1, {1, 1, -2}), f5, a);
  CHECK(rep.pass);
  CHECK(rep.cond1_constants_satisfy);
  CHECK(rep.cond2_violations.empty());
  CHECK(rep.cond3_violations.empty());
  CHECK(rep.cond4_nonzero);
  CHECK(rep.diagonal_rational == Rat(-2));
  CHECK(rep.diagonal == 3);
  CHECK(rep.offdiagonal_violations.empty());
  CHECK(rep.diagonal_violations.empty());
  CHECK(rep.diagonal_nonzero);
}

TEST_CASE("diagonalization: characteristic divides the diagonal, condition 4 flags") {
  PartitionLattice lat(3);
  Field f3(fp(3));
  PartitionFunction f = rank_generator(lat, 1);  // diagonal S(3,2) = 3 = 0 mod 3
  std::vector<Vec> a = {{0}, {1}};
  DiagonalizationReport rep =
      verify_diagonalization(lat, f, balanced(3, 1, {1, 1, -2}), f3, a);
  CHECK_FALSE(rep.pass);
  CHECK(rep.cond1_constants_satisfy);
  CHECK(rep.cond2_violations.empty());
  CHECK(rep.cond3_violations.empty());
  CHECK_FALSE(rep.cond4_nonzero);
  CHECK(rep.diagonal_rational == Rat(3));
  CHECK(rep.diagonal == 0);
}

TEST_CASE("diagonalization: condition 2 catches sets with extra solutions") {
  // A = {0, 1, 2} in F_3 contains the non-constant progression, so the tensor
  // is 1 somewhere the distinctness construction expects solution-freeness.
  PartitionLattice lat(3);
  Field f3(fp(3));
  PartitionFunction f = distinctness_generator(lat);
  std::vector<Vec> a = {{0}, {1}, {2}};
  DiagonalizationReport rep =
      verify_diagonalization(lat, f, balanced(3, 1, {1, 1, -2}), f3, a);
  CHECK_FALSE(rep.pass);
  bool all_clean = rep.cond2_violations.empty() && rep.cond3_violations.empty() &&
                   rep.offdiagonal_violations.empty();
  CHECK_FALSE(all_clean);
}

TEST_CASE("tensor memoization returns identical values") {
  Field f5(fp(5));
  PropertySpec acute = angles(PropertyKind::acute_angle, 5, 1);
  TensorEval eval(acute, f5);
  std::vector<Vec> pts = {{0}, {1}, {2}};
  Fe first = eval(pts);
  CHECK(first == tensor_value(acute, f5, pts));
  CHECK(eval(pts) == first);
  CHECK(eval.memo_size() == 1);
}
