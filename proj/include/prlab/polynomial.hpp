#pragma once

#include <cstdint>
#include <memory>
#include <span>

#include "prlab/field.hpp"

namespace prlab {

// Immutable arithmetic expression over the coordinates of m vector arguments,
// with integer constants reduced into the evaluation field. Degree is the
// syntactic total degree across all coordinate variables (no cancellation).
class PolyExpr {
 public:
  enum class Op { constant, coord, add, sub, mul, pow };

  static PolyExpr constant(std::int64_t c);
  static PolyExpr coord(int arg, int s);
  static PolyExpr add(PolyExpr a, PolyExpr b);
  static PolyExpr sub(PolyExpr a, PolyExpr b);
  static PolyExpr mul(PolyExpr a, PolyExpr b);
  static PolyExpr pow(PolyExpr a, unsigned e);

  Op op() const { return n_->op; }
  std::int64_t constant_value() const { return n_->cval; }
  int arg_index() const { return n_->arg; }
  int coord_index() const { return n_->s; }
  unsigned exponent() const { return n_->exp; }
  PolyExpr left() const { return PolyExpr(n_->a); }
  PolyExpr right() const { return PolyExpr(n_->b); }

  long long degree() const;
  int max_arg() const;    // highest argument index used, -1 if none
  int max_coord() const;  // highest coordinate index used, -1 if none

  Fe eval(const Field& fld, std::span<const Vec> args) const;

 private:
  struct Node {
    Op op;
    std::int64_t cval = 0;
    int arg = 0, s = 0;
    unsigned exp = 0;
    std::shared_ptr<const Node> a, b;
  };
  explicit PolyExpr(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

// g : (F_q^n)^m -> F_q together with its declared vector arity.
struct PolynomialSpec {
  int m = 0;
  PolyExpr expr = PolyExpr::constant(0);

  long long degree() const { return expr.degree(); }
};

// sum_s x_a(s) x_b(s) over n coordinates.
PolyExpr dot_expr(int arg_a, int arg_b, int n);
// sum_s (x_a(s) - x_b(s)) (x_c(s) - x_d(s)).
PolyExpr diff_dot_expr(int arg_a, int arg_b, int arg_c, int arg_d, int n);

// ||x_0 - x_1||^2: vanishes on equal arguments, degree 2.
PolynomialSpec squared_distance_identifier(int n);
// ||x_0 - x_1||^2 - ||x_1 - x_2||^2: equal-distance chain condition, degree 2.
PolynomialSpec distance_difference_identifier(int n);
// <x_0, x_1>: orthogonality; vanishes on equal arguments only at isotropic
// points, which verify_tensor_semantics reports.
PolynomialSpec orthogonality_identifier(int n);

}  // namespace prlab
