#include "prlab/polynomial.hpp"

#include <algorithm>

#include "prlab/errors.hpp"

namespace prlab {

PolyExpr PolyExpr::constant(std::int64_t c) {
  auto n = std::make_shared<Node>();
  n->op = Op::constant;
  n->cval = c;
  return PolyExpr(std::move(n));
}

PolyExpr PolyExpr::coord(int arg, int s) {
  if (arg < 0 || s < 0) throw invalid_config("polynomial: negative argument or coordinate index");
  auto n = std::make_shared<Node>();
  n->op = Op::coord;
  n->arg = arg;
  n->s = s;
  return PolyExpr(std::move(n));
}

PolyExpr PolyExpr::add(PolyExpr a, PolyExpr b) {
  auto n = std::make_shared<Node>();
  n->op = Op::add;
  n->a = std::move(a.n_);
  n->b = std::move(b.n_);
  return PolyExpr(std::move(n));
}

PolyExpr PolyExpr::sub(PolyExpr a, PolyExpr b) {
  auto n = std::make_shared<Node>();
  n->op = Op::sub;
  n->a = std::move(a.n_);
  n->b = std::move(b.n_);
  return PolyExpr(std::move(n));
}

PolyExpr PolyExpr::mul(PolyExpr a, PolyExpr b) {
  auto n = std::make_shared<Node>();
  n->op = Op::mul;
  n->a = std::move(a.n_);
  n->b = std::move(b.n_);
  return PolyExpr(std::move(n));
}

PolyExpr PolyExpr::pow(PolyExpr a, unsigned e) {
  auto n = std::make_shared<Node>();
  n->op = Op::pow;
  n->exp = e;
  n->a = std::move(a.n_);
  return PolyExpr(std::move(n));
}

long long PolyExpr::degree() const {
  switch (n_->op) {
    case Op::constant:
      return 0;
    case Op::coord:
      return 1;
    case Op::add:
    case Op::sub:
      return std::max(left().degree(), right().degree());
    case Op::mul:
      return left().degree() + right().degree();
    case Op::pow:
      return static_cast<long long>(n_->exp) * left().degree();
  }
  return 0;
}

int PolyExpr::max_arg() const {
  switch (n_->op) {
    case Op::constant:
      return -1;
    case Op::coord:
      return n_->arg;
    case Op::add:
    case Op::sub:
    case Op::mul:
      return std::max(left().max_arg(), right().max_arg());
    case Op::pow:
      return left().max_arg();
  }
  return -1;
}

int PolyExpr::max_coord() const {
  switch (n_->op) {
    case Op::constant:
      return -1;
    case Op::coord:
      return n_->s;
    case Op::add:
    case Op::sub:
    case Op::mul:
      return std::max(left().max_coord(), right().max_coord());
    case Op::pow:
      return left().max_coord();
  }
  return -1;
}

Fe PolyExpr::eval(const Field& fld, std::span<const Vec> args) const {
  switch (n_->op) {
    case Op::constant:
      return fld.from_int(n_->cval);
    case Op::coord: {
      if (static_cast<std::size_t>(n_->arg) >= args.size())
        throw invalid_config("polynomial: argument index out of range");
      const Vec& v = args[static_cast<std::size_t>(n_->arg)];
      if (static_cast<std::size_t>(n_->s) >= v.size())
        throw invalid_config("polynomial: coordinate index out of range");
      return v[static_cast<std::size_t>(n_->s)];
    }
    case Op::add:
      return fld.add(left().eval(fld, args), right().eval(fld, args));
    case Op::sub:
      return fld.sub(left().eval(fld, args), right().eval(fld, args));
    case Op::mul:
      return fld.mul(left().eval(fld, args), right().eval(fld, args));
    case Op::pow:
      return fld.pow(left().eval(fld, args), n_->exp);
  }
  return 0;
}

PolyExpr dot_expr(int arg_a, int arg_b, int n) {
  if (n < 1) throw invalid_config("polynomial: dimension must be positive");
  PolyExpr s = PolyExpr::mul(PolyExpr::coord(arg_a, 0), PolyExpr::coord(arg_b, 0));
  for (int i = 1; i < n; ++i)
    s = PolyExpr::add(std::move(s),
                      PolyExpr::mul(PolyExpr::coord(arg_a, i), PolyExpr::coord(arg_b, i)));
  return s;
}

PolyExpr diff_dot_expr(int arg_a, int arg_b, int arg_c, int arg_d, int n) {
  if (n < 1) throw invalid_config("polynomial: dimension must be positive");
  auto term = [&](int i) {
    return PolyExpr::mul(PolyExpr::sub(PolyExpr::coord(arg_a, i), PolyExpr::coord(arg_b, i)),
                         PolyExpr::sub(PolyExpr::coord(arg_c, i), PolyExpr::coord(arg_d, i)));
  };
  PolyExpr s = term(0);
  for (int i = 1; i < n; ++i) s = PolyExpr::add(std::move(s), term(i));
  return s;
}

PolynomialSpec squared_distance_identifier(int n) {
  return PolynomialSpec{2, diff_dot_expr(0, 1, 0, 1, n)};
}

PolynomialSpec distance_difference_identifier(int n) {
  return PolynomialSpec{
      3, PolyExpr::sub(diff_dot_expr(0, 1, 0, 1, n), diff_dot_expr(1, 2, 1, 2, n))};
}

PolynomialSpec orthogonality_identifier(int n) { return PolynomialSpec{2, dot_expr(0, 1, n)}; }

}  // namespace prlab
