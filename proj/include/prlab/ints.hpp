#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>

namespace prlab {

// Exact arbitrary-precision integers and rationals. All combinatorial
// quantities (factorials, binomials, Stirling/Bell numbers, bound values)
// are kept exact; floating point never enters any identity check.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

Int factorial(unsigned n);

// binomial(n, k) with n possibly large; k is clamped small by callers.
Int binomial(const Int& n, unsigned k);

// Largest t >= 0 with t^r <= n. Requires n >= 0, r >= 1.
Int iroot_floor(const Int& n, unsigned r);

// Smallest t >= 0 with t^r >= n.
Int iroot_ceil(const Int& n, unsigned r);

Int pow_int(const Int& base, unsigned e);

inline Int numer(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int denom(const Rat& r) { return boost::multiprecision::denominator(r); }
inline bool is_integer(const Rat& r) { return denom(r) == 1; }

// Ceiling of a nonnegative rational.
Int ceil_rat(const Rat& r);

std::string to_string(const Int& v);
std::string to_string(const Rat& v);

}  // namespace prlab
