#include "prlab/ints.hpp"

#include "prlab/errors.hpp"

namespace prlab {

Int factorial(unsigned n) {
  Int r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

Int binomial(const Int& n, unsigned k) {
  if (n < 0) throw invalid_config("binomial: negative upper index");
  if (Int(k) > n) return 0;
  Int r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - (i - 1);
    r /= i;  // exact at every step: r is C(n, i) * i! / i!
  }
  return r;
}

Int iroot_floor(const Int& n, unsigned r) {
  if (n < 0) throw invalid_config("iroot_floor: negative radicand");
  if (r == 0) throw invalid_config("iroot_floor: zeroth root");
  if (n == 0 || n == 1 || r == 1) return n;
  // Newton iteration from an over-estimate; converges to floor(n^(1/r)).
  unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(n)) + 1;
  Int x = Int(1) << (bits / r + 1);
  while (true) {
    Int xr1 = pow_int(x, r - 1);
    Int next = ((r - 1) * x + n / xr1) / r;
    if (next >= x) break;
    x = next;
  }
  while (pow_int(x, r) > n) --x;
  while (pow_int(x + 1, r) <= n) ++x;
  return x;
}

Int iroot_ceil(const Int& n, unsigned r) {
  Int f = iroot_floor(n, r);
  return pow_int(f, r) == n ? f : f + 1;
}

Int pow_int(const Int& base, unsigned e) {
  Int r = 1, b = base;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

Int ceil_rat(const Rat& r) {
  Int n = numer(r), d = denom(r);
  Int q = n / d;
  if (q * d != n && n > 0) ++q;
  return q;
}

std::string to_string(const Int& v) { return v.str(); }

std::string to_string(const Rat& v) {
  if (is_integer(v)) return numer(v).str();
  return numer(v).str() + "/" + denom(v).str();
}

}  // namespace prlab
