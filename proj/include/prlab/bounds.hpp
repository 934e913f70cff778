#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "prlab/field.hpp"
#include "prlab/ints.hpp"

namespace prlab {

struct CrossCheck {
  std::string description;
  bool pass = false;
  std::string detail;
};

struct BoundReport {
  std::string name;
  std::vector<std::pair<std::string, std::string>> inputs;
  Rat value;
  std::string formula;
  std::vector<CrossCheck> cross_checks;
  std::vector<std::string> flags;  // surfaced discrepancies, never silently resolved

  bool pass() const {
    for (const auto& c : cross_checks)
      if (!c.pass) return false;
    return true;
  }
};

// True when q = p^ell for an odd prime p; outputs the factorization.
bool odd_prime_power(std::uint64_t q, std::uint32_t* p_out = nullptr,
                     std::uint32_t* ell_out = nullptr);

// Threshold above which a set must contain an obtuse (equally, acute) triple:
// C(n+q+1, q-1) + 4 from the slice-count argument. The circulating statement
// C(n+q+1, q+1) + 4 is computed alongside and flagged when the two differ.
BoundReport bound_obtuse(int n, std::uint64_t q);

// Certified bracket for Gamma_{p,m} = min over (0,1) of
// phi(x) = (1 - x^p) / (x^((p-1)/m) (1 - x)).
// The minimizer is bracketed by exact bisection on the sign of the rational
// polynomial x(1-x^p) - p x^p (1-x) - e(1-x)(1-x^p), e = (p-1)/m, and the
// value is reported as a rational enclosure of phi at the bracket midpoint,
// rounded outward, so `upper` is a true upper bound for the minimum.
struct GammaResult {
  std::uint32_t p = 0;
  int m = 0;
  Rat x_lo, x_hi;    // bracket around the minimizer
  Rat x_probe;       // midpoint used for the reported value
  Rat upper;         // certified upper bound for Gamma_{p,m}
  Rat probe_lower;   // lower end of the enclosure of phi(x_probe)
  double upper_approx() const;
};
GammaResult gamma_minimum(std::uint32_t p, int m, const Rat& tol);

// Outward-rounded rational enclosure of phi at a rational point of (0,1).
Rat phi_upper(std::uint32_t p, int m, const Rat& x);
Rat phi_lower(std::uint32_t p, int m, const Rat& x);

// 1 <= Gamma_{p,m} < p over a (p, m) grid, plus monotonicity in m. The lower
// end is analytic: phi(x) = sum_{j=0}^{p-1} x^(j-e) has the j=0 term
// x^(-e) > 1 on (0,1), so the minimum exceeds 1 without numerics.
BoundReport gamma_range_check(std::span<const std::uint32_t> ps, std::span<const int> ms);

// |{v in {0..p-1}^n : sum v_i <= d}| by coordinate-wise convolution; the
// brute-force side of the moment-bound comparison.
Int exact_bounded_monomial_count(int n, std::uint32_t p, long long d);

// phi(x)^n rounded upward: an upper bound for the count above with
// d = floor(n(p-1)/m) at every x in (0,1).
Rat markov_bound(int n, std::uint32_t p, int m, const Rat& x);

// (2^k - k - 2) * Gamma_{p,m}^n with the Stirling coprimality hypothesis
// gcd(p, S(k,m)) = 1 checked and reported.
BoundReport bound_linear_equation(int n, std::uint32_t p, int k, int m);

// gamma = C_{k,m} * deg(g) * (q-1) with C_{r,m} = sum_l (1/l) C(r-1,l-1) S(m,l).
struct GammaExponent {
  int k = 0, m = 0;
  long long deg_g = 0;
  std::uint64_t q = 0;
  std::vector<Rat> c_rm;  // C_{r,m} for r = 1..k, index r-1
  Rat coefficient;        // C_{k,m} * deg_g (the q-free part)
  Rat gamma;              // coefficient * (q - 1)
  bool monotone = false;  // C_{1,m} <= ... <= C_{k,m}
  std::vector<std::string> flags;
};
GammaExponent gamma_exponent_identifier(int k, int m, long long deg_g, std::uint64_t q);

// sum_{r=2}^k S(k,r) r C(n+D_r, D_r) with D_r = C_{r,m} deg(g) (q-1) rounded
// up to an integer; non-integer exponents are flagged, not hidden.
struct PolyRankBound {
  Int value;
  Int simplified;  // (sum_r S(k,r) r) C(n+D_k, D_k)
  std::vector<long long> d_r;  // r = 2..k
  std::vector<std::pair<int, Rat>> ceiling_flags;  // (r, exact non-integer exponent)
};
PolyRankBound partition_rank_upper_bound_polynomial(int n, int k, int m, long long deg_g,
                                                    std::uint64_t q);

// (2^k - k - 2) * |{v : sum v_i <= floor(n(p-1)/m)}|: the exact summand count
// behind the linear-equation bound.
Int partition_rank_upper_bound_linear(int n, std::uint32_t p, int k, int m);

// The graded-poset diagonal identity on Pi_k: the rank-r generator's diagonal
// sum counts the rank-r elements, and sum_{l=1}^{k-1} (I - mu)^l = zeta - I
// in exact integer matrices (checked for k <= 6; the series is nilpotent).
struct PosetLemmaReport {
  int k = 0, r = 0;
  Rat lemma_value;
  Int rank_count;
  bool value_matches = false;
  bool reduced_matches = true;  // in the supplied field, when given
  bool matrix_identity = false;
  bool matrix_checked = false;
  int terms_used = 0;
  bool pass = false;
};
PosetLemmaReport verify_poset_lemma(int k, int r, const Field* fld = nullptr);

}  // namespace prlab
