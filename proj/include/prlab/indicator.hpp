#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "prlab/field.hpp"
#include "prlab/ints.hpp"
#include "prlab/lattice.hpp"

namespace prlab {

// f : Pi_k -> Q, indexed by the lattice's linear extension. Values are kept
// exact and reduced into a finite field on demand, so characteristic
// divisibility shows up as an explicit zero rather than silent wraparound.
// includes_top records which domain convention applies: the decomposition
// route defines f on all of Pi_k, the diagonalization route excludes the top.
struct PartitionFunction {
  int k = 0;
  bool includes_top = false;
  std::vector<Rat> values;  // one slot per lattice index; top slot stays 0 when excluded

  const Rat& at(std::size_t i) const { return values.at(i); }
};

// f(bottom) = 1, zero elsewhere.
PartitionFunction distinctness_generator(const PartitionLattice& lat);

// Zero below rank r, 1 at rank r, and above it the unique extension
// f(pi) = -sum_{tau<pi} f(tau) mu(tau,pi) that kills indicator coefficients
// above rank r. Rejects r outside [0, k-2]: the top is not in the domain.
PartitionFunction rank_generator(const PartitionLattice& lat, int r);

// General zero-set construction: f vanishes outside `support`, takes the
// given values on the minimal elements of support, and on non-minimal
// support elements is filled by the same recursion as rank_generator.
// minima_values must be keyed by exactly the minimal elements.
PartitionFunction zero_set_generator(const PartitionLattice& lat,
                                     const std::vector<std::size_t>& support,
                                     const std::map<std::size_t, Rat>& minima_values);

// c_tau = sum_{pi<=tau} f(pi) mu(pi,tau) for every tau below the top; the
// top slot of the result is unused and stays 0.
std::vector<Rat> indicator_coefficients(const PartitionLattice& lat, const PartitionFunction& f);

// -sum_{pi<top} f(pi) mu(pi,top): the value the indicator takes on constant
// tuples, and the quantity that must be a unit for diagonalization.
Rat diagonal_value(const PartitionLattice& lat, const PartitionFunction& f);

// Exact rational reduced mod p; rejects denominators divisible by p.
Fe reduce_mod(const Field& fld, const Rat& v);
std::vector<Fe> reduce_coefficients(const Field& fld, std::span<const Rat> coeffs);

// Literal evaluation sum_{tau<top} c_tau delta_tau(tuple). Kept as the
// definitional route; the closed form below must agree with it everywhere.
template <typename Range>
Rat evaluate_indicator(const PartitionLattice& lat, std::span<const Rat> coeffs,
                       const Range& tuple) {
  Rat s = 0;
  for (std::size_t t = 0; t + 1 < lat.size(); ++t) {
    if (coeffs[t] == 0) continue;
    if (tuple_respects(lat.partition(t), tuple)) s += coeffs[t];
  }
  return s;
}

template <typename Range>
Fe evaluate_indicator_mod(const PartitionLattice& lat, const Field& fld,
                          std::span<const Fe> coeffs, const Range& tuple) {
  Fe s = 0;
  for (std::size_t t = 0; t + 1 < lat.size(); ++t) {
    if (coeffs[t] == 0) continue;
    if (tuple_respects(lat.partition(t), tuple)) s = fld.add(s, coeffs[t]);
  }
  return s;
}

// Closed form: f(partition of the tuple) off the diagonal, diagonal_value on
// constant tuples.
template <typename Range>
Rat indicator_value_closed(const PartitionLattice& lat, const PartitionFunction& f,
                           const Range& tuple) {
  SetPartition pi = partition_of_tuple(tuple);
  if (pi.is_top()) return diagonal_value(lat, f);
  return f.at(lat.index_of(pi));
}

// Harmonic-number recovery over F_p: the zero-set generator supported on
// {bottom} union {rank p-2} with f(bottom) = 1 has f = -mu(bottom, .) at
// rank p-2, and its diagonal sum equals the inverse-harmonic sum
// sum_{j=2}^{p-1} j^{-1} = -1 in F_p.
struct HarmonicRecoveryReport {
  std::uint32_t p = 0;
  Fe full_sum = 0;       // sum_{pi<top} f(pi) mu(pi,top) mod p
  Fe harmonic_sum = 0;   // sum_{j=2}^{p-1} j^{-1} mod p
  bool matches_negated_mobius = false;
};
HarmonicRecoveryReport harmonic_sum_recovery(std::uint32_t p);

}  // namespace prlab
