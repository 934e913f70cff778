#include "prlab/indicator.hpp"

#include <algorithm>
#include <string>

#include "prlab/errors.hpp"

namespace prlab {

namespace {

void check_shape(const PartitionLattice& lat, const PartitionFunction& f) {
  if (f.k != lat.k() || f.values.size() != lat.size())
    throw invalid_config("partition function: shape does not match the lattice");
  if (!f.includes_top && f.values[lat.top()] != 0)
    throw invalid_config("partition function: top value set but domain excludes the top");
}

// f(pi) = -sum_{tau<pi} f(tau) mu(tau,pi), evaluated in index order so every
// dependency is already final.
Rat recursion_value(const PartitionLattice& lat, const std::vector<Rat>& vals, std::size_t pi) {
  Rat s = 0;
  for (const auto& e : lat.down(pi)) {
    if (e.index == pi) continue;
    if (vals[e.index] == 0) continue;
    s += vals[e.index] * e.mu;
  }
  return -s;
}

}  // namespace

PartitionFunction distinctness_generator(const PartitionLattice& lat) {
  PartitionFunction f{lat.k(), false, std::vector<Rat>(lat.size(), Rat(0))};
  f.values[lat.bottom()] = 1;
  return f;
}

PartitionFunction rank_generator(const PartitionLattice& lat, int r) {
  if (r < 0 || r > lat.k() - 2)
    throw invalid_config("rank generator: r must be in [0, k-2]; the top partition is the "
                         "unique element of rank k-1 and lies outside the domain");
  PartitionFunction f{lat.k(), false, std::vector<Rat>(lat.size(), Rat(0))};
  for (std::size_t i = lat.rank_begin(r); i < lat.rank_end(r); ++i) f.values[i] = 1;
  for (std::size_t i = lat.rank_end(r); i + 1 < lat.size(); ++i)
    f.values[i] = recursion_value(lat, f.values, i);
  return f;
}

PartitionFunction zero_set_generator(const PartitionLattice& lat,
                                     const std::vector<std::size_t>& support,
                                     const std::map<std::size_t, Rat>& minima_values) {
  if (support.empty()) throw invalid_config("zero-set generator: empty support");
  std::vector<char> in_support(lat.size(), 0);
  for (std::size_t i : support) {
    if (i >= lat.size()) throw invalid_config("zero-set generator: support index out of range");
    if (i == lat.top()) throw invalid_config("zero-set generator: support must exclude the top");
    in_support[i] = 1;
  }
  // Minimality within the support under refinement.
  std::vector<std::size_t> sorted(support);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<char> minimal(lat.size(), 0);
  for (std::size_t b : sorted) {
    bool has_lower = false;
    for (std::size_t a : sorted) {
      if (a == b) continue;
      if (lat.leq(a, b)) {
        has_lower = true;
        break;
      }
    }
    minimal[b] = !has_lower;
  }
  for (const auto& [i, v] : minima_values) {
    (void)v;
    if (i >= lat.size() || !in_support[i] || !minimal[i])
      throw invalid_config("zero-set generator: value keyed by a non-minimal element");
  }
  for (std::size_t b : sorted)
    if (minimal[b] && !minima_values.count(b))
      throw invalid_config("zero-set generator: missing value for a minimal support element");

  PartitionFunction f{lat.k(), false, std::vector<Rat>(lat.size(), Rat(0))};
  for (std::size_t i : sorted) {
    if (minimal[i])
      f.values[i] = minima_values.at(i);
    else
      f.values[i] = recursion_value(lat, f.values, i);  // ascending index = dependency order
  }
  return f;
}

std::vector<Rat> indicator_coefficients(const PartitionLattice& lat, const PartitionFunction& f) {
  check_shape(lat, f);
  std::vector<Rat> c(lat.size(), Rat(0));
  for (std::size_t tau = 0; tau + 1 < lat.size(); ++tau) {
    Rat s = 0;
    for (const auto& e : lat.down(tau)) {
      if (f.values[e.index] == 0) continue;
      s += f.values[e.index] * e.mu;
    }
    c[tau] = s;
  }
  return c;
}

Rat diagonal_value(const PartitionLattice& lat, const PartitionFunction& f) {
  check_shape(lat, f);
  Rat s = 0;
  for (const auto& e : lat.down(lat.top())) {
    if (e.index == lat.top()) continue;
    if (f.values[e.index] == 0) continue;
    s += f.values[e.index] * e.mu;
  }
  return -s;
}

Fe reduce_mod(const Field& fld, const Rat& v) {
  Int num = numer(v), den = denom(v);
  Int p(fld.p());
  Int dm = den % p;
  if (dm == 0)
    throw invalid_config("reduce: denominator divisible by the characteristic " +
                         std::to_string(fld.p()));
  Int nm = num % p;
  if (nm < 0) nm += p;
  Fe fn = fld.from_int(nm.convert_to<std::int64_t>());
  Fe fd = fld.from_int(dm.convert_to<std::int64_t>());
  return fld.mul(fn, fld.inv(fd));
}

std::vector<Fe> reduce_coefficients(const Field& fld, std::span<const Rat> coeffs) {
  std::vector<Fe> out(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) out[i] = reduce_mod(fld, coeffs[i]);
  return out;
}

HarmonicRecoveryReport harmonic_sum_recovery(std::uint32_t p) {
  Field fp(FieldSpec{p, 1, {}});  // validates p odd prime
  if (p > 11) throw invalid_config("harmonic recovery: p too large to enumerate Pi_p");
  PartitionLattice lat(static_cast<int>(p), PartitionLattice::Tables::full);

  std::vector<std::size_t> support{lat.bottom()};
  for (std::size_t i = lat.rank_begin(static_cast<int>(p) - 2);
       i < lat.rank_end(static_cast<int>(p) - 2); ++i)
    support.push_back(i);
  PartitionFunction f =
      zero_set_generator(lat, support, {{lat.bottom(), Rat(1)}});

  HarmonicRecoveryReport rep;
  rep.p = p;
  rep.matches_negated_mobius = true;
  for (std::size_t i = lat.rank_begin(static_cast<int>(p) - 2);
       i < lat.rank_end(static_cast<int>(p) - 2); ++i)
    if (f.values[i] != Rat(-lat.mobius(lat.bottom(), i))) rep.matches_negated_mobius = false;

  rep.full_sum = reduce_mod(fp, -diagonal_value(lat, f));
  Fe h = 0;
  for (std::uint32_t j = 2; j < p; ++j) h = fp.add(h, fp.inv(fp.from_int(j)));
  rep.harmonic_sum = h;
  return rep;
}

}  // namespace prlab
