#include "prlab/verify.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "prlab/errors.hpp"

namespace prlab {

void ViolationList::add(std::span<const Vec> tuple, std::string detail) {
  ++count;
  if (witnesses.size() < witness_cap)
    witnesses.push_back({std::vector<Vec>(tuple.begin(), tuple.end()), std::move(detail)});
}

const ClaimResult* SemanticsReport::claim(const std::string& name) const {
  for (const auto& c : claims)
    if (c.name == name) return &c;
  return nullptr;
}

namespace {

bool tuple_all_distinct(std::span<const Vec> t) {
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j)
      if (t[i] == t[j]) return false;
  return true;
}

bool tuple_constant(std::span<const Vec> t) {
  for (std::size_t i = 1; i < t.size(); ++i)
    if (t[i] != t[0]) return false;
  return true;
}

bool corner_rays_orthogonal(const Field& fld, std::span<const Vec> t) {
  const Vec& corner = t[t.size() - 1];
  auto ray = [&](std::size_t i) {
    Vec d(corner.size());
    for (std::size_t s = 0; s < corner.size(); ++s) d[s] = fld.sub(t[i][s], corner[s]);
    return d;
  };
  for (std::size_t i = 0; i + 1 < t.size(); ++i)
    for (std::size_t j = i + 1; j + 1 < t.size(); ++j)
      if (inner_product(fld, ray(i), ray(j)) != 0) return false;
  return true;
}

struct Claim {
  std::string name;
  bool fatal;
  // Returns a violation detail, or empty when the claim holds on the tuple.
  std::function<std::string(std::span<const Vec>)> check;
};

std::vector<Claim> claims_for(const PropertySpec& spec, const Field& fld) {
  auto tv = [&spec, &fld](std::span<const Vec> t) { return tensor_value(spec, fld, t); };
  auto ph = [&spec, &fld](std::span<const Vec> t) { return property_holds(spec, fld, t); };

  Claim zero_one{"tensor_zero_one",
                 spec.kind != PropertyKind::acute_angle && spec.kind != PropertyKind::obtuse_angle,
                 [tv](std::span<const Vec> t) -> std::string {
                   Fe v = tv(t);
                   return v == 0 || v == 1 ? "" : "value " + std::to_string(v);
                 }};
  Claim one_iff{"tensor_one_iff_property", true, [tv, ph](std::span<const Vec> t) -> std::string {
                  bool one = tv(t) == 1, p = ph(t);
                  if (one == p) return "";
                  return one ? "tensor 1 without the property" : "property without tensor 1";
                }};
  Claim prop_one{"property_implies_tensor_one", true,
                 [tv, ph](std::span<const Vec> t) -> std::string {
                   return !ph(t) || tv(t) == 1 ? "" : "satisfying tuple with tensor != 1";
                 }};
  Claim one_prop{"tensor_one_implies_property", false,
                 [tv, ph](std::span<const Vec> t) -> std::string {
                   return tv(t) != 1 || ph(t) ? "" : "tensor 1 on a non-satisfying tuple";
                 }};
  Claim const_one{"tensor_one_on_constant", false, [tv](std::span<const Vec> t) -> std::string {
                    if (!tuple_constant(t)) return "";
                    return tv(t) == 1 ? "" : "constant tuple with tensor != 1";
                  }};

  switch (spec.kind) {
    case PropertyKind::k_right_corner: {
      Claim detect{"tensor_one_iff_orthogonal_rays", true,
                   [tv, &fld](std::span<const Vec> t) -> std::string {
                     bool one = tv(t) == 1, orth = corner_rays_orthogonal(fld, t);
                     if (one == orth) return "";
                     return one ? "tensor 1 with a non-orthogonal ray pair"
                                : "orthogonal rays with tensor != 1";
                   }};
      return {zero_one, detect, one_prop};
    }
    case PropertyKind::right_angle_triple: {
      Claim coincide{"tensor_zero_on_coincidence", true,
                     [tv](std::span<const Vec> t) -> std::string {
                       if (tuple_all_distinct(t)) return "";
                       return tv(t) == 0 ? "" : "coincident tuple with nonzero tensor";
                     }};
      Claim detect{"tensor_one_iff_distinct_nonright", true,
                   [tv, &fld](std::span<const Vec> t) -> std::string {
                     Vec u(t[0].size()), v(t[0].size());
                     for (std::size_t s = 0; s < t[0].size(); ++s) {
                       u[s] = fld.sub(t[1][s], t[0][s]);
                       v[s] = fld.sub(t[2][s], t[0][s]);
                     }
                     bool fire = t[1] != t[2] && inner_product(fld, u, v) != 0;
                     bool one = tv(t) == 1;
                     if (one == fire) return "";
                     return one ? "tensor 1 on a right or degenerate triple"
                                : "non-right distinct pair with tensor != 1";
                   }};
      Claim kills{"tensor_zero_on_property", true, [tv, ph](std::span<const Vec> t) -> std::string {
                    return !ph(t) || tv(t) == 0 ? "" : "right-angle triple with nonzero tensor";
                  }};
      return {zero_one, coincide, detect, kills};
    }
    case PropertyKind::acute_angle:
    case PropertyKind::obtuse_angle: {
      Claim coincide{"tensor_zero_on_coincidence", true,
                     [tv](std::span<const Vec> t) -> std::string {
                       if (tuple_all_distinct(t)) return "";
                       return tv(t) == 0 ? "" : "coincident tuple with nonzero tensor";
                     }};
      // The off-{0,1} value 1 - 4 = -3 on the complementary angle class is the
      // documented gap; it collapses to 0 only in characteristic 3.
      return {coincide, one_iff, zero_one};
    }
    case PropertyKind::balanced_linear_equation: {
      Claim constant{"constant_tuples_satisfy", true,
                     [ph](std::span<const Vec> t) -> std::string {
                       if (!tuple_constant(t)) return "";
                       return ph(t) ? "" : "constant tuple not solving the balanced system";
                     }};
      return {zero_one, one_iff, constant};
    }
    case PropertyKind::right_k_configuration: {
      Claim distinct_iff{"tensor_one_iff_property_on_distinct", true,
                         [tv, ph](std::span<const Vec> t) -> std::string {
                           if (!tuple_all_distinct(t)) return "";
                           bool one = tv(t) == 1, p = ph(t);
                           if (one == p) return "";
                           return one ? "distinct tuple: tensor 1 without the property"
                                      : "distinct tuple: property without tensor 1";
                         }};
      return {zero_one, distinct_iff, one_prop};
    }
    case PropertyKind::equal_squared_distances:
      return {zero_one, prop_one, one_prop};
    case PropertyKind::pairwise_orthogonal:
      return {zero_one, prop_one, one_prop, const_one};
    case PropertyKind::identifier:
      return {zero_one, one_iff, const_one};
  }
  return {zero_one};
}

}  // namespace

SemanticsReport verify_tensor_semantics(const PropertySpec& spec, const Field& fld,
                                        VerifyMode mode, std::uint64_t budget, std::uint64_t seed,
                                        std::uint64_t samples) {
  validate_property(spec, fld);
  SemanticsReport rep;
  std::vector<Claim> claims = claims_for(spec, fld);
  for (const auto& c : claims) rep.claims.push_back({c.name, c.fatal, {}});

  auto visit = [&](std::span<const Vec> tuple) {
    ++rep.tuples_checked;
    for (std::size_t i = 0; i < claims.size(); ++i) {
      std::string detail = claims[i].check(tuple);
      if (!detail.empty()) rep.claims[i].violations.add(tuple, std::move(detail));
    }
  };

  if (mode == VerifyMode::exhaustive) {
    rep.mode = "exhaustive";
    std::uint64_t points = 1, total = 1;
    for (int i = 0; i < spec.n; ++i) points *= fld.q();
    for (int i = 0; i < spec.k; ++i) {
      if (points != 0 && total > budget / points)
        throw budget_exceeded("verify: q^(n k) exceeds the budget " + std::to_string(budget));
      total *= points;
    }
    std::vector<Vec> pts = enumerate_vectors(fld, spec.n, budget);
    std::vector<std::size_t> idx(static_cast<std::size_t>(spec.k), 0);
    std::vector<Vec> tuple(static_cast<std::size_t>(spec.k));
    for (std::uint64_t c = 0; c < total; ++c) {
      for (std::size_t i = 0; i < idx.size(); ++i) tuple[i] = pts[idx[i]];
      visit(tuple);
      for (std::size_t i = idx.size(); i-- > 0;) {
        if (++idx[i] < pts.size()) break;
        idx[i] = 0;
      }
    }
  } else {
    rep.mode = "sampled";
    std::mt19937_64 rng(seed);
    std::vector<Vec> tuple(static_cast<std::size_t>(spec.k), Vec(static_cast<std::size_t>(spec.n)));
    std::uniform_int_distribution<std::uint64_t> dist(0, fld.q() - 1);
    for (std::uint64_t c = 0; c < samples; ++c) {
      for (auto& v : tuple)
        for (auto& e : v) e = dist(rng);
      // Coincidence-heavy patterns are the interesting cases; collapse some
      // entries so sampling does not miss them.
      if (c % 3 == 1 && spec.k >= 2) tuple[1] = tuple[0];
      if (c % 7 == 2) std::fill(tuple.begin(), tuple.end(), tuple[0]);
      visit(tuple);
    }
  }

  rep.pass = true;
  for (const auto& c : rep.claims)
    if (c.fatal && !c.violations.empty()) rep.pass = false;
  return rep;
}

namespace {

void check_grid_budget(std::span<const Vec> a, int k, std::uint64_t budget) {
  std::uint64_t total = 1;
  for (int i = 0; i < k; ++i) {
    if (!a.empty() && total > budget / a.size())
      throw budget_exceeded("verify: |A|^k exceeds the budget " + std::to_string(budget));
    total *= a.size();
  }
}

template <typename Fn>
void for_each_tuple(std::span<const Vec> a, int k, Fn&& fn) {
  if (a.empty()) return;
  std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
  std::vector<Vec> tuple(static_cast<std::size_t>(k));
  for (;;) {
    for (std::size_t i = 0; i < idx.size(); ++i) tuple[i] = a[idx[i]];
    fn(std::span<const Vec>(tuple));
    std::size_t i = idx.size();
    for (; i-- > 0;) {
      if (++idx[i] < a.size()) break;
      idx[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
}

}  // namespace

DecompositionReport verify_decomposition(const PartitionLattice& lat, const PartitionFunction& f,
                                         const PropertySpec& spec, const Field& fld,
                                         std::span<const Vec> a, std::uint64_t budget) {
  if (!f.includes_top)
    throw invalid_config("decomposition: f must be defined on the whole lattice, top included");
  if (f.k != spec.k) throw invalid_config("decomposition: f arity does not match the property");
  validate_property(spec, fld);
  check_grid_budget(a, spec.k, budget);

  DecompositionReport rep;
  rep.scalar_rational = diagonal_value(lat, f) - f.at(lat.top());
  rep.scalar = reduce_mod(fld, rep.scalar_rational);
  rep.scalar_nonzero = rep.scalar != 0;

  std::vector<Rat> coeffs = indicator_coefficients(lat, f);
  std::vector<Fe> cmod = reduce_coefficients(fld, coeffs);

  for_each_tuple(a, spec.k, [&](std::span<const Vec> tuple) {
    ++rep.tuples_checked;
    Fe lhs = fld.sub(evaluate_indicator_mod(lat, fld, cmod, tuple),
                     tensor_value(spec, fld, tuple));
    Fe rhs = tuple_constant(tuple) ? rep.scalar : fld.zero();
    if (lhs != rhs)
      rep.identity_violations.add(
          tuple, "I_f - T = " + std::to_string(lhs) + ", expected " + std::to_string(rhs) +
                     " on pattern " + format_partition(partition_of_tuple(tuple)));
  });
  rep.identity_holds = rep.identity_violations.empty();
  rep.pass = rep.identity_holds && rep.scalar_nonzero;
  return rep;
}

DiagonalizationReport verify_diagonalization(const PartitionLattice& lat,
                                             const PartitionFunction& f, const PropertySpec& spec,
                                             const Field& fld, std::span<const Vec> a,
                                             std::uint64_t budget) {
  if (f.includes_top)
    throw invalid_config("diagonalization: f must exclude the top of the lattice");
  if (f.k != spec.k) throw invalid_config("diagonalization: f arity does not match the property");
  validate_property(spec, fld);
  check_grid_budget(a, spec.k, budget);

  DiagonalizationReport rep;
  rep.cond1_constants_satisfy = true;
  for (const Vec& x : a) {
    std::vector<Vec> constant(static_cast<std::size_t>(spec.k), x);
    if (!property_holds(spec, fld, constant)) rep.cond1_constants_satisfy = false;
  }

  rep.diagonal_rational = diagonal_value(lat, f);
  rep.diagonal = reduce_mod(fld, rep.diagonal_rational);
  rep.cond4_nonzero = rep.diagonal != 0;

  std::vector<Rat> coeffs = indicator_coefficients(lat, f);
  std::vector<Fe> cmod = reduce_coefficients(fld, coeffs);
  std::vector<Fe> fmod(lat.size(), 0);
  for (std::size_t i = 0; i + 1 < lat.size(); ++i) fmod[i] = reduce_mod(fld, f.values[i]);

  rep.diagonal_nonzero = true;
  for_each_tuple(a, spec.k, [&](std::span<const Vec> tuple) {
    ++rep.tuples_checked;
    bool p = property_holds(spec, fld, tuple);
    Fe t = tensor_value(spec, fld, tuple);
    if (t != (p ? fld.one() : fld.zero()))
      rep.cond2_violations.add(tuple, "tensor " + std::to_string(t) +
                                          (p ? " on a satisfying tuple" : " off the property"));
    bool constant = tuple_constant(tuple);
    if (p && !constant) {
      std::size_t pi = lat.index_of(partition_of_tuple(tuple));
      if (fmod[pi] != 0)
        rep.cond3_violations.add(tuple, "f nonzero on satisfied partition " +
                                            format_partition(lat.partition(pi)));
    }
    Fe prod = fld.mul(evaluate_indicator_mod(lat, fld, cmod, tuple), t);
    if (constant) {
      Fe expected = fld.mul(rep.diagonal, t);
      if (prod != expected)
        rep.diagonal_violations.add(tuple, "diagonal entry " + std::to_string(prod) +
                                               ", expected " + std::to_string(expected));
      if (prod == 0) rep.diagonal_nonzero = false;
    } else if (prod != 0) {
      rep.offdiagonal_violations.add(tuple, "off-diagonal value " + std::to_string(prod) +
                                                " on pattern " +
                                                format_partition(partition_of_tuple(tuple)));
    }
  });

  rep.pass = rep.cond1_constants_satisfy && rep.cond2_violations.empty() &&
             rep.cond3_violations.empty() && rep.cond4_nonzero &&
             rep.offdiagonal_violations.empty() && rep.diagonal_violations.empty() &&
             rep.diagonal_nonzero;
  return rep;
}

}  // namespace prlab
