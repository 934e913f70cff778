#include "prlab/property.hpp"

#include <algorithm>

#include "prlab/errors.hpp"

namespace prlab {

namespace {

struct KindEntry {
  PropertyKind kind;
  const char* name;
};

constexpr KindEntry kind_table[] = {
    {PropertyKind::k_right_corner, "k_right_corner"},
    {PropertyKind::right_angle_triple, "right_angle_triple"},
    {PropertyKind::acute_angle, "acute_angle"},
    {PropertyKind::obtuse_angle, "obtuse_angle"},
    {PropertyKind::balanced_linear_equation, "balanced_linear_equation"},
    {PropertyKind::right_k_configuration, "right_k_configuration"},
    {PropertyKind::equal_squared_distances, "equal_squared_distances"},
    {PropertyKind::pairwise_orthogonal, "pairwise_orthogonal"},
    {PropertyKind::identifier, "identifier"},
};

bool all_distinct(std::span<const Vec> t) {
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j)
      if (t[i] == t[j]) return false;
  return true;
}

int distinct_count(std::span<const Vec> t) {
  int c = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    bool seen = false;
    for (std::size_t j = 0; j < i; ++j)
      if (t[j] == t[i]) {
        seen = true;
        break;
      }
    if (!seen) ++c;
  }
  return c;
}

Vec diff(const Field& f, const Vec& a, const Vec& b) {
  Vec d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = f.sub(a[i], b[i]);
  return d;
}

// 2<t0 - t1, t0 - t2>: the quantity whose residue class classifies the angle
// at the first entry.
Fe doubled_angle_form(const Field& f, std::span<const Vec> t) {
  Vec u = diff(f, t[0], t[1]), v = diff(f, t[0], t[2]);
  return f.mul(f.from_int(2), inner_product(f, u, v));
}

void check_arity(const PropertySpec& spec, std::span<const Vec> tuple) {
  if (static_cast<int>(tuple.size()) != spec.k)
    throw invalid_config("property: tuple arity " + std::to_string(tuple.size()) +
                         " does not match k=" + std::to_string(spec.k));
}

// prod over increasing m-subtuples of (1 - g(...)^(q-1)).
Fe subtuple_product(const Field& f, const PolynomialSpec& g, std::span<const Vec> tuple) {
  int k = static_cast<int>(tuple.size());
  int m = g.m;
  std::vector<int> idx(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) idx[static_cast<std::size_t>(i)] = i;
  Fe prod = 1;
  for (;;) {
    std::vector<Vec> args;
    args.reserve(static_cast<std::size_t>(m));
    for (int i : idx) args.push_back(tuple[static_cast<std::size_t>(i)]);
    Fe gv = g.expr.eval(f, args);
    prod = f.mul(prod, f.sub(1, f.pow(gv, f.q() - 1)));
    if (prod == 0) return 0;
    int i = m - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == k - m + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < m; ++j)
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j) - 1] + 1;
  }
  return prod;
}

bool subtuples_all_vanish(const Field& f, const PolynomialSpec& g, std::span<const Vec> tuple) {
  int k = static_cast<int>(tuple.size());
  int m = g.m;
  std::vector<int> idx(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) idx[static_cast<std::size_t>(i)] = i;
  for (;;) {
    std::vector<Vec> args;
    args.reserve(static_cast<std::size_t>(m));
    for (int i : idx) args.push_back(tuple[static_cast<std::size_t>(i)]);
    if (g.expr.eval(f, args) != 0) return false;
    int i = m - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == k - m + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < m; ++j)
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j) - 1] + 1;
  }
  return true;
}

}  // namespace

std::string kind_name(PropertyKind kind) {
  for (const auto& e : kind_table)
    if (e.kind == kind) return e.name;
  throw invalid_config("property: unknown kind");
}

std::optional<PropertyKind> kind_from_name(const std::string& name) {
  for (const auto& e : kind_table)
    if (name == e.name) return e.kind;
  return std::nullopt;
}

void validate_property(const PropertySpec& spec, const Field& fld) {
  if (spec.n < 1) throw invalid_config("property: dimension must be >= 1");
  switch (spec.kind) {
    case PropertyKind::right_angle_triple:
    case PropertyKind::acute_angle:
    case PropertyKind::obtuse_angle:
      if (spec.k != 3) throw invalid_config("property: angle kinds require k = 3");
      break;
    case PropertyKind::k_right_corner:
      if (spec.k < 3) throw invalid_config("property: corner kind requires k >= 3");
      break;
    case PropertyKind::balanced_linear_equation: {
      if (static_cast<int>(spec.coeffs.size()) != spec.k)
        throw invalid_config("property: need one coefficient per tuple slot");
      Fe s = 0;
      bool nonzero = false;
      for (auto a : spec.coeffs) {
        Fe c = fld.from_int(a);
        if (c != 0) nonzero = true;
        s = fld.add(s, c);
      }
      if (s != 0)
        throw invalid_config("property: coefficients must sum to zero in the field (balanced)");
      if (!nonzero) throw invalid_config("property: all coefficients vanish in the field");
      if (spec.max_distinct < 0 || spec.max_distinct > spec.k)
        throw invalid_config("property: max_distinct must lie in [0, k]");
      break;
    }
    case PropertyKind::right_k_configuration:
      if (spec.k < 3) throw invalid_config("property: right configuration requires k >= 3");
      break;
    case PropertyKind::equal_squared_distances:
      if (spec.k < 3) throw invalid_config("property: equal distances requires k >= 3");
      break;
    case PropertyKind::pairwise_orthogonal:
      if (spec.k < 2) throw invalid_config("property: pairwise orthogonality requires k >= 2");
      break;
    case PropertyKind::identifier: {
      if (!spec.g) throw invalid_config("property: identifier kind needs a polynomial");
      if (spec.g->m < 1 || spec.g->m > spec.k)
        throw invalid_config("property: identifier arity must lie in [1, k]");
      if (spec.g->expr.max_arg() >= spec.g->m)
        throw invalid_config("property: polynomial uses more arguments than its arity");
      if (spec.g->expr.max_coord() >= spec.n)
        throw invalid_config("property: polynomial uses coordinates beyond the dimension");
      break;
    }
  }
}

bool property_holds(const PropertySpec& spec, const Field& fld, std::span<const Vec> tuple) {
  check_arity(spec, tuple);
  switch (spec.kind) {
    case PropertyKind::k_right_corner: {
      if (!all_distinct(tuple)) return false;
      const Vec& corner = tuple[tuple.size() - 1];
      for (std::size_t i = 0; i + 1 < tuple.size(); ++i)
        for (std::size_t j = i + 1; j + 1 < tuple.size(); ++j) {
          Vec u = diff(fld, tuple[i], corner), v = diff(fld, tuple[j], corner);
          if (inner_product(fld, u, v) != 0) return false;
        }
      return true;
    }
    case PropertyKind::right_angle_triple: {
      if (!all_distinct(tuple)) return false;
      Vec u = diff(fld, tuple[1], tuple[0]), v = diff(fld, tuple[2], tuple[0]);
      return inner_product(fld, u, v) == 0;
    }
    case PropertyKind::acute_angle:
      return all_distinct(tuple) && fld.is_nonzero_square(doubled_angle_form(fld, tuple));
    case PropertyKind::obtuse_angle: {
      if (!all_distinct(tuple)) return false;
      Fe c = doubled_angle_form(fld, tuple);
      return c != 0 && !fld.is_nonzero_square(c);
    }
    case PropertyKind::balanced_linear_equation: {
      for (std::size_t s = 0; s < static_cast<std::size_t>(spec.n); ++s) {
        Fe acc = 0;
        for (std::size_t i = 0; i < tuple.size(); ++i)
          acc = fld.add(acc, fld.mul(fld.from_int(spec.coeffs[i]), tuple[i][s]));
        if (acc != 0) return false;
      }
      return true;
    }
    case PropertyKind::right_k_configuration: {
      if (!all_distinct(tuple)) return false;
      for (std::size_t i = 0; i < tuple.size(); ++i)
        for (std::size_t j = 0; j < tuple.size(); ++j)
          for (std::size_t l = 0; l < tuple.size(); ++l) {
            if (i == j || j == l || i == l) continue;
            Vec u = diff(fld, tuple[i], tuple[j]), v = diff(fld, tuple[j], tuple[l]);
            if (inner_product(fld, u, v) != 0) return false;
          }
      return true;
    }
    case PropertyKind::equal_squared_distances: {
      bool have = false;
      Fe d0 = 0;
      for (std::size_t i = 0; i < tuple.size(); ++i)
        for (std::size_t j = i + 1; j < tuple.size(); ++j) {
          Vec u = diff(fld, tuple[i], tuple[j]);
          Fe d = inner_product(fld, u, u);
          if (!have) {
            d0 = d;
            have = true;
          } else if (d != d0) {
            return false;
          }
        }
      return true;
    }
    case PropertyKind::pairwise_orthogonal: {
      for (std::size_t i = 0; i < tuple.size(); ++i)
        for (std::size_t j = i; j < tuple.size(); ++j)
          if (inner_product(fld, tuple[i], tuple[j]) != 0) return false;
      return true;
    }
    case PropertyKind::identifier:
      return subtuples_all_vanish(fld, *spec.g, tuple);
  }
  return false;
}

Fe tensor_value(const PropertySpec& spec, const Field& fld, std::span<const Vec> tuple) {
  check_arity(spec, tuple);
  switch (spec.kind) {
    case PropertyKind::k_right_corner: {
      const Vec& corner = tuple[tuple.size() - 1];
      Fe prod = 1;
      for (std::size_t i = 0; i + 1 < tuple.size() && prod != 0; ++i)
        for (std::size_t j = i + 1; j + 1 < tuple.size(); ++j) {
          Vec u = diff(fld, tuple[i], corner), v = diff(fld, tuple[j], corner);
          prod = fld.mul(prod, fld.sub(1, fld.pow(inner_product(fld, u, v), fld.q() - 1)));
          if (prod == 0) break;
        }
      return prod;
    }
    case PropertyKind::right_angle_triple: {
      if (tuple[1] == tuple[2]) return 0;
      Vec u = diff(fld, tuple[1], tuple[0]), v = diff(fld, tuple[2], tuple[0]);
      return fld.pow(inner_product(fld, u, v), fld.q() - 1);
    }
    case PropertyKind::acute_angle:
    case PropertyKind::obtuse_angle: {
      if (tuple[1] == tuple[2]) return 0;
      Fe c = doubled_angle_form(fld, tuple);
      std::vector<Fe> roots = spec.kind == PropertyKind::acute_angle ? fld.nonzero_squares()
                                                                     : fld.nonsquares();
      Fe prod = 1;
      for (Fe a : roots) prod = fld.mul(prod, fld.sub(c, a));
      return fld.sub(1, fld.mul(prod, prod));
    }
    case PropertyKind::balanced_linear_equation: {
      Fe prod = 1;
      for (std::size_t s = 0; s < static_cast<std::size_t>(spec.n) && prod != 0; ++s) {
        Fe acc = 0;
        for (std::size_t i = 0; i < tuple.size(); ++i)
          acc = fld.add(acc, fld.mul(fld.from_int(spec.coeffs[i]), tuple[i][s]));
        prod = fld.mul(prod, fld.sub(1, fld.pow(acc, fld.q() - 1)));
      }
      return prod;
    }
    case PropertyKind::right_k_configuration:
      return subtuple_product(fld, squared_distance_identifier(spec.n), tuple);
    case PropertyKind::equal_squared_distances:
      return subtuple_product(fld, distance_difference_identifier(spec.n), tuple);
    case PropertyKind::pairwise_orthogonal:
      return subtuple_product(fld, orthogonality_identifier(spec.n), tuple);
    case PropertyKind::identifier:
      return subtuple_product(fld, *spec.g, tuple);
  }
  return 0;
}

bool forbidden_tuple(const PropertySpec& spec, const Field& fld, std::span<const Vec> tuple) {
  switch (spec.kind) {
    case PropertyKind::balanced_linear_equation: {
      int dc = distinct_count(tuple);
      if (dc < 2) return false;  // constant solutions are trivial
      int cap = spec.max_distinct == 0 ? spec.k : spec.max_distinct;
      if (dc > cap) return false;
      return property_holds(spec, fld, tuple);
    }
    case PropertyKind::equal_squared_distances:
    case PropertyKind::pairwise_orthogonal:
    case PropertyKind::identifier:
      return all_distinct(tuple) && property_holds(spec, fld, tuple);
    default:
      // Distinctness is already part of the predicate.
      return property_holds(spec, fld, tuple);
  }
}

bool translation_invariant_kind(PropertyKind kind) {
  switch (kind) {
    case PropertyKind::k_right_corner:
    case PropertyKind::right_angle_triple:
    case PropertyKind::acute_angle:
    case PropertyKind::obtuse_angle:
    case PropertyKind::balanced_linear_equation:
    case PropertyKind::right_k_configuration:
    case PropertyKind::equal_squared_distances:
      return true;
    case PropertyKind::pairwise_orthogonal:
    case PropertyKind::identifier:
      return false;
  }
  return false;
}

Fe TensorEval::operator()(std::span<const Vec> tuple) {
  std::vector<Fe> key;
  key.reserve(tuple.size() * static_cast<std::size_t>(spec_->n));
  for (const Vec& v : tuple) key.insert(key.end(), v.begin(), v.end());
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  Fe val = tensor_value(*spec_, *fld_, tuple);
  memo_.emplace(std::move(key), val);
  return val;
}

}  // namespace prlab
