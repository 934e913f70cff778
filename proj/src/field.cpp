#include "prlab/field.hpp"

#include <algorithm>
#include <string>

#include "prlab/errors.hpp"

namespace prlab {

namespace {

bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Dense F_p[x] polynomials, constant-first, no trailing zeros.
using Poly = std::vector<std::uint32_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint64_t> t(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      t[i + j] = (t[i + j] + std::uint64_t{a[i]} * b[j]) % p;
  std::size_t deg_m = m.size() - 1;  // m monic
  for (std::size_t i = t.size(); i-- > deg_m;) {
    std::uint64_t c = t[i];
    if (c == 0) continue;
    t[i] = 0;
    for (std::size_t j = 0; j < deg_m; ++j)
      t[i - deg_m + j] = (t[i - deg_m + j] + (p - m[j]) % p * c) % p;
  }
  Poly r(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(std::min(t.size(), deg_m)));
  trim(r);
  return r;
}

Poly poly_pow_mod(Poly base, std::uint64_t e, const Poly& m, std::uint32_t p) {
  Poly r{1};
  while (e) {
    if (e & 1) r = poly_mul_mod(r, base, m, p);
    base = poly_mul_mod(base, base, m, p);
    e >>= 1;
  }
  return r;
}

Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  std::size_t deg_m = m.size() - 1;
  for (std::size_t i = a.size(); i-- > deg_m;) {
    std::uint64_t c = a[i];
    if (c == 0) continue;
    a[i] = 0;
    for (std::size_t j = 0; j < deg_m; ++j)
      a[i - deg_m + j] = static_cast<std::uint32_t>(
          (a[i - deg_m + j] + (p - m[j]) % p * c) % p);
  }
  trim(a);
  return a;
}

Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
  auto rem = [p](Poly x, Poly y) {
    // y made monic, then reduce x.
    std::uint64_t lead = y.back(), li = 1;
    for (std::uint64_t e = p - 2, t = lead; e; e >>= 1) {  // inverse by Fermat
      if (e & 1) li = li * t % p;
      t = t * t % p;
    }
    for (auto& c : y) c = static_cast<std::uint32_t>(c * li % p);
    return poly_mod(std::move(x), y, p);
  };
  while (!b.empty()) {
    Poly r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Degree-d monic m is irreducible iff it has no irreducible factor of degree
// <= d/2, i.e. gcd(x^(p^i) - x, m) = 1 for i = 1..d/2.
bool poly_irreducible(const Poly& m, std::uint32_t p) {
  std::size_t d = m.size() - 1;
  Poly xp{0, 1};  // x^(p^i) mod m, advanced by one Frobenius step per round
  for (std::size_t i = 1; 2 * i <= d; ++i) {
    xp = poly_pow_mod(xp, p, m, p);
    Poly diff = xp;
    if (diff.empty()) diff.resize(2, 0);
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = static_cast<std::uint32_t>((diff[1] + p - 1) % p);
    trim(diff);
    Poly g = poly_gcd(m, diff, p);
    if (g.size() != 1) return false;
  }
  return true;
}

std::vector<std::uint32_t> builtin_modulus(std::uint32_t p, std::uint32_t ell) {
  if (p == 3 && ell == 2) return {1, 0, 1};     // x^2 + 1
  if (p == 5 && ell == 2) return {2, 0, 1};     // x^2 + 2
  if (p == 3 && ell == 3) return {1, 2, 0, 1};  // x^3 + 2x + 1
  if (p == 7 && ell == 2) return {1, 0, 1};     // x^2 + 1
  return {};
}

}  // namespace

Field::Field(const FieldSpec& spec) : spec_(spec) {
  p_ = spec.p;
  ell_ = spec.ell;
  if (p_ < 3 || p_ % 2 == 0 || !is_prime_u32(p_))
    throw invalid_config("field: p must be an odd prime < 2^31, got " + std::to_string(spec.p));
  if (ell_ < 1) throw invalid_config("field: extension degree must be >= 1");
  q_ = 1;
  for (std::uint32_t i = 0; i < ell_; ++i) {
    if (q_ > (std::uint64_t{1} << 62) / p_)
      throw invalid_config("field: q = p^ell exceeds 2^62");
    q_ *= p_;
  }
  if (ell_ == 1) {
    mod_ = {0, 1};  // placeholder x; never used in prime-field arithmetic
    spec_.modulus.clear();
    return;
  }
  mod_ = spec.modulus;
  if (mod_.empty()) {
    mod_ = builtin_modulus(p_, ell_);
    if (mod_.empty())
      throw invalid_config("field: no built-in modulus for p=" + std::to_string(p_) +
                           ", ell=" + std::to_string(ell_) + "; supply one");
  }
  if (mod_.size() != static_cast<std::size_t>(ell_) + 1)
    throw invalid_config("field: modulus must list ell+1 coefficients, constant first");
  for (auto& c : mod_) c %= p_;
  if (mod_.back() != 1) throw invalid_config("field: modulus must be monic");
  if (!poly_irreducible(mod_, p_))
    throw invalid_config("field: modulus is reducible over F_" + std::to_string(p_));
  spec_.modulus = mod_;
}

void Field::check_element(Fe x) const {
  if (x >= q_) throw invalid_config("field: element out of range");
}

Fe Field::from_int(std::int64_t v) const {
  std::int64_t m = v % static_cast<std::int64_t>(p_);
  if (m < 0) m += p_;
  return static_cast<Fe>(m);
}

Fe Field::element(std::span<const std::uint32_t> digits) const {
  if (digits.size() > ell_) throw invalid_config("field: too many digits for the extension degree");
  Fe x = 0;
  for (std::size_t i = digits.size(); i-- > 0;) x = x * p_ + digits[i] % p_;
  return x;
}

std::vector<std::uint32_t> Field::digits(Fe x) const {
  check_element(x);
  std::vector<std::uint32_t> d(ell_);
  for (std::uint32_t i = 0; i < ell_; ++i) {
    d[i] = static_cast<std::uint32_t>(x % p_);
    x /= p_;
  }
  return d;
}

Fe Field::add(Fe a, Fe b) const {
  check_element(a);
  check_element(b);
  if (ell_ == 1) return (a + b) % p_;
  Fe r = 0, mult = 1;
  for (std::uint32_t i = 0; i < ell_; ++i) {
    r += (a % p_ + b % p_) % p_ * mult;
    a /= p_;
    b /= p_;
    mult *= p_;
  }
  return r;
}

Fe Field::neg(Fe a) const {
  check_element(a);
  if (ell_ == 1) return a == 0 ? 0 : p_ - a;
  Fe r = 0, mult = 1;
  for (std::uint32_t i = 0; i < ell_; ++i) {
    Fe d = a % p_;
    r += (d == 0 ? 0 : p_ - d) * mult;
    a /= p_;
    mult *= p_;
  }
  return r;
}

Fe Field::sub(Fe a, Fe b) const { return add(a, neg(b)); }

Fe Field::mul(Fe a, Fe b) const {
  check_element(a);
  check_element(b);
  if (ell_ == 1) return a * b % p_;
  Poly pa, pb;
  for (Fe x = a; x; x /= p_) pa.push_back(static_cast<std::uint32_t>(x % p_));
  for (Fe x = b; x; x /= p_) pb.push_back(static_cast<std::uint32_t>(x % p_));
  Poly pr = poly_mul_mod(pa, pb, mod_, p_);
  Fe r = 0;
  for (std::size_t i = pr.size(); i-- > 0;) r = r * p_ + pr[i];
  return r;
}

Fe Field::pow(Fe a, std::uint64_t e) const {
  check_element(a);
  Fe r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Fe Field::inv(Fe a) const {
  check_element(a);
  if (a == 0) throw invalid_config("field: inverse of zero");
  return pow(a, q_ - 2);
}

bool Field::is_nonzero_square(Fe x) const {
  check_element(x);
  return x != 0 && pow(x, (q_ - 1) / 2) == 1;
}

std::vector<Fe> Field::nonzero_squares() const {
  std::vector<Fe> r;
  r.reserve((q_ - 1) / 2);
  for (Fe x = 1; x < q_; ++x)
    if (is_nonzero_square(x)) r.push_back(x);
  return r;
}

std::vector<Fe> Field::nonsquares() const {
  std::vector<Fe> r;
  r.reserve((q_ - 1) / 2);
  for (Fe x = 1; x < q_; ++x)
    if (!is_nonzero_square(x)) r.push_back(x);
  return r;
}

Fe Field::residue_product_sign(std::span<const Fe> s) const {
  Fe r = 1;
  for (Fe a : s) r = mul(r, neg(a));
  return r;
}

Fe inner_product(const Field& f, std::span<const Fe> u, std::span<const Fe> v) {
  if (u.size() != v.size()) throw invalid_config("inner_product: dimension mismatch");
  Fe r = 0;
  for (std::size_t i = 0; i < u.size(); ++i) r = f.add(r, f.mul(u[i], v[i]));
  return r;
}

std::vector<Vec> enumerate_vectors(const Field& f, int n, std::uint64_t budget) {
  if (n < 0) throw invalid_config("enumerate_vectors: negative dimension");
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) {
    if (total > budget / f.q())
      throw budget_exceeded("enumerate_vectors: q^n exceeds the budget " + std::to_string(budget));
    total *= f.q();
  }
  std::vector<Vec> out;
  out.reserve(total);
  Vec v(static_cast<std::size_t>(n), 0);
  for (std::uint64_t c = 0; c < total; ++c) {
    out.push_back(v);
    for (int i = n - 1; i >= 0; --i) {
      if (++v[static_cast<std::size_t>(i)] < f.q()) break;
      v[static_cast<std::size_t>(i)] = 0;
    }
  }
  return out;
}

}  // namespace prlab
