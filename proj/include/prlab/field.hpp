#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace prlab {

// Odd prime power q = p^ell. For ell > 1 the arithmetic is F_p[x] modulo a
// monic irreducible; `modulus` lists its coefficients constant-first and may
// be left empty to select a built-in (available for q in {9, 25, 27, 49}).
struct FieldSpec {
  std::uint32_t p = 3;
  std::uint32_t ell = 1;
  std::vector<std::uint32_t> modulus;

  friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
    return a.p == b.p && a.ell == b.ell && a.modulus == b.modulus;
  }
};

// Field element packed as base-p digits: x = sum_i digit_i p^i with i < ell.
// The packing makes the element set exactly {0, 1, ..., q-1}.
using Fe = std::uint64_t;

class Field {
 public:
  explicit Field(const FieldSpec& spec);

  std::uint32_t p() const { return p_; }
  std::uint32_t ell() const { return ell_; }
  std::uint64_t q() const { return q_; }
  // Spec with the modulus resolved (built-ins filled in).
  const FieldSpec& spec() const { return spec_; }

  Fe zero() const { return 0; }
  Fe one() const { return 1; }
  Fe from_int(std::int64_t v) const;
  Fe element(std::span<const std::uint32_t> digits) const;
  std::vector<std::uint32_t> digits(Fe x) const;

  Fe add(Fe a, Fe b) const;
  Fe sub(Fe a, Fe b) const;
  Fe neg(Fe a) const;
  Fe mul(Fe a, Fe b) const;
  Fe inv(Fe a) const;  // rejects zero
  Fe pow(Fe a, std::uint64_t e) const;

  // Euler criterion: x nonzero and x^((q-1)/2) = 1.
  bool is_nonzero_square(Fe x) const;
  std::vector<Fe> nonzero_squares() const;  // ascending
  std::vector<Fe> nonsquares() const;       // ascending

  // prod_{a in s} (-a); empty product is 1.
  Fe residue_product_sign(std::span<const Fe> s) const;

 private:
  void check_element(Fe x) const;

  FieldSpec spec_;
  std::uint32_t p_ = 0;
  std::uint32_t ell_ = 1;
  std::uint64_t q_ = 0;
  std::vector<std::uint32_t> mod_;  // constant-first, monic, size ell+1
};

using Vec = std::vector<Fe>;

// sum_s u(s) v(s).
Fe inner_product(const Field& f, std::span<const Fe> u, std::span<const Fe> v);

// All q^n vectors in lexicographic order (coordinate 0 most significant,
// elements ordered by packed value).
std::vector<Vec> enumerate_vectors(const Field& f, int n, std::uint64_t budget = 10'000'000);

}  // namespace prlab
