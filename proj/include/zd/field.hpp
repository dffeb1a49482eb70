#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "zd/errors.hpp"

namespace zd {

// Deterministic Miller-Rabin, valid for every 64-bit input.
bool is_prime_u64(uint64_t n);

// Arithmetic context for F_p with an odd prime p < 2^31. Residues are
// canonical (0 <= x < p), so every product fits a 64-bit intermediate.
// Immutable after construction; all operations are pure.
class PrimeField {
 public:
  // Validates p: rejects composites (NotPrime) and p >= 2^31 (TooLarge).
  explicit PrimeField(uint64_t p);

  uint64_t p() const { return p_; }

  uint64_t reduce(int64_t x) const {
    int64_t m = x % static_cast<int64_t>(p_);
    return static_cast<uint64_t>(m < 0 ? m + static_cast<int64_t>(p_) : m);
  }
  uint64_t add(uint64_t a, uint64_t b) const {
    uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  uint64_t sub(uint64_t a, uint64_t b) const {
    return a >= b ? a - b : a + p_ - b;
  }
  uint64_t neg(uint64_t a) const { return a == 0 ? 0 : p_ - a; }
  uint64_t mul(uint64_t a, uint64_t b) const { return a * b % p_; }

  // x^e with 0^0 = 1.
  uint64_t pow(uint64_t x, uint64_t e) const;

  // Multiplicative inverse; throws ZeroInverse at x = 0.
  uint64_t inverse(uint64_t x) const;

  // Legendre symbol in {-1, 0, 1}.
  int legendre(uint64_t x) const;

  // Smallest generator of the full multiplicative group.
  uint64_t primitive_root() const;

  // The d solutions of z^d = 1, sorted; requires d | p-1 (NotDivisor).
  std::vector<uint64_t> subgroup_elements(uint64_t d) const;

  // Binomial coefficients C(e, j) mod p for j = 0..e; requires e <= p-1
  // (ExponentTooLarge), which keeps every factorial free of the factor p.
  std::vector<uint64_t> binomial_row(uint64_t e) const;

  bool operator==(const PrimeField& other) const = default;

 private:
  uint64_t p_;
};

// A multiplicative subgroup: the d-th roots of unity in F_p.
struct Subgroup {
  uint64_t order = 0;
  std::vector<uint64_t> elements;  // sorted, |elements| == order
};

Subgroup subgroup(const PrimeField& field, uint64_t d);

// A set of canonical residues tied to its field, sorted and duplicate-free.
struct ResidueSet {
  PrimeField field;
  std::vector<uint64_t> elems;

  std::size_t size() const { return elems.size(); }
  bool contains(uint64_t x) const;
};

// Normalizes and validates: sorts, rejects out-of-range values (BadInput)
// and duplicates (DuplicateElements).
ResidueSet make_set(const PrimeField& field, std::vector<uint64_t> values);

// Multiplicative character of exact order m (m | p-1, m >= 2), realized as
// chi(g^k) = exp(2*pi*i*k/m) for the smallest primitive root g, extended by
// chi(0) = 0. Order-2 tables also expose an exact integer path.
class CharacterTable {
 public:
  CharacterTable(const PrimeField& field, uint64_t order);

  const PrimeField& field() const { return field_; }
  uint64_t modulus() const { return field_.p(); }
  uint64_t order() const { return order_; }
  uint64_t generator() const { return generator_; }
  bool quadratic() const { return order_ == 2; }

  std::complex<double> operator()(uint64_t x) const {
    int32_t k = log_mod_m_[x];
    return k < 0 ? std::complex<double>(0.0, 0.0) : roots_[k];
  }

  // Exact value in {-1, 0, 1}; only meaningful for order-2 characters.
  int sign(uint64_t x) const {
    int32_t k = log_mod_m_[x];
    return k < 0 ? 0 : (k == 0 ? 1 : -1);
  }

 private:
  PrimeField field_;
  uint64_t order_;
  uint64_t generator_;
  std::vector<int32_t> log_mod_m_;  // discrete log mod m; -1 at zero
  std::vector<std::complex<double>> roots_;
};

CharacterTable char_table(const PrimeField& field, uint64_t m);

}  // namespace zd
