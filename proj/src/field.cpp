#include "zd/field.hpp"

#include <algorithm>
#include <cmath>

namespace zd {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::NotPrime: return "NotPrime";
    case Errc::TooLarge: return "TooLarge";
    case Errc::ZeroInverse: return "ZeroInverse";
    case Errc::NotDivisor: return "NotDivisor";
    case Errc::NotProperDivisor: return "NotProperDivisor";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::ExponentTooLarge: return "ExponentTooLarge";
    case Errc::DuplicateElements: return "DuplicateElements";
    case Errc::SumsetEscapesSubgroup: return "SumsetEscapesSubgroup";
    case Errc::ZeroPolynomial: return "ZeroPolynomial";
    case Errc::OddSubgroupOrder: return "OddSubgroupOrder";
    case Errc::TrivialCharacter: return "TrivialCharacter";
    case Errc::BadRange: return "BadRange";
    case Errc::BadInput: return "BadInput";
    case Errc::CapExceeded: return "CapExceeded";
    case Errc::BoundViolated: return "BoundViolated";
  }
  return "UnknownError";
}

namespace {

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>(static_cast<__uint128_t>(a) * b % m);
}

uint64_t powmod_u64(uint64_t x, uint64_t e, uint64_t m) {
  uint64_t acc = 1 % m;
  x %= m;
  while (e > 0) {
    if (e & 1) acc = mulmod_u64(acc, x, m);
    x = mulmod_u64(x, x, m);
    e >>= 1;
  }
  return acc;
}

// Prime factors of n (without multiplicity) by trial division; n < 2^31
// keeps this instant.
std::vector<uint64_t> prime_factors(uint64_t n) {
  std::vector<uint64_t> fs;
  for (uint64_t f = 2; f * f <= n; f += (f == 2 ? 1 : 2)) {
    if (n % f == 0) {
      fs.push_back(f);
      while (n % f == 0) n /= f;
    }
  }
  if (n > 1) fs.push_back(n);
  return fs;
}

}  // namespace

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                     23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This witness set decides primality for every n < 2^64.
  for (uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                     23ULL, 29ULL, 31ULL, 37ULL}) {
    uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeField::PrimeField(uint64_t p) : p_(p) {
  if (p >= (1ULL << 31))
    fail(Errc::TooLarge, "modulus " + std::to_string(p) + " is >= 2^31");
  if (p < 3 || p % 2 == 0 || !is_prime_u64(p))
    fail(Errc::NotPrime,
         "modulus " + std::to_string(p) + " is not an odd prime >= 3");
}

uint64_t PrimeField::pow(uint64_t x, uint64_t e) const {
  uint64_t acc = 1;
  x %= p_;
  while (e > 0) {
    if (e & 1) acc = acc * x % p_;
    x = x * x % p_;
    e >>= 1;
  }
  return acc;
}

uint64_t PrimeField::inverse(uint64_t x) const {
  if (x % p_ == 0) fail(Errc::ZeroInverse, "0 has no multiplicative inverse");
  return pow(x, p_ - 2);
}

int PrimeField::legendre(uint64_t x) const {
  if (x % p_ == 0) return 0;
  return pow(x, (p_ - 1) / 2) == 1 ? 1 : -1;
}

uint64_t PrimeField::primitive_root() const {
  auto factors = prime_factors(p_ - 1);
  for (uint64_t g = 2; g < p_; ++g) {
    bool ok = true;
    for (uint64_t q : factors) {
      if (pow(g, (p_ - 1) / q) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  fail(Errc::NotPrime, "no generator found; modulus is not prime");
}

std::vector<uint64_t> PrimeField::subgroup_elements(uint64_t d) const {
  if (d == 0 || (p_ - 1) % d != 0)
    fail(Errc::NotDivisor,
         std::to_string(d) + " does not divide " + std::to_string(p_ - 1));
  uint64_t step = pow(primitive_root(), (p_ - 1) / d);
  std::vector<uint64_t> elems;
  elems.reserve(d);
  uint64_t z = 1;
  for (uint64_t k = 0; k < d; ++k) {
    elems.push_back(z);
    z = z * step % p_;
  }
  std::sort(elems.begin(), elems.end());
  return elems;
}

std::vector<uint64_t> PrimeField::binomial_row(uint64_t e) const {
  if (e > p_ - 1)
    fail(Errc::ExponentTooLarge,
         "exponent " + std::to_string(e) + " >= modulus " + std::to_string(p_));
  // fact[j] = j! mod p; no factor of p appears because e <= p-1.
  std::vector<uint64_t> fact(e + 1);
  fact[0] = 1;
  for (uint64_t j = 1; j <= e; ++j) fact[j] = fact[j - 1] * j % p_;
  std::vector<uint64_t> inv_fact(e + 1);
  inv_fact[e] = inverse(fact[e]);
  for (uint64_t j = e; j > 0; --j) inv_fact[j - 1] = inv_fact[j] * j % p_;
  std::vector<uint64_t> row(e + 1);
  for (uint64_t j = 0; j <= e; ++j)
    row[j] = fact[e] * inv_fact[j] % p_ * inv_fact[e - j] % p_;
  return row;
}

Subgroup subgroup(const PrimeField& field, uint64_t d) {
  return Subgroup{d, field.subgroup_elements(d)};
}

bool ResidueSet::contains(uint64_t x) const {
  return std::binary_search(elems.begin(), elems.end(), x);
}

ResidueSet make_set(const PrimeField& field, std::vector<uint64_t> values) {
  std::sort(values.begin(), values.end());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] >= field.p())
      fail(Errc::BadInput, "residue " + std::to_string(values[i]) +
                               " out of range for p = " +
                               std::to_string(field.p()));
    if (i > 0 && values[i] == values[i - 1])
      fail(Errc::DuplicateElements,
           "repeated residue " + std::to_string(values[i]));
  }
  return ResidueSet{field, std::move(values)};
}

CharacterTable::CharacterTable(const PrimeField& field, uint64_t order)
    : field_(field), order_(order) {
  uint64_t p = field.p();
  if (order < 2)
    fail(Errc::TrivialCharacter, "character order must be at least 2");
  if ((p - 1) % order != 0)
    fail(Errc::NotDivisor, "order " + std::to_string(order) +
                               " does not divide " + std::to_string(p - 1));
  if (p > (1ULL << 24))
    fail(Errc::TooLarge, "character table would need " + std::to_string(p) +
                             " entries; supported up to 2^24");
  generator_ = field.primitive_root();
  log_mod_m_.assign(p, -1);
  uint64_t x = 1;
  for (uint64_t k = 0; k < p - 1; ++k) {
    log_mod_m_[x] = static_cast<int32_t>(k % order);
    x = x * generator_ % p;
  }
  roots_.resize(order);
  constexpr double two_pi = 6.283185307179586476925286766559;
  for (uint64_t k = 0; k < order; ++k)
    roots_[k] = std::polar(1.0, two_pi * static_cast<double>(k) /
                                    static_cast<double>(order));
}

CharacterTable char_table(const PrimeField& field, uint64_t m) {
  return CharacterTable(field, m);
}

}  // namespace zd
