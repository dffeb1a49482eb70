#include "zd/poly.hpp"

#include <algorithm>

namespace zd {

namespace {

void check_fields(const DensePolynomial& f, const DensePolynomial& g) {
  if (!(f.field() == g.field()))
    fail(Errc::FieldMismatch, "polynomials live over different fields");
}

void trim(std::vector<uint64_t>& coeffs) {
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
}

}  // namespace

DensePolynomial DensePolynomial::from_coeffs(const PrimeField& field,
                                             std::vector<uint64_t> coeffs) {
  for (auto& c : coeffs) c %= field.p();
  trim(coeffs);
  return DensePolynomial(field, std::move(coeffs));
}

uint64_t DensePolynomial::eval(uint64_t b) const {
  uint64_t acc = 0;
  for (std::size_t j = coeffs_.size(); j-- > 0;)
    acc = field_.add(field_.mul(acc, b), coeffs_[j]);
  return acc;
}

DensePolynomial DensePolynomial::derivative() const {
  std::vector<uint64_t> out;
  if (coeffs_.size() > 1) {
    out.resize(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k)
      out[k - 1] = field_.mul(k % field_.p(), coeffs_[k]);
  }
  trim(out);
  return DensePolynomial(field_, std::move(out));
}

DensePolynomial DensePolynomial::scaled(uint64_t c) const {
  c %= field_.p();
  std::vector<uint64_t> out(coeffs_.size());
  for (std::size_t j = 0; j < coeffs_.size(); ++j)
    out[j] = field_.mul(coeffs_[j], c);
  trim(out);
  return DensePolynomial(field_, std::move(out));
}

DensePolynomial operator+(const DensePolynomial& f, const DensePolynomial& g) {
  check_fields(f, g);
  std::vector<uint64_t> out(std::max(f.coeffs_.size(), g.coeffs_.size()));
  for (std::size_t j = 0; j < out.size(); ++j)
    out[j] = f.field_.add(f.coeff(j), g.coeff(j));
  trim(out);
  return DensePolynomial(f.field_, std::move(out));
}

DensePolynomial operator-(const DensePolynomial& f, const DensePolynomial& g) {
  check_fields(f, g);
  std::vector<uint64_t> out(std::max(f.coeffs_.size(), g.coeffs_.size()));
  for (std::size_t j = 0; j < out.size(); ++j)
    out[j] = f.field_.sub(f.coeff(j), g.coeff(j));
  trim(out);
  return DensePolynomial(f.field_, std::move(out));
}

DensePolynomial operator*(const DensePolynomial& f, const DensePolynomial& g) {
  check_fields(f, g);
  if (f.is_zero() || g.is_zero()) return DensePolynomial::zero(f.field_);
  std::vector<uint64_t> out(f.coeffs_.size() + g.coeffs_.size() - 1, 0);
  uint64_t p = f.field_.p();
  for (std::size_t i = 0; i < f.coeffs_.size(); ++i) {
    if (f.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < g.coeffs_.size(); ++j)
      out[i + j] = (out[i + j] + f.coeffs_[i] * g.coeffs_[j]) % p;
  }
  trim(out);
  return DensePolynomial(f.field_, std::move(out));
}

DensePolynomial shifted_power_combination(const PrimeField& field,
                                          std::span<const uint64_t> weights,
                                          std::span<const uint64_t> shifts,
                                          uint64_t exponent) {
  if (weights.size() != shifts.size() || weights.empty())
    fail(Errc::LengthMismatch, "need equally many weights and shifts (>= 1)");
  auto binom = field.binomial_row(exponent);  // rejects exponent >= p
  uint64_t p = field.p();
  std::vector<uint64_t> coeffs(exponent + 1, 0);
  for (std::size_t k = 0; k < weights.size(); ++k) {
    uint64_t w = weights[k] % p;
    uint64_t a = shifts[k] % p;
    // power = a^(exponent - j), walked down from j = exponent.
    uint64_t power = 1;
    for (uint64_t j = exponent + 1; j-- > 0;) {
      coeffs[j] = (coeffs[j] + w * binom[j] % p * power) % p;
      if (j > 0) power = power * a % p;
    }
  }
  return DensePolynomial::from_coeffs(field, std::move(coeffs));
}

uint64_t root_multiplicity(const DensePolynomial& f, uint64_t b) {
  if (f.is_zero())
    fail(Errc::ZeroPolynomial, "the zero polynomial has no root orders");
  const PrimeField& field = f.field();
  std::vector<uint64_t> cur = f.coeffs();
  uint64_t m = 0;
  while (!cur.empty()) {
    // Synthetic division by (x - b): quotient plus remainder in one pass.
    std::vector<uint64_t> quot(cur.size() - 1);
    uint64_t acc = 0;
    for (std::size_t j = cur.size(); j-- > 0;) {
      acc = field.add(field.mul(acc, b), cur[j]);
      if (j > 0) quot[j - 1] = acc;
      // after the j = 0 step, acc is the remainder f(b)
    }
    if (acc != 0) break;
    ++m;
    cur = std::move(quot);
  }
  return m;
}

}  // namespace zd
