#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "zd/field.hpp"

namespace zd {

// Dense univariate polynomial over F_p. Coefficients are stored in
// ascending degree with no trailing zeros; an empty vector is the zero
// polynomial, whose degree is nullopt rather than any numeric sentinel.
class DensePolynomial {
 public:
  static DensePolynomial zero(const PrimeField& field) {
    return DensePolynomial(field, {});
  }
  static DensePolynomial constant(const PrimeField& field, uint64_t c) {
    return from_coeffs(field, {c});
  }
  // Reduces every coefficient mod p and trims trailing zeros.
  static DensePolynomial from_coeffs(const PrimeField& field,
                                     std::vector<uint64_t> coeffs);

  const PrimeField& field() const { return field_; }
  const std::vector<uint64_t>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  std::optional<std::size_t> degree() const {
    if (coeffs_.empty()) return std::nullopt;
    return coeffs_.size() - 1;
  }
  uint64_t coeff(std::size_t j) const {
    return j < coeffs_.size() ? coeffs_[j] : 0;
  }
  uint64_t leading_coeff() const { return coeffs_.back(); }

  // Horner evaluation at b.
  uint64_t eval(uint64_t b) const;

  // Formal derivative; in characteristic p the degree may drop by more
  // than one.
  DensePolynomial derivative() const;

  DensePolynomial scaled(uint64_t c) const;

  friend DensePolynomial operator+(const DensePolynomial& f,
                                   const DensePolynomial& g);
  friend DensePolynomial operator-(const DensePolynomial& f,
                                   const DensePolynomial& g);
  friend DensePolynomial operator*(const DensePolynomial& f,
                                   const DensePolynomial& g);
  bool operator==(const DensePolynomial& other) const = default;

 private:
  DensePolynomial(const PrimeField& field, std::vector<uint64_t> coeffs)
      : field_(field), coeffs_(std::move(coeffs)) {}

  PrimeField field_;
  std::vector<uint64_t> coeffs_;
};

// Sum_k weights[k] * (x + shifts[k])^exponent, expanded with binomial
// coefficients; requires |weights| == |shifts| >= 1 (LengthMismatch) and
// exponent <= p-1 (ExponentTooLarge). The x^j coefficient equals
// C(exponent, j) * Sum_k weights[k] * shifts[k]^(exponent-j).
DensePolynomial shifted_power_combination(const PrimeField& field,
                                          std::span<const uint64_t> weights,
                                          std::span<const uint64_t> shifts,
                                          uint64_t exponent);

// Largest m with (x - b)^m dividing f, by repeated synthetic division.
// Division-based counting stays correct even when the multiplicity reaches
// the characteristic, where derivative-based counting breaks down.
// Throws ZeroPolynomial for f = 0.
uint64_t root_multiplicity(const DensePolynomial& f, uint64_t b);

}  // namespace zd
