#include "zd/stepanov.hpp"

#include <algorithm>

namespace zd {

namespace {

void check_proper_divisor(const PrimeField& field, uint64_t d) {
  if (d == 0 || (field.p() - 1) % d != 0)
    fail(Errc::NotDivisor, std::to_string(d) + " does not divide " +
                               std::to_string(field.p() - 1));
  if (d == field.p() - 1)
    fail(Errc::NotProperDivisor,
         "d = p-1 is excluded; the bound fails for the full unit group");
}

std::vector<uint64_t> sorted_distinct(const PrimeField& field,
                                      std::vector<uint64_t> xs,
                                      const char* which) {
  std::sort(xs.begin(), xs.end());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] >= field.p())
      fail(Errc::BadInput, std::string(which) + " contains residue " +
                               std::to_string(xs[i]) + " >= p");
    if (i > 0 && xs[i] == xs[i - 1])
      fail(Errc::DuplicateElements, std::string(which) +
                                        " repeats the element " +
                                        std::to_string(xs[i]));
  }
  return xs;
}

// Membership mask over residues for Z_d u {0}.
std::vector<uint8_t> subgroup_with_zero_mask(const PrimeField& field,
                                             uint64_t d) {
  std::vector<uint8_t> mask(field.p(), 0);
  mask[0] = 1;
  for (uint64_t z : field.subgroup_elements(d)) mask[z] = 1;
  return mask;
}

uint64_t count_in_negated(const PrimeField& field,
                          const std::vector<uint64_t>& A,
                          const std::vector<uint64_t>& B) {
  std::vector<uint64_t> negA;
  negA.reserve(A.size());
  for (uint64_t a : A) negA.push_back(field.neg(a));
  std::sort(negA.begin(), negA.end());
  uint64_t r = 0;
  for (uint64_t b : B)
    if (std::binary_search(negA.begin(), negA.end(), b)) ++r;
  return r;
}

}  // namespace

StepanovInstance make_instance(const PrimeField& field, uint64_t d,
                               std::vector<uint64_t> A,
                               std::vector<uint64_t> B) {
  check_proper_divisor(field, d);
  if (A.empty()) fail(Errc::BadInput, "A must be nonempty");
  return StepanovInstance{field, d, sorted_distinct(field, std::move(A), "A"),
                          sorted_distinct(field, std::move(B), "B")};
}

NullWeights lagrange_null_coeffs(const PrimeField& field,
                                 std::span<const uint64_t> a) {
  if (a.size() < 2)
    fail(Errc::BadInput, "need at least two nodes for a null combination");
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (a[i] % field.p() == a[j] % field.p())
        fail(Errc::DuplicateElements,
             "node " + std::to_string(a[i]) + " appears twice");
  std::vector<uint64_t> weights(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    uint64_t prod = 1;
    for (std::size_t j = 0; j < a.size(); ++j)
      if (j != k) prod = field.mul(prod, field.sub(a[k], a[j]));
    weights[k] = field.inverse(prod);
  }
  uint64_t constant = 0;
  for (std::size_t k = 0; k < a.size(); ++k)
    constant =
        field.add(constant, field.mul(weights[k],
                                      field.pow(a[k], a.size() - 1)));
  return NullWeights{std::move(weights), constant};
}

AuxiliaryPolynomial build_auxiliary_polynomial(const PrimeField& field,
                                               std::span<const uint64_t> A,
                                               uint64_t d) {
  check_proper_divisor(field, d);
  if (A.size() < 2)
    fail(Errc::BadInput, "the construction needs |A| >= 2");
  uint64_t exponent = d + A.size() - 1;
  if (exponent > field.p() - 1)
    fail(Errc::ExponentTooLarge,
         "d + |A| - 1 = " + std::to_string(exponent) + " exceeds p-1");
  NullWeights nw = lagrange_null_coeffs(field, A);
  DensePolynomial sum =
      shifted_power_combination(field, nw.weights, A, exponent);
  DensePolynomial poly = sum - DensePolynomial::constant(field, nw.constant);
  if (poly.degree() != d)
    throw std::logic_error("auxiliary polynomial degree is not d");
  return AuxiliaryPolynomial{std::move(poly), std::move(nw.weights),
                             nw.constant, exponent};
}

std::vector<uint64_t> max_compatible_B(const PrimeField& field, uint64_t d,
                                       std::span<const uint64_t> A) {
  check_proper_divisor(field, d);
  if (A.empty()) fail(Errc::BadInput, "A must be nonempty");
  auto mask = subgroup_with_zero_mask(field, d);
  std::vector<uint64_t> B;
  for (uint64_t b = 0; b < field.p(); ++b) {
    bool ok = true;
    for (uint64_t a : A) {
      if (!mask[field.add(a % field.p(), b)]) {
        ok = false;
        break;
      }
    }
    if (ok) B.push_back(b);
  }
  return B;
}

StepanovCertificate certify(const StepanovInstance& instance) {
  const PrimeField& field = instance.field;
  // Re-validate; instance invariants are checked, not assumed.
  StepanovInstance inst =
      make_instance(field, instance.d, instance.A, instance.B);
  auto mask = subgroup_with_zero_mask(field, inst.d);
  for (uint64_t a : inst.A)
    for (uint64_t b : inst.B)
      if (!mask[field.add(a, b)])
        fail(Errc::SumsetEscapesSubgroup,
             "a = " + std::to_string(a) + ", b = " + std::to_string(b) +
                 " gives a sum outside Z_d u {0}");

  uint64_t M = inst.A.size();
  uint64_t N = inst.B.size();
  uint64_t r = count_in_negated(field, inst.A, inst.B);

  StepanovCertificate cert{std::move(inst),
                           /*degenerate=*/M < 2 || N == 0,
                           {},
                           0,
                           std::nullopt,
                           0,
                           r,
                           {},
                           false};
  cert.bound_ok = M * N <= cert.instance.d + r;
  if (cert.degenerate) {
    // |A| = 1 makes the bound immediate (all sums distinct), and an empty B
    // leaves nothing to bound; either way no polynomial is needed.
    if (!cert.bound_ok)
      fail(Errc::BoundViolated,
           "degenerate instance violates |A||B| <= d + r");
    return cert;
  }

  AuxiliaryPolynomial aux =
      build_auxiliary_polynomial(field, cert.instance.A, cert.instance.d);
  cert.weights = std::move(aux.weights);
  cert.constant = aux.constant;
  cert.aux = std::move(aux.poly);
  cert.exponent = aux.exponent;

  std::vector<uint64_t> negA;
  for (uint64_t a : cert.instance.A) negA.push_back(field.neg(a));
  std::sort(negA.begin(), negA.end());

  uint64_t mult_sum = 0;
  for (uint64_t b : cert.instance.B) {
    uint64_t order = root_multiplicity(*cert.aux, b);
    bool on_neg = std::binary_search(negA.begin(), negA.end(), b);
    uint64_t required = on_neg ? M - 1 : M;
    if (order < required)
      fail(Errc::BoundViolated,
           "root order " + std::to_string(order) + " at b = " +
               std::to_string(b) + " is below the guaranteed " +
               std::to_string(required));
    cert.multiplicities[b] = order;
    mult_sum += order;
  }
  if (mult_sum > cert.instance.d)
    fail(Errc::BoundViolated,
         "total root multiplicity exceeds deg F = " +
             std::to_string(cert.instance.d));
  if ((M - 1) * r + M * (N - r) > cert.instance.d)
    fail(Errc::BoundViolated, "multiplicity count exceeds deg F");
  if (!cert.bound_ok)
    fail(Errc::BoundViolated, "|A||B| > d + r despite the count");
  return cert;
}

AuditResult audit_certificate(const StepanovCertificate& cert) {
  const PrimeField& field = cert.instance.field;
  uint64_t p = field.p();
  uint64_t d = cert.instance.d;
  const auto& A = cert.instance.A;
  const auto& B = cert.instance.B;
  uint64_t M = A.size();
  uint64_t N = B.size();

  auto failure = [](const char* name) { return AuditResult{false, name}; };

  // Instance shape.
  if (d == 0 || (p - 1) % d != 0 || d == p - 1) return failure("instance: d");
  if (A.empty() || !std::is_sorted(A.begin(), A.end()) ||
      std::adjacent_find(A.begin(), A.end()) != A.end() || A.back() >= p)
    return failure("instance: A");
  if (!std::is_sorted(B.begin(), B.end()) ||
      std::adjacent_find(B.begin(), B.end()) != B.end() ||
      (!B.empty() && B.back() >= p))
    return failure("instance: B");
  auto mask = subgroup_with_zero_mask(field, d);
  for (uint64_t a : A)
    for (uint64_t b : B)
      if (!mask[field.add(a, b)]) return failure("instance: sumset escapes");

  // Intersection count, recomputed.
  std::vector<uint64_t> negA;
  for (uint64_t a : A) negA.push_back(field.neg(a));
  std::sort(negA.begin(), negA.end());
  uint64_t r = count_in_negated(field, A, B);
  if (cert.r != r) return failure("counting: stored r");

  if (cert.degenerate != (M < 2 || N == 0)) return failure("degenerate flag");
  if (cert.degenerate) {
    if (M * N > d + r) return failure("bound");
    if (!cert.bound_ok) return failure("bound flag");
    if (!cert.weights.empty() || cert.aux.has_value() ||
        !cert.multiplicities.empty())
      return failure("degenerate payload");
    return AuditResult{true, ""};
  }

  // Weights: not all zero, and the power-sum identities that force the
  // high coefficients of F to cancel.
  if (cert.weights.size() != M) return failure("coefficients: count");
  bool any = false;
  for (uint64_t w : cert.weights) {
    if (w >= p) return failure("coefficients: range");
    if (w != 0) any = true;
  }
  if (!any) return failure("coefficients: all zero");
  if (cert.constant == 0 || cert.constant >= p)
    return failure("coefficients: constant");
  for (uint64_t i = 0; i < M; ++i) {
    uint64_t s = 0;
    for (std::size_t k = 0; k < M; ++k)
      s = field.add(s, field.mul(cert.weights[k], field.pow(A[k], i)));
    uint64_t expect = (i == M - 1) ? cert.constant : 0;
    if (s != expect) return failure("coefficients: power sums");
  }

  if (cert.exponent != d + M - 1 || cert.exponent > p - 1)
    return failure("exponent");
  if (!cert.aux.has_value() || cert.aux->is_zero() || cert.aux->degree() != d)
    return failure("degree");

  // Root orders by synthetic division, from the stored polynomial alone.
  if (cert.multiplicities.size() != N) return failure("multiplicity: keys");
  uint64_t mult_sum = 0;
  for (uint64_t b : B) {
    auto it = cert.multiplicities.find(b);
    if (it == cert.multiplicities.end()) return failure("multiplicity: keys");
    uint64_t order = root_multiplicity(*cert.aux, b);
    if (order != it->second) return failure("multiplicity: stored order");
    bool on_neg = std::binary_search(negA.begin(), negA.end(), b);
    if (order < (on_neg ? M - 1 : M)) return failure("multiplicity: too low");
    mult_sum += order;
  }
  if (mult_sum > d) return failure("counting: multiplicity sum");
  if ((M - 1) * r + M * (N - r) > d) return failure("counting: inequality");
  if (M * N > d + r) return failure("bound");
  if (!cert.bound_ok) return failure("bound flag");
  return AuditResult{true, ""};
}

}  // namespace zd
