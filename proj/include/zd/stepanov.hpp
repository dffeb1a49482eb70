#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zd/poly.hpp"

namespace zd {

// An instance of the certified bound: sets A (|A| = M) and B (|B| = N) over
// F_p whose pairwise sums all lie in Z_d together with 0, for a proper
// divisor d of p-1.
struct StepanovInstance {
  PrimeField field;
  uint64_t d = 0;
  std::vector<uint64_t> A;  // sorted, distinct, nonempty
  std::vector<uint64_t> B;  // sorted, distinct, possibly empty
};

StepanovInstance make_instance(const PrimeField& field, uint64_t d,
                               std::vector<uint64_t> A,
                               std::vector<uint64_t> B);

// Weights c_1..c_M with Sum_k c_k a_k^i = 0 for 0 <= i <= M-2, plus the
// resulting value of Sum_k c_k a_k^(M-1). The closed form
// c_k = prod_{j != k} (a_k - a_j)^{-1} normalizes that constant to 1.
struct NullWeights {
  std::vector<uint64_t> weights;
  uint64_t constant = 0;
};

NullWeights lagrange_null_coeffs(const PrimeField& field,
                                 std::span<const uint64_t> a);

// The polynomial -constant + Sum_k weights[k] * (x + a_k)^exponent with
// exponent = d + M - 1; its degree is exactly d because the M-1
// coefficients above x^d cancel by the choice of weights.
struct AuxiliaryPolynomial {
  DensePolynomial poly;
  std::vector<uint64_t> weights;
  uint64_t constant = 0;
  uint64_t exponent = 0;
};

AuxiliaryPolynomial build_auxiliary_polynomial(const PrimeField& field,
                                               std::span<const uint64_t> A,
                                               uint64_t d);

// Machine-checkable witness that |A||B| <= d + r with r = |B n (-A)|.
// When |A| < 2 or B is empty the bound is immediate and the certificate is
// degenerate: no polynomial is built.
struct StepanovCertificate {
  StepanovInstance instance;
  bool degenerate = false;
  std::vector<uint64_t> weights;            // c_1..c_M, empty if degenerate
  uint64_t constant = 0;                    // normalized to 1 when present
  std::optional<DensePolynomial> aux;       // degree-d auxiliary polynomial
  uint64_t exponent = 0;                    // d + M - 1
  uint64_t r = 0;                           // |B n (-A)|
  std::map<uint64_t, uint64_t> multiplicities;  // b -> verified root order
  bool bound_ok = false;                    // |A||B| <= d + r
};

// Builds the certificate and verifies every claim it carries: the root
// order at each b in B (at least M off -A, at least M-1 on it), the
// multiplicity count against deg F = d, and the final bound. Violating
// instances raise SumsetEscapesSubgroup naming the offending pair.
StepanovCertificate certify(const StepanovInstance& instance);

// The maximal B compatible with A: all b with a + b in Z_d u {0} for every
// a in A.
std::vector<uint64_t> max_compatible_B(const PrimeField& field, uint64_t d,
                                       std::span<const uint64_t> A);

// Independent re-verification of a certificate from its raw data; stored
// intermediate values are recomputed, not trusted. On failure names the
// first violated invariant.
struct AuditResult {
  bool ok = false;
  std::string first_failure;
};

AuditResult audit_certificate(const StepanovCertificate& cert);

}  // namespace zd
