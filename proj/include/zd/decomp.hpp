#pragma once

#include <cstdint>
#include <vector>

#include "zd/field.hpp"

namespace zd {

// A + B = {a + b : a in A, b in B}, exactly.
ResidueSet sumset(const ResidueSet& A, const ResidueSet& B);

// True iff all |A||B| pairwise sums are distinct (a co-Sidon pair).
bool check_unique_sums(const ResidueSet& A, const ResidueSet& B);

enum class DecompKind { Sum, Difference };

// One found decomposition: A + B = Z_d (sum kind, optionally with 0
// adjoined to the target) or {a - a' : a != a'} = Z_d (difference kind,
// B left empty). Flags are evaluated from scratch on the emitted sets.
struct DecompositionRecord {
  DecompKind kind = DecompKind::Sum;
  PrimeField field;
  uint64_t d = 0;
  bool include_zero = false;      // sum kind: target was Z_d u {0}
  std::vector<uint64_t> A;
  std::vector<uint64_t> B;
  bool unique_sums = false;       // all (nonzero) sums resp. differences distinct
  bool product_check = false;     // |A||B| == d resp. |A|(|A|-1) == d
  uint64_t zero_multiplicity = 0; // number of zero sums (include_zero mode)
  bool special_form = false;      // difference, d == (p-1)/2: p == (n^2+1)/2
  uint64_t special_n = 0;         // the odd n above, 0 when not applicable
  uint64_t orbit_id = 0;          // symmetry class under dilations (and
  uint64_t orbit_size = 0;        //   translations, for differences)
};

struct SumSearchOptions {
  uint64_t min_size = 2;     // smallest admissible |A| and |B|
  bool include_zero = false; // search A + B = Z_d u {0} instead
  uint64_t cap_p = 101;      // refuse larger primes (CapExceeded)
  unsigned threads = 1;      // anchor-space workers; output is unaffected
};

// Complete, duplicate-free list of sum decompositions; unordered pairs
// {A, B} are reported once. The search prunes with the proven facts that
// nonzero sums repeat never and |A||B| = d, but every emitted record is
// re-validated without them; a record that fails re-validation would
// contradict the bound and raises BoundViolated.
std::vector<DecompositionRecord> search_sum_decompositions(
    const PrimeField& field, uint64_t d, const SumSearchOptions& options = {});

struct DiffSearchOptions {
  uint64_t cap_p = 613;
};

// All sets A whose restricted differences cover Z_d exactly. Hits exist
// only when |A|(|A|-1) = d has an integer solution; candidates are
// enumerated as cliques of that size in the Cayley graph of Z_d.
std::vector<DecompositionRecord> search_difference_decompositions(
    const PrimeField& field, uint64_t d, const DiffSearchOptions& options = {});

// Exact counts over [1, x]: H = integers n with a divisor in (y, z],
// P = primes p with such a divisor of p - 1, pi_x = number of primes.
struct DivisorCountReport {
  uint64_t x = 0;
  double y = 0.0;
  double z = 0.0;
  uint64_t P = 0;
  uint64_t H = 0;
  uint64_t pi_x = 0;
};

DivisorCountReport divisor_range_counts(uint64_t x, double y, double z,
                                        uint64_t cap_x = 100000000ULL);

}  // namespace zd
