#pragma once

#include <array>
#include <complex>
#include <cstdint>

#include "zd/field.hpp"

namespace zd {

// Value of a double or triple character sum together with the bounds it is
// measured against. Order-2 characters are summed exactly in integers; all
// other orders accumulate complex doubles (error well under 1e-6 at desk
// scale).
struct CharSumResult {
  std::complex<double> value;
  double trivial_bound = 0.0;     // |A||B| or |A||B||C|
  double vinogradov_bound = 0.0;  // sqrt(p|A||B|); 0 for triple sums
  bool nontrivial = false;        // |value| strictly below the trivial bound
  bool exact = false;             // integer path was used
};

// Sum of chi(a + b) over A x B.
CharSumResult char_sum_double(const CharacterTable& chi, const ResidueSet& A,
                              const ResidueSet& B);

// Sum of chi(a + b + c) over A x B x C.
CharSumResult char_sum_triple(const CharacterTable& chi, const ResidueSet& A,
                              const ResidueSet& B, const ResidueSet& C);

// True iff |S_chi(A, B)| <= sqrt(p|A||B|) (within 1e-6 on the float path;
// exactly, in integers, for order-2 characters). A false return would
// contradict the theorem and therefore flags an implementation bug; callers
// are expected to abort loudly on it.
bool vinogradov_check(const CharacterTable& chi, const ResidueSet& A,
                      const ResidueSet& B);

// Observed distribution of |S| / (|A||B|) over random pairs of sets of size
// ceil(p^epsilon); per-trial seeds derive deterministically from the master
// seed, so results are independent of threading.
struct ScanSummary {
  uint64_t p = 0;
  uint64_t order = 0;
  double epsilon = 0.0;
  uint64_t set_size = 0;
  uint64_t trials = 0;
  uint64_t seed = 0;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
  std::array<uint64_t, 20> histogram{};  // ratio bins over [0, 1]
  uint64_t nontrivial_count = 0;         // trials with ratio < 1
};

ScanSummary nontriviality_scan(const PrimeField& field,
                               const CharacterTable& chi, double epsilon,
                               uint64_t trials, uint64_t seed,
                               unsigned threads = 1);

}  // namespace zd
