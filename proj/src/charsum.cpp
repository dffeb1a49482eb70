#include "zd/charsum.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "zd/parallel.hpp"

namespace zd {

namespace {

constexpr double kTol = 1e-6;

void check_same_field(const CharacterTable& chi, const ResidueSet& S) {
  if (!(chi.field() == S.field))
    fail(Errc::FieldMismatch, "character and set use different moduli");
}

CharSumResult finish(std::complex<double> value, double trivial,
                     double vinogradov, bool exact) {
  double amp = std::abs(value);
  if (amp > trivial + kTol)
    throw std::logic_error("character sum exceeded its trivial bound");
  return CharSumResult{value, trivial, vinogradov,
                       exact ? amp < trivial : amp < trivial - kTol, exact};
}

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// k distinct residues of F_p via a partial Fisher-Yates shuffle.
std::vector<uint64_t> sample_distinct(uint64_t p, uint64_t k,
                                      std::mt19937_64& rng) {
  std::vector<uint64_t> pool(p);
  for (uint64_t i = 0; i < p; ++i) pool[i] = i;
  std::vector<uint64_t> out(k);
  for (uint64_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<uint64_t> dist(i, p - 1);
    std::swap(pool[i], pool[dist(rng)]);
    out[i] = pool[i];
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

CharSumResult char_sum_double(const CharacterTable& chi, const ResidueSet& A,
                              const ResidueSet& B) {
  check_same_field(chi, A);
  check_same_field(chi, B);
  const PrimeField& field = A.field;
  double trivial = static_cast<double>(A.size()) * static_cast<double>(B.size());
  double vino = std::sqrt(static_cast<double>(field.p()) * trivial);
  if (chi.quadratic()) {
    int64_t acc = 0;
    for (uint64_t a : A.elems)
      for (uint64_t b : B.elems) acc += chi.sign(field.add(a, b));
    return finish({static_cast<double>(acc), 0.0}, trivial, vino, true);
  }
  std::complex<double> acc{0.0, 0.0};
  for (uint64_t a : A.elems)
    for (uint64_t b : B.elems) acc += chi(field.add(a, b));
  return finish(acc, trivial, vino, false);
}

CharSumResult char_sum_triple(const CharacterTable& chi, const ResidueSet& A,
                              const ResidueSet& B, const ResidueSet& C) {
  check_same_field(chi, A);
  check_same_field(chi, B);
  check_same_field(chi, C);
  const PrimeField& field = A.field;
  double trivial = static_cast<double>(A.size()) *
                   static_cast<double>(B.size()) *
                   static_cast<double>(C.size());
  if (chi.quadratic()) {
    int64_t acc = 0;
    for (uint64_t a : A.elems)
      for (uint64_t b : B.elems) {
        uint64_t ab = field.add(a, b);
        for (uint64_t c : C.elems) acc += chi.sign(field.add(ab, c));
      }
    return finish({static_cast<double>(acc), 0.0}, trivial, 0.0, true);
  }
  std::complex<double> acc{0.0, 0.0};
  for (uint64_t a : A.elems)
    for (uint64_t b : B.elems) {
      uint64_t ab = field.add(a, b);
      for (uint64_t c : C.elems) acc += chi(field.add(ab, c));
    }
  return finish(acc, trivial, 0.0, false);
}

bool vinogradov_check(const CharacterTable& chi, const ResidueSet& A,
                      const ResidueSet& B) {
  if (chi.order() < 2)
    fail(Errc::TrivialCharacter,
         "the estimate needs a nontrivial character");
  CharSumResult s = char_sum_double(chi, A, B);
  if (s.exact) {
    // |acc|^2 <= p |A||B|, compared in integers.
    auto acc = static_cast<int64_t>(s.value.real());
    __int128 lhs = static_cast<__int128>(acc) * acc;
    __int128 rhs = static_cast<__int128>(chi.modulus()) * A.size() * B.size();
    return lhs <= rhs;
  }
  return std::abs(s.value) <= s.vinogradov_bound + kTol;
}

ScanSummary nontriviality_scan(const PrimeField& field,
                               const CharacterTable& chi, double epsilon,
                               uint64_t trials, uint64_t seed,
                               unsigned threads) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0))
    fail(Errc::BadRange, "epsilon must lie strictly between 0 and 1");
  if (!(chi.field() == field))
    fail(Errc::FieldMismatch, "character was built over a different field");
  uint64_t p = field.p();
  uint64_t size = static_cast<uint64_t>(
      std::ceil(std::pow(static_cast<double>(p), epsilon)));
  size = std::clamp<uint64_t>(size, 1, p);

  ScanSummary summary;
  summary.p = p;
  summary.order = chi.order();
  summary.epsilon = epsilon;
  summary.set_size = size;
  summary.trials = trials;
  summary.seed = seed;
  if (trials == 0) return summary;

  std::vector<double> ratios(trials, 0.0);
  parallel_for(trials, threads, [&](std::size_t t) {
    std::mt19937_64 rng(splitmix64(seed ^ (0x517cc1b727220a95ULL * (t + 1))));
    ResidueSet A{field, sample_distinct(p, size, rng)};
    ResidueSet B{field, sample_distinct(p, size, rng)};
    CharSumResult s = char_sum_double(chi, A, B);
    ratios[t] = std::abs(s.value) / s.trivial_bound;
  });

  summary.min_ratio = ratios[0];
  summary.max_ratio = ratios[0];
  double total = 0.0;
  for (double r : ratios) {
    summary.min_ratio = std::min(summary.min_ratio, r);
    summary.max_ratio = std::max(summary.max_ratio, r);
    total += r;
    auto bin = static_cast<std::size_t>(r * summary.histogram.size());
    if (bin >= summary.histogram.size()) bin = summary.histogram.size() - 1;
    ++summary.histogram[bin];
    if (r < 1.0) ++summary.nontrivial_count;
  }
  summary.mean_ratio = total / static_cast<double>(trials);
  return summary;
}

}  // namespace zd
