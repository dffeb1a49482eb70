#include "zd/decomp.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "zd/parallel.hpp"

namespace zd {

namespace {

using Words = std::vector<uint64_t>;

std::size_t word_count(uint64_t p) { return (p + 63) / 64; }

bool test_bit(const Words& w, uint64_t i) {
  return w[i / 64] >> (i % 64) & 1;
}

void set_bit(Words& w, uint64_t i) { w[i / 64] |= 1ULL << (i % 64); }

uint64_t popcount(const Words& w) {
  uint64_t n = 0;
  for (uint64_t v : w) n += std::popcount(v);
  return n;
}

void check_common_field(const ResidueSet& A, const ResidueSet& B) {
  if (!(A.field == B.field))
    fail(Errc::FieldMismatch, "sets live over different prime fields");
}

void check_proper(const PrimeField& field, uint64_t d) {
  if (d == 0 || (field.p() - 1) % d != 0)
    fail(Errc::NotDivisor, std::to_string(d) + " does not divide " +
                               std::to_string(field.p() - 1));
  if (d == field.p() - 1)
    fail(Errc::NotProperDivisor, "d = p-1 admits trivial decompositions");
}

// Shared validation of an emitted (A, B): recomputes the sumset and all
// flags from nothing but the two sets.
DecompositionRecord validate_sum_record(const PrimeField& field, uint64_t d,
                                        bool include_zero, const Words& target,
                                        const std::vector<uint64_t>& A,
                                        const std::vector<uint64_t>& B) {
  uint64_t p = field.p();
  std::vector<uint32_t> count(p, 0);
  for (uint64_t a : A)
    for (uint64_t b : B) ++count[field.add(a, b)];
  Words seen(word_count(p), 0);
  bool all_unique = true;
  bool nonzero_unique = true;
  for (uint64_t x = 0; x < p; ++x) {
    if (count[x] == 0) continue;
    set_bit(seen, x);
    if (count[x] > 1) {
      all_unique = false;
      if (x != 0) nonzero_unique = false;
    }
  }
  if (seen != target)
    throw std::logic_error("search emitted a non-covering candidate");
  DecompositionRecord rec{DecompKind::Sum,
                          field,
                          d,
                          include_zero,
                          A,
                          B,
                          all_unique,
                          A.size() * B.size() == d,
                          count[0],
                          false,
                          0,
                          0,
                          0};
  // Theorem-backed invariants; a failing record would be a counterexample.
  if (!include_zero && (!rec.unique_sums || !rec.product_check))
    fail(Errc::BoundViolated,
         "decomposition of Z_" + std::to_string(d) + " over p = " +
             std::to_string(p) + " violates the uniqueness bound");
  if (include_zero && !nonzero_unique)
    fail(Errc::BoundViolated,
         "decomposition of Z_" + std::to_string(d) +
             " u {0} repeats a nonzero sum");
  return rec;
}

// Exhaustive anchored search. B is anchored at its minimum b0; the small
// side A ranges over subsets of T - b0 while the intersection of the
// shifted targets bounds B. Sizes are pruned with the proven product
// identity, and every hit is re-validated without it.
class SumSearch {
 public:
  SumSearch(const PrimeField& field, uint64_t d, const SumSearchOptions& opt)
      : field_(field),
        p_(field.p()),
        d_(d),
        opt_(opt),
        words_(word_count(p_)) {
    target_.assign(words_, 0);
    for (uint64_t z : field.subgroup_elements(d)) set_bit(target_, z);
    if (opt.include_zero) set_bit(target_, 0);
    target_size_ = d + (opt.include_zero ? 1 : 0);

    tshift_.resize(p_);
    for (uint64_t a = 0; a < p_; ++a) {
      tshift_[a].assign(words_, 0);
      for (uint64_t b = 0; b < p_; ++b)
        if (test_bit(target_, field.add(a, b))) set_bit(tshift_[a], b);
    }

    // Admissible |A| values for the enumerated (small) side.
    for (uint64_t k = std::max<uint64_t>(opt.min_size, 1); k * k <= target_size_ + k; ++k) {
      if (!opt.include_zero && (d % k != 0 || k * k > d)) continue;
      sizes_.push_back(k);
    }
    // need_b_[k]: least |B| any completion with |A| >= k can still have.
    max_k_ = sizes_.empty() ? 0 : sizes_.back();
    need_b_.assign(max_k_ + 2, UINT64_MAX);
    for (uint64_t k = max_k_ + 1; k-- > 1;) {
      uint64_t best = need_b_[k + 1];
      if (std::find(sizes_.begin(), sizes_.end(), k) != sizes_.end())
        best = std::min(best, need_for(k));
      need_b_[k] = best;
    }
  }

  std::vector<DecompositionRecord> run() {
    if (max_k_ == 0) return {};
    // Anchors are independent, so they partition across workers; hits are
    // merged in anchor order afterwards, which keeps the output identical
    // for every thread count.
    std::vector<std::vector<Hit>> per_anchor(p_);
    parallel_for(p_, opt_.threads, [&](std::size_t b0) {
      Words bmask(words_, 0);
      for (uint64_t b = b0; b < p_; ++b) set_bit(bmask, b);
      std::vector<uint64_t> avec;
      extend(static_cast<uint64_t>(b0), avec, bmask, 0, per_anchor[b0]);
    });

    std::set<Hit> dedup;
    std::vector<DecompositionRecord> records;
    for (const auto& hits : per_anchor) {
      for (const auto& hit : hits) {
        auto canonical = hit;
        if (canonical.second < canonical.first)
          std::swap(canonical.first, canonical.second);
        if (!dedup.insert(canonical).second) continue;
        records.push_back(validate_sum_record(field_, d_, opt_.include_zero,
                                              target_, hit.first, hit.second));
      }
    }
    finalize_records(records);
    return records;
  }

 private:
  using Hit = std::pair<std::vector<uint64_t>, std::vector<uint64_t>>;

  uint64_t need_for(uint64_t k) const {
    uint64_t cover = (target_size_ + k - 1) / k;  // ceil(|T| / k)
    return std::max({opt_.min_size, k, cover});
  }

  void extend(uint64_t b0, std::vector<uint64_t>& avec, const Words& bmask,
              uint64_t first_candidate, std::vector<Hit>& hits) const {
    uint64_t k = avec.size();
    if (k >= 1 && k <= max_k_ &&
        std::find(sizes_.begin(), sizes_.end(), k) != sizes_.end() &&
        popcount(bmask) >= need_for(k))
      enumerate_b(b0, avec, bmask, hits);
    if (k == max_k_) return;
    for (uint64_t a = first_candidate; a < p_; ++a) {
      if (!test_bit(tshift_[b0], a)) continue;
      Words next(words_);
      for (std::size_t w = 0; w < words_; ++w)
        next[w] = bmask[w] & tshift_[a][w];
      if (popcount(next) < need_b_[k + 1]) continue;
      avec.push_back(a);
      extend(b0, avec, next, a + 1, hits);
      avec.pop_back();
    }
  }

  void enumerate_b(uint64_t b0, const std::vector<uint64_t>& avec,
                   const Words& bmask, std::vector<Hit>& hits) const {
    std::vector<uint64_t> cand;
    for (uint64_t b = b0; b < p_; ++b)
      if (test_bit(bmask, b)) cand.push_back(b);
    if (cand.empty() || cand.front() != b0) return;
    std::size_t n = cand.size();
    std::vector<Words> sums(n, Words(words_, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (uint64_t a : avec) set_bit(sums[i], field_.add(a, cand[i]));
    std::vector<Words> suffix(n + 1, Words(words_, 0));
    for (std::size_t i = n; i-- > 0;)
      for (std::size_t w = 0; w < words_; ++w)
        suffix[i][w] = suffix[i + 1][w] | sums[i][w];

    std::vector<uint64_t> chosen{b0};
    cover(avec, cand, sums, suffix, 1, sums[0], chosen, hits);
  }

  void cover(const std::vector<uint64_t>& avec,
             const std::vector<uint64_t>& cand, const std::vector<Words>& sums,
             const std::vector<Words>& suffix, std::size_t i, Words covered,
             std::vector<uint64_t>& chosen, std::vector<Hit>& hits) const {
    if (covered == target_) {
      if (chosen.size() >= std::max<uint64_t>(opt_.min_size, avec.size()))
        hits.emplace_back(avec, chosen);
      return;  // any extension would repeat a sum
    }
    if (i >= cand.size()) return;
    if (chosen.size() + (cand.size() - i) <
        std::max<uint64_t>(opt_.min_size, avec.size()))
      return;
    for (std::size_t w = 0; w < words_; ++w)
      if ((target_[w] & ~covered[w] & ~suffix[i][w]) != 0) return;

    // take cand[i] if its sums are fresh (overlap only ever allowed at 0)
    bool fresh = true;
    for (std::size_t w = 0; w < words_ && fresh; ++w) {
      uint64_t overlap = sums[i][w] & covered[w];
      if (opt_.include_zero && w == 0) overlap &= ~1ULL;
      if (overlap) fresh = false;
    }
    if (fresh) {
      Words next(words_);
      for (std::size_t w = 0; w < words_; ++w)
        next[w] = covered[w] | sums[i][w];
      chosen.push_back(cand[i]);
      cover(avec, cand, sums, suffix, i + 1, std::move(next), chosen, hits);
      chosen.pop_back();
    }
    cover(avec, cand, sums, suffix, i + 1, std::move(covered), chosen, hits);
  }

  void finalize_records(std::vector<DecompositionRecord>& records) const {
    std::sort(records.begin(), records.end(),
              [](const DecompositionRecord& x, const DecompositionRecord& y) {
                return std::tie(x.A, x.B) < std::tie(y.A, y.B);
              });
    // Annotate dilation orbits: lambda * A + lambda * B stays a
    // decomposition for every lambda in Z_d.
    auto canon = [&](std::vector<uint64_t> a, std::vector<uint64_t> b) {
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      if (b < a) std::swap(a, b);
      return std::make_pair(std::move(a), std::move(b));
    };
    std::map<Hit, uint64_t> rep_ids;
    auto lambdas = field_.subgroup_elements(d_);
    for (auto& rec : records) {
      std::set<Hit> orbit;
      for (uint64_t lam : lambdas) {
        std::vector<uint64_t> a2, b2;
        for (uint64_t a : rec.A) a2.push_back(field_.mul(lam, a));
        for (uint64_t b : rec.B) b2.push_back(field_.mul(lam, b));
        orbit.insert(canon(std::move(a2), std::move(b2)));
      }
      auto [it, inserted] =
          rep_ids.try_emplace(*orbit.begin(), rep_ids.size() + 1);
      rec.orbit_id = it->second;
      rec.orbit_size = orbit.size();
    }
  }

  PrimeField field_;
  uint64_t p_;
  uint64_t d_;
  SumSearchOptions opt_;
  std::size_t words_;
  Words target_;
  uint64_t target_size_ = 0;
  std::vector<Words> tshift_;
  std::vector<uint64_t> sizes_;
  std::vector<uint64_t> need_b_;
  uint64_t max_k_ = 0;
};

}  // namespace

ResidueSet sumset(const ResidueSet& A, const ResidueSet& B) {
  check_common_field(A, B);
  const PrimeField& field = A.field;
  std::vector<uint8_t> seen(field.p(), 0);
  for (uint64_t a : A.elems)
    for (uint64_t b : B.elems) seen[field.add(a, b)] = 1;
  std::vector<uint64_t> out;
  for (uint64_t x = 0; x < field.p(); ++x)
    if (seen[x]) out.push_back(x);
  return ResidueSet{field, std::move(out)};
}

bool check_unique_sums(const ResidueSet& A, const ResidueSet& B) {
  check_common_field(A, B);
  const PrimeField& field = A.field;
  std::vector<uint8_t> seen(field.p(), 0);
  for (uint64_t a : A.elems)
    for (uint64_t b : B.elems) {
      uint64_t s = field.add(a, b);
      if (seen[s]) return false;
      seen[s] = 1;
    }
  return true;
}

std::vector<DecompositionRecord> search_sum_decompositions(
    const PrimeField& field, uint64_t d, const SumSearchOptions& options) {
  check_proper(field, d);
  if (field.p() > options.cap_p)
    fail(Errc::CapExceeded, "p = " + std::to_string(field.p()) +
                                " exceeds the sum-search cap " +
                                std::to_string(options.cap_p));
  if (options.min_size < 1) fail(Errc::BadInput, "min_size must be >= 1");
  return SumSearch(field, d, options).run();
}

std::vector<DecompositionRecord> search_difference_decompositions(
    const PrimeField& field, uint64_t d, const DiffSearchOptions& options) {
  check_proper(field, d);
  if (d % 2 != 0)
    fail(Errc::OddSubgroupOrder,
         "Z_" + std::to_string(d) + " is not closed under negation");
  if (field.p() > options.cap_p)
    fail(Errc::CapExceeded, "p = " + std::to_string(field.p()) +
                                " exceeds the difference-search cap " +
                                std::to_string(options.cap_p));
  uint64_t p = field.p();

  // |A| is forced: coverage with unique differences needs |A|(|A|-1) = d.
  uint64_t k = (1 + static_cast<uint64_t>(std::sqrt(
                        static_cast<double>(4 * d + 1)))) / 2;
  while (k * (k - 1) > d) --k;
  while (k * (k - 1) < d) ++k;
  if (k * (k - 1) != d || k < 2) return {};

  auto zd = field.subgroup_elements(d);
  std::vector<uint8_t> zmask(p, 0);
  for (uint64_t z : zd) zmask[z] = 1;
  auto covers = [&](const std::vector<uint64_t>& A) {
    std::vector<uint8_t> seen(p, 0);
    uint64_t distinct = 0;
    for (uint64_t a : A)
      for (uint64_t b : A) {
        if (a == b) continue;
        uint64_t diff = field.sub(a, b);
        if (!zmask[diff]) return false;
        if (!seen[diff]) {
          seen[diff] = 1;
          ++distinct;
        }
      }
    return distinct == d;
  };

  // Any solution maps onto one containing {0, 1} by an affine map
  // x -> lambda*x + t with lambda in Z_d, which preserves solutions. So it
  // suffices to extend {0, 1} inside the common neighborhood and expand
  // the affine orbits afterwards.
  std::vector<uint64_t> reduced;
  for (uint64_t z : zd)
    if (z != 1 && zmask[field.sub(z, 1)]) reduced.push_back(z);

  std::vector<std::vector<uint64_t>> normalized;
  if (k == 2) {
    normalized.push_back({0, 1});
  } else {
    std::size_t n = reduced.size();
    std::vector<std::vector<uint8_t>> adj(n, std::vector<uint8_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && zmask[field.sub(reduced[i], reduced[j])]) adj[i][j] = 1;
    std::vector<std::size_t> clique;
    std::vector<std::size_t> cand(n);
    std::iota(cand.begin(), cand.end(), 0);
    auto dfs = [&](auto&& self, const std::vector<std::size_t>& cands) -> void {
      if (clique.size() == k - 2) {
        std::vector<uint64_t> A{0, 1};
        for (std::size_t i : clique) A.push_back(reduced[i]);
        std::sort(A.begin(), A.end());
        if (covers(A)) normalized.push_back(std::move(A));
        return;
      }
      if (clique.size() + cands.size() < k - 2) return;
      for (std::size_t idx = 0; idx < cands.size(); ++idx) {
        if (clique.size() + (cands.size() - idx) < k - 2) return;
        std::size_t v = cands[idx];
        std::vector<std::size_t> next;
        for (std::size_t j = idx + 1; j < cands.size(); ++j)
          if (adj[v][cands[j]]) next.push_back(cands[j]);
        clique.push_back(v);
        self(self, next);
        clique.pop_back();
      }
    };
    dfs(dfs, cand);
  }

  // Expand affine orbits; identical expansions mean the normalized hits
  // were already equivalent.
  std::map<std::vector<uint64_t>, std::size_t> seen_sets;
  std::vector<std::size_t> parent(normalized.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t h = 0; h < normalized.size(); ++h) {
    for (uint64_t lam : zd) {
      for (uint64_t t = 0; t < p; ++t) {
        std::vector<uint64_t> image;
        image.reserve(k);
        for (uint64_t a : normalized[h])
          image.push_back(field.add(field.mul(lam, a), t));
        std::sort(image.begin(), image.end());
        auto [it, inserted] = seen_sets.try_emplace(std::move(image), h);
        if (!inserted) parent[root(h)] = root(it->second);
      }
    }
  }

  bool paley_half = d == (p - 1) / 2;
  uint64_t n_odd = 2 * k - 1;  // k(k-1) = d makes 2p-1 = (2k-1)^2 when d = (p-1)/2
  std::map<std::size_t, uint64_t> orbit_ids;
  std::map<std::size_t, uint64_t> orbit_sizes;
  for (const auto& [sorted_set, h] : seen_sets) ++orbit_sizes[root(h)];

  std::vector<DecompositionRecord> records;
  for (const auto& [A, h] : seen_sets) {
    if (!covers(A))
      fail(Errc::BoundViolated,
           "affine image of a difference decomposition stopped covering Z_d");
    DecompositionRecord rec{DecompKind::Difference,
                            field,
                            d,
                            false,
                            A,
                            {},
                            true,
                            k * (k - 1) == d,
                            0,
                            false,
                            0,
                            0,
                            0};
    if (paley_half) {
      rec.special_form = n_odd * n_odd == 2 * p - 1;
      rec.special_n = n_odd;
      if (!rec.special_form)
        fail(Errc::BoundViolated,
             "difference decomposition at d = (p-1)/2 without p = (n^2+1)/2");
    }
    std::size_t r = root(h);
    auto [it, inserted] = orbit_ids.try_emplace(r, orbit_ids.size() + 1);
    rec.orbit_id = it->second;
    rec.orbit_size = orbit_sizes[r];
    records.push_back(std::move(rec));
  }
  return records;
}

DivisorCountReport divisor_range_counts(uint64_t x, double y, double z,
                                        uint64_t cap_x) {
  if (!(y > 0.0) || !(y < z))
    fail(Errc::BadRange, "need 0 < y < z");
  if (x < 1) fail(Errc::BadInput, "x must be at least 1");
  if (x > cap_x)
    fail(Errc::CapExceeded,
         "x = " + std::to_string(x) + " exceeds the sieve cap");

  // Snap boundaries that are within 1e-9 of an integer before truncating,
  // so y = sqrt(x)/100 style inputs land on the intended divisor range.
  auto snap_floor = [](double v) {
    return static_cast<uint64_t>(std::floor(v + 1e-9));
  };
  uint64_t dlo = snap_floor(y) + 1;
  uint64_t dhi = std::min<uint64_t>(snap_floor(z), x);

  std::vector<bool> has_div(x + 1, false);
  for (uint64_t dd = dlo; dd <= dhi; ++dd)
    for (uint64_t m = dd; m <= x; m += dd) has_div[m] = true;

  std::vector<bool> is_prime(x + 1, true);
  is_prime[0] = false;
  is_prime[1] = false;
  for (uint64_t i = 2; i * i <= x; ++i)
    if (is_prime[i])
      for (uint64_t j = i * i; j <= x; j += i) is_prime[j] = false;

  DivisorCountReport report{x, y, z, 0, 0, 0};
  for (uint64_t n = 1; n <= x; ++n) {
    if (has_div[n]) ++report.H;
    if (is_prime[n]) {
      ++report.pi_x;
      if (has_div[n - 1]) ++report.P;
    }
  }
  return report;
}

}  // namespace zd
