#include <doctest.h>

#include <cmath>
#include <random>

#include "test_util.hpp"
#include "zd/charsum.hpp"
#include "zd/stepanov.hpp"

using namespace zd;
using zd::testing::fails_with;

TEST_CASE("double sums") {
  PrimeField f(5);
  auto chi = char_table(f, 2);
  auto A = make_set(f, {1, 2});

  auto s = char_sum_double(chi, A, A);
  CHECK(s.exact);
  CHECK(s.value.real() == doctest::Approx(-2.0));
  CHECK(s.value.imag() == 0.0);
  CHECK(s.trivial_bound == 4.0);
  CHECK(s.vinogradov_bound == doctest::Approx(std::sqrt(20.0)));
  CHECK(s.nontrivial);

  SUBCASE("zero only") {
    auto z = make_set(f, {0});
    auto zero_sum = char_sum_double(chi, z, z);
    CHECK(zero_sum.value == std::complex<double>{0.0, 0.0});
  }

  SUBCASE("field mismatch") {
    PrimeField g(13);
    CHECK(fails_with(Errc::FieldMismatch, [&] {
      char_sum_double(chi, A, make_set(g, {1}));
    }));
  }

  SUBCASE("symmetry and disjoint additivity") {
    PrimeField g(101);
    auto psi = char_table(g, 4);
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<uint64_t> a1, a2, b;
      for (uint64_t x = 0; x < 101; ++x) {
        switch (rng() % 4) {
          case 0: a1.push_back(x); break;
          case 1: a2.push_back(x); break;
          case 2: b.push_back(x); break;
          default: break;
        }
      }
      if (a1.empty() || a2.empty() || b.empty()) continue;
      auto A1 = make_set(g, a1), A2 = make_set(g, a2), B = make_set(g, b);
      auto fwd = char_sum_double(psi, A1, B).value;
      auto rev = char_sum_double(psi, B, A1).value;
      CHECK(std::abs(fwd - rev) < 1e-9);
      std::vector<uint64_t> both = a1;
      both.insert(both.end(), a2.begin(), a2.end());
      auto joint = char_sum_double(psi, make_set(g, both), B).value;
      auto split = char_sum_double(psi, A1, B).value +
                   char_sum_double(psi, A2, B).value;
      CHECK(std::abs(joint - split) < 1e-9);
    }
  }

  SUBCASE("integer path agrees with the complex table") {
    PrimeField g(97);
    auto psi = char_table(g, 2);
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<uint64_t> a, b;
      for (uint64_t x = 0; x < 97; ++x) {
        if (rng() % 3 == 0) a.push_back(x);
        if (rng() % 3 == 0) b.push_back(x);
      }
      if (a.empty() || b.empty()) continue;
      auto A1 = make_set(g, a), B1 = make_set(g, b);
      auto s1 = char_sum_double(psi, A1, B1);
      std::complex<double> slow{0.0, 0.0};
      for (uint64_t x : a)
        for (uint64_t y : b) slow += psi(g.add(x, y));
      CHECK(std::abs(s1.value - slow) < 1e-6);
    }
  }
}

TEST_CASE("triple sums") {
  PrimeField f(5);
  auto chi = char_table(f, 2);
  auto A = make_set(f, {1, 2});
  auto s = char_sum_triple(chi, A, A, A);
  CHECK(s.value.real() == doctest::Approx(3.0));
  CHECK(s.trivial_bound == 8.0);
  CHECK(s.exact);

  SUBCASE("single term") {
    PrimeField g(13);
    auto psi = char_table(g, 2);
    auto x = make_set(g, {3});
    auto z = make_set(g, {0});
    auto one = char_sum_triple(psi, x, x, z);
    CHECK(one.value.real() == doctest::Approx(psi.sign(6)));
  }

  SUBCASE("empty factor") {
    auto e = ResidueSet{f, {}};
    CHECK(char_sum_triple(chi, A, A, e).value ==
          std::complex<double>{0.0, 0.0});
  }
}

TEST_CASE("vinogradov estimate") {
  PrimeField f5(5);
  auto chi5 = char_table(f5, 2);
  auto A = make_set(f5, {1, 2});
  CHECK(vinogradov_check(chi5, A, A));
  CHECK(vinogradov_check(chi5, ResidueSet{f5, {}}, A));

  PrimeField f13(13);
  auto chi13 = char_table(f13, 2);
  auto z6 = make_set(f13, {1, 3, 4, 9, 10, 12});
  auto s = char_sum_double(chi13, z6, z6);
  CHECK(s.value.real() == doctest::Approx(-6.0));
  CHECK(vinogradov_check(chi13, z6, z6));

  SUBCASE("random hammering, exact and complex paths") {
    PrimeField g(101);
    auto legendre = char_table(g, 2);
    auto quartic = char_table(g, 4);
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 300; ++trial) {
      std::vector<uint64_t> a, b;
      for (uint64_t x = 0; x < 101; ++x) {
        if (rng() % 2) a.push_back(x);
        if (rng() % 2) b.push_back(x);
      }
      auto A1 = ResidueSet{g, a}, B1 = ResidueSet{g, b};
      CHECK(vinogradov_check(legendre, A1, B1));
      CHECK(vinogradov_check(quartic, A1, B1));
    }
  }
}

TEST_CASE("characters trivial on the subgroup see the whole box") {
  // A + B inside Z_d with no zero sums forces S = |A||B| for any character
  // trivial on Z_d; with the estimate this re-derives |A||B| <= p.
  PrimeField f(13);
  auto chi = char_table(f, 2);  // order (p-1)/d = 2 is trivial on Z_6
  auto A = make_set(f, {1, 2});
  auto B = make_set(f, {2, 8});  // compatible, and avoids -A
  auto s = char_sum_double(chi, A, B);
  CHECK(s.value.real() == doctest::Approx(4.0));
  CHECK(4.0 <= std::sqrt(13.0 * 4));  // |A||B| <= p follows

  SUBCASE("zero sums knock out exactly r terms") {
    auto full = make_set(f, {2, 8, 11, 12});  // r = 2 against -A
    auto t = char_sum_double(chi, A, full);
    CHECK(t.value.real() == doctest::Approx(6.0));  // |A||B| - r = 8 - 2
  }

  SUBCASE("holds across whole instance families") {
    for (uint64_t p : {13ULL, 29ULL}) {
      PrimeField g(p);
      for (uint64_t d = 1; d < p - 1; ++d) {
        if ((p - 1) % d != 0 || (p - 1) / d < 2) continue;
        auto trivial_on_zd = char_table(g, (p - 1) / d);
        for (uint64_t a1 = 0; a1 < p; ++a1)
          for (uint64_t a2 = a1 + 1; a2 < p; ++a2) {
            std::vector<uint64_t> A2{a1, a2};
            auto B2 = max_compatible_B(g, d, A2);
            if (B2.empty()) continue;
            auto cert = certify(make_instance(g, d, A2, B2));
            auto sum = char_sum_double(trivial_on_zd, ResidueSet{g, A2},
                                       ResidueSet{g, B2});
            double expect = static_cast<double>(A2.size() * B2.size()) -
                            static_cast<double>(cert.r);
            CHECK(std::abs(sum.value -
                           std::complex<double>{expect, 0.0}) < 1e-6);
            if (cert.r == 0)
              CHECK(A2.size() * B2.size() <= p);  // via the estimate
          }
      }
    }
  }
}

TEST_CASE("nontriviality scans") {
  PrimeField f(101);
  auto chi = char_table(f, 2);

  auto summary = nontriviality_scan(f, chi, 0.5, 100, 424242);
  CHECK(summary.trials == 100);
  CHECK(summary.set_size == 11);  // ceil(101^0.5)
  CHECK(summary.max_ratio < 1.0);
  CHECK(summary.nontrivial_count == 100);
  CHECK(summary.min_ratio <= summary.mean_ratio);
  CHECK(summary.mean_ratio <= summary.max_ratio);
  uint64_t binned = 0;
  for (uint64_t c : summary.histogram) binned += c;
  CHECK(binned == 100);

  SUBCASE("deterministic and thread-count independent") {
    auto again = nontriviality_scan(f, chi, 0.5, 100, 424242);
    auto threaded = nontriviality_scan(f, chi, 0.5, 100, 424242, 4);
    CHECK(summary.min_ratio == again.min_ratio);
    CHECK(summary.max_ratio == again.max_ratio);
    CHECK(summary.mean_ratio == again.mean_ratio);
    CHECK(summary.histogram == again.histogram);
    CHECK(summary.min_ratio == threaded.min_ratio);
    CHECK(summary.max_ratio == threaded.max_ratio);
    CHECK(summary.mean_ratio == threaded.mean_ratio);
    CHECK(summary.histogram == threaded.histogram);
  }

  SUBCASE("no trials, empty summary") {
    auto empty = nontriviality_scan(f, chi, 0.5, 0, 1);
    CHECK(empty.trials == 0);
    CHECK(empty.max_ratio == 0.0);
    CHECK(empty.nontrivial_count == 0);
  }

  SUBCASE("epsilon range is screened") {
    CHECK(fails_with(Errc::BadRange,
                     [&] { nontriviality_scan(f, chi, 0.0, 1, 1); }));
    CHECK(fails_with(Errc::BadRange,
                     [&] { nontriviality_scan(f, chi, 1.0, 1, 1); }));
  }
}
