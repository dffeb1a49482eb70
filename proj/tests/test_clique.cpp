#include <doctest.h>

#include <cmath>
#include <map>

#include "oracles.hpp"
#include "test_util.hpp"
#include "zd/clique.hpp"
#include "zd/stepanov.hpp"

using namespace zd;
using zd::testing::fails_with;

TEST_CASE("cayley graph construction") {
  SUBCASE("five-cycle") {
    CayleyGraph g(PrimeField(5), 2);
    CHECK(g.connection() == std::vector<uint64_t>{1, 4});
    for (uint64_t v = 0; v < 5; ++v) {
      int deg = 0;
      for (uint64_t u = 0; u < 5; ++u)
        if (g.adjacent(v, u)) ++deg;
      CHECK(deg == 2);
    }
    CHECK(g.adjacent(0, 1));
    CHECK_FALSE(g.adjacent(0, 2));
  }

  SUBCASE("Paley graph on 13 vertices") {
    CayleyGraph g(PrimeField(13), 6);
    PrimeField f(13);
    for (uint64_t x = 0; x < 13; ++x) {
      int deg = 0;
      for (uint64_t y = 0; y < 13; ++y) {
        if (x == y) {
          CHECK_FALSE(g.adjacent(x, y));
          continue;
        }
        CHECK(g.adjacent(x, y) == (f.legendre(f.sub(x, y)) == 1));
        CHECK(g.adjacent(x, y) == g.adjacent(y, x));
        if (g.adjacent(x, y)) ++deg;
      }
      CHECK(deg == 6);
    }
  }

  SUBCASE("rejections") {
    CHECK(fails_with(Errc::OddSubgroupOrder,
                     [] { CayleyGraph(PrimeField(13), 3); }));
    CHECK(fails_with(Errc::NotDivisor,
                     [] { CayleyGraph(PrimeField(13), 8); }));
    CHECK(fails_with(Errc::NotProperDivisor,
                     [] { CayleyGraph(PrimeField(13), 12); }));
  }
}

TEST_CASE("clique numbers of small Paley graphs") {
  const std::map<uint64_t, uint64_t> expected{
      {5, 2},  {13, 3}, {17, 3}, {29, 4}, {37, 4}, {41, 5},
      {53, 5}, {61, 5}, {73, 5}, {89, 5}, {97, 6}, {101, 5}};
  for (auto [p, omega] : expected) {
    CayleyGraph g(PrimeField(p), (p - 1) / 2);
    auto result = clique_number(g);
    CHECK(result.exact);
    CHECK(result.omega == omega);
    CHECK(result.witness.size() == omega);
  }

  SUBCASE("lexicographically smallest witnesses") {
    auto g13 = clique_number(CayleyGraph(PrimeField(13), 6));
    CHECK(g13.witness == std::vector<uint64_t>{0, 1, 4});
    auto g17 = clique_number(CayleyGraph(PrimeField(17), 8));
    CHECK(g17.witness == std::vector<uint64_t>{0, 1, 2});
    auto g29 = clique_number(CayleyGraph(PrimeField(29), 14));
    CHECK(g29.witness == std::vector<uint64_t>{0, 1, 5, 6});
  }
}

TEST_CASE("search equals naive enumeration") {
  for (uint64_t p : {5ULL, 13ULL, 17ULL, 29ULL, 31ULL}) {
    PrimeField f(p);
    for (uint64_t d = 2; d < p - 1; d += 2) {
      if ((p - 1) % d != 0) continue;
      CayleyGraph g(f, d);
      auto result = clique_number(g);
      CHECK(result.omega == oracle::naive_clique_number(g));
      CHECK(result.witness == oracle::naive_lexmin_max_clique(g));
    }
  }
}

TEST_CASE("monotone in the subgroup") {
  PrimeField f(61);
  std::vector<uint64_t> even_divisors{2, 4, 6, 10, 12, 20, 30};
  std::map<uint64_t, uint64_t> omegas;
  for (uint64_t d : even_divisors)
    omegas[d] = clique_number(CayleyGraph(f, d)).omega;
  for (uint64_t d : even_divisors)
    for (uint64_t e : even_divisors)
      if (e % d == 0) CHECK(omegas[d] <= omegas[e]);
}

TEST_CASE("node budgets degrade to lower bounds") {
  CayleyGraph g(PrimeField(97), 48);
  auto full = clique_number(g);
  auto starved = clique_number(g, 1);
  CHECK_FALSE(starved.exact);
  CHECK(starved.omega <= full.omega);
  CHECK(starved.witness.size() == starved.omega);
  for (std::size_t i = 0; i < starved.witness.size(); ++i)
    for (std::size_t j = i + 1; j < starved.witness.size(); ++j)
      CHECK(g.adjacent(starved.witness[i], starved.witness[j]));
}

TEST_CASE("bound reports") {
  SUBCASE("tight at p = 13") {
    auto result = clique_number(CayleyGraph(PrimeField(13), 6));
    auto report = check_clique_bounds(13, 6, result);
    CHECK(report.subgroup_bound_ok);
    CHECK(report.refined_bound_ok);
    CHECK(report.paley);
    CHECK(report.refined_bound == doctest::Approx(3.0));  // (sqrt(25)+1)/2
    CHECK(report.omega == 3);
  }

  SUBCASE("tight at p = 5") {
    auto result = clique_number(CayleyGraph(PrimeField(5), 2));
    auto report = check_clique_bounds(5, 2, result);
    CHECK(report.refined_bound == doctest::Approx(2.0));  // (sqrt(9)+1)/2
    CHECK(report.omega == 2);
  }

  SUBCASE("slack at p = 17") {
    auto result = clique_number(CayleyGraph(PrimeField(17), 8));
    auto report = check_clique_bounds(17, 8, result);
    CHECK(report.subgroup_bound_ok);  // 6 <= 8
    CHECK(report.refined_bound == doctest::Approx((std::sqrt(33.0) + 1) / 2));
  }

  SUBCASE("fabricated violations abort") {
    auto result = clique_number(CayleyGraph(PrimeField(13), 6));
    auto fake = result;
    fake.omega = 5;
    fake.witness = {0, 1, 2, 3, 4};
    CHECK(fails_with(Errc::BoundViolated,
                     [&] { check_clique_bounds(13, 6, fake); }));
    auto inexact = result;
    inexact.exact = false;
    CHECK(fails_with(Errc::BadInput,
                     [&] { check_clique_bounds(13, 6, inexact); }));
  }
}

TEST_CASE("clique witnesses certify as stepanov instances") {
  for (uint64_t p : {13ULL, 17ULL, 29ULL, 37ULL}) {
    PrimeField f(p);
    uint64_t d = (p - 1) / 2;
    auto result = clique_number(CayleyGraph(f, d));
    std::vector<uint64_t> negated;
    for (uint64_t c : result.witness) negated.push_back(f.neg(c));
    auto cert = certify(make_instance(f, d, result.witness, negated));
    CHECK(cert.bound_ok);
    CHECK(audit_certificate(cert).ok);
  }
}
