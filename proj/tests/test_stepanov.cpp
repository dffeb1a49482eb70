#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "test_util.hpp"
#include "zd/stepanov.hpp"

using namespace zd;
using zd::testing::fails_with;

TEST_CASE("null weights, closed form") {
  PrimeField f(13);

  auto two = lagrange_null_coeffs(f, std::vector<uint64_t>{1, 2});
  CHECK(two.weights == std::vector<uint64_t>{12, 1});
  CHECK(two.constant == 1);

  auto shifted = lagrange_null_coeffs(f, std::vector<uint64_t>{0, 1});
  CHECK(shifted.weights == std::vector<uint64_t>{12, 1});  // (-1, 1)
  CHECK(shifted.constant == 1);

  auto three = lagrange_null_coeffs(f, std::vector<uint64_t>{1, 2, 3});
  CHECK(three.weights == std::vector<uint64_t>{7, 12, 7});
  CHECK(three.constant == 1);

  CHECK(fails_with(Errc::DuplicateElements, [&] {
    lagrange_null_coeffs(f, std::vector<uint64_t>{4, 4});
  }));
}

TEST_CASE("null weights match a generic nullspace solver") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    uint64_t p = 0;
    do {
      p = (rng() % ((1ULL << 31) - 3)) | 1;
    } while (p < 3 || !is_prime_u64(p));
    PrimeField f(p);
    std::size_t m = 2 + rng() % 5;
    std::vector<uint64_t> a;
    while (a.size() < m) {
      uint64_t x = rng() % p;
      if (std::find(a.begin(), a.end(), x) == a.end()) a.push_back(x);
    }
    auto ours = lagrange_null_coeffs(f, a);
    auto solver = oracle::vandermonde_nullspace(f, a);
    // both span the same one-dimensional nullspace
    std::size_t k = 0;
    while (k < m && solver[k] == 0) ++k;
    REQUIRE(k < m);
    uint64_t scale = f.mul(ours.weights[k], f.inverse(solver[k]));
    CHECK(scale != 0);
    for (std::size_t i = 0; i < m; ++i)
      CHECK(ours.weights[i] == f.mul(scale, solver[i]));
  }
}

TEST_CASE("auxiliary polynomial") {
  PrimeField f(13);
  std::vector<uint64_t> A{1, 2};

  auto aux = build_auxiliary_polynomial(f, A, 6);
  CHECK(aux.exponent == 7);
  CHECK(aux.constant == 1);
  CHECK(aux.poly.degree() == 6);
  CHECK(aux.poly.leading_coeff() == 7);
  CHECK(aux.poly.coeff(7) == 0);
  CHECK(aux.poly.coeffs() ==
        std::vector<uint64_t>{9, 12, 1, 5, 11, 11, 7});

  SUBCASE("small field example") {
    PrimeField g(5);
    auto small = build_auxiliary_polynomial(g, std::vector<uint64_t>{0, 1}, 2);
    CHECK(small.poly.degree() == 2);
    CHECK(small.poly.coeffs() == std::vector<uint64_t>{0, 3, 3});
  }

  SUBCASE("degree is always exactly d") {
    std::mt19937_64 rng(5);
    for (uint64_t p : {13ULL, 29ULL, 61ULL}) {
      PrimeField g(p);
      for (uint64_t d = 1; d < p - 1; ++d) {
        if ((p - 1) % d != 0) continue;
        for (std::size_t m = 2; m + d <= p && m <= 4; ++m) {
          std::vector<uint64_t> nodes;
          while (nodes.size() < m) {
            uint64_t x = rng() % p;
            if (std::find(nodes.begin(), nodes.end(), x) == nodes.end())
              nodes.push_back(x);
          }
          CHECK(build_auxiliary_polynomial(g, nodes, d).poly.degree() == d);
        }
      }
    }
  }

  SUBCASE("exponent overflow and divisor screening") {
    std::vector<uint64_t> eight{0, 1, 2, 3, 4, 5, 6, 7};
    CHECK(fails_with(Errc::ExponentTooLarge,
                     [&] { build_auxiliary_polynomial(f, eight, 6); }));
    CHECK(fails_with(Errc::NotProperDivisor,
                     [&] { build_auxiliary_polynomial(f, A, 12); }));
    CHECK(fails_with(Errc::NotDivisor,
                     [&] { build_auxiliary_polynomial(f, A, 5); }));
  }

  SUBCASE("constant combination stays constant") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
      PrimeField g(1009);
      std::size_t m = 2 + rng() % 4;
      std::vector<uint64_t> nodes;
      while (nodes.size() < m) {
        uint64_t x = rng() % 1009;
        if (std::find(nodes.begin(), nodes.end(), x) == nodes.end())
          nodes.push_back(x);
      }
      auto nw = lagrange_null_coeffs(g, nodes);
      auto constant = shifted_power_combination(g, nw.weights, nodes, m - 1);
      CHECK(constant.degree() == 0);
      CHECK(constant.coeff(0) == 1);
    }
  }
}

TEST_CASE("max compatible B") {
  PrimeField f(13);
  CHECK(max_compatible_B(f, 6, std::vector<uint64_t>{1, 2}) ==
        std::vector<uint64_t>{2, 8, 11, 12});
  CHECK(max_compatible_B(f, 6, std::vector<uint64_t>{0}) ==
        std::vector<uint64_t>{0, 1, 3, 4, 9, 10, 12});
  std::vector<uint64_t> everything;
  for (uint64_t x = 0; x < 13; ++x) everything.push_back(x);
  CHECK(max_compatible_B(f, 6, everything).empty());
}

TEST_CASE("certification") {
  PrimeField f(13);

  SUBCASE("worked instance is tight") {
    auto inst = make_instance(f, 6, {1, 2}, {2, 8, 11, 12});
    auto cert = certify(inst);
    CHECK_FALSE(cert.degenerate);
    CHECK(cert.r == 2);
    CHECK(cert.bound_ok);
    CHECK(cert.instance.A.size() * cert.instance.B.size() == 8);
    CHECK(cert.instance.d + cert.r == 8);
    CHECK(cert.multiplicities ==
          std::map<uint64_t, uint64_t>{{2, 2}, {8, 2}, {11, 1}, {12, 1}});
    auto audit = audit_certificate(cert);
    CHECK(audit.ok);
  }

  SUBCASE("small B") {
    auto cert = certify(make_instance(f, 6, {1, 2}, {2}));
    CHECK(cert.r == 0);
    CHECK(cert.bound_ok);
    CHECK(audit_certificate(cert).ok);
  }

  SUBCASE("escaping sum is rejected with the pair") {
    CHECK(fails_with(Errc::SumsetEscapesSubgroup,
                     [&] { certify(make_instance(f, 6, {1, 2}, {1})); }));
  }

  SUBCASE("divisor screening") {
    CHECK(fails_with(Errc::NotProperDivisor,
                     [&] { make_instance(f, 12, {1, 2}, {2}); }));
    CHECK(fails_with(Errc::NotDivisor,
                     [&] { make_instance(f, 5, {1, 2}, {2}); }));
  }

  SUBCASE("singleton A gives a degenerate certificate") {
    auto B = max_compatible_B(f, 6, std::vector<uint64_t>{5});
    auto cert = certify(make_instance(f, 6, {5}, B));
    CHECK(cert.degenerate);
    CHECK_FALSE(cert.aux.has_value());
    CHECK(cert.bound_ok);
    CHECK(audit_certificate(cert).ok);
  }

  SUBCASE("empty B gives a degenerate certificate") {
    std::vector<uint64_t> everything;
    for (uint64_t x = 0; x < 13; ++x) everything.push_back(x);
    auto cert = certify(make_instance(f, 6, everything, {}));
    CHECK(cert.degenerate);
    CHECK(cert.bound_ok);
    CHECK(audit_certificate(cert).ok);
  }

  SUBCASE("derivative chain vanishes where the construction promises") {
    PrimeField g(61);
    for (auto A : {std::vector<uint64_t>{1, 2, 3}, {2, 5, 7, 11},
                   {0, 1, 4, 9, 16}}) {
      uint64_t d = 30;
      auto B = max_compatible_B(g, d, A);
      if (B.empty()) continue;
      auto cert = certify(make_instance(g, d, A, B));
      REQUIRE(cert.aux.has_value());
      uint64_t M = A.size();
      auto fj = *cert.aux;
      for (uint64_t j = 1; j + 2 <= M && j <= 5; ++j) {
        fj = fj.derivative();
        for (uint64_t b : B) CHECK(fj.eval(b) == 0);
      }
    }
  }
}

TEST_CASE("audits catch tampering") {
  PrimeField f(13);
  auto cert = certify(make_instance(f, 6, {1, 2}, {2, 8, 11, 12}));
  REQUIRE(audit_certificate(cert).ok);

  SUBCASE("polynomial shifted by one") {
    auto tampered = cert;
    tampered.aux = *tampered.aux + DensePolynomial::constant(f, 1);
    auto audit = audit_certificate(tampered);
    CHECK_FALSE(audit.ok);
    CHECK(audit.first_failure.find("multiplicity") != std::string::npos);
  }

  SUBCASE("r decremented") {
    auto tampered = cert;
    tampered.r -= 1;
    auto audit = audit_certificate(tampered);
    CHECK_FALSE(audit.ok);
    CHECK(audit.first_failure.find("counting") != std::string::npos);
  }

  SUBCASE("weights zeroed") {
    auto tampered = cert;
    tampered.weights.assign(tampered.weights.size(), 0);
    CHECK_FALSE(audit_certificate(tampered).ok);
  }

  SUBCASE("stored multiplicity inflated") {
    auto tampered = cert;
    tampered.multiplicities[11] = 2;
    CHECK_FALSE(audit_certificate(tampered).ok);
  }

  SUBCASE("flag flipped") {
    auto tampered = cert;
    tampered.bound_ok = false;
    CHECK_FALSE(audit_certificate(tampered).ok);
  }
}

TEST_CASE("exhaustive small-field certification") {
  // every |A| = 2 subset over a few small fields; the acceptance suite
  // extends this to p <= 61 with |A| = 3
  for (uint64_t p : {5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL}) {
    PrimeField f(p);
    for (uint64_t d = 1; d < p - 1; ++d) {
      if ((p - 1) % d != 0) continue;
      for (uint64_t a1 = 0; a1 < p; ++a1)
        for (uint64_t a2 = a1 + 1; a2 < p; ++a2) {
          std::vector<uint64_t> A{a1, a2};
          auto B = max_compatible_B(f, d, A);
          auto cert = certify(make_instance(f, d, A, B));
          CHECK(cert.bound_ok);
          CHECK(A.size() * B.size() <= d + cert.r);
          CHECK(audit_certificate(cert).ok);
        }
    }
  }
}
