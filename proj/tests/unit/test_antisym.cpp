#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"

#include "hypcox/antisym.hpp"
#include "hypcox/errors.hpp"

using namespace hypcox;

TEST_SUITE("antisym") {

TEST_CASE("model charts of the hexagon") {
  oracle::DavisFixture f("s0", 3);
  const auto& a = *f.a;
  CHECK(a.num_chambers() == 6);
  CHECK(a.chains().top_dimension() == 1);
  CHECK(a.chains().rank(0) == 12);
  CHECK(a.chains().rank(1) == 12);
  // simplex and model are inverse on every simplex.
  for (int d = 0; d <= 1; ++d) {
    for (std::uint32_t i = 0; i < a.chains().rank(d); ++i) {
      auto [g, sigma] = a.model(d, i);
      CHECK(a.simplex(d, g, sigma) == i);
    }
  }
  for (std::uint32_t g = 0; g < 6; ++g) {
    for (Vertex s = 0; s < 2; ++s) CHECK(a.epsilon()[f.q.times(g, s)] == -a.epsilon()[g]);
  }
}

TEST_CASE("antisymmetrizing a vertex indicator") {
  oracle::DavisFixture f("s0", 3);
  const auto& a = *f.a;
  // The vertex cube g0 = 3 is chamber 3's cone point.
  const std::uint32_t g0 = 3;
  std::optional<std::uint32_t> idx = a.chains().index(0, std::vector<Vertex>{g0});
  REQUIRE(idx);
  auto h = oracle::basis_cochain(a, 0, *idx);
  auto ah = a.antisymmetrize(h);
  for (std::uint32_t i = 0; i < ah.values.size(); ++i) {
    auto [g, sigma] = a.model(0, i);
    if (sigma == 0) {
      CHECK(ah.values[i] == Rational(a.epsilon()[g] * a.epsilon()[g0], 6));
    } else {
      CHECK(ah.values[i] == 0);
    }
  }
}

TEST_CASE("antisymmetrization commutes with the coboundary and is idempotent") {
  for (const char* name : {"s0", "edge"}) {
    oracle::DavisFixture f(name, 3);
    const auto& a = *f.a;
    std::mt19937_64 rng(41);
    for (int d = 0; d <= a.chains().top_dimension(); ++d) {
      for (std::uint32_t i = 0; i < a.chains().rank(d); ++i) {
        auto r = a.check_prop_a(oracle::basis_cochain(a, d, i));
        CHECK(r.commutes_with_coboundary);
        CHECK(r.idempotent);
      }
      for (int t = 0; t < 20; ++t) CHECK(a.check_prop_a(oracle::random_cochain(rng, a, d)).ok());
    }
  }
}

TEST_CASE("the coboundary squares to zero") {
  oracle::DavisFixture f("edge", 3);
  const auto& a = *f.a;
  std::mt19937_64 rng(42);
  for (int t = 0; t < 10; ++t) {
    auto h = oracle::random_cochain(rng, a, 0);
    CHECK(a.coboundary(a.coboundary(h)) == a.zero(2));
  }
}

TEST_CASE("lifting relative cocycles") {
  oracle::DavisFixture f("s0", 3);
  const auto& a = *f.a;
  const auto& k = a.chamber_complex();
  auto gen = relative_generator(k, 1);
  REQUIRE(gen);
  CHECK_FALSE(relative_generator(k, 0));
  auto cert = a.lift_and_certify(1, *gen);
  CHECK(cert.delta_f_prime_zero);
  CHECK(cert.matches_antisymmetrization);
  CHECK(cert.nontrivial);
  CHECK(cert.pairing != 0);
  CHECK_FALSE(cert.obstruction.empty());

  // delta of the indicator of the cone point is a relative coboundary: its
  // lift is trivial and the pulled-back primitive recovers it.
  ChainComplex rel(k.k, std::span<const Vertex>(k.k_complement({})));
  REQUIRE(rel.rank(0) == 1);
  auto delta = rel.coboundary(0);
  std::vector<BigInt> cob(rel.rank(1), 0);
  for (const auto& e : delta.entries) cob[e.row] += e.value;
  auto trivial = a.lift_and_certify(1, cob);
  CHECK(trivial.delta_f_prime_zero);
  CHECK(trivial.matches_antisymmetrization);
  CHECK_FALSE(trivial.nontrivial);
  REQUIRE(trivial.pullback_recovers_f);
  CHECK(*trivial.pullback_recovers_f);
  REQUIRE(trivial.primitive);

  CHECK_THROWS_AS(a.lift_and_certify(1, {1}), DomainError);
  CHECK_THROWS_AS(a.lift_and_certify(5, *gen), DomainError);
}

TEST_CASE("relative generators in higher degree") {
  RacgSystem pentagon(oracle::nerve("pentagon"));
  auto k = chamber(pentagon);
  auto g2 = relative_generator(k, 2);
  REQUIRE(g2);
  CHECK_FALSE(relative_generator(k, 1));
  CHECK_THROWS_AS(relative_generator(k, 2, 4), ResourceError);
  RacgSystem oct(oracle::nerve("octahedron"));
  CHECK(relative_generator(chamber(oct), 3));
}

TEST_CASE("serial and parallel antisymmetrization agree") {
  oracle::DavisFixture par("edge", 5, Exec::parallel);
  oracle::DavisFixture ser("edge", 5, Exec::serial);
  std::mt19937_64 rng(43);
  for (int d = 0; d <= 2; ++d) {
    auto h = oracle::random_cochain(rng, *par.a, d);
    CHECK(par.a->antisymmetrize(h) == ser.a->antisymmetrize(h));
    CHECK(par.a->chamber_sum(h) == ser.a->chamber_sum(h));
  }
}

}  // TEST_SUITE
