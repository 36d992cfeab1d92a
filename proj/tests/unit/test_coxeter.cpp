#include "doctest.h"
#include "oracles.hpp"

#include "hypcox/coxeter.hpp"
#include "hypcox/errors.hpp"

using namespace hypcox;

namespace {

IntMatrix power(const IntMatrix& m, int k) {
  IntMatrix r = IntMatrix::identity(m.n);
  for (int i = 0; i < k; ++i) r = multiply(r, m);
  return r;
}

}  // namespace

TEST_SUITE("coxeter") {

TEST_CASE("spherical subsets of the pentagon") {
  RacgSystem w(oracle::nerve("pentagon"));
  CHECK(w.rank() == 5);
  CHECK(w.commuting_pairs().size() == 5);
  const auto& sph = w.spherical();
  REQUIRE(sph.size() == 11);
  CHECK(sph[0].empty());
  for (std::size_t i = 1; i < sph.size(); ++i) {
    CHECK((sph[i - 1].size() < sph[i].size() || (sph[i - 1].size() == sph[i].size() && sph[i - 1] < sph[i])));
    CHECK(w.spherical_index(sph[i]) == i);
  }
  CHECK_FALSE(w.spherical_index({0, 2}));
}

TEST_CASE("Tits representation") {
  for (const char* name : {"pentagon", "octahedron", "petersen", "s0"}) {
    RacgSystem w(oracle::nerve(name));
    const std::size_t n = w.rank();
    for (Vertex s = 0; s < n; ++s) {
      auto rs = w.tits_matrix(s);
      CHECK(multiply(rs, rs) == IntMatrix::identity(n));
      CHECK(determinant(rs) == -1);
      for (Vertex t = s + 1; t < n; ++t) {
        auto st = multiply(rs, w.tits_matrix(t));
        CHECK((st == multiply(w.tits_matrix(t), rs)) == w.commute(s, t));
        if (w.commute(s, t)) {
          CHECK(multiply(st, st) == IntMatrix::identity(n));
        } else {
          for (int k = 1; k <= 50; ++k) CHECK_FALSE(power(st, k) == IntMatrix::identity(n));
        }
      }
    }
    for (std::size_t i = 0; i < w.spherical().size(); ++i) {
      IntMatrix prod = IntMatrix::identity(n);
      for (Vertex s : w.spherical()[i]) prod = multiply(prod, w.tits_matrix(s));
      CHECK(w.spherical_element(i) == prod);
    }
  }
}

TEST_CASE("hyperbolicity is 5-largeness of the nerve") {
  CHECK(is_hyperbolic(RacgSystem(oracle::nerve("pentagon"))).ok);
  CHECK(is_hyperbolic(RacgSystem(oracle::nerve("s0"))).ok);
  auto sq = is_hyperbolic(RacgSystem(oracle::nerve("square")));
  CHECK_FALSE(sq.ok);
  CHECK(sq.witness.size() == 4);
  CHECK_THROWS_AS(RacgSystem(build_complex({{"a", "b"}, {"b", "c"}, {"c", "a"}})), DomainError);
}

TEST_CASE("nerve from the commutation graph") {
  auto x = clique_complex(VertexNames::numbered("s", 4), {{0, 1}, {1, 2}, {2, 0}, {2, 3}});
  CHECK(x.num_facets() == 2);
  CHECK(x.dimension() == 2);
  CHECK(racg_from_nerve(x).spherical().size() == 1 + 4 + 4 + 1);
}

TEST_CASE("Davis chamber") {
  RacgSystem w(oracle::nerve("pentagon"));
  auto k = chamber(w);
  CHECK(k.k.num_vertices() == 11);
  CHECK(k.k.num_facets() == 10);
  CHECK(k.k.dimension() == 2);
  for (Vertex s = 0; s < 5; ++s) CHECK(k.k_s(s).size() == 3);
  CHECK(k.k_complement({}).size() == 10);
  CHECK(k.k_union({0}) == k.k_s(0));
  // K^{S-T} for T = {s}: every U other than {} and {s}.
  CHECK(k.k_complement({0}).size() == 9);
  // A point nerve: K is an interval, K_s its far end.
  RacgSystem one(build_complex({{"a"}}));
  auto k1 = chamber(one);
  CHECK(k1.k.num_vertices() == 2);
  CHECK(k1.k.num_facets() == 1);
}

TEST_CASE("relaxing right angles") {
  RacgSystem w(oracle::nerve("pentagon"));
  auto m = relax_right_angles(w, {{{0, 2}, 5}, {{1, 3}, kInfinity}});
  CHECK(m[0][2] == 5);
  CHECK(m[2][0] == 5);
  CHECK(m[0][1] == 2);
  CHECK(m[1][3] == kInfinity);
  CHECK(m[2][4] == kInfinity);
  CHECK(m[3][3] == 1);
  CHECK_THROWS_AS(relax_right_angles(w, {{{0, 2}, 4}}), DomainError);
  CHECK_THROWS_AS(relax_right_angles(w, {{{0, 1}, 7}}), DomainError);
}

TEST_CASE("exact arithmetic") {
  IntMatrix big = IntMatrix::identity(2);
  big(0, 1) = std::int64_t{1} << 62;
  CHECK_THROWS_AS(multiply(big, big), Overflow);
  auto b = widen(big);
  CHECK(multiply(b, b)(0, 1) == BigInt(1) << 63);
  IntMatrix m(3);
  m(0, 0) = 2; m(0, 1) = 1; m(1, 0) = 1; m(1, 1) = 3; m(2, 2) = -4;
  CHECK(determinant(m) == -20);
}

}  // TEST_SUITE
