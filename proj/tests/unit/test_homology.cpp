#include <algorithm>
#include <bit>
#include <random>

#include "doctest.h"
#include "oracles.hpp"

#include "hypcox/errors.hpp"
#include "hypcox/homology.hpp"
#include "hypcox/sparse.hpp"

using namespace hypcox;

namespace {

SparseIntMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
  SparseIntMatrix m;
  m.rows = rows.size();
  m.cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      if (rows[i][j] != 0) m.add(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), rows[i][j]);
    }
  }
  m.normalize();
  return m;
}

DenseInt dense(const SparseIntMatrix& m) {
  DenseInt a(m.rows, std::vector<BigInt>(m.cols, 0));
  for (const auto& e : m.entries) a[e.row][e.col] = e.value;
  return a;
}

DenseInt mul(const DenseInt& x, const DenseInt& y) {
  DenseInt r(x.size(), std::vector<BigInt>(y.empty() ? 0 : y[0].size(), 0));
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t k = 0; k < y.size(); ++k) {
      for (std::size_t j = 0; j < r[i].size(); ++j) r[i][j] += x[i][k] * y[k][j];
    }
  }
  return r;
}

// The 6-vertex projective plane.
SimplicialComplex rp2() {
  return build_complex({{"1", "2", "3"}, {"1", "3", "4"}, {"1", "4", "5"}, {"1", "5", "6"}, {"1", "6", "2"},
                        {"2", "3", "5"}, {"3", "4", "6"}, {"4", "5", "2"}, {"5", "6", "3"}, {"6", "2", "4"}});
}

std::vector<std::size_t> reduced_ranks(const HomologyResult& h) {
  std::vector<std::size_t> out;
  for (const auto& g : h.groups) out.push_back(g.rank);
  return out;
}

}  // namespace

TEST_SUITE("homology") {

TEST_CASE("coefficients") {
  CHECK(parse_coefficients("z").label() == "Z");
  CHECK(parse_coefficients("q").label() == "Q");
  CHECK(parse_coefficients("f2").label() == "F2");
  CHECK(parse_coefficients("fp:7").label() == "F7");
  CHECK_THROWS_AS(parse_coefficients("fp:9"), MalformedInput);
  CHECK_THROWS_AS(parse_coefficients("r"), MalformedInput);
}

TEST_CASE("Smith normal form") {
  auto m = from_rows({{2, 4}, {6, 8}});
  auto s = smith_normal_form(m, true);
  CHECK(s.factors == std::vector<BigInt>{2, 4});
  REQUIRE(s.u);
  REQUIRE(s.v);
  auto d = mul(mul(*s.u, dense(m)), *s.v);
  CHECK(d[0][0] == 2);
  CHECK(d[1][1] == 4);
  CHECK(d[0][1] == 0);
  CHECK(d[1][0] == 0);

  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> entry(-3, 3);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = 1 + rng() % 8, c = 1 + rng() % 8;
    std::vector<std::vector<std::int64_t>> rows(r, std::vector<std::int64_t>(c));
    for (auto& row : rows) {
      for (auto& v : row) v = (rng() % 3 == 0) ? entry(rng) : 0;
    }
    auto a = from_rows(rows);
    auto sparse = smith_normal_form(a);
    auto reference = dense_smith_normal_form(dense(a), true);
    CHECK(sparse.factors == reference.factors);
    for (std::size_t i = 1; i < sparse.factors.size(); ++i) CHECK(sparse.factors[i] % sparse.factors[i - 1] == 0);
    auto diag = mul(mul(*reference.u, dense(a)), *reference.v);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) {
        BigInt want = (i == j && i < reference.factors.size()) ? reference.factors[i] : BigInt(0);
        CHECK(diag[i][j] == want);
      }
    }
    for (std::uint32_t p : {2u, 3u, 5u}) {
      std::size_t expected = 0;
      for (const auto& f : reference.factors) expected += (f % p != 0);
      CHECK(rank_mod_p(a, p) == expected);
    }
  }
}

TEST_CASE("rational solving") {
  auto m = from_rows({{1, 2, 0}, {0, 0, 3}, {1, 2, 3}});
  auto x = solve_rational(m, {Rational(1), Rational(3), Rational(4)});
  REQUIRE(x);
  auto back = std::vector<Rational>(3, 0);
  for (const auto& e : m.entries) back[e.row] += Rational(e.value) * (*x)[e.col];
  CHECK(back == std::vector<Rational>{1, 3, 4});
  CHECK_FALSE(solve_rational(m, {Rational(1), Rational(3), Rational(5)}));
  auto ns = nullspace_rational(m);
  REQUIRE(ns.size() == 1);
  CHECK(primitive_integer(ns[0]) == std::vector<BigInt>{-2, 1, 0});
  CHECK(primitive_integer({Rational(1, 2), Rational(-1, 3)}) == std::vector<BigInt>{3, -2});
}

TEST_CASE("projective plane") {
  auto x = rp2();
  auto hz = homology(x, Coefficients::z());
  CHECK(hz.betti() == std::vector<std::size_t>{1});
  REQUIRE(hz.at(1));
  CHECK(hz.at(1)->torsion == std::vector<BigInt>{2});
  CHECK(homology(x, Coefficients::f(2)).betti() == std::vector<std::size_t>{1, 1, 1});
  CHECK(homology(x, Coefficients::q()).betti() == std::vector<std::size_t>{1});
  CHECK(homology(x, Coefficients::f(3)).betti() == std::vector<std::size_t>{1});
  auto cz = cohomology(x, Coefficients::z());
  REQUIRE(cz.at(2));
  CHECK(cz.at(2)->torsion == std::vector<BigInt>{2});
  CHECK(cz.at(1)->torsion.empty());
  CHECK(cz.rank(1) == 0);
  CHECK(cohomology(x, Coefficients::f(2)).top_nonzero() == 2);
}

TEST_CASE("reduced conventions") {
  SimplicialComplex empty;
  auto h = homology(empty, Coefficients::z(), true);
  CHECK(h.rank(-1) == 1);
  auto point = build_complex({{"a"}});
  CHECK_FALSE(homology(point, Coefficients::z(), true).top_nonzero());
  CHECK(homology(oracle::nerve("s0"), Coefficients::q(), true).rank(0) == 1);
  CHECK(cohomology(oracle::cycle(5), Coefficients::q(), true).top_nonzero() == 1);
}

TEST_CASE("agreement with dense elimination") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 80; ++trial) {
    auto x = oracle::random_complex(rng, 9);
    for (std::uint32_t p : {0u, 2u, 3u}) {
      auto coeff = p == 0 ? Coefficients::q() : Coefficients::f(p);
      CHECK(reduced_ranks(homology(x, coeff, true)) == oracle::reduced_betti(x, p));
      CHECK(reduced_ranks(cohomology(x, coeff, true)) == oracle::reduced_betti(x, p));
    }
  }
}

TEST_CASE("universal coefficients") {
  std::mt19937_64 rng(33);
  std::vector<SimplicialComplex> corpus{rp2(), oracle::nerve("icosahedron"), oracle::nerve("petersen")};
  for (int i = 0; i < 30; ++i) corpus.push_back(oracle::random_complex(rng, 10));
  for (const auto& x : corpus) {
    auto hz = homology(x, Coefficients::z());
    for (std::uint32_t p : {2u, 3u}) {
      auto hp = homology(x, Coefficients::f(p));
      for (int q = 0; q <= x.dimension(); ++q) {
        std::size_t expected = hz.rank(q);
        auto count = [&](int d) {
          std::size_t n = 0;
          if (const auto* g = hz.at(d)) {
            for (const auto& t : g->torsion) n += (t % p == 0);
          }
          return n;
        };
        expected += count(q) + count(q - 1);
        CHECK(hp.rank(q) == expected);
      }
    }
  }
}

TEST_CASE("relabelling vertices changes nothing") {
  std::mt19937_64 rng(34);
  std::vector<SimplicialComplex> corpus{rp2(), oracle::nerve("octahedron")};
  for (int i = 0; i < 20; ++i) corpus.push_back(oracle::random_complex(rng, 10));
  for (const auto& x : corpus) {
    std::vector<Vertex> perm(x.num_vertices());
    for (Vertex v = 0; v < perm.size(); ++v) perm[v] = v;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::vector<Vertex>> faces;
    for (std::size_t i = 0; i < x.num_facets(); ++i) {
      std::vector<Vertex> f;
      for (Vertex v : x.facet(i)) f.push_back(perm[v]);
      faces.push_back(f);
    }
    std::vector<std::string> names(x.num_vertices());
    for (Vertex v = 0; v < perm.size(); ++v) names[perm[v]] = x.name(v);
    SimplicialComplex y(VertexNames(names), faces);
    CHECK(same_complex(x, y));
    auto a = homology(x, Coefficients::z());
    auto b = homology(y, Coefficients::z());
    CHECK(a.betti() == b.betti());
    for (int q = 0; q <= x.dimension(); ++q) CHECK(a.at(q)->torsion == b.at(q)->torsion);
  }
}

TEST_CASE("relative homology") {
  // A disk modulo its boundary circle is a 2-sphere.
  auto disk = build_complex({{"c", "p0", "p1"}, {"c", "p1", "p2"}, {"c", "p2", "p3"}, {"c", "p3", "p4"}, {"c", "p4", "p0"}});
  auto rim = lookup_vertices(disk, {"p0", "p1", "p2", "p3", "p4"});
  ChainComplex pair(disk, std::span<const Vertex>(rim));
  CHECK(pair.relative());
  CHECK(pair.boundary_squares_to_zero());
  auto h = homology(pair, Coefficients::z());
  CHECK(h.rank(2) == 1);
  CHECK(h.rank(1) == 0);
  CHECK(h.rank(0) == 0);
  ChainComplex same(disk, oracle::cycle(5, "p"));
  CHECK(homology(same, Coefficients::z()).betti() == h.betti());
  CHECK_THROWS_AS(ChainComplex(disk, build_complex({{"p0", "p2"}})), DomainError);
}

TEST_CASE("simplex caps") {
  CHECK_THROWS_AS(enumerate_simplices(oracle::nerve("icosahedron"), 10), ResourceError);
  auto cells = enumerate_simplices(oracle::nerve("icosahedron"));
  CHECK(cells.size() == 3);
  CHECK(cells[0].size() == 12);
  CHECK(cells[1].size() == 30);
  CHECK(cells[2].size() == 20);
  CHECK(cells[1].find(cells[1][7]) == 7u);
}

TEST_CASE("vcd lower bounds") {
  const std::vector<std::pair<const char*, int>> table{{"s0", 1},      {"edge", 0},       {"pentagon", 2},
                                                       {"hexagon", 2}, {"octahedron", 3}, {"petersen", 2}};
  for (const auto& [name, expected] : table) {
    auto l = oracle::nerve(name);
    CHECK(oracle::vcd_lower_bound(l) == expected);
    RacgSystem w(l);
    auto v = vcd_lower_bound(w);
    CHECK(v.value == expected);
    CHECK(v.rows.size() == w.spherical().size());
    for (const auto& row : v.rows) CHECK(row.pair_max == row.span_max);
  }
}

TEST_CASE("the pair (K, K^S) shifts the cohomology of the nerve") {
  for (const char* name : {"s0", "pentagon", "octahedron", "petersen", "icosahedron"}) {
    auto l = oracle::nerve(name);
    RacgSystem w(l);
    auto k = chamber(w);
    for (auto coeff : {Coefficients::z(), Coefficients::q(), Coefficients::f(2)}) {
      auto rel = relative_cohomology(k, {}, coeff);
      auto red = cohomology(l, coeff, true);
      for (int q = -1; q <= l.dimension(); ++q) {
        CHECK(rel.rank(q + 1) == red.rank(q));
        const auto* a = rel.at(q + 1);
        const auto* b = red.at(q);
        CHECK((a ? a->torsion : std::vector<BigInt>{}) == (b ? b->torsion : std::vector<BigInt>{}));
      }
    }
  }
}

TEST_CASE("Betti comparison") {
  CHECK(betti_compare(oracle::cycle(5), oracle::cycle(7), Coefficients::q()));
  CHECK_FALSE(betti_compare(oracle::cycle(5), oracle::nerve("icosahedron"), Coefficients::f(2)));
}

}  // TEST_SUITE
