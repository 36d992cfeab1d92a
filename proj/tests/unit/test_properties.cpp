// Invariants that cut across modules, checked on random and fixture inputs.

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"

#include "hypcox/coxeter.hpp"
#include "hypcox/cubical.hpp"
#include "hypcox/errors.hpp"
#include "hypcox/homology.hpp"
#include "hypcox/pipeline.hpp"
#include "hypcox/quotient.hpp"
#include "hypcox/sparse.hpp"

using namespace hypcox;

namespace {

std::vector<std::string> vertex_names(const SimplicialComplex& x, const std::vector<Vertex>& vs) {
  std::vector<std::string> out;
  for (Vertex v : vs) out.push_back(x.name(v));
  return out;
}

bool unique_names(const SimplicialComplex& x) {
  std::set<std::string> seen;
  for (Vertex v = 0; v < x.num_vertices(); ++v) {
    if (!seen.insert(x.name(v)).second) return false;
  }
  return true;
}

bool all_links_flag(const CubicalComplex& y) {
  for (Vertex v = 0; v < y.num_vertices(); ++v) {
    if (!is_flag(vertex_link(y, v)).flag) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("properties") {

TEST_CASE("k-largeness is monotone in k") {
  std::mt19937_64 rng(51);
  for (int t = 0; t < 200; ++t) {
    auto x = oracle::random_complex(rng, 12);
    for (int k = 5; k <= 8; ++k) {
      if (is_k_large(x, k).ok) CHECK(is_k_large(x, k - 1).ok);
    }
  }
}

TEST_CASE("links of links") {
  std::mt19937_64 rng(52);
  int checked = 0;
  for (int t = 0; t < 150; ++t) {
    auto x = oracle::random_complex(rng, 10);
    auto simplices = all_simplices(x);
    for (const auto& sigma : simplices) {
      auto l = link(x, sigma);
      for (const auto& tau : all_simplices(l)) {
        auto joined = lookup_vertices(x, vertex_names(x, sigma));
        auto extra = lookup_vertices(x, vertex_names(l, tau));
        joined.insert(joined.end(), extra.begin(), extra.end());
        CHECK(same_complex(link(l, tau), link(x, joined)));
        ++checked;
      }
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("spans are idempotent") {
  std::mt19937_64 rng(53);
  for (int t = 0; t < 100; ++t) {
    auto x = oracle::random_complex(rng, 12);
    std::vector<Vertex> subset;
    for (Vertex v = 0; v < x.num_vertices(); ++v) {
      if (rng() % 2) subset.push_back(v);
    }
    auto once = induced_subcomplex(x, subset);
    auto names = vertex_names(x, subset);
    CHECK(same_complex(induced_subcomplex(once, names), once));
    CHECK(is_full_subcomplex(once, x));
  }
}

TEST_CASE("6-large complexes have SD2* links") {
  std::mt19937_64 rng(54);
  int seen = 0;
  for (int t = 0; t < 600 && seen < 40; ++t) {
    auto x = oracle::random_complex(rng, 12);
    if (!is_k_large(x, 6).ok) continue;
    ++seen;
    CHECK(check_sd2_star_links(x, 6).ok);
  }
  CHECK(check_sd2_star_links(oracle::nerve("hexagon"), 6).ok);
  CHECK(seen >= 40);
}

TEST_CASE("thickening keeps SD2* links") {
  std::mt19937_64 rng(55);
  int seen = 0;
  for (int t = 0; t < 300; ++t) {
    auto y = oracle::random_cube_complex(rng, 150);
    if (!all_links_flag(y)) continue;
    bool sd2 = true;
    for (Vertex v = 0; v < y.num_vertices() && sd2; ++v) sd2 = check_sd2_star(vertex_link(y, v), 6).ok;
    if (!sd2) continue;
    ++seen;
    auto th = thicken(y).complex;
    for (Vertex v = 0; v < th.num_vertices(); ++v) {
      auto l = link(th, std::vector<Vertex>{v});
      REQUIRE(is_flag(l).flag);
      CHECK(check_sd2_star(l, 6).ok);
    }
  }
  CHECK(seen >= 50);
}

TEST_CASE("full subcomplexes of cube links stay full in the thickening") {
  // Link vertices of Y are named after the far endpoint of their edge; in
  // Th(Y) the same endpoint is a neighbour of v, which is the injection.
  std::mt19937_64 rng(56);
  int checked = 0;
  for (int t = 0; t < 150; ++t) {
    auto y = oracle::random_cube_complex(rng, 150);
    if (!all_links_flag(y)) continue;
    auto th = thicken(y).complex;
    for (Vertex v = 0; v < y.num_vertices(); ++v) {
      auto yl = vertex_link(y, v);
      if (!unique_names(yl)) continue;
      auto tl = link(th, std::vector<Vertex>{v});
      for (int trial = 0; trial < 4; ++trial) {
        std::vector<Vertex> subset;
        for (Vertex u = 0; u < yl.num_vertices(); ++u) {
          if (rng() % 2) subset.push_back(u);
        }
        auto a = induced_subcomplex(yl, subset);
        auto image = induced_subcomplex(tl, vertex_names(yl, subset));
        CHECK(same_complex(image, a));
        ++checked;
      }
    }
  }
  CHECK(checked > 200);
}

TEST_CASE("nerve and system determine each other") {
  std::mt19937_64 rng(57);
  for (int t = 0; t < 60; ++t) {
    auto x = oracle::random_complex(rng, 10);
    if (!is_flag(x).flag) {
      CHECK_THROWS_AS(RacgSystem{x}, DomainError);
      continue;
    }
    RacgSystem w(x);
    CHECK(same_complex(w.nerve(), x));
    RacgSystem again(clique_complex(x.names(), w.commuting_pairs()));
    CHECK(same_complex(again.nerve(), x));
    // Spherical subsets are the empty set and the simplices.
    auto simplices = all_simplices(x);
    CHECK(w.spherical().size() == simplices.size() + 1);
    for (const auto& s : simplices) CHECK(w.spherical_index(s));
    // The chamber is contractible.
    if (x.num_vertices() <= 7) CHECK(homology(chamber(w).k, Coefficients::q()).betti() == std::vector<std::size_t>{1});
  }
}

TEST_CASE("cube counts of quotient Davis complexes") {
  for (auto [name, m] : std::vector<std::pair<std::string, int>>{{"s0", 3}, {"s0", 5}, {"edge", 3}, {"pentagon", 3}}) {
    RacgSystem w(oracle::nerve(name));
    auto q = congruence_image(w, m, 1'000'000);
    auto y = quotient_davis(w, q);
    std::vector<std::size_t> by_size(w.nerve().dimension() + 2, 0);
    for (const auto& s : w.spherical()) ++by_size[s.size()];
    for (int d = 0; d <= y.complex.dimension(); ++d) {
      CHECK(y.complex.count(d) * (std::size_t{1} << d) == q.order() * by_size[d]);
    }
    CHECK(y.links_match_nerve);
    if (is_k_large(w.nerve(), 5).ok) CHECK(is_locally_k_large(y.complex, 5).ok);
  }
}

TEST_CASE("displacement checks are monotone in r") {
  RacgSystem w(oracle::nerve("pentagon"));
  auto q = congruence_image(w, 3, 1'000'000);
  bool previous = true;
  for (int r = 1; r <= 6; ++r) {
    bool ok = displacement_at_least(w, q, r).ok;
    if (!previous) CHECK_FALSE(ok);
    previous = ok;
  }
  RacgSystem s0(oracle::nerve("s0"));
  auto d = congruence_image(s0, 3, 100);
  for (int r = 1; r <= 10; ++r) CHECK(displacement_at_least(s0, d, r).ok == (r <= 6));
}

TEST_CASE("congruence kernels contain only even words") {
  // Radii reach past the minimal displacement, so kernel elements show up.
  struct Case {
    std::string name;
    int m, radius;
  };
  for (const auto& [name, m, radius] : std::vector<Case>{{"s0", 3, 8}, {"s0", 5, 12}, {"pentagon", 3, 8}, {"square", 3, 8}}) {
    RacgSystem w(oracle::nerve(name));
    auto q = congruence_image(w, m, 1'000'000);
    auto ball = thickening_ball(w, radius, 5'000'000, &q);
    int kernel = 0;
    for (std::uint32_t i = 1; i < ball.size(); ++i) {
      if (ball.image[i] != 0) continue;
      ++kernel;
      CHECK(ball_word(w, ball, i).size() % 2 == 0);
    }
    INFO(name, " mod ", m);
    CHECK(kernel > 0);
  }
}

TEST_CASE("Smith factors ignore row and column order") {
  std::mt19937_64 rng(58);
  for (int t = 0; t < 60; ++t) {
    SparseIntMatrix m;
    m.rows = 2 + rng() % 7;
    m.cols = 2 + rng() % 7;
    for (std::uint32_t i = 0; i < m.rows; ++i) {
      for (std::uint32_t j = 0; j < m.cols; ++j) {
        if (rng() % 3 == 0) m.add(i, j, static_cast<std::int64_t>(rng() % 13) - 6);
      }
    }
    m.normalize();
    std::vector<std::uint32_t> rp(m.rows), cp(m.cols);
    std::iota(rp.begin(), rp.end(), 0);
    std::iota(cp.begin(), cp.end(), 0);
    std::shuffle(rp.begin(), rp.end(), rng);
    std::shuffle(cp.begin(), cp.end(), rng);
    SparseIntMatrix p;
    p.rows = m.rows;
    p.cols = m.cols;
    for (const auto& e : m.entries) p.add(rp[e.row], cp[e.col], e.value);
    p.normalize();
    CHECK(smith_normal_form(p).factors == smith_normal_form(m).factors);
  }
}

TEST_CASE("each stage raises the top cohomology degree by one") {
  for (const char* name : {"s0", "pentagon"}) {
    Json j;
    j["nerve"] = std::string("nerves/") + name + ".json";
    j["moduli"] = {3};
    auto out = run_pipeline(parse_config(j, oracle::data_dir()));
    REQUIRE(out.status == Status::ok);
    const Json& s = out.report["stages"][0];
    const int n = s["step1"]["n"].get<int>();
    CHECK(s["step3"]["cohomology"]["Q"]["top_nonzero"].get<int>() == n + 1);
  }
}

}  // TEST_SUITE
