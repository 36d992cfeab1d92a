#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hypcox/simplicial.hpp"

namespace hypcox {

using BigInt = boost::multiprecision::cpp_int;

// Dense square matrix, row-major.
template <class T>
struct SquareMatrix {
  std::size_t n = 0;
  std::vector<T> a;

  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t size) : n(size), a(size * size, T(0)) {}
  static SquareMatrix identity(std::size_t size) {
    SquareMatrix m(size);
    for (std::size_t i = 0; i < size; ++i) m(i, i) = T(1);
    return m;
  }
  T& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
  bool operator==(const SquareMatrix&) const = default;
};

using IntMatrix = SquareMatrix<std::int64_t>;
using BigMatrix = SquareMatrix<BigInt>;

// Throws Overflow if an entry leaves int64.
IntMatrix multiply(const IntMatrix& x, const IntMatrix& y);
BigMatrix multiply(const BigMatrix& x, const BigMatrix& y);
BigMatrix widen(const IntMatrix& m);
BigInt determinant(const IntMatrix& m);  // Bareiss, exact

// Right-angled Coxeter system: m_st = 2 on edges of the nerve, infinity off them.
class RacgSystem {
 public:
  RacgSystem() = default;
  // `nerve` must be flag; throws DomainError naming a non-simplex clique otherwise.
  explicit RacgSystem(SimplicialComplex nerve);

  std::size_t rank() const noexcept { return nerve_.num_vertices(); }
  const SimplicialComplex& nerve() const noexcept { return nerve_; }
  std::string generator_name(Vertex s) const { return nerve_.name(s); }
  bool commute(Vertex s, Vertex t) const { return s == t || nerve_.adjacent(s, t); }
  std::vector<std::pair<Vertex, Vertex>> commuting_pairs() const;

  // Cliques of the commutation graph including the empty set, ordered by
  // size, then lexicographically. Index 0 is the empty set.
  const std::vector<std::vector<Vertex>>& spherical() const noexcept { return spherical_; }
  std::optional<std::size_t> spherical_index(const std::vector<Vertex>& sorted_subset) const;

  IntMatrix tits_matrix(Vertex s) const;
  // Product of the generators in a spherical subset (order irrelevant).
  IntMatrix spherical_element(std::size_t index) const;

 private:
  SimplicialComplex nerve_;
  std::vector<std::vector<Vertex>> spherical_;
  std::map<std::vector<Vertex>, std::size_t> spherical_index_;
};

RacgSystem racg_from_nerve(const SimplicialComplex& x);

// Commutation graph to nerve: the flag complex of the graph.
SimplicialComplex clique_complex(VertexNames names, const std::vector<std::pair<Vertex, Vertex>>& edges);

// Hyperbolic iff the nerve is 5-large.
LargenessResult is_hyperbolic(const RacgSystem& w);

// Davis chamber K: the order complex of the spherical subsets. Vertex i of K
// is spherical subset i; vertex sets of the subcomplexes are sorted.
struct Chamber {
  SimplicialComplex k;
  const RacgSystem* system = nullptr;

  // K_s: chains whose smallest element is {s}, i.e. the span of {U : s in U}.
  std::vector<Vertex> k_s(Vertex s) const;
  // K^T = union of K_s over s in T = span of {U : U meets T}.
  std::vector<Vertex> k_union(const std::vector<Vertex>& t) const;
  // K^{S-T} = span of {U : U not inside T}.
  std::vector<Vertex> k_complement(const std::vector<Vertex>& t) const;
};
Chamber chamber(const RacgSystem& w);

// Coxeter matrix of the relaxation of the non-edges. Entry 0 stands for
// infinity. Values must exceed 4; keys must be non-commuting pairs.
inline constexpr int kInfinity = 0;
using CoxeterMatrix = std::vector<std::vector<int>>;
CoxeterMatrix relax_right_angles(const RacgSystem& w, const std::map<std::pair<Vertex, Vertex>, int>& assignment);

}  // namespace hypcox
