#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hypcox/coxeter.hpp"
#include "hypcox/simplicial.hpp"
#include "hypcox/sparse.hpp"

namespace hypcox {

struct Coefficients {
  enum class Kind { integers, rationals, prime };
  Kind kind = Kind::integers;
  std::uint32_t p = 0;

  static Coefficients z() { return {Kind::integers, 0}; }
  static Coefficients q() { return {Kind::rationals, 0}; }
  static Coefficients f(std::uint32_t prime) { return {Kind::prime, prime}; }
  std::string label() const;  // "Z", "Q", "F2", ...
};

// Parses z | q | f2 | fp:<p>.
Coefficients parse_coefficients(const std::string& text);

// Simplices of one dimension, as sorted fixed-width vertex records in
// lexicographic order.
class SimplexList {
 public:
  SimplexList() = default;
  SimplexList(int dim, std::vector<Vertex> flat);
  int dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return dim_ < 0 ? 0 : flat_.size() / (dim_ + 1); }
  std::span<const Vertex> operator[](std::size_t i) const {
    return std::span<const Vertex>(flat_).subspan(i * (dim_ + 1), dim_ + 1);
  }
  std::optional<std::uint32_t> find(std::span<const Vertex> sorted_simplex) const;

 private:
  int dim_ = -1;
  std::vector<Vertex> flat_;
};

// Every simplex of X, by dimension. Throws ResourceError past `cap` simplices.
std::vector<SimplexList> enumerate_simplices(const SimplicialComplex& x, std::size_t cap = 200'000'000);

// Oriented simplicial chain complex of X, or of the pair (X, A) with the
// simplices of A removed. Simplices are oriented by increasing vertex index.
class ChainComplex {
 public:
  using Membership = std::function<bool(std::span<const Vertex>)>;

  explicit ChainComplex(const SimplicialComplex& x, std::size_t cap = 200'000'000);
  // A given as a subcomplex of X, matched by vertex names.
  ChainComplex(const SimplicialComplex& x, const SimplicialComplex& a, std::size_t cap = 200'000'000);
  // A = span of `a_vertices` in X.
  ChainComplex(const SimplicialComplex& x, std::span<const Vertex> a_vertices, std::size_t cap = 200'000'000);

  int top_dimension() const noexcept { return static_cast<int>(simplices_.size()) - 1; }
  bool relative() const noexcept { return relative_; }
  bool subcomplex_empty() const noexcept { return a_empty_; }
  // Basis of C_q: the relative simplices of dimension q.
  std::size_t rank(int q) const;
  std::span<const Vertex> cell(int q, std::uint32_t i) const;
  std::optional<std::uint32_t> index(int q, std::span<const Vertex> sorted_simplex) const;

  // d_q : C_q -> C_{q-1}; rows index C_{q-1}. Zero shape outside 1..top.
  SparseIntMatrix boundary(int q) const;
  // Coboundary d^q : C^q -> C^{q+1}, the transpose of d_{q+1}.
  SparseIntMatrix coboundary(int q) const { return boundary(q + 1).transpose(); }

  // d_{q-1} d_q = 0 in every degree.
  bool boundary_squares_to_zero() const;

 private:
  void build(const SimplicialComplex& x, const Membership& in_a, std::size_t cap);

  std::vector<SimplexList> simplices_;
  std::vector<std::vector<std::uint32_t>> rel_of_;   // absolute -> relative index or npos
  std::vector<std::vector<std::uint32_t>> abs_of_;   // relative -> absolute index
  bool relative_ = false;
  bool a_empty_ = true;
};

struct DegreeGroup {
  int degree = 0;
  std::size_t rank = 0;
  std::vector<BigInt> torsion;  // invariant factors > 1 (integer coefficients)

  bool nonzero() const { return rank > 0 || !torsion.empty(); }
};

struct HomologyResult {
  Coefficients coeff;
  bool reduced = false;
  bool cohomology = false;
  std::vector<DegreeGroup> groups;  // consecutive degrees, lowest first

  const DegreeGroup* at(int degree) const;
  std::size_t rank(int degree) const;
  std::vector<std::size_t> betti() const;  // ranks from degree 0, trailing zeros trimmed
  std::optional<int> top_nonzero() const;
};

HomologyResult homology(const ChainComplex& c, Coefficients coeff, bool reduced = false);
HomologyResult cohomology(const ChainComplex& c, Coefficients coeff, bool reduced = false);
HomologyResult homology(const SimplicialComplex& x, Coefficients coeff, bool reduced = false);
HomologyResult cohomology(const SimplicialComplex& x, Coefficients coeff, bool reduced = false);

// H^*(K, K^{S-T}).
HomologyResult relative_cohomology(const Chamber& k, const std::vector<Vertex>& t, Coefficients coeff = Coefficients::z());

struct VcdRow {
  std::vector<Vertex> t;
  std::optional<int> pair_max;  // max n with H^n(K, K^{S-T}) != 0
  std::optional<int> span_max;  // max n with reduced H^{n-1}(span(S - T)) != 0
};
struct VcdResult {
  int value = 0;
  std::vector<VcdRow> rows;
};
// Both formulas for every spherical T (or only the listed ones); throws
// VerificationFailure when they disagree for some T.
VcdResult vcd_lower_bound(const RacgSystem& w, const std::vector<std::size_t>* only = nullptr);

// Betti numbers agree in every degree.
bool betti_compare(const SimplicialComplex& a, const SimplicialComplex& b, Coefficients coeff);

}  // namespace hypcox
