#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace hypcox {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Coordinate-list integer matrix. normalize() sorts by (row, col), merges
// duplicates and drops zeros; every producer in the library calls it.
struct SparseIntMatrix {
  struct Entry {
    std::uint32_t row;
    std::uint32_t col;
    std::int64_t value;
  };
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Entry> entries;

  void add(std::uint32_t r, std::uint32_t c, std::int64_t v) { entries.push_back({r, c, v}); }
  void normalize();
  SparseIntMatrix transpose() const;
};

// Dense matrices for small witnesses and the leftovers of sparse elimination.
using DenseInt = std::vector<std::vector<BigInt>>;
using DenseRational = std::vector<std::vector<Rational>>;

// Rank over F_p, p prime.
std::size_t rank_mod_p(const SparseIntMatrix& m, std::uint32_t p);

struct SnfResult {
  std::vector<BigInt> factors;  // nonzero invariant factors, d1 | d2 | ...
  std::optional<DenseInt> u, v;  // u * m * v = diag(factors), when requested

  std::size_t rank() const noexcept { return factors.size(); }
};

// Unit pivots are eliminated sparsely; what is left goes to a dense
// arbitrary-precision reduction, which throws ResourceError past
// `dense_limit` entries. Transforms force the dense path and need
// rows * cols <= dense_limit.
SnfResult smith_normal_form(const SparseIntMatrix& m, bool with_transforms = false,
                            std::size_t dense_limit = 4'000'000);

// Dense Smith form with transforms; the reference for the sparse path.
SnfResult dense_smith_normal_form(DenseInt a, bool with_transforms);

// A solution of m x = b over Q (free variables set to zero), or nullopt if
// the system is inconsistent.
std::optional<std::vector<Rational>> solve_rational(const SparseIntMatrix& m, const std::vector<Rational>& b,
                                                    std::size_t dense_limit = 4'000'000);

// Basis of {x : m x = 0} over Q, one vector per free column in increasing
// column order. Dense; for small matrices.
std::vector<std::vector<Rational>> nullspace_rational(const SparseIntMatrix& m);

// Scale a rational vector to a primitive integer vector with the same direction.
std::vector<BigInt> primitive_integer(const std::vector<Rational>& v);

}  // namespace hypcox
