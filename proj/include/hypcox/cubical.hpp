#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hypcox/names.hpp"
#include "hypcox/parallel.hpp"
#include "hypcox/simplicial.hpp"

namespace hypcox {

using CubeId = std::uint32_t;

// Finite abstract cube complex.
//
// A d-cube is an array of 2^d distinct corners; corner m and corner m ^ (1<<i)
// span an edge parallel to axis i. Cubes are kept in canonical corner form
// (smallest vertex at mask 0, axes ordered by the neighbour of that vertex)
// and numbered by dimension, then lexicographically by corners. Cube v of
// dimension 0 is vertex v.
class CubicalComplex {
 public:
  CubicalComplex() = default;

  // `cubes` lists corner arrays; faces are added automatically.
  // With `validate`, two maximal cubes meeting in a vertex must meet in a
  // common face (MalformedInput names the pair otherwise).
  CubicalComplex(VertexNames names, const std::vector<std::vector<Vertex>>& cubes, bool validate = true);

  // Flat form: dims[i] is the dimension of cube i, its corners are the next
  // 2^dims[i] entries of `corners`.
  CubicalComplex(VertexNames names, std::span<const std::uint8_t> dims, std::span<const Vertex> corners,
                 bool validate = true);

  std::size_t num_vertices() const noexcept { return names_.size(); }
  const VertexNames& names() const noexcept { return names_; }
  std::size_t num_cubes() const noexcept { return dims_.size(); }
  int dimension() const noexcept { return static_cast<int>(dim_begin_.size()) - 2; }
  // Cubes of dimension d are ids [dim_begin(d), dim_begin(d + 1)).
  CubeId dim_begin(int d) const;
  std::size_t count(int d) const { return dim_begin(d + 1) - dim_begin(d); }

  int dim(CubeId c) const { return dims_[c]; }
  std::span<const Vertex> corners(CubeId c) const;
  std::vector<Vertex> vertex_set(CubeId c) const;  // sorted
  // 2d codimension-one faces, ordered (axis 0 side 0, axis 0 side 1, axis 1 ...).
  std::span<const CubeId> facets(CubeId c) const;
  bool is_maximal(CubeId c) const { return maximal_[c] != 0; }
  std::span<const CubeId> maximal_cubes() const noexcept { return maximal_list_; }
  std::span<const CubeId> maximal_at(Vertex v) const;

  // Any corner arrangement of an existing cube.
  std::optional<CubeId> find(std::span<const Vertex> corners) const;

  long long euler_characteristic() const;

 private:
  void build(std::vector<std::vector<Vertex>> by_dim, bool validate);
  void check_intersections() const;

  VertexNames names_;
  std::vector<std::uint8_t> dims_;
  std::vector<std::size_t> corner_offset_;
  std::vector<Vertex> corner_data_;
  std::vector<CubeId> dim_begin_{0};
  std::vector<std::size_t> facet_offset_;
  std::vector<CubeId> facet_data_;
  std::vector<std::uint8_t> maximal_;
  std::vector<CubeId> maximal_list_;
  std::vector<std::size_t> at_offset_;
  std::vector<CubeId> at_data_;
};

// Canonical form of a corner array (see CubicalComplex). Throws
// MalformedInput unless the length is a power of two with distinct corners.
std::vector<Vertex> canonical_corners(std::span<const Vertex> corners);

// Corners of the face of `corners` obtained by fixing axis `axis` to `side`.
std::vector<Vertex> cube_face(std::span<const Vertex> corners, int axis, int side);

// Link of v: one vertex per edge at v (named after the far endpoint); edges
// at v span a simplex iff they lie in a common cube.
SimplicialComplex vertex_link(const CubicalComplex& y, Vertex v);

struct CubicalLargenessResult {
  bool ok = true;
  Vertex vertex = 0;  // a vertex whose link fails
  LargenessResult link_result;
  SimplicialComplex failing_link;
};
CubicalLargenessResult is_locally_k_large(const CubicalComplex& y, int k, Exec exec = Exec::parallel);

struct Thickening {
  SimplicialComplex complex;
  std::vector<CubeId> facet_cube;  // maximal cube behind facet i of `complex`
};
// Th(Y): a vertex set is a simplex iff it lies in a common cube.
Thickening thicken(const CubicalComplex& y);

// Order complex of the face poset. Vertex i of `complex` is cube i, so a
// simplex listed in increasing vertex order is a chain listed from its
// smallest cube upwards.
struct ChamberedTriangulation {
  SimplicialComplex complex;
  const CubicalComplex* cubes = nullptr;

  // Chamber of a chain: the smallest vertex of its smallest cube.
  Vertex chamber(std::span<const Vertex> chain) const;
};
// Throws ResourceError if the triangulation would have more than
// `max_facets` facets.
ChamberedTriangulation chambered_triangulation(const CubicalComplex& y, std::size_t max_facets = 50'000'000);

}  // namespace hypcox
