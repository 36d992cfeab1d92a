#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hypcox/graph.hpp"
#include "hypcox/names.hpp"

namespace hypcox {

// Finite abstract simplicial complex stored by its maximal faces.
//
// Vertices are dense indices 0..n-1 carrying names. Every face is kept
// sorted by vertex index; the facet list is sorted lexicographically, so two
// complexes built from the same data compare equal element by element.
// A set of vertices is a simplex iff it lies in some maximal face.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;  // the empty complex

  // Normalizes `faces`: sorts each face, absorbs faces contained in others,
  // and adds a 0-dimensional facet for every named vertex lying in no face.
  // Throws MalformedInput on a repeated vertex inside one face, an empty
  // face, or a vertex index outside `names`.
  SimplicialComplex(VertexNames names, std::vector<std::vector<Vertex>> faces);

  std::size_t num_vertices() const noexcept { return names_.size(); }
  bool empty() const noexcept { return names_.size() == 0; }
  const VertexNames& names() const noexcept { return names_; }
  std::string name(Vertex v) const { return names_[v]; }
  std::optional<Vertex> find(std::string_view name) const { return names_.find(name); }

  std::size_t num_facets() const noexcept { return facet_offsets_.empty() ? 0 : facet_offsets_.size() - 1; }
  std::span<const Vertex> facet(std::size_t i) const;
  std::span<const std::uint32_t> facets_of(Vertex v) const;

  std::span<const Vertex> neighbors(Vertex v) const;  // sorted
  bool adjacent(Vertex a, Vertex b) const;
  std::size_t num_edges() const noexcept { return neighbor_data_.size() / 2; }
  GraphView skeleton() const noexcept { return {neighbor_offsets_, neighbor_data_}; }

  // Order of `vertices` is irrelevant; the empty set is a simplex.
  bool is_simplex(std::span<const Vertex> vertices) const;
  int dimension() const noexcept { return dimension_; }

 private:
  void build_indices();

  VertexNames names_;
  std::vector<Vertex> facet_data_;
  std::vector<std::size_t> facet_offsets_;
  std::vector<std::uint32_t> vertex_facet_data_;
  std::vector<std::size_t> vertex_facet_offsets_;
  std::vector<Vertex> neighbor_data_;
  std::vector<std::size_t> neighbor_offsets_;
  int dimension_ = -1;
};

// Builds a complex from faces given by vertex names. Vertex order is the
// order of first appearance unless `vertex_order` is supplied (it must then
// list every vertex used, and may list extra isolated vertices).
SimplicialComplex build_complex(const std::vector<std::vector<std::string>>& faces,
                                const std::vector<std::string>& vertex_order = {});

// Same facets, by name. Vertex order is ignored.
bool same_complex(const SimplicialComplex& a, const SimplicialComplex& b);

// Vertex indices of `names`; throws DomainError for an unknown name.
std::vector<Vertex> lookup_vertices(const SimplicialComplex& x, const std::vector<std::string>& names);

// span(A): all simplices of X with vertices in A. Vertices keep X's relative order.
SimplicialComplex induced_subcomplex(const SimplicialComplex& x, std::span<const Vertex> subset);
SimplicialComplex induced_subcomplex(const SimplicialComplex& x, const std::vector<std::string>& names);

// X_sigma = { tau : tau and sigma disjoint, tau u sigma a simplex }.
SimplicialComplex link(const SimplicialComplex& x, std::span<const Vertex> sigma);

// Every simplex of X (including the vertices), sorted by dimension then
// lexicographically. Intended for small complexes.
std::vector<std::vector<Vertex>> all_simplices(const SimplicialComplex& x);

struct FlagResult {
  bool flag = true;
  std::vector<Vertex> witness;  // pairwise adjacent, not a simplex; minimal
};
FlagResult is_flag(const SimplicialComplex& x);

struct LargenessResult {
  enum class Witness { none, non_simplex_clique, full_cycle };
  bool ok = true;
  Witness kind = Witness::none;
  std::vector<Vertex> witness;  // clique, or cycle in cyclic order
};

// Flag and without full j-cycles for 4 <= j < k. Throws DomainError if k < 4.
LargenessResult is_k_large(const SimplicialComplex& x, int k);

// All links of nonempty simplices are k-large.
struct LocalLargenessResult {
  bool ok = true;
  std::vector<Vertex> simplex;    // simplex whose link fails
  LargenessResult link_result;    // witness in that link's own indexing
  SimplicialComplex failing_link;
};
LocalLargenessResult is_locally_k_large(const SimplicialComplex& x, int k);

// Full (chordless) cycles of length 4..max_len, each once, in canonical
// form: lexicographically minimal among rotations and reflections. Sorted.
std::vector<std::vector<Vertex>> enumerate_full_cycles(const SimplicialComplex& x, int max_len);

struct Wheel {
  Vertex hub = 0;
  std::vector<Vertex> rim;
  std::optional<Vertex> pendant;  // apex t of the triangle on rim[0], rim[1]
};

struct Sd2Result {
  bool ok = true;
  std::optional<Wheel> witness;
};

// SD2*(k): no full 4-wheel, and each l-wheel with a pendant triangle
// (5 <= l < k) lies in some closed ball B1(v) = span({v} u N(v)).
// Throws DomainError if k < 6 or X is not flag.
Sd2Result check_sd2_star(const SimplicialComplex& x, int k);

struct Sd2LinksResult {
  bool ok = true;
  std::vector<Vertex> simplex;  // empty when X itself fails
  SimplicialComplex failing_complex;
  Sd2Result result;
};
// X and the link of every simplex of X satisfy SD2*(k).
Sd2LinksResult check_sd2_star_links(const SimplicialComplex& x, int k);

// Z is the span of its own vertices inside X. Throws DomainError unless
// every vertex and facet of Z (matched by name) belongs to X.
bool is_full_subcomplex(const SimplicialComplex& z, const SimplicialComplex& x);

}  // namespace hypcox
