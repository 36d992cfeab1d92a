#pragma once

#include <optional>
#include <vector>

#include "hypcox/graph.hpp"
#include "hypcox/parallel.hpp"
#include "hypcox/simplicial.hpp"

// Search kernels behind the combinatorial checkers. Each runs one
// independent search per start vertex; the parallel and serial paths return
// the same (first by start vertex) result.
namespace hypcox::kernels {

// A pairwise-adjacent vertex set that is not a simplex, shrunk to a minimal
// one, found among the maximal cliques whose smallest vertex is smallest.
std::optional<std::vector<Vertex>> find_non_simplex_clique(const SimplicialComplex& x,
                                                           Exec exec = Exec::parallel);

// A chordless cycle of length 4..max_len; shorter lengths are searched first.
// The cycle starts at its smallest vertex, second vertex < last vertex.
std::optional<std::vector<Vertex>> find_full_cycle(GraphView g, int max_len,
                                                   Exec exec = Exec::parallel);

// Every chordless cycle of length 4..max_len in canonical form, sorted.
std::vector<std::vector<Vertex>> full_cycles(GraphView g, int max_len, Exec exec = Exec::parallel);

}  // namespace hypcox::kernels
