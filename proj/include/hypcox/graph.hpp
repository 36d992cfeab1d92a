#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "hypcox/names.hpp"

namespace hypcox {

// Read-only CSR adjacency with sorted neighbor lists.
struct GraphView {
  std::span<const std::size_t> offsets;
  std::span<const Vertex> adjacency;

  std::size_t size() const noexcept { return offsets.empty() ? 0 : offsets.size() - 1; }
  std::span<const Vertex> neighbors(Vertex v) const {
    return adjacency.subspan(offsets[v], offsets[v + 1] - offsets[v]);
  }
  bool adjacent(Vertex a, Vertex b) const {
    auto n = neighbors(a);
    return std::binary_search(n.begin(), n.end(), b);
  }
};

// Owning CSR graph.
class Graph {
 public:
  Graph() = default;
  // `edges` as unordered pairs; duplicates and loops are dropped.
  Graph(std::size_t n, std::vector<std::pair<Vertex, Vertex>> edges);

  GraphView view() const noexcept { return {offsets_, adjacency_}; }
  std::size_t size() const noexcept { return view().size(); }

  // Subgraph induced on `vertices`, renumbered 0..k-1 in the given order.
  static Graph induced(GraphView g, std::span<const Vertex> vertices);

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> adjacency_;
};

}  // namespace hypcox
