#include "hypcox/graph.hpp"

#include <unordered_map>

namespace hypcox {

Graph::Graph(std::size_t n, std::vector<std::pair<Vertex, Vertex>> edges) {
  std::vector<std::vector<Vertex>> lists(n);
  for (auto [a, b] : edges) {
    if (a == b) continue;
    lists[a].push_back(b);
    lists[b].push_back(a);
  }
  offsets_.assign(1, 0);
  offsets_.reserve(n + 1);
  for (auto& l : lists) {
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
    adjacency_.insert(adjacency_.end(), l.begin(), l.end());
    offsets_.push_back(adjacency_.size());
  }
}

Graph Graph::induced(GraphView g, std::span<const Vertex> vertices) {
  std::unordered_map<Vertex, Vertex> local;
  local.reserve(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i) local.emplace(vertices[i], static_cast<Vertex>(i));
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (Vertex w : g.neighbors(vertices[i])) {
      auto it = local.find(w);
      if (it != local.end() && it->second > i) edges.emplace_back(static_cast<Vertex>(i), it->second);
    }
  }
  return Graph(vertices.size(), std::move(edges));
}

}  // namespace hypcox
