#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace hypcox {

using Vertex = std::uint32_t;

// Vertex labels. Either an explicit list of distinct strings or a generated
// family "<prefix>0", "<prefix>1", ... that costs no memory per vertex.
class VertexNames {
 public:
  VertexNames() = default;
  explicit VertexNames(std::vector<std::string> names);
  static VertexNames numbered(std::string prefix, std::size_t count);

  std::size_t size() const noexcept { return numbered_ ? count_ : names_.size(); }
  std::string operator[](Vertex v) const;
  std::optional<Vertex> find(std::string_view name) const;

  // Names of the given vertices, in the given order.
  VertexNames subset(std::span<const Vertex> vertices) const;
  std::vector<std::string> to_vector() const;

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, Vertex> index_;
  std::string prefix_;
  std::size_t count_ = 0;
  bool numbered_ = false;
};

}  // namespace hypcox
