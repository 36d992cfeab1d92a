#include "hypcox/names.hpp"

#include <charconv>

#include "hypcox/errors.hpp"

namespace hypcox {

VertexNames::VertexNames(std::vector<std::string> names) : names_(std::move(names)) {
  index_.reserve(names_.size());
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!index_.emplace(names_[i], static_cast<Vertex>(i)).second) {
      throw MalformedInput("duplicate vertex name '" + names_[i] + "'");
    }
  }
}

VertexNames VertexNames::numbered(std::string prefix, std::size_t count) {
  VertexNames out;
  out.prefix_ = std::move(prefix);
  out.count_ = count;
  out.numbered_ = true;
  return out;
}

std::string VertexNames::operator[](Vertex v) const {
  if (numbered_) return prefix_ + std::to_string(v);
  return names_[v];
}

std::optional<Vertex> VertexNames::find(std::string_view name) const {
  if (numbered_) {
    if (name.size() <= prefix_.size() || name.substr(0, prefix_.size()) != prefix_) return std::nullopt;
    auto digits = name.substr(prefix_.size());
    if (digits.size() > 1 && digits[0] == '0') return std::nullopt;
    Vertex v = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || v >= count_) return std::nullopt;
    return v;
  }
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

VertexNames VertexNames::subset(std::span<const Vertex> vertices) const {
  std::vector<std::string> out;
  out.reserve(vertices.size());
  for (Vertex v : vertices) out.push_back((*this)[v]);
  return VertexNames(std::move(out));
}

std::vector<std::string> VertexNames::to_vector() const {
  std::vector<std::string> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back((*this)[static_cast<Vertex>(i)]);
  return out;
}

}  // namespace hypcox
