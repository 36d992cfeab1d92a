#include "hypcox/cubical.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "hypcox/errors.hpp"

namespace hypcox {

namespace {

int log2_exact(std::size_t n) {
  if (n == 0 || !std::has_single_bit(n)) throw MalformedInput("corner array length must be a power of two");
  return std::countr_zero(n);
}

// Insert `side` as bit `axis` of m.
std::uint32_t insert_bit(std::uint32_t m, int axis, int side) {
  std::uint32_t low = m & ((1u << axis) - 1);
  std::uint32_t high = (m >> axis) << (axis + 1);
  return high | (static_cast<std::uint32_t>(side) << axis) | low;
}

bool less_span(std::span<const Vertex> a, std::span<const Vertex> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Sort and deduplicate fixed-width records.
void sort_unique_records(std::vector<Vertex>& flat, std::size_t width) {
  const std::size_t n = flat.size() / width;
  std::vector<std::uint32_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  auto rec = [&](std::uint32_t i) { return std::span<const Vertex>(flat).subspan(i * width, width); };
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return less_span(rec(a), rec(b)); });
  std::vector<Vertex> out;
  out.reserve(flat.size());
  for (std::size_t k = 0; k < n; ++k) {
    auto r = rec(idx[k]);
    if (k > 0 && std::equal(r.begin(), r.end(), rec(idx[k - 1]).begin())) continue;
    out.insert(out.end(), r.begin(), r.end());
  }
  flat = std::move(out);
}

}  // namespace

std::vector<Vertex> canonical_corners(std::span<const Vertex> corners) {
  const int d = log2_exact(corners.size());
  std::vector<Vertex> sorted(corners.begin(), corners.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw MalformedInput("cube has repeated corners");
  }
  const auto m0 = static_cast<std::uint32_t>(std::min_element(corners.begin(), corners.end()) - corners.begin());
  std::vector<int> axes(d);
  std::iota(axes.begin(), axes.end(), 0);
  std::sort(axes.begin(), axes.end(),
            [&](int a, int b) { return corners[m0 ^ (1u << a)] < corners[m0 ^ (1u << b)]; });
  std::vector<Vertex> out(corners.size());
  for (std::uint32_t m = 0; m < out.size(); ++m) {
    std::uint32_t src = m0;
    for (int j = 0; j < d; ++j) {
      if (m >> j & 1) src ^= 1u << axes[j];
    }
    out[m] = corners[src];
  }
  return out;
}

std::vector<Vertex> cube_face(std::span<const Vertex> corners, int axis, int side) {
  const std::size_t half = corners.size() / 2;
  std::vector<Vertex> out(half);
  for (std::uint32_t m = 0; m < half; ++m) out[m] = corners[insert_bit(m, axis, side)];
  return out;
}

CubicalComplex::CubicalComplex(VertexNames names, const std::vector<std::vector<Vertex>>& cubes, bool validate)
    : names_(std::move(names)) {
  std::vector<std::vector<Vertex>> by_dim;
  for (const auto& c : cubes) {
    const int d = log2_exact(c.size());
    if (by_dim.size() <= static_cast<std::size_t>(d)) by_dim.resize(d + 1);
    auto canon = canonical_corners(c);
    by_dim[d].insert(by_dim[d].end(), canon.begin(), canon.end());
  }
  build(std::move(by_dim), validate);
}

CubicalComplex::CubicalComplex(VertexNames names, std::span<const std::uint8_t> dims,
                               std::span<const Vertex> corners, bool validate)
    : names_(std::move(names)) {
  std::vector<std::vector<Vertex>> by_dim;
  std::size_t pos = 0;
  for (std::uint8_t d : dims) {
    const std::size_t width = std::size_t{1} << d;
    if (pos + width > corners.size()) throw MalformedInput("corner data shorter than the cube dimensions imply");
    if (by_dim.size() <= d) by_dim.resize(d + 1);
    auto canon = canonical_corners(corners.subspan(pos, width));
    by_dim[d].insert(by_dim[d].end(), canon.begin(), canon.end());
    pos += width;
  }
  if (pos != corners.size()) throw MalformedInput("corner data longer than the cube dimensions imply");
  build(std::move(by_dim), validate);
}

void CubicalComplex::build(std::vector<std::vector<Vertex>> by_dim, bool validate) {
  const std::size_t n = names_.size();
  if (by_dim.empty()) by_dim.resize(1);
  for (const auto& flat : by_dim) {
    for (Vertex v : flat) {
      if (v >= n) throw MalformedInput("cube corner outside the vertex list");
    }
  }
  const int top = static_cast<int>(by_dim.size()) - 1;
  for (int d = top; d >= 1; --d) {
    const std::size_t width = std::size_t{1} << d;
    sort_unique_records(by_dim[d], width);
    auto& below = by_dim[d - 1];
    for (std::size_t off = 0; off < by_dim[d].size(); off += width) {
      std::span<const Vertex> c(by_dim[d].data() + off, width);
      for (int axis = 0; axis < d; ++axis) {
        for (int side = 0; side < 2; ++side) {
          auto f = canonical_corners(cube_face(c, axis, side));
          below.insert(below.end(), f.begin(), f.end());
        }
      }
    }
  }
  by_dim[0].resize(n);
  std::iota(by_dim[0].begin(), by_dim[0].end(), 0);

  dim_begin_.assign(1, 0);
  for (int d = 0; d <= top; ++d) {
    const std::size_t width = std::size_t{1} << d;
    const std::size_t count = by_dim[d].size() / width;
    for (std::size_t i = 0; i < count; ++i) {
      dims_.push_back(static_cast<std::uint8_t>(d));
      corner_offset_.push_back(corner_data_.size() + i * width);
    }
    corner_data_.insert(corner_data_.end(), by_dim[d].begin(), by_dim[d].end());
    std::vector<Vertex>().swap(by_dim[d]);
    dim_begin_.push_back(static_cast<CubeId>(dims_.size()));
  }
  // Trailing empty dimensions would misreport dimension().
  while (dim_begin_.size() > 2 && dim_begin_[dim_begin_.size() - 1] == dim_begin_[dim_begin_.size() - 2]) {
    dim_begin_.pop_back();
  }
  corner_offset_.push_back(corner_data_.size());

  maximal_.assign(num_cubes(), 1);
  facet_offset_.assign(1, 0);
  for (CubeId c = 0; c < num_cubes(); ++c) {
    auto cs = corners(c);
    for (int axis = 0; axis < dims_[c]; ++axis) {
      for (int side = 0; side < 2; ++side) {
        auto f = find(cube_face(cs, axis, side));
        facet_data_.push_back(*f);
        maximal_[*f] = 0;
      }
    }
    facet_offset_.push_back(facet_data_.size());
  }
  for (CubeId c = 0; c < num_cubes(); ++c) {
    if (maximal_[c]) maximal_list_.push_back(c);
  }

  std::vector<std::size_t> cnt(n + 1, 0);
  for (CubeId c : maximal_list_) {
    for (Vertex v : corners(c)) ++cnt[v + 1];
  }
  at_offset_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) at_offset_[v + 1] = at_offset_[v] + cnt[v + 1];
  at_data_.assign(at_offset_[n], 0);
  std::vector<std::size_t> fill(at_offset_.begin(), at_offset_.end() - 1);
  for (CubeId c : maximal_list_) {
    for (Vertex v : corners(c)) at_data_[fill[v]++] = c;
  }

  if (validate) check_intersections();
}

CubeId CubicalComplex::dim_begin(int d) const {
  if (d < 0) return 0;
  if (static_cast<std::size_t>(d) >= dim_begin_.size()) return dim_begin_.back();
  return dim_begin_[d];
}

std::span<const Vertex> CubicalComplex::corners(CubeId c) const {
  return std::span<const Vertex>(corner_data_).subspan(corner_offset_[c], corner_offset_[c + 1] - corner_offset_[c]);
}

std::vector<Vertex> CubicalComplex::vertex_set(CubeId c) const {
  auto cs = corners(c);
  std::vector<Vertex> out(cs.begin(), cs.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::span<const CubeId> CubicalComplex::facets(CubeId c) const {
  return std::span<const CubeId>(facet_data_).subspan(facet_offset_[c], facet_offset_[c + 1] - facet_offset_[c]);
}

std::span<const CubeId> CubicalComplex::maximal_at(Vertex v) const {
  return std::span<const CubeId>(at_data_).subspan(at_offset_[v], at_offset_[v + 1] - at_offset_[v]);
}

std::optional<CubeId> CubicalComplex::find(std::span<const Vertex> cs) const {
  const int d = log2_exact(cs.size());
  if (d > dimension()) return std::nullopt;
  for (Vertex v : cs) {
    if (v >= num_vertices()) return std::nullopt;
  }
  auto canon = canonical_corners(cs);
  CubeId lo = dim_begin(d);
  CubeId hi = dim_begin(d + 1);
  while (lo < hi) {
    CubeId mid = lo + (hi - lo) / 2;
    if (less_span(corners(mid), canon)) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo < dim_begin(d + 1)) {
    auto found = corners(lo);
    if (std::equal(found.begin(), found.end(), canon.begin(), canon.end())) return lo;
  }
  return std::nullopt;
}

long long CubicalComplex::euler_characteristic() const {
  long long chi = 0;
  for (int d = 0; d <= dimension(); ++d) chi += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(count(d));
  return chi;
}

void CubicalComplex::check_intersections() const {
  auto fail = [&](CubeId a, CubeId b) {
    auto show = [&](CubeId c) {
      std::string s = "[";
      for (Vertex v : corners(c)) s += (s.size() > 1 ? "," : "") + names_[v];
      return s + "]";
    };
    throw MalformedInput("cubes " + show(a) + " and " + show(b) + " do not meet in a common face");
  };
  // The face of `c` spanned by the corners lying in `common`, if any.
  auto face_on = [&](CubeId c, const std::vector<Vertex>& common) -> std::optional<std::vector<Vertex>> {
    auto cs = corners(c);
    std::uint32_t all_and = ~0u;
    std::uint32_t all_or = 0;
    for (std::uint32_t m = 0; m < cs.size(); ++m) {
      if (std::binary_search(common.begin(), common.end(), cs[m])) {
        all_and &= m;
        all_or |= m;
      }
    }
    const std::uint32_t free_bits = all_or ^ all_and;
    if (common.size() != (std::size_t{1} << std::popcount(free_bits))) return std::nullopt;
    std::vector<Vertex> face;
    for (std::uint32_t sub = 0; sub < common.size(); ++sub) {
      std::uint32_t m = all_and;
      std::uint32_t bits = free_bits;
      for (std::uint32_t j = 0; bits; ++j) {
        std::uint32_t low = bits & (~bits + 1);
        if (sub >> j & 1) m |= low;
        bits ^= low;
      }
      face.push_back(cs[m]);
    }
    return canonical_corners(face);
  };
  for (Vertex v = 0; v < num_vertices(); ++v) {
    auto at = maximal_at(v);
    for (std::size_t i = 0; i < at.size(); ++i) {
      auto va = vertex_set(at[i]);
      for (std::size_t j = i + 1; j < at.size(); ++j) {
        auto vb = vertex_set(at[j]);
        std::vector<Vertex> common;
        std::set_intersection(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(common));
        if (common.front() != v) continue;  // pair handled at its smallest shared vertex
        auto fa = face_on(at[i], common);
        auto fb = face_on(at[j], common);
        if (!fa || !fb || *fa != *fb) fail(at[i], at[j]);
      }
    }
  }
}

SimplicialComplex vertex_link(const CubicalComplex& y, Vertex v) {
  if (v >= y.num_vertices()) throw DomainError("vertex_link: unknown vertex");
  std::vector<std::vector<Vertex>> faces;
  std::vector<Vertex> around;
  for (CubeId c : y.maximal_at(v)) {
    auto cs = y.corners(c);
    const auto mv = static_cast<std::uint32_t>(std::find(cs.begin(), cs.end(), v) - cs.begin());
    std::vector<Vertex> f;
    for (int axis = 0; axis < y.dim(c); ++axis) f.push_back(cs[mv ^ (1u << axis)]);
    if (f.empty()) continue;
    around.insert(around.end(), f.begin(), f.end());
    faces.push_back(std::move(f));
  }
  std::sort(around.begin(), around.end());
  around.erase(std::unique(around.begin(), around.end()), around.end());
  for (auto& f : faces) {
    for (auto& w : f) w = static_cast<Vertex>(std::lower_bound(around.begin(), around.end(), w) - around.begin());
  }
  return SimplicialComplex(y.names().subset(around), std::move(faces));
}

CubicalLargenessResult is_locally_k_large(const CubicalComplex& y, int k, Exec exec) {
  if (k < 4) throw DomainError("k-largeness needs k >= 4");
  CubicalLargenessResult out;
  auto hit = find_first(
      y.num_vertices(),
      [&](std::size_t v) -> std::optional<std::pair<LargenessResult, SimplicialComplex>> {
        auto l = vertex_link(y, static_cast<Vertex>(v));
        auto r = is_k_large(l, k);
        if (r.ok) return std::nullopt;
        return std::pair{std::move(r), std::move(l)};
      },
      exec);
  if (hit) {
    out.ok = false;
    out.vertex = static_cast<Vertex>(hit->first);
    out.link_result = std::move(hit->second.first);
    out.failing_link = std::move(hit->second.second);
  }
  return out;
}

Thickening thicken(const CubicalComplex& y) {
  std::vector<CubeId> maximal(y.maximal_cubes().begin(), y.maximal_cubes().end());
  std::vector<std::vector<Vertex>> sets;
  sets.reserve(maximal.size());
  for (CubeId c : maximal) sets.push_back(y.vertex_set(c));
  std::vector<std::uint32_t> order(maximal.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return sets[a] < sets[b]; });
  Thickening out;
  out.facet_cube.reserve(maximal.size());
  for (auto i : order) out.facet_cube.push_back(maximal[i]);
  out.complex = SimplicialComplex(y.names(), std::move(sets));
  if (out.complex.num_facets() != out.facet_cube.size()) {
    throw VerificationFailure("thicken: a maximal cube's vertex set lies in another cube");
  }
  return out;
}

Vertex ChamberedTriangulation::chamber(std::span<const Vertex> chain) const {
  CubeId lowest = *std::min_element(chain.begin(), chain.end());
  return cubes->corners(lowest)[0];
}

ChamberedTriangulation chambered_triangulation(const CubicalComplex& y, std::size_t max_facets) {
  std::size_t total = 0;
  for (CubeId c : y.maximal_cubes()) {
    std::size_t flags = std::size_t{1} << y.dim(c);
    for (int j = 2; j <= y.dim(c); ++j) flags *= static_cast<std::size_t>(j);
    total += flags;
  }
  if (total > max_facets) {
    throw ResourceError("chambered triangulation needs " + std::to_string(total) + " facets, cap is " +
                            std::to_string(max_facets),
                        total);
  }
  std::vector<std::vector<Vertex>> faces;
  faces.reserve(total);
  for (CubeId c : y.maximal_cubes()) {
    const int d = y.dim(c);
    auto cs = y.corners(c);
    std::vector<int> perm(d);
    for (std::uint32_t m0 = 0; m0 < cs.size(); ++m0) {
      std::iota(perm.begin(), perm.end(), 0);
      do {
        std::vector<Vertex> chain;
        chain.reserve(d + 1);
        std::vector<Vertex> sub{cs[m0]};
        chain.push_back(cs[m0]);
        for (int j = 0; j < d; ++j) {
          const std::size_t prev = sub.size();
          for (std::size_t i = 0; i < prev; ++i) {
            std::uint32_t m = 0;
            // Recover the mask of sub[i] and flip the new axis.
            m = static_cast<std::uint32_t>(std::find(cs.begin(), cs.end(), sub[i]) - cs.begin());
            sub.push_back(cs[m ^ (1u << perm[j])]);
          }
          chain.push_back(*y.find(sub));
        }
        faces.push_back(std::move(chain));
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }
  ChamberedTriangulation out;
  out.complex = SimplicialComplex(VertexNames::numbered("c", y.num_cubes()), std::move(faces));
  out.cubes = &y;
  return out;
}

}  // namespace hypcox
