#include "hypcox/simplicial.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "hypcox/errors.hpp"
#include "hypcox/kernels.hpp"

namespace hypcox {

namespace {

bool contains_sorted(std::span<const Vertex> big, std::span<const Vertex> small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

}  // namespace

SimplicialComplex::SimplicialComplex(VertexNames names, std::vector<std::vector<Vertex>> faces)
    : names_(std::move(names)) {
  const std::size_t n = names_.size();
  for (auto& f : faces) {
    if (f.empty()) throw MalformedInput("empty face");
    std::sort(f.begin(), f.end());
    if (std::adjacent_find(f.begin(), f.end()) != f.end()) {
      throw MalformedInput("face repeats vertex '" + names_[*std::adjacent_find(f.begin(), f.end())] + "'");
    }
    if (f.back() >= n) throw MalformedInput("face uses a vertex index outside the vertex list");
  }
  std::sort(faces.begin(), faces.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  });
  faces.erase(std::unique(faces.begin(), faces.end()), faces.end());

  // Absorb faces lying inside a larger accepted face.
  std::vector<std::vector<std::uint32_t>> accepted_at(n);
  std::vector<std::vector<Vertex>> kept;
  kept.reserve(faces.size());
  for (auto& f : faces) {
    const std::vector<std::uint32_t>* shortest = &accepted_at[f.front()];
    for (Vertex v : f) {
      if (accepted_at[v].size() < shortest->size()) shortest = &accepted_at[v];
    }
    bool absorbed = false;
    for (std::uint32_t idx : *shortest) {
      if (kept[idx].size() > f.size() && contains_sorted(kept[idx], f)) {
        absorbed = true;
        break;
      }
    }
    if (absorbed) continue;
    auto idx = static_cast<std::uint32_t>(kept.size());
    for (Vertex v : f) accepted_at[v].push_back(idx);
    kept.push_back(std::move(f));
  }
  for (Vertex v = 0; v < n; ++v) {
    if (accepted_at[v].empty()) kept.push_back({v});
  }
  std::sort(kept.begin(), kept.end());

  facet_offsets_.assign(1, 0);
  facet_offsets_.reserve(kept.size() + 1);
  for (const auto& f : kept) {
    facet_data_.insert(facet_data_.end(), f.begin(), f.end());
    facet_offsets_.push_back(facet_data_.size());
    dimension_ = std::max(dimension_, static_cast<int>(f.size()) - 1);
  }
  build_indices();
}

void SimplicialComplex::build_indices() {
  const std::size_t n = names_.size();
  std::vector<std::size_t> count(n + 1, 0);
  for (std::size_t i = 0; i < num_facets(); ++i) {
    for (Vertex v : facet(i)) ++count[v + 1];
  }
  vertex_facet_offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) vertex_facet_offsets_[v + 1] = vertex_facet_offsets_[v] + count[v + 1];
  vertex_facet_data_.assign(vertex_facet_offsets_[n], 0);
  std::vector<std::size_t> fill(vertex_facet_offsets_.begin(), vertex_facet_offsets_.end() - 1);
  for (std::size_t i = 0; i < num_facets(); ++i) {
    for (Vertex v : facet(i)) vertex_facet_data_[fill[v]++] = static_cast<std::uint32_t>(i);
  }

  std::vector<std::vector<Vertex>> nbrs(n);
  for (std::size_t i = 0; i < num_facets(); ++i) {
    auto f = facet(i);
    for (std::size_t a = 0; a < f.size(); ++a) {
      for (std::size_t b = 0; b < f.size(); ++b) {
        if (a != b) nbrs[f[a]].push_back(f[b]);
      }
    }
  }
  neighbor_offsets_.assign(1, 0);
  neighbor_offsets_.reserve(n + 1);
  neighbor_data_.clear();
  for (auto& l : nbrs) {
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
    neighbor_data_.insert(neighbor_data_.end(), l.begin(), l.end());
    neighbor_offsets_.push_back(neighbor_data_.size());
    std::vector<Vertex>().swap(l);
  }
}

std::span<const Vertex> SimplicialComplex::facet(std::size_t i) const {
  return std::span<const Vertex>(facet_data_).subspan(facet_offsets_[i], facet_offsets_[i + 1] - facet_offsets_[i]);
}

std::span<const std::uint32_t> SimplicialComplex::facets_of(Vertex v) const {
  return std::span<const std::uint32_t>(vertex_facet_data_)
      .subspan(vertex_facet_offsets_[v], vertex_facet_offsets_[v + 1] - vertex_facet_offsets_[v]);
}

std::span<const Vertex> SimplicialComplex::neighbors(Vertex v) const { return skeleton().neighbors(v); }

bool SimplicialComplex::adjacent(Vertex a, Vertex b) const { return skeleton().adjacent(a, b); }

bool SimplicialComplex::is_simplex(std::span<const Vertex> vertices) const {
  if (vertices.empty()) return true;
  std::vector<Vertex> sigma(vertices.begin(), vertices.end());
  std::sort(sigma.begin(), sigma.end());
  if (sigma.back() >= num_vertices()) return false;
  Vertex best = sigma.front();
  for (Vertex v : sigma) {
    if (facets_of(v).size() < facets_of(best).size()) best = v;
  }
  for (std::uint32_t idx : facets_of(best)) {
    if (contains_sorted(facet(idx), sigma)) return true;
  }
  return false;
}

SimplicialComplex build_complex(const std::vector<std::vector<std::string>>& faces,
                                const std::vector<std::string>& vertex_order) {
  std::vector<std::string> names;
  std::unordered_map<std::string, Vertex> index;
  const bool fixed = !vertex_order.empty();
  for (const auto& name : vertex_order) {
    if (!index.emplace(name, static_cast<Vertex>(names.size())).second) {
      throw MalformedInput("duplicate vertex name '" + name + "'");
    }
    names.push_back(name);
  }
  std::vector<std::vector<Vertex>> out;
  out.reserve(faces.size());
  for (const auto& face : faces) {
    std::vector<Vertex> f;
    f.reserve(face.size());
    for (const auto& name : face) {
      auto it = index.find(name);
      if (it == index.end()) {
        if (fixed) throw MalformedInput("face uses undeclared vertex '" + name + "'");
        it = index.emplace(name, static_cast<Vertex>(names.size())).first;
        names.push_back(name);
      }
      f.push_back(it->second);
    }
    out.push_back(std::move(f));
  }
  return SimplicialComplex(VertexNames(std::move(names)), std::move(out));
}

namespace {

std::set<std::vector<std::string>> named_facets(const SimplicialComplex& x) {
  std::set<std::vector<std::string>> out;
  for (std::size_t i = 0; i < x.num_facets(); ++i) {
    std::vector<std::string> f;
    for (Vertex v : x.facet(i)) f.push_back(x.name(v));
    std::sort(f.begin(), f.end());
    out.insert(std::move(f));
  }
  return out;
}

}  // namespace

bool same_complex(const SimplicialComplex& a, const SimplicialComplex& b) {
  if (a.num_vertices() != b.num_vertices() || a.num_facets() != b.num_facets()) return false;
  return named_facets(a) == named_facets(b);
}

std::vector<Vertex> lookup_vertices(const SimplicialComplex& x, const std::vector<std::string>& names) {
  std::vector<Vertex> out;
  out.reserve(names.size());
  for (const auto& n : names) {
    auto v = x.find(n);
    if (!v) throw DomainError("vertex '" + n + "' is not in the complex");
    out.push_back(*v);
  }
  return out;
}

SimplicialComplex induced_subcomplex(const SimplicialComplex& x, std::span<const Vertex> subset) {
  std::vector<Vertex> verts(subset.begin(), subset.end());
  std::sort(verts.begin(), verts.end());
  if (std::adjacent_find(verts.begin(), verts.end()) != verts.end()) {
    throw DomainError("induced_subcomplex: repeated vertex");
  }
  if (!verts.empty() && verts.back() >= x.num_vertices()) {
    throw DomainError("induced_subcomplex: vertex outside the complex");
  }
  std::vector<Vertex> local(x.num_vertices(), static_cast<Vertex>(-1));
  for (std::size_t i = 0; i < verts.size(); ++i) local[verts[i]] = static_cast<Vertex>(i);

  std::vector<std::uint32_t> touched;
  for (Vertex v : verts) {
    auto fs = x.facets_of(v);
    touched.insert(touched.end(), fs.begin(), fs.end());
  }
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());

  std::vector<std::vector<Vertex>> faces;
  faces.reserve(touched.size());
  for (std::uint32_t idx : touched) {
    std::vector<Vertex> f;
    for (Vertex v : x.facet(idx)) {
      if (local[v] != static_cast<Vertex>(-1)) f.push_back(local[v]);
    }
    faces.push_back(std::move(f));
  }
  return SimplicialComplex(x.names().subset(verts), std::move(faces));
}

SimplicialComplex induced_subcomplex(const SimplicialComplex& x, const std::vector<std::string>& names) {
  auto verts = lookup_vertices(x, names);
  return induced_subcomplex(x, verts);
}

SimplicialComplex link(const SimplicialComplex& x, std::span<const Vertex> sigma) {
  if (sigma.empty()) return x;  // the link of the empty simplex is X itself
  if (!x.is_simplex(sigma)) throw DomainError("link: not a simplex of the complex");
  std::vector<Vertex> s(sigma.begin(), sigma.end());
  std::sort(s.begin(), s.end());

  std::vector<std::vector<Vertex>> rest;
  std::vector<Vertex> verts;
  for (std::uint32_t idx : x.facets_of(s.front())) {
    auto f = x.facet(idx);
    if (!contains_sorted(f, s)) continue;
    std::vector<Vertex> r;
    std::set_difference(f.begin(), f.end(), s.begin(), s.end(), std::back_inserter(r));
    if (r.empty()) continue;
    verts.insert(verts.end(), r.begin(), r.end());
    rest.push_back(std::move(r));
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  std::vector<Vertex> local(x.num_vertices(), 0);
  for (std::size_t i = 0; i < verts.size(); ++i) local[verts[i]] = static_cast<Vertex>(i);
  for (auto& r : rest) {
    for (auto& v : r) v = local[v];
  }
  return SimplicialComplex(x.names().subset(verts), std::move(rest));
}

std::vector<std::vector<Vertex>> all_simplices(const SimplicialComplex& x) {
  std::set<std::vector<Vertex>> seen;
  for (std::size_t i = 0; i < x.num_facets(); ++i) {
    auto f = x.facet(i);
    const std::size_t size = f.size();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << size); ++mask) {
      std::vector<Vertex> s;
      for (std::size_t b = 0; b < size; ++b) {
        if (mask >> b & 1) s.push_back(f[b]);
      }
      seen.insert(std::move(s));
    }
  }
  std::vector<std::vector<Vertex>> out(seen.begin(), seen.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return out;
}

FlagResult is_flag(const SimplicialComplex& x) {
  FlagResult r;
  if (auto w = kernels::find_non_simplex_clique(x)) {
    r.flag = false;
    r.witness = std::move(*w);
  }
  return r;
}

LargenessResult is_k_large(const SimplicialComplex& x, int k) {
  if (k < 4) throw DomainError("k-largeness needs k >= 4");
  LargenessResult r;
  if (auto w = kernels::find_non_simplex_clique(x)) {
    r.ok = false;
    r.kind = LargenessResult::Witness::non_simplex_clique;
    r.witness = std::move(*w);
    return r;
  }
  if (k - 1 >= 4) {
    if (auto c = kernels::find_full_cycle(x.skeleton(), k - 1)) {
      r.ok = false;
      r.kind = LargenessResult::Witness::full_cycle;
      r.witness = std::move(*c);
    }
  }
  return r;
}

LocalLargenessResult is_locally_k_large(const SimplicialComplex& x, int k) {
  if (k < 4) throw DomainError("k-largeness needs k >= 4");
  LocalLargenessResult out;
  for (const auto& s : all_simplices(x)) {
    auto l = link(x, s);
    auto r = is_k_large(l, k);
    if (!r.ok) {
      out.ok = false;
      out.simplex = s;
      out.link_result = std::move(r);
      out.failing_link = std::move(l);
      return out;
    }
  }
  return out;
}

std::vector<std::vector<Vertex>> enumerate_full_cycles(const SimplicialComplex& x, int max_len) {
  if (max_len < 4) throw DomainError("enumerate_full_cycles needs max_len >= 4");
  return kernels::full_cycles(x.skeleton(), max_len);
}

namespace {

// Hub-local SD2* search. Returns a violating wheel centred at `hub`.
std::optional<Wheel> sd2_violation_at(const SimplicialComplex& x, Vertex hub, int k) {
  auto nb = x.neighbors(hub);
  std::vector<Vertex> around(nb.begin(), nb.end());
  Graph local = Graph::induced(x.skeleton(), around);

  // (a) a chordless 4-cycle among the neighbours is a full 4-wheel.
  for (const auto& c : kernels::full_cycles(local.view(), 4, Exec::serial)) {
    Wheel w{hub, {}, std::nullopt};
    for (Vertex v : c) w.rim.push_back(around[v]);
    return w;
  }
  if (k <= 5) return std::nullopt;

  // (b) every l-wheel with a pendant triangle, 5 <= l < k, sits in a 1-ball.
  for (const auto& c : kernels::full_cycles(local.view(), k - 1, Exec::serial)) {
    if (c.size() < 5) continue;
    std::vector<Vertex> rim;
    for (Vertex v : c) rim.push_back(around[v]);
    const std::size_t l = rim.size();
    for (std::size_t i = 0; i < l; ++i) {
      Vertex a = rim[i];
      Vertex b = rim[(i + 1) % l];
      auto na = x.neighbors(a);
      auto nb2 = x.neighbors(b);
      std::vector<Vertex> common;
      std::set_intersection(na.begin(), na.end(), nb2.begin(), nb2.end(), std::back_inserter(common));
      for (Vertex t : common) {
        if (t == hub || std::find(rim.begin(), rim.end(), t) != rim.end()) continue;
        std::vector<Vertex> all = rim;
        all.push_back(hub);
        all.push_back(t);
        auto inside_ball = [&](Vertex u) {
          for (Vertex w : all) {
            if (w != u && !x.adjacent(u, w)) return false;
          }
          return true;
        };
        bool covered = inside_ball(hub);
        for (Vertex u : x.neighbors(hub)) {
          if (covered) break;
          covered = inside_ball(u);
        }
        if (!covered) {
          Wheel w{hub, {}, t};
          for (std::size_t j = 0; j < l; ++j) w.rim.push_back(rim[(i + j) % l]);
          return w;
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

Sd2Result check_sd2_star(const SimplicialComplex& x, int k) {
  if (k < 6) throw DomainError("SD2*(k) needs k >= 6");
  if (!is_flag(x).flag) throw DomainError("SD2* is defined for flag complexes only");
  Sd2Result r;
  auto hit = find_first(x.num_vertices(), [&](std::size_t v) { return sd2_violation_at(x, static_cast<Vertex>(v), k); });
  if (hit) {
    r.ok = false;
    r.witness = std::move(hit->second);
  }
  return r;
}

Sd2LinksResult check_sd2_star_links(const SimplicialComplex& x, int k) {
  Sd2LinksResult out;
  out.result = check_sd2_star(x, k);
  if (!out.result.ok) {
    out.ok = false;
    out.failing_complex = x;
    return out;
  }
  for (const auto& s : all_simplices(x)) {
    auto l = link(x, s);
    if (l.empty()) continue;
    auto r = check_sd2_star(l, k);
    if (!r.ok) {
      out.ok = false;
      out.simplex = s;
      out.failing_complex = std::move(l);
      out.result = std::move(r);
      return out;
    }
  }
  return out;
}

bool is_full_subcomplex(const SimplicialComplex& z, const SimplicialComplex& x) {
  std::vector<Vertex> image;
  image.reserve(z.num_vertices());
  for (Vertex v = 0; v < z.num_vertices(); ++v) {
    auto w = x.find(z.name(v));
    if (!w) throw DomainError("vertex '" + z.name(v) + "' of Z is not a vertex of X");
    image.push_back(*w);
  }
  for (std::size_t i = 0; i < z.num_facets(); ++i) {
    std::vector<Vertex> f;
    for (Vertex v : z.facet(i)) f.push_back(image[v]);
    if (!x.is_simplex(f)) throw DomainError("Z is not a subcomplex of X");
  }
  return same_complex(induced_subcomplex(x, image), z);
}

}  // namespace hypcox
