#include "hypcox/coxeter.hpp"

#include <algorithm>
#include <functional>

#include "hypcox/errors.hpp"

namespace hypcox {

IntMatrix multiply(const IntMatrix& x, const IntMatrix& y) {
  const std::size_t n = x.n;
  IntMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const std::int64_t xik = x(i, k);
      if (xik == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        std::int64_t prod;
        if (__builtin_mul_overflow(xik, y(k, j), &prod) || __builtin_add_overflow(out(i, j), prod, &out(i, j))) {
          throw Overflow();
        }
      }
    }
  }
  return out;
}

BigMatrix multiply(const BigMatrix& x, const BigMatrix& y) {
  const std::size_t n = x.n;
  BigMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (x(i, k) == 0) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += x(i, k) * y(k, j);
    }
  }
  return out;
}

BigMatrix widen(const IntMatrix& m) {
  BigMatrix out(m.n);
  for (std::size_t i = 0; i < m.a.size(); ++i) out.a[i] = m.a[i];
  return out;
}

BigInt determinant(const IntMatrix& m) {
  const std::size_t n = m.n;
  if (n == 0) return 1;
  BigMatrix a = widen(m);
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && a(r, k) == 0) ++r;
      if (r == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(r, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

RacgSystem::RacgSystem(SimplicialComplex nerve) : nerve_(std::move(nerve)) {
  auto flag = is_flag(nerve_);
  if (!flag.flag) {
    std::string w;
    for (Vertex v : flag.witness) w += (w.empty() ? "" : ",") + nerve_.name(v);
    throw DomainError("nerve is not flag: {" + w + "} is pairwise adjacent but not a simplex");
  }
  spherical_.push_back({});
  for (auto& s : all_simplices(nerve_)) spherical_.push_back(std::move(s));
  for (std::size_t i = 0; i < spherical_.size(); ++i) spherical_index_.emplace(spherical_[i], i);
}

std::vector<std::pair<Vertex, Vertex>> RacgSystem::commuting_pairs() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (Vertex s = 0; s < rank(); ++s) {
    for (Vertex t : nerve_.neighbors(s)) {
      if (s < t) out.emplace_back(s, t);
    }
  }
  return out;
}

std::optional<std::size_t> RacgSystem::spherical_index(const std::vector<Vertex>& sorted_subset) const {
  auto it = spherical_index_.find(sorted_subset);
  if (it == spherical_index_.end()) return std::nullopt;
  return it->second;
}

IntMatrix RacgSystem::tits_matrix(Vertex s) const {
  if (s >= rank()) throw DomainError("tits_matrix: unknown generator");
  IntMatrix m = IntMatrix::identity(rank());
  for (Vertex j = 0; j < rank(); ++j) {
    if (j == s) {
      m(s, j) = -1;
    } else if (!commute(s, j)) {
      m(s, j) = 2;
    }
  }
  return m;
}

IntMatrix RacgSystem::spherical_element(std::size_t index) const {
  IntMatrix m = IntMatrix::identity(rank());
  for (Vertex s : spherical_.at(index)) m = multiply(m, tits_matrix(s));
  return m;
}

RacgSystem racg_from_nerve(const SimplicialComplex& x) { return RacgSystem(x); }

SimplicialComplex clique_complex(VertexNames names, const std::vector<std::pair<Vertex, Vertex>>& edges) {
  const std::size_t n = names.size();
  Graph g(n, edges);
  std::vector<std::vector<Vertex>> faces;
  std::vector<Vertex> r;
  auto gv = g.view();
  // Plain Bron-Kerbosch; nerves handed to this are small.
  std::function<void(std::vector<Vertex>, std::vector<Vertex>)> bk = [&](std::vector<Vertex> p,
                                                                          std::vector<Vertex> xs) {
    if (p.empty()) {
      if (xs.empty()) faces.push_back(r);
      return;
    }
    while (!p.empty()) {
      Vertex u = p.front();
      auto nb = gv.neighbors(u);
      std::vector<Vertex> p2, x2;
      std::set_intersection(p.begin(), p.end(), nb.begin(), nb.end(), std::back_inserter(p2));
      std::set_intersection(xs.begin(), xs.end(), nb.begin(), nb.end(), std::back_inserter(x2));
      r.push_back(u);
      bk(std::move(p2), std::move(x2));
      r.pop_back();
      p.erase(p.begin());
      xs.insert(std::lower_bound(xs.begin(), xs.end(), u), u);
    }
  };
  std::vector<Vertex> all(n);
  for (Vertex v = 0; v < n; ++v) all[v] = v;
  bk(all, {});
  for (auto& f : faces) std::sort(f.begin(), f.end());
  return SimplicialComplex(std::move(names), std::move(faces));
}

LargenessResult is_hyperbolic(const RacgSystem& w) { return is_k_large(w.nerve(), 5); }

Chamber chamber(const RacgSystem& w) {
  const auto& sph = w.spherical();
  std::vector<std::string> names;
  names.reserve(sph.size());
  for (const auto& t : sph) {
    std::string s = "{";
    for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + w.generator_name(t[i]);
    names.push_back(s + "}");
  }
  // Maximal chains: the empty set, then one generator at a time up to a facet.
  std::vector<std::vector<Vertex>> faces;
  const auto& nerve = w.nerve();
  for (std::size_t f = 0; f < nerve.num_facets(); ++f) {
    auto facet = nerve.facet(f);
    std::vector<Vertex> order(facet.begin(), facet.end());
    do {
      std::vector<Vertex> chain{0};
      std::vector<Vertex> prefix;
      for (Vertex s : order) {
        prefix.insert(std::lower_bound(prefix.begin(), prefix.end(), s), s);
        chain.push_back(static_cast<Vertex>(*w.spherical_index(prefix)));
      }
      faces.push_back(std::move(chain));
    } while (std::next_permutation(order.begin(), order.end()));
  }
  if (nerve.num_vertices() == 0) faces.push_back({0});
  Chamber out;
  out.k = SimplicialComplex(VertexNames(std::move(names)), std::move(faces));
  out.system = &w;
  return out;
}

std::vector<Vertex> Chamber::k_s(Vertex s) const {
  std::vector<Vertex> out;
  const auto& sph = system->spherical();
  for (std::size_t i = 0; i < sph.size(); ++i) {
    if (std::binary_search(sph[i].begin(), sph[i].end(), s)) out.push_back(static_cast<Vertex>(i));
  }
  return out;
}

std::vector<Vertex> Chamber::k_union(const std::vector<Vertex>& t) const {
  std::vector<Vertex> out;
  const auto& sph = system->spherical();
  for (std::size_t i = 0; i < sph.size(); ++i) {
    bool meets = std::any_of(sph[i].begin(), sph[i].end(),
                             [&](Vertex s) { return std::find(t.begin(), t.end(), s) != t.end(); });
    if (meets) out.push_back(static_cast<Vertex>(i));
  }
  return out;
}

std::vector<Vertex> Chamber::k_complement(const std::vector<Vertex>& t) const {
  std::vector<Vertex> out;
  const auto& sph = system->spherical();
  for (std::size_t i = 0; i < sph.size(); ++i) {
    bool inside = std::all_of(sph[i].begin(), sph[i].end(),
                              [&](Vertex s) { return std::find(t.begin(), t.end(), s) != t.end(); });
    if (!inside) out.push_back(static_cast<Vertex>(i));
  }
  return out;
}

CoxeterMatrix relax_right_angles(const RacgSystem& w, const std::map<std::pair<Vertex, Vertex>, int>& assignment) {
  const std::size_t n = w.rank();
  CoxeterMatrix m(n, std::vector<int>(n, kInfinity));
  for (Vertex s = 0; s < n; ++s) {
    m[s][s] = 1;
    for (Vertex t : w.nerve().neighbors(s)) m[s][t] = 2;
  }
  for (const auto& [pair, value] : assignment) {
    auto [s, t] = pair;
    if (s >= n || t >= n || s == t) throw DomainError("relax_right_angles: bad generator pair");
    if (w.commute(s, t)) {
      throw DomainError("relax_right_angles: " + w.generator_name(s) + " and " + w.generator_name(t) +
                        " commute; only non-edges can be relaxed");
    }
    if (value != kInfinity && value <= 4) {
      throw DomainError("relax_right_angles: m(" + w.generator_name(s) + "," + w.generator_name(t) +
                        ") = " + std::to_string(value) + " must exceed 4");
    }
    m[s][t] = m[t][s] = value;
  }
  return m;
}

}  // namespace hypcox
