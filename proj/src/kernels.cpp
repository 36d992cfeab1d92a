#include "hypcox/kernels.hpp"

#include <algorithm>

namespace hypcox::kernels {

namespace {

// Pivoted Bron-Kerbosch; calls emit(R) on every maximal clique until it
// returns true.
template <class Emit>
bool bron_kerbosch(GraphView g, std::vector<Vertex>& r, std::vector<Vertex> p, std::vector<Vertex> x,
                   Emit& emit) {
  if (p.empty()) {
    if (x.empty()) return emit(r);
    return false;
  }
  auto count_in_p = [&](Vertex u) {
    auto nb = g.neighbors(u);
    std::size_t c = 0;
    auto it = nb.begin();
    for (Vertex w : p) {
      it = std::lower_bound(it, nb.end(), w);
      if (it == nb.end()) break;
      if (*it == w) ++c;
    }
    return c;
  };
  Vertex pivot = p.front();
  std::size_t best = 0;
  for (const auto* set : {&p, &x}) {
    for (Vertex u : *set) {
      std::size_t c = count_in_p(u);
      if (c > best || (c == best && u < pivot)) {
        best = c;
        pivot = u;
      }
    }
  }
  std::vector<Vertex> candidates;
  for (Vertex u : p) {
    if (!g.adjacent(pivot, u)) candidates.push_back(u);
  }
  for (Vertex u : candidates) {
    auto nb = g.neighbors(u);
    std::vector<Vertex> p2, x2;
    std::set_intersection(p.begin(), p.end(), nb.begin(), nb.end(), std::back_inserter(p2));
    std::set_intersection(x.begin(), x.end(), nb.begin(), nb.end(), std::back_inserter(x2));
    r.push_back(u);
    if (bron_kerbosch(g, r, std::move(p2), std::move(x2), emit)) return true;
    r.pop_back();
    p.erase(std::lower_bound(p.begin(), p.end(), u));
    x.insert(std::lower_bound(x.begin(), x.end(), u), u);
  }
  return false;
}

std::vector<Vertex> shrink_to_minimal(const SimplicialComplex& x, std::vector<Vertex> clique) {
  std::sort(clique.begin(), clique.end());
  for (std::size_t i = 0; i < clique.size();) {
    std::vector<Vertex> trial = clique;
    trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
    if (!x.is_simplex(trial)) {
      clique = std::move(trial);
    } else {
      ++i;
    }
  }
  return clique;
}

// Chordless path search rooted at path[0], the smallest vertex of any cycle
// it reports. cnt[w] counts path vertices adjacent to w.
class CycleSearch {
 public:
  CycleSearch(GraphView g, int min_len, int max_len) : g_(g), min_len_(min_len), max_len_(max_len) {
    thread_local std::vector<std::uint16_t> scratch;
    if (scratch.size() < g.size()) scratch.assign(g.size(), 0);
    cnt_ = &scratch;
  }

  // on_cycle(path) returns true to stop.
  template <class F>
  bool run(Vertex start, F&& on_cycle) {
    path_.assign(1, start);
    push_marks(start);
    bool stop = dfs(on_cycle);
    pop_marks(start);
    return stop;
  }

 private:
  void push_marks(Vertex v) {
    for (Vertex w : g_.neighbors(v)) ++(*cnt_)[w];
  }
  void pop_marks(Vertex v) {
    for (Vertex w : g_.neighbors(v)) --(*cnt_)[w];
  }

  template <class F>
  bool dfs(F& on_cycle) {
    const std::size_t d = path_.size();
    const Vertex s = path_.front();
    const Vertex last = path_.back();
    for (Vertex w : g_.neighbors(last)) {
      if (w <= s) continue;
      if (std::find(path_.begin(), path_.end(), w) != path_.end()) continue;
      const std::uint16_t c = (*cnt_)[w];
      if (d >= 3 && c == 2 && w > path_[1] && g_.adjacent(w, s)) {
        const int len = static_cast<int>(d) + 1;
        if (len >= min_len_ && len <= max_len_) {
          path_.push_back(w);
          bool stop = on_cycle(path_);
          path_.pop_back();
          if (stop) return true;
        }
        continue;
      }
      if (c == 1 && static_cast<int>(d) + 1 < max_len_) {
        path_.push_back(w);
        push_marks(w);
        bool stop = dfs(on_cycle);
        pop_marks(w);
        path_.pop_back();
        if (stop) return true;
      }
    }
    return false;
  }

  GraphView g_;
  int min_len_;
  int max_len_;
  std::vector<std::uint16_t>* cnt_;
  std::vector<Vertex> path_;
};

}  // namespace

std::optional<std::vector<Vertex>> find_non_simplex_clique(const SimplicialComplex& x, Exec exec) {
  const GraphView g = x.skeleton();
  auto hit = find_first(
      x.num_vertices(),
      [&](std::size_t i) -> std::optional<std::vector<Vertex>> {
        const auto v = static_cast<Vertex>(i);
        auto nb = g.neighbors(v);
        auto split = std::upper_bound(nb.begin(), nb.end(), v);
        std::vector<Vertex> later(split, nb.end());
        if (later.size() < 2) return std::nullopt;
        std::vector<Vertex> earlier(nb.begin(), split);
        std::vector<Vertex> r{v};
        std::optional<std::vector<Vertex>> found;
        auto emit = [&](const std::vector<Vertex>& clique) {
          if (clique.size() < 3 || x.is_simplex(clique)) return false;
          found = shrink_to_minimal(x, clique);
          return true;
        };
        bron_kerbosch(g, r, std::move(later), std::move(earlier), emit);
        return found;
      },
      exec);
  if (!hit) return std::nullopt;
  return std::move(hit->second);
}

std::optional<std::vector<Vertex>> find_full_cycle(GraphView g, int max_len, Exec exec) {
  for (int len = 4; len <= max_len; ++len) {
    auto hit = find_first(
        g.size(),
        [&](std::size_t s) -> std::optional<std::vector<Vertex>> {
          CycleSearch search(g, len, len);
          std::optional<std::vector<Vertex>> found;
          search.run(static_cast<Vertex>(s), [&](const std::vector<Vertex>& c) {
            found = c;
            return true;
          });
          return found;
        },
        exec);
    if (hit) return std::move(hit->second);
  }
  return std::nullopt;
}

std::vector<std::vector<Vertex>> full_cycles(GraphView g, int max_len, Exec exec) {
  std::vector<std::vector<std::vector<Vertex>>> per_start(g.size());
  for_each_index(
      g.size(),
      [&](std::size_t s) {
        CycleSearch search(g, 4, max_len);
        search.run(static_cast<Vertex>(s), [&](const std::vector<Vertex>& c) {
          per_start[s].push_back(c);
          return false;
        });
      },
      exec);
  std::vector<std::vector<Vertex>> out;
  for (auto& l : per_start) {
    for (auto& c : l) out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace hypcox::kernels
