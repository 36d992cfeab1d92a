#include "hypcox/quotient.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include <boost/functional/hash.hpp>

#include "hypcox/errors.hpp"

namespace hypcox {

namespace {

using Entry = std::int16_t;
using Key = std::span<const Entry>;

struct ElementHash {
  using is_transparent = void;
  const std::vector<Entry>* store;
  std::size_t width;
  std::size_t operator()(Key k) const { return boost::hash_range(k.begin(), k.end()); }
  std::size_t operator()(std::uint32_t i) const { return (*this)(Key(*store).subspan(i * width, width)); }
};

struct ElementEq {
  using is_transparent = void;
  const std::vector<Entry>* store;
  std::size_t width;
  Key at(std::uint32_t i) const { return Key(*store).subspan(i * width, width); }
  static bool same(Key a, Key b) { return std::equal(a.begin(), a.end(), b.begin(), b.end()); }
  bool operator()(std::uint32_t a, std::uint32_t b) const { return same(at(a), at(b)); }
  bool operator()(Key a, std::uint32_t b) const { return same(a, at(b)); }
  bool operator()(std::uint32_t a, Key b) const { return same(at(a), b); }
};

struct Arith {
  int modulus;
  std::size_t dim;
  bool sign_block;

  std::size_t width() const { return dim * dim + (sign_block ? 1 : 0); }

  Entry reduce(std::int64_t x) const {
    if (modulus > 0) {
      x %= modulus;
      if (x < 0) x += modulus;
      return static_cast<Entry>(x);
    }
    if (x < std::numeric_limits<Entry>::min() || x > std::numeric_limits<Entry>::max()) {
      throw DomainError("quotient over Z: matrix entries leave the 16-bit range; the group is likely infinite");
    }
    return static_cast<Entry>(x);
  }

  void multiply(Key a, Key b, Entry* out) const {
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        std::int64_t acc = 0;
        for (std::size_t k = 0; k < dim; ++k) acc += std::int64_t{a[i * dim + k]} * b[k * dim + j];
        out[i * dim + j] = reduce(acc);
      }
    }
    if (sign_block) out[dim * dim] = static_cast<Entry>(a[dim * dim] * b[dim * dim]);
  }

  std::vector<Entry> identity() const {
    std::vector<Entry> id(width(), 0);
    for (std::size_t i = 0; i < dim; ++i) id[i * dim + i] = 1;
    if (sign_block) id[dim * dim] = 1;
    return id;
  }
};

FiniteQuotient close_group(FiniteQuotient::Kind kind, const Arith& ar, const std::vector<std::vector<Entry>>& gens,
                           std::size_t cap, Exec exec) {
  FiniteQuotient q;
  q.kind = kind;
  q.modulus = ar.modulus;
  q.dim = ar.dim;
  q.sign_block = ar.sign_block;
  q.num_gens = gens.size();
  const std::size_t width = ar.width();
  const std::size_t ns = gens.size();

  auto& store = q.entries;
  store = ar.identity();
  std::unordered_set<std::uint32_t, ElementHash, ElementEq> index(16, ElementHash{&store, width},
                                                                  ElementEq{&store, width});
  index.insert(0);
  q.layer.push_back(0);

  constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
  std::uint32_t begin = 0;
  std::uint32_t end = 1;
  std::uint32_t depth = 0;
  while (begin < end) {
    const std::size_t pairs = static_cast<std::size_t>(end - begin) * ns;
    std::vector<Entry> prod(pairs * width);
    std::vector<std::uint32_t> found(pairs, kNone);
    for_each_index(
        end - begin,
        [&](std::size_t i) {
          for (std::size_t s = 0; s < ns; ++s) {
            Entry* out = prod.data() + (i * ns + s) * width;
            ar.multiply(q.element(begin + static_cast<std::uint32_t>(i)), gens[s], out);
            auto it = index.find(Key(out, width));
            if (it != index.end()) found[i * ns + s] = *it;
          }
        },
        exec);
    std::vector<std::uint32_t> fresh;
    for (std::uint32_t p = 0; p < pairs; ++p) {
      if (found[p] == kNone) fresh.push_back(p);
    }
    auto key = [&](std::uint32_t p) { return Key(prod).subspan(std::size_t{p} * width, width); };
    std::stable_sort(fresh.begin(), fresh.end(), [&](auto a, auto b) {
      auto ka = key(a);
      auto kb = key(b);
      return std::lexicographical_compare(ka.begin(), ka.end(), kb.begin(), kb.end());
    });
    std::uint32_t next = end;
    for (std::size_t i = 0; i < fresh.size(); ++i) {
      if (i > 0 && ElementEq::same(key(fresh[i]), key(fresh[i - 1]))) {
        found[fresh[i]] = next - 1;
        continue;
      }
      if (static_cast<std::size_t>(next) + 1 > cap) {
        throw ResourceError("quotient closure exceeded the cap of " + std::to_string(cap) + " elements", next + 1);
      }
      auto k = key(fresh[i]);
      store.insert(store.end(), k.begin(), k.end());
      index.insert(next);
      q.layer.push_back(depth + 1);
      found[fresh[i]] = next++;
    }
    q.rmul.insert(q.rmul.end(), found.begin(), found.end());
    begin = end;
    end = next;
    ++depth;
  }
  q.gen_index.resize(ns);
  for (std::size_t s = 0; s < ns; ++s) q.gen_index[s] = q.rmul[s];
  return q;
}

void check_relations(const RacgSystem& w, const FiniteQuotient& q) {
  for (Vertex s = 0; s < q.num_gens; ++s) {
    if (q.times(q.gen_index[s], s) != 0) {
      throw DomainError("image of " + w.generator_name(s) + " is not an involution");
    }
  }
  for (auto [s, t] : w.commuting_pairs()) {
    if (q.times(q.gen_index[s], t) != q.times(q.gen_index[t], s)) {
      throw DomainError("images of commuting generators " + w.generator_name(s) + ", " + w.generator_name(t) +
                        " do not commute");
    }
  }
}

// Th-ball over exact matrices with entries of type T.
template <class T>
struct MatrixOps;

template <>
struct MatrixOps<std::int64_t> {
  using Matrix = IntMatrix;
  using Map = std::unordered_map<std::vector<std::int64_t>, std::uint32_t, boost::hash<std::vector<std::int64_t>>>;
  static Matrix lift(const IntMatrix& m) { return m; }
};

template <>
struct MatrixOps<BigInt> {
  using Matrix = BigMatrix;
  using Map = std::map<std::vector<BigInt>, std::uint32_t>;
  static Matrix lift(const IntMatrix& m) { return widen(m); }
};

template <class T>
Ball ball_impl(const RacgSystem& w, int radius, std::size_t cap, const FiniteQuotient* q, Exec exec,
               bool stop_on_kernel) {
  using Ops = MatrixOps<T>;
  using Matrix = typename Ops::Matrix;
  const auto& sph = w.spherical();
  std::vector<Matrix> steps;
  for (std::size_t t = 1; t < sph.size(); ++t) steps.push_back(Ops::lift(w.spherical_element(t)));

  Ball ball;
  std::vector<Matrix> elems{Matrix::identity(w.rank())};
  typename Ops::Map index;
  index.emplace(elems[0].a, 0);
  ball.distance.push_back(0);
  ball.parent.push_back(0);
  ball.step.push_back(0);
  if (q) ball.image.push_back(0);
  ball.sphere_sizes.push_back(1);

  std::size_t begin = 0;
  std::size_t end = 1;
  for (int d = 0; d < radius && begin < end; ++d) {
    const std::size_t ns = steps.size();
    std::vector<Matrix> prod((end - begin) * ns);
    for_each_index(
        end - begin,
        [&](std::size_t i) {
          for (std::size_t t = 0; t < ns; ++t) prod[i * ns + t] = multiply(elems[begin + i], steps[t]);
        },
        exec);
    bool kernel_hit = false;
    for (std::size_t p = 0; p < prod.size(); ++p) {
      if (index.count(prod[p].a)) continue;
      if (elems.size() + 1 > cap) {
        throw ResourceError("thickening ball exceeded the cap of " + std::to_string(cap) + " elements",
                            elems.size() + 1);
      }
      const auto id = static_cast<std::uint32_t>(elems.size());
      const auto parent = static_cast<std::uint32_t>(begin + p / ns);
      const auto step = static_cast<std::uint32_t>(p % ns + 1);
      index.emplace(prod[p].a, id);
      elems.push_back(std::move(prod[p]));
      ball.distance.push_back(static_cast<std::uint32_t>(d + 1));
      ball.parent.push_back(parent);
      ball.step.push_back(step);
      if (q) {
        std::uint32_t g = ball.image[parent];
        for (Vertex s : sph[step]) g = q->times(g, s);
        ball.image.push_back(g);
        if (g == 0) kernel_hit = true;
      }
    }
    begin = end;
    end = elems.size();
    ball.sphere_sizes.push_back(end - begin);
    if (stop_on_kernel && kernel_hit) break;
  }
  return ball;
}

Ball ball_any(const RacgSystem& w, int radius, std::size_t cap, const FiniteQuotient* q, Exec exec,
              bool stop_on_kernel) {
  if (radius < 0) throw DomainError("thickening_ball: negative radius");
  if (q && q->num_gens != w.rank()) throw DomainError("quotient has the wrong number of generators");
  try {
    return ball_impl<std::int64_t>(w, radius, cap, q, exec, stop_on_kernel);
  } catch (const Overflow&) {
    return ball_impl<BigInt>(w, radius, cap, q, exec, stop_on_kernel);
  }
}

}  // namespace

FiniteQuotient congruence_image(const RacgSystem& w, int modulus, std::size_t cap, Exec exec) {
  if (modulus < 3) throw DomainError("congruence quotients need modulus >= 3");
  if (modulus > std::numeric_limits<Entry>::max()) throw DomainError("modulus too large");
  Arith ar{modulus, w.rank(), false};
  std::vector<std::vector<Entry>> gens;
  for (Vertex s = 0; s < w.rank(); ++s) {
    auto m = w.tits_matrix(s);
    std::vector<Entry> g(ar.width());
    for (std::size_t i = 0; i < m.a.size(); ++i) g[i] = ar.reduce(m.a[i]);
    gens.push_back(std::move(g));
  }
  auto q = close_group(FiniteQuotient::Kind::congruence, ar, gens, cap, exec);
  check_relations(w, q);
  q.torsion_free_proven = true;
  return q;
}

FiniteQuotient user_quotient(const RacgSystem& w, int modulus, const std::vector<IntMatrix>& images,
                             std::size_t cap, Exec exec) {
  if (images.size() != w.rank()) throw DomainError("need one image per generator");
  if (modulus < 0 || modulus == 1) throw DomainError("modulus must be 0 or at least 2");
  if (modulus > std::numeric_limits<Entry>::max()) throw DomainError("modulus too large");
  const std::size_t dim = images.empty() ? 0 : images[0].n;
  Arith ar{modulus, dim, false};
  std::vector<std::vector<Entry>> gens;
  for (const auto& m : images) {
    if (m.n != dim) throw MalformedInput("generator images have different sizes");
    std::vector<Entry> g(ar.width());
    for (std::size_t i = 0; i < m.a.size(); ++i) g[i] = ar.reduce(m.a[i]);
    gens.push_back(std::move(g));
  }
  auto q = close_group(FiniteQuotient::Kind::user, ar, gens, cap, exec);
  check_relations(w, q);
  return q;
}

Ball thickening_ball(const RacgSystem& w, int radius, std::size_t cap, const FiniteQuotient* q, Exec exec) {
  return ball_any(w, radius, cap, q, exec, false);
}

std::vector<Vertex> ball_word(const RacgSystem& w, const Ball& ball, std::uint32_t i) {
  std::vector<std::uint32_t> steps;
  while (i != 0) {
    steps.push_back(ball.step[i]);
    i = ball.parent[i];
  }
  std::vector<Vertex> word;
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    const auto& t = w.spherical()[*it];
    word.insert(word.end(), t.begin(), t.end());
  }
  return word;
}

DisplacementResult displacement_at_least(const RacgSystem& w, const FiniteQuotient& q, int r, std::size_t cap,
                                         Exec exec) {
  if (r < 1) throw DomainError("displacement radius must be at least 1");
  DisplacementResult out;
  out.radius = r;
  Ball ball = ball_any(w, r - 1, cap, &q, exec, true);
  out.ball_size = ball.size();
  for (std::uint32_t i = 1; i < ball.size(); ++i) {
    if (ball.image[i] == 0) {
      out.ok = false;
      out.distance = static_cast<int>(ball.distance[i]);
      out.witness = ball_word(w, ball, i);
      break;
    }
  }
  return out;
}

std::optional<int> minimal_displacement(const RacgSystem& w, const FiniteQuotient& q, int max_radius,
                                        std::size_t cap, Exec exec) {
  Ball ball = ball_any(w, max_radius, cap, &q, exec, true);
  for (std::uint32_t i = 1; i < ball.size(); ++i) {
    if (ball.image[i] == 0) return static_cast<int>(ball.distance[i]);
  }
  return std::nullopt;
}

bool parity_is_well_defined(const FiniteQuotient& q) {
  for (std::uint32_t g = 0; g < q.order(); ++g) {
    for (std::size_t s = 0; s < q.num_gens; ++s) {
      if ((q.layer[g] ^ q.layer[q.times(g, static_cast<Vertex>(s))]) % 2 == 0) return false;
    }
  }
  return true;
}

Refinement orientable_refinement(const RacgSystem& w, const FiniteQuotient& q, std::size_t cap, Exec exec) {
  Refinement out;
  if (parity_is_well_defined(q)) {
    out.quotient = q;
    return out;
  }
  if (q.sign_block) throw VerificationFailure("sign-refined quotient is not orientable");
  Arith ar{q.modulus, q.dim, true};
  std::vector<std::vector<Entry>> gens;
  for (std::size_t s = 0; s < q.num_gens; ++s) {
    auto e = q.element(q.gen_index[s]);
    std::vector<Entry> g(e.begin(), e.end());
    g.push_back(-1);
    gens.push_back(std::move(g));
  }
  out.quotient = close_group(q.kind, ar, gens, cap, exec);
  out.quotient.torsion_free_proven = q.torsion_free_proven;
  check_relations(w, out.quotient);
  if (!parity_is_well_defined(out.quotient)) throw VerificationFailure("sign refinement did not orient");
  out.double_cover = true;
  return out;
}

QuotientDavis quotient_davis(const RacgSystem& w, const FiniteQuotient& q, Exec exec) {
  if (q.num_gens != w.rank()) throw DomainError("quotient has the wrong number of generators");
  const auto& sph = w.spherical();
  const std::size_t nt = sph.size();
  const std::size_t order = q.order();

  auto coset = [&](std::uint32_t g, std::size_t t, std::vector<Vertex>& c) {
    const auto& gens = sph[t];
    c.assign(std::size_t{1} << gens.size(), 0);
    c[0] = g;
    for (std::size_t b = 0; b < gens.size(); ++b) {
      const std::size_t half = std::size_t{1} << b;
      for (std::size_t m = 0; m < half; ++m) c[half + m] = q.times(c[m], gens[b]);
    }
  };

  std::vector<Vertex> c;
  for (std::size_t t = 1; t < nt; ++t) {
    coset(0, t, c);
    auto sorted = c;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      std::string names;
      for (Vertex s : sph[t]) names += (names.empty() ? "" : ",") + w.generator_name(s);
      throw DomainError("spherical subgroup of {" + names +
                        "} does not embed in G: a kernel element lies at Th-distance 1 (displacement < 2)");
    }
  }

  std::vector<std::uint8_t> dims;
  std::vector<Vertex> corners;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> emitted;  // (g, t)
  for (std::uint32_t g = 0; g < order; ++g) {
    for (std::size_t t = 1; t < nt; ++t) {
      coset(g, t, c);
      if (*std::min_element(c.begin(), c.end()) != g) continue;
      dims.push_back(static_cast<std::uint8_t>(sph[t].size()));
      corners.insert(corners.end(), c.begin(), c.end());
      emitted.emplace_back(g, static_cast<std::uint32_t>(t));
    }
  }

  QuotientDavis out;
  out.num_spherical = nt;
  out.complex = CubicalComplex(VertexNames::numbered("g", order), dims, corners, false);
  out.cube_type.assign(out.complex.num_cubes(), 0);
  out.cube_at.assign(order * nt, 0);
  for (std::uint32_t g = 0; g < order; ++g) out.cube_at[g * nt] = g;
  std::size_t pos = 0;
  for (auto [g, t] : emitted) {
    const std::size_t width = std::size_t{1} << sph[t].size();
    std::span<const Vertex> cs(corners.data() + pos, width);
    pos += width;
    CubeId id = *out.complex.find(cs);
    out.cube_type[id] = t;
    for (Vertex v : cs) out.cube_at[v * nt + t] = id;
  }

  // Link at g, read off through s -> g*phi(s), must be the nerve.
  std::vector<std::vector<Vertex>> nerve_facets;
  for (std::size_t f = 0; f < w.nerve().num_facets(); ++f) {
    auto fs = w.nerve().facet(f);
    nerve_facets.emplace_back(fs.begin(), fs.end());
  }
  std::sort(nerve_facets.begin(), nerve_facets.end());
  auto mismatch = find_first(
      order,
      [&](std::size_t gi) -> std::optional<bool> {
        const auto g = static_cast<std::uint32_t>(gi);
        std::vector<std::pair<Vertex, Vertex>> nbr;  // (g*phi(s), s)
        for (Vertex s = 0; s < w.rank(); ++s) nbr.emplace_back(q.times(g, s), s);
        std::sort(nbr.begin(), nbr.end());
        for (std::size_t i = 0; i < nbr.size(); ++i) {
          if (nbr[i].first == g || (i > 0 && nbr[i].first == nbr[i - 1].first)) return true;
        }
        std::vector<std::vector<Vertex>> facets;
        for (CubeId cube : out.complex.maximal_at(g)) {
          auto cs = out.complex.corners(cube);
          const auto mv = static_cast<std::uint32_t>(std::find(cs.begin(), cs.end(), g) - cs.begin());
          std::vector<Vertex> f;
          for (int axis = 0; axis < out.complex.dim(cube); ++axis) {
            Vertex u = cs[mv ^ (1u << axis)];
            auto it = std::lower_bound(nbr.begin(), nbr.end(), std::pair<Vertex, Vertex>{u, 0});
            if (it == nbr.end() || it->first != u) return true;
            f.push_back(it->second);
          }
          std::sort(f.begin(), f.end());
          facets.push_back(std::move(f));
        }
        std::sort(facets.begin(), facets.end());
        if (w.rank() == 0) return std::nullopt;
        if (facets != nerve_facets) return true;
        return std::nullopt;
      },
      exec);
  out.links_match_nerve = !mismatch.has_value();
  if (mismatch) out.link_mismatch = static_cast<Vertex>(mismatch->first);
  return out;
}

}  // namespace hypcox
