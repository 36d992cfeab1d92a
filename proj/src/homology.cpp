#include "hypcox/homology.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <numeric>

#include "hypcox/errors.hpp"

namespace hypcox {

namespace {

constexpr std::uint32_t kAbsent = std::numeric_limits<std::uint32_t>::max();

void sort_unique_records(std::vector<Vertex>& flat, std::size_t width) {
  const std::size_t n = flat.size() / width;
  std::vector<std::uint32_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  auto rec = [&](std::uint32_t i) { return std::span<const Vertex>(flat).subspan(std::size_t{i} * width, width); };
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) {
    auto x = rec(a);
    auto y = rec(b);
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
  });
  std::vector<Vertex> out;
  out.reserve(flat.size());
  for (std::size_t k = 0; k < n; ++k) {
    auto r = rec(idx[k]);
    if (k > 0) {
      auto prev = rec(idx[k - 1]);
      if (std::equal(r.begin(), r.end(), prev.begin())) continue;
    }
    out.insert(out.end(), r.begin(), r.end());
  }
  flat = std::move(out);
}

}  // namespace

std::string Coefficients::label() const {
  switch (kind) {
    case Kind::integers:
      return "Z";
    case Kind::rationals:
      return "Q";
    case Kind::prime:
      return "F" + std::to_string(p);
  }
  return "?";
}

Coefficients parse_coefficients(const std::string& text) {
  if (text == "z") return Coefficients::z();
  if (text == "q") return Coefficients::q();
  if (text == "f2") return Coefficients::f(2);
  if (text.rfind("fp:", 0) == 0) {
    std::uint32_t p = 0;
    auto digits = std::string_view(text).substr(3);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    bool prime = ec == std::errc{} && ptr == digits.data() + digits.size() && p >= 2;
    for (std::uint32_t d = 2; prime && std::uint64_t{d} * d <= p; ++d) prime = p % d != 0;
    if (!prime) throw MalformedInput("coefficient '" + text + "' needs a prime after fp:");
    return Coefficients::f(p);
  }
  throw MalformedInput("unknown coefficients '" + text + "' (expected z, q, f2 or fp:<p>)");
}

SimplexList::SimplexList(int dim, std::vector<Vertex> flat) : dim_(dim), flat_(std::move(flat)) {}

std::optional<std::uint32_t> SimplexList::find(std::span<const Vertex> s) const {
  if (static_cast<int>(s.size()) != dim_ + 1) return std::nullopt;
  std::size_t lo = 0;
  std::size_t hi = size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    auto m = (*this)[mid];
    if (std::lexicographical_compare(m.begin(), m.end(), s.begin(), s.end())) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo < size() && std::equal(s.begin(), s.end(), (*this)[lo].begin())) return static_cast<std::uint32_t>(lo);
  return std::nullopt;
}

std::vector<SimplexList> enumerate_simplices(const SimplicialComplex& x, std::size_t cap) {
  const int top = x.dimension();
  std::vector<std::vector<Vertex>> flat(top + 1);
  std::size_t raw = 0;
  for (std::size_t f = 0; f < x.num_facets(); ++f) raw += (std::size_t{1} << x.facet(f).size()) - 1;
  if (raw > 4 * cap) throw ResourceError("simplex enumeration exceeds the cap", raw);
  for (std::size_t f = 0; f < x.num_facets(); ++f) {
    auto facet = x.facet(f);
    const std::size_t n = facet.size();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
      auto& out = flat[std::popcount(mask) - 1];
      for (std::size_t b = 0; b < n; ++b) {
        if (mask >> b & 1) out.push_back(facet[b]);
      }
    }
  }
  std::vector<SimplexList> lists;
  std::size_t total = 0;
  for (int q = 0; q <= top; ++q) {
    sort_unique_records(flat[q], q + 1);
    total += flat[q].size() / (q + 1);
    if (total > cap) throw ResourceError("simplex enumeration exceeds the cap", total);
    lists.emplace_back(q, std::move(flat[q]));
  }
  return lists;
}

ChainComplex::ChainComplex(const SimplicialComplex& x, std::size_t cap) {
  build(x, nullptr, cap);
}

ChainComplex::ChainComplex(const SimplicialComplex& x, const SimplicialComplex& a, std::size_t cap) {
  std::vector<std::optional<Vertex>> to_a(x.num_vertices());
  std::vector<Vertex> to_x(a.num_vertices());
  for (Vertex v = 0; v < a.num_vertices(); ++v) {
    auto w = x.find(a.name(v));
    if (!w) throw DomainError("relative pair: vertex '" + a.name(v) + "' is not in the complex");
    to_x[v] = *w;
    to_a[*w] = v;
  }
  for (std::size_t f = 0; f < a.num_facets(); ++f) {
    std::vector<Vertex> image;
    for (Vertex v : a.facet(f)) image.push_back(to_x[v]);
    if (!x.is_simplex(image)) throw DomainError("relative pair: the subcomplex has a simplex outside the complex");
  }
  relative_ = true;
  build(
      x,
      [&](std::span<const Vertex> s) {
        std::vector<Vertex> image;
        for (Vertex v : s) {
          if (!to_a[v]) return false;
          image.push_back(*to_a[v]);
        }
        return a.is_simplex(image);
      },
      cap);
}

ChainComplex::ChainComplex(const SimplicialComplex& x, std::span<const Vertex> a_vertices, std::size_t cap) {
  std::vector<std::uint8_t> in(x.num_vertices(), 0);
  for (Vertex v : a_vertices) {
    if (v >= x.num_vertices()) throw DomainError("relative pair: vertex outside the complex");
    in[v] = 1;
  }
  relative_ = true;
  build(
      x,
      [&](std::span<const Vertex> s) { return std::all_of(s.begin(), s.end(), [&](Vertex v) { return in[v] != 0; }); },
      cap);
}

void ChainComplex::build(const SimplicialComplex& x, const Membership& in_a, std::size_t cap) {
  simplices_ = enumerate_simplices(x, cap);
  rel_of_.resize(simplices_.size());
  abs_of_.resize(simplices_.size());
  for (std::size_t q = 0; q < simplices_.size(); ++q) {
    const auto& list = simplices_[q];
    rel_of_[q].assign(list.size(), kAbsent);
    for (std::uint32_t i = 0; i < list.size(); ++i) {
      if (in_a && in_a(list[i])) {
        a_empty_ = false;
        continue;
      }
      rel_of_[q][i] = static_cast<std::uint32_t>(abs_of_[q].size());
      abs_of_[q].push_back(i);
    }
  }
}

std::size_t ChainComplex::rank(int q) const {
  if (q < 0 || q > top_dimension()) return 0;
  return abs_of_[q].size();
}

std::span<const Vertex> ChainComplex::cell(int q, std::uint32_t i) const { return simplices_[q][abs_of_[q][i]]; }

std::optional<std::uint32_t> ChainComplex::index(int q, std::span<const Vertex> s) const {
  if (q < 0 || q > top_dimension()) return std::nullopt;
  auto abs = simplices_[q].find(s);
  if (!abs || rel_of_[q][*abs] == kAbsent) return std::nullopt;
  return rel_of_[q][*abs];
}

SparseIntMatrix ChainComplex::boundary(int q) const {
  SparseIntMatrix m;
  m.rows = rank(q - 1);
  m.cols = rank(q);
  if (q < 1 || q > top_dimension()) return m;
  std::vector<Vertex> face(q);
  for (std::uint32_t j = 0; j < m.cols; ++j) {
    auto s = cell(q, j);
    for (int k = 0; k <= q; ++k) {
      std::copy(s.begin(), s.begin() + k, face.begin());
      std::copy(s.begin() + k + 1, s.end(), face.begin() + k);
      auto abs = simplices_[q - 1].find(face);
      const std::uint32_t rel = rel_of_[q - 1][*abs];
      if (rel == kAbsent) continue;
      m.add(rel, j, k % 2 == 0 ? 1 : -1);
    }
  }
  m.normalize();
  return m;
}

bool ChainComplex::boundary_squares_to_zero() const {
  for (int q = 2; q <= top_dimension(); ++q) {
    auto outer = boundary(q - 1);
    auto inner = boundary(q);
    // Columns of outer, grouped.
    std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> cols(outer.cols);
    for (const auto& e : outer.entries) cols[e.col].emplace_back(e.row, e.value);
    std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> by_col(inner.cols);
    for (const auto& e : inner.entries) by_col[e.col].emplace_back(e.row, e.value);
    for (const auto& col : by_col) {
      std::vector<std::pair<std::uint32_t, std::int64_t>> acc;
      for (auto [mid, v] : col) {
        for (auto [row, w] : cols[mid]) acc.emplace_back(row, v * w);
      }
      std::sort(acc.begin(), acc.end());
      for (std::size_t i = 0; i < acc.size();) {
        std::int64_t sum = 0;
        std::size_t j = i;
        for (; j < acc.size() && acc[j].first == acc[i].first; ++j) sum += acc[j].second;
        if (sum != 0) return false;
        i = j;
      }
    }
  }
  return true;
}

const DegreeGroup* HomologyResult::at(int degree) const {
  for (const auto& g : groups) {
    if (g.degree == degree) return &g;
  }
  return nullptr;
}

std::size_t HomologyResult::rank(int degree) const {
  const auto* g = at(degree);
  return g ? g->rank : 0;
}

std::vector<std::size_t> HomologyResult::betti() const {
  std::vector<std::size_t> out;
  for (const auto& g : groups) {
    if (g.degree >= 0) out.push_back(g.rank);
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

std::optional<int> HomologyResult::top_nonzero() const {
  std::optional<int> top;
  for (const auto& g : groups) {
    if (g.nonzero()) top = g.degree;
  }
  return top;
}

namespace {

struct BoundaryData {
  std::size_t rank = 0;
  std::vector<BigInt> torsion;
};

BoundaryData analyse(const SparseIntMatrix& d, Coefficients coeff) {
  BoundaryData out;
  if (d.entries.empty()) return out;
  if (coeff.kind == Coefficients::Kind::prime) {
    out.rank = rank_mod_p(d, coeff.p);
    return out;
  }
  auto snf = smith_normal_form(d);
  out.rank = snf.rank();
  if (coeff.kind == Coefficients::Kind::integers) {
    for (const auto& f : snf.factors) {
      if (f > 1) out.torsion.push_back(f);
    }
  }
  return out;
}

HomologyResult compute(const ChainComplex& c, Coefficients coeff, bool reduced, bool cohomology) {
  HomologyResult out;
  out.coeff = coeff;
  out.reduced = reduced;
  out.cohomology = cohomology;
  const int top = c.top_dimension();
  // bd[q] describes d_q, q = 0..top+1.
  std::vector<BoundaryData> bd(top + 2);
  for (int q = 1; q <= top; ++q) bd[q] = analyse(c.boundary(q), coeff);
  const bool augment = reduced && (!c.relative() || c.subcomplex_empty());
  const bool empty = top < 0 && (!c.relative() || c.subcomplex_empty());
  if (reduced) {
    DegreeGroup g;
    g.degree = -1;
    g.rank = empty ? 1 : 0;
    out.groups.push_back(g);
  }
  for (int q = 0; q <= top; ++q) {
    DegreeGroup g;
    g.degree = q;
    g.rank = c.rank(q) - bd[q].rank - bd[q + 1].rank;
    if (q == 0 && augment && c.rank(0) > 0) g.rank -= 1;
    if (!cohomology) {
      g.torsion = bd[q + 1].torsion;
    } else if (q >= 1) {
      g.torsion = bd[q].torsion;
    }
    out.groups.push_back(std::move(g));
  }
  return out;
}

}  // namespace

HomologyResult homology(const ChainComplex& c, Coefficients coeff, bool reduced) {
  return compute(c, coeff, reduced, false);
}

HomologyResult cohomology(const ChainComplex& c, Coefficients coeff, bool reduced) {
  return compute(c, coeff, reduced, true);
}

HomologyResult homology(const SimplicialComplex& x, Coefficients coeff, bool reduced) {
  return homology(ChainComplex(x), coeff, reduced);
}

HomologyResult cohomology(const SimplicialComplex& x, Coefficients coeff, bool reduced) {
  return cohomology(ChainComplex(x), coeff, reduced);
}

HomologyResult relative_cohomology(const Chamber& k, const std::vector<Vertex>& t, Coefficients coeff) {
  for (Vertex s : t) {
    if (s >= k.system->rank()) throw DomainError("relative_cohomology: T is not a subset of S");
  }
  auto rest = k.k_complement(t);
  return cohomology(ChainComplex(k.k, rest), coeff, false);
}

VcdResult vcd_lower_bound(const RacgSystem& w, const std::vector<std::size_t>* only) {
  VcdResult out;
  Chamber k = chamber(w);
  const auto& sph = w.spherical();
  std::vector<std::size_t> which;
  if (only) {
    which = *only;
  } else {
    which.resize(sph.size());
    std::iota(which.begin(), which.end(), 0);
  }
  std::optional<int> best;
  for (std::size_t i : which) {
    VcdRow row;
    row.t = sph.at(i);
    row.pair_max = relative_cohomology(k, row.t).top_nonzero();
    std::vector<Vertex> rest;
    for (Vertex s = 0; s < w.rank(); ++s) {
      if (!std::binary_search(row.t.begin(), row.t.end(), s)) rest.push_back(s);
    }
    auto span_top = cohomology(induced_subcomplex(w.nerve(), rest), Coefficients::z(), true).top_nonzero();
    if (span_top) row.span_max = *span_top + 1;
    if (row.pair_max != row.span_max) {
      std::string names;
      for (Vertex s : row.t) names += (names.empty() ? "" : ",") + w.generator_name(s);
      auto show = [](std::optional<int> v) { return v ? std::to_string(*v) : std::string("none"); };
      throw VerificationFailure("vcd formulas disagree at T = {" + names + "}: pair formula " + show(row.pair_max) +
                                ", span formula " + show(row.span_max));
    }
    if (row.pair_max && (!best || *row.pair_max > *best)) best = row.pair_max;
    out.rows.push_back(std::move(row));
  }
  out.value = best.value_or(0);
  return out;
}

bool betti_compare(const SimplicialComplex& a, const SimplicialComplex& b, Coefficients coeff) {
  return homology(a, coeff).betti() == homology(b, coeff).betti();
}

}  // namespace hypcox
