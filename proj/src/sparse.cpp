#include "hypcox/sparse.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <type_traits>

#include "hypcox/errors.hpp"

namespace hypcox {

void SparseIntMatrix::normalize() {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });
  std::vector<Entry> out;
  out.reserve(entries.size());
  for (const auto& e : entries) {
    if (e.row >= rows || e.col >= cols) throw DomainError("sparse matrix entry outside its shape");
    if (!out.empty() && out.back().row == e.row && out.back().col == e.col) {
      if (__builtin_add_overflow(out.back().value, e.value, &out.back().value)) throw Overflow();
    } else {
      out.push_back(e);
    }
  }
  std::erase_if(out, [](const Entry& e) { return e.value == 0; });
  entries = std::move(out);
}

SparseIntMatrix SparseIntMatrix::transpose() const {
  SparseIntMatrix t;
  t.rows = cols;
  t.cols = rows;
  t.entries.reserve(entries.size());
  for (const auto& e : entries) t.entries.push_back({e.col, e.row, e.value});
  t.normalize();
  return t;
}

namespace {

struct FpRing {
  using V = std::uint32_t;
  std::uint32_t p;
  V from(std::int64_t x) const {
    x %= static_cast<std::int64_t>(p);
    return static_cast<V>(x < 0 ? x + p : x);
  }
  bool zero(V a) const { return a == 0; }
  bool unit(V a) const { return a != 0; }
  V mul(V a, V b) const { return static_cast<V>(std::uint64_t{a} * b % p); }
  V sub(V a, V b) const { return a >= b ? a - b : a + p - b; }
  V inv(V a) const {
    V r = 1;
    V base = a;
    for (std::uint32_t e = p - 2; e; e >>= 1) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
    }
    return r;
  }
};

struct Z64Ring {
  using V = std::int64_t;
  V from(std::int64_t x) const { return x; }
  bool zero(V a) const { return a == 0; }
  bool unit(V a) const { return a == 1 || a == -1; }
  V mul(V a, V b) const {
    V r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow();
    return r;
  }
  V sub(V a, V b) const {
    V r;
    if (__builtin_sub_overflow(a, b, &r)) throw Overflow();
    return r;
  }
  V inv(V a) const { return a; }
};

struct BigRing {
  using V = BigInt;
  V from(std::int64_t x) const { return x; }
  bool zero(const V& a) const { return a.is_zero(); }
  bool unit(const V& a) const { return a == 1 || a == -1; }
  V mul(const V& a, const V& b) const { return a * b; }
  V sub(const V& a, const V& b) const { return a - b; }
  V inv(const V& a) const { return a; }
};

// Sparse Gaussian elimination over a ring, pivoting only on units. Rows are
// taken shortest first; within a row the unit in the sparsest column wins.
template <class Ring>
class Eliminator {
 public:
  using V = typename Ring::V;
  using Row = std::vector<std::pair<std::uint32_t, V>>;

  struct Pivot {
    std::uint32_t col;
    V value;
    Row row;
    V rhs;
  };

  Eliminator(Ring ring, std::size_t cols, std::vector<Row> rows, std::vector<V>* rhs, bool keep_pivots)
      : ring_(ring), rows_(std::move(rows)), rhs_(rhs), keep_(keep_pivots), col_rows_(cols), col_count_(cols, 0) {
    alive_.assign(rows_.size(), 1);
    for (std::uint32_t r = 0; r < rows_.size(); ++r) {
      for (const auto& [c, v] : rows_[r]) {
        col_rows_[c].push_back(r);
        ++col_count_[c];
      }
      heap_.emplace(rows_[r].size(), r);
    }
  }

  void run() {
    while (!heap_.empty()) {
      auto [len, r] = heap_.top();
      heap_.pop();
      if (!alive_[r] || len != rows_[r].size()) continue;
      if (len == 0) {
        if (rhs_ && !ring_.zero((*rhs_)[r])) inconsistent_ = true;
        alive_[r] = 0;
        continue;
      }
      const std::pair<std::uint32_t, V>* best = nullptr;
      for (const auto& e : rows_[r]) {
        if (!ring_.unit(e.second)) continue;
        if (!best || col_count_[e.first] < col_count_[best->first]) best = &e;
      }
      if (!best) continue;  // stays alive; revisited if the row changes
      eliminate(r, best->first, best->second);
    }
  }

  std::size_t num_pivots() const noexcept { return pivots_count_; }
  bool inconsistent() const noexcept { return inconsistent_; }
  const std::vector<Pivot>& pivots() const noexcept { return pivots_; }

  std::vector<std::uint32_t> leftover_rows() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t r = 0; r < rows_.size(); ++r) {
      if (alive_[r] && !rows_[r].empty()) out.push_back(r);
    }
    return out;
  }
  const Row& row(std::uint32_t r) const { return rows_[r]; }
  const V& rhs(std::uint32_t r) const { return (*rhs_)[r]; }

 private:
  void eliminate(std::uint32_t r, std::uint32_t c, V p) {
    const V pinv = ring_.inv(p);
    auto users = std::move(col_rows_[c]);
    col_rows_[c].clear();
    std::sort(users.begin(), users.end());
    users.erase(std::unique(users.begin(), users.end()), users.end());
    for (std::uint32_t j : users) {
      if (j == r || !alive_[j]) continue;
      auto& rj = rows_[j];
      auto it = std::lower_bound(rj.begin(), rj.end(), c, [](const auto& e, std::uint32_t col) { return e.first < col; });
      if (it == rj.end() || it->first != c) continue;
      const V factor = ring_.mul(it->second, pinv);
      Row merged;
      merged.reserve(rj.size() + rows_[r].size());
      auto a = rj.begin();
      auto b = rows_[r].begin();
      while (a != rj.end() || b != rows_[r].end()) {
        if (b == rows_[r].end() || (a != rj.end() && a->first < b->first)) {
          merged.push_back(std::move(*a++));
        } else if (a == rj.end() || b->first < a->first) {
          V v = ring_.sub(ring_.from(0), ring_.mul(factor, b->second));
          col_rows_[b->first].push_back(j);
          ++col_count_[b->first];
          merged.emplace_back(b->first, std::move(v));
          ++b;
        } else {
          V v = ring_.sub(a->second, ring_.mul(factor, b->second));
          if (ring_.zero(v)) {
            --col_count_[a->first];
          } else {
            merged.emplace_back(a->first, std::move(v));
          }
          ++a;
          ++b;
        }
      }
      rj = std::move(merged);
      if (rhs_) (*rhs_)[j] = ring_.sub((*rhs_)[j], ring_.mul(factor, (*rhs_)[r]));
      heap_.emplace(rj.size(), j);
    }
    for (const auto& e : rows_[r]) --col_count_[e.first];
    alive_[r] = 0;
    ++pivots_count_;
    if (keep_) pivots_.push_back({c, p, std::move(rows_[r]), rhs_ ? (*rhs_)[r] : ring_.from(0)});
    rows_[r].clear();
  }

  Ring ring_;
  std::vector<Row> rows_;
  std::vector<V>* rhs_;
  bool keep_;
  std::vector<std::vector<std::uint32_t>> col_rows_;
  std::vector<std::uint32_t> col_count_;
  std::vector<std::uint8_t> alive_;
  std::priority_queue<std::pair<std::size_t, std::uint32_t>, std::vector<std::pair<std::size_t, std::uint32_t>>,
                      std::greater<>>
      heap_;
  std::vector<Pivot> pivots_;
  std::size_t pivots_count_ = 0;
  bool inconsistent_ = false;
};

template <class Ring>
std::vector<typename Eliminator<Ring>::Row> rows_of(const SparseIntMatrix& m, const Ring& ring) {
  std::vector<typename Eliminator<Ring>::Row> rows(m.rows);
  for (const auto& e : m.entries) {
    auto v = ring.from(e.value);
    if (!ring.zero(v)) rows[e.row].emplace_back(e.col, v);
  }
  for (auto& r : rows) {
    std::sort(r.begin(), r.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  }
  return rows;
}

template <class V>
BigInt to_big(const V& v) {
  return BigInt(v);
}

// Leftover rows as a dense matrix over the columns they touch.
template <class Ring>
DenseInt leftover_dense(const Eliminator<Ring>& el, std::size_t dense_limit, std::vector<std::uint32_t>* cols_out) {
  auto left = el.leftover_rows();
  std::vector<std::uint32_t> cols;
  for (auto r : left) {
    for (const auto& e : el.row(r)) cols.push_back(e.first);
  }
  std::sort(cols.begin(), cols.end());
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
  if (left.size() * cols.size() > dense_limit) {
    throw ResourceError("dense remainder of " + std::to_string(left.size()) + "x" + std::to_string(cols.size()) +
                            " exceeds the limit",
                        left.size() * cols.size());
  }
  DenseInt a(left.size(), std::vector<BigInt>(cols.size()));
  for (std::size_t i = 0; i < left.size(); ++i) {
    for (const auto& e : el.row(left[i])) {
      auto k = std::lower_bound(cols.begin(), cols.end(), e.first) - cols.begin();
      a[i][k] = to_big(e.second);
    }
  }
  if (cols_out) *cols_out = std::move(cols);
  return a;
}

template <class Ring>
SnfResult sparse_snf(const SparseIntMatrix& m, Ring ring, std::size_t dense_limit) {
  Eliminator<Ring> el(ring, m.cols, rows_of(m, ring), nullptr, false);
  el.run();
  auto rest = dense_smith_normal_form(leftover_dense(el, dense_limit, nullptr), false);
  SnfResult out;
  out.factors.assign(el.num_pivots(), BigInt(1));
  out.factors.insert(out.factors.end(), rest.factors.begin(), rest.factors.end());
  return out;
}

// Row-reduce [a | b] in place; returns pivot columns. Inconsistency shows up
// as a zero row with nonzero b.
std::vector<std::size_t> rref(DenseRational& a, std::vector<Rational>* b) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    if (b) std::swap((*b)[p], (*b)[r]);
    const Rational inv = 1 / a[r][c];
    for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
    if (b) (*b)[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) {
        if (a[r][j] != 0) a[i][j] -= f * a[r][j];
      }
      if (b) (*b)[i] -= f * (*b)[r];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class Ring>
std::optional<std::vector<Rational>> sparse_solve(const SparseIntMatrix& m, const std::vector<BigInt>& b_int,
                                                  const BigInt& scale, Ring ring, std::size_t dense_limit) {
  using V = typename Ring::V;
  std::vector<V> rhs;
  rhs.reserve(b_int.size());
  for (const auto& x : b_int) {
    if constexpr (std::is_same_v<V, BigInt>) {
      rhs.push_back(x);
    } else {
      if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min()) {
        throw Overflow();
      }
      rhs.push_back(static_cast<std::int64_t>(x));
    }
  }
  Eliminator<Ring> el(ring, m.cols, rows_of(m, ring), &rhs, true);
  el.run();
  if (el.inconsistent()) return std::nullopt;

  std::vector<std::uint32_t> cols;
  DenseInt left = leftover_dense(el, dense_limit, &cols);
  auto left_rows = el.leftover_rows();
  DenseRational a(left.size(), std::vector<Rational>(cols.size()));
  std::vector<Rational> b(left.size());
  for (std::size_t i = 0; i < left.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) a[i][j] = Rational(left[i][j]);
    b[i] = Rational(to_big(el.rhs(left_rows[i])));
  }
  auto piv = rref(a, &b);
  for (std::size_t i = piv.size(); i < b.size(); ++i) {
    if (b[i] != 0) return std::nullopt;
  }
  std::vector<Rational> x(m.cols);
  for (std::size_t i = 0; i < piv.size(); ++i) x[cols[piv[i]]] = b[i];
  const auto& pivots = el.pivots();
  for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
    Rational acc(to_big(it->rhs));
    Rational self;
    for (const auto& [c, v] : it->row) {
      if (c == it->col) {
        self = Rational(to_big(v));
      } else if (x[c] != 0) {
        acc -= Rational(to_big(v)) * x[c];
      }
    }
    x[it->col] = acc / self;
  }
  for (auto& v : x) v /= Rational(scale);
  return x;
}

}  // namespace

std::size_t rank_mod_p(const SparseIntMatrix& m, std::uint32_t p) {
  if (p < 2) throw DomainError("rank_mod_p: p must be prime");
  FpRing ring{p};
  Eliminator<FpRing> el(ring, m.cols, rows_of(m, ring), nullptr, false);
  el.run();
  return el.num_pivots();
}

SnfResult dense_smith_normal_form(DenseInt a, bool with_transforms) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  DenseInt u, v;
  if (with_transforms) {
    u.assign(rows, std::vector<BigInt>(rows));
    for (std::size_t i = 0; i < rows; ++i) u[i][i] = 1;
    v.assign(cols, std::vector<BigInt>(cols));
    for (std::size_t i = 0; i < cols; ++i) v[i][i] = 1;
  }
  auto swap_rows = [&](std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    if (with_transforms) std::swap(u[i], u[j]);
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    for (auto& row : a) std::swap(row[i], row[j]);
    if (with_transforms) {
      for (auto& row : v) std::swap(row[i], row[j]);
    }
  };
  // row i -= q * row t
  auto row_op = [&](std::size_t i, std::size_t t, const BigInt& q) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (!a[t][j].is_zero()) a[i][j] -= q * a[t][j];
    }
    if (with_transforms) {
      for (std::size_t j = 0; j < rows; ++j) {
        if (!u[t][j].is_zero()) u[i][j] -= q * u[t][j];
      }
    }
  };
  // col j -= q * col t
  auto col_op = [&](std::size_t j, std::size_t t, const BigInt& q) {
    for (std::size_t i = 0; i < rows; ++i) {
      if (!a[i][t].is_zero()) a[i][j] -= q * a[i][t];
    }
    if (with_transforms) {
      for (std::size_t i = 0; i < cols; ++i) {
        if (!v[i][t].is_zero()) v[i][j] -= q * v[i][t];
      }
    }
  };

  std::size_t t = 0;
  for (; t < std::min(rows, cols); ++t) {
    std::size_t pi = rows, pj = cols;
    BigInt best;
    for (std::size_t i = t; i < rows; ++i) {
      for (std::size_t j = t; j < cols; ++j) {
        if (a[i][j].is_zero()) continue;
        BigInt mag = abs(a[i][j]);
        if (pi == rows || mag < best) {
          best = mag;
          pi = i;
          pj = j;
        }
      }
    }
    if (pi == rows) break;
    swap_rows(t, pi);
    swap_cols(t, pj);
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t].is_zero()) continue;
        row_op(i, t, a[i][t] / a[t][t]);
        if (!a[i][t].is_zero()) {
          swap_rows(i, t);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j].is_zero()) continue;
        col_op(j, t, a[t][j] / a[t][t]);
        if (!a[t][j].is_zero()) {
          swap_cols(j, t);
          clean = false;
        }
      }
      if (!clean) continue;
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (BigInt(a[i][j] % a[t][t]) != 0) {
            row_op(t, i, BigInt(-1));
            divides = false;
            break;
          }
        }
      }
      if (divides) break;
    }
    if (a[t][t] < 0) {
      for (auto& x : a[t]) x = -x;
      if (with_transforms) {
        for (auto& x : u[t]) x = -x;
      }
    }
  }
  SnfResult out;
  for (std::size_t i = 0; i < t; ++i) out.factors.push_back(a[i][i]);
  if (with_transforms) {
    out.u = std::move(u);
    out.v = std::move(v);
  }
  return out;
}

SnfResult smith_normal_form(const SparseIntMatrix& m, bool with_transforms, std::size_t dense_limit) {
  if (with_transforms) {
    if (m.rows * m.cols > dense_limit) {
      throw ResourceError("Smith form with transforms is dense; matrix too large", m.rows * m.cols);
    }
    DenseInt a(m.rows, std::vector<BigInt>(m.cols));
    for (const auto& e : m.entries) a[e.row][e.col] += e.value;
    return dense_smith_normal_form(std::move(a), true);
  }
  try {
    return sparse_snf(m, Z64Ring{}, dense_limit);
  } catch (const Overflow&) {
    return sparse_snf(m, BigRing{}, dense_limit);
  }
}

std::optional<std::vector<Rational>> solve_rational(const SparseIntMatrix& m, const std::vector<Rational>& b,
                                                    std::size_t dense_limit) {
  if (b.size() != m.rows) throw DomainError("solve_rational: right-hand side has the wrong length");
  BigInt scale = 1;
  for (const auto& x : b) {
    BigInt d = denominator(x);
    scale = scale / gcd(scale, d) * d;
  }
  std::vector<BigInt> b_int;
  b_int.reserve(b.size());
  for (const auto& x : b) b_int.push_back(numerator(x) * (scale / denominator(x)));
  try {
    return sparse_solve(m, b_int, scale, Z64Ring{}, dense_limit);
  } catch (const Overflow&) {
    return sparse_solve(m, b_int, scale, BigRing{}, dense_limit);
  }
}

std::vector<std::vector<Rational>> nullspace_rational(const SparseIntMatrix& m) {
  DenseRational a(m.rows, std::vector<Rational>(m.cols));
  for (const auto& e : m.entries) a[e.row][e.col] += e.value;
  auto piv = rref(a, nullptr);
  std::vector<std::vector<Rational>> basis;
  std::size_t k = 0;
  for (std::size_t c = 0; c < m.cols; ++c) {
    if (k < piv.size() && piv[k] == c) {
      ++k;
      continue;
    }
    std::vector<Rational> x(m.cols);
    x[c] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = -a[i][c];
    basis.push_back(std::move(x));
  }
  return basis;
}

std::vector<BigInt> primitive_integer(const std::vector<Rational>& v) {
  BigInt scale = 1;
  for (const auto& x : v) {
    BigInt d = denominator(x);
    scale = scale / gcd(scale, d) * d;
  }
  std::vector<BigInt> out;
  BigInt g = 0;
  for (const auto& x : v) {
    out.push_back(numerator(x) * (scale / denominator(x)));
    g = gcd(g, out.back());
  }
  if (g > 1) {
    for (auto& x : out) x /= g;
  }
  return out;
}

}  // namespace hypcox
