#include "hypcox/antisym.hpp"

#include <limits>

#include "hypcox/errors.hpp"

namespace hypcox {

namespace {

std::vector<Vertex> nonempty_sets(const Chamber& k) { return k.k_complement({}); }

std::int64_t to_int64(const Rational& x) {
  if (denominator(x) != 1) throw DomainError("expected an integer cochain");
  const BigInt& n = numerator(x);
  if (n > std::numeric_limits<std::int64_t>::max() || n < std::numeric_limits<std::int64_t>::min()) {
    throw Overflow();
  }
  return static_cast<std::int64_t>(n);
}

std::vector<Rational> to_rational(const std::vector<BigInt>& v) { return std::vector<Rational>(v.begin(), v.end()); }

bool is_zero(const std::vector<Rational>& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.is_zero(); });
}

}  // namespace

Orientation orientation(const FiniteQuotient& q) {
  Orientation eps;
  eps.sign.resize(q.order());
  for (std::size_t g = 0; g < q.order(); ++g) eps.sign[g] = q.layer[g] % 2 == 0 ? 1 : -1;
  if (!is_orientation(q, eps)) {
    throw DomainError("Y is not orientable: some kernel element has odd length; apply orientable_refinement");
  }
  return eps;
}

bool is_orientation(const FiniteQuotient& q, const Orientation& eps) {
  if (eps.sign.size() != q.order()) return false;
  for (std::uint32_t g = 0; g < q.order(); ++g) {
    for (Vertex s = 0; s < q.num_gens; ++s) {
      if (eps[q.times(g, s)] != -eps[g]) return false;
    }
  }
  return true;
}

std::vector<Rational> apply_matrix(const SparseIntMatrix& m, const std::vector<Rational>& x) {
  if (x.size() != m.cols) throw DomainError("apply: vector has the wrong length");
  std::vector<Rational> out(m.rows);
  for (const auto& e : m.entries) {
    const Rational& v = x[e.col];
    if (v.is_zero()) continue;
    if (e.value == 1) {
      out[e.row] += v;
    } else if (e.value == -1) {
      out[e.row] -= v;
    } else {
      out[e.row] += e.value * v;
    }
  }
  return out;
}

Antisymmetrizer::Antisymmetrizer(const RacgSystem& w, const FiniteQuotient& q, const QuotientDavis& y,
                                 const ChamberedTriangulation& tri, Orientation eps, Exec exec)
    : w_(&w),
      q_(&q),
      y_(&y),
      k_(chamber(w)),
      chains_(tri.complex),
      model_(k_.k),
      relative_model_(k_.k, nonempty_sets(k_)),
      eps_(std::move(eps)),
      exec_(exec) {
  if (!is_orientation(q, eps_)) throw DomainError("Antisymmetrizer: not an orientation of Y");
  if (tri.cubes != &y.complex) throw DomainError("Antisymmetrizer: triangulation of a different complex");
  for (std::uint32_t g = 0; g < q.order(); ++g) {
    if (y.cube_containing(g, 0) != g) throw DomainError("Antisymmetrizer: vertex ids of Y are not group elements");
  }
  const int top = chains_.top_dimension();
  if (top > model_.top_dimension()) throw DomainError("Antisymmetrizer: Y is not built from this chamber");
  const std::size_t n = q.order();
  chamber_of_.resize(top + 1);
  model_of_.resize(top + 1);
  at_.resize(top + 1);
  for (int d = 0; d <= top; ++d) {
    const std::size_t cells = chains_.rank(d);
    const std::size_t nk = model_.rank(d);
    chamber_of_[d].resize(cells);
    model_of_[d].resize(cells);
    for_each_index(
        cells,
        [&](std::size_t i) {
          auto chain = chains_.cell(d, static_cast<std::uint32_t>(i));
          std::vector<Vertex> types(chain.size());
          for (std::size_t j = 0; j < chain.size(); ++j) types[j] = y.cube_type[chain[j]];
          chamber_of_[d][i] = tri.chamber(chain);
          auto sigma = model_.index(d, types);
          if (!sigma) throw VerificationFailure("simplex of Y with no model chain in K");
          model_of_[d][i] = *sigma;
        },
        exec);
    at_[d].resize(n * nk);
    for_each_index(
        n,
        [&](std::size_t g) {
          std::vector<Vertex> chain(d + 1);
          for (std::uint32_t s = 0; s < nk; ++s) {
            auto sigma = model_.cell(d, s);
            for (int j = 0; j <= d; ++j) chain[j] = y.cube_containing(static_cast<std::uint32_t>(g), sigma[j]);
            auto tau = chains_.index(d, chain);
            if (!tau) throw VerificationFailure("translate of a model chain is not a simplex of Y");
            at_[d][g * nk + s] = *tau;
          }
        },
        exec);
  }
  for (int d = -1; d <= top; ++d) coboundary_.push_back(chains_.coboundary(d));
}

std::pair<std::uint32_t, std::uint32_t> Antisymmetrizer::model(int q, std::uint32_t i) const {
  return {chamber_of_.at(q)[i], model_of_.at(q)[i]};
}

std::uint32_t Antisymmetrizer::simplex(int q, std::uint32_t g, std::uint32_t sigma) const {
  return at_.at(q)[std::size_t{g} * model_.rank(q) + sigma];
}

Cochain Antisymmetrizer::zero(int degree) const {
  return Cochain{degree, std::vector<Rational>(chains_.rank(degree))};
}

std::vector<Rational> Antisymmetrizer::chamber_sum(const Cochain& h) const {
  const int d = h.degree;
  if (h.values.size() != chains_.rank(d)) throw DomainError("cochain has the wrong length");
  const std::size_t nk = model_.rank(d);
  std::vector<Rational> out(nk);
  if (d < 0 || d > chains_.top_dimension()) return out;
  for_each_index(
      nk,
      [&](std::size_t s) {
        Rational sum = 0;
        for (std::uint32_t g = 0; g < num_chambers(); ++g) {
          const Rational& v = h.values[at_[d][std::size_t{g} * nk + s]];
          if (v.is_zero()) continue;
          if (eps_[g] > 0) {
            sum += v;
          } else {
            sum -= v;
          }
        }
        out[s] = std::move(sum);
      },
      exec_);
  return out;
}

Cochain Antisymmetrizer::antisymmetrize(const Cochain& h) const {
  auto plus = chamber_sum(h);
  const Rational n = static_cast<long long>(num_chambers());
  std::vector<Rational> minus(plus.size());
  for (std::size_t s = 0; s < plus.size(); ++s) {
    plus[s] /= n;
    minus[s] = -plus[s];
  }
  Cochain out = zero(h.degree);
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    const auto [g, sigma] = model(h.degree, static_cast<std::uint32_t>(i));
    if (!plus[sigma].is_zero()) out.values[i] = eps_[g] > 0 ? plus[sigma] : minus[sigma];
  }
  return out;
}

Cochain Antisymmetrizer::coboundary(const Cochain& h) const {
  return Cochain{h.degree + 1, apply_matrix(coboundary_matrix(h.degree), h.values)};
}

PropACheck Antisymmetrizer::check_prop_a(const Cochain& h) const {
  PropACheck out;
  auto ah = antisymmetrize(h);
  out.commutes_with_coboundary = coboundary(ah) == antisymmetrize(coboundary(h));
  out.idempotent = antisymmetrize(ah) == ah;
  return out;
}

LiftCertificate Antisymmetrizer::lift_and_certify(int degree, const std::vector<BigInt>& f,
                                                  std::size_t dense_limit) const {
  const int d = degree;
  if (d < 0 || d > chains_.top_dimension()) throw DomainError("lift_and_certify: degree out of range");
  if (f.size() != relative_model_.rank(d)) throw DomainError("lift_and_certify: f has the wrong length");
  const auto f_rat = to_rational(f);
  if (!is_zero(apply_matrix(relative_model_.coboundary(d), f_rat))) {
    throw DomainError("lift_and_certify: f is not a cocycle of (K, K^S)");
  }

  // f on the model basis, zero on K^S.
  std::vector<Rational> f_model(model_.rank(d));
  for (std::uint32_t i = 0; i < f.size(); ++i) {
    f_model[*model_.index(d, relative_model_.cell(d, i))] = f_rat[i];
  }

  LiftCertificate cert;
  cert.degree = d;
  Cochain fp = zero(d);
  for (std::uint32_t i = 0; i < fp.values.size(); ++i) {
    const auto [g, sigma] = model(d, i);
    fp.values[i] = eps_[g] > 0 ? f_model[sigma] : Rational(-f_model[sigma]);
  }
  Cochain fy = zero(d);
  for (std::uint32_t s = 0; s < f_model.size(); ++s) {
    if (f_model[s] != 0) fy.values[simplex(d, 0, s)] = f_model[s];
  }
  auto scaled = antisymmetrize(fy);
  for (auto& v : scaled.values) v *= static_cast<long long>(num_chambers());
  cert.matches_antisymmetrization = scaled == fp;
  cert.delta_f_prime_zero = is_zero(coboundary(fp).values);

  auto g_prime = solve_rational(coboundary_matrix(d - 1), fp.values, dense_limit);
  if (!g_prime) {
    cert.nontrivial = true;
    SparseIntMatrix m = chains_.boundary(d);
    const auto extra = static_cast<std::uint32_t>(m.rows);
    m.rows += 1;
    for (std::uint32_t i = 0; i < fp.values.size(); ++i) {
      if (fp.values[i] != 0) m.add(extra, i, to_int64(fp.values[i]));
    }
    m.normalize();
    std::vector<Rational> rhs(m.rows);
    rhs[extra] = 1;
    auto z = solve_rational(m, rhs, dense_limit);
    if (!z) throw VerificationFailure("no cycle detects f' although d g' = f' has no solution");
    if (!is_zero(apply_matrix(chains_.boundary(d), *z))) throw VerificationFailure("obstruction is not a cycle");
    cert.pairing = 0;
    for (std::uint32_t i = 0; i < z->size(); ++i) {
      if ((*z)[i] == 0) continue;
      cert.obstruction.emplace_back(i, (*z)[i]);
      cert.pairing += (*z)[i] * fp.values[i];
    }
    if (cert.pairing == 0) throw VerificationFailure("obstruction does not pair with f'");
    return cert;
  }

  cert.nontrivial = false;
  Cochain gp{d - 1, std::move(*g_prime)};
  if (d >= 1) {
    auto sums = chamber_sum(antisymmetrize(gp));
    std::vector<Rational> g(relative_model_.rank(d - 1));
    for (std::uint32_t i = 0; i < g.size(); ++i) {
      g[i] = sums[*model_.index(d - 1, relative_model_.cell(d - 1, i))] / static_cast<long long>(num_chambers());
    }
    cert.pullback_recovers_f = apply_matrix(relative_model_.coboundary(d - 1), g) == f_rat;
  } else {
    cert.pullback_recovers_f = is_zero(f_rat);
  }
  cert.primitive = std::move(gp.values);
  return cert;
}

std::optional<std::vector<BigInt>> relative_generator(const Chamber& k, int degree, std::size_t dense_limit) {
  ChainComplex rel(k.k, nonempty_sets(k));
  if (degree < 0 || degree > rel.top_dimension()) return std::nullopt;
  const std::size_t cells = rel.rank(degree);
  if (cells == 0) return std::nullopt;
  if (cells * std::max<std::size_t>(rel.rank(degree + 1), 1) > dense_limit) {
    throw ResourceError("relative cocycle search exceeds the dense limit", cells * rel.rank(degree + 1));
  }
  for (const auto& v : nullspace_rational(rel.coboundary(degree))) {
    if (degree > 0 && solve_rational(rel.coboundary(degree - 1), v, dense_limit)) continue;
    return primitive_integer(v);
  }
  return std::nullopt;
}

}  // namespace hypcox
