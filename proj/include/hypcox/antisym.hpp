#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "hypcox/coxeter.hpp"
#include "hypcox/cubical.hpp"
#include "hypcox/homology.hpp"
#include "hypcox/parallel.hpp"
#include "hypcox/quotient.hpp"
#include "hypcox/sparse.hpp"

namespace hypcox {

// Sign per chamber of Y. Chambers are indexed by the elements of G.
struct Orientation {
  std::vector<std::int8_t> sign;

  int operator[](std::uint32_t g) const { return sign[g]; }
};

// (-1)^(word length). Throws DomainError when G has a kernel element of
// odd length; orientable_refinement fixes that.
Orientation orientation(const FiniteQuotient& q);
// eps(g s) = -eps(g) for every g and generator s.
bool is_orientation(const FiniteQuotient& q, const Orientation& eps);

// Rational cochain on the chambered triangulation, indexed like the basis
// of the absolute chain complex in `degree`.
struct Cochain {
  int degree = 0;
  std::vector<Rational> values;

  bool operator==(const Cochain&) const = default;
};

struct PropACheck {
  bool commutes_with_coboundary = false;
  bool idempotent = false;

  bool ok() const { return commutes_with_coboundary && idempotent; }
};

struct LiftCertificate {
  int degree = 0;                       // n + 1
  bool delta_f_prime_zero = false;
  bool matches_antisymmetrization = false;  // f' = |K| a_eps(f on p(K))
  bool nontrivial = false;
  // Nontrivial: a cycle z with d z = 0 and f'(z) != 0.
  std::vector<std::pair<std::uint32_t, Rational>> obstruction;
  Rational pairing;
  // Trivial: a primitive g' with d g' = f', and whether the chamber average
  // of a_eps(g') pulls back to a relative cochain g with d g = f.
  std::optional<std::vector<Rational>> primitive;
  std::optional<bool> pullback_recovers_f;
};

// Cochain machinery on the chambered triangulation of Y = ker(phi)\Sigma.
// Every simplex is tagged with its chamber and its model chain in K; the
// chamber is the one the triangulation assigns canonically.
class Antisymmetrizer {
 public:
  Antisymmetrizer(const RacgSystem& w, const FiniteQuotient& q, const QuotientDavis& y,
                  const ChamberedTriangulation& tri, Orientation eps, Exec exec = Exec::parallel);

  const ChainComplex& chains() const noexcept { return chains_; }
  const ChainComplex& model_chains() const noexcept { return model_; }
  const Chamber& chamber_complex() const noexcept { return k_; }
  const Orientation& epsilon() const noexcept { return eps_; }
  std::size_t num_chambers() const noexcept { return eps_.sign.size(); }

  // Chamber and model simplex (index in model_chains) of simplex i of degree q.
  std::pair<std::uint32_t, std::uint32_t> model(int q, std::uint32_t i) const;
  // Index of p(g sigma) in chains().
  std::uint32_t simplex(int q, std::uint32_t g, std::uint32_t sigma) const;

  // a(eps, h, sigma) for every model simplex sigma of the degree of h.
  std::vector<Rational> chamber_sum(const Cochain& h) const;
  Cochain antisymmetrize(const Cochain& h) const;
  Cochain coboundary(const Cochain& h) const;
  Cochain zero(int degree) const;
  PropACheck check_prop_a(const Cochain& h) const;

  // f is a relative cocycle of (K, K^S) in `degree`, given on the basis of
  // ChainComplex(K, K^S). Throws DomainError if it is not a cocycle.
  LiftCertificate lift_and_certify(int degree, const std::vector<BigInt>& f,
                                   std::size_t dense_limit = 4'000'000) const;

 private:
  const RacgSystem* w_;
  const FiniteQuotient* q_;
  const QuotientDavis* y_;
  Chamber k_;
  ChainComplex chains_;
  ChainComplex model_;
  ChainComplex relative_model_;
  Orientation eps_;
  // Per degree: chamber and model simplex of every simplex of Y, and the
  // simplex of Y for (g, sigma) at g * |K_q| + sigma.
  std::vector<std::vector<std::uint32_t>> chamber_of_, model_of_, at_;
  std::vector<SparseIntMatrix> coboundary_;  // degree d at d + 1, d = -1..top
  Exec exec_;

  const SparseIntMatrix& coboundary_matrix(int d) const { return coboundary_.at(d + 1); }
};

// A relative cocycle of (K, K^S) in `degree` whose class is nonzero over Q,
// as a primitive integer vector on the basis of ChainComplex(K, K^S), or
// nullopt when that group vanishes rationally. Throws ResourceError when the
// dense search would exceed `dense_limit` entries.
std::optional<std::vector<BigInt>> relative_generator(const Chamber& k, int degree,
                                                      std::size_t dense_limit = 4'000'000);

// Sparse integer matrix times rational vector.
std::vector<Rational> apply_matrix(const SparseIntMatrix& m, const std::vector<Rational>& x);

}  // namespace hypcox
