#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hypcox/coxeter.hpp"
#include "hypcox/cubical.hpp"
#include "hypcox/parallel.hpp"

namespace hypcox {

// A finite group G = phi(W) given by generator images, enumerated in full.
//
// Elements are square matrices over Z/modulus (modulus 0: over Z), with an
// optional trailing +-1 sign entry added by orientable_refinement. Element 0
// is the identity; elements are numbered by word length, then
// lexicographically by entries.
struct FiniteQuotient {
  enum class Kind { congruence, user };

  Kind kind = Kind::congruence;
  int modulus = 0;
  std::size_t dim = 0;
  bool sign_block = false;
  std::size_t num_gens = 0;

  std::vector<std::int16_t> entries;  // width() per element
  std::vector<std::uint32_t> rmul;    // rmul[g * num_gens + s] = g * phi(s)
  std::vector<std::uint32_t> layer;   // word length in G
  std::vector<std::uint32_t> gen_index;
  bool torsion_free_proven = false;

  std::size_t width() const noexcept { return dim * dim + (sign_block ? 1 : 0); }
  std::size_t order() const noexcept { return layer.size(); }
  std::span<const std::int16_t> element(std::uint32_t g) const {
    return std::span<const std::int16_t>(entries).subspan(g * width(), width());
  }
  std::uint32_t times(std::uint32_t g, Vertex s) const { return rmul[g * num_gens + s]; }
};

// Closure of rho(s) mod m. Throws DomainError for m < 3, ResourceError
// when |G| would exceed `cap`.
FiniteQuotient congruence_image(const RacgSystem& w, int modulus, std::size_t cap, Exec exec = Exec::parallel);

// Closure of explicit generator images (one square matrix per generator,
// entries reduced mod `modulus`, or exact when it is 0). Checks phi(s)^2 = 1
// and the commuting relations; torsion-freeness is left unproven.
FiniteQuotient user_quotient(const RacgSystem& w, int modulus, const std::vector<IntMatrix>& images,
                             std::size_t cap, Exec exec = Exec::parallel);

// Ball around the identity in the 1-skeleton of Th(Sigma): u ~ u*x for x a
// nontrivial element of a spherical subgroup. Elements of W are compared as
// exact Tits matrices.
struct Ball {
  std::vector<std::uint32_t> distance;
  std::vector<std::uint32_t> parent;  // parent[0] = 0
  std::vector<std::uint32_t> step;    // spherical index of the last step
  std::vector<std::uint32_t> image;   // element of G, when a quotient was given
  std::vector<std::size_t> sphere_sizes;

  std::size_t size() const noexcept { return distance.size(); }
};
Ball thickening_ball(const RacgSystem& w, int radius, std::size_t cap, const FiniteQuotient* q = nullptr,
                     Exec exec = Exec::parallel);

// A shortest word in the generators for ball element i.
std::vector<Vertex> ball_word(const RacgSystem& w, const Ball& ball, std::uint32_t i);

struct DisplacementResult {
  bool ok = true;
  int radius = 0;                  // the r that was tested
  std::optional<int> distance;     // of the witness
  std::vector<Vertex> witness;     // a word for a nontrivial kernel element
  std::size_t ball_size = 0;
};
// No nontrivial element of ker(phi) within Th-distance r - 1 of the identity.
DisplacementResult displacement_at_least(const RacgSystem& w, const FiniteQuotient& q, int r,
                                         std::size_t cap = 20'000'000, Exec exec = Exec::parallel);

// Smallest Th-distance of a nontrivial kernel element, searching up to
// `max_radius`.
std::optional<int> minimal_displacement(const RacgSystem& w, const FiniteQuotient& q, int max_radius,
                                        std::size_t cap = 20'000'000, Exec exec = Exec::parallel);

struct Refinement {
  FiniteQuotient quotient;
  bool double_cover = false;  // false: q was already orientable
};
// Word-length parity is well defined on G iff every generator edge of the
// Cayley graph joins layers of different parity.
bool parity_is_well_defined(const FiniteQuotient& q);
Refinement orientable_refinement(const RacgSystem& w, const FiniteQuotient& q, std::size_t cap,
                                 Exec exec = Exec::parallel);

// Y = ker(phi)\Sigma: vertex set G, one cube per coset g W_T.
struct QuotientDavis {
  CubicalComplex complex;
  std::vector<std::uint32_t> cube_type;  // spherical index of each cube
  std::vector<CubeId> cube_at;           // cube_at[g * |S| + T]: the cube g W_T
  std::size_t num_spherical = 0;
  bool links_match_nerve = false;
  std::optional<Vertex> link_mismatch;  // first vertex whose link differs

  CubeId cube_containing(std::uint32_t g, std::size_t t) const { return cube_at[g * num_spherical + t]; }
};
// Throws DomainError when some spherical subgroup does not embed in G
// (displacement below 2).
QuotientDavis quotient_davis(const RacgSystem& w, const FiniteQuotient& q, Exec exec = Exec::parallel);

}  // namespace hypcox
