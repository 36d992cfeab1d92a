#pragma once

#include <memory>
#include <random>
#include <string>

#include "hypcox/antisym.hpp"
#include "hypcox/coxeter.hpp"
#include "hypcox/cubical.hpp"
#include "hypcox/quotient.hpp"

namespace oracle {

// Y = ker(phi)\Sigma for a fixture nerve and congruence modulus, with its
// triangulation and antisymmetrizer. Built in place; not movable, since the
// pieces point at each other.
struct DavisFixture {
  hypcox::RacgSystem w;
  hypcox::FiniteQuotient q;
  hypcox::QuotientDavis y;
  hypcox::ChamberedTriangulation tri;
  std::unique_ptr<hypcox::Antisymmetrizer> a;

  DavisFixture(const std::string& nerve_name, int modulus, hypcox::Exec exec = hypcox::Exec::parallel);
  DavisFixture(const DavisFixture&) = delete;
  DavisFixture& operator=(const DavisFixture&) = delete;
};

// Entries p/q with |p| <= 6, 1 <= q <= 5; about a third are zero.
hypcox::Cochain random_cochain(std::mt19937_64& rng, const hypcox::Antisymmetrizer& a, int degree);

// Indicator of basis simplex i.
hypcox::Cochain basis_cochain(const hypcox::Antisymmetrizer& a, int degree, std::uint32_t i);

}  // namespace oracle
