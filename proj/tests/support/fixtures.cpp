#include "fixtures.hpp"

#include "oracles.hpp"

namespace oracle {

DavisFixture::DavisFixture(const std::string& nerve_name, int modulus, hypcox::Exec exec)
    : w(nerve(nerve_name)),
      q(hypcox::congruence_image(w, modulus, 10'000'000, exec)),
      y(hypcox::quotient_davis(w, q, exec)),
      tri(hypcox::chambered_triangulation(y.complex)),
      a(std::make_unique<hypcox::Antisymmetrizer>(w, q, y, tri, hypcox::orientation(q), exec)) {}

hypcox::Cochain random_cochain(std::mt19937_64& rng, const hypcox::Antisymmetrizer& a, int degree) {
  auto h = a.zero(degree);
  std::uniform_int_distribution<int> num(-6, 6), den(1, 5);
  for (auto& v : h.values) {
    if (rng() % 3 != 0) v = hypcox::Rational(num(rng), den(rng));
  }
  return h;
}

hypcox::Cochain basis_cochain(const hypcox::Antisymmetrizer& a, int degree, std::uint32_t i) {
  auto h = a.zero(degree);
  h.values[i] = 1;
  return h;
}

}  // namespace oracle
