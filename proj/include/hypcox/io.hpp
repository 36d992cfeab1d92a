#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

#include "hypcox/antisym.hpp"
#include "hypcox/coxeter.hpp"
#include "hypcox/cubical.hpp"
#include "hypcox/homology.hpp"
#include "hypcox/quotient.hpp"
#include "hypcox/simplicial.hpp"

namespace hypcox {

using Json = nlohmann::ordered_json;

// Whole-file JSON. Reading throws MalformedInput on I/O or parse errors.
Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);
// Two-space indentation and a trailing newline; the form used for every
// report so that reruns can be compared byte for byte.
std::string dump(const Json& j);

// {"type":"simplicial","vertices":[names],"maximal_faces":[[names or ids]]}
SimplicialComplex simplicial_from_json(const Json& j);
Json to_json(const SimplicialComplex& x);

// {"type":"cubical","vertices":[names],"cubes":[{"dim":d,"corners":[ids]}]}
// Corners are vertex ids in mask order; names are accepted on input. Only
// maximal cubes are written.
CubicalComplex cubical_from_json(const Json& j);
Json to_json(const CubicalComplex& y);

using AnyComplex = std::variant<SimplicialComplex, CubicalComplex>;
AnyComplex complex_from_json(const Json& j);

// Generator images for user_quotient:
// {"modulus": q, "generators": {"<generator name>": [[row], ...]}}.
std::pair<int, std::vector<IntMatrix>> quotient_images_from_json(const Json& j, const RacgSystem& w);

Json names_of(const SimplicialComplex& x, std::span<const Vertex> vertices);
Json to_json(const LargenessResult& r, const SimplicialComplex& x);
Json to_json(const Sd2Result& r, const SimplicialComplex& x);
Json to_json(const HomologyResult& h);
Json to_json(const DisplacementResult& d, const RacgSystem& w);
Json to_json(const LiftCertificate& c);
Json to_json(const VcdResult& v, const RacgSystem& w);
std::string to_string(const BigInt& n);
std::string to_string(const Rational& q);

}  // namespace hypcox
