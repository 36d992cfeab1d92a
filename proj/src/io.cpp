#include "hypcox/io.hpp"

#include <fstream>
#include <sstream>

#include "hypcox/errors.hpp"

namespace hypcox {

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInput("cannot read " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw MalformedInput(path.string() + ": " + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_json_file(const std::filesystem::path& path, const Json& j) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << dump(j);
}

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw MalformedInput(std::string("missing field '") + key + "'");
  return j.at(key);
}

void expect_type(const Json& j, const std::string& type) {
  const Json& t = field(j, "type");
  if (!t.is_string() || t.get<std::string>() != type) {
    throw MalformedInput("expected a complex of type '" + type + "'");
  }
}

std::vector<std::string> vertex_list(const Json& j) {
  const Json& v = field(j, "vertices");
  if (!v.is_array()) throw MalformedInput("'vertices' must be an array");
  std::vector<std::string> out;
  for (const auto& name : v) {
    if (name.is_string()) {
      out.push_back(name.get<std::string>());
    } else if (name.is_number_integer()) {
      out.push_back(std::to_string(name.get<long long>()));
    } else {
      throw MalformedInput("vertex names must be strings");
    }
  }
  return out;
}

// A face entry: a name, or an index into `vertices`.
Vertex resolve(const Json& entry, const VertexNames& names) {
  if (entry.is_string()) {
    auto v = names.find(entry.get<std::string>());
    if (!v) throw MalformedInput("unknown vertex '" + entry.get<std::string>() + "'");
    return *v;
  }
  if (entry.is_number_unsigned()) {
    auto i = entry.get<std::uint64_t>();
    if (i >= names.size()) throw MalformedInput("vertex id " + std::to_string(i) + " out of range");
    return static_cast<Vertex>(i);
  }
  throw MalformedInput("face entries must be vertex names or ids");
}

}  // namespace

SimplicialComplex simplicial_from_json(const Json& j) {
  expect_type(j, "simplicial");
  VertexNames names(vertex_list(j));
  const Json& faces = field(j, "maximal_faces");
  if (!faces.is_array()) throw MalformedInput("'maximal_faces' must be an array");
  std::vector<std::vector<Vertex>> out;
  for (const auto& face : faces) {
    if (!face.is_array()) throw MalformedInput("each face must be an array");
    std::vector<Vertex> f;
    for (const auto& e : face) f.push_back(resolve(e, names));
    out.push_back(std::move(f));
  }
  return SimplicialComplex(std::move(names), std::move(out));
}

Json to_json(const SimplicialComplex& x) {
  Json j;
  j["type"] = "simplicial";
  j["vertices"] = x.names().to_vector();
  Json faces = Json::array();
  for (std::size_t i = 0; i < x.num_facets(); ++i) faces.push_back(names_of(x, x.facet(i)));
  j["maximal_faces"] = std::move(faces);
  return j;
}

CubicalComplex cubical_from_json(const Json& j) {
  expect_type(j, "cubical");
  VertexNames names(vertex_list(j));
  const Json& cubes = field(j, "cubes");
  if (!cubes.is_array()) throw MalformedInput("'cubes' must be an array");
  std::vector<std::vector<Vertex>> out;
  for (const auto& c : cubes) {
    const Json& corners = field(c, "corners");
    if (!corners.is_array()) throw MalformedInput("'corners' must be an array");
    std::vector<Vertex> cs;
    for (const auto& e : corners) cs.push_back(resolve(e, names));
    if (c.contains("dim")) {
      const Json& d = c.at("dim");
      if (!d.is_number_unsigned() || d.get<std::uint64_t>() > 20 ||
          cs.size() != (std::size_t{1} << d.get<std::uint64_t>())) {
        throw MalformedInput("cube 'dim' does not match its corner count");
      }
    }
    out.push_back(std::move(cs));
  }
  return CubicalComplex(std::move(names), out);
}

Json to_json(const CubicalComplex& y) {
  Json j;
  j["type"] = "cubical";
  j["vertices"] = y.names().to_vector();
  Json cubes = Json::array();
  for (CubeId c : y.maximal_cubes()) {
    Json cube;
    cube["dim"] = y.dim(c);
    auto cs = y.corners(c);
    cube["corners"] = std::vector<Vertex>(cs.begin(), cs.end());
    cubes.push_back(std::move(cube));
  }
  j["cubes"] = std::move(cubes);
  return j;
}

AnyComplex complex_from_json(const Json& j) {
  const Json& t = field(j, "type");
  if (t == "simplicial") return simplicial_from_json(j);
  if (t == "cubical") return cubical_from_json(j);
  throw MalformedInput("unknown complex type " + t.dump());
}

std::pair<int, std::vector<IntMatrix>> quotient_images_from_json(const Json& j, const RacgSystem& w) {
  const Json& m = field(j, "modulus");
  if (!m.is_number_integer() || m.get<long long>() < 0 || m.get<long long>() > 32767) {
    throw MalformedInput("'modulus' must be an integer in [0, 32767] (0 means over Z)");
  }
  const Json& gens = field(j, "generators");
  if (!gens.is_object()) throw MalformedInput("'generators' must map generator names to matrices");
  std::vector<IntMatrix> images;
  for (Vertex s = 0; s < w.rank(); ++s) {
    const std::string name = w.generator_name(s);
    if (!gens.contains(name)) throw MalformedInput("no image for generator '" + name + "'");
    const Json& rows = gens.at(name);
    if (!rows.is_array() || rows.empty()) throw MalformedInput("image of '" + name + "' must be a square matrix");
    IntMatrix a(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!rows[i].is_array() || rows[i].size() != rows.size()) {
        throw MalformedInput("image of '" + name + "' must be a square matrix");
      }
      for (std::size_t k = 0; k < rows.size(); ++k) {
        if (!rows[i][k].is_number_integer()) throw MalformedInput("matrix entries must be integers");
        a(i, k) = rows[i][k].get<std::int64_t>();
      }
    }
    if (!images.empty() && images.front().n != a.n) throw MalformedInput("generator images differ in size");
    images.push_back(std::move(a));
  }
  if (gens.size() != w.rank()) throw MalformedInput("'generators' names a vertex that is not a generator");
  return {static_cast<int>(m.get<long long>()), std::move(images)};
}

Json names_of(const SimplicialComplex& x, std::span<const Vertex> vertices) {
  Json out = Json::array();
  for (Vertex v : vertices) out.push_back(x.name(v));
  return out;
}

Json to_json(const LargenessResult& r, const SimplicialComplex& x) {
  Json j;
  j["ok"] = r.ok;
  if (!r.ok) {
    j["witness_kind"] = r.kind == LargenessResult::Witness::full_cycle ? "full_cycle" : "non_simplex_clique";
    j["witness"] = names_of(x, r.witness);
  }
  return j;
}

Json to_json(const Sd2Result& r, const SimplicialComplex& x) {
  Json j;
  j["ok"] = r.ok;
  if (r.witness) {
    Json w;
    w["hub"] = x.name(r.witness->hub);
    w["rim"] = names_of(x, r.witness->rim);
    if (r.witness->pendant) w["pendant"] = x.name(*r.witness->pendant);
    j["witness"] = std::move(w);
  }
  return j;
}

std::string to_string(const BigInt& n) { return n.str(); }

std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

Json to_json(const HomologyResult& h) {
  Json j;
  j["coefficients"] = h.coeff.label();
  j["kind"] = h.cohomology ? "cohomology" : "homology";
  j["reduced"] = h.reduced;
  Json groups = Json::array();
  for (const auto& g : h.groups) {
    Json e;
    e["degree"] = g.degree;
    e["rank"] = g.rank;
    Json t = Json::array();
    for (const auto& f : g.torsion) t.push_back(to_string(f));
    e["torsion"] = std::move(t);
    groups.push_back(std::move(e));
  }
  j["groups"] = std::move(groups);
  if (auto top = h.top_nonzero()) {
    j["top_nonzero"] = *top;
  } else {
    j["top_nonzero"] = nullptr;
  }
  return j;
}

Json to_json(const DisplacementResult& d, const RacgSystem& w) {
  Json j;
  j["radius"] = d.radius;
  j["ok"] = d.ok;
  j["ball_size"] = d.ball_size;
  if (!d.ok) {
    j["witness_distance"] = *d.distance;
    Json word = Json::array();
    for (Vertex s : d.witness) word.push_back(w.generator_name(s));
    j["witness_word"] = std::move(word);
  }
  return j;
}

Json to_json(const LiftCertificate& c) {
  Json j;
  j["delta_f_prime_zero"] = c.delta_f_prime_zero;
  j["nontrivial"] = c.nontrivial;
  j["method"] = "linear-solve";
  j["degree"] = c.degree;
  j["matches_antisymmetrization"] = c.matches_antisymmetrization;
  if (c.nontrivial) {
    j["obstruction_support"] = c.obstruction.size();
    j["pairing"] = to_string(c.pairing);
  } else {
    if (c.pullback_recovers_f) j["pullback_recovers_f"] = *c.pullback_recovers_f;
  }
  return j;
}

Json to_json(const VcdResult& v, const RacgSystem& w) {
  Json j;
  j["value"] = v.value;
  Json rows = Json::array();
  for (const auto& r : v.rows) {
    Json e;
    Json t = Json::array();
    for (Vertex s : r.t) t.push_back(w.generator_name(s));
    e["T"] = std::move(t);
    e["pair_formula"] = r.pair_max ? Json(*r.pair_max) : Json(nullptr);
    e["span_formula"] = r.span_max ? Json(*r.span_max) : Json(nullptr);
    rows.push_back(std::move(e));
  }
  j["rows"] = std::move(rows);
  return j;
}

}  // namespace hypcox
