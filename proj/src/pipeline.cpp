#include "hypcox/pipeline.hpp"

#include <sys/resource.h>

#include <algorithm>
#include <chrono>
#include <map>

#include "hypcox/errors.hpp"

namespace hypcox {

namespace {

namespace fs = std::filesystem;

// Chamber complexes up to this many facets get the pair-formula cross-check.
constexpr std::size_t kChamberFacetCap = 200'000;
// Number of basis cochains per degree fed to the antisymmetrization check.
constexpr std::size_t kPropASamples = 16;

std::size_t factorial(std::size_t n) {
  std::size_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

std::size_t chamber_facets(const SimplicialComplex& x) {
  std::size_t total = 0;
  for (std::size_t f = 0; f < x.num_facets(); ++f) total += factorial(x.facet(f).size());
  return std::max<std::size_t>(total, 1);
}

std::size_t simplex_bound(const SimplicialComplex& x) {
  std::size_t total = 0;
  for (std::size_t f = 0; f < x.num_facets(); ++f) total += (std::size_t{1} << std::min<std::size_t>(x.facet(f).size(), 62)) - 1;
  return total;
}

std::size_t triangulation_facets(const CubicalComplex& y) {
  std::size_t total = 0;
  for (CubeId c : y.maximal_cubes()) total += (std::size_t{1} << y.dim(c)) * factorial(y.dim(c));
  return total;
}

Json summary(const SimplicialComplex& x) {
  Json j;
  j["vertices"] = x.num_vertices();
  j["facets"] = x.num_facets();
  j["dimension"] = x.dimension();
  return j;
}

Json optional_int(std::optional<int> v) { return v ? Json(*v) : Json(nullptr); }

[[noreturn]] void fail(Json& section, const std::string& what) {
  section["failure"] = what;
  throw VerificationFailure(what);
}

double peak_rss_mb() {
  rusage u{};
  getrusage(RUSAGE_SELF, &u);
  return static_cast<double>(u.ru_maxrss) / 1024.0;
}

class Clock {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Reduced cohomology of x over each coefficient; the rational one always.
struct CohomologyTable {
  std::map<std::string, HomologyResult> by_label;
  std::optional<int> top_q;
};

CohomologyTable cohomology_table(const SimplicialComplex& x, const PipelineConfig& cfg, Json& out) {
  CohomologyTable t;
  ChainComplex c(x);
  std::vector<Coefficients> coeffs = cfg.coefficients;
  if (std::none_of(coeffs.begin(), coeffs.end(), [](auto c) { return c.kind == Coefficients::Kind::rationals; })) {
    coeffs.push_back(Coefficients::q());
  }
  for (auto coeff : coeffs) {
    auto h = cohomology(c, coeff, true);
    out[coeff.label()] = to_json(h);
    if (coeff.kind == Coefficients::Kind::rationals) t.top_q = h.top_nonzero();
    t.by_label.emplace(coeff.label(), std::move(h));
  }
  return t;
}

std::vector<std::size_t> betti_over(const ChainComplex& c, Coefficients coeff) { return homology(c, coeff).betti(); }

}  // namespace

std::string status_name(Status s) {
  switch (s) {
    case Status::ok:
      return "ok";
    case Status::error:
      return "error";
    case Status::verification_failure:
      return "verification_failure";
    case Status::resource_cap:
      return "resource_cap";
  }
  return "error";
}

PipelineConfig parse_config(const Json& j, const fs::path& base_dir) {
  if (!j.is_object()) throw MalformedInput("config must be a JSON object");
  static const std::vector<std::string> known{"nerve",           "nerve_label",    "steps",        "radii",
                                              "k_large",         "sd2_links",      "moduli",       "element_cap",
                                              "ball_cap",        "certificate_cap", "homology_cap", "coefficients",
                                              "track",           "timings"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) throw MalformedInput("unknown config key '" + key + "'");
  }
  PipelineConfig c;
  if (!j.contains("nerve")) throw MalformedInput("config needs 'nerve'");
  const Json& nerve = j.at("nerve");
  if (nerve.is_string()) {
    fs::path p = base_dir / nerve.get<std::string>();
    c.base = simplicial_from_json(read_json_file(p));
    c.base_label = nerve.get<std::string>();
  } else {
    c.base = simplicial_from_json(nerve);
    c.base_label = j.value("nerve_label", std::string("inline"));
  }
  auto get_int = [&](const char* key, int fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number_integer()) throw MalformedInput(std::string("'") + key + "' must be an integer");
    return j.at(key).get<int>();
  };
  auto get_size = [&](const char* key, std::size_t fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number_unsigned()) throw MalformedInput(std::string("'") + key + "' must be a positive integer");
    return j.at(key).get<std::size_t>();
  };
  c.k_large = get_int("k_large", 5);
  if (c.k_large < 5) throw DomainError("k_large must be at least 5");
  if (j.contains("radii")) {
    if (!j.at("radii").is_array()) throw MalformedInput("'radii' must be an array");
    c.radii = j.at("radii").get<std::vector<int>>();
    if (j.contains("steps") && static_cast<std::size_t>(get_int("steps", 0)) != c.radii.size()) {
      throw MalformedInput("'steps' disagrees with the length of 'radii'");
    }
  } else {
    const int steps = get_int("steps", 1);
    if (steps < 1) throw DomainError("'steps' must be positive");
    c.radii.assign(steps, std::max(5, c.k_large));
  }
  if (c.radii.empty()) throw DomainError("at least one stage is needed");
  for (int r : c.radii) {
    if (r < 5) throw DomainError("displacement radii must be at least 5");
    if (r < c.k_large) throw DomainError("k_large mode needs every radius to be at least k_large");
  }
  c.sd2_links = j.value("sd2_links", false);
  if (j.contains("moduli")) {
    c.moduli = j.at("moduli").get<std::vector<int>>();
    if (c.moduli.empty()) throw DomainError("'moduli' must not be empty");
    for (int m : c.moduli) {
      if (m < 3 || m > 32767) throw DomainError("moduli must lie in [3, 32767]");
    }
  }
  c.element_cap = get_size("element_cap", c.element_cap);
  c.ball_cap = get_size("ball_cap", c.ball_cap);
  c.certificate_cap = get_size("certificate_cap", c.certificate_cap);
  c.homology_cap = get_size("homology_cap", c.homology_cap);
  if (j.contains("coefficients")) {
    c.coefficients.clear();
    for (const auto& s : j.at("coefficients")) c.coefficients.push_back(parse_coefficients(s.get<std::string>()));
    if (c.coefficients.empty()) throw DomainError("'coefficients' must not be empty");
  }
  if (j.contains("track")) {
    c.track = j.at("track").get<std::vector<std::string>>();
    lookup_vertices(c.base, *c.track);
  }
  c.timings = j.value("timings", false);
  return c;
}

Json to_json(const PipelineConfig& c) {
  Json j;
  j["nerve"] = to_json(c.base);
  j["nerve_label"] = c.base_label;
  j["radii"] = c.radii;
  j["k_large"] = c.k_large;
  j["sd2_links"] = c.sd2_links;
  j["moduli"] = c.moduli;
  j["element_cap"] = c.element_cap;
  j["ball_cap"] = c.ball_cap;
  j["certificate_cap"] = c.certificate_cap;
  j["homology_cap"] = c.homology_cap;
  Json coeffs = Json::array();
  for (auto co : c.coefficients) {
    switch (co.kind) {
      case Coefficients::Kind::integers:
        coeffs.push_back("z");
        break;
      case Coefficients::Kind::rationals:
        coeffs.push_back("q");
        break;
      case Coefficients::Kind::prime:
        coeffs.push_back(co.p == 2 ? std::string("f2") : "fp:" + std::to_string(co.p));
        break;
    }
  }
  j["coefficients"] = std::move(coeffs);
  if (c.track) j["track"] = *c.track;
  j["timings"] = c.timings;
  return j;
}

StageResult run_stage(const SimplicialComplex& x, int stage, int radius, const PipelineConfig& cfg,
                      const std::vector<std::string>& tracked, Json& report, Exec exec,
                      std::optional<int> forced_modulus) {
  Clock clock;
  report["stage"] = stage;
  report["radius"] = radius;
  // Sections are created up front: ordered_json keeps members in a vector,
  // so references taken below stay valid only if nothing else is inserted.
  report["step1"] = Json::object();
  report["step2"] = Json::object();
  report["step3"] = Json::object();

  // Step 1: the input nerve and its Coxeter group.
  Json& s1 = report["step1"];
  s1["nerve"] = summary(x);
  auto large = is_k_large(x, cfg.k_large);
  s1["k_large"] = {{"k", cfg.k_large}, {"result", to_json(large, x)}};
  if (!large.ok) fail(s1, "input nerve is not " + std::to_string(cfg.k_large) + "-large");
  if (cfg.sd2_links) {
    auto sd = check_sd2_star_links(x, 6);
    s1["sd2_links"] = to_json(sd.result, sd.failing_complex);
    if (!sd.ok) fail(s1, "input nerve does not have SD2* links");
  }
  RacgSystem w(x);
  s1["generators"] = w.rank();
  s1["commuting_pairs"] = w.commuting_pairs().size();
  s1["spherical_subsets"] = w.spherical().size();
  s1["hyperbolic"] = is_hyperbolic(w).ok;
  const bool finite = x.num_facets() == 1;
  s1["finite_group"] = finite;
  Json& in_coh = s1["cohomology"];
  auto in_table = cohomology_table(x, cfg, in_coh);
  const std::optional<int> n = in_table.top_q;
  s1["n"] = optional_int(n);
  if (w.spherical().size() <= 256) {
    s1["vcd_lower_bound"] = to_json(vcd_lower_bound(w), w);
  } else if (chamber_facets(x) <= kChamberFacetCap) {
    std::vector<std::size_t> only{0};
    s1["vcd_lower_bound"] = to_json(vcd_lower_bound(w, &only), w);
  } else {
    s1["vcd_lower_bound"] = {{"skipped", "chamber too large"}};
  }
  const bool degenerate = finite || !n;
  if (degenerate) {
    s1["degenerate"] = finite ? "no dimension gain: finite group" : "no dimension gain: rational cohomology vanishes";
  }

  // Step 2: a finite quotient with large displacement, Y and the class f'.
  Json& s2 = report["step2"];
  Json attempts = Json::array();
  std::vector<int> moduli = forced_modulus ? std::vector<int>{*forced_modulus} : cfg.moduli;
  std::optional<FiniteQuotient> accepted;
  std::size_t largest = 0;
  for (int m : moduli) {
    Json a;
    a["modulus"] = m;
    FiniteQuotient q;
    try {
      q = congruence_image(w, m, cfg.element_cap, exec);
    } catch (const ResourceError& e) {
      a["result"] = "element cap";
      a["reached"] = e.reached();
      attempts.push_back(std::move(a));
      s2["attempts"] = attempts;
      s2["largest_group_attempted"] = std::max(largest, e.reached());
      throw;
    }
    largest = std::max(largest, q.order());
    a["group_order"] = q.order();
    auto d = displacement_at_least(w, q, radius, cfg.ball_cap, exec);
    a["displacement"] = to_json(d, w);
    a["result"] = d.ok ? "accepted" : "displacement too small";
    attempts.push_back(std::move(a));
    if (d.ok) {
      accepted = std::move(q);
      break;
    }
  }
  s2["attempts"] = attempts;
  if (!accepted) {
    s2["largest_group_attempted"] = largest;
    throw ResourceError("modulus schedule exhausted without reaching displacement " + std::to_string(radius), largest);
  }
  FiniteQuotient q = std::move(*accepted);
  s2["modulus"] = q.modulus;
  s2["torsion_free"] = q.torsion_free_proven ? "proven" : "unknown";
  if (parity_is_well_defined(q)) {
    s2["orientable"] = "direct";
  } else {
    q = orientable_refinement(w, q, cfg.element_cap, exec).quotient;
    s2["orientable"] = "double-cover";
  }
  s2["group_order"] = q.order();
  QuotientDavis y = quotient_davis(w, q, exec);
  Json cubes = Json::array();
  for (int d = 0; d <= y.complex.dimension(); ++d) cubes.push_back(y.complex.count(d));
  s2["cubes_by_dimension"] = cubes;
  s2["euler_characteristic"] = y.complex.euler_characteristic();
  s2["links_match_nerve"] = y.links_match_nerve;
  if (!y.links_match_nerve) fail(s2, "a vertex link of Y differs from the nerve");

  std::optional<std::map<std::string, std::vector<std::size_t>>> y_betti;
  Json& cert = s2["certificate"];
  const std::size_t tri_facets = triangulation_facets(y.complex);
  if (degenerate) {
    cert = {{"skipped", "degenerate stage"}};
  } else if (tri_facets > cfg.certificate_cap) {
    cert = {{"skipped", "chambered triangulation has " + std::to_string(tri_facets) + " facets, cap " +
                            std::to_string(cfg.certificate_cap)}};
  } else {
    auto tri = chambered_triangulation(y.complex, cfg.certificate_cap);
    Antisymmetrizer anti(w, q, y, tri, orientation(q), exec);
    const int degree = *n + 1;
    std::optional<std::vector<BigInt>> f;
    try {
      f = relative_generator(anti.chamber_complex(), degree);
    } catch (const ResourceError& e) {
      cert = {{"skipped", std::string("relative cocycle search: ") + e.what()}};
    }
    if (cert.is_null()) {
      if (!f) fail(cert, "H^(n+1)(K, K^S) vanishes although the nerve has rational cohomology in degree n");
      // Antisymmetrization identities on a deterministic sample of basis cochains.
      std::size_t checked = 0;
      for (int d : {degree - 1, degree}) {
        if (d < 0) continue;
        const std::size_t cells = anti.chains().rank(d);
        const std::size_t step = std::max<std::size_t>(1, cells / kPropASamples);
        for (std::size_t i = 0; i < cells; i += step) {
          auto h = anti.zero(d);
          h.values[i] = 1;
          if (!anti.check_prop_a(h).ok()) fail(cert, "antisymmetrization identities fail on a basis cochain");
          ++checked;
        }
      }
      auto c = anti.lift_and_certify(degree, *f);
      cert = to_json(c);
      cert["prop_a_checked"] = checked;
      if (!c.delta_f_prime_zero) fail(cert, "f' is not a cocycle");
      if (!c.matches_antisymmetrization) fail(cert, "f' differs from |K| a_eps(f)");
      if (!c.nontrivial) fail(cert, "[f'] = 0 in H^(n+1)(Y) although [f] != 0");
    }
    y_betti.emplace();
    ChainComplex yc(tri.complex);
    for (auto coeff : cfg.coefficients) (*y_betti)[coeff.label()] = betti_over(yc, coeff);
  }

  // Step 3: X' = Th(Y), re-verified directly.
  Json& s3 = report["step3"];
  auto th = thicken(y.complex);
  SimplicialComplex out = std::move(th.complex);
  s3["nerve"] = summary(out);
  auto out_large = is_k_large(out, cfg.k_large);
  s3["k_large"] = {{"k", cfg.k_large}, {"result", to_json(out_large, out)}};
  if (!out_large.ok) fail(s3, "X' is not " + std::to_string(cfg.k_large) + "-large");
  if (cfg.sd2_links) {
    auto sd = check_sd2_star_links(out, 6);
    s3["sd2_links"] = to_json(sd.result, sd.failing_complex);
    if (!sd.ok) fail(s3, "X' does not have SD2* links");
  }
  const std::size_t cells = simplex_bound(out);
  if (cells > cfg.homology_cap) {
    s3["cohomology"] = {{"skipped", "up to " + std::to_string(cells) + " simplices, cap " +
                                        std::to_string(cfg.homology_cap)}};
    s3["next_vcd_lower_bound"] = {{"skipped", "cohomology not computed"}};
  } else {
    Json& out_coh = s3["cohomology"];
    auto out_table = cohomology_table(out, cfg, out_coh);
    if (!degenerate) {
      if (out_table.top_q != *n + 1) {
        fail(s3, "top rational cohomology of X' is in degree " +
                     (out_table.top_q ? std::to_string(*out_table.top_q) : std::string("none")) + ", expected " +
                     std::to_string(*n + 1));
      }
    }
    Json vcd;
    if (out_table.top_q) {
      vcd["value"] = *out_table.top_q + 1;
      vcd["evidence"] = "span formula at T = {}";
      if (chamber_facets(out) <= kChamberFacetCap) {
        RacgSystem next(out);
        std::vector<std::size_t> only{0};
        auto v = vcd_lower_bound(next, &only);
        vcd["pair_formula"] = v.value;
      }
    } else {
      vcd["value"] = 0;
    }
    s3["next_vcd_lower_bound"] = vcd;
    if (y_betti) {
      ChainComplex xc(out);
      Json cmp;
      for (auto coeff : cfg.coefficients) {
        auto b = betti_over(xc, coeff);
        cmp[coeff.label()] = b;
        if (b != (*y_betti)[coeff.label()]) fail(s3, "Betti numbers of X' and Y differ over " + coeff.label());
      }
      s3["betti_matches_y"] = cmp;
    } else {
      s3["betti_matches_y"] = {{"skipped", "Y not triangulated"}};
    }
  }

  StageResult result;
  if (!tracked.empty()) {
    std::vector<std::string> images;
    for (const auto& name : tracked) {
      Vertex s = *x.find(name);
      images.push_back(y.complex.names()[q.times(0, s)]);
    }
    auto z = induced_subcomplex(x, tracked);
    std::vector<std::vector<std::string>> faces;
    for (std::size_t i = 0; i < z.num_facets(); ++i) {
      std::vector<std::string> f;
      for (Vertex v : z.facet(i)) f.push_back(images[std::find(tracked.begin(), tracked.end(), z.name(v)) - tracked.begin()]);
      faces.push_back(std::move(f));
    }
    bool full = same_complex(build_complex(faces, images), induced_subcomplex(out, images));
    s3["subcomplex"] = {{"vertices", images}, {"full", full}};
    if (!full) fail(s3, "the image of Z is not a full subcomplex of X'");
    result.tracked = std::move(images);
  }

  const Json step2 = report["step2"];
  const Json& c = step2["certificate"];
  report["certificates"] = {
      {"torsion_free", step2["torsion_free"]},
      {"orientable", step2["orientable"]},
      {"delta_f_prime_zero", c.contains("delta_f_prime_zero") ? c["delta_f_prime_zero"] : Json("skipped")},
      {"nontrivial", c.contains("nontrivial") ? c["nontrivial"] : Json("skipped")},
  };
  report["status"] = "ok";
  if (cfg.timings) {
    report["seconds"] = clock.seconds();
    report["peak_rss_mb"] = peak_rss_mb();
  }
  result.output = std::move(out);
  result.y = std::move(y.complex);
  return result;
}

namespace {

fs::path stage_dir(const fs::path& root, int stage) { return root / ("stage_" + std::to_string(stage)); }

Status run_guarded(Json& report, const std::function<void()>& body) {
  try {
    body();
    return Status::ok;
  } catch (const VerificationFailure& e) {
    report["status"] = status_name(Status::verification_failure);
    report["error"] = e.what();
    return Status::verification_failure;
  } catch (const ResourceError& e) {
    report["status"] = status_name(Status::resource_cap);
    report["error"] = e.what();
    report["reached"] = e.reached();
    return Status::resource_cap;
  } catch (const std::exception& e) {
    report["status"] = status_name(Status::error);
    report["error"] = e.what();
    return Status::error;
  }
}

}  // namespace

PipelineOutcome run_pipeline(const PipelineConfig& cfg, const std::optional<fs::path>& artifacts, bool resume,
                             Exec exec) {
  PipelineOutcome outcome;
  Json& rep = outcome.report;
  rep["config"] = to_json(cfg);
  rep["stages"] = Json::array();
  const Json cfg_json = to_json(cfg);
  bool can_resume = false;
  if (artifacts) {
    const fs::path saved = *artifacts / "config.json";
    can_resume = resume && fs::exists(saved) && read_json_file(saved) == cfg_json;
    write_json_file(saved, cfg_json);
  }
  SimplicialComplex x = cfg.base;
  std::vector<std::string> tracked = cfg.track.value_or(std::vector<std::string>{});
  if (cfg.track) rep["track"] = {{"vertices", tracked}, {"full", true}};

  for (std::size_t i = 0; i < cfg.radii.size(); ++i) {
    const int stage = static_cast<int>(i) + 1;
    Json srep;
    if (can_resume && artifacts) {
      const fs::path dir = stage_dir(*artifacts, stage);
      if (fs::exists(dir / "report.json") && fs::exists(dir / "output_nerve.json")) {
        srep = read_json_file(dir / "report.json");
        if (srep.value("status", std::string()) == "ok") {
          x = simplicial_from_json(read_json_file(dir / "output_nerve.json"));
          if (srep.contains("step3") && srep["step3"].contains("subcomplex")) {
            tracked = srep["step3"]["subcomplex"]["vertices"].get<std::vector<std::string>>();
          }
          rep["stages"].push_back(std::move(srep));
          continue;
        }
        srep = Json();
      }
    }
    if (artifacts) write_json_file(stage_dir(*artifacts, stage) / "input_nerve.json", to_json(x));
    std::optional<StageResult> result;
    Status st = run_guarded(srep, [&] { result = run_stage(x, stage, cfg.radii[i], cfg, tracked, srep, exec); });
    if (artifacts) {
      const fs::path dir = stage_dir(*artifacts, stage);
      if (result) {
        write_json_file(dir / "y.json", to_json(*result->y));
        write_json_file(dir / "output_nerve.json", to_json(result->output));
      }
      write_json_file(dir / "report.json", srep);
    }
    rep["stages"].push_back(std::move(srep));
    if (st != Status::ok) {
      outcome.status = st;
      break;
    }
    x = std::move(result->output);
    tracked = std::move(result->tracked);
  }
  rep["status"] = status_name(outcome.status);
  if (outcome.status == Status::ok) {
    rep["final_nerve"] = summary(x);
    if (artifacts) write_json_file(*artifacts / "final_nerve.json", to_json(x));
    outcome.final_nerve = std::move(x);
  }
  if (artifacts) write_json_file(*artifacts / "report.json", rep);
  return outcome;
}

namespace {

// The report minus fields that legitimately differ between runs.
Json stable_part(Json j) {
  if (j.is_object()) {
    j.erase("seconds");
    j.erase("peak_rss_mb");
    for (auto& [k, v] : j.items()) v = stable_part(v);
  } else if (j.is_array()) {
    for (auto& v : j) v = stable_part(v);
  }
  return j;
}

}  // namespace

PipelineOutcome replay(const fs::path& dir, Exec exec) {
  PipelineOutcome outcome;
  Json& rep = outcome.report;
  rep["replay_of"] = dir.filename().string();
  rep["stages"] = Json::array();
  Status st = run_guarded(rep, [&] {
    PipelineConfig cfg = parse_config(read_json_file(dir / "config.json"), dir);
    std::optional<SimplicialComplex> previous;
    std::vector<std::string> tracked = cfg.track.value_or(std::vector<std::string>{});
    for (int stage = 1; fs::exists(stage_dir(dir, stage) / "report.json"); ++stage) {
      const fs::path sd = stage_dir(dir, stage);
      Json saved = read_json_file(sd / "report.json");
      Json check;
      check["stage"] = stage;
      auto input = simplicial_from_json(read_json_file(sd / "input_nerve.json"));
      if (stage == 1) {
        check["input_matches_config"] = same_complex(input, cfg.base);
      } else {
        check["input_matches_previous"] = previous && same_complex(input, *previous);
      }
      if (saved.value("status", std::string()) != "ok") {
        check["saved_status"] = saved.value("status", std::string("missing"));
        rep["stages"].push_back(std::move(check));
        break;
      }
      auto saved_y = cubical_from_json(read_json_file(sd / "y.json"));
      auto saved_out = simplicial_from_json(read_json_file(sd / "output_nerve.json"));
      check["y_locally_k_large"] = is_locally_k_large(saved_y, cfg.k_large, exec).ok;
      check["output_is_thickening"] = same_complex(thicken(saved_y).complex, saved_out);
      check["output_k_large"] = is_k_large(saved_out, cfg.k_large).ok;

      Json fresh;
      auto result = run_stage(input, stage, saved.at("radius").get<int>(), cfg, tracked, fresh, exec,
                              saved.at("step2").at("modulus").get<int>());
      // The schedule search is not replayed, only the accepted modulus.
      Json saved_cmp = stable_part(saved);
      Json fresh_cmp = stable_part(fresh);
      saved_cmp["step2"].erase("attempts");
      fresh_cmp["step2"].erase("attempts");
      check["y_matches"] = to_json(*result.y) == to_json(saved_y);
      check["output_matches"] = same_complex(result.output, saved_out);
      check["report_matches"] = saved_cmp == fresh_cmp;
      check["certificates"] = fresh["certificates"];
      bool ok = true;
      for (const auto& [k, v] : check.items()) {
        if (v.is_boolean() && !v.get<bool>()) ok = false;
      }
      check["ok"] = ok;
      rep["stages"].push_back(check);
      if (!ok) throw VerificationFailure("replay of stage " + std::to_string(stage) + " disagrees with the saved run");
      previous = std::move(saved_out);
      tracked = std::move(result.tracked);
    }
  });
  outcome.status = st;
  rep["status"] = status_name(st);
  return outcome;
}

}  // namespace hypcox
