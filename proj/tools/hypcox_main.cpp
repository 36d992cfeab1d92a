// hypcox: command-line front end for the construction of hyperbolic
// right-angled Coxeter groups of growing virtual cohomological dimension.

#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "hypcox/errors.hpp"
#include "hypcox/pipeline.hpp"

using namespace hypcox;

namespace {

int emit(const Json& j, const std::string& out_path, int code) {
  if (out_path.empty()) {
    std::cout << dump(j);
  } else {
    write_json_file(out_path, j);
  }
  return code;
}

SimplicialComplex read_simplicial(const std::string& path) { return simplicial_from_json(read_json_file(path)); }

std::vector<std::string> split_names(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int cmd_check(const std::string& file, int k, bool sd2, bool links, bool local, const std::string& out) {
  auto any = complex_from_json(read_json_file(file));
  Json j;
  bool ok = true;
  if (auto* y = std::get_if<CubicalComplex>(&any)) {
    auto r = is_locally_k_large(*y, k);
    j["type"] = "cubical";
    j["k"] = k;
    j["locally_k_large"] = r.ok;
    if (!r.ok) {
      j["vertex"] = y->names()[r.vertex];
      j["link_witness"] = to_json(r.link_result, r.failing_link);
    }
    return emit(j, out, r.ok ? 0 : 2);
  }
  const auto& x = std::get<SimplicialComplex>(any);
  j["type"] = "simplicial";
  j["vertices"] = x.num_vertices();
  j["facets"] = x.num_facets();
  auto flag = is_flag(x);
  j["flag"] = flag.flag;
  if (!flag.flag) j["flag_witness"] = names_of(x, flag.witness);
  j["k"] = k;
  auto large = is_k_large(x, k);
  j["k_large"] = to_json(large, x);
  ok = large.ok;
  if (local) {
    auto r = is_locally_k_large(x, k);
    j["locally_k_large"] = r.ok;
    if (!r.ok) {
      j["local_witness"] = {{"simplex", names_of(x, r.simplex)}, {"link", to_json(r.link_result, r.failing_link)}};
    }
    ok = ok && r.ok;
  }
  if (sd2) {
    if (!flag.flag) {
      j["sd2"] = {{"ok", false}, {"reason", "not flag"}};
      ok = false;
    } else if (links) {
      auto r = check_sd2_star_links(x, std::max(k, 6));
      j["sd2_links"] = to_json(r.result, r.failing_complex);
      if (!r.ok && !r.simplex.empty()) j["sd2_links"]["simplex"] = names_of(x, r.simplex);
      ok = ok && r.ok;
    } else {
      auto r = check_sd2_star(x, std::max(k, 6));
      j["sd2"] = to_json(r, x);
      ok = ok && r.ok;
    }
  }
  return emit(j, out, ok ? 0 : 2);
}

int cmd_coxeter(const std::string& file, const std::string& out) {
  RacgSystem w(read_simplicial(file));
  Json j;
  j["generators"] = w.nerve().names().to_vector();
  Json pairs = Json::array();
  for (auto [s, t] : w.commuting_pairs()) pairs.push_back({w.generator_name(s), w.generator_name(t)});
  j["commuting_pairs"] = std::move(pairs);
  j["hyperbolic"] = to_json(is_hyperbolic(w), w.nerve());
  j["spherical_subsets"] = w.spherical().size();
  auto k = chamber(w);
  Json ch;
  ch["vertices"] = k.k.num_vertices();
  ch["facets"] = k.k.num_facets();
  ch["dimension"] = k.k.dimension();
  Json ks;
  for (Vertex s = 0; s < w.rank(); ++s) ks[w.generator_name(s)] = k.k_s(s).size();
  ch["K_s_vertices"] = std::move(ks);
  j["chamber"] = std::move(ch);
  j["vcd_lower_bound"] = to_json(vcd_lower_bound(w), w);
  return emit(j, out, 0);
}

int cmd_quotient(const std::string& file, int modulus, const std::string& qfile, int r, std::size_t cap,
                 std::size_t ball_cap, Exec exec, const std::string& out) {
  RacgSystem w(read_simplicial(file));
  FiniteQuotient q;
  if (!qfile.empty()) {
    auto [m, images] = quotient_images_from_json(read_json_file(qfile), w);
    q = user_quotient(w, m, images, cap, exec);
  } else {
    q = congruence_image(w, modulus, cap, exec);
  }
  Json cert;
  cert["torsion_free"] = q.torsion_free_proven ? "proven" : "unknown";
  cert["group_order"] = q.order();
  int code = 0;
  if (r > 0) {
    auto d = displacement_at_least(w, q, r, ball_cap, exec);
    cert["displacement"] = to_json(d, w);
    if (!d.ok) code = 2;
  }
  if (parity_is_well_defined(q)) {
    cert["orientable"] = "direct";
  } else {
    q = orientable_refinement(w, q, cap, exec).quotient;
    cert["orientable"] = "double-cover";
    cert["group_order"] = q.order();
  }
  auto y = quotient_davis(w, q, exec);
  cert["links_match_nerve"] = y.links_match_nerve;
  if (!y.links_match_nerve) code = 2;
  Json j;
  j["complex"] = to_json(y.complex);
  j["certificate"] = std::move(cert);
  return emit(j, out, code);
}

int cmd_thicken(const std::string& file, const std::string& out) {
  auto y = cubical_from_json(read_json_file(file));
  return emit(to_json(thicken(y).complex), out, 0);
}

int cmd_homology(const std::string& file, const std::string& coeff_text, const std::string& degree, bool reduced,
                 bool cohom, const std::string& relative, const std::string& out) {
  auto x = read_simplicial(file);
  auto coeff = parse_coefficients(coeff_text);
  std::optional<ChainComplex> c;
  if (relative.empty()) {
    c.emplace(x);
  } else if (relative.rfind("vertices:", 0) == 0) {
    auto verts = lookup_vertices(x, split_names(relative.substr(9)));
    c.emplace(x, std::span<const Vertex>(verts));
  } else {
    c.emplace(x, simplicial_from_json(read_json_file(relative)));
  }
  auto h = cohom ? cohomology(*c, coeff, reduced) : homology(*c, coeff, reduced);
  Json j = to_json(h);
  j["relative"] = !relative.empty();
  if (degree != "all") {
    int d = 0;
    try {
      d = std::stoi(degree);
    } catch (const std::exception&) {
      throw MalformedInput("--degree takes an integer or 'all'");
    }
    Json keep = Json::array();
    for (const auto& g : j["groups"]) {
      if (g["degree"] == d) keep.push_back(g);
    }
    if (keep.empty()) keep.push_back({{"degree", d}, {"rank", 0}, {"torsion", Json::array()}});
    j["groups"] = std::move(keep);
  }
  return emit(j, out, 0);
}

int cmd_pipeline(const std::string& config, const std::string& replay_dir, const std::string& artifacts, bool resume,
                 bool timings, Exec exec, const std::string& out) {
  PipelineOutcome o;
  if (!replay_dir.empty()) {
    o = replay(replay_dir, exec);
  } else {
    if (config.empty()) throw MalformedInput("pipeline needs --config or --replay");
    std::filesystem::path p(config);
    auto cfg = parse_config(read_json_file(p), p.parent_path());
    if (timings) cfg.timings = true;
    std::optional<std::filesystem::path> dir;
    if (!artifacts.empty()) dir = artifacts;
    o = run_pipeline(cfg, dir, resume, exec);
  }
  return emit(o.report, out, static_cast<int>(o.status));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hyperbolic right-angled Coxeter groups from 5-large nerves"};
  app.require_subcommand(1);
  app.fallthrough();
  bool serial = false;
  std::string out;
  app.add_flag("--serial", serial, "Run every kernel on one thread");
  app.add_option("-o,--output", out, "Write the JSON result to a file instead of stdout");

  std::string file;
  int k = 5;
  bool sd2 = false, links = false, local = false;
  auto* check = app.add_subcommand("check", "Flagness, k-largeness and SD2* checks");
  check->add_option("complex", file, "Complex JSON (simplicial or cubical)")->required();
  check->add_option("--k", k, "Largeness parameter")->check(CLI::Range(4, 1000));
  check->add_flag("--sd2", sd2, "Check SD2*(max(k, 6))");
  check->add_flag("--links", links, "With --sd2: check every link as well");
  check->add_flag("--local", local, "Check that every link is k-large");

  std::string nerve;
  auto* cox = app.add_subcommand("coxeter", "The right-angled Coxeter group of a nerve");
  cox->add_option("--nerve", nerve, "Nerve JSON")->required();

  int modulus = 3, radius = 0;
  std::string qfile;
  std::size_t cap = 10'000'000, ball_cap = 20'000'000;
  auto* quo = app.add_subcommand("quotient", "Finite quotient G and Y = ker\\Sigma");
  quo->add_option("--nerve", nerve, "Nerve JSON")->required();
  auto* mod_opt = quo->add_option("--modulus", modulus, "Congruence modulus (>= 3)");
  quo->add_option("--quotient-file", qfile, "JSON generator images")->excludes(mod_opt);
  quo->add_option("--displacement", radius, "Require minimal displacement at least r");
  quo->add_option("--cap", cap, "Largest group order");
  quo->add_option("--ball-cap", ball_cap, "Largest displacement ball");

  auto* thk = app.add_subcommand("thicken", "Thickening of a cubical complex");
  thk->add_option("complex", file, "Cubical complex JSON")->required();

  std::string coeff = "z", degree = "all", relative;
  bool reduced = false, cohom = false;
  auto* hom = app.add_subcommand("homology", "Simplicial (co)homology");
  hom->add_option("complex", file, "Simplicial complex JSON")->required();
  hom->add_option("--coeff", coeff, "z | q | f2 | fp:<p>");
  hom->add_option("--degree", degree, "A degree or 'all'");
  hom->add_flag("--reduced", reduced, "Reduced (co)homology");
  hom->add_flag("--cohomology", cohom, "Cohomology instead of homology");
  hom->add_option("--relative", relative, "Subcomplex JSON, or vertices:<a,b,...> for their span");

  std::string config, replay_dir, artifacts;
  bool resume = false, timings = false;
  auto* pipe = app.add_subcommand("pipeline", "Run or replay the basic construction");
  auto* cfg_opt = pipe->add_option("--config", config, "Pipeline config JSON");
  pipe->add_option("--replay", replay_dir, "Re-check a saved artifact directory")->excludes(cfg_opt);
  pipe->add_option("--artifacts", artifacts, "Directory for stage artifacts");
  pipe->add_flag("--resume", resume, "Reuse finished stages found in --artifacts");
  pipe->add_flag("--timings", timings, "Add wall time and peak memory to the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  const Exec exec = serial ? Exec::serial : Exec::parallel;
  try {
    if (*check) return cmd_check(file, k, sd2, links, local, out);
    if (*cox) return cmd_coxeter(nerve, out);
    if (*quo) return cmd_quotient(nerve, modulus, qfile, radius, cap, ball_cap, exec, out);
    if (*thk) return cmd_thicken(file, out);
    if (*hom) return cmd_homology(file, coeff, degree, reduced, cohom, relative, out);
    if (*pipe) return cmd_pipeline(config, replay_dir, artifacts, resume, timings, exec, out);
  } catch (const VerificationFailure& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "resource cap: " << e.what() << " (reached " << e.reached() << ")\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
