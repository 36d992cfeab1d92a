#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hypcox/antisym.hpp"
#include "hypcox/homology.hpp"
#include "hypcox/io.hpp"
#include "hypcox/parallel.hpp"
#include "hypcox/quotient.hpp"

namespace hypcox {

// One run of the basic construction, X0 -> X1 -> ... -> Xk.
struct PipelineConfig {
  SimplicialComplex base;
  std::string base_label;                 // file name or "inline"
  std::vector<int> radii{5};              // one displacement radius per stage
  int k_large = 5;
  bool sd2_links = false;
  std::vector<int> moduli{3, 5, 7};
  std::size_t element_cap = 10'000'000;   // |G|
  std::size_t ball_cap = 20'000'000;      // displacement ball
  // Largest chambered triangulation (facets) for the f' certificate and the
  // Betti comparison with Y; larger stages report them as skipped.
  std::size_t certificate_cap = 2'000'000;
  // Largest simplex count for homology of the output nerve.
  std::size_t homology_cap = 5'000'000;
  std::vector<Coefficients> coefficients{Coefficients::q(), Coefficients::f(2)};
  std::optional<std::vector<std::string>> track;  // vertices of Z in X0
  bool timings = false;
};

// Reads the config object; "nerve" is a path relative to `base_dir` or an
// inline complex. Throws MalformedInput / DomainError.
PipelineConfig parse_config(const Json& j, const std::filesystem::path& base_dir);
Json to_json(const PipelineConfig& c);

// Exit status shared by the CLI and the reports.
enum class Status { ok = 0, error = 1, verification_failure = 2, resource_cap = 3 };
std::string status_name(Status s);

struct StageResult {
  SimplicialComplex output;
  std::optional<CubicalComplex> y;  // kept for artifacts
  std::vector<std::string> tracked;  // names of Z's vertices in the output
};

// One pass of steps 1-3 on nerve x. `tracked` are the current names of Z's
// vertices, if Z is followed. Fills `report` as it goes, so a stage that
// throws (VerificationFailure, ResourceError, ...) leaves a partial report.
// `forced_modulus` skips the schedule search.
StageResult run_stage(const SimplicialComplex& x, int stage, int radius, const PipelineConfig& cfg,
                      const std::vector<std::string>& tracked, Json& report, Exec exec = Exec::parallel,
                      std::optional<int> forced_modulus = std::nullopt);

struct PipelineOutcome {
  Status status = Status::ok;
  Json report;
  std::optional<SimplicialComplex> final_nerve;
};

// Runs every stage. With `artifacts`, each stage writes its input nerve, Y,
// output nerve and report under artifacts/stage_<i>/; with `resume`, stages
// whose artifacts match the config are loaded instead of recomputed.
PipelineOutcome run_pipeline(const PipelineConfig& cfg, const std::optional<std::filesystem::path>& artifacts = {},
                             bool resume = false, Exec exec = Exec::parallel);

// Re-checks a saved run: every stage is recomputed from its saved input
// nerve with the recorded modulus and compared with the saved Y, output
// nerve and certificates; the saved output nerve is re-verified directly.
PipelineOutcome replay(const std::filesystem::path& dir, Exec exec = Exec::parallel);

}  // namespace hypcox
