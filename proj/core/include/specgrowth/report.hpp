// report.hpp — end-to-end pipelines behind the CLI: resolve a graph source,
// run metric/growth/bounds/spectral stages, assemble deterministic JSON
// reports, and the self-check suite. All entry points return serialized JSON;
// CSV side files are written when emit_csv_dir is set.
//
// Reports are byte-identical across runs for a fixed config and seed, except
// for the top-level "timestamp" field.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "specgrowth/family.hpp"
#include "specgrowth/graph.hpp"
#include "specgrowth/growth.hpp"
#include "specgrowth/metrics.hpp"
#include "specgrowth/util.hpp"

namespace specgrowth {

struct GeneratorSpec {
  FamilyKind kind = FamilyKind::antitree;
  std::string profile = "poly:2";  // ignored for the line family
  std::uint32_t radius = 20;
  MeasureRule rule = MeasureRule::unit;
};

struct RunConfig {
  // source: a graph file or a generator, exactly one
  std::string graph_path;
  std::optional<GeneratorSpec> generator;
  bool allow_disconnected = false;

  LengthRule metric_rule = LengthRule::natural;
  std::optional<Convention> convention;  // default: natural -> half, huang -> full
  Vertex root = 0;

  std::uint32_t r_max = 20;
  std::optional<Window> window;       // default [r_max/2, r_max]
  std::optional<double> step;         // default: natural 1, otherwise delta_min/2
  std::optional<Window> beta_window;  // default [50, 200] analytic / tail window on files
  std::string alpha_grid = "auto";    // auto | lo:hi:n | list:a,b,...
  std::vector<std::uint32_t> radii;   // exhaustion radii; default from r_max
  std::vector<std::uint32_t> annulus_in;
  std::optional<std::uint32_t> annulus_out;

  double tol = 1e-8;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::size_t max_centers = 256;
  bool exhaustive_centers = false;
  std::optional<ResourceCaps> caps;
  std::string emit_csv_dir;
  bool solver_trace = false;

  std::size_t verify_instances = 50;
};

// Resolved graph source: the graph plus the family it came from, if any.
struct GraphSource {
  WeightedGraph graph;
  std::optional<Family> family;
  std::string label;  // "file:..." or the family description
};

GraphSource load_or_generate(const RunConfig& config);

// The alpha grid used by spectral sweeps: "auto" spans
// (max(mu_hat/2, 1e-3), mu_hat/2 + 2] with 12 points.
std::vector<double> resolve_alpha_grid(const std::string& spec, double mu_hat);

std::string cmd_generate(const RunConfig& config);  // graph JSON
std::string cmd_metric(const RunConfig& config);
std::string cmd_growth(const RunConfig& config);
std::string cmd_bounds(double mu, const std::string& rate_label, JumpSize jump, bool halved);
std::string cmd_spectrum(const RunConfig& config);
std::string cmd_analyze(const RunConfig& config);

// Deterministic self-check suite: inequality grids, randomized lemma checks,
// solver-versus-dense-oracle comparisons, closed-form eigenvalues, bound
// identities, estimator invariances. The returned JSON lists one row per
// check; "all_pass" summarizes.
std::string cmd_verify(const RunConfig& config);

}  // namespace specgrowth
