#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "specgrowth/errors.hpp"
#include "specgrowth/report.hpp"
#include "specgrowth/version.hpp"

namespace {

using namespace specgrowth;

struct CliOptions {
  std::string graph_path;
  std::string family;
  std::string spheres;
  std::uint32_t radius = 20;
  std::string measure = "unit";
  std::uint32_t branching = 0;
  std::uint32_t root_degree = 0;
  std::string metric = "natural";
  std::string convention;
  std::uint32_t root = 0;
  std::uint32_t rmax = 20;
  std::string window;
  std::optional<double> step;
  std::string beta_window;
  std::string alpha_grid = "auto";
  std::string radii;
  std::string annulus_in;
  std::optional<std::uint32_t> annulus_out;
  double tol = 1e-8;
  std::uint64_t seed = 1;
  std::size_t threads = 0;
  std::size_t centers = 256;
  bool exhaustive_centers = false;
  bool allow_disconnected = false;
  std::optional<std::size_t> max_vertices;
  std::optional<std::size_t> max_edges;
  std::string out_path;
  std::string emit_csv;
  bool solver_trace = false;
  std::size_t instances = 50;

  double mu = 0.0;
  std::string rate = "mu";
  double delta_min = 1.0;
  double delta_max = 1.0;
  bool halved = false;
};

Window parse_window_arg(const std::string& s, const char* name) {
  auto c = s.find(':');
  if (c == std::string::npos)
    throw validation_error(std::string(name) + " must be LO:HI, got '" + s + "'");
  try {
    std::size_t p1 = 0, p2 = 0;
    std::string a = s.substr(0, c), b = s.substr(c + 1);
    double lo = std::stod(a, &p1);
    double hi = std::stod(b, &p2);
    if (p1 != a.size() || p2 != b.size()) throw std::invalid_argument(s);
    if (!(lo <= hi)) throw validation_error(std::string(name) + ": LO must not exceed HI");
    return {lo, hi};
  } catch (const validation_error&) {
    throw;
  } catch (const std::exception&) {
    throw validation_error(std::string(name) + " must be LO:HI, got '" + s + "'");
  }
}

std::vector<std::uint32_t> parse_u32_list(const std::string& s, const char* name) {
  std::vector<std::uint32_t> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    auto comma = s.find(',', pos);
    if (comma == std::string::npos) comma = s.size();
    std::string item = s.substr(pos, comma - pos);
    try {
      std::size_t p = 0;
      unsigned long v = std::stoul(item, &p);
      if (p != item.size() || v > 0xffffffffUL) throw std::invalid_argument(item);
      out.push_back(static_cast<std::uint32_t>(v));
    } catch (const std::exception&) {
      throw validation_error(std::string(name) + ": bad entry '" + item + "'");
    }
    pos = comma + 1;
  }
  if (out.empty()) throw validation_error(std::string(name) + " is empty");
  return out;
}

FamilyKind parse_family_kind(const std::string& s) {
  if (s == "antitree") return FamilyKind::antitree;
  if (s == "tree") return FamilyKind::tree;
  if (s == "line") return FamilyKind::line;
  throw validation_error("unknown family '" + s + "' (use antitree, tree, or line)");
}

LengthRule parse_metric_rule(const std::string& s) {
  if (s == "natural") return LengthRule::natural;
  if (s == "huang") return LengthRule::huang;
  throw validation_error("unknown metric '" + s + "' (use natural or huang)");
}

Convention parse_convention(const std::string& s) {
  if (s == "half") return Convention::half;
  if (s == "full") return Convention::full;
  throw validation_error("unknown convention '" + s + "' (use half or full)");
}

RunConfig make_run_config(const CliOptions& opts) {
  RunConfig c;
  c.graph_path = opts.graph_path;
  if (!opts.family.empty()) {
    GeneratorSpec gen;
    gen.kind = parse_family_kind(opts.family);
    gen.radius = opts.radius;
    gen.rule = parse_measure_rule(opts.measure);
    if (!opts.spheres.empty()) {
      gen.profile = opts.spheres;
    } else if (opts.branching > 0) {
      std::uint32_t base = opts.root_degree > 0 ? opts.root_degree : opts.branching + 1;
      gen.profile = "geo:" + std::to_string(base) + "," + std::to_string(opts.branching);
    }
    c.generator = gen;
  } else if (!opts.spheres.empty() || opts.branching > 0) {
    throw validation_error("--spheres/--branching need --family");
  }
  c.allow_disconnected = opts.allow_disconnected;
  c.metric_rule = parse_metric_rule(opts.metric);
  if (!opts.convention.empty()) c.convention = parse_convention(opts.convention);
  c.root = opts.root;
  c.r_max = opts.rmax;
  if (!opts.window.empty()) c.window = parse_window_arg(opts.window, "--window");
  c.step = opts.step;
  if (!opts.beta_window.empty())
    c.beta_window = parse_window_arg(opts.beta_window, "--beta-window");
  c.alpha_grid = opts.alpha_grid;
  if (!opts.radii.empty()) c.radii = parse_u32_list(opts.radii, "--radii");
  if (!opts.annulus_in.empty()) c.annulus_in = parse_u32_list(opts.annulus_in, "--annulus-in");
  c.annulus_out = opts.annulus_out;
  c.tol = opts.tol;
  c.seed = opts.seed;
  c.threads = opts.threads;
  c.max_centers = opts.centers;
  c.exhaustive_centers = opts.exhaustive_centers;
  if (opts.max_vertices || opts.max_edges) {
    ResourceCaps caps = default_caps();
    if (opts.max_vertices) caps.max_vertices = *opts.max_vertices;
    if (opts.max_edges) caps.max_edges = *opts.max_edges;
    c.caps = caps;
  }
  c.emit_csv_dir = opts.emit_csv;
  c.solver_trace = opts.solver_trace;
  c.verify_instances = opts.instances;
  return c;
}

void add_source_opts(CLI::App* sub, CliOptions& opts) {
  sub->add_option("--graph", opts.graph_path, "graph JSON file");
  sub->add_option("--family", opts.family, "generator family: antitree, tree, line");
  sub->add_option("--spheres", opts.spheres,
                  "sphere profile: poly:K, const:C, geo:A,Q, list:[1,...]");
  sub->add_option("--radius", opts.radius, "generator truncation radius");
  sub->add_option("--measure", opts.measure, "vertex measure: unit or weighted-degree");
  sub->add_option("--branching", opts.branching, "tree shorthand: children per vertex");
  sub->add_option("--root-degree", opts.root_degree,
                  "tree shorthand: root degree (default branching+1)");
  sub->add_flag("--allow-disconnected", opts.allow_disconnected,
                "accept graphs with unreachable vertices");
  sub->add_option("--max-vertices", opts.max_vertices, "resource cap override");
  sub->add_option("--max-edges", opts.max_edges, "resource cap override");
  sub->add_option("--out", opts.out_path, "write the report here instead of stdout");
}

void add_metric_opts(CLI::App* sub, CliOptions& opts) {
  sub->add_option("--metric", opts.metric, "edge lengths: natural or huang");
  sub->add_option("--convention", opts.convention,
                  "adaptedness convention: half or full (default by metric)");
  sub->add_option("--root", opts.root, "distance root vertex");
  sub->add_option("--emit-csv", opts.emit_csv, "directory for CSV side outputs");
}

void add_growth_opts(CLI::App* sub, CliOptions& opts) {
  sub->add_option("--rmax", opts.rmax, "largest ball radius");
  sub->add_option("--window", opts.window, "rate window LO:HI (default rmax/2:rmax)");
  sub->add_option("--step", opts.step, "ball grid step (default 1 natural, delta_min/2 huang)");
  sub->add_option("--beta-window", opts.beta_window, "polynomial-fit window LO:HI");
  sub->add_option("--centers", opts.centers, "uniform-rate center budget");
  sub->add_flag("--exhaustive-centers", opts.exhaustive_centers,
                "use every admissible center for the uniform rate");
}

void add_spectral_opts(CLI::App* sub, CliOptions& opts) {
  sub->add_option("--alpha-grid", opts.alpha_grid, "auto, LO:HI:N, or list:a,b,...");
  sub->add_option("--radii", opts.radii, "exhaustion radii, comma separated");
  sub->add_option("--annulus-in", opts.annulus_in, "annulus inner radii, comma separated");
  sub->add_option("--annulus-out", opts.annulus_out, "annulus outer radius");
  sub->add_option("--tol", opts.tol, "eigensolver relative residual tolerance");
  sub->add_option("--seed", opts.seed, "random seed");
  sub->add_option("--threads", opts.threads, "worker threads (0 = auto)");
  sub->add_flag("--solver-trace", opts.solver_trace, "emit per-restart solver trace CSVs");
}

void emit_error(const char* type, const std::string& message) {
  nlohmann::json j;
  j["error"]["type"] = type;
  j["error"]["message"] = message;
  std::cerr << j.dump() << "\n";
}

void deliver(const CliOptions& opts, const std::string& text) {
  if (opts.out_path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(opts.out_path, std::ios::binary);
  if (!out) throw validation_error("cannot write '" + opts.out_path + "'");
  out << text << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"volume growth rates and spectral bounds for weighted graphs"};
  app.set_version_flag("--version", specgrowth::kVersion);
  app.require_subcommand(1);
  CliOptions opts;

  CLI::App* generate = app.add_subcommand("generate", "materialize a graph family truncation");
  add_source_opts(generate, opts);

  CLI::App* metric = app.add_subcommand("metric", "intrinsic metric and adaptedness report");
  add_source_opts(metric, opts);
  add_metric_opts(metric, opts);

  CLI::App* growth = app.add_subcommand("growth", "ball volumes and growth rates");
  add_source_opts(growth, opts);
  add_metric_opts(growth, opts);
  add_growth_opts(growth, opts);

  CLI::App* bounds = app.add_subcommand("bounds", "spectral bounds from a growth rate");
  bounds->add_option("--mu", opts.mu, "exponential growth rate (inf allowed)")->required();
  bounds->add_option("--rate", opts.rate, "label for the rate being used");
  bounds->add_option("--delta-min", opts.delta_min, "smallest jump size");
  bounds->add_option("--delta-max", opts.delta_max, "largest jump size");
  bounds->add_flag("--halved", opts.halved, "halve the bounds (full-convention metric)");
  bounds->add_option("--out", opts.out_path, "write the report here instead of stdout");

  CLI::App* spectrum = app.add_subcommand("spectrum", "variational and exhaustion spectra");
  add_source_opts(spectrum, opts);
  add_metric_opts(spectrum, opts);
  add_growth_opts(spectrum, opts);
  add_spectral_opts(spectrum, opts);

  CLI::App* analyze = app.add_subcommand("analyze", "full pipeline report");
  add_source_opts(analyze, opts);
  add_metric_opts(analyze, opts);
  add_growth_opts(analyze, opts);
  add_spectral_opts(analyze, opts);

  CLI::App* verify = app.add_subcommand("verify", "self checks against independent oracles");
  verify->add_option("--instances", opts.instances, "random instances per check");
  verify->add_option("--seed", opts.seed, "random seed");
  verify->add_option("--tol", opts.tol, "eigensolver relative residual tolerance");
  verify->add_option("--out", opts.out_path, "write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    std::string text;
    int exit_code = 0;
    if (generate->parsed()) {
      text = specgrowth::cmd_generate(make_run_config(opts));
    } else if (metric->parsed()) {
      text = specgrowth::cmd_metric(make_run_config(opts));
    } else if (growth->parsed()) {
      text = specgrowth::cmd_growth(make_run_config(opts));
    } else if (bounds->parsed()) {
      text = specgrowth::cmd_bounds(opts.mu, opts.rate,
                                    {opts.delta_min, opts.delta_max}, opts.halved);
    } else if (spectrum->parsed()) {
      text = specgrowth::cmd_spectrum(make_run_config(opts));
    } else if (analyze->parsed()) {
      text = specgrowth::cmd_analyze(make_run_config(opts));
    } else {
      text = specgrowth::cmd_verify(make_run_config(opts));
      auto doc = nlohmann::json::parse(text);
      if (!doc.at("verify").at("all_pass").get<bool>()) exit_code = 1;
    }
    deliver(opts, text);
    return exit_code;
  } catch (const specgrowth::resource_error& e) {
    emit_error("resource", e.what());
    return 2;
  } catch (const specgrowth::convergence_error& e) {
    emit_error("convergence", e.what());
    return 3;
  } catch (const specgrowth::validation_error& e) {
    emit_error("validation", e.what());
    return 1;
  } catch (const std::exception& e) {
    emit_error("internal", e.what());
    return 1;
  }
}
