#include "specgrowth/report.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "specgrowth/bounds.hpp"
#include "specgrowth/dense.hpp"
#include "specgrowth/graph_io.hpp"
#include "specgrowth/spectral.hpp"
#include "specgrowth/version.hpp"

namespace specgrowth {

using nlohmann::json;

namespace {

// JSON has no infinities; keep them readable and deterministic
json num(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

std::string timestamp_utc() {
  std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

std::ofstream open_csv(const std::string& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  std::filesystem::path path = std::filesystem::path(dir) / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw validation_error("cannot write '" + path.string() + "'");
  out << std::setprecision(17);
  return out;
}

json config_json(const RunConfig& c) {
  json j;
  if (!c.graph_path.empty()) j["graph"] = c.graph_path;
  if (c.generator) {
    json g;
    g["family"] = to_string(c.generator->kind);
    if (c.generator->kind != FamilyKind::line) g["spheres"] = c.generator->profile;
    g["radius"] = c.generator->radius;
    g["measure"] = to_string(c.generator->rule);
    j["generator"] = std::move(g);
  }
  j["metric"] = to_string(c.metric_rule);
  if (c.convention) j["convention"] = to_string(*c.convention);
  j["root"] = c.root;
  j["rmax"] = c.r_max;
  if (c.window) j["window"] = {c.window->lo, c.window->hi};
  if (c.step) j["step"] = *c.step;
  if (c.beta_window) j["beta_window"] = {c.beta_window->lo, c.beta_window->hi};
  j["alpha_grid"] = c.alpha_grid;
  if (!c.radii.empty()) j["radii"] = c.radii;
  if (!c.annulus_in.empty()) j["annulus_in"] = c.annulus_in;
  if (c.annulus_out) j["annulus_out"] = *c.annulus_out;
  j["tol"] = c.tol;
  j["seed"] = c.seed;
  return j;
}

json report_shell(const RunConfig& c) {
  json j;
  j["version"] = kVersion;
  j["timestamp"] = timestamp_utc();
  j["seed"] = c.seed;
  j["config"] = config_json(c);
  return j;
}

Family make_family(const GeneratorSpec& spec) {
  switch (spec.kind) {
    case FamilyKind::antitree: return Family::antitree(SphereProfile::parse(spec.profile));
    case FamilyKind::tree: return Family::tree(SphereProfile::parse(spec.profile));
    default: return Family::line();
  }
}

// ---- metric stage ----------------------------------------------------------

struct MetricStage {
  PseudoMetric metric;
  AdaptednessReport adapted_half;
  AdaptednessReport adapted_full;
  Convention convention_used = Convention::half;
  bool adapted_ok = false;
  bool halved = false;
  bool has_jump = false;
  JumpSize jump{0.0, 0.0};
};

MetricStage run_metric_stage(const RunConfig& config, const WeightedGraph& g) {
  MetricStage stage;
  if (config.metric_rule == LengthRule::huang)
    stage.metric = path_metric(g, huang_lengths(g), config.root);
  else
    stage.metric = natural_distance(g, config.root);
  stage.adapted_half = verify_adapted(g, stage.metric.lengths, Convention::half);
  stage.adapted_full = verify_adapted(g, stage.metric.lengths, Convention::full);
  stage.convention_used = config.convention.value_or(
      config.metric_rule == LengthRule::huang ? Convention::full : Convention::half);
  stage.adapted_ok = stage.convention_used == Convention::half ? stage.adapted_half.ok
                                                               : stage.adapted_full.ok;
  stage.halved = stage.convention_used == Convention::full && stage.adapted_full.ok;
  if (!g.edges().empty()) {
    stage.jump = jump_size(g, stage.metric.lengths);
    stage.has_jump = true;
  }
  return stage;
}

json adaptedness_json(const AdaptednessReport& rep) {
  json j;
  j["ok"] = rep.ok;
  j["worst_vertex"] = rep.worst_vertex;
  j["worst_ratio"] = num(rep.worst_ratio);
  j["convention"] = to_string(rep.convention);
  return j;
}

json metric_json(const MetricStage& stage) {
  json j;
  j["rule"] = to_string(stage.metric.lengths.rule);
  j["root"] = stage.metric.root;
  j["convention_used"] = to_string(stage.convention_used);
  j["adapted_ok"] = stage.adapted_ok;
  j["halved"] = stage.halved;
  j["adaptedness"]["half"] = adaptedness_json(stage.adapted_half);
  j["adaptedness"]["full"] = adaptedness_json(stage.adapted_full);
  if (stage.has_jump) {
    j["jump"]["delta_min"] = num(stage.jump.delta_min);
    j["jump"]["delta_max"] = num(stage.jump.delta_max);
  } else {
    j["jump"] = nullptr;
  }
  return j;
}

// ---- growth stage ----------------------------------------------------------

struct GrowthStage {
  BallTable table;
  double step = 1.0;
  Window window;
  Window beta_window;
  double mu_hat = 0.0;
  MuTildeResult mu_tilde;
  double beta_hat = 0.0;
  double cubic_ratio = 0.0;
  GrowthClass growth_class = GrowthClass::subcubic;
  std::uint32_t r_max_eff = 0;
  std::string beta_source;
  std::string mu_tilde_note;
};

GrowthStage run_growth_stage(const RunConfig& config, const GraphSource& src,
                             const MetricStage& metric) {
  GrowthStage stage;
  stage.r_max_eff = config.r_max;
  if (src.family && config.generator && config.generator->radius < stage.r_max_eff)
    stage.r_max_eff = config.generator->radius;  // balls past the truncation are meaningless
  if (config.step) {
    stage.step = *config.step;
  } else if (config.metric_rule == LengthRule::natural) {
    stage.step = 1.0;
  } else {
    if (!metric.has_jump || metric.jump.delta_min <= 0.0)
      throw validation_error("cannot derive a ball grid step (no positive minimum edge "
                             "length); pass an explicit step");
    stage.step = metric.jump.delta_min / 2.0;
  }
  stage.window = config.window.value_or(Window{stage.r_max_eff / 2.0,
                                               static_cast<double>(stage.r_max_eff)});
  stage.table = ball_table(src.graph, metric.metric, stage.r_max_eff, stage.step);
  stage.mu_hat = mu_estimate(stage.table, stage.window);

  MuTildeOptions mopts;
  mopts.max_centers = config.max_centers;
  mopts.exhaustive = config.exhaustive_centers;
  mopts.threads = config.threads;
  mopts.step = stage.step;
  mopts.r_max = stage.window.hi;
  try {
    stage.mu_tilde =
        mu_tilde_estimate(src.graph, metric.metric.lengths, {}, stage.window, mopts);
  } catch (const validation_error& e) {
    // no center is r_max-deep: the uniform-rate estimator is vacuous here
    stage.mu_tilde = {kInf, 0, 0};
    stage.mu_tilde_note = e.what();
  }

  if (src.family) {
    stage.beta_window = config.beta_window.value_or(Window{50.0, 200.0});
    BallTable analytic = family_ball_table(
        *src.family, static_cast<std::uint32_t>(std::ceil(stage.beta_window.hi)),
        config.generator ? config.generator->rule : MeasureRule::unit);
    stage.beta_hat = beta_estimate(analytic, stage.beta_window);
    stage.cubic_ratio = cubic_ratio_max(analytic, stage.beta_window);
    stage.beta_source = "analytic";
  } else {
    stage.beta_window = config.beta_window.value_or(
        Window{std::max(2.0, stage.r_max_eff / 2.0), static_cast<double>(stage.r_max_eff)});
    stage.beta_hat = beta_estimate(stage.table, stage.beta_window);
    stage.cubic_ratio = cubic_ratio_max(stage.table, stage.beta_window);
    stage.beta_source = "ball_table";
  }
  stage.growth_class = classify_growth(stage.beta_hat);
  return stage;
}

json growth_json(const GrowthStage& stage) {
  json j;
  j["mu_hat"] = num(stage.mu_hat);
  j["mu_tilde"]["value"] = num(stage.mu_tilde.value);
  j["mu_tilde"]["centers_used"] = stage.mu_tilde.centers_used;
  j["mu_tilde"]["centers_skipped"] = stage.mu_tilde.centers_skipped;
  if (!stage.mu_tilde_note.empty()) j["mu_tilde"]["note"] = stage.mu_tilde_note;
  j["beta_hat"] = num(stage.beta_hat);
  j["beta_window"] = {stage.beta_window.lo, stage.beta_window.hi};
  j["beta_source"] = stage.beta_source;
  j["cubic_ratio_max"] = num(stage.cubic_ratio);
  j["window"] = {stage.window.lo, stage.window.hi};
  j["step"] = stage.step;
  j["rmax"] = stage.r_max_eff;
  j["rows"] = stage.table.rows.size();
  return j;
}

// ---- bounds stage ----------------------------------------------------------

json bound_set_json(const BoundSet& set) {
  json j;
  j["brooks"] = num(set.brooks);
  j["jump_refined"] = num(set.jump_refined);
  j["normalized"] = num(set.normalized);
  j["halved"] = set.halved;
  j["mu"] = num(set.mu);
  j["rate"] = set.rate_label;
  j["delta"] = num(set.delta);
  j["delta_scale"] = num(set.delta_scale);
  return j;
}

json bounds_json(const GrowthStage& growth, const MetricStage& metric) {
  JumpSize jump = metric.has_jump ? metric.jump : JumpSize{0.0, 0.0};
  json j;
  j["adapted"] = metric.adapted_ok;
  j["convention"] = to_string(metric.convention_used);
  j["for_lambda0"] = bound_set_json(
      make_bound_set(growth.mu_tilde.value, "mu_tilde", jump, metric.halved));
  j["for_lambda0_ess"] =
      bound_set_json(make_bound_set(growth.mu_hat, "mu", jump, metric.halved));
  j["pairing_note"] =
      "the main pairing keys lambda_0 by the uniform rate (mu_tilde) and lambda_0_ess by the "
      "root rate (mu); stated conventions differ on which rate keys which level, so both sets "
      "are reported";
  return j;
}

// ---- spectral stage --------------------------------------------------------

std::vector<double> default_variational_radii(const WeightedGraph& g,
                                              const PseudoMetric& metric) {
  double boundary_dist = kInf;
  if (!g.boundary().empty())
    boundary_dist = distances_from_set(g, metric.lengths, g.boundary())[metric.root];
  double reach = 0.0;
  for (double d : metric.dist)
    if (std::isfinite(d)) reach = std::max(reach, d);
  double hi = std::min(boundary_dist, reach) / 2.0;
  std::vector<double> radii;
  if (metric.lengths.rule == LengthRule::natural) {
    auto top = static_cast<std::int64_t>(std::ceil(hi)) - 1;  // 2r < boundary_dist
    if (2 * top >= boundary_dist) --top;
    std::size_t count = top > 0 ? static_cast<std::size_t>(top) : 0;
    std::size_t stride = count > 12 ? (count + 11) / 12 : 1;
    for (std::int64_t r = top; r >= 1; r -= static_cast<std::int64_t>(stride))
      radii.push_back(static_cast<double>(r));
    std::reverse(radii.begin(), radii.end());
  } else {
    for (int i = 1; i <= 8; ++i) radii.push_back(hi * (1.0 - 1e-9) * i / 8.0);
  }
  return radii;
}

struct SpectralStage {
  bool has_variational = false;
  VariationalResult variational;
  std::vector<double> alphas;
  std::vector<ExhaustionRow> exhaustion;
  std::vector<AnnulusRow> annulus;
  bool has_supersolution = false;
  SupersolutionReport supersolution;
  double supersolution_level = 0.0;
  bool has_lambda0_dirichlet = false;
  EigenResult lambda0_dirichlet;
};

// sphere start offsets of a family truncation's vertex numbering
std::vector<std::uint64_t> sphere_offsets(const Family& family, std::uint32_t R) {
  std::vector<std::uint64_t> base(R + 2, 0);
  for (std::uint32_t r = 0; r <= R; ++r) base[r + 1] = base[r] + family.sphere_size(r);
  return base;
}

SpectralStage run_spectral_stage(const RunConfig& config, const GraphSource& src,
                                 const MetricStage& metric, const GrowthStage& growth) {
  SpectralStage stage;
  SolverOptions sopts;
  sopts.tol = config.tol;
  sopts.seed = config.seed;

  stage.alphas = resolve_alpha_grid(config.alpha_grid, growth.mu_hat);
  std::vector<double> radii = default_variational_radii(src.graph, metric.metric);
  if (!radii.empty()) {
    stage.variational =
        variational_bound(src.graph, metric.metric, stage.alphas, radii, config.threads);
    stage.has_variational = true;
  }

  if (src.family && config.generator) {
    std::uint32_t R = config.generator->radius;
    std::vector<std::uint32_t> ex_radii = config.radii;
    if (ex_radii.empty()) {
      ex_radii = {std::max<std::uint32_t>(1, R / 4), std::max<std::uint32_t>(2, R / 2), R};
      std::sort(ex_radii.begin(), ex_radii.end());
      ex_radii.erase(std::unique(ex_radii.begin(), ex_radii.end()), ex_radii.end());
    }
    std::vector<std::ofstream> traces;
    std::vector<SolverOptions> per_radius(ex_radii.size(), sopts);
    if (config.solver_trace && !config.emit_csv_dir.empty()) {
      traces.reserve(ex_radii.size());
      for (std::uint32_t r : ex_radii) {
        traces.push_back(
            open_csv(config.emit_csv_dir, "solver_trace_R" + std::to_string(r) + ".csv"));
        traces.back() << "iter,theta,residual_estimate\n";
        per_radius[traces.size() - 1].trace = &traces.back();
      }
    }
    stage.exhaustion.resize(ex_radii.size());
    for (std::size_t i = 0; i < ex_radii.size(); ++i)
      stage.exhaustion[i] = lambda0_exhaustion(*src.family, {ex_radii[i]},
                                               config.generator->rule, per_radius[i], 1,
                                               config.caps)[0];

    std::uint32_t annulus_out = config.annulus_out.value_or(R);
    std::vector<std::uint32_t> annulus_in = config.annulus_in;
    if (annulus_in.empty() && annulus_out >= 2) annulus_in = {annulus_out / 2};
    if (!annulus_in.empty())
      stage.annulus = lambda_ess_bracket(*src.family, annulus_in, annulus_out,
                                         config.generator->rule, sopts, config.caps);

    if (src.family->kind() == FamilyKind::antitree &&
        src.family->profile().str() == "poly:2") {
      std::vector<std::uint64_t> base = sphere_offsets(*src.family, R);
      std::vector<double> phi(src.graph.n(), 0.0);
      for (std::uint32_t r = 0; r <= R; ++r) {
        double v = 1.0 / ((r + 1.0) * (r + 1.0));
        for (std::uint64_t x = base[r]; x < base[r + 1]; ++x) phi[x] = v;
      }
      stage.supersolution_level = 2.0;
      stage.supersolution =
          supersolution_check(src.graph, phi, stage.supersolution_level, src.graph.boundary());
      stage.has_supersolution = true;
    }
  } else {
    std::vector<Vertex> domain;
    for (std::size_t x = 0; x < src.graph.n(); ++x)
      if (!src.graph.is_boundary(static_cast<Vertex>(x)))
        domain.push_back(static_cast<Vertex>(x));
    if (!domain.empty()) {
      stage.lambda0_dirichlet = dirichlet_lowest(src.graph, std::move(domain), sopts);
      stage.has_lambda0_dirichlet = true;
    }
  }
  return stage;
}

json spectral_json(const SpectralStage& stage) {
  json j;
  if (stage.has_variational) {
    json v;
    v["best_value"] = num(stage.variational.best_value);
    v["best_alpha"] = num(stage.variational.best_alpha);
    v["best_r"] = num(stage.variational.best_r);
    v["admitted"] = stage.variational.admitted;
    j["variational"] = std::move(v);
  } else {
    j["variational"] = nullptr;
  }
  j["alpha_grid"] = stage.alphas;
  json ex = json::array();
  for (const ExhaustionRow& row : stage.exhaustion) {
    json r;
    r["radius"] = row.radius;
    r["lambda"] = num(row.lambda);
    r["residual"] = num(row.residual);
    r["iterations"] = row.iterations;
    ex.push_back(std::move(r));
  }
  j["exhaustion"] = std::move(ex);
  json an = json::array();
  for (const AnnulusRow& row : stage.annulus) {
    json r;
    r["r_in"] = row.r_in;
    r["r_out"] = row.r_out;
    r["bracket"] = num(row.bracket);
    r["residual"] = num(row.residual);
    an.push_back(std::move(r));
  }
  j["annulus_brackets"] = std::move(an);
  if (stage.has_supersolution) {
    json s;
    s["lambda"] = stage.supersolution_level;
    s["ok"] = stage.supersolution.ok;
    s["min_residual"] = num(stage.supersolution.min_residual);
    s["max_abs_residual"] = num(stage.supersolution.max_abs_residual);
    s["checked"] = stage.supersolution.checked;
    j["supersolution"] = std::move(s);
  }
  if (stage.has_lambda0_dirichlet) {
    json d;
    d["lambda"] = num(stage.lambda0_dirichlet.lambda);
    d["residual"] = num(stage.lambda0_dirichlet.residual);
    j["lambda0_dirichlet"] = std::move(d);
  }
  return j;
}

json graph_json_summary(const GraphSource& src) {
  json j;
  j["n"] = src.graph.n();
  j["edges"] = src.graph.edges().size();
  j["total_measure"] = num(src.graph.total_measure());
  j["boundary_size"] = src.graph.boundary().size();
  j["source"] = src.label;
  return j;
}

// ---- CSV emission ----------------------------------------------------------

void emit_distances_csv(const RunConfig& config, const MetricStage& metric) {
  if (config.emit_csv_dir.empty()) return;
  std::ofstream out = open_csv(config.emit_csv_dir, "distances.csv");
  out << "vertex,dist\n";
  for (std::size_t x = 0; x < metric.metric.dist.size(); ++x) {
    double d = metric.metric.dist[x];
    if (std::isfinite(d))
      out << x << "," << d << "\n";
    else
      out << x << ",inf\n";
  }
}

void emit_balls_csv(const RunConfig& config, const GrowthStage& growth) {
  if (config.emit_csv_dir.empty()) return;
  std::ofstream out = open_csv(config.emit_csv_dir, "balls.csv");
  out << "r,count,volume\n";
  for (const BallRow& row : growth.table.rows)
    out << row.r << "," << row.count << "," << row.volume << "\n";
}

void emit_spectral_csv(const RunConfig& config, const SpectralStage& stage) {
  if (config.emit_csv_dir.empty()) return;
  if (!stage.exhaustion.empty()) {
    std::ofstream out = open_csv(config.emit_csv_dir, "exhaustion.csv");
    out << "radius,lambda,residual,iterations\n";
    for (const ExhaustionRow& row : stage.exhaustion)
      out << row.radius << "," << row.lambda << "," << row.residual << "," << row.iterations
          << "\n";
  }
  if (!stage.annulus.empty()) {
    std::ofstream out = open_csv(config.emit_csv_dir, "annulus.csv");
    out << "r_in,r_out,bracket,residual\n";
    for (const AnnulusRow& row : stage.annulus)
      out << row.r_in << "," << row.r_out << "," << row.bracket << "," << row.residual << "\n";
  }
  if (stage.has_variational) {
    std::ofstream out = open_csv(config.emit_csv_dir, "variational.csv");
    out << "alpha,r,value\n";
    for (const VariationalRow& row : stage.variational.rows)
      out << row.alpha << "," << row.r << "," << row.value << "\n";
  }
}

}  // namespace

GraphSource load_or_generate(const RunConfig& config) {
  if (!config.graph_path.empty() && config.generator)
    throw validation_error("pass either a graph file or a generator, not both");
  GraphSource src;
  if (!config.graph_path.empty()) {
    src.graph = load_graph(config.graph_path, config.allow_disconnected, config.caps);
    src.label = "file:" + config.graph_path;
    return src;
  }
  if (!config.generator)
    throw validation_error("no graph source: pass --graph FILE or a generator spec");
  Family family = make_family(*config.generator);
  src.graph = family.truncate(config.generator->radius, config.generator->rule, config.caps);
  std::ostringstream label;
  label << family.describe() << " R=" << config.generator->radius << " measure="
        << to_string(config.generator->rule);
  src.label = label.str();
  src.family = std::move(family);
  return src;
}

std::vector<double> resolve_alpha_grid(const std::string& spec, double mu_hat) {
  std::vector<double> alphas;
  if (spec == "auto" || spec.empty()) {
    double base = std::isfinite(mu_hat) ? std::max(mu_hat, 0.0) / 2.0 : 0.0;
    double lo = std::max(base, 1e-3);
    double hi = base + 2.0;
    for (int k = 1; k <= 12; ++k) alphas.push_back(lo + (hi - lo) * k / 12.0);
    return alphas;
  }
  auto parse_d = [&](const std::string& s) {
    try {
      std::size_t pos = 0;
      double v = std::stod(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw validation_error("alpha grid '" + spec + "': bad number '" + s + "'");
    }
  };
  if (spec.rfind("list:", 0) == 0) {
    std::string body = spec.substr(5);
    std::size_t pos = 0;
    while (pos <= body.size() && !body.empty()) {
      auto comma = body.find(',', pos);
      if (comma == std::string::npos) comma = body.size();
      alphas.push_back(parse_d(body.substr(pos, comma - pos)));
      pos = comma + 1;
      if (pos > body.size()) break;
    }
  } else {
    auto c1 = spec.find(':');
    auto c2 = spec.find(':', c1 == std::string::npos ? std::string::npos : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw validation_error("alpha grid '" + spec + "' must be auto, lo:hi:n, or list:a,b,...");
    double lo = parse_d(spec.substr(0, c1));
    double hi = parse_d(spec.substr(c1 + 1, c2 - c1 - 1));
    long n = static_cast<long>(parse_d(spec.substr(c2 + 1)));
    if (n < 1 || n > 10000) throw validation_error("alpha grid point count out of range");
    if (n == 1)
      alphas.push_back(lo);
    else
      for (long k = 0; k < n; ++k) alphas.push_back(lo + (hi - lo) * k / (n - 1));
  }
  for (double a : alphas)
    if (!(a > 0.0) || !std::isfinite(a))
      throw validation_error("alpha grid contains a nonpositive value");
  if (alphas.empty()) throw validation_error("alpha grid is empty");
  return alphas;
}

std::string cmd_generate(const RunConfig& config) {
  if (!config.generator) throw validation_error("generate needs a family spec");
  GraphSource src = load_or_generate(config);
  return graph_to_json(src.graph);
}

std::string cmd_metric(const RunConfig& config) {
  GraphSource src = load_or_generate(config);
  MetricStage metric = run_metric_stage(config, src.graph);
  emit_distances_csv(config, metric);
  json j = report_shell(config);
  j["graph"] = graph_json_summary(src);
  j["metric"] = metric_json(metric);
  return j.dump(2);
}

std::string cmd_growth(const RunConfig& config) {
  GraphSource src = load_or_generate(config);
  MetricStage metric = run_metric_stage(config, src.graph);
  GrowthStage growth = run_growth_stage(config, src, metric);
  emit_balls_csv(config, growth);
  json j = report_shell(config);
  j["graph"] = graph_json_summary(src);
  j["metric"] = metric_json(metric);
  j["growth"] = growth_json(growth);
  return j.dump(2);
}

std::string cmd_bounds(double mu, const std::string& rate_label, JumpSize jump, bool halved) {
  json j;
  j["version"] = kVersion;
  j["bounds"] = bound_set_json(make_bound_set(mu, rate_label, jump, halved));
  return j.dump(2);
}

std::string cmd_spectrum(const RunConfig& config) {
  GraphSource src = load_or_generate(config);
  MetricStage metric = run_metric_stage(config, src.graph);
  GrowthStage growth = run_growth_stage(config, src, metric);
  SpectralStage spectral = run_spectral_stage(config, src, metric, growth);
  emit_spectral_csv(config, spectral);
  json j = report_shell(config);
  j["graph"] = graph_json_summary(src);
  j["metric"] = metric_json(metric);
  j["spectral"] = spectral_json(spectral);
  return j.dump(2);
}

std::string cmd_analyze(const RunConfig& config) {
  GraphSource src = load_or_generate(config);
  MetricStage metric = run_metric_stage(config, src.graph);
  GrowthStage growth = run_growth_stage(config, src, metric);
  SpectralStage spectral = run_spectral_stage(config, src, metric, growth);
  emit_distances_csv(config, metric);
  emit_balls_csv(config, growth);
  emit_spectral_csv(config, spectral);

  json j = report_shell(config);
  j["graph"] = graph_json_summary(src);
  j["metric"] = metric_json(metric);
  j["growth"] = growth_json(growth);
  j["bounds"] = bounds_json(growth, metric);
  j["spectral"] = spectral_json(spectral);

  json cls;
  cls["band"] = 0.2;
  cls["beta_hat"] = num(growth.beta_hat);
  cls["class"] = to_string(growth.growth_class);
  switch (growth.growth_class) {
    case GrowthClass::subcubic:
      cls["note"] = "subcubic volume: the spectrum of the unnormalized operator reaches 0";
      break;
    case GrowthClass::cubic:
      cls["note"] = "cubic volume: the essential spectrum can sit at a finite positive level";
      break;
    case GrowthClass::supercubic:
      cls["note"] =
          "supercubic volume: lambda_0 > 0 and empty essential spectrum expected "
          "(informational; outside this tool's certified bounds)";
      break;
  }
  j["classification"] = std::move(cls);
  return j.dump(2);
}

// ---- verify suite ----------------------------------------------------------

namespace {

struct CheckRow {
  std::string name;
  bool pass = false;
  json detail;
};

WeightedGraph random_connected_graph(SplitMix64& rng, std::size_t n_max, bool half_adapted) {
  std::size_t n = 2 + rng.below(n_max - 1);
  std::vector<Edge> edges;
  std::vector<std::pair<Vertex, Vertex>> seen;
  for (std::size_t v = 1; v < n; ++v) {
    Vertex u = static_cast<Vertex>(rng.below(v));
    edges.push_back({u, static_cast<Vertex>(v), rng.uniform(0.5, 2.0)});
    seen.emplace_back(u, static_cast<Vertex>(v));
  }
  for (std::size_t t = 0; t < n; ++t) {
    Vertex u = static_cast<Vertex>(rng.below(n));
    Vertex v = static_cast<Vertex>(rng.below(n));
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    if (std::find(seen.begin(), seen.end(), std::make_pair(u, v)) != seen.end()) continue;
    seen.emplace_back(u, v);
    edges.push_back({u, v, rng.uniform(0.5, 2.0)});
  }
  std::vector<double> wdeg(n, 0.0);
  for (const Edge& e : edges) {
    wdeg[e.u] += e.w;
    wdeg[e.v] += e.w;
  }
  std::vector<double> measure(n);
  for (std::size_t x = 0; x < n; ++x)
    measure[x] = half_adapted ? 0.5 * wdeg[x] * (1.0 + rng.next_double())
                              : rng.uniform(0.5, 2.0);
  return build_from_parts(n, std::move(edges), std::move(measure), {});
}

CheckRow check_elementary_grid() {
  CheckRow row{"elementary-inequality-grid", true, {}};
  double worst1 = kInf, worst2 = kInf;
  for (int ia = 1; ia <= 50; ++ia) {
    double alpha = 5.0 * ia / 50.0;
    for (int ir = 0; ir <= 50; ++ir) {
      double R1 = 10.0 * ir / 50.0;
      double lhs = std::expm1(alpha * R1) * std::expm1(alpha * R1);
      double rhs = alpha * alpha * R1 * R1 / 2.0 * (std::exp(2.0 * alpha * R1) + 1.0);
      double slack = (rhs - lhs) / std::max(1.0, rhs);
      worst1 = std::min(worst1, slack);

      double R2 = static_cast<double>(ir) / 50.0;  // [0, 1] with the endpoint
      double lhs2 = std::expm1(alpha * R2) * std::expm1(alpha * R2) /
                    (std::exp(2.0 * alpha * R2) + 1.0);
      double em = std::expm1(alpha);
      double rhs2 = R2 * R2 * em * em / (R2 * R2 * std::exp(2.0 * alpha) + 1.0);
      double slack2 = (rhs2 - lhs2) / std::max(1.0, std::abs(rhs2));
      worst2 = std::min(worst2, slack2);
    }
  }
  row.pass = worst1 >= -1e-12 && worst2 >= -1e-12;
  row.detail["worst_relative_slack_first"] = num(worst1);
  row.detail["worst_relative_slack_second"] = num(worst2);
  return row;
}

CheckRow check_lipschitz_random(std::size_t instances, std::uint64_t seed) {
  CheckRow row{"lipschitz-random-graphs", true, {}};
  SplitMix64 rng(seed ^ 0x11d5c173932ab1cfULL);
  double worst = kInf;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < instances; ++i) {
    WeightedGraph g = random_connected_graph(rng, 40, true);
    PseudoMetric metric = natural_distance(g, 0);
    double alpha = std::max(1e-3, 3.0 * rng.next_double());
    double r = 1.0 + static_cast<double>(rng.below(5));
    TestFunctionPair pair = test_pair(metric, r, alpha);
    LipschitzReport rep = lipschitz_check(g, metric, pair, {});
    worst = std::min(worst, rep.worst_slack);
    pairs += rep.pairs_checked;
    if (!rep.ok) row.pass = false;
  }
  row.detail["instances"] = instances;
  row.detail["pairs_checked"] = pairs;
  row.detail["worst_slack"] = num(worst);
  return row;
}

CheckRow check_energy_bound_random(std::size_t instances, std::uint64_t seed) {
  CheckRow row{"energy-bound-random-graphs", true, {}};
  SplitMix64 rng(seed ^ 0x84c1f0e2a3b5d7f9ULL);
  double worst = kInf;
  for (std::size_t i = 0; i < instances; ++i) {
    WeightedGraph g = random_connected_graph(rng, 40, true);
    PseudoMetric metric = natural_distance(g, 0);
    AdaptednessReport adapted = verify_adapted(g, metric.lengths, Convention::half);
    if (!adapted.ok) {
      row.pass = false;
      row.detail["note"] = "instance unexpectedly failed adaptedness";
      continue;
    }
    double alpha = std::max(1e-3, 3.0 * rng.next_double());
    double r = 1.0 + static_cast<double>(rng.below(5));
    TestFunctionPair pair = test_pair(metric, r, alpha);
    JumpSize jump{1.0, 1.0};
    EnergyBoundReport rep = energy_bound_check(g, pair, adapted, &jump);
    worst = std::min(worst, rep.slack_base);
    if (rep.has_refined) worst = std::min(worst, rep.slack_refined);
    if (!rep.ok) row.pass = false;
  }
  row.detail["instances"] = instances;
  row.detail["worst_slack"] = num(worst);
  return row;
}

CheckRow check_solver_vs_dense(std::uint64_t seed) {
  CheckRow row{"solver-vs-dense-oracle", true, {}};
  SplitMix64 rng(seed ^ 0x5bd1e995cbf29ce4ULL);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    WeightedGraph g = random_connected_graph(rng, 120, false);
    std::vector<Vertex> domain;
    for (std::size_t x = 0; x < g.n(); ++x)
      if (rng.next_double() < 0.7) domain.push_back(static_cast<Vertex>(x));
    if (domain.empty()) domain.push_back(0);
    DirichletOperator op = dirichlet_operator(g, domain);
    std::vector<double> dense(op.matrix.n * op.matrix.n, 0.0);
    for (std::size_t r = 0; r < op.matrix.n; ++r)
      for (std::size_t k = op.matrix.offsets[r]; k < op.matrix.offsets[r + 1]; ++k)
        dense[r * op.matrix.n + op.matrix.cols[k]] = op.matrix.vals[k];
    double reference = dense_symmetric_eigenvalues(std::move(dense), op.matrix.n).front();
    SolverOptions sopts;
    sopts.tol = 1e-10;
    sopts.seed = seed + i;
    EigenResult got = smallest_eigenpair(op.matrix, sopts);
    double diff = std::abs(got.lambda - reference) / std::max(1.0, std::abs(reference));
    worst = std::max(worst, diff);
    if (diff > 1e-8) row.pass = false;
  }
  row.detail["worst_relative_difference"] = num(worst);
  return row;
}

CheckRow check_path_formula(std::uint64_t seed) {
  CheckRow row{"interior-path-closed-form", true, {}};
  WeightedGraph host = Family::line().truncate(10, MeasureRule::unit);
  double worst = 0.0;
  for (std::uint32_t N = 1; N <= 8; ++N) {
    std::vector<Vertex> domain;
    for (std::uint32_t k = 1; k <= N; ++k) domain.push_back(static_cast<Vertex>(2 * k - 1));
    SolverOptions sopts;
    sopts.tol = 1e-10;
    sopts.seed = seed;
    EigenResult got = smallest_eigenpair(dirichlet_operator(host, domain).matrix, sopts);
    double expected = 2.0 - 2.0 * std::cos(M_PI / (N + 1.0));
    worst = std::max(worst, std::abs(got.lambda - expected));
    if (std::abs(got.lambda - expected) > 1e-8) row.pass = false;
  }
  row.detail["worst_absolute_difference"] = num(worst);
  return row;
}

CheckRow check_bound_identities() {
  CheckRow row{"bound-identities-grid", true, {}};
  double worst_identity = 0.0;
  double prev_brooks = -1.0, prev_jump = -1.0, prev_norm = -1.0;
  for (int i = 0; i <= 1000; ++i) {
    double mu = 10.0 * i / 1000.0;
    double b = brooks_bound(mu);
    double jmp = jump_bound(mu, 1.0);
    double nrm = normalized_bound(mu);
    double identity = std::abs(nrm - jmp / 2.0) / std::max(nrm, 1e-300);
    if (mu > 0.0) worst_identity = std::max(worst_identity, identity);
    double tol_step = 1e-15;
    if (b + tol_step < prev_brooks || jmp + tol_step < prev_jump || nrm + tol_step < prev_norm)
      row.pass = false;
    if (jmp > b * (1.0 + 1e-12) + 1e-15) row.pass = false;  // refined never exceeds brooks
    prev_brooks = b;
    prev_jump = jmp;
    prev_norm = nrm;
  }
  if (worst_identity > 1e-12) row.pass = false;
  row.detail["worst_identity_relative_error"] = num(worst_identity);
  return row;
}

CheckRow check_scaling_invariance() {
  CheckRow row{"metric-scaling-invariance", true, {}};
  Family family = Family::antitree(SphereProfile::poly(1));
  WeightedGraph g = family.truncate(12, MeasureRule::unit);
  PseudoMetric natural = natural_distance(g, 0);
  EdgeLengths doubled = natural.lengths;
  doubled.rule = LengthRule::custom;
  for (double& len : doubled.len) len *= 2.0;
  PseudoMetric scaled = path_metric(g, doubled, 0);
  BallTable t1 = ball_table(g, natural, 12, 1.0);
  BallTable t2 = ball_table(g, scaled, 24, 2.0);
  double mu1 = mu_estimate(t1, {6, 12});
  double mu2 = mu_estimate(t2, {12, 24});
  double rel = std::abs(mu2 - mu1 / 2.0) / std::max(std::abs(mu1 / 2.0), 1e-300);
  row.pass = rel <= 1e-12;
  row.detail["relative_difference"] = num(rel);
  return row;
}

CheckRow check_form_operator(std::uint64_t seed) {
  CheckRow row{"form-operator-consistency", true, {}};
  SplitMix64 rng(seed ^ 0x27d4eb2f165667c5ULL);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    WeightedGraph g = random_connected_graph(rng, 60, false);
    std::vector<double> u(g.n());
    for (double& v : u) v = rng.uniform(-1.0, 1.0);
    std::vector<double> lu = apply_laplacian(g, u);
    double lhs = 0.0;
    for (std::size_t x = 0; x < g.n(); ++x)
      lhs += g.measure(static_cast<Vertex>(x)) * u[x] * lu[x];
    double rhs = energy_dirichlet(g, u);
    double rel = std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
    worst = std::max(worst, rel);
    if (rel > 1e-10) row.pass = false;
  }
  row.detail["worst_relative_difference"] = num(worst);
  return row;
}

CheckRow check_exhaustion_monotone(std::uint64_t seed, double tol) {
  CheckRow row{"exhaustion-monotonicity", true, {}};
  Family family = Family::antitree(SphereProfile::poly(1));
  SolverOptions sopts;
  sopts.tol = tol;
  sopts.seed = seed;
  std::vector<ExhaustionRow> rows = lambda0_exhaustion(family, {4, 6, 8}, MeasureRule::unit, sopts);
  json values = json::array();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    values.push_back(num(rows[i].lambda));
    if (i > 0 && rows[i].lambda > rows[i - 1].lambda * (1.0 + 10.0 * tol) + 10.0 * tol)
      row.pass = false;
  }
  row.detail["lambda"] = std::move(values);
  return row;
}

}  // namespace

std::string cmd_verify(const RunConfig& config) {
  std::vector<CheckRow> rows;
  rows.push_back(check_elementary_grid());
  rows.push_back(check_lipschitz_random(config.verify_instances, config.seed));
  rows.push_back(check_energy_bound_random(config.verify_instances, config.seed));
  rows.push_back(check_solver_vs_dense(config.seed));
  rows.push_back(check_path_formula(config.seed));
  rows.push_back(check_bound_identities());
  rows.push_back(check_scaling_invariance());
  rows.push_back(check_form_operator(config.seed));
  rows.push_back(check_exhaustion_monotone(config.seed, config.tol));

  json j = report_shell(config);
  j["verify"]["instances"] = config.verify_instances;
  json checks = json::array();
  bool all = true;
  for (const CheckRow& row : rows) {
    json r;
    r["name"] = row.name;
    r["pass"] = row.pass;
    r["detail"] = row.detail;
    checks.push_back(std::move(r));
    all = all && row.pass;
  }
  j["verify"]["checks"] = std::move(checks);
  j["verify"]["all_pass"] = all;
  return j.dump(2);
}

}  // namespace specgrowth
