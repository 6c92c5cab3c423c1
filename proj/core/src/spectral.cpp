#include "specgrowth/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "specgrowth/parallel.hpp"
#include "specgrowth/util.hpp"

namespace specgrowth {

DirichletOperator dirichlet_operator(const WeightedGraph& g, std::vector<Vertex> domain) {
  if (domain.empty()) throw validation_error("dirichlet domain is empty");
  std::sort(domain.begin(), domain.end());
  domain.erase(std::unique(domain.begin(), domain.end()), domain.end());
  if (domain.back() >= g.n()) {
    std::ostringstream os;
    os << "dirichlet domain vertex " << domain.back() << " out of range (n = " << g.n() << ")";
    throw validation_error(os.str());
  }
  std::vector<std::uint32_t> local(g.n(), UINT32_MAX);
  for (std::size_t i = 0; i < domain.size(); ++i) local[domain[i]] = static_cast<std::uint32_t>(i);

  DirichletOperator op;
  op.matrix.n = domain.size();
  op.matrix.offsets.assign(domain.size() + 1, 0);
  // count entries: diagonal plus in-domain neighbors
  for (std::size_t i = 0; i < domain.size(); ++i) {
    std::size_t count = 1;
    for (const AdjEntry& a : g.neighbors(domain[i]))
      if (local[a.to] != UINT32_MAX) ++count;
    op.matrix.offsets[i + 1] = op.matrix.offsets[i] + count;
  }
  op.matrix.cols.resize(op.matrix.offsets.back());
  op.matrix.vals.resize(op.matrix.offsets.back());
  for (std::size_t i = 0; i < domain.size(); ++i) {
    Vertex x = domain[i];
    double mx = g.measure(x);
    std::size_t cursor = op.matrix.offsets[i];
    // row assembled in column order; neighbors are id-sorted, diagonal spliced in
    bool diag_done = false;
    auto emit_diag = [&] {
      op.matrix.cols[cursor] = static_cast<std::uint32_t>(i);
      op.matrix.vals[cursor] = g.weighted_degree(x) / mx;
      ++cursor;
      diag_done = true;
    };
    for (const AdjEntry& a : g.neighbors(x)) {
      std::uint32_t j = local[a.to];
      if (j == UINT32_MAX) continue;
      if (!diag_done && j > i) emit_diag();
      op.matrix.cols[cursor] = j;
      op.matrix.vals[cursor] = -a.w / std::sqrt(mx * g.measure(a.to));
      ++cursor;
    }
    if (!diag_done) emit_diag();
  }
  op.domain = std::move(domain);
  return op;
}

EigenResult dirichlet_lowest(const WeightedGraph& g, std::vector<Vertex> domain,
                             const SolverOptions& opts, std::vector<double>* ground) {
  DirichletOperator op = dirichlet_operator(g, std::move(domain));
  std::vector<double> local_vec;
  EigenResult result = smallest_eigenpair(op.matrix, opts, ground ? &local_vec : nullptr);
  if (ground) {
    ground->assign(g.n(), 0.0);
    for (std::size_t i = 0; i < op.domain.size(); ++i)
      (*ground)[op.domain[i]] = local_vec[i] / std::sqrt(g.measure(op.domain[i]));
  }
  return result;
}

std::vector<ExhaustionRow> lambda0_exhaustion(const Family& family,
                                              const std::vector<std::uint32_t>& radii,
                                              MeasureRule rule, const SolverOptions& opts,
                                              unsigned threads,
                                              std::optional<ResourceCaps> caps) {
  if (radii.empty()) throw validation_error("exhaustion needs at least one radius");
  std::vector<ExhaustionRow> rows(radii.size());
  parallel_for(radii.size(), threads, [&](std::size_t i) {
    WeightedGraph ball = family.truncate(radii[i], rule, caps);
    std::vector<Vertex> domain(ball.n());
    for (std::size_t x = 0; x < ball.n(); ++x) domain[x] = static_cast<Vertex>(x);
    EigenResult r = dirichlet_lowest(ball, std::move(domain), opts);
    rows[i] = {radii[i], r.lambda, r.residual, r.iterations};
  });
  return rows;
}

std::vector<AnnulusRow> lambda_ess_bracket(const Family& family,
                                           const std::vector<std::uint32_t>& r_ins,
                                           std::uint32_t r_out, MeasureRule rule,
                                           const SolverOptions& opts,
                                           std::optional<ResourceCaps> caps) {
  if (r_ins.empty()) throw validation_error("annulus bracket needs at least one inner radius");
  WeightedGraph host = family.truncate(r_out, rule, caps);
  // first vertex id of each sphere in truncation order
  std::vector<std::uint64_t> base(r_out + 2, 0);
  for (std::uint32_t r = 0; r <= r_out; ++r) {
    std::uint64_t s = family.sphere_size(r);
    if (base[r] + s > host.n()) {  // finite family exhausted below r_out
      base[r + 1] = host.n();
      continue;
    }
    base[r + 1] = base[r] + s;
  }
  std::vector<AnnulusRow> rows;
  for (std::uint32_t r_in : r_ins) {
    if (r_in >= r_out) {
      std::ostringstream os;
      os << "annulus needs r_in < r_out, got " << r_in << " >= " << r_out;
      throw validation_error(os.str());
    }
    std::vector<Vertex> domain;
    for (std::uint64_t v = base[r_in + 1]; v < host.n(); ++v)
      domain.push_back(static_cast<Vertex>(v));
    if (domain.empty()) {
      std::ostringstream os;
      os << "annulus (" << r_in << ", " << r_out << "] contains no vertices";
      throw validation_error(os.str());
    }
    EigenResult r = dirichlet_lowest(host, std::move(domain), opts);
    rows.push_back({r_in, r_out, r.lambda, r.residual});
  }
  return rows;
}

SupersolutionReport supersolution_check(const WeightedGraph& g, const std::vector<double>& phi,
                                        double lambda, const std::vector<Vertex>& skip) {
  if (phi.size() != g.n())
    throw validation_error("supersolution_check: phi does not match the graph");
  std::vector<std::uint8_t> skipped(g.n(), 0);
  for (Vertex s : skip) {
    if (s >= g.n()) throw validation_error("supersolution_check: skip vertex out of range");
    skipped[s] = 1;
  }
  for (std::size_t x = 0; x < g.n(); ++x)
    if (!skipped[x] && !(phi[x] > 0.0)) {
      std::ostringstream os;
      os << "supersolution_check: phi(" << x << ") = " << phi[x] << " is not positive";
      throw validation_error(os.str());
    }
  std::vector<double> lphi = apply_laplacian(g, phi);
  SupersolutionReport rep;
  rep.min_residual = kInf;
  for (std::size_t x = 0; x < g.n(); ++x) {
    if (skipped[x]) continue;
    double res = (lphi[x] - lambda * phi[x]) / phi[x];
    ++rep.checked;
    rep.max_abs_residual = std::max(rep.max_abs_residual, std::abs(res));
    if (res < rep.min_residual) {
      rep.min_residual = res;
      rep.argmin = static_cast<Vertex>(x);
    }
  }
  if (rep.checked == 0) throw validation_error("supersolution_check: every vertex is skipped");
  rep.ok = rep.min_residual >= -1e-12;
  return rep;
}

VariationalResult variational_bound(const WeightedGraph& g, const PseudoMetric& metric,
                                    const std::vector<double>& alphas,
                                    const std::vector<double>& radii, unsigned threads) {
  if (metric.dist.size() != g.n())
    throw validation_error("variational_bound: metric does not match the graph");
  if (alphas.empty() || radii.empty())
    throw validation_error("variational_bound needs nonempty alpha and radius grids");

  double boundary_dist = kInf;
  if (!g.boundary().empty()) {
    std::vector<double> from_boundary = distances_from_set(g, metric.lengths, g.boundary());
    boundary_dist = from_boundary[metric.root];
  }

  struct Task {
    double alpha, r;
  };
  std::vector<Task> tasks;
  for (double r : radii) {
    if (!(r > 0.0)) continue;
    if (!(2.0 * r < boundary_dist)) continue;  // B_2r must avoid the boundary
    for (double a : alphas) {
      if (!(a > 0.0) || a * r > 700.0) continue;
      tasks.push_back({a, r});
    }
  }
  if (tasks.empty())
    throw validation_error(
        "variational_bound: no admissible (alpha, r) pair (root too close to the boundary, "
        "or every alpha * r over the overflow limit)");

  std::vector<double> values(tasks.size(), kInf);
  parallel_for(tasks.size(), threads, [&](std::size_t i) {
    TestFunctionPair pair = test_pair(metric, tasks[i].r, tasks[i].alpha);
    if (m_norm_sq(g, pair.f) <= 0.0) return;  // degenerate: f vanishes everywhere
    values[i] = rayleigh(g, pair.f);
  });

  VariationalResult result;
  result.best_value = kInf;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (!std::isfinite(values[i])) continue;
    ++result.admitted;
    result.rows.push_back({tasks[i].alpha, tasks[i].r, values[i]});
    if (values[i] < result.best_value) {
      result.best_value = values[i];
      result.best_alpha = tasks[i].alpha;
      result.best_r = tasks[i].r;
    }
  }
  if (result.admitted == 0)
    throw validation_error("variational_bound: every admissible test function was zero");
  return result;
}

}  // namespace specgrowth
