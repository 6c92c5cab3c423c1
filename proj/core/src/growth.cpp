#include "specgrowth/growth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "specgrowth/parallel.hpp"

namespace specgrowth {

namespace {

// inclusion slack for floating path sums landing a hair past a grid point
double ball_tol(double r) { return 1e-9 * (1.0 + std::abs(r)); }

std::vector<double> grid_radii(double r_max, double step) {
  if (!(step > 0.0) || !std::isfinite(step))
    throw validation_error("ball table step must be positive and finite");
  if (!(r_max >= 0.0) || !std::isfinite(r_max))
    throw validation_error("ball table r_max must be nonnegative and finite");
  std::vector<double> rs;
  std::size_t k_max = static_cast<std::size_t>(std::ceil(r_max / step - 1e-12));
  for (std::size_t k = 0; k <= k_max; ++k) rs.push_back(static_cast<double>(k) * step);
  return rs;
}

}  // namespace

BallTable ball_table(const WeightedGraph& g, const PseudoMetric& metric, double r_max,
                     double step) {
  if (metric.dist.size() != g.n())
    throw validation_error("metric does not match the graph (vertex count differs)");
  BallTable table;
  table.metric_tag = to_string(metric.lengths.rule);
  table.step = step;

  std::vector<std::pair<double, double>> by_dist;  // (dist, measure)
  by_dist.reserve(g.n());
  for (std::size_t x = 0; x < g.n(); ++x)
    if (std::isfinite(metric.dist[x]))
      by_dist.emplace_back(metric.dist[x], g.measure(static_cast<Vertex>(x)));
  std::sort(by_dist.begin(), by_dist.end());
  std::vector<double> cum(by_dist.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < by_dist.size(); ++i) cum[i] = (acc += by_dist[i].second);

  for (double r : grid_radii(r_max, step)) {
    double limit = r + ball_tol(r);
    auto it = std::upper_bound(by_dist.begin(), by_dist.end(), limit,
                               [](double v, const std::pair<double, double>& p) { return v < p.first; });
    std::size_t k = static_cast<std::size_t>(it - by_dist.begin());
    table.rows.push_back({r, static_cast<double>(k), k == 0 ? 0.0 : cum[k - 1]});
  }
  return table;
}

BallTable family_ball_table(const Family& family, std::uint32_t r_max, MeasureRule rule) {
  BallTable table;
  table.metric_tag = "analytic";
  table.step = 1.0;
  for (const SphereRow& row : family.sphere_volumes(r_max, rule))
    table.rows.push_back({static_cast<double>(row.r), row.ball_count, row.ball_volume});
  return table;
}

double mu_estimate(const BallTable& table, Window window) {
  double best = kInf;
  std::size_t selected = 0;
  for (const BallRow& row : table.rows) {
    if (row.r <= 0.0 || !window.contains(row.r)) continue;
    ++selected;
    if (row.volume > 0.0) best = std::min(best, std::log(row.volume) / row.r);
  }
  if (selected == 0) {
    std::ostringstream os;
    os << "growth window [" << window.lo << ", " << window.hi
       << "] selects no table rows (table reaches r = "
       << (table.rows.empty() ? 0.0 : table.rows.back().r) << ")";
    throw validation_error(os.str());
  }
  return best;
}

MuTildeResult mu_tilde_estimate(const WeightedGraph& g, const EdgeLengths& lengths,
                                std::vector<Vertex> centers, Window window,
                                MuTildeOptions opts) {
  double r_max = opts.r_max > 0.0 ? opts.r_max : window.hi;
  if (!(r_max > 0.0)) throw validation_error("mu_tilde needs a positive admissibility radius");

  std::vector<double> to_boundary;
  if (!g.boundary().empty()) to_boundary = distances_from_set(g, lengths, g.boundary());
  auto admissible = [&](Vertex x) {
    return to_boundary.empty() || to_boundary[x] >= r_max - 1e-12;
  };

  MuTildeResult result;
  std::vector<Vertex> chosen;
  if (centers.empty()) {
    for (std::size_t x = 0; x < g.n(); ++x)
      if (admissible(static_cast<Vertex>(x))) chosen.push_back(static_cast<Vertex>(x));
    if (!opts.exhaustive && opts.max_centers > 0 && chosen.size() > opts.max_centers) {
      std::vector<Vertex> strided;
      std::size_t stride = (chosen.size() + opts.max_centers - 1) / opts.max_centers;
      for (std::size_t i = 0; i < chosen.size(); i += stride) strided.push_back(chosen[i]);
      chosen = std::move(strided);
    }
  } else {
    for (Vertex x : centers) {
      if (x >= g.n()) throw validation_error("mu_tilde center out of range");
      if (admissible(x))
        chosen.push_back(x);
      else
        ++result.centers_skipped;
    }
  }
  if (chosen.empty())
    throw validation_error(
        "no admissible mu_tilde center: every candidate is closer than r_max to the boundary");

  std::vector<double> grid;
  for (double r : grid_radii(r_max, opts.step))
    if (r > 0.0 && window.contains(r)) grid.push_back(r);
  if (grid.empty()) {
    std::ostringstream os;
    os << "mu_tilde window [" << window.lo << ", " << window.hi << "] selects no grid radii";
    throw validation_error(os.str());
  }

  std::vector<double> per_center(chosen.size(), kInf);
  parallel_for(chosen.size(), opts.threads, [&](std::size_t i) {
    Vertex x = chosen[i];
    std::vector<double> dist = distances_from(g, lengths, x, r_max + ball_tol(r_max));
    std::vector<std::pair<double, double>> by_dist;
    for (std::size_t y = 0; y < g.n(); ++y)
      if (std::isfinite(dist[y])) by_dist.emplace_back(dist[y], g.measure(static_cast<Vertex>(y)));
    std::sort(by_dist.begin(), by_dist.end());
    std::vector<double> cum(by_dist.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < by_dist.size(); ++k) cum[k] = (acc += by_dist[k].second);
    auto vol = [&](double r) {
      auto it = std::upper_bound(
          by_dist.begin(), by_dist.end(), r + ball_tol(r),
          [](double v, const std::pair<double, double>& p) { return v < p.first; });
      std::size_t k = static_cast<std::size_t>(it - by_dist.begin());
      return k == 0 ? 0.0 : cum[k - 1];
    };
    double v1 = vol(1.0);
    double best = kInf;
    for (double r : grid) {
      double vr = vol(r);
      if (vr > 0.0 && v1 > 0.0) best = std::min(best, std::log(vr / v1) / r);
    }
    per_center[i] = best;
  });

  result.value = kInf;
  for (double v : per_center) result.value = std::min(result.value, v);
  result.centers_used = chosen.size();
  return result;
}

double beta_estimate(const BallTable& table, Window window) {
  if (window.lo < 2.0)
    throw validation_error("beta window must start at r >= 2 (log r too distorted below)");
  std::vector<double> xs, ys;
  for (const BallRow& row : table.rows) {
    if (!window.contains(row.r) || row.r < 2.0 || row.count < 1.0) continue;
    xs.push_back(std::log(row.r));
    ys.push_back(std::log(row.count));
  }
  if (xs.size() < 3) {
    std::ostringstream os;
    os << "beta window [" << window.lo << ", " << window.hi << "] selects " << xs.size()
       << " usable rows, need at least 3";
    throw validation_error(os.str());
  }
  double xbar = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
  double ybar = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - xbar) * (xs[i] - xbar);
    sxy += (xs[i] - xbar) * (ys[i] - ybar);
  }
  if (sxx <= 0.0) throw validation_error("beta window is degenerate: all radii coincide");
  return sxy / sxx;
}

double cubic_ratio_max(const BallTable& table, Window window) {
  double best = 0.0;
  bool any = false;
  for (const BallRow& row : table.rows) {
    if (row.r <= 0.0 || !window.contains(row.r)) continue;
    any = true;
    best = std::max(best, row.count / (row.r * row.r * row.r));
  }
  if (!any) throw validation_error("cubic ratio window selects no table rows");
  return best;
}

const char* to_string(GrowthClass c) {
  switch (c) {
    case GrowthClass::subcubic: return "subcubic";
    case GrowthClass::cubic: return "cubic";
    default: return "supercubic";
  }
}

GrowthClass classify_growth(double beta_hat, double band) {
  if (beta_hat < 3.0 - band) return GrowthClass::subcubic;
  if (beta_hat <= 3.0 + band) return GrowthClass::cubic;
  return GrowthClass::supercubic;
}

}  // namespace specgrowth
