// growth.hpp — volume growth along metric balls: tables, exponential rate
// estimators (root-anchored and uniform), polynomial order, classification.
//
// All estimators are finite-window surrogates of liminf quantities: they take
// the minimum (or a least-squares slope) over a tail window of radii and are
// exact only in the limit. Window placement is the caller's responsibility;
// on truncations, radii close to the truncation radius see boundary effects.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "specgrowth/family.hpp"
#include "specgrowth/graph.hpp"
#include "specgrowth/metrics.hpp"
#include "specgrowth/util.hpp"

namespace specgrowth {

struct BallRow {
  double r;
  double count;   // |B_r|
  double volume;  // m(B_r)
};

struct BallTable {
  std::string metric_tag;  // "natural", "huang", "custom", "analytic"
  double step = 1.0;
  std::vector<BallRow> rows;  // grid r = 0, step, 2*step, ...
};

// Ball sizes around metric.root on the grid k*step, k = 0..ceil(r_max/step).
BallTable ball_table(const WeightedGraph& g, const PseudoMetric& metric, double r_max,
                     double step);

// Closed-form table of a family under the natural metric (radius = sphere
// index), exact for radii far beyond anything materializable.
BallTable family_ball_table(const Family& family, std::uint32_t r_max, MeasureRule rule);

// min over grid radii r in the window of (1/r) log m(B_r). Rows with r = 0
// are ignored; an empty selection is a validation error.
double mu_estimate(const BallTable& table, Window window);

struct MuTildeOptions {
  std::size_t max_centers = 256;  // stride-sampled cap when centers are auto
  bool exhaustive = false;        // use every admissible center
  unsigned threads = 0;           // 0 = default_thread_count()
  double step = 1.0;
  double r_max = 0.0;             // admissibility radius; 0 = window.hi
};

struct MuTildeResult {
  double value = 0.0;
  std::size_t centers_used = 0;
  std::size_t centers_skipped = 0;  // requested centers whose ball did not fit
};

// min over grid radii r in the window of (1/r) inf_x log(m(B_r(x))/m(B_1(x))),
// the infimum running over admissible centers: distance to the boundary set
// >= r_max, so every ball lives inside the truncation. Explicit `centers` are
// filtered (skips counted); empty `centers` means every admissible vertex,
// stride-capped at max_centers. No admissible center is a validation error.
MuTildeResult mu_tilde_estimate(const WeightedGraph& g, const EdgeLengths& lengths,
                                std::vector<Vertex> centers, Window window,
                                MuTildeOptions opts = {});

// Least-squares slope of log |B_r| against log r over the window.
// Requires window.lo >= 2 and at least three grid rows.
double beta_estimate(const BallTable& table, Window window);

// max over the window of |B_r| / r^3 (limsup-side cubic check).
double cubic_ratio_max(const BallTable& table, Window window);

enum class GrowthClass { subcubic, cubic, supercubic };
const char* to_string(GrowthClass c);

// |beta_hat - 3| <= band -> cubic; below -> subcubic; above -> supercubic.
GrowthClass classify_growth(double beta_hat, double band = 0.2);

struct GrowthEstimate {
  double mu_hat = 0.0;
  double mu_tilde_hat = 0.0;
  double beta_hat = 0.0;
  double cubic_ratio = 0.0;
  Window window;
  Window beta_window;
  std::string method;
  std::size_t centers_used = 0;
  std::size_t centers_skipped = 0;
};

}  // namespace specgrowth
