// test_functions.hpp — the exponential bump pair (f, g) used to probe the
// spectrum variationally, plus numeric checkers for the two inequalities its
// analysis relies on (Lipschitz bound pair-by-pair, energy bound in total).
#pragma once

#include <cstdint>
#include <vector>

#include "specgrowth/graph.hpp"
#include "specgrowth/metrics.hpp"

namespace specgrowth {

// f(x) = (e^{alpha min(r, 2r - rho(x))} - 1) clamped to 0 outside B_{2r}:
// equals e^{alpha r} - 1 on B_r, decays exponentially across the annulus,
// vanishes outside. g = (f + 2) on B_{2r}, 0 elsewhere.
struct TestFunctionPair {
  double r = 0.0;
  double alpha = 0.0;
  Vertex root = 0;
  std::vector<double> f;
  std::vector<double> g;
};

// Base Lipschitz constant c(alpha) = alpha^2 / 2.
double lipschitz_constant(double alpha);

// Refined constant (e^alpha - 1)^2 / (rho^2 e^{2 alpha} + 1), valid for
// pair distances rho <= 1. Larger than the base constant for small rho.
double lipschitz_constant_refined(double alpha, double rho);

// Builds the pair from root distances. Requires r > 0, alpha > 0, and
// alpha * r <= 700 (beyond that e^{alpha r} overflows; reduce alpha or r).
TestFunctionPair test_pair(const PseudoMetric& metric, double r, double alpha);

// Slack of one instance: c * (g(x)^2 + g(y)^2) * rho^2 - (f(x) - f(y))^2,
// with the refined constant when `refined` (caller guarantees rho <= 1).
// Nonnegative slack means the inequality holds for this pair.
double lipschitz_slack(const TestFunctionPair& pair, Vertex x, Vertex y, double rho,
                       bool refined);

struct LipschitzOptions {
  std::size_t all_pairs_limit = 2000;  // up to this many vertices: all pairs
  unsigned threads = 0;
};

struct LipschitzReport {
  bool ok = false;
  double worst_slack = 0.0;
  Vertex worst_x = 0;
  Vertex worst_y = 0;
  std::uint64_t pairs_checked = 0;
  bool all_pairs = false;  // false: edge sweep with |dist(x)-dist(y)| as rho
};

// Verifies the Lipschitz inequality with the base constant on every checked
// pair, and additionally with the refined constant where the pair distance is
// <= 1. Graphs up to all_pairs_limit vertices get a true all-pairs check
// (exact pairwise distances); larger graphs get an edge sweep evaluated at
// the distance difference, which the inequality dominates. ok iff the worst
// slack is >= -1e-12.
LipschitzReport lipschitz_check(const WeightedGraph& g, const PseudoMetric& metric,
                                const TestFunctionPair& pair, LipschitzOptions opts = {});

struct EnergyBoundReport {
  double energy = 0.0;
  double rhs_base = 0.0;
  double rhs_refined = 0.0;
  bool has_refined = false;
  double slack_base = 0.0;
  double slack_refined = 0.0;
  bool ok = false;
  Convention convention = Convention::half;
};

// Checks E(f) <= alpha^2 ||g||_m^2 (half convention; the full convention
// halves the right side), and the refined version with the jump-dependent
// constant when every jump lies in [delta_min, 1]. The adaptedness report
// must be positive for the metric that produced the pair, otherwise the
// claim is vacuous and a validation_error is thrown. ok iff every applicable
// slack is >= -1e-9.
EnergyBoundReport energy_bound_check(const WeightedGraph& g, const TestFunctionPair& pair,
                                     const AdaptednessReport& adaptedness,
                                     const JumpSize* jump = nullptr);

}  // namespace specgrowth
