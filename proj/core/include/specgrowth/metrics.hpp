// metrics.hpp — pseudo metrics adapted to the form: natural (hop) distance,
// the degree-based path metric, adaptedness verification, and jump sizes.
//
// Adaptedness conventions: `half` means  (1/2) sum_y b(x,y) rho(x,y)^2 <= m(x)
// for every x; `full` drops the 1/2. Bounds computed from a metric that
// satisfies the full convention may be halved downstream.
#pragma once

#include <cstdint>
#include <vector>

#include "specgrowth/graph.hpp"

namespace specgrowth {

enum class Convention { half, full };
enum class LengthRule { natural, huang, custom };

const char* to_string(Convention c);
const char* to_string(LengthRule r);

// One length per stored edge, aligned with WeightedGraph::edges().
struct EdgeLengths {
  LengthRule rule = LengthRule::natural;
  Convention convention = Convention::half;  // convention the rule targets
  std::vector<double> len;
};

// Distances from a fixed root under a length assignment.
struct PseudoMetric {
  Vertex root = 0;
  EdgeLengths lengths;
  std::vector<double> dist;  // infinity on unreachable vertices
};

// All edges length 1 (the hop metric's lengths).
EdgeLengths unit_lengths(const WeightedGraph& g);

// Edge length max(Deg(x), Deg(y))^(-1/2) with Deg = n/m; adapted in the full
// convention for every graph. Throws on a vertex with zero weighted degree.
EdgeLengths huang_lengths(const WeightedGraph& g);

// Hop distance by BFS.
PseudoMetric natural_distance(const WeightedGraph& g, Vertex root);

// Shortest-path distance under the given lengths (Dijkstra, ties resolved
// toward the smaller vertex id).
PseudoMetric path_metric(const WeightedGraph& g, EdgeLengths lengths, Vertex root);

// Single-source / multi-source distance helpers. `cutoff`: vertices beyond it
// keep distance infinity (search is pruned there).
std::vector<double> distances_from(const WeightedGraph& g, const EdgeLengths& lengths,
                                   Vertex source, double cutoff);
std::vector<double> distances_from_set(const WeightedGraph& g, const EdgeLengths& lengths,
                                       const std::vector<Vertex>& sources);

struct AdaptednessReport {
  bool ok = false;
  Vertex worst_vertex = 0;
  double worst_ratio = 0.0;  // max_x c * sum_y b(x,y) len(x,y)^2 / m(x)
  Convention convention = Convention::half;
};

// Checks the chosen convention over all stored edges (exterior weights are
// not included: on a truncation the boundary row is checked as materialized).
// ok iff worst_ratio <= 1 + 1e-12.
AdaptednessReport verify_adapted(const WeightedGraph& g, const EdgeLengths& lengths,
                                 Convention convention);

struct JumpSize {
  double delta_min = 0.0;
  double delta_max = 0.0;
};

// Range of edge lengths; throws validation_error on an empty edge set.
JumpSize jump_size(const WeightedGraph& g, const EdgeLengths& lengths);

}  // namespace specgrowth
