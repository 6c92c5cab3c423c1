// graph.hpp — weighted graph over b (edge weights) and m (vertex measure).
// The substrate for every other module. Graphs are locally finite by
// construction (finite edge lists) and immutable once built.
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "specgrowth/errors.hpp"

namespace specgrowth {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;

// Undirected edge, stored once with u < v and weight b(u,v) > 0.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  double w = 1.0;
};

// One adjacency slot: neighbor, edge weight, index into edges().
struct AdjEntry {
  Vertex to;
  double w;
  EdgeId edge;
};

// Materialization limits. truncate/build refuse to allocate beyond these.
struct ResourceCaps {
  std::uint64_t max_vertices = 5'000'000;
  std::uint64_t max_edges = 50'000'000;
};

// Default caps; SPECGROWTH_MAX_VERTICES overrides the vertex cap when set.
ResourceCaps default_caps();

struct BuildOptions {
  bool allow_disconnected = false;
  std::vector<Vertex> boundary;   // vertices marked as truncation boundary
  std::vector<double> exterior;   // per-vertex weight of edges into the
                                  // removed exterior; empty means none.
  ResourceCaps caps = {};         // zeroed fields fall back to default_caps()
};

class WeightedGraph {
 public:
  WeightedGraph() = default;

  std::size_t n() const { return measure_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<double>& measures() const { return measure_; }
  double measure(Vertex x) const { return measure_[x]; }
  double total_measure() const { return total_measure_; }

  std::span<const AdjEntry> neighbors(Vertex x) const {
    return {adj_.data() + offsets_[x], adj_.data() + offsets_[x + 1]};
  }
  std::size_t materialized_degree(Vertex x) const {
    return offsets_[x + 1] - offsets_[x];
  }

  // n(x) = sum_y b(x,y). Includes the exterior weight, so on a truncation
  // this is the degree in the ambient infinite graph, not the materialized one.
  double weighted_degree(Vertex x) const { return wdeg_[x]; }
  // Deg(x) = n(x)/m(x)
  double generalized_degree(Vertex x) const { return wdeg_[x] / measure_[x]; }

  const std::vector<Vertex>& boundary() const { return boundary_; }
  bool is_boundary(Vertex x) const { return !boundary_flag_.empty() && boundary_flag_[x]; }
  bool has_exterior() const { return !exterior_.empty(); }
  double exterior_weight(Vertex x) const { return exterior_.empty() ? 0.0 : exterior_[x]; }
  const std::vector<double>& exterior() const { return exterior_; }

  bool connected() const { return connected_; }

 private:
  friend WeightedGraph build_from_parts(std::size_t n, std::vector<Edge> edges,
                                        std::vector<double> measure, BuildOptions opts);
  std::vector<Edge> edges_;
  std::vector<double> measure_;
  std::vector<double> wdeg_;
  std::vector<std::size_t> offsets_;
  std::vector<AdjEntry> adj_;
  std::vector<Vertex> boundary_;
  std::vector<std::uint8_t> boundary_flag_;
  std::vector<double> exterior_;
  double total_measure_ = 0.0;
  bool connected_ = true;
};

// Validates and assembles a graph. Edges may arrive in either orientation and
// are canonicalized to u < v. Throws validation_error naming the offending
// entry (self-loop, dangling index, duplicate pair, non-positive weight or
// measure, disconnected without the flag) and resource_error past the caps.
WeightedGraph build_from_parts(std::size_t n, std::vector<Edge> edges,
                               std::vector<double> measure, BuildOptions opts = {});

}  // namespace specgrowth
