#include "specgrowth/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <queue>
#include <sstream>

#include "specgrowth/util.hpp"

namespace specgrowth {

const char* to_string(Convention c) { return c == Convention::half ? "half" : "full"; }

const char* to_string(LengthRule r) {
  switch (r) {
    case LengthRule::natural: return "natural";
    case LengthRule::huang: return "huang";
    default: return "custom";
  }
}

EdgeLengths unit_lengths(const WeightedGraph& g) {
  EdgeLengths out;
  out.rule = LengthRule::natural;
  out.convention = Convention::half;
  out.len.assign(g.edges().size(), 1.0);
  return out;
}

EdgeLengths huang_lengths(const WeightedGraph& g) {
  EdgeLengths out;
  out.rule = LengthRule::huang;
  out.convention = Convention::full;
  out.len.reserve(g.edges().size());
  for (std::size_t x = 0; x < g.n(); ++x) {
    if (g.weighted_degree(static_cast<Vertex>(x)) <= 0.0) {
      std::ostringstream os;
      os << "vertex " << x << " has zero weighted degree; its degree-based edge length is undefined";
      throw validation_error(os.str());
    }
  }
  for (const Edge& e : g.edges()) {
    double d = std::max(g.generalized_degree(e.u), g.generalized_degree(e.v));
    out.len.push_back(1.0 / std::sqrt(d));
  }
  return out;
}

namespace {

void check_lengths(const WeightedGraph& g, const EdgeLengths& lengths) {
  if (lengths.len.size() != g.edges().size()) {
    std::ostringstream os;
    os << "edge length table has " << lengths.len.size() << " entries, graph has "
       << g.edges().size() << " edges";
    throw validation_error(os.str());
  }
  for (std::size_t i = 0; i < lengths.len.size(); ++i)
    if (lengths.len[i] < 0.0 || !std::isfinite(lengths.len[i])) {
      std::ostringstream os;
      os << "edge length [" << i << "] = " << lengths.len[i] << " is negative or not finite";
      throw validation_error(os.str());
    }
}

std::vector<double> bfs_from(const WeightedGraph& g, Vertex source, double cutoff) {
  std::vector<double> dist(g.n(), kInf);
  std::deque<Vertex> queue;
  dist[source] = 0.0;
  queue.push_back(source);
  while (!queue.empty()) {
    Vertex x = queue.front();
    queue.pop_front();
    double next = dist[x] + 1.0;
    if (next > cutoff) continue;
    for (const AdjEntry& a : g.neighbors(x)) {
      if (dist[a.to] == kInf) {
        dist[a.to] = next;
        queue.push_back(a.to);
      }
    }
  }
  return dist;
}

std::vector<double> dijkstra(const WeightedGraph& g, const EdgeLengths& lengths,
                             const std::vector<Vertex>& sources, double cutoff) {
  std::vector<double> dist(g.n(), kInf);
  using Item = std::pair<double, Vertex>;  // ties pop the smaller vertex id
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  for (Vertex s : sources) {
    if (s >= g.n()) {
      std::ostringstream os;
      os << "source vertex " << s << " out of range (n = " << g.n() << ")";
      throw validation_error(os.str());
    }
    dist[s] = 0.0;
    heap.push({0.0, s});
  }
  while (!heap.empty()) {
    auto [d, x] = heap.top();
    heap.pop();
    if (d > dist[x]) continue;
    for (const AdjEntry& a : g.neighbors(x)) {
      double nd = d + lengths.len[a.edge];
      if (nd > cutoff) continue;
      if (nd < dist[a.to]) {
        dist[a.to] = nd;
        heap.push({nd, a.to});
      }
    }
  }
  return dist;
}

}  // namespace

PseudoMetric natural_distance(const WeightedGraph& g, Vertex root) {
  if (root >= g.n()) throw validation_error("root vertex out of range");
  PseudoMetric m;
  m.root = root;
  m.lengths = unit_lengths(g);
  m.dist = bfs_from(g, root, kInf);
  return m;
}

PseudoMetric path_metric(const WeightedGraph& g, EdgeLengths lengths, Vertex root) {
  if (root >= g.n()) throw validation_error("root vertex out of range");
  check_lengths(g, lengths);
  PseudoMetric m;
  m.root = root;
  m.dist = dijkstra(g, lengths, {root}, kInf);
  m.lengths = std::move(lengths);
  return m;
}

std::vector<double> distances_from(const WeightedGraph& g, const EdgeLengths& lengths,
                                   Vertex source, double cutoff) {
  if (lengths.rule == LengthRule::natural) return bfs_from(g, source, cutoff);
  check_lengths(g, lengths);
  return dijkstra(g, lengths, {source}, cutoff);
}

std::vector<double> distances_from_set(const WeightedGraph& g, const EdgeLengths& lengths,
                                       const std::vector<Vertex>& sources) {
  check_lengths(g, lengths);
  if (sources.empty()) return std::vector<double>(g.n(), kInf);
  return dijkstra(g, lengths, sources, kInf);
}

AdaptednessReport verify_adapted(const WeightedGraph& g, const EdgeLengths& lengths,
                                 Convention convention) {
  check_lengths(g, lengths);
  AdaptednessReport rep;
  rep.convention = convention;
  double c = convention == Convention::half ? 0.5 : 1.0;
  std::vector<double> acc(g.n(), 0.0);
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    const Edge& e = g.edges()[i];
    double contrib = e.w * lengths.len[i] * lengths.len[i];
    acc[e.u] += contrib;
    acc[e.v] += contrib;
  }
  rep.worst_ratio = 0.0;
  rep.worst_vertex = 0;
  for (std::size_t x = 0; x < g.n(); ++x) {
    double ratio = c * acc[x] / g.measure(static_cast<Vertex>(x));
    if (ratio > rep.worst_ratio) {
      rep.worst_ratio = ratio;
      rep.worst_vertex = static_cast<Vertex>(x);
    }
  }
  rep.ok = rep.worst_ratio <= 1.0 + 1e-12;
  return rep;
}

JumpSize jump_size(const WeightedGraph& g, const EdgeLengths& lengths) {
  check_lengths(g, lengths);
  if (g.edges().empty())
    throw validation_error("jump size is undefined on a graph with no edges");
  JumpSize j{kInf, 0.0};
  for (double len : lengths.len) {
    j.delta_min = std::min(j.delta_min, len);
    j.delta_max = std::max(j.delta_max, len);
  }
  return j;
}

}  // namespace specgrowth
