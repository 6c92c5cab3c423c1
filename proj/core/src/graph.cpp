#include "specgrowth/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace specgrowth {

ResourceCaps default_caps() {
  ResourceCaps caps;
  if (const char* env = std::getenv("SPECGROWTH_MAX_VERTICES")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) caps.max_vertices = v;
  }
  return caps;
}

namespace {

[[noreturn]] void fail(const std::string& msg) { throw validation_error(msg); }

std::string edge_str(std::size_t i, const Edge& e) {
  std::ostringstream os;
  os << "edges[" << i << "] = (" << e.u << "," << e.v << "," << e.w << ")";
  return os.str();
}

}  // namespace

WeightedGraph build_from_parts(std::size_t n, std::vector<Edge> edges,
                               std::vector<double> measure, BuildOptions opts) {
  ResourceCaps caps = opts.caps;
  ResourceCaps defaults = default_caps();
  if (caps.max_vertices == 0) caps.max_vertices = defaults.max_vertices;
  if (caps.max_edges == 0) caps.max_edges = defaults.max_edges;
  if (n > caps.max_vertices || edges.size() > caps.max_edges) {
    std::ostringstream os;
    os << "graph size " << n << " vertices / " << edges.size()
       << " edges exceeds caps (" << caps.max_vertices << " / " << caps.max_edges << ")";
    throw resource_error(os.str(), n, edges.size());
  }
  if (n == 0) fail("graph must have at least one vertex");
  if (measure.size() != n) {
    std::ostringstream os;
    os << "measure has " << measure.size() << " entries, expected " << n;
    fail(os.str());
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(measure[i] > 0.0) || !std::isfinite(measure[i])) {
      std::ostringstream os;
      os << "measure[" << i << "] = " << measure[i] << " is not a positive finite value";
      fail(os.str());
    }
  }
  if (!opts.exterior.empty() && opts.exterior.size() != n) {
    std::ostringstream os;
    os << "exterior has " << opts.exterior.size() << " entries, expected " << n;
    fail(os.str());
  }
  for (std::size_t i = 0; i < opts.exterior.size(); ++i) {
    double w = opts.exterior[i];
    if (w < 0.0 || !std::isfinite(w)) {
      std::ostringstream os;
      os << "exterior[" << i << "] = " << w << " is negative or not finite";
      fail(os.str());
    }
  }

  for (std::size_t i = 0; i < edges.size(); ++i) {
    Edge& e = edges[i];
    if (e.u >= n || e.v >= n) fail(edge_str(i, e) + ": vertex index out of range");
    if (e.u == e.v) fail(edge_str(i, e) + ": self-loop");
    if (!(e.w > 0.0) || !std::isfinite(e.w)) fail(edge_str(i, e) + ": weight must be positive and finite");
    if (e.u > e.v) std::swap(e.u, e.v);
  }

  // duplicate detection on canonicalized pairs
  {
    std::vector<std::uint32_t> order(edges.size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
      const Edge& ea = edges[a];
      const Edge& eb = edges[b];
      return ea.u != eb.u ? ea.u < eb.u : ea.v < eb.v;
    });
    for (std::size_t k = 1; k < order.size(); ++k) {
      const Edge& a = edges[order[k - 1]];
      const Edge& b = edges[order[k]];
      if (a.u == b.u && a.v == b.v) {
        std::ostringstream os;
        os << "edges[" << order[k] << "] duplicates edges[" << order[k - 1] << "]: pair ("
           << a.u << "," << a.v << ")";
        fail(os.str());
      }
    }
  }

  WeightedGraph g;
  g.edges_ = std::move(edges);
  g.measure_ = std::move(measure);
  g.exterior_ = std::move(opts.exterior);
  if (std::all_of(g.exterior_.begin(), g.exterior_.end(), [](double w) { return w == 0.0; }))
    g.exterior_.clear();

  g.offsets_.assign(n + 1, 0);
  for (const Edge& e : g.edges_) {
    ++g.offsets_[e.u + 1];
    ++g.offsets_[e.v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
  g.adj_.resize(2 * g.edges_.size());
  {
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (std::size_t i = 0; i < g.edges_.size(); ++i) {
      const Edge& e = g.edges_[i];
      g.adj_[cursor[e.u]++] = {e.v, e.w, static_cast<EdgeId>(i)};
      g.adj_[cursor[e.v]++] = {e.u, e.w, static_cast<EdgeId>(i)};
    }
  }
  // neighbor lists sorted by vertex id: deterministic traversal order
  for (std::size_t x = 0; x < n; ++x) {
    std::sort(g.adj_.begin() + g.offsets_[x], g.adj_.begin() + g.offsets_[x + 1],
              [](const AdjEntry& a, const AdjEntry& b) { return a.to < b.to; });
  }

  g.wdeg_.assign(n, 0.0);
  for (std::size_t x = 0; x < n; ++x) {
    double s = g.exterior_.empty() ? 0.0 : g.exterior_[x];
    for (const AdjEntry& a : g.neighbors(static_cast<Vertex>(x))) s += a.w;
    g.wdeg_[x] = s;
  }
  g.total_measure_ = std::accumulate(g.measure_.begin(), g.measure_.end(), 0.0);

  // connectivity by BFS from vertex 0
  {
    std::vector<std::uint8_t> seen(n, 0);
    std::vector<Vertex> stack{0};
    seen[0] = 1;
    std::size_t visited = 1;
    while (!stack.empty()) {
      Vertex x = stack.back();
      stack.pop_back();
      for (const AdjEntry& a : g.neighbors(x)) {
        if (!seen[a.to]) {
          seen[a.to] = 1;
          ++visited;
          stack.push_back(a.to);
        }
      }
    }
    g.connected_ = (visited == n);
    if (!g.connected_ && !opts.allow_disconnected) {
      Vertex miss = 0;
      for (std::size_t x = 0; x < n; ++x)
        if (!seen[x]) {
          miss = static_cast<Vertex>(x);
          break;
        }
      std::ostringstream os;
      os << "graph is disconnected (vertex " << miss
         << " unreachable from 0); pass allow_disconnected to accept";
      fail(os.str());
    }
  }

  if (!opts.boundary.empty()) {
    std::sort(opts.boundary.begin(), opts.boundary.end());
    opts.boundary.erase(std::unique(opts.boundary.begin(), opts.boundary.end()),
                        opts.boundary.end());
    if (opts.boundary.back() >= n) {
      std::ostringstream os;
      os << "boundary vertex " << opts.boundary.back() << " out of range (n = " << n << ")";
      fail(os.str());
    }
    g.boundary_ = std::move(opts.boundary);
    g.boundary_flag_.assign(n, 0);
    for (Vertex b : g.boundary_) g.boundary_flag_[b] = 1;
  }
  return g;
}

}  // namespace specgrowth
