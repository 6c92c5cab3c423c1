#include "specgrowth/forms.hpp"

#include <sstream>

namespace specgrowth {

namespace {

void check_size(const WeightedGraph& g, const std::vector<double>& u, const char* fn) {
  if (u.size() != g.n()) {
    std::ostringstream os;
    os << fn << ": function has " << u.size() << " entries, graph has " << g.n() << " vertices";
    throw validation_error(os.str());
  }
}

}  // namespace

double energy(const WeightedGraph& g, const std::vector<double>& u) {
  check_size(g, u, "energy");
  double total = 0.0;
  for (const Edge& e : g.edges()) {
    double d = u[e.u] - u[e.v];
    total += e.w * d * d;
  }
  return total;
}

double energy_dirichlet(const WeightedGraph& g, const std::vector<double>& u) {
  double total = energy(g, u);
  if (g.has_exterior())
    for (std::size_t x = 0; x < g.n(); ++x)
      total += g.exterior_weight(static_cast<Vertex>(x)) * u[x] * u[x];
  return total;
}

double m_norm_sq(const WeightedGraph& g, const std::vector<double>& u) {
  check_size(g, u, "m_norm_sq");
  double total = 0.0;
  for (std::size_t x = 0; x < g.n(); ++x) total += g.measure(static_cast<Vertex>(x)) * u[x] * u[x];
  return total;
}

double rayleigh(const WeightedGraph& g, const std::vector<double>& u) {
  double nn = m_norm_sq(g, u);
  if (nn <= 0.0) throw validation_error("rayleigh quotient of the zero function");
  return energy_dirichlet(g, u) / nn;
}

std::vector<double> apply_laplacian(const WeightedGraph& g, const std::vector<double>& u) {
  check_size(g, u, "apply_laplacian");
  std::vector<double> out(g.n());
  for (std::size_t x = 0; x < g.n(); ++x) {
    Vertex vx = static_cast<Vertex>(x);
    double acc = g.exterior_weight(vx) * u[x];
    for (const AdjEntry& a : g.neighbors(vx)) acc += a.w * (u[x] - u[a.to]);
    out[x] = acc / g.measure(vx);
  }
  return out;
}

}  // namespace specgrowth
