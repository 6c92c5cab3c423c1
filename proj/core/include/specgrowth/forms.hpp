// forms.hpp — quadratic form, norms, Rayleigh quotients, pointwise operator.
#pragma once

#include <vector>

#include "specgrowth/graph.hpp"

namespace specgrowth {

// E(u) = sum over stored edges of b(x,y) (u(x) - u(y))^2. Exact sum over the
// stored half-edge list; exterior weights are not included.
double energy(const WeightedGraph& g, const std::vector<double>& u);

// E(u) + sum_x exterior(x) u(x)^2: the form of the extension of u by zero to
// the ambient graph a truncation was cut from.
double energy_dirichlet(const WeightedGraph& g, const std::vector<double>& u);

// ||u||_m^2 = sum_x m(x) u(x)^2
double m_norm_sq(const WeightedGraph& g, const std::vector<double>& u);

// E_dirichlet(u) / ||u||_m^2; throws on ||u|| = 0. On graphs without exterior
// weights this is the plain form quotient.
double rayleigh(const WeightedGraph& g, const std::vector<double>& u);

// (Lu)(x) = (1/m(x)) [ (sum_y b(x,y) + exterior(x)) u(x) - sum_y b(x,y) u(y) ],
// the operator with Dirichlet condition beyond the materialized vertex set.
std::vector<double> apply_laplacian(const WeightedGraph& g, const std::vector<double>& u);

}  // namespace specgrowth
